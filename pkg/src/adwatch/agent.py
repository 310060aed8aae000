"""ReAct-style agent loop over a registry of named tools."""

from __future__ import annotations

import json
import logging
import re
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Callable, Optional, Union

from .llm import CompletionRequest, estimate_tokens

logger = logging.getLogger(__name__)

FINAL_ANSWER = "Final Answer"
PLACEHOLDERS = ("{tools}", "{tool_names}", "{question}", "{history}")
INVALID_FORMAT = "Invalid format; respond with Thought/Action/Action Input or Final Answer."
TERMINATION_REASONS = ("final_answer", "max_steps", "parse_failure_limit")

_PLACEHOLDER_RE = re.compile(r"\{(tools|tool_names|question|history)\}")
_MARKER_RE = re.compile(r"^\s*(Thought|Action Input|Action|Final Answer|Observation)\s*:(.*)$")


class DuplicateTool(ValueError):
    pass


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class ToolSpec:
    name: str
    description: str
    input_schema: str = ""

    def __post_init__(self):
        if not self.name or re.search(r"\s", self.name):
            raise ValueError(f"invalid tool name {self.name!r}")
        if self.name == FINAL_ANSWER:
            raise ValueError("tool name collides with the final-answer marker")


class ToolRegistry:
    """Ordered name -> (spec, handler) mapping."""

    def __init__(self):
        self._tools = {}

    def register(self, spec, handler):
        if spec.name in self._tools:
            raise DuplicateTool(spec.name)
        self._tools[spec.name] = (spec, handler)
        return self

    def __len__(self):
        return len(self._tools)

    def __contains__(self, name):
        return name in self._tools

    def names(self):
        return list(self._tools)

    def specs(self):
        return [spec for spec, _ in self._tools.values()]

    def handler(self, name):
        return self._tools[name][1]


def register_tool(registry, spec, handler):
    return registry.register(spec, handler)


@dataclass(frozen=True)
class AgentStep:
    index: int
    thought: str
    action: str
    action_input: str
    observation: str = ""

    @property
    def is_final(self):
        return self.action == FINAL_ANSWER

    @property
    def is_parse_failure(self):
        return self.action == ""


@dataclass(frozen=True)
class AgentTranscript:
    question: str
    steps: tuple
    final_answer: Optional[str]
    terminated_reason: str

    def records(self):
        yield {"type": "question", "question": self.question}
        for step in self.steps:
            yield {"type": "step", **asdict(step)}
        yield {
            "type": "end",
            "final_answer": self.final_answer,
            "terminated_reason": self.terminated_reason,
        }

    def dump(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            for rec in self.records():
                fh.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")

    @classmethod
    def load(cls, path):
        question, steps, end = "", [], {}
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                rec = json.loads(line)
                kind = rec.pop("type")
                if kind == "question":
                    question = rec["question"]
                elif kind == "step":
                    steps.append(AgentStep(**rec))
                else:
                    end = rec
        return cls(question, tuple(steps), end.get("final_answer"), end.get("terminated_reason"))


def default_template():
    return resources.files("adwatch").joinpath("data/prompts/agent.txt").read_text("utf-8")


@dataclass
class AgentConfig:
    max_steps: int = 15
    max_consecutive_parse_failures: int = 3
    prompt_template: str = field(default_factory=default_template)
    # prompt must fit the context window minus the response reserve
    token_budget: int = 4096 - 512
    model: str = "gpt-4"
    temperature: float = 0.0

    def __post_init__(self):
        if self.max_steps < 1 or self.max_consecutive_parse_failures < 1:
            raise ValueError("step limits must be positive")
        for ph in PLACEHOLDERS:
            n = self.prompt_template.count(ph)
            if n != 1:
                raise ValueError(f"template must contain {ph} exactly once (found {n})")


@dataclass(frozen=True)
class ParsedAction:
    thought: str
    action: str
    action_input: str

    def serialize(self):
        return f"Thought: {self.thought}\nAction: {self.action}\nAction Input: {self.action_input}"


@dataclass(frozen=True)
class FinalAnswer:
    thought: str
    answer: str

    def serialize(self):
        return f"Thought: {self.thought}\n{FINAL_ANSWER}: {self.answer}"


def render_step(step):
    if step.is_parse_failure:
        lines = [step.thought.strip(), f"Observation: {step.observation}"]
    elif step.is_final:
        lines = [f"Thought: {step.thought}", f"{FINAL_ANSWER}: {step.action_input}"]
    else:
        lines = [
            f"Thought: {step.thought}",
            f"Action: {step.action}",
            f"Action Input: {step.action_input}",
            f"Observation: {step.observation}",
        ]
    return "\n".join(lines) + "\n"


def _expand(template, values):
    return _PLACEHOLDER_RE.sub(lambda m: values[m.group(1)], template)


def render_prompt(config, registry, question, history=()):
    """Fill the template; oldest history steps are dropped to fit the budget."""
    tools = "\n".join(
        f"{s.name}: {s.description}" + (f" Input: {s.input_schema}" if s.input_schema else "")
        for s in registry.specs()
    )
    values = {"tools": tools, "tool_names": ", ".join(registry.names()), "question": question}
    history = list(history)
    while True:
        values["history"] = "".join(render_step(s) for s in history)
        prompt = _expand(config.prompt_template, values)
        if not history or estimate_tokens(prompt) <= config.token_budget:
            return prompt
        # a step is one action/observation pair
        history.pop(0)


def parse_action(completion) -> Union[ParsedAction, FinalAnswer]:
    """Parse the first complete Thought/Action block of a completion.

    Raises ParseError when neither an Action nor a Final Answer line is
    present, or when an Action line is not followed by Action Input.
    """
    thought_lines = []
    action = None
    for line in completion.split("\n"):
        line = line.rstrip("\r")
        m = _MARKER_RE.match(line)
        label, value = (m.group(1), m.group(2).strip()) if m else (None, line)
        if action is None:
            if label == "Action":
                if not value:
                    raise ParseError("empty Action name")
                action = value
            elif label == FINAL_ANSWER:
                return FinalAnswer(_join(thought_lines), value)
            elif label in ("Observation", "Action Input"):
                break
            elif label == "Thought":
                thought_lines = [value]
            else:
                thought_lines.append(value)
        elif label == "Action Input":
            return ParsedAction(_join(thought_lines), action, value)
        elif label is not None:
            break
    if action is not None:
        raise ParseError("Action without a following Action Input")
    raise ParseError("no Action or Final Answer marker")


def _join(lines):
    return "\n".join(lines).strip()


def run_loop(config, registry, llm, question):
    if not len(registry):
        raise ValueError("tool registry is empty")
    steps = []
    failures = 0
    reason = "max_steps"
    final = None
    while len(steps) < config.max_steps:
        prompt = render_prompt(config, registry, question, steps)
        request = CompletionRequest.from_prompt(
            prompt, model=config.model, temperature=config.temperature
        )
        completion = llm.complete(request)
        idx = len(steps)
        try:
            parsed = parse_action(completion)
        except ParseError as exc:
            failures += 1
            logger.info("step %d: parse failure (%s)", idx, exc)
            steps.append(AgentStep(idx, completion, "", "", INVALID_FORMAT))
            if failures >= config.max_consecutive_parse_failures:
                reason = "parse_failure_limit"
                break
            continue
        failures = 0
        if isinstance(parsed, FinalAnswer):
            steps.append(AgentStep(idx, parsed.thought, FINAL_ANSWER, parsed.answer, ""))
            final = parsed.answer
            reason = "final_answer"
            break
        observation = dispatch(registry, parsed.action, parsed.action_input)
        logger.info("step %d: %s -> %s", idx, parsed.action, observation[:80])
        steps.append(AgentStep(idx, parsed.thought, parsed.action, parsed.action_input, observation))
    return AgentTranscript(question, tuple(steps), final, reason)


def dispatch(registry, action, action_input) -> str:
    if action not in registry:
        return f"ERROR: unknown tool {action!r}; choose one of [{', '.join(registry.names())}]"
    handler: Callable[[str], object] = registry.handler(action)
    try:
        out = handler(action_input)
    except Exception as exc:  # tool failures become observations
        return f"ERROR: {type(exc).__name__}: {exc}"
    out = "" if out is None else str(out)
    # an empty observation is reserved for the final-answer step
    return out or "(no output)"
