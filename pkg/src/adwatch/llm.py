"""Completion backends: an OpenAI-compatible HTTP client and a replay backend."""

from __future__ import annotations

import hashlib
import json
import logging
import math
import os
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Protocol

logger = logging.getLogger(__name__)

ROLES = ("system", "user", "assistant")
DEFAULT_MODEL = "gpt-4"
TOKEN_DIVISOR = 3


class LLMError(Exception):
    pass


class InvalidRequest(LLMError, ValueError):
    pass


class BackendExhausted(LLMError):
    pass


class ReplayMiss(LLMError, KeyError):
    pass


@dataclass(frozen=True)
class ChatMessage:
    role: str
    content: str

    def __post_init__(self):
        if self.role not in ROLES:
            raise InvalidRequest(f"unknown role {self.role!r}")
        if not self.content and self.role != "assistant":
            raise InvalidRequest(f"empty content for {self.role} message")


@dataclass(frozen=True)
class CompletionRequest:
    messages: tuple
    model: str = DEFAULT_MODEL
    temperature: float = 0.0
    max_tokens: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "messages", tuple(self.messages))
        self.validate()

    def validate(self):
        if not self.messages:
            raise InvalidRequest("messages must be non-empty")
        if self.messages[0].role not in ("system", "user"):
            raise InvalidRequest("first message must be system or user")
        if not 0.0 <= self.temperature <= 2.0:
            raise InvalidRequest(f"temperature {self.temperature} outside [0, 2]")
        if self.max_tokens is not None and self.max_tokens <= 0:
            raise InvalidRequest("max_tokens must be positive")

    @classmethod
    def from_prompt(cls, prompt, **kwargs):
        return cls(messages=(ChatMessage("user", prompt),), **kwargs)

    def prompt_text(self):
        return "\n".join(m.content for m in self.messages)

    def to_wire(self):
        body = {
            "model": self.model,
            "messages": [{"role": m.role, "content": m.content} for m in self.messages],
            "temperature": self.temperature,
        }
        if self.max_tokens is not None:
            body["max_tokens"] = self.max_tokens
        return body


def estimate_tokens(text, divisor=TOKEN_DIVISOR):
    """Conservative token count: ``ceil(utf8_bytes / divisor)``."""
    return math.ceil(len(text.encode("utf-8")) / divisor)


def request_key(messages):
    """SHA-256 over the canonical JSON of the message list."""
    payload = json.dumps(
        [[m.role, m.content] for m in messages], ensure_ascii=False, separators=(",", ":")
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class CompletionProvider(Protocol):
    def complete(self, request: CompletionRequest) -> str: ...


def complete(backend, request):
    request.validate()
    return backend.complete(request)


# ---------------------------------------------------------------------------
# replay


@dataclass
class ReplayScript:
    entries: list = field(default_factory=list)
    mode: str = "keyed"

    def __post_init__(self):
        if self.mode not in ("strict_sequence", "keyed"):
            raise ValueError(f"unknown replay mode {self.mode!r}")

    @classmethod
    def load(cls, path, mode="keyed"):
        entries = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                rec = json.loads(line)
                if "completion" not in rec:
                    raise ValueError(f"{path}:{lineno}: record lacks 'completion'")
                entries.append({"key": rec.get("key"), "completion": rec["completion"]})
        return cls(entries, mode)

    @classmethod
    def sequence(cls, completions):
        return cls([{"key": None, "completion": c} for c in completions], "strict_sequence")

    def dump(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            for e in self.entries:
                fh.write(json.dumps(e, ensure_ascii=False, sort_keys=True) + "\n")


class ReplayBackend:
    """Returns recorded completions; holds no network handle at all."""

    def __init__(self, script):
        self.script = script
        self.calls = 0
        self.requests = []
        self._lock = threading.Lock()
        self._pos = 0
        self._by_key = {}
        if script.mode == "keyed":
            for e in script.entries:
                self._by_key.setdefault(e["key"], e["completion"])

    @classmethod
    def from_file(cls, path, mode="keyed"):
        return cls(ReplayScript.load(path, mode))

    def complete(self, request):
        request.validate()
        with self._lock:
            self.calls += 1
            self.requests.append(request)
            if self.script.mode == "strict_sequence":
                if self._pos >= len(self.script.entries):
                    raise ReplayMiss(f"replay exhausted after {self._pos} completions")
                entry = self.script.entries[self._pos]
                self._pos += 1
                return entry["completion"]
            key = request_key(request.messages)
            try:
                return self._by_key[key]
            except KeyError:
                raise ReplayMiss(f"no replay entry for request {key[:12]}") from None


class RecordingBackend:
    """Wraps another provider and records ``{key, completion}`` pairs."""

    def __init__(self, inner):
        self.inner = inner
        self.entries = []
        self.calls = 0
        self.requests = []
        self._lock = threading.Lock()

    def complete(self, request):
        text = self.inner.complete(request)
        with self._lock:
            self.calls += 1
            self.requests.append(request)
            self.entries.append({"key": request_key(request.messages), "completion": text})
        return text

    def script(self):
        seen, entries = set(), []
        for e in self.entries:
            if e["key"] not in seen:
                seen.add(e["key"])
                entries.append(e)
        return ReplayScript(entries, "keyed")


# ---------------------------------------------------------------------------
# http


class _Transient(Exception):
    pass


class HttpBackend:
    """OpenAI-compatible ``/chat/completions`` client.

    Transient failures (timeouts, connection errors, 429, 5xx) are retried
    with exponential backoff; other HTTP errors fail immediately.
    """

    def __init__(
        self,
        endpoint_url,
        api_key=None,
        *,
        api_key_env="OPENAI_API_KEY",
        timeout=60.0,
        max_attempts=5,
        backoff_base=1.0,
        backoff_factor=2.0,
        sleep: Callable[[float], None] = time.sleep,
        clock: Callable[[], float] = time.monotonic,
        client=None,
    ):
        import httpx

        self.endpoint_url = endpoint_url
        self.api_key = api_key if api_key is not None else os.environ.get(api_key_env)
        self.max_attempts = max_attempts
        self.backoff_base = backoff_base
        self.backoff_factor = backoff_factor
        self.sleep = sleep
        self.clock = clock
        self._httpx = httpx
        self._client = client or httpx.Client(timeout=timeout)
        self.calls = 0
        self.requests = []
        self.attempt_times = []
        self._lock = threading.Lock()

    def backoff_schedule(self):
        return [self.backoff_base * self.backoff_factor**i for i in range(self.max_attempts - 1)]

    def _post(self, body):
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        httpx = self._httpx
        try:
            resp = self._client.post(self.endpoint_url, json=body, headers=headers)
        except (httpx.TimeoutException, httpx.TransportError) as exc:
            raise _Transient(f"{type(exc).__name__}: {exc}") from exc
        if resp.status_code == 429 or resp.status_code >= 500:
            raise _Transient(f"HTTP {resp.status_code}")
        if resp.status_code >= 400:
            raise LLMError(f"HTTP {resp.status_code}: {resp.text[:200]}")
        try:
            return resp.json()["choices"][0]["message"]["content"] or ""
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise LLMError(f"malformed completion response: {exc}") from exc

    def complete(self, request):
        request.validate()
        body = request.to_wire()
        delays = self.backoff_schedule()
        last = None
        for attempt in range(self.max_attempts):
            with self._lock:
                self.attempt_times.append(self.clock())
            try:
                text = self._post(body)
            except _Transient as exc:
                last = exc
                if attempt < len(delays):
                    logger.warning("transient LLM failure (%s); retrying in %.1fs", exc, delays[attempt])
                    self.sleep(delays[attempt])
                continue
            with self._lock:
                self.calls += 1
                self.requests.append(request)
            return text
        raise BackendExhausted(f"gave up after {self.max_attempts} attempts: {last}")

    def close(self):
        self._client.close()
