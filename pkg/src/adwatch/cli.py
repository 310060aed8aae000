"""Command-line entry point: ``adwatch agent`` and the manual stage commands."""

from __future__ import annotations

import argparse
import logging
import sys

from .llm import LLMError
from .pipeline import STAGES, ConfigError, MissingUpstream, cmd_agent, cmd_stage, fixture_config_path, load_config

DEFAULT_QUESTION = (
    "Can you help me to know something new about Alzheimer's Disease and maybe draw some plots for me?"
)


def _common(p):
    p.add_argument("--config", help="run configuration file (default: bundled default.ini)")
    p.add_argument("--offline-fixture", action="store_true",
                   help="use the bundled offline fixture configuration")
    p.add_argument("--data-dir")
    p.add_argument("--output-dir")
    p.add_argument("--backend", choices=("http", "replay"))
    p.add_argument("--replay", dest="replay_path", help="replay script for --backend replay")
    p.add_argument("--seed", type=int, help="override the LDA seed")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="adwatch", description="Autonomous Alzheimer's disease news analysis pipeline."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    agent = sub.add_parser("agent", help="let the agent plan and run the whole pipeline")
    agent.add_argument("--question", default=DEFAULT_QUESTION)
    _common(agent)
    for stage in STAGES:
        _common(sub.add_parser(stage, help=f"run the {stage} stage only"))
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    config_path = args.config
    if args.offline_fixture:
        config_path = str(fixture_config_path())
    try:
        config = load_config(
            config_path,
            data_dir=args.data_dir,
            output_dir=args.output_dir,
            backend=args.backend,
            replay_path=args.replay_path,
            seed=args.seed,
        )
        if args.command == "agent":
            report, transcript = cmd_agent(config, args.question)
            print(f"terminated: {transcript.terminated_reason} after {len(transcript.steps)} steps")
            if transcript.final_answer:
                print(f"final answer: {transcript.final_answer}")
        else:
            report = cmd_stage(config, args.command)
    except (ConfigError, MissingUpstream, LLMError, OSError) as exc:
        print(f"adwatch: error: {exc}", file=sys.stderr)
        return 2
    for path in report.outputs:
        print(path)
    print(f"report: {config.output_dir / 'report.json'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
