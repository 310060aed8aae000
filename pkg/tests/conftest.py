import json
from pathlib import Path

import pytest

from adwatch.pipeline import cmd_agent, fixture_config_path, load_config

FIXTURES = Path(str(fixture_config_path())).parent
GOLDEN = Path(__file__).parent / "golden"
QUESTION = (
    "Can you help me to know something new about Alzheimer's Disease and maybe draw some plots for me?"
)


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def manifest():
    return json.loads((FIXTURES / "manifest.json").read_text("utf-8"))


def offline_config(root, **overrides):
    return load_config(fixture_config_path(), data_dir=root / "data", output_dir=root / "out", **overrides)


@pytest.fixture(scope="session")
def offline_run(tmp_path_factory):
    """One full replayed agent run over the fixture corpus, shared by many tests."""
    root = tmp_path_factory.mktemp("offline")
    cfg = offline_config(root)
    report, transcript = cmd_agent(cfg, QUESTION)
    return dict(root=root, config=cfg, report=report, transcript=transcript)


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
