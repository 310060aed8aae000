"""Autonomous news analysis: agent loop, ingestion, summarization, geoparsing, LDA and trend plots."""

from .agent import AgentConfig, ToolRegistry, ToolSpec, parse_action, render_prompt, run_loop
from .llm import CompletionRequest, HttpBackend, ReplayBackend, ReplayScript, estimate_tokens
from .topics import Corpus, GibbsLDA, LdaConfig, LdaModel, fit, preprocess

__version__ = "0.1.0"

__all__ = [
    "AgentConfig", "ToolRegistry", "ToolSpec", "parse_action", "render_prompt", "run_loop",
    "CompletionRequest", "HttpBackend", "ReplayBackend", "ReplayScript", "estimate_tokens",
    "Corpus", "GibbsLDA", "LdaConfig", "LdaModel", "fit", "preprocess",
]
