"""Content verification platform.

Ingests news/social assets, analyzes them under seven criteria,
anchors every asset in a tamper-evident hash chain, records results in
a knowledge graph, and serves per-criterion verdicts to a feed UI.
"""

__version__ = "0.1.0"

from .criteria import CRITERIA, AnalysisResult  # noqa: F401
