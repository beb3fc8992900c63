"""(Δ+1)-edge coloring with truncated Vizing chains, star coloring and a verifier."""
from .coloring import PartialColoring, VerifyReport, verify
from .graph import Graph, generate, load_graph
from .pipeline import PipelineConfig, color

__all__ = [
    "Graph", "PartialColoring", "PipelineConfig", "VerifyReport",
    "color", "generate", "load_graph", "verify",
]
