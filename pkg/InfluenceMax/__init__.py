"""
Influence maximization on social networks with multi-transformation evolutionary search.
"""

from .core.config import settings
from .graph import Network, load_edge_list, generate_gn
from .models import DiffusionConfig, SolverConfig
from .services import estimate_spread, run, run_named

__version__ = settings.app_version

__all__ = [
    "settings",
    "Network",
    "load_edge_list",
    "generate_gn",
    "DiffusionConfig",
    "SolverConfig",
    "estimate_spread",
    "run",
    "run_named",
]
