from .validators import SeedSetValidator
from .serializers import ResultWriter, trace_frame, run_summary, seeds_summary
from . import seeding

__all__ = [
    "SeedSetValidator",
    "ResultWriter",
    "trace_frame",
    "run_summary",
    "seeds_summary",
    "seeding",
]
