
from .config import settings
from .exceptions import *
from .logging import configure_logging

__all__ = ["settings", "exceptions", "configure_logging"]
