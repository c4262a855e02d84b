"""Large-sieve experiments for special characters modulo prime squares."""

from ._sievelab import *  # noqa: F401,F403
from ._sievelab import Error, run

__all__ = [name for name in dir() if not name.startswith("_")]
