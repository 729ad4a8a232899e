# D* toolkit - command implementations
# Each returns a status dict; dstar.py turns it into output and an exit code

from .query import cmd_query
from .crosscheck import cmd_crosscheck
from .bounds import cmd_bounds

__all__ = [
    "cmd_query",
    "cmd_crosscheck",
    "cmd_bounds",
]
