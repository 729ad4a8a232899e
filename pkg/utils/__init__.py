from .text_utils import parse_init, parse_node_list, parse_sizes
from .formatters import format_bound_report, format_crosscheck_rows, format_outcome

__all__ = [
    "parse_init",
    "parse_node_list",
    "parse_sizes",
    "format_bound_report",
    "format_crosscheck_rows",
    "format_outcome",
]
