from typing import List, Optional, Tuple

from models.schemas import InitMode


def parse_node_list(text: Optional[str]) -> List[str]:
    """Split a comma-separated node list; blanks dropped, first occurrence kept."""
    if not text:
        return []
    seen: List[str] = []
    for part in text.split(","):
        node = part.strip()
        if node and node not in seen:
            seen.append(node)
    return seen


def parse_sizes(text: str) -> List[int]:
    """'3,4,5' -> [3, 4, 5]"""
    sizes = [int(part) for part in parse_node_list(text)]
    if any(n < 0 for n in sizes):
        raise ValueError("graph sizes must be non-negative")
    return sizes


def parse_init(text: Optional[str]) -> Tuple[InitMode, Optional[str]]:
    """`self` or `central:SOURCE`."""
    value = (text or "self").strip()
    if value == "self":
        return InitMode.SELF, None
    mode, _, source = value.partition(":")
    if mode == "central" and source.strip():
        return InitMode.CENTRAL, source.strip()
    raise ValueError(f"--init expects 'self' or 'central:SOURCE', got '{value}'")
