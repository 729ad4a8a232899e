"""Sequential d-separation deciders used as ground truth for D*."""

from .reach import d_separated_reach
from .moral import d_separated_moral
from .certificate import verify_certificate

__all__ = ["d_separated_reach", "d_separated_moral", "verify_certificate"]
