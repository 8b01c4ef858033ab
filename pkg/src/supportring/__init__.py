"""Support-class subrings of the integral group ring of SL2(F_q)."""

from .gf import GF, field_new
from .groupring import GroupAlgebraElement, class_sum, convolve, decompose_support
from .report import VERSION as __version__
from .scring import sc_mul, structure_table
from .sl2 import LABELS, matrix_group

__all__ = [
    "GF", "field_new", "GroupAlgebraElement", "class_sum", "convolve", "decompose_support",
    "sc_mul", "structure_table", "LABELS", "matrix_group", "__version__",
]
