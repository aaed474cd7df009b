"""Exact verification of the infinitesimal theory of analytic Moufang loops.

The unit octonions, read through a rational Cayley-transform chart, give a
local analytic Moufang loop whose product is a rational map.  Every identity
between auxiliary functions, infinitesimal translations, the Yamagutian and
the tangent Mal'tsev algebra can then be checked to exact zero.
"""

from moufang.scalars import EXACT, FLOAT, to_scalar, format_scalar
from moufang.jets import Jet, jet_lift, extract_partial

__all__ = ["EXACT", "FLOAT", "to_scalar", "format_scalar", "Jet", "jet_lift", "extract_partial"]
