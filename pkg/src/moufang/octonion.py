"""Octonions, the unit-octonion Moufang loop and its Cayley-transform chart.

Octonions are 8-tuples ``(o0, ..., o7)`` with ``o0`` the real part.  The
product is the Cayley-Dickson doubling of Hamilton quaternions,

    (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)),

with ``e4`` the doubling unit and ``e5 = e1 e4``, ``e6 = e2 e4``, ``e7 = e3 e4``.
Entries may be exact rationals, floats or jets.

The chart ``x -> ((1 - |x|^2) - 2x) / (1 + |x|^2)`` sends imaginary 7-vectors to
unit octonions and is rational in both directions, so the loop product read
in chart coordinates is a rational map and all derivatives stay exact.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from moufang.loopgeom import ChartSingularityError, LocalLoop, calibrate_structure_constants
from moufang.malcev import StructureConstants
from moufang.scalars import EXACT, to_scalar

DIM = 7
BASIS_NAMES = tuple(f"e{i}" for i in range(1, 8))
QUATERNION_INDICES = (0, 1, 2)  # chart indices of e1, e2, e3


def quat_mul(p: Sequence, q: Sequence) -> tuple:
    a0, a1, a2, a3 = p
    b0, b1, b2, b3 = q
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def quat_conj(p: Sequence) -> tuple:
    return (p[0], -p[1], -p[2], -p[3])


def oct_mul(p: Sequence, q: Sequence) -> tuple:
    """Cayley-Dickson product of two octonions."""
    a, b = p[:4], p[4:]
    c, d = q[:4], q[4:]
    ac = quat_mul(a, c)
    db = quat_mul(quat_conj(d), b)
    da = quat_mul(d, a)
    bc = quat_mul(b, quat_conj(c))
    return tuple(x - y for x, y in zip(ac, db)) + tuple(x + y for x, y in zip(da, bc))


def oct_conj(p: Sequence) -> tuple:
    return (p[0],) + tuple(-x for x in p[1:])


def oct_add(p: Sequence, q: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(p, q))


def oct_sub(p: Sequence, q: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(p, q))


def norm2(p: Sequence):
    return sum((x * x for x in p[1:]), p[0] * p[0])


def basis_octonion(k: int, mode: str = EXACT) -> tuple:
    """``e_k`` for k = 0..7 (``e_0`` = 1)."""
    one, zero = to_scalar(1, mode), to_scalar(0, mode)
    return tuple(one if i == k else zero for i in range(8))


def associator(p, q, r) -> tuple:
    return oct_sub(oct_mul(oct_mul(p, q), r), oct_mul(p, oct_mul(q, r)))


def moufang_defect(g, h, k) -> tuple:
    """``((gh)g)k - g(h(gk))``; identically zero for octonions."""
    return oct_sub(oct_mul(oct_mul(oct_mul(g, h), g), k), oct_mul(g, oct_mul(h, oct_mul(g, k))))


def moufang_defects(g, h, k) -> dict:
    """All three Moufang identities as defects keyed by a short name."""
    gh = oct_mul(g, h)
    return {
        "left": moufang_defect(g, h, k),
        "middle": oct_sub(oct_mul(gh, oct_mul(k, g)), oct_mul(oct_mul(g, oct_mul(h, k)), g)),
        "right": oct_sub(
            oct_mul(oct_mul(oct_mul(k, g), h), g), oct_mul(k, oct_mul(g, oct_mul(h, g)))
        ),
    }


def multiplication_table() -> list[list[tuple[int, int]]]:
    """``table[a][b] = (sign, c)`` with ``e_a e_b = sign * e_c``, a, b in 0..7."""
    table = []
    for a in range(8):
        row = []
        for b in range(8):
            prod = oct_mul(basis_octonion(a), basis_octonion(b))
            (c,) = [i for i, x in enumerate(prod) if x]
            row.append((int(prod[c]), c))
        table.append(row)
    return table


def format_table(table=None) -> list[str]:
    table = table or multiplication_table()
    names = ("1",) + BASIS_NAMES
    lines = []
    for a in range(8):
        cells = []
        for b in range(8):
            sign, c = table[a][b]
            cells.append(("-" if sign < 0 else "+") + names[c])
        lines.append(f"{names[a]:>2} | " + " ".join(f"{cell:>3}" for cell in cells))
    return lines


# chart ------------------------------------------------------------------

def chart_to_loop(x: Sequence) -> tuple:
    """Cayley transform of an imaginary 7-vector into a unit octonion."""
    if len(x) != DIM:
        raise ValueError(f"chart points have {DIM} coordinates, got {len(x)}")
    r2 = sum((xi * xi for xi in x[1:]), x[0] * x[0])
    inv = 1 / (1 + r2)
    return ((1 - r2) * inv,) + tuple(-2 * xi * inv for xi in x)


def loop_to_chart(g: Sequence) -> tuple:
    """Inverse Cayley transform ``x = -Im(g) / (1 + Re(g))``.

    Raises ChartSingularityError at ``Re(g) = -1``, the one excluded point.
    """
    den = 1 + g[0]
    if not getattr(den, "const", den):
        raise ChartSingularityError("chart singularity: Re(g) = -1")
    inv = 1 / den
    return tuple(-gi * inv for gi in g[1:])


def loop_mul(a: Sequence, b: Sequence) -> tuple:
    """Loop product in chart coordinates; works on scalars and on jets."""
    return loop_to_chart(oct_mul(chart_to_loop(a), chart_to_loop(b)))


OCTONION_LOOP = LocalLoop(dim=DIM, product=loop_mul, name="unit octonions, Cayley chart")


def _quat_chart_mul(a, b):
    full = loop_mul(tuple(a) + (0,) * 4, tuple(b) + (0,) * 4)
    return full[:3]


# The associative unit quaternions as a 3-dimensional loop of their own.
QUATERNION_LOOP = LocalLoop(dim=3, product=_quat_chart_mul, name="unit quaternions, Cayley chart")


@lru_cache(maxsize=None)
def derive_structure_constants(loop: LocalLoop = OCTONION_LOOP, mode: str = EXACT) -> StructureConstants:
    """Tangent structure constants of ``loop``, calibrated on the left Maurer-Cartan equation.

    Raises CalibrationError if the calibrated constants do not satisfy that
    equation at the probe points away from the origin.
    """
    names = BASIS_NAMES if loop.dim == DIM else tuple(f"e{i}" for i in range(1, loop.dim + 1))
    return calibrate_structure_constants(loop, mode=mode, basis=names)
