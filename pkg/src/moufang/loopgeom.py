"""Infinitesimal calculus of a local analytic loop, evaluated with jets.

A :class:`LocalLoop` is a product ``m(g, h)`` on chart coordinates with the
identity at the origin.  From it we build

* the auxiliary frames ``u^s_j(g) = d(hg)^s/dh^j`` and ``v^s_j(g) = d(gh)^s/dh^j``
  at ``h = 0``, with ``w = -u - v``;
* the infinitesimal translations ``L_x = x^j u^s_j d_s``, ``R_x``, ``M_x`` and
  their triality conjugates as vector fields;
* commutators of those fields, the Yamagutian, and defect evaluators for the
  differential identities a Moufang loop satisfies.

Vector-field commutators use the convention

    [A, B]^i = B^s d_s A^i - A^s d_s B^i,

under which ``x -> L_x`` is a homomorphism from the tangent bracket ``[x, y]``
(the quadratic part of ``m(x, y) - m(y, x)``) and ``Y(x; y)`` is contracted
from the Yamaguti functions ``Y^s_jk`` with no sign change.

Derivatives come from nilpotent tags (see :mod:`moufang.jets`).  A field
evaluation consumes tags from a budget of three: one per translation, one
more per level of commutator nesting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from moufang.jets import ALL_TAGS, Jet, TagBudgetError, jet_tags, part, seed_point
from moufang.malcev import StructureConstants, TernaryTable, bracket
from moufang.scalars import EXACT, abs_max, mode_of, rational, to_scalar


class ChartSingularityError(ValueError):
    """A point (or a product) left the chart domain."""


class CalibrationError(RuntimeError):
    """A convention check failed: structure constants or two routes disagree."""


@dataclass(frozen=True)
class LocalLoop:
    """Chart-level analytic loop: ``product(g, h)`` with ``product(0, h) = h``."""

    dim: int
    product: Callable
    name: str = ""

    def __call__(self, g, h):
        return self.product(g, h)

    def origin(self, mode: str = EXACT) -> tuple:
        return (to_scalar(0, mode),) * self.dim


def _mode(g, mode=None) -> str:
    return mode or mode_of(list(g)) or EXACT


def _free_tags(values) -> tuple:
    used = jet_tags(values)
    return tuple(t for t in ALL_TAGS if not t & used)


# ---------------------------------------------------------------------------
# field values

@dataclass(frozen=True)
class FieldValue:
    """Components ``X^s`` of a vector field at a recorded chart point."""

    point: tuple
    coeffs: tuple

    def _same_point(self, other: "FieldValue"):
        if self.point != other.point:
            raise ValueError("field values attached to different points cannot be combined")

    def __add__(self, other):
        self._same_point(other)
        return FieldValue(self.point, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same_point(other)
        return FieldValue(self.point, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return FieldValue(self.point, tuple(-a for a in self.coeffs))

    def __mul__(self, c):
        return FieldValue(self.point, tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return FieldValue(self.point, tuple(a / c for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def max_abs(self):
        return abs_max(self.coeffs)


# ---------------------------------------------------------------------------
# vector fields as evaluable expressions

class Field:
    """A vector field built from translations by linear combination and commutators.

    ``at(loop, g, tags, mode)`` returns the components at ``g`` (a list whose
    entries may be jets); ``tags`` are the nilpotent tags the evaluation may
    use internally.  They must not occur in ``g``.
    """

    depth = 0

    def at(self, loop, g, tags, mode):
        raise NotImplementedError

    def __add__(self, other):
        return Combination(((1, self), (1, other)))

    def __sub__(self, other):
        return Combination(((1, self), (-1, other)))

    def __neg__(self):
        return Combination(((-1, self),))

    def __rmul__(self, c):
        return Combination(((c, self),))


class Translation(Field):
    """``L_x`` (``kind='L'``: left translations, frame u) or ``R_x`` (frame v)."""

    depth = 1

    def __init__(self, kind: str, x: Sequence):
        if kind not in ("L", "R"):
            raise ValueError(f"primitive translations are 'L' or 'R', got {kind!r}")
        self.kind = kind
        self.x = tuple(x)

    def at(self, loop, g, tags, mode):
        if len(self.x) != loop.dim:
            raise ValueError("dimension mismatch between tangent vector and loop")
        if not tags:
            raise TagBudgetError("no nilpotent tag left for a translation")
        t = tags[0]
        h = seed_point(loop.origin(mode), [(t, self.x)])
        prod = loop(h, g) if self.kind == "L" else loop(g, h)
        return [part(c, t) for c in prod]

    def __repr__(self):
        return f"{self.kind}{self.x}"


def _coef(c, mode):
    if isinstance(c, Fraction):
        return rational(c.numerator, c.denominator, mode)
    return c


class Combination(Field):
    def __init__(self, terms):
        flat = []
        for c, f in terms:
            if isinstance(f, Combination):
                flat.extend((c * c2, f2) for c2, f2 in f.terms)
            else:
                flat.append((c, f))
        self.terms = tuple(flat)
        self.depth = max(f.depth for _, f in self.terms)

    def at(self, loop, g, tags, mode):
        out = None
        for c, f in self.terms:
            val = f.at(loop, g, tags, mode)
            c = _coef(c, mode)
            term = [c * v for v in val] if c != 1 else val
            out = term if out is None else [a + b for a, b in zip(out, term)]
        return out


class Commutator(Field):
    """``[A, B]^i = B^s d_s A^i - A^s d_s B^i``."""

    def __init__(self, a: Field, b: Field):
        self.a, self.b = a, b
        self.depth = 1 + max(a.depth, b.depth)

    def at(self, loop, g, tags, mode):
        if len(tags) < self.depth:
            raise TagBudgetError(
                f"commutator needs {self.depth} nilpotent tags, only {len(tags)} free (order-3 cap)"
            )
        t, rest = tags[0], tags[1:]
        a = self.a.at(loop, g, rest, mode)
        b = self.b.at(loop, g, rest, mode)
        a_along_b = self.a.at(loop, seed_point(g, [(t, b)]), rest, mode)
        b_along_a = self.b.at(loop, seed_point(g, [(t, a)]), rest, mode)
        return [part(p, t) - part(q, t) for p, q in zip(a_along_b, b_along_a)]


def comm(a: Field, b: Field) -> Commutator:
    return Commutator(a, b)


def L(x) -> Field:
    return Translation("L", x)


def R(x) -> Field:
    return Translation("R", x)


def M(x) -> Field:
    return -(L(x) + R(x))


def L_plus(x) -> Field:
    """``L+ = R - M``."""
    return R(x) - M(x)


def R_plus(x) -> Field:
    """``R+ = M - L``."""
    return M(x) - L(x)


def M_plus(x) -> Field:
    """``M+ = L - R``."""
    return L(x) - R(x)


TRANSLATIONS = {"L": L, "R": R, "M": M, "L+": L_plus, "R+": R_plus, "M+": M_plus}


def yamagutian(x, y) -> Field:
    """``Y(x; y) = ([L_x,L_y] + [R_x,R_y] + [M_x,M_y]) / 6``."""
    sixth = Fraction(1, 6)
    return sixth * comm(L(x), L(y)) + sixth * comm(R(x), R(y)) + sixth * comm(M(x), M(y))


def evaluate(loop: LocalLoop, field: Field, g: Sequence, mode: str | None = None) -> FieldValue:
    """Evaluate ``field`` at ``g``; tags already carried by ``g`` survive in the result."""
    g = tuple(g)
    if len(g) != loop.dim:
        raise ValueError("chart point has the wrong dimension")
    mode = _mode(g, mode)
    tags = _free_tags(g)
    if field.depth > len(tags):
        raise TagBudgetError(f"field needs {field.depth} tags, {len(tags)} available")
    vals = field.at(loop, list(g), tags, mode)
    return FieldValue(g, tuple(_plain(v) for v in vals))


def field_commutator(loop: LocalLoop, a: Field, b: Field, g: Sequence) -> FieldValue:
    return evaluate(loop, Commutator(a, b), g)


def translation_field(frames: "AuxFrames", which: str, x: Sequence) -> FieldValue:
    """``L_x``, ``R_x``, ``M_x`` (or a conjugate) read off precomputed frames."""
    n = len(frames.u)
    if len(x) != n:
        raise ValueError("dimension mismatch between tangent vector and frames")
    mats = {"L": frames.u, "R": frames.v, "M": frames.w}
    if which in mats:
        mat = mats[which]
    else:
        conj = dict(zip(("L+", "R+", "M+"), conjugated_frames(frames)))
        if which not in conj:
            raise ValueError(f"unknown translation {which!r}")
        mat = conj[which]
    return FieldValue(frames.point, tuple(sum((mat[s][j] * x[j] for j in range(1, n)), mat[s][0] * x[0]) for s in range(n)))


# ---------------------------------------------------------------------------
# frames and their derivatives

@dataclass(frozen=True)
class AuxFrames:
    """``u[s][j]``, ``v[s][j]``, ``w[s][j]`` at ``point``; ``u + v + w = 0``."""

    point: tuple
    u: tuple
    v: tuple
    w: tuple


def _mat(rows):
    return tuple(tuple(r) for r in rows)


def aux_frames(loop: LocalLoop, g: Sequence, mode: str | None = None) -> AuxFrames:
    """Auxiliary frames at ``g`` from one-tag jets."""
    g = tuple(g)
    mode = _mode(g, mode)
    n = loop.dim
    cols_u = [evaluate(loop, L(_e(n, j, mode)), g, mode).coeffs for j in range(n)]
    cols_v = [evaluate(loop, R(_e(n, j, mode)), g, mode).coeffs for j in range(n)]
    u = _mat([[cols_u[j][s] for j in range(n)] for s in range(n)])
    v = _mat([[cols_v[j][s] for j in range(n)] for s in range(n)])
    w = _mat([[-u[s][j] - v[s][j] for j in range(n)] for s in range(n)])
    return AuxFrames(g, u, v, w)


def conjugated_frames(frames: AuxFrames) -> tuple:
    """``(L+, R+, M+) = (R - M, M - L, L - R)`` as frame matrices."""
    u, v, w = frames.u, frames.v, frames.w
    n = len(u)
    lp = _mat([[v[s][j] - w[s][j] for j in range(n)] for s in range(n)])
    rp = _mat([[w[s][j] - u[s][j] for j in range(n)] for s in range(n)])
    mp = _mat([[u[s][j] - v[s][j] for j in range(n)] for s in range(n)])
    return lp, rp, mp


def _e(n, k, mode):
    one, zero = to_scalar(1, mode), to_scalar(0, mode)
    return tuple(one if i == k else zero for i in range(n))


@dataclass
class FrameJet:
    """Frames and their first derivatives: ``du[i][k][p] = d_p u^i_k``."""

    u: list
    v: list
    du: list
    dv: list

    @property
    def w(self):
        n = len(self.u)
        return [[-self.u[s][j] - self.v[s][j] for j in range(n)] for s in range(n)]

    @property
    def dw(self):
        n = len(self.u)
        return [[[-self.du[i][k][p] - self.dv[i][k][p] for p in range(n)] for k in range(n)] for i in range(n)]


def frame_jet(loop: LocalLoop, g: Sequence, mode: str | None = None) -> FrameJet:
    """Frames and derivatives at ``g`` with two tags (``g`` may carry the third)."""
    g = list(g)
    mode = _mode(g, mode)
    free = _free_tags(g)
    if len(free) < 2:
        raise TagBudgetError("frame derivatives need two free tags")
    th, tg = free[0], free[1]
    n = loop.dim
    origin = loop.origin(mode)
    u = [[None] * n for _ in range(n)]
    v = [[None] * n for _ in range(n)]
    du = [[[None] * n for _ in range(n)] for _ in range(n)]
    dv = [[[None] * n for _ in range(n)] for _ in range(n)]
    for k in range(n):
        h = seed_point(origin, [(th, k)])
        for p in range(n):
            gp = seed_point(g, [(tg, p)])
            left = loop(h, gp)
            right = loop(gp, h)
            for i in range(n):
                lk, rk = part(left[i], th), part(right[i], th)
                du[i][k][p] = _plain(part(lk, tg))
                dv[i][k][p] = _plain(part(rk, tg))
                if p == 0:
                    u[i][k] = _plain(lk.drop(tg) if isinstance(lk, Jet) else lk)
                    v[i][k] = _plain(rk.drop(tg) if isinstance(rk, Jet) else rk)
    return FrameJet(u, v, du, dv)


def _plain(value):
    """Collapse tag-free jets so exact comparisons see plain rationals."""
    if isinstance(value, Jet) and not value.tags:
        return value.const
    return value


def _secondary(f, df):
    n = len(f)
    return [
        [
            [sum(f[p][k] * df[s][j][p] - f[p][j] * df[s][k][p] for p in range(n)) for k in range(n)]
            for j in range(n)
        ]
        for s in range(n)
    ]


def _freeze3(t):
    return tuple(tuple(tuple(_plain(c) for c in r) for r in m) for m in t)


def secondary_aux(loop: LocalLoop, g: Sequence, fj: FrameJet | None = None) -> tuple:
    """``(u^s_jk, v^s_jk, w^s_jk)`` with ``u^s_jk = u^p_k d_p u^s_j - u^p_j d_p u^s_k``."""
    fj = fj or frame_jet(loop, g)
    return (
        _freeze3(_secondary(fj.u, fj.du)),
        _freeze3(_secondary(fj.v, fj.dv)),
        _freeze3(_secondary(fj.w, fj.dw)),
    )


def yamaguti_functions(loop: LocalLoop, g: Sequence, fj: FrameJet | None = None) -> tuple:
    """``Y^s_jk = (u^s_jk + v^s_jk + w^s_jk) / 6``, indexed ``[s][j][k]``."""
    su, sv, sw = secondary_aux(loop, g, fj)
    n = len(su)
    return tuple(
        tuple(tuple(_plain((su[s][j][k] + sv[s][j][k] + sw[s][j][k]) / 6) for k in range(n)) for j in range(n))
        for s in range(n)
    )


def associator_coeffs(loop: LocalLoop, g: Sequence, fj: FrameJet | None = None) -> tuple:
    """``l^i_jk = v^s_j d_s u^i_k - u^s_k d_s v^i_j``, indexed ``[i][j][k]``.

    As a vector field ``x^j y^k l^s_jk d_s`` equals ``[L_y, R_x]``.
    """
    fj = fj or frame_jet(loop, g)
    u, v, du, dv = fj.u, fj.v, fj.du, fj.dv
    n = len(u)
    return tuple(
        tuple(
            tuple(_plain(sum(v[s][j] * du[i][k][s] - u[s][k] * dv[i][j][s] for s in range(n))) for k in range(n))
            for j in range(n)
        )
        for i in range(n)
    )


def _linearize3(loop: LocalLoop, fn, mode: str) -> tuple:
    """``T^i_jkl = d_l T^i_jk`` at the origin for a rank-3 function ``fn(loop, g)``."""
    n = loop.dim
    origin = loop.origin(mode)
    cols = []
    for l in range(n):
        g = seed_point(origin, [(ALL_TAGS[2], l)])
        t = fn(loop, g)
        cols.append(t)
    return tuple(
        tuple(
            tuple(tuple(_plain(part(cols[l][i][j][k], ALL_TAGS[2])) for l in range(n)) for k in range(n))
            for j in range(n)
        )
        for i in range(n)
    )


def associator_constants(loop: LocalLoop, mode: str = EXACT) -> tuple:
    """Third-order associators ``l^i_jkl = d_l l^i_jk (0)``."""
    return _linearize3(loop, lambda lp, g: associator_coeffs(lp, g), mode)


# ---------------------------------------------------------------------------
# calibration of the tangent bracket

def calibrate_structure_constants(
    loop: LocalLoop, mode: str = EXACT, basis: Sequence[str] = (), probes: int = 2
) -> StructureConstants:
    """``C^i_jk`` from ``[L_ej, L_ek] + 2 [L_ej, R_ek]`` at the origin.

    The left Maurer-Cartan equation is then re-checked at ``probes`` points
    away from the origin; any nonzero defect raises CalibrationError.
    """
    n = loop.dim
    origin = loop.origin(mode)
    e = [_e(n, k, mode) for k in range(n)]
    C = [[[to_scalar(0, mode)] * n for _ in range(n)] for _ in range(n)]
    for j in range(n):
        for k in range(j + 1, n):
            val = evaluate(loop, comm(L(e[j]), L(e[k])) + 2 * comm(L(e[j]), R(e[k])), origin, mode).coeffs
            for i in range(n):
                C[i][j][k] = val[i]
                C[i][k][j] = -val[i]
    sc = StructureConstants(n, C, tuple(basis))
    for idx in range(probes):
        g = tuple(rational((-1) ** (idx + p) * (p % 3 + 1), 5 + idx, mode) for p in range(n))
        x, y = e[idx % n], e[(idx + 1) % n]
        if n > 2:
            y = tuple(a + b for a, b in zip(y, e[(idx + 2) % n]))
        d = maurer_cartan_defect(loop, g, x, y, sc, only=("3a",))["3a"]
        if not _is_zero(d.coeffs, mode):
            raise CalibrationError(
                f"left Maurer-Cartan equation fails at probe {idx} with calibrated constants "
                f"(max defect {d.max_abs()}); frame or bracket convention is wrong"
            )
    return sc


def _is_zero(values, mode, tol=1e-9) -> bool:
    if mode == EXACT:
        return not any(values)
    return abs_max(values) <= tol


# ---------------------------------------------------------------------------
# defect evaluators

def _matvec(mat, x):
    n = len(x)
    return tuple(sum(mat[i][j] * x[j] for j in range(n)) for i in range(len(mat)))


def _matmul(A, B):
    n = len(B)
    return tuple(tuple(sum(A[i][p] * B[p][j] for p in range(n)) for j in range(len(B[0]))) for i in range(len(A)))


def product_jacobians(loop: LocalLoop, g: Sequence, h: Sequence, mode: str | None = None) -> tuple:
    """``(d(gh)^i/dg^s, d(gh)^i/dh^s)`` as matrices ``[i][s]``."""
    g, h = list(g), list(h)
    mode = _mode(g, mode)
    t = _free_tags(g + h)[0]
    n = loop.dim
    Jg = [[None] * n for _ in range(n)]
    Jh = [[None] * n for _ in range(n)]
    for s in range(n):
        dg = loop(seed_point(g, [(t, s)]), h)
        dh = loop(g, seed_point(h, [(t, s)]))
        for i in range(n):
            Jg[i][s] = _plain(part(dg[i], t))
            Jh[i][s] = _plain(part(dh[i], t))
    return _mat(Jg), _mat(Jh)


def gle_defect(loop: LocalLoop, g: Sequence, h: Sequence, mode: str | None = None) -> tuple:
    """Left-hand sides of the three generalized Lie equations as ``[i][j]`` matrices.

    ``w(g) d_g(gh) + u(h) d_h(gh) + u(gh)``, ``v(g) d_g + w(h) d_h + v(gh)``,
    ``u(g) d_g + v(h) d_h + w(gh)``.
    """
    g, h = tuple(g), tuple(h)
    mode = _mode(g, mode)
    gh = tuple(loop(g, h))
    Fg, Fh, Fgh = aux_frames(loop, g, mode), aux_frames(loop, h, mode), aux_frames(loop, gh, mode)
    Jg, Jh = product_jacobians(loop, g, h, mode)
    out = []
    for a, b, c in ((Fg.w, Fh.u, Fgh.u), (Fg.v, Fh.w, Fgh.v), (Fg.u, Fh.v, Fgh.w)):
        A, B = _matmul(Jg, a), _matmul(Jh, b)
        out.append(_mat([[A[i][j] + B[i][j] + c[i][j] for j in range(loop.dim)] for i in range(loop.dim)]))
    return tuple(out)


def maurer_cartan_defect(
    loop: LocalLoop, g: Sequence, x, y, C: StructureConstants, only: Sequence[str] | None = None
) -> dict:
    """Maurer-Cartan defects (keys 3a-3c) and their Yamagutian rewrite (keys 4a-4c).

    ``only`` restricts to a subset of the keys ``3a 3b 3c 4a 4b 4c``.
    """
    g = tuple(g)
    mode = _mode(g)
    keys = tuple(only or ("3a", "3b", "3c", "4a", "4b", "4c"))
    xy = bracket(C, x, y)
    yx = bracket(C, y, x)
    ev = lambda f: evaluate(loop, f, g, mode)
    third = rational(1, 3, mode)
    LL = ev(comm(L(x), L(y)))
    LR = ev(comm(L(x), R(y)))
    out = {}
    if "3a" in keys:
        out["3a"] = LL - ev(L(xy)) + 2 * LR
    need_rr = any(k in keys for k in ("3b", "3c", "4a", "4b", "4c"))
    if need_rr:
        RR = ev(comm(R(x), R(y)))
        RL = ev(comm(R(x), L(y)))
    if "3b" in keys:
        out["3b"] = RR - ev(R(yx)) + 2 * RL
    if "3c" in keys:
        out["3c"] = LR - RL
    if any(k in keys for k in ("4a", "4b", "4c")):
        MM = ev(comm(M(x), M(y)))
        Y = (LL + RR + MM) / 6
        Lxy, Rxy = ev(L(xy)), ev(R(xy))
        if "4a" in keys:
            out["4a"] = LL - (2 * Y + third * Lxy + 2 * third * Rxy)
        if "4b" in keys:
            out["4b"] = LR - (-Y + third * Lxy - third * Rxy)
        if "4c" in keys:
            out["4c"] = RR - (2 * Y - 2 * third * Lxy - third * Rxy)
    return out


def yamagutian_field(loop: LocalLoop, g: Sequence, x, y) -> FieldValue:
    return evaluate(loop, yamagutian(x, y), g)


def integrability_defect(loop: LocalLoop, g: Sequence, h: Sequence, printed: bool = False) -> tuple:
    """``Y^s_jk(g) d(gh)^i/dg^s + Y^s_jk(h) d(gh)^i/dh^s - Y^i_jk(gh)``, indexed ``[i][j][k]``.

    ``printed=True`` uses ``d/dg`` in the second term as well.
    """
    g, h = tuple(g), tuple(h)
    gh = tuple(loop(g, h))
    Yg, Yh, Ygh = (yamaguti_functions(loop, p) for p in (g, h, gh))
    Jg, Jh = product_jacobians(loop, g, h)
    J2 = Jg if printed else Jh
    n = loop.dim
    return tuple(
        tuple(
            tuple(
                _plain(sum(Yg[s][j][k] * Jg[i][s] + Yh[s][j][k] * J2[i][s] for s in range(n)) - Ygh[i][j][k])
                for k in range(n)
            )
            for j in range(n)
        )
        for i in range(n)
    )


def lemma6_defect(loop: LocalLoop, g: Sequence, C: StructureConstants) -> tuple:
    """``Y^i_jk - l^i_jk - (1/3) C^s_jk (u^i_s - v^i_s)``, indexed ``[i][j][k]``."""
    g = tuple(g)
    mode = _mode(g)
    fj = frame_jet(loop, g, mode)
    Y = yamaguti_functions(loop, g, fj)
    l = associator_coeffs(loop, g, fj)
    third = rational(1, 3, mode)
    n = loop.dim
    u, v, Cc = fj.u, fj.v, C.C
    return tuple(
        tuple(
            tuple(
                _plain(Y[i][j][k] - l[i][j][k] - third * sum(Cc[s][j][k] * (u[i][s] - v[i][s]) for s in range(n)))
                for k in range(n)
            )
            for j in range(n)
        )
        for i in range(n)
    )


def yamaguti_constants_routes(loop: LocalLoop, C: StructureConstants, mode: str = EXACT) -> tuple:
    """``Y^i_jkl`` by linearizing ``Y^i_jk`` at the origin, and by ``l^i_jkl + (1/3) C^s_jk C^i_sl``."""
    n = loop.dim
    lin = _linearize3(loop, lambda lp, g: yamaguti_functions(lp, g), mode)
    lc = associator_constants(loop, mode)
    third = rational(1, 3, mode)
    Cc = C.C
    via_assoc = tuple(
        tuple(
            tuple(
                tuple(
                    _plain(lc[i][j][k][l] + third * sum(Cc[s][j][k] * Cc[i][s][l] for s in range(n)))
                    for l in range(n)
                )
                for k in range(n)
            )
            for j in range(n)
        )
        for i in range(n)
    )
    return lin, via_assoc


def yamaguti_constants(loop: LocalLoop, C: StructureConstants, mode: str = EXACT) -> TernaryTable:
    """Yamaguti constants, after checking the two computation routes agree componentwise."""
    lin, via_assoc = yamaguti_constants_routes(loop, C, mode)
    n = loop.dim
    for idx in product(range(n), repeat=4):
        i, j, k, l = idx
        a, b = lin[i][j][k][l], via_assoc[i][j][k][l]
        if (a != b) if mode == EXACT else abs(a - b) > 1e-9:
            raise CalibrationError(f"Yamaguti constants disagree at {idx}: {a} vs {b}")
    return TernaryTable(n, lin)


def reductivity_defect(loop: LocalLoop, g: Sequence, x, y, z, table: TernaryTable) -> dict:
    """``6 [Y(x;y), T_z] - T_[x,y,z]`` for ``T`` in L, R, M, L+, R+, M+.

    Keys are ``9a 9b 9c 10a 10b 10c`` in that order.
    """
    g = tuple(g)
    xyz = table.apply(x, y, z)
    Y = yamagutian(x, y)
    out = {}
    for key, kind in zip(("9a", "9b", "9c", "10a", "10b", "10c"), ("L", "R", "M", "L+", "R+", "M+")):
        T = TRANSLATIONS[kind]
        out[key] = 6 * evaluate(loop, comm(Y, T(z)), g) - evaluate(loop, T(xyz), g)
    return out


def prop11_defect(loop: LocalLoop, g: Sequence, x, y, C: StructureConstants) -> dict:
    """``[T_x, T_y] + T_[x,y] - 6 Y(x;y)`` for ``T`` in M+, R+, L+ (keys 11a-c)."""
    g = tuple(g)
    xy = bracket(C, x, y)
    Y6 = 6 * evaluate(loop, yamagutian(x, y), g)
    out = {}
    for key, kind in zip(("11a", "11b", "11c"), ("M+", "R+", "L+")):
        T = TRANSLATIONS[kind]
        out[key] = evaluate(loop, comm(T(x), T(y)), g) + evaluate(loop, T(xy), g) - Y6
    return out


def yamagutian_via(route: str, C: StructureConstants, x, y) -> Field:
    """The Yamagutian as a field, either by definition or through one conjugate translation."""
    if route == "Y":
        return yamagutian(x, y)
    T = TRANSLATIONS[route]
    sixth = Fraction(1, 6)
    return sixth * comm(T(x), T(y)) + sixth * T(bracket(C, x, y))


def hidden_assoc_defect(
    loop: LocalLoop, g: Sequence, x, y, z, w, table: TernaryTable, C: StructureConstants | None = None, route: str = "Y"
) -> FieldValue:
    """``6 [Y(x;y), Y(z;w)] - Y([x,y,z]; w) - Y(z; [x,y,w])`` at ``g``.

    ``route`` selects how the Yamagutian is built: ``"Y"`` from its definition,
    ``"L+"``, ``"R+"`` or ``"M+"`` through the corresponding conjugate (needs ``C``).
    """
    g = tuple(g)
    if route != "Y" and C is None:
        raise ValueError("conjugate routes need the structure constants")
    Yf = lambda a, b: yamagutian_via(route, C, a, b)
    xyz = table.apply(x, y, z)
    xyw = table.apply(x, y, w)
    lhs = 6 * evaluate(loop, comm(Yf(x, y), Yf(z, w)), g)
    return lhs - evaluate(loop, Yf(xyz, w), g) - evaluate(loop, Yf(z, xyw), g)
