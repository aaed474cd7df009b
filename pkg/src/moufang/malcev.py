"""Anticommutative algebras given by structure constants, and identity defects.

Vectors are plain tuples of scalars.  ``C[i][j][k]`` is the coefficient of
``e_i`` in ``[e_j, e_k]`` (output index first).
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from moufang.scalars import EXACT, FLOAT, format_scalar, parse_rational, rational, to_scalar


class AlgebraFormatError(ValueError):
    """A structure-constants file violates the exchange format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True, eq=False)
class StructureConstants:
    """``C^i_jk`` of an anticommutative algebra of dimension ``dim``.

    Construction rejects tables that are not antisymmetric in ``(j, k)``;
    nothing is silently antisymmetrized.
    """

    dim: int
    C: tuple
    basis: tuple = ()
    # nz[j][k] = ((i, C^i_jk), ...) over the nonzero outputs, for sparse contraction
    nz: tuple = field(init=False, repr=False)

    def __post_init__(self):
        n = self.dim
        if n < 1:
            raise ValueError("dimension must be positive")
        C = tuple(tuple(tuple(row) for row in plane) for plane in self.C)
        if len(C) != n or any(len(p) != n or any(len(r) != n for r in p) for p in C):
            raise ValueError(f"structure constants must have shape ({n}, {n}, {n})")
        for i, j, k in product(range(n), repeat=3):
            if C[i][j][k] != -C[i][k][j]:
                raise ValueError(
                    f"C^{i}_{j}{k} = {C[i][j][k]} is not antisymmetric to C^{i}_{k}{j} = {C[i][k][j]}"
                )
        object.__setattr__(self, "C", C)
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"e{i + 1}" for i in range(n)))
        elif len(self.basis) != n:
            raise ValueError("basis names do not match the dimension")
        nz = tuple(
            tuple(tuple((i, C[i][j][k]) for i in range(n) if C[i][j][k]) for k in range(n))
            for j in range(n)
        )
        object.__setattr__(self, "nz", nz)

    def __eq__(self, other):
        return isinstance(other, StructureConstants) and self.dim == other.dim and self.C == other.C

    __hash__ = None

    @property
    def mode(self) -> str:
        for plane in self.C:
            for row in plane:
                for c in row:
                    if isinstance(c, float):
                        return FLOAT
        return EXACT

    def to_mode(self, mode: str) -> "StructureConstants":
        C = [[[to_scalar(c, mode) for c in row] for row in plane] for plane in self.C]
        return StructureConstants(self.dim, C, self.basis)

    def basis_vector(self, k: int) -> tuple:
        return basis_vector(self.dim, k, self.mode)

    def zero(self) -> tuple:
        z = to_scalar(0, self.mode)
        return (z,) * self.dim

    # exchange format ---------------------------------------------------
    def entries(self) -> list:
        """Nonzero ``(i, j, k, "p/q")`` with ``j < k``; the rest follows by antisymmetry."""
        n = self.dim
        return [
            [i, j, k, format_scalar(self.C[i][j][k])]
            for j in range(n)
            for k in range(j + 1, n)
            for i in range(n)
            if self.C[i][j][k]
        ]

    def to_json(self, comment: Sequence[str] | None = None) -> str:
        """One entry per line so parse errors can point at a line number."""
        head = {"dim": self.dim, "basis": list(self.basis)}
        lines = ["{"]
        if comment:
            lines.append(f'  "comment": {json.dumps(list(comment))},')
        lines.append(f'  "dim": {head["dim"]},')
        lines.append(f'  "basis": {json.dumps(head["basis"])},')
        entries = self.entries()
        lines.append('  "entries": [')
        for idx, e in enumerate(entries):
            sep = "," if idx < len(entries) - 1 else ""
            lines.append(f"    {json.dumps(e)}{sep}")
        lines.append("  ]")
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json(cls, text: str, mode: str = EXACT) -> "StructureConstants":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise AlgebraFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from None
        if not isinstance(doc, dict):
            raise AlgebraFormatError("top level must be an object")
        entry_lines = _entry_line_numbers(text)
        n = doc.get("dim")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise AlgebraFormatError(f"'dim' must be a positive integer, got {n!r}")
        basis = doc.get("basis") or [f"e{i + 1}" for i in range(n)]
        if len(basis) != n:
            raise AlgebraFormatError(f"'basis' lists {len(basis)} names for dim {n}")
        zero = to_scalar(0, mode)
        C = [[[zero] * n for _ in range(n)] for _ in range(n)]
        seen = {}
        for idx, entry in enumerate(doc.get("entries", [])):
            line = entry_lines[idx] if idx < len(entry_lines) else None
            if not (isinstance(entry, list) and len(entry) == 4):
                raise AlgebraFormatError(f"entry {idx} must be [i, j, k, \"p/q\"]", line)
            i, j, k, val = entry
            if not all(isinstance(t, int) and not isinstance(t, bool) and 0 <= t < n for t in (i, j, k)):
                raise AlgebraFormatError(f"entry {idx} has an index outside 0..{n - 1}", line)
            try:
                value = to_scalar(parse_rational(val), mode)
            except ValueError as exc:
                raise AlgebraFormatError(f"entry {idx}: {exc}", line) from None
            if j == k:
                if value:
                    raise AlgebraFormatError(f"entry {idx}: C^{i}_{j}{k} must vanish (anticommutativity)", line)
                continue
            if (i, j, k) in seen:
                raise AlgebraFormatError(f"entry {idx} repeats ({i}, {j}, {k}) from entry {seen[(i, j, k)]}", line)
            if (i, k, j) in seen:
                raise AlgebraFormatError(
                    f"entry {idx}: ({i}, {j}, {k}) and its antisymmetric image ({i}, {k}, {j}) "
                    f"(entry {seen[(i, k, j)]}) may not both appear",
                    line,
                )
            seen[(i, j, k)] = idx
            C[i][j][k] = value
            C[i][k][j] = -value
        return cls(n, C, tuple(basis))


_ENTRY_RE = re.compile(r"\[\s*-?\d+\s*,\s*-?\d+\s*,\s*-?\d+\s*,")


def _entry_line_numbers(text: str) -> list[int]:
    """Best-effort line numbers of the entries, assuming one entry per line."""
    return [n for n, line in enumerate(text.splitlines(), start=1) if _ENTRY_RE.search(line)]


def basis_vector(n: int, k: int, mode: str = EXACT) -> tuple:
    one, zero = to_scalar(1, mode), to_scalar(0, mode)
    return tuple(one if i == k else zero for i in range(n))


def _check(C: StructureConstants, *vectors):
    for v in vectors:
        if len(v) != C.dim:
            raise ValueError(f"dimension mismatch: vector of length {len(v)} in a {C.dim}-dim algebra")


def add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x):
    return tuple(c * a for a in x)


def bracket(C: StructureConstants, x: Sequence, y: Sequence) -> tuple:
    """``[x, y]^i = C^i_jk x^j y^k``."""
    _check(C, x, y)
    out = list(C.zero())
    for j, xj in enumerate(x):
        if not xj:
            continue
        row = C.nz[j]
        for k, yk in enumerate(y):
            if not yk:
                continue
            for i, c in row[k]:
                out[i] += c * xj * yk
    return tuple(out)


def jacobian(C, x, y, z) -> tuple:
    """``[[x,y],z] + [[y,z],x] + [[z,x],y]``; zero exactly for Lie algebras."""
    b = lambda u, v: bracket(C, u, v)
    return add(add(b(b(x, y), z), b(b(y, z), x)), b(b(z, x), y))


def yamaguti_bracket(C, x, y, z) -> tuple:
    """Ternary bracket ``[x,[y,z]] - [y,[x,z]] + [[x,y],z]``."""
    b = lambda u, v: bracket(C, u, v)
    return add(sub(b(x, b(y, z)), b(y, b(x, z))), b(b(x, y), z))


def maltsev_defect(C, x, y, z) -> tuple:
    """``[[x,y],[x,z]] - [[[x,y],z],x] - [[[y,z],x],x] - [[[z,x],x],y]``."""
    b = lambda u, v: bracket(C, u, v)
    xy = b(x, y)
    return sub(
        sub(sub(b(xy, b(x, z)), b(b(xy, z), x)), b(b(b(y, z), x), x)),
        b(b(b(z, x), x), y),
    )


# ternary tables -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TernaryTable:
    """``Y^i_jkl`` with ``[x,y,z]^i = 6 Y^i_jkl x^j y^k z^l``."""

    dim: int
    Y: tuple

    def __post_init__(self):
        Y = tuple(tuple(tuple(tuple(r) for r in m) for m in p) for p in self.Y)
        object.__setattr__(self, "Y", Y)

    def __eq__(self, other):
        return isinstance(other, TernaryTable) and self.Y == other.Y

    __hash__ = None

    def to_mode(self, mode: str) -> "TernaryTable":
        conv = lambda t: [conv(a) for a in t] if isinstance(t, tuple) else to_scalar(t, mode)
        return TernaryTable(self.dim, conv(self.Y))

    def apply(self, x, y, z) -> tuple:
        """``6 Y^i_jkl x^j y^k z^l``."""
        n = self.dim
        out = []
        for i in range(n):
            acc = 0
            Yi = self.Y[i]
            for j in range(n):
                if not x[j]:
                    continue
                for k in range(n):
                    if not y[k]:
                        continue
                    row = Yi[j][k]
                    s = 0
                    for l in range(n):
                        if z[l] and row[l]:
                            s += row[l] * z[l]
                    if s:
                        acc += s * x[j] * y[k]
            out.append(6 * acc)
        zero = _zero_like(x)
        return tuple(v if v else zero for v in out)


def _zero_like(x):
    for v in x:
        return v * 0
    return 0


def ternary_table(C: StructureConstants) -> TernaryTable:
    """``Y^i_jkl = (1/6) [e_j, e_k, e_l]^i``."""
    n, mode = C.dim, C.mode
    sixth = rational(1, 6, mode)
    e = [C.basis_vector(k) for k in range(n)]
    Y = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for j, k, l in product(range(n), repeat=3):
        t = yamaguti_bracket(C, e[j], e[k], e[l])
        for i in range(n):
            Y[i][j][k][l] = t[i] * sixth
    return TernaryTable(n, Y)


def ternary(C: StructureConstants, Y: TernaryTable | None, x, y, z) -> tuple:
    return yamaguti_bracket(C, x, y, z) if Y is None else Y.apply(x, y, z)


def sagle_yamaguti_defect(C, Y: TernaryTable | None, x, y, z, w) -> tuple:
    """``[x,y,[z,w]] - [[x,y,z],w] - [z,[x,y,w]]``.

    The ternary bracket is read from ``Y`` when given, otherwise computed from
    ``C`` directly.
    """
    _check(C, x, y, z, w)
    t = lambda a, b, c: ternary(C, Y, a, b, c)
    return sub(sub(t(x, y, bracket(C, z, w)), bracket(C, t(x, y, z), w)), bracket(C, z, t(x, y, w)))


# operators ----------------------------------------------------------------

def rep_operator(C, x, y, Y: TernaryTable | None = None) -> tuple:
    """Matrix of ``z -> [x, y, z]``, as rows ``D[i][l]``."""
    _check(C, x, y)
    cols = [ternary(C, Y, x, y, C.basis_vector(l)) for l in range(C.dim)]
    return tuple(tuple(cols[l][i] for l in range(C.dim)) for i in range(C.dim))


def mat_mul(A, B) -> tuple:
    n = len(A)
    return tuple(
        tuple(sum((A[i][p] * B[p][j] for p in range(1, n)), A[i][0] * B[0][j]) for j in range(len(B[0])))
        for i in range(n)
    )


def mat_sub(A, B) -> tuple:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_apply(A, x) -> tuple:
    return tuple(sum((r[p] * x[p] for p in range(1, len(x))), r[0] * x[0]) for r in A)


def trace(A):
    return sum((A[i][i] for i in range(1, len(A))), A[0][0])


def rep_commutator_defect(C, x, y, z, w, Y: TernaryTable | None = None) -> tuple:
    """``[D(x,y), D(z,w)] - D([x,y,z], w) - D(z, [x,y,w])``."""
    _check(C, x, y, z, w)
    Dxy = rep_operator(C, x, y, Y)
    Dzw = rep_operator(C, z, w, Y)
    comm = mat_sub(mat_mul(Dxy, Dzw), mat_mul(Dzw, Dxy))
    rhs1 = rep_operator(C, ternary(C, Y, x, y, z), w, Y)
    rhs2 = rep_operator(C, z, ternary(C, Y, x, y, w), Y)
    return mat_sub(mat_sub(comm, rhs1), rhs2)


# scans ----------------------------------------------------------------------

def is_zero(values) -> bool:
    return not any(any(r) if isinstance(r, tuple) else r for r in values)


def maltsev_scan(C: StructureConstants, polarized: bool = False):
    """First basis triple with a nonzero Mal'tsev defect, or None.

    The identity is quadratic in its first argument, so basis triples alone do
    not certify it; ``polarized=True`` also runs ``x = e_a + e_b``, which
    together with the basis values determines the full quadratic form.
    """
    n = C.dim
    e = [C.basis_vector(k) for k in range(n)]
    firsts = [((a,), e[a]) for a in range(n)]
    if polarized:
        firsts += [((a, b), add(e[a], e[b])) for a in range(n) for b in range(a + 1, n)]
    for label, x in firsts:
        for j, k in product(range(n), repeat=2):
            d = maltsev_defect(C, x, e[j], e[k])
            if not is_zero(d):
                return label, j, k, d
    return None


def sagle_yamaguti_scan(C: StructureConstants, Y: TernaryTable | None = None):
    """First basis quadruple with a nonzero Sagle-Yamaguti defect, or None."""
    n = C.dim
    e = [C.basis_vector(k) for k in range(n)]
    if Y is None:
        Y = ternary_table(C)
    for a, b, c, d in product(range(n), repeat=4):
        if a == b:
            continue
        v = sagle_yamaguti_defect(C, Y, e[a], e[b], e[c], e[d])
        if not is_zero(v):
            return (a, b, c, d), v
    return None


def jacobi_scan(C: StructureConstants):
    n = C.dim
    e = [C.basis_vector(k) for k in range(n)]
    for a, b, c in product(range(n), repeat=3):
        v = jacobian(C, e[a], e[b], e[c])
        if not is_zero(v):
            return (a, b, c), v
    return None


def perturb(C: StructureConstants, rng: random.Random, max_den: int = 4) -> tuple[StructureConstants, tuple]:
    """Change one entry ``C^i_jk`` (and its antisymmetric image) by a random nonzero rational."""
    n, mode = C.dim, C.mode
    j, k = rng.sample(range(n), 2)
    i = rng.randrange(n)
    delta = 0
    while not delta:
        delta = rational(rng.randint(-max_den, max_den), rng.randint(1, max_den), mode)
    table = [[list(row) for row in plane] for plane in C.C]
    table[i][j][k] += delta
    table[i][k][j] -= delta
    return StructureConstants(n, table, C.basis), (i, j, k, format_scalar(delta))
