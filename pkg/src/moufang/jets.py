"""Nilpotent-tag jets: exact mixed partial derivatives up to order three.

A jet is a polynomial in at most three commuting tags ``e1, e2, e3`` subject
to ``ea * ea = 0``.  Its coefficients are indexed by tag subsets, stored as
bit masks (``E1 = 1``, ``E2 = 2``, ``E3 = 4``).  Seeding a variable with a tag
and evaluating a rational expression leaves the mixed partial derivative in
the corresponding coefficient; since tags are distinct no factorials appear.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from gmpy2 import mpq

E1, E2, E3 = 1, 2, 4
ALL_TAGS = (E1, E2, E3)
FULL_MASK = E1 | E2 | E3


def _div(a, b):
    # int / int would silently produce a float inside an exact computation
    if isinstance(a, int) and isinstance(b, int):
        return mpq(a, b)
    return a / b


class TagBudgetError(ValueError):
    """More nilpotent tags were requested than the order-3 cap allows."""


def _check_tag(tag: int) -> int:
    if tag not in ALL_TAGS:
        raise TagBudgetError(f"tag {tag!r} is not one of e1=1, e2=2, e3=4 (order-3 cap)")
    return tag


class Jet:
    """Truncated Taylor value ``sum_S c_S * prod_{a in S} e_a``.

    Zero coefficients are never stored.  Arithmetic accepts plain scalars on
    either side; division requires a nonzero constant term.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        self.coeffs = {m: c for m, c in (coeffs or {}).items() if c}

    @classmethod
    def _raw(cls, coeffs: dict) -> "Jet":
        j = object.__new__(cls)
        j.coeffs = coeffs
        return j

    @property
    def const(self):
        return self.coeffs.get(0, 0)

    @property
    def tags(self) -> int:
        """Bit mask of every tag that occurs in some nonzero coefficient."""
        mask = 0
        for m in self.coeffs:
            mask |= m
        return mask

    def __getitem__(self, mask: int):
        return self.coeffs.get(mask, 0)

    def part(self, tag: int) -> "Jet":
        """Derivative along ``tag``: the coefficients containing it, tag removed."""
        out = {m ^ tag: c for m, c in self.coeffs.items() if m & tag}
        return Jet._raw(out)

    def drop(self, tag: int) -> "Jet":
        """Set ``tag`` to zero."""
        return Jet._raw({m: c for m, c in self.coeffs.items() if not m & tag})

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        out = dict(self.coeffs)
        if isinstance(other, Jet):
            for m, c in other.coeffs.items():
                v = out.get(m, 0) + c
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        elif other:
            v = out.get(0, 0) + other
            if v:
                out[0] = v
            else:
                out.pop(0, None)
        return Jet._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Jet._raw({m: -c for m, c in self.coeffs.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            if not other:
                return Jet._raw({})
            return Jet._raw({m: c * other for m, c in self.coeffs.items()})
        out = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                if a & b:
                    continue
                m = a | b
                if m in out:
                    out[m] = out[m] + x * y
                else:
                    out[m] = x * y
        return Jet._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        c = self.const
        if not c:
            raise ZeroDivisionError("jet division needs a nonzero constant term")
        r = _div(1, c)
        n = Jet._raw({m: v * r for m, v in self.coeffs.items() if m})
        # (1 + n)^-1 = 1 - n + n^2 - n^3 since n^4 = 0 with three tags
        acc = Jet._raw({0: r})
        power = Jet._raw({0: r})
        for _ in range(3):
            power = -(power * n)
            if not power.coeffs:
                break
            acc = acc + power
        return acc

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        if not other:
            raise ZeroDivisionError("jet division by zero")
        return Jet._raw({m: _div(c, other) for m, c in self.coeffs.items()})

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __eq__(self, other):
        if isinstance(other, Jet):
            return self.coeffs == other.coeffs
        if not other:
            return not self.coeffs
        return set(self.coeffs) == {0} and self.coeffs[0] == other

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Jet(0)"
        terms = []
        for m in sorted(self.coeffs):
            name = "".join(f"e{i + 1}" for i in range(3) if m >> i & 1)
            terms.append(f"{self.coeffs[m]}{'*' + name if name else ''}")
        return "Jet(" + " + ".join(terms) + ")"


def jet_lift(c, tags: Iterable[int] = ()) -> Jet:
    """A variable with value ``c`` and unit first-order coefficient on each tag."""
    tags = list(tags)
    if len(set(tags)) > 3:
        raise TagBudgetError("at most 3 distinct tags")
    out = {0: c}
    for t in tags:
        out[_check_tag(t)] = out.get(t, 0) + 1
    return Jet(out)


def extract_partial(j, tags: Iterable[int] | int = ()):
    """Coefficient of the tag monomial ``tags``: the matching mixed partial."""
    if isinstance(tags, int):
        mask = tags
    else:
        mask = 0
        for t in tags:
            mask |= _check_tag(t)
    if mask & ~FULL_MASK:
        raise TagBudgetError(f"tag mask {mask} outside e1..e3")
    if isinstance(j, Jet):
        return j[mask]
    return j if mask == 0 else 0


def seed_point(point: Sequence, seeds: Iterable[tuple]) -> list:
    """Perturb ``point`` by ``tag * direction`` for each ``(tag, direction)`` seed.

    ``direction`` is a coordinate index or a full vector; vector entries may
    themselves be jets, which is how directional derivatives are nested.
    """
    out = list(point)
    for tag, direction in seeds:
        _check_tag(tag)
        t = Jet._raw({tag: 1})
        if isinstance(direction, int):
            out[direction] = out[direction] + t
        else:
            if len(direction) != len(out):
                raise ValueError("seed direction has the wrong dimension")
            out = [p + d * t if d else p for p, d in zip(out, direction)]
    return out


def part(value, tag: int):
    """``value.part(tag)`` for jets, 0 for plain scalars."""
    if isinstance(value, Jet):
        return value.part(tag)
    return 0


def collapse(value):
    """Turn a tag-free jet back into a plain scalar; other values pass through."""
    if isinstance(value, Jet):
        if value.tags:
            raise ValueError(f"jet still carries tags: {value!r}")
        return value.const
    return value


def jet_tags(values) -> int:
    mask = 0
    for v in values:
        if isinstance(v, Jet):
            mask |= v.tags
    return mask
