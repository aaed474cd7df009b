"""Independent oracles used to freeze expected values.

None of this imports the code paths it checks.

O1: octonion multiplication by recursive Cayley-Dickson doubling of the reals.
O2: order-3 multivariate Taylor expansion of the chart product by brute-force
    truncated polynomial arithmetic.
O3: dense exhaustive index sums over structure constants.
"""

from math import factorial
from fractions import Fraction
from itertools import product

# O1 -------------------------------------------------------------------------

def _nest(flat):
    if len(flat) == 1:
        return flat[0]
    half = len(flat) // 2
    return (_nest(flat[:half]), _nest(flat[half:]))


def _flat(x):
    if isinstance(x, tuple):
        return _flat(x[0]) + _flat(x[1])
    return [x]


def _conj(x):
    if isinstance(x, tuple):
        return (_conj(x[0]), _neg(x[1]))
    return x


def _neg(x):
    return (_neg(x[0]), _neg(x[1])) if isinstance(x, tuple) else -x


def _add(x, y):
    return (_add(x[0], y[0]), _add(x[1], y[1])) if isinstance(x, tuple) else x + y


def _cd_mul(x, y):
    if not isinstance(x, tuple):
        return x * y
    a, b = x
    c, d = y
    return (_add(_cd_mul(a, c), _neg(_cd_mul(_conj(d), b))), _add(_cd_mul(d, a), _cd_mul(b, _conj(c))))


def o1_mul(p, q):
    """Octonion product of two 8-sequences via three recursive doublings."""
    return tuple(_flat(_cd_mul(_nest(list(p)), _nest(list(q)))))


def o1_table():
    table = {}
    for a, b in product(range(8), repeat=2):
        ea = [0] * 8
        eb = [0] * 8
        ea[a] = eb[b] = 1
        prod = o1_mul(ea, eb)
        (c,) = [i for i, v in enumerate(prod) if v]
        table[a, b] = (prod[c], c)
    return table


# O2 -------------------------------------------------------------------------

class Poly:
    """Sparse polynomial over Fractions, truncated at total degree ``MAXDEG``."""

    MAXDEG = 3

    def __init__(self, nvars, terms=None):
        self.n = nvars
        self.t = {m: c for m, c in (terms or {}).items() if c and sum(m) <= self.MAXDEG}

    @classmethod
    def const(cls, n, c):
        return cls(n, {(0,) * n: Fraction(c)})

    @classmethod
    def var(cls, n, i):
        m = [0] * n
        m[i] = 1
        return cls(n, {tuple(m): Fraction(1)})

    def __add__(self, o):
        if not isinstance(o, Poly):
            o = Poly.const(self.n, o)
        t = dict(self.t)
        for m, c in o.t.items():
            t[m] = t.get(m, 0) + c
        return Poly(self.n, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.n, {m: -c for m, c in self.t.items()})

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, Poly):
            return Poly(self.n, {m: c * o for m, c in self.t.items()})
        t = {}
        for m1, c1 in self.t.items():
            d1 = sum(m1)
            for m2, c2 in o.t.items():
                if d1 + sum(m2) > self.MAXDEG:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, 0) + c1 * c2
        return Poly(self.n, t)

    __rmul__ = __mul__

    def coeff(self, exps):
        return self.t.get(tuple(exps), Fraction(0))

    def series_inverse(self):
        """1 / self as a truncated geometric series around the constant term."""
        c0 = self.coeff((0,) * self.n)
        assert c0 != 0
        nil = (self - c0) * Fraction(1, 1) * (1 / Fraction(c0))
        acc = Poly.const(self.n, 1)
        power = Poly.const(self.n, 1)
        for _ in range(self.MAXDEG):
            power = -(power * nil)
            acc = acc + power
        return acc * (1 / Fraction(c0))


def o2_chart_product(dim=7):
    """Components of m(g, h) as truncated polynomials in (g_1..g_7, h_1..h_7)."""
    n = 2 * dim
    g = [Poly.var(n, i) for i in range(dim)]
    h = [Poly.var(n, dim + i) for i in range(dim)]

    def to_loop(x):
        r2 = sum((xi * xi for xi in x), Poly.const(n, 0))
        inv = (1 + r2).series_inverse()
        return [(1 - r2) * inv] + [xi * (-2) * inv for xi in x]

    G, H = to_loop(g), to_loop(h)
    table = o1_table()
    prod = [Poly.const(n, 0) for _ in range(8)]
    for a, b in product(range(8), repeat=2):
        sign, c = table[a, b]
        prod[c] = prod[c] + G[a] * H[b] * sign
    inv = (1 + prod[0]).series_inverse()
    return [-(p * inv) for p in prod[1:]]


def o2_monomial(dim, g_idx=(), h_idx=()):
    """Exponent tuple for the monomial prod g_a * prod h_b."""
    m = [0] * (2 * dim)
    for a in g_idx:
        m[a] += 1
    for b in h_idx:
        m[dim + b] += 1
    return tuple(m)


# O3 -------------------------------------------------------------------------

def o3_bracket(C, x, y):
    n = len(x)
    return [sum(C[i][j][k] * x[j] * y[k] for j in range(n) for k in range(n)) for i in range(n)]


def o3_ternary(C, x, y, z):
    b = lambda u, v: o3_bracket(C, u, v)
    t1, t2, t3 = b(x, b(y, z)), b(y, b(x, z)), b(b(x, y), z)
    return [p - q + r for p, q, r in zip(t1, t2, t3)]


def o3_maltsev(C, x, y, z):
    b = lambda u, v: o3_bracket(C, u, v)
    xy = b(x, y)
    parts = [b(xy, b(x, z)), b(b(xy, z), x), b(b(b(y, z), x), x), b(b(b(z, x), x), y)]
    return [p - q - r - s for p, q, r, s in zip(*parts)]


def o3_sagle_yamaguti(C, x, y, z, w):
    b = lambda u, v: o3_bracket(C, u, v)
    t = lambda u, v, s: o3_ternary(C, u, v, s)
    a1, a2, a3 = t(x, y, b(z, w)), b(t(x, y, z), w), b(z, t(x, y, w))
    return [p - q - r for p, q, r in zip(a1, a2, a3)]


def o3_jacobian(C, x, y, z):
    b = lambda u, v: o3_bracket(C, u, v)
    parts = [b(b(x, y), z), b(b(y, z), x), b(b(z, x), y)]
    return [p + q + r for p, q, r in zip(*parts)]


def basis(n, k):
    return [Fraction(int(i == k)) for i in range(n)]


def o2_deriv(P, dim, g_idx=(), h_idx=()):
    """Partial derivative at the origin of a truncated polynomial in (g, h)."""
    m = o2_monomial(dim, g_idx, h_idx)
    scale = 1
    for e in m:
        scale *= factorial(e)
    return P.coeff(m) * scale
