from fractions import Fraction
from itertools import product

import pytest
from gmpy2 import mpq

from moufang import loopgeom as lg
from moufang import malcev as mc
from moufang.jets import ALL_TAGS, TagBudgetError, part, seed_point
from moufang.octonion import QUATERNION_LOOP
from moufang.scalars import FLOAT

from oracles import o2_deriv

N = 7


def e(k, n=N):
    return mc.basis_vector(n, k)


def zero3(t):
    return not any(c for m in t for r in m for c in r)


def zero_mat(m):
    return not any(c for r in m for c in r)


@pytest.fixture(scope="module")
def pts(points):
    return points(3, "geom")


@pytest.fixture(scope="module")
def vecs(vectors):
    return vectors(8, "geom")


@pytest.fixture(scope="module")
def quat_C():
    return lg.calibrate_structure_constants(QUATERNION_LOOP)


# frames and first-order structure -----------------------------------------------

def test_frames_at_origin(loop):
    F = lg.aux_frames(loop, loop.origin())
    I = tuple(tuple(mpq(int(i == j)) for j in range(N)) for i in range(N))
    assert F.u == I and F.v == I
    assert F.w == tuple(tuple(-2 * c for c in r) for r in I)


def test_frames_sum_to_zero(loop, pts):
    for g in pts:
        F = lg.aux_frames(loop, g)
        assert all(F.u[s][j] + F.v[s][j] + F.w[s][j] == 0 for s in range(N) for j in range(N))


def test_left_frame_invertible(loop, pts):
    import sympy

    for g in pts:
        u = lg.aux_frames(loop, g).u
        M = sympy.Matrix([[sympy.Rational(int(c.numerator), int(c.denominator)) for c in r] for r in u])
        assert M.det() != 0


def test_generalized_lie_equations(loop, pts):
    for g, h in zip(pts, pts[1:] + pts[:1]):
        assert all(zero_mat(m) for m in lg.gle_defect(loop, g, h))


def test_structure_constants_match_taylor_oracle(C, o2):
    for i, j, k in product(range(N), repeat=3):
        lam = lambda a, b: o2_deriv(o2[i], N, (a,), (b,))
        assert C.C[i][j][k] == lam(j, k) - lam(k, j)
    assert C.C[2][0][1] == -4


def test_commutator_antisymmetric(loop, pts):
    x, y = e(0), e(4)
    for g in pts[:2]:
        a = lg.evaluate(loop, lg.comm(lg.L(x), lg.R(y)), g)
        b = lg.evaluate(loop, lg.comm(lg.R(y), lg.L(x)), g)
        assert (a + b).is_zero() and not a.is_zero()


def test_commutator_needs_free_tags(loop):
    g = seed_point(loop.origin(), [(ALL_TAGS[0], 0), (ALL_TAGS[1], 1)])
    with pytest.raises(TagBudgetError):
        lg.evaluate(loop, lg.comm(lg.L(e(0)), lg.L(e(1))), g)
    with pytest.raises(TagBudgetError):
        lg.frame_jet(loop, g)


def test_field_values_at_different_points(loop, pts):
    a = lg.evaluate(loop, lg.L(e(0)), pts[0])
    b = lg.evaluate(loop, lg.L(e(0)), pts[1])
    with pytest.raises(ValueError, match="different points"):
        a + b


def test_maurer_cartan(loop, C, pts, vecs):
    for g, x, y in zip(pts, vecs, vecs[3:]):
        for key, d in lg.maurer_cartan_defect(loop, g, x, y, C).items():
            assert d.is_zero(), key


# second-order functions ------------------------------------------------------------

def test_secondary_aux_at_origin(loop, C, o2):
    su, sv, sw = lg.secondary_aux(loop, loop.origin())
    for s, j, k in product(range(N), repeat=3):
        lam = lambda a, b: o2_deriv(o2[s], N, (a,), (b,))
        assert su[s][j][k] == lam(j, k) - lam(k, j) == C.C[s][j][k]
        assert sv[s][j][k] == -C.C[s][j][k]
        assert sw[s][j][k] == 0


def test_secondary_aux_antisymmetric(loop, pts):
    for t in lg.secondary_aux(loop, pts[0]):
        assert all(t[s][j][k] == -t[s][k][j] for s, j, k in product(range(N), repeat=3))


def test_yamaguti_functions(loop, pts):
    assert zero3(lg.yamaguti_functions(loop, loop.origin()))
    Y = lg.yamaguti_functions(loop, pts[0])
    assert all(Y[s][j][k] == -Y[s][k][j] for s, j, k in product(range(N), repeat=3))
    assert not zero3(Y)


def test_associator_coefficients(loop, pts, vecs):
    assert zero3(lg.associator_coeffs(loop, loop.origin()))
    g = pts[1]
    l = lg.associator_coeffs(loop, g)
    assert all(l[i][j][k] == -l[i][k][j] for i, j, k in product(range(N), repeat=3))
    x, y = vecs[0], vecs[1]
    field = lg.evaluate(loop, lg.comm(lg.L(y), lg.R(x)), g).coeffs
    contracted = tuple(sum(x[j] * y[k] * l[i][j][k] for j in range(N) for k in range(N)) for i in range(N))
    assert field == contracted


def test_associator_constants_match_taylor_oracle(loop, o2):
    lc = lg.associator_constants(loop)
    D = lambda i, g_idx, h_idx: o2_deriv(o2[i], N, g_idx, h_idx)
    for i, j, k, l in product(range(N), repeat=4):
        expect = D(i, (k,), (j, l)) - D(i, (k, l), (j,))
        expect += sum(D(s, (l,), (j,)) * D(i, (k,), (s,)) - D(s, (k,), (l,)) * D(i, (s,), (j,)) for s in range(N))
        assert lc[i][j][k][l] == expect, (i, j, k, l)


def test_integrability(loop, pts):
    g, h = pts[0], pts[2]
    assert zero3(lg.integrability_defect(loop, g, h))
    assert not zero3(lg.integrability_defect(loop, g, h, printed=True))


def test_yamaguti_function_decomposition(loop, C, pts):
    for g in pts:
        assert zero3(lg.lemma6_defect(loop, g, C))


def test_yamaguti_constants_equal_algebraic_table(loop, C, table):
    lin, via = lg.yamaguti_constants_routes(loop, C)
    assert lin == via
    assert lg.yamaguti_constants(loop, C).Y == table.Y


def test_yamagutian_linear_part(loop, C, table):
    x, y = e(0), e(5)
    D = mc.rep_operator(C, x, y, table)
    t = ALL_TAGS[2]
    for l in range(N):
        g = seed_point(loop.origin(), [(t, l)])
        val = lg.evaluate(loop, lg.yamagutian(x, y), g).coeffs
        assert tuple(part(c, t) for c in val) == tuple(D[i][l] / 6 for i in range(N))


# translations, conjugates, hidden associativity ----------------------------------

def test_reductivity(loop, table, pts, vecs):
    x, y, z = vecs[:3]
    for key, d in lg.reductivity_defect(loop, pts[0], x, y, z, table).items():
        assert d.is_zero(), key


def test_conjugate_frames(loop, pts):
    F = lg.aux_frames(loop, pts[2])
    lp, rp, mp = lg.conjugated_frames(F)
    rng = range(N)
    assert all(lp[s][j] + rp[s][j] + mp[s][j] == 0 for s in rng for j in rng)
    assert all(rp[s][j] - lp[s][j] == 3 * F.w[s][j] for s in rng for j in rng)
    assert all(mp[s][j] - rp[s][j] == 3 * F.u[s][j] for s in rng for j in rng)


def test_conjugate_translations(loop, C, pts, vecs):
    for key, d in lg.prop11_defect(loop, pts[1], vecs[2], vecs[5], C).items():
        assert d.is_zero(), key


@pytest.mark.parametrize("route", ["Y", "L+", "R+", "M+"])
def test_hidden_associativity(loop, C, table, pts, vecs, route):
    x, y, z, w = vecs[4:8]
    assert lg.hidden_assoc_defect(loop, pts[0], x, y, z, w, table, C, route).is_zero()


def test_hidden_associativity_needs_constants_for_conjugates(loop, table, vecs):
    with pytest.raises(ValueError):
        lg.hidden_assoc_defect(loop, loop.origin(), *vecs[:4], table, None, "L+")


# degenerate and failing cases -----------------------------------------------------

def test_quaternion_chart(quat_C, points):
    assert [quat_C.C[2][0][1], quat_C.C[0][1][2], quat_C.C[1][2][0]] == [-4, -4, -4]
    assert mc.jacobi_scan(quat_C) is None
    q = QUATERNION_LOOP
    for g in points(3, "quat", support=range(3)):
        g = g[:3]
        assert zero3(lg.associator_coeffs(q, g))
        assert lg.evaluate(q, lg.comm(lg.L(e(0, 3)), lg.R(e(2, 3))), g).is_zero()
        assert zero3(lg.lemma6_defect(q, g, quat_C))


def test_quaternion_yamaguti_functions_nonzero(quat_C):
    g = (mpq(1, 3), mpq(-1, 4), mpq(1, 5))
    Y = lg.yamaguti_functions(QUATERNION_LOOP, g)
    assert Y[0][0][1] == mpq(4, 3)


def _skewed(g, h):
    # 0 is a two-sided unit, but left translations do not close on a Mal'tsev bracket
    return (g[0] + h[0] + g[0] * h[1], g[1] + h[1] + g[0] * h[0] * h[1])


def test_calibration_rejects_non_moufang_loop():
    bad = lg.LocalLoop(2, _skewed, "skewed plane")
    with pytest.raises(lg.CalibrationError):
        lg.calibrate_structure_constants(bad)


def test_float_matches_exact(loop, C, pts, vecs):
    g = pts[0]
    gf = tuple(float(c) for c in g)
    Fe, Ff = lg.aux_frames(loop, g), lg.aux_frames(loop, gf, FLOAT)
    assert max(abs(float(a) - b) for r, s in zip(Fe.u, Ff.u) for a, b in zip(r, s)) < 1e-12
    Cf = C.to_mode(FLOAT)
    xf, yf = (tuple(float(c) for c in v) for v in vecs[:2])
    for key, d in lg.maurer_cartan_defect(loop, gf, xf, yf, Cf).items():
        assert d.max_abs() < 1e-9, key
