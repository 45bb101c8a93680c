import random

import pytest

from rdpk3.ffpoly import FpScalar, MultiPoly
from rdpk3.witt import (
    SUPPORTED_RANGES,
    WittVec,
    build_witt_table,
    check_supported,
    ghost_compatibility_ok,
    ghost_poly,
    restriction,
    subtraction_components,
    teichmuller,
    v_shift_single,
    verschiebung,
    witt_add,
    witt_frobenius,
    witt_from_int,
    witt_mul,
    witt_neg,
    witt_sub,
)


def gens(p, names):
    return [MultiPoly.gen(tuple(names), nm, p) for nm in names]


def fpvec(p, *values):
    return WittVec(p, tuple(FpScalar(p, v) for v in values))


def test_supported_ranges():
    assert SUPPORTED_RANGES == {2: 4, 3: 2, 5: 2, 7: 1}
    check_supported(2, 4)
    check_supported(7, 1)
    with pytest.raises(ValueError):
        check_supported(2, 5)
    with pytest.raises(ValueError):
        check_supported(7, 2)
    with pytest.raises(ValueError):
        check_supported(11, 1)
    with pytest.raises(ValueError):
        check_supported(3, 0)


def test_ghost_poly_shape():
    """w_N is sum over i of p^i t_i^(p^(N-i))."""
    w2 = ghost_poly(2, 2, ("t0", "t1", "t2"))
    t0 = MultiPoly.gen(("t0", "t1", "t2"), "t0")
    t1 = MultiPoly.gen(("t0", "t1", "t2"), "t1")
    t2 = MultiPoly.gen(("t0", "t1", "t2"), "t2")
    assert w2 == t0**4 + 2 * t1**2 + 4 * t2
    w1 = ghost_poly(3, 1, ("t0", "t1"))
    s0 = MultiPoly.gen(("t0", "t1"), "t0")
    s1 = MultiPoly.gen(("t0", "t1"), "t1")
    assert w1 == s0**3 + 3 * s1


def test_ghost_compatibility_full_grid():
    for p, nmax in SUPPORTED_RANGES.items():
        for n in range(1, nmax + 1):
            assert ghost_compatibility_ok(p, n), (p, n)


def test_table_structure():
    tab = build_witt_table(2, 3)
    assert len(tab.sum_polys) == 3
    assert len(tab.prod_polys) == 3
    assert len(tab.neg_polys) == 3
    # first sum component is a0 + b0, first product is a0 b0
    vs = tab.sum_polys[0].variables
    a0 = MultiPoly.gen(vs, "a0", 2)
    b0 = MultiPoly.gen(vs, "b0", 2)
    assert tab.sum_polys[0] == a0 + b0
    pv = tab.prod_polys[0].variables
    assert tab.prod_polys[0] == MultiPoly.gen(pv, "a0", 2) * MultiPoly.gen(pv, "b0", 2)
    # tables are cached
    assert build_witt_table(2, 3) is tab


def test_w2f2_is_z4():
    """Length-2 vectors over the 2-element field behave like Z/4."""
    one = FpScalar(2, 1)
    els = [witt_from_int(2, k, one) for k in range(4)]
    assert els[0] == fpvec(2, 0, 0)
    assert els[1] == fpvec(2, 1, 0)
    assert els[2] == fpvec(2, 0, 1)
    assert els[3] == fpvec(2, 1, 1)
    assert len(set(els)) == 4
    for i in range(4):
        for j in range(4):
            assert witt_add(els[i], els[j]) == els[(i + j) % 4]
            assert witt_mul(els[i], els[j]) == els[(i * j) % 4]
    assert witt_neg(els[1]) == els[3]
    assert witt_sub(els[1], els[3]) == els[2]


def test_w2f3_is_z9():
    one = FpScalar(3, 1)
    els = [witt_from_int(2, k, one) for k in range(9)]
    assert len(set(els)) == 9
    for i in range(0, 9, 2):
        for j in range(0, 9, 3):
            assert witt_add(els[i], els[j]) == els[(i + j) % 9]
            assert witt_mul(els[i], els[j]) == els[(i * j) % 9]


def test_operator_overloads():
    x = fpvec(2, 1, 0, 1)
    y = fpvec(2, 1, 1, 0)
    assert x + y == witt_add(x, y)
    assert x * y == witt_mul(x, y)
    assert x - y == witt_sub(x, y)
    assert -x == witt_neg(x)
    assert x + x.ring_zero() == x
    assert x * x.ring_one() == x


def test_pair_validation():
    with pytest.raises(ValueError):
        witt_add(fpvec(2, 1, 0), fpvec(3, 1, 0))
    with pytest.raises(ValueError):
        witt_add(fpvec(2, 1, 0), fpvec(2, 1, 0, 0))
    with pytest.raises(ValueError):
        WittVec(2, ())


def test_ring_axioms_random():
    rng = random.Random(2026)
    for p, nmax in SUPPORTED_RANGES.items():
        for n in range(1, nmax + 1):
            for _ in range(25):
                x = fpvec(p, *(rng.randrange(p) for _ in range(n)))
                y = fpvec(p, *(rng.randrange(p) for _ in range(n)))
                z = fpvec(p, *(rng.randrange(p) for _ in range(n)))
                assert x + y == y + x
                assert (x + y) + z == x + (y + z)
                assert x * y == y * x
                assert (x * y) * z == x * (y * z)
                assert x * (y + z) == x * y + x * z
                assert x + (-x) == x.ring_zero()


def test_teichmuller_multiplicative():
    rng = random.Random(5)
    for p, nmax in SUPPORTED_RANGES.items():
        for _ in range(20):
            a = FpScalar(p, rng.randrange(p))
            b = FpScalar(p, rng.randrange(p))
            ta = teichmuller(a, nmax)
            tb = teichmuller(b, nmax)
            assert ta * tb == teichmuller(a * b, nmax)
    t = teichmuller(FpScalar(5, 3), 2)
    assert t == fpvec(5, 3, 0)


def test_verschiebung_restriction_shapes():
    x = fpvec(2, 1, 1)
    v = verschiebung(x)
    assert v == fpvec(2, 0, 1, 1)
    assert verschiebung(x, 2) == fpvec(2, 0, 0, 1, 1)
    assert restriction(v) == fpvec(2, 0, 1)
    assert restriction(fpvec(2, 1, 0, 1, 1), 3) == fpvec(2, 1)
    with pytest.raises(ValueError):
        restriction(fpvec(2, 1), 1)
    with pytest.raises(ValueError):
        verschiebung(fpvec(2, 1, 0, 1, 1), 1)


def test_verschiebung_additive():
    rng = random.Random(11)
    for p in (2, 3, 5):
        n = SUPPORTED_RANGES[p] - 1
        for _ in range(30):
            x = fpvec(p, *(rng.randrange(p) for _ in range(n)))
            y = fpvec(p, *(rng.randrange(p) for _ in range(n)))
            assert verschiebung(x + y) == verschiebung(x) + verschiebung(y)


def test_frobenius_is_componentwise_power():
    x = fpvec(3, 2, 1)
    assert witt_frobenius(x) == fpvec(3, 2**3 % 3, 1)
    y = fpvec(2, 1, 1, 0)
    assert witt_frobenius(y) == y
    # Frobenius is a ring endomorphism on polynomial components
    a, b, c, d = gens(3, ("a", "b", "c", "d"))
    u = WittVec(3, (a, b))
    w = WittVec(3, (c, d))
    assert witt_frobenius(u + w) == witt_frobenius(u) + witt_frobenius(w)
    assert witt_frobenius(u * w) == witt_frobenius(u) * witt_frobenius(w)


def test_multiplication_by_p_factors():
    """p x = V(F(R(x))) on every supported length above one."""
    rng = random.Random(13)
    for p, nmax in SUPPORTED_RANGES.items():
        if nmax < 2:
            continue
        for n in range(2, nmax + 1):
            for _ in range(20):
                x = fpvec(p, *(rng.randrange(p) for _ in range(n)))
                px = x.ring_zero()
                for _ in range(p):
                    px = px + x
                assert px == verschiebung(witt_frobenius(restriction(x)))


def test_v_shift_single():
    e = FpScalar(2, 1)
    assert v_shift_single(e, 0, 3) == fpvec(2, 1, 0, 0)
    assert v_shift_single(e, 2, 3) == fpvec(2, 0, 0, 1)
    with pytest.raises(ValueError):
        v_shift_single(e, 3, 3)


def test_subtraction_prefix_congruence():
    """(t1+t2, 0, ..) - (t2, 0, ..): graded pieces and leading term."""
    comps = subtraction_components(2, 4)
    t1 = MultiPoly.gen(("t1", "t2"), "t1", 2)
    t2 = MultiPoly.gen(("t1", "t2"), "t2", 2)
    assert comps[0] == t1
    for i, s in enumerate(comps):
        assert s.is_homogeneous()
        assert s.total_degree() == 2**i
        diff = s - t1 * t2 ** (2**i - 1)
        assert all(e[0] >= 2 for e in diff.terms), i


def test_subtraction_three_term_carry():
    a, b, c = gens(2, ("a", "b", "c"))
    z = a.ring_zero()
    got = witt_sub(WittVec(2, (a + b + c, z, z)), WittVec(2, (b, b * c, z)))
    third = (a + c) ** 3 * b + (a + c) * b**3 + (a * a + 3 * a * c + c * c) * b * b
    assert got == WittVec(2, (a + c, a * b, third))


def test_subtraction_teichmuller_sum_length4():
    a, b = gens(2, ("a", "b"))
    z = a.ring_zero()
    got = WittVec(2, (a + b, z, z, z)) - WittVec(2, (a, z, z, z)) - WittVec(2, (b, z, z, z))
    assert got == WittVec(
        2,
        (
            z,
            a * b,
            a * b * (a**2 + a * b + b**2),
            a * b * (a**6 + a**5 * b + a**3 * b**3 + a * b**5 + b**6),
        ),
    )


def test_subtraction_middle_coordinate():
    c0, c1, c2, c3, d2 = gens(2, ("c0", "c1", "c2", "c3", "d2"))
    z = c0.ring_zero()
    got = WittVec(2, (c0, c1, c2 + d2, c3)) - WittVec(2, (z, z, d2, z))
    assert got == WittVec(2, (c0, c1, c2, c3 + c2 * d2))


def test_subtraction_teichmuller_sum_odd_p():
    a, b = gens(3, ("a", "b"))
    z = a.ring_zero()
    got = WittVec(3, (a + b, z)) - WittVec(3, (a, z)) - WittVec(3, (b, z))
    assert got == WittVec(3, (z, a * b * (a + b)))

    a, b = gens(5, ("a", "b"))
    z = a.ring_zero()
    got = WittVec(5, (a + b, z)) - WittVec(5, (a, z)) - WittVec(5, (b, z))
    assert got == WittVec(5, (z, a * b * (a + b) * (a**2 + a * b + b**2)))


def test_projection_formula_generic():
    """V(x) y = V(x F(R(y))) over a generic polynomial point."""
    for p in (2, 3, 5):
        names = ("x0", "y0", "y1")
        x0, y0, y1 = gens(p, names)
        x = WittVec(p, (x0,))
        y = WittVec(p, (y0, y1))
        lhs = verschiebung(x) * y
        rhs = verschiebung(x * witt_frobenius(restriction(y)))
        assert lhs == rhs, p


def test_projection_formula_deep():
    names = ("x0", "x1", "y0", "y1", "y2", "y3")
    x0, x1, y0, y1, y2, y3 = gens(2, names)
    x = WittVec(2, (x0, x1))
    y = WittVec(2, (y0, y1, y2, y3))
    ry = restriction(y, 2)
    lhs = verschiebung(x, 2) * y
    rhs = verschiebung(x * witt_frobenius(witt_frobenius(ry)), 2)
    assert lhs == rhs
