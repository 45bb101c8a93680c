import random

import pytest

from rdpk3.ffpoly import (
    FiniteField,
    FpScalar,
    MultiPoly,
    is_prime,
    parse_poly,
    poly_ring_gens,
)


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29,
    ]
    assert not is_prime(1)
    assert not is_prime(0)
    assert not is_prime(-7)


def test_fp_scalar_basic():
    a = FpScalar(5, 7)
    assert a.value == 2
    b = FpScalar(5, 4)
    assert (a + b).value == 1
    assert (a - b).value == 3
    assert (a * b).value == 3
    assert (-a).value == 3
    assert (a ** 3).value == 3
    assert (a ** 0).value == 1
    assert bool(a)
    assert not bool(FpScalar(5, 0))


def test_fp_scalar_int_coercion():
    a = FpScalar(7, 3)
    assert a + 4 == FpScalar(7, 0)
    assert 4 + a == FpScalar(7, 0)
    assert 2 * a == FpScalar(7, 6)
    assert 1 - a == FpScalar(7, 5)
    assert a != FpScalar(5, 3)


def test_fp_scalar_inverse():
    for p in (2, 3, 5, 7, 13):
        for v in range(1, p):
            a = FpScalar(p, v)
            assert (a * a.inverse()).value == 1
    with pytest.raises(ZeroDivisionError):
        FpScalar(5, 0).inverse()


def test_fp_scalar_mismatched_primes():
    with pytest.raises(ValueError):
        FpScalar(5, 1) + FpScalar(7, 1)


def test_fp_scalar_rejects_composite_modulus():
    with pytest.raises(ValueError):
        FpScalar(6, 1)


def test_multipoly_construction_and_equality():
    x = MultiPoly.gen(("x", "y"), "x")
    y = MultiPoly.gen(("x", "y"), "y")
    p = (x + y) ** 2
    assert p == x**2 + 2 * x * y + y**2
    assert p.coefficient_of((1, 1)) == 2
    assert p.coefficient_of((2, 0)) == 1
    assert p.coefficient_of((5, 0)) == 0
    assert p.total_degree() == 2
    assert p.degree_in("x") == 2
    z = MultiPoly.zero(("x", "y"))
    assert (p - p) == z
    assert p != z
    assert z.is_zero()
    assert not p.is_zero()


def test_multipoly_mod_p_collapse():
    """Coefficients reduce mod p, and multiples of p vanish."""
    x = MultiPoly.gen(("x",), "x", 3)
    assert x + x + x == MultiPoly.zero(("x",), 3)
    assert (x + 1) ** 3 == x**3 + 1


def test_multipoly_frobenius_binomial():
    for p in (2, 3, 5, 7):
        x = MultiPoly.gen(("x", "y"), "x", p)
        y = MultiPoly.gen(("x", "y"), "y", p)
        assert (x + y) ** p == x**p + y**p


def test_multipoly_homogeneity():
    x = MultiPoly.gen(("x", "y"), "x")
    y = MultiPoly.gen(("x", "y"), "y")
    assert (x**3 + x * y**2).is_homogeneous()
    assert not (x**3 + y).is_homogeneous()
    # weighted: y counts double
    assert (x**2 + y).is_homogeneous(weights={"x": 1, "y": 2})


def test_multipoly_exact_div():
    x = MultiPoly.gen(("x",), "x")
    assert (4 * x**2 + 8).exact_div_by_int(4) == x**2 + 2
    with pytest.raises(ArithmeticError):
        (4 * x**2 + 2).exact_div_by_int(4)
    with pytest.raises(ValueError):
        MultiPoly.gen(("x",), "x", 5).exact_div_by_int(2)


def test_multipoly_rename_and_depends():
    x = MultiPoly.gen(("x", "y"), "x")
    y = MultiPoly.gen(("x", "y"), "y")
    q = (x**2 + y).rename({"x": "a", "y": "b"})
    a = MultiPoly.gen(("a", "b"), "a")
    b = MultiPoly.gen(("a", "b"), "b")
    assert q == a**2 + b
    assert (x**2).depends_only_on(["x"])
    assert not (x**2 + y).depends_only_on(["x"])


def test_multipoly_evaluate_into_scalars():
    p = parse_poly("x^2 + 3*x*y + 2", ("x", "y"), modulus=7)
    env = {"x": FpScalar(7, 2), "y": FpScalar(7, 5)}
    assert p.evaluate(env) == FpScalar(7, (4 + 30 + 2) % 7)


def test_multipoly_evaluate_into_polys():
    """Substitution of polynomials for variables is ring evaluation."""
    p = parse_poly("u^2 + v", ("u", "v"))
    x = MultiPoly.gen(("x",), "x")
    out = p.evaluate({"u": x + 1, "v": x})
    assert out == x**2 + 3 * x + 1


def test_parse_poly_round_trip():
    p = parse_poly("x^2*y - 3*y + 4", ("x", "y"))
    assert p.coefficient_of((2, 1)) == 1
    assert p.coefficient_of((0, 1)) == -3
    assert p.coefficient_of((0, 0)) == 4
    again = parse_poly(str(p), ("x", "y"))
    assert again == p


def test_parse_poly_inferred_variables():
    p = parse_poly("b*a + c^2")
    assert p.variables == ("a", "b", "c")


def test_parse_poly_rejects_garbage():
    with pytest.raises(ValueError):
        parse_poly("")
    with pytest.raises(ValueError):
        parse_poly("x^-2", ("x",))
    with pytest.raises(ValueError):
        parse_poly("x + y", ("x",))
    with pytest.raises(ValueError):
        parse_poly("x^a", ("x", "a"))


def test_poly_ring_gens():
    x, y = poly_ring_gens(("x", "y"), modulus=5)
    assert x * y == MultiPoly(("x", "y"), {(1, 1): 1}, 5)


def test_finite_field_prime():
    f = FiniteField(7)
    assert f.add(5, 4) == 2
    assert f.mul(3, 5) == 1
    assert f.pow(3, 6) == 1
    assert f.neg(2) == 5


def test_finite_field_extension_axioms():
    rng = random.Random(42)
    for q in (4, 8, 9, 25, 27):
        f = FiniteField(q)
        els = list(f.elements())
        assert len(els) == q
        for _ in range(60):
            a = rng.choice(els)
            b = rng.choice(els)
            c = rng.choice(els)
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            assert f.add(a, f.neg(a)) == 0
        # multiplicative group has order q - 1
        for a in els:
            if a:
                assert f.pow(a, q - 1) == 1
            assert f.pow(a, q) == a


def test_finite_field_frobenius_additive():
    for q in (4, 8, 9):
        f = FiniteField(q)
        for a in f.elements():
            for b in f.elements():
                lhs = f.pow(f.add(a, b), f.p)
                rhs = f.add(f.pow(a, f.p), f.pow(b, f.p))
                assert lhs == rhs


def test_finite_field_evaluate_poly():
    f = FiniteField(4)
    p = parse_poly("x^2 + x", ("x",), modulus=2)
    # x^2 + x vanishes exactly on the prime field inside F_4
    roots = [a for a in f.elements() if f.evaluate_poly(p, (a,)) == 0]
    assert len(roots) == 2
    assert 0 in roots


def test_finite_field_rejects_non_prime_power():
    with pytest.raises(ValueError):
        FiniteField(6)
    with pytest.raises(ValueError):
        FiniteField(1)
