"""Truncated p-typical Witt vector arithmetic.

W_n(A) is A^n as a set, with ring operations given by universal
structure polynomials.  The polynomials are derived here from scratch:
the ghost map

    w_N(t_0, ..., t_N) = sum_{i=0}^{N} p^i * t_i^(p^(N-i))

must be a ring homomorphism, which determines the sum/product/negation
polynomials recursively over Z with an exact division by p^N at level N.
The derivation is done once per (p, n, op) and cached; reducing mod p
gives the tables actually used for arithmetic in characteristic p.

Supported truncations: p = 2 up to n = 4, p in {3, 5} up to n = 2,
p = 7 at n = 1.  These bounds are practical, not mathematical; the
derivation works for any (p, n) but table size grows quickly.

Operators on W_n(A) for any commutative F_p-algebra A whose elements
implement +, -, *, ** and ring_zero/ring_one:

    V (verschiebung)  prepends a zero component, W_n -> W_{n+1}
    R (restriction)   drops the last component, W_n -> W_{n-1}
    F (frobenius)     raises components to the p-th power; on W_n of an
                      F_p-algebra this is the Witt Frobenius
"""

from __future__ import annotations

import functools
import itertools
from typing import Optional

from .ffpoly import MultiPoly, is_prime

SUPPORTED_RANGES = {2: 4, 3: 2, 5: 2, 7: 1}


def check_supported(p: int, n: int) -> None:
    if p not in SUPPORTED_RANGES:
        raise ValueError(f"unsupported prime {p}; supported: {sorted(SUPPORTED_RANGES)}")
    if not (1 <= n <= SUPPORTED_RANGES[p]):
        raise ValueError(f"W_{n} at p={p} out of supported range 1..{SUPPORTED_RANGES[p]}")


def ghost_poly(p: int, N: int, names) -> MultiPoly:
    """w_N over Z in the given component variable names (length N+1)."""
    names = tuple(names)
    acc = MultiPoly.zero(names, None)
    for i in range(N + 1):
        t = MultiPoly.gen(names, names[i], None)
        acc = acc + t ** (p ** (N - i)) * (p**i)
    return acc


@functools.lru_cache(maxsize=None)
def derive_integer_polys(p: int, n: int, op: str) -> tuple:
    """Structure polynomials over Z for one ring operation.

    op is "add", "mul" or "neg".  Returns a tuple of n MultiPoly over Z
    in variables a0..a{n-1} (and b0..b{n-1} for binary ops).  Level N is
    solved from the ghost identity at level N, reusing lower levels; the
    division by p^N is exact by construction and verified as such.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if op not in ("add", "mul", "neg"):
        raise ValueError(f"unknown Witt operation {op!r}")
    avars = tuple(f"a{i}" for i in range(n))
    bvars = tuple(f"b{i}" for i in range(n)) if op != "neg" else ()
    names = avars + bvars
    a = {v: MultiPoly.gen(names, v, None) for v in avars}
    b = {v: MultiPoly.gen(names, v, None) for v in bvars}
    zero = MultiPoly.zero(names, None)

    def ghost_of(components, N):
        acc = zero
        for i in range(N + 1):
            acc = acc + components[i] ** (p ** (N - i)) * (p**i)
        return acc

    def ghost_rhs(N):
        ga = ghost_of([a[v] for v in avars], N)
        if op == "neg":
            return -ga
        gb = ghost_of([b[v] for v in bvars], N)
        return ga + gb if op == "add" else ga * gb

    polys: list = []
    for N in range(n):
        residue = ghost_rhs(N)
        for i in range(N):
            residue = residue - polys[i] ** (p ** (N - i)) * (p**i)
        polys.append(residue.exact_div_by_int(p**N))
    return tuple(polys)


class WittPolyTable:
    """Mod-p structure polynomials for W_n in characteristic p."""

    __slots__ = ("p", "n", "sum_polys", "prod_polys", "neg_polys")

    def __init__(self, p: int, n: int):
        check_supported(p, n)
        self.p = p
        self.n = n
        self.sum_polys = tuple(q.reduce_mod(p) for q in derive_integer_polys(p, n, "add"))
        self.prod_polys = tuple(q.reduce_mod(p) for q in derive_integer_polys(p, n, "mul"))
        self.neg_polys = tuple(q.reduce_mod(p) for q in derive_integer_polys(p, n, "neg"))


@functools.lru_cache(maxsize=None)
def build_witt_table(p: int, n: int) -> WittPolyTable:
    return WittPolyTable(p, n)


def ghost_compatibility_ok(p: int, n: int) -> bool:
    """Re-derive and check the ghost identities over Z, before reduction.

    For each op and each level N < n this substitutes the structure
    polynomials into w_N and compares with the ghost-side result as an
    identity of integer polynomials.
    """
    check_supported(p, n)
    for op in ("add", "mul", "neg"):
        polys = derive_integer_polys(p, n, op)
        names = polys[0].variables
        avars = tuple(f"a{i}" for i in range(n))
        a = [MultiPoly.gen(names, v, None) for v in avars]
        if op != "neg":
            b = [MultiPoly.gen(names, f"b{i}", None) for i in range(n)]
        zero = MultiPoly.zero(names, None)
        for N in range(n):
            tnames = tuple(f"t{i}" for i in range(N + 1))
            w = ghost_poly(p, N, tnames)
            lhs = w.evaluate({f"t{i}": polys[i] for i in range(N + 1)}, zero)
            ga = ghost_poly(p, N, avars[: N + 1]).evaluate(
                {v: a[i] for i, v in enumerate(avars[: N + 1])}, zero
            )
            if op == "neg":
                rhs = -ga
            else:
                gb = ghost_poly(p, N, tuple(f"b{i}" for i in range(N + 1))).evaluate(
                    {f"b{i}": b[i] for i in range(N + 1)}, zero
                )
                rhs = ga + gb if op == "add" else ga * gb
            if lhs != rhs:
                return False
    return True


class WittVec:
    """A length-n Witt vector over a commutative F_p-algebra."""

    __slots__ = ("p", "components")

    def __init__(self, p: int, components):
        components = tuple(components)
        if not components:
            raise ValueError("Witt vectors here have length >= 1")
        check_supported(p, len(components))
        self.p = p
        self.components = components

    @property
    def n(self) -> int:
        return len(self.components)

    def ring_zero(self) -> "WittVec":
        z = self.components[0].ring_zero()
        return WittVec(self.p, (z,) * self.n)

    def ring_one(self) -> "WittVec":
        z = self.components[0].ring_zero()
        return WittVec(self.p, (self.components[0].ring_one(),) + (z,) * (self.n - 1))

    def __eq__(self, other):
        return (
            isinstance(other, WittVec)
            and self.p == other.p
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.p, self.components))

    def __add__(self, other):
        return witt_add(self, other)

    def __mul__(self, other):
        return witt_mul(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __sub__(self, other):
        return witt_sub(self, other)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        return f"WittVec(p={self.p}, {self})"


def _check_pair(x: WittVec, y: WittVec) -> None:
    if x.p != y.p:
        raise ValueError(f"prime mismatch: {x.p} vs {y.p}")
    if x.n != y.n:
        raise ValueError(f"length mismatch: {x.n} vs {y.n}")


def _eval_table(polys, env, zero) -> tuple:
    return tuple(q.evaluate(env, zero) for q in polys)


def witt_add(x: WittVec, y: WittVec) -> WittVec:
    _check_pair(x, y)
    table = build_witt_table(x.p, x.n)
    env = {f"a{i}": c for i, c in enumerate(x.components)}
    env.update({f"b{i}": c for i, c in enumerate(y.components)})
    zero = x.components[0].ring_zero()
    return WittVec(x.p, _eval_table(table.sum_polys, env, zero))

def witt_mul(x: WittVec, y: WittVec) -> WittVec:
    _check_pair(x, y)
    table = build_witt_table(x.p, x.n)
    env = {f"a{i}": c for i, c in enumerate(x.components)}
    env.update({f"b{i}": c for i, c in enumerate(y.components)})
    zero = x.components[0].ring_zero()
    return WittVec(x.p, _eval_table(table.prod_polys, env, zero))

def witt_neg(x: WittVec) -> WittVec:
    table = build_witt_table(x.p, x.n)
    env = {f"a{i}": c for i, c in enumerate(x.components)}
    zero = x.components[0].ring_zero()
    return WittVec(x.p, _eval_table(table.neg_polys, env, zero))

def witt_sub(x: WittVec, y: WittVec) -> WittVec:
    return witt_add(x, witt_neg(y))


def verschiebung(x: WittVec, times: int = 1) -> WittVec:
    """V^times: prepend zero components (lands in W_{n+times})."""
    if times < 0:
        raise ValueError("V only shifts forward")
    z = x.components[0].ring_zero()
    return WittVec(x.p, (z,) * times + x.components)


def restriction(x: WittVec, times: int = 1) -> WittVec:
    """R^times: drop the last components (lands in W_{n-times})."""
    if times < 0 or times >= x.n:
        raise ValueError(f"cannot restrict W_{x.n} {times} times")
    return WittVec(x.p, x.components[: x.n - times]) if times else x


def witt_frobenius(x: WittVec) -> WittVec:
    """Componentwise p-th power; the Witt Frobenius for F_p-algebras."""
    return WittVec(x.p, tuple(c ** x.p for c in x.components))


def characteristic_of(elem) -> int:
    """The prime p of the F_p-algebra an element belongs to."""
    ring = getattr(elem, "ring", None)
    if ring is not None:
        return ring.p
    p = getattr(elem, "p", None)
    if p is not None:
        return p
    m = getattr(elem, "modulus", None)
    if m:
        return m
    raise TypeError(f"cannot infer characteristic of {elem!r}")


def teichmuller(elem, n: int) -> WittVec:
    """[a] = (a, 0, ..., 0) in W_n."""
    z = elem.ring_zero()
    return WittVec(characteristic_of(elem), (elem,) + (z,) * (n - 1))


def v_shift_single(elem, position: int, n: int) -> WittVec:
    """V^position of the Teichmuller lift, as a length-n vector."""
    if not (0 <= position < n):
        raise ValueError(f"position {position} out of range for W_{n}")
    z = elem.ring_zero()
    comps = [z] * n
    comps[position] = elem
    return WittVec(characteristic_of(elem), tuple(comps))


def witt_from_int(n: int, value: int, one) -> WittVec:
    """value * 1 in W_n, where one is the multiplicative unit of A."""
    p = characteristic_of(one)
    acc = WittVec(p, (one.ring_zero(),) * n)
    unit = teichmuller(one, n)
    if value < 0:
        unit = witt_neg(unit)
        value = -value
    for _ in range(value):
        acc = witt_add(acc, unit)
    return acc


def subtraction_components(p: int, n: int) -> tuple:
    """Components of (t1+t2, 0, ..) - (t2, 0, ..) over F_p[t1, t2].

    The i-th entry is the universal polynomial S_i(t1, t2); S_0 = t1.
    """
    names = ("t1", "t2")
    t1 = MultiPoly.gen(names, "t1", p)
    t2 = MultiPoly.gen(names, "t2", p)
    zero = MultiPoly.zero(names, p)
    lhs = WittVec(p, (t1 + t2,) + (zero,) * (n - 1))
    rhs = WittVec(p, (t2,) + (zero,) * (n - 1))
    return witt_sub(lhs, rhs).components
