"""Exact polynomial and finite-field arithmetic.

Everything downstream (Witt vector structure polynomials, chart rings,
point counts) reduces to sparse multivariate polynomials whose
coefficients are either arbitrary-precision integers or elements of a
prime field F_p.  Coefficients are stored as plain Python ints together
with an optional modulus; there is no floating point anywhere.

Supported moduli are the primes 2, 3, 5, 7 (anything below 2^16 works,
the small bound only matters for the GF(p^k) tables used in point
counting).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Optional

MAX_PRIME = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _check_modulus(p: int) -> None:
    if not (2 <= p < MAX_PRIME and is_prime(p)):
        raise ValueError(f"modulus must be a prime below 2^16, got {p}")


class FpScalar:
    """An element of the prime field F_p.

    Immutable.  Arithmetic stays inside one fixed p; mixing moduli is a
    bug and raises.
    """

    __slots__ = ("p", "value")

    def __init__(self, p: int, value: int):
        _check_modulus(p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("FpScalar is immutable")

    def _coerce(self, other) -> "FpScalar":
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return FpScalar(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.p, self.value + other.value)

    __radd__ = __add__

    def __neg__(self):
        return FpScalar(self.p, -self.value)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.p, self.value - other.value)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.p, self.value * other.value)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FpScalar(self.p, pow(self.value, e, self.p))

    def inverse(self) -> "FpScalar":
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return FpScalar(self.p, pow(self.value, self.p - 2, self.p))

    def ring_zero(self) -> "FpScalar":
        return FpScalar(self.p, 0)

    def ring_one(self) -> "FpScalar":
        return FpScalar(self.p, 1)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.p
        return (
            isinstance(other, FpScalar)
            and self.p == other.p
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FpScalar({self.p}, {self.value})"

    def __str__(self):
        return str(self.value)


def _grlex_key(exps: tuple) -> tuple:
    # graded lexicographic: total degree first, then lex on exponents
    return (sum(exps), exps)


class MultiPoly:
    """Sparse multivariate polynomial over Z or F_p.

    terms maps exponent tuples to nonzero coefficients; the tuple length
    equals len(variables).  modulus is None for integer coefficients,
    otherwise a prime p and coefficients live in [1, p).
    """

    __slots__ = ("variables", "modulus", "terms")

    def __init__(self, variables, terms=None, modulus: Optional[int] = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        if modulus is not None:
            _check_modulus(modulus)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(variables):
                raise ValueError(f"exponent tuple {exps} does not match {variables}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if modulus is not None:
                c %= modulus
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, variables, modulus=None) -> "MultiPoly":
        return cls(variables, {}, modulus)

    @classmethod
    def const(cls, variables, c: int, modulus=None) -> "MultiPoly":
        n = len(tuple(variables))
        return cls(variables, {(0,) * n: c}, modulus)

    @classmethod
    def gen(cls, variables, name: str, modulus=None) -> "MultiPoly":
        variables = tuple(variables)
        i = variables.index(name)
        exps = tuple(1 if k == i else 0 for k in range(len(variables)))
        return cls(variables, {exps: 1}, modulus)

    def gens(self) -> dict:
        return {v: MultiPoly.gen(self.variables, v, self.modulus) for v in self.variables}

    # -- ring structure ----------------------------------------------

    def _compat(self, other: "MultiPoly") -> None:
        if self.variables != other.variables or self.modulus != other.modulus:
            raise ValueError(
                f"incompatible polynomials: {self.variables}/{self.modulus} "
                f"vs {other.variables}/{other.modulus}"
            )

    def __add__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(self.variables, other, self.modulus)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._compat(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, 0) + c
        return MultiPoly(self.variables, terms, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(
            self.variables, {e: -c for e, c in self.terms.items()}, self.modulus
        )

    def __sub__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(self.variables, other, self.modulus)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(self.variables, other, self.modulus)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._compat(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.variables, terms, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.variables, 1, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def ring_zero(self) -> "MultiPoly":
        return MultiPoly.zero(self.variables, self.modulus)

    def ring_one(self) -> "MultiPoly":
        return MultiPoly.const(self.variables, 1, self.modulus)

    # -- queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient_of(self, exps) -> int:
        return self.terms.get(tuple(exps), 0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.variables.index(name)
        return max(e[i] for e in self.terms)

    def is_homogeneous(self, weights: Optional[dict] = None) -> bool:
        """True if every term has the same weighted total degree."""
        if not self.terms:
            return True
        if weights is None:
            w = [1] * len(self.variables)
        else:
            w = [weights[v] for v in self.variables]
        degs = {sum(wi * ei for wi, ei in zip(w, e)) for e in self.terms}
        return len(degs) == 1

    def weighted_degree(self, weights: dict) -> int:
        w = [weights[v] for v in self.variables]
        return max(sum(wi * ei for wi, ei in zip(w, e)) for e in self.terms)

    def depends_only_on(self, names: Iterable[str]) -> bool:
        allowed = set(names)
        for e in self.terms:
            for v, ei in zip(self.variables, e):
                if ei and v not in allowed:
                    return False
        return True

    # -- maps --------------------------------------------------------

    def exact_div_by_int(self, d: int) -> "MultiPoly":
        """Divide every coefficient by d, failing loudly on remainders.

        Only meaningful over Z.  The Witt structure polynomial recursion
        divides by p^N at each level; a non-divisible term means the
        ghost algebra went wrong, so the error names the offender.
        """
        if self.modulus is not None:
            raise ValueError("exact integer division needs integer coefficients")
        if d == 0:
            raise ZeroDivisionError("division by zero")
        terms = {}
        for exps, c in self.terms.items():
            q, r = divmod(c, d)
            if r:
                mono = _format_term(self.variables, exps, c)
                raise ArithmeticError(f"coefficient of {mono} is not divisible by {d}")
            terms[exps] = q
        return MultiPoly(self.variables, terms, None)

    def reduce_mod(self, p: int) -> "MultiPoly":
        if self.modulus is not None:
            raise ValueError("already reduced")
        return MultiPoly(self.variables, dict(self.terms), p)

    def map_coefficients(self, fn) -> "MultiPoly":
        return MultiPoly(
            self.variables, {e: fn(c) for e, c in self.terms.items()}, self.modulus
        )

    def rename(self, mapping: dict) -> "MultiPoly":
        new_vars = tuple(mapping.get(v, v) for v in self.variables)
        return MultiPoly(new_vars, dict(self.terms), self.modulus)

    def evaluate(self, env: dict, zero=None):
        """Evaluate in any commutative ring.

        env maps variable names to ring elements supporting +, ** with
        nonnegative int exponents, and * with both ring elements and
        plain int scalars.
        """
        if zero is None:
            if not env:
                raise ValueError("need a zero element for a variable-free evaluation")
            zero = next(iter(env.values())).ring_zero()
        acc = zero
        one = zero.ring_one()
        # per-variable power cache keeps repeated exponents cheap
        cache: dict = {}

        def power(name, e):
            key = (name, e)
            if key not in cache:
                cache[key] = env[name] ** e
            return cache[key]

        for exps, c in self.terms.items():
            mono = one
            for name, e in zip(self.variables, exps):
                if e:
                    mono = mono * power(name, e)
            acc = acc + mono * c
        return acc

    # -- comparison and display ---------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.variables == other.variables
            and self.modulus == other.modulus
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, self.modulus, frozenset(self.terms.items())))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = [_format_term(self.variables, e, c) for e, c in self.sorted_terms()]
        out = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                out += " - " + part[1:]
            else:
                out += " + " + part
        return out

    def __repr__(self):
        return f"MultiPoly({self})"


def _format_term(variables, exps, c) -> str:
    factors = []
    for v, e in zip(variables, exps):
        if e == 1:
            factors.append(v)
        elif e:
            factors.append(f"{v}^{e}")
    if not factors:
        return str(c)
    body = "*".join(factors)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def parse_poly(text: str, variables=None, modulus: Optional[int] = None) -> MultiPoly:
    """Parse the CLI polynomial literal syntax.

    Terms are joined by + or -, each term a product of an optional
    integer coefficient and factors x^e.  Exponents must be nonnegative
    (Laurent monomials live in chartring, not here).  If variables is
    None the variable set is inferred and sorted by name.
    """
    raw = text.replace("-", "+-").split("+")
    pieces = [t.strip() for t in raw if t.strip()]
    if not pieces:
        raise ValueError(f"empty polynomial literal: {text!r}")
    parsed = []
    seen = set()
    for piece in pieces:
        sign = 1
        if piece.startswith("-"):
            sign = -1
            piece = piece[1:].strip()
        coeff = sign
        exps: dict = {}
        for factor in piece.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in term {piece!r}")
            if factor.lstrip("-").isdigit():
                coeff *= int(factor)
                continue
            if "^" in factor:
                name, _, etext = factor.partition("^")
                name = name.strip()
                etext = etext.strip()
                try:
                    e = int(etext)
                except ValueError:
                    raise ValueError(f"bad exponent {etext!r} in {piece!r}") from None
            else:
                name, e = factor, 1
            if not name.isidentifier():
                raise ValueError(f"bad variable name {name!r} in {piece!r}")
            if e < 0:
                raise ValueError(f"negative exponent in {piece!r}")
            exps[name] = exps.get(name, 0) + e
            seen.add(name)
        parsed.append((coeff, exps))
    if variables is None:
        variables = tuple(sorted(seen))
    else:
        variables = tuple(variables)
        missing = seen - set(variables)
        if missing:
            raise ValueError(f"unknown variables {sorted(missing)} in {text!r}")
    terms: dict = {}
    for coeff, exps in parsed:
        key = tuple(exps.get(v, 0) for v in variables)
        terms[key] = terms.get(key, 0) + coeff
    return MultiPoly(variables, terms, modulus)


class FiniteField:
    """GF(q) for a prime power q, with log-table multiplication.

    Elements are encoded as ints in [0, q): the base-p digits of the
    code are the coefficients of the polynomial representative.  For
    prime q this is ordinary modular arithmetic.  Intended for small q
    (point counting); tables are built eagerly.
    """

    def __init__(self, q: int):
        p, k = _prime_power(q)
        self.q = q
        self.p = p
        self.k = k
        if k == 1:
            self._log = None
            self._exp = None
        else:
            modpoly = _find_irreducible(p, k)
            self._build_tables(modpoly)

    def _build_tables(self, modpoly: tuple) -> None:
        p, k, q = self.p, self.k, self.q

        def mul_raw(a: int, b: int) -> int:
            da = _digits(a, p, k)
            db = _digits(b, p, k)
            prod = [0] * (2 * k - 1)
            for i, ai in enumerate(da):
                if ai:
                    for j, bj in enumerate(db):
                        prod[i + j] = (prod[i + j] + ai * bj) % p
            # reduce by the monic modulus
            for i in range(len(prod) - 1, k - 1, -1):
                c = prod[i]
                if c:
                    prod[i] = 0
                    for j, mj in enumerate(modpoly[:k]):
                        prod[i - k + j] = (prod[i - k + j] - c * mj) % p
            return _undigits(prod[:k], p)

        # find a multiplicative generator by trial
        factors = _prime_factors(q - 1)
        g = None
        for cand in range(2, q):
            if all(_pow_raw(cand, (q - 1) // f, mul_raw) != 1 for f in factors):
                g = cand
                break
        if g is None:
            raise RuntimeError("no generator found")
        exp = [1] * (q - 1)
        log = [0] * q
        acc = 1
        for i in range(q - 1):
            exp[i] = acc
            log[acc] = i
            acc = mul_raw(acc, g)
        self._exp = exp
        self._log = log

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da = _digits(a, self.p, self.k)
        db = _digits(b, self.p, self.k)
        return _undigits([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return _undigits([(-x) % self.p for x in _digits(a, self.p, self.k)], self.p)

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if self.k == 1:
            if a == 0:
                return 0 if e else 1
            return pow(a, e, self.p)
        if a == 0:
            return 0 if e else 1
        if e == 0:
            return 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def from_int(self, c: int) -> int:
        """Image of the integer c under Z -> F_p in GF(q)."""
        return c % self.p

    def evaluate_poly(self, poly: MultiPoly, point) -> int:
        if poly.modulus != self.p:
            raise ValueError(f"polynomial modulus {poly.modulus} is not {self.p}")
        names = poly.variables
        vals = dict(zip(names, point))
        acc = 0
        for exps, c in poly.terms.items():
            t = self.from_int(c)
            for name, e in zip(names, exps):
                if e:
                    t = self.mul(t, self.pow(vals[name], e))
            acc = self.add(acc, t)
        return acc


def _prime_power(q: int):
    if q < 2:
        raise ValueError(f"not a prime power: {q}")
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise ValueError(f"not a prime power: {q}")
            if q >= MAX_PRIME:
                raise ValueError(f"field too large: {q}")
            return p, k
    raise ValueError(f"not a prime power: {q}")


def _digits(a: int, p: int, k: int) -> list:
    out = []
    for _ in range(k):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds, p: int) -> int:
    out = 0
    for d in reversed(list(ds)):
        out = out * p + d
    return out


def _pow_raw(a: int, e: int, mul) -> int:
    r = 1
    while e:
        if e & 1:
            r = mul(r, a)
        a = mul(a, a)
        e >>= 1
    return r


def _prime_factors(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_is_irreducible(coeffs: tuple, p: int) -> bool:
    # coeffs = (c0, ..., c_{k-1}, 1) monic of degree k; brute trial division
    k = len(coeffs) - 1
    # no roots
    for a in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * a + c) % p
        if acc == 0:
            return False
    if k <= 3:
        return True
    # trial division by monic polynomials of degree 2..k//2
    for d in range(2, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if _poly_divides(divisor, list(coeffs), p):
                return False
    return True


def _poly_divides(d: list, f: list, p: int) -> bool:
    f = list(f)
    dd = len(d) - 1
    for i in range(len(f) - 1, dd - 1, -1):
        c = f[i] % p
        if c:
            for j in range(dd + 1):
                f[i - dd + j] = (f[i - dd + j] - c * d[j]) % p
    return all(c % p == 0 for c in f)


def _find_irreducible(p: int, k: int) -> tuple:
    for tail in itertools.product(range(p), repeat=k):
        coeffs = tuple(tail) + (1,)
        if _poly_is_irreducible(coeffs, p):
            return coeffs
    raise RuntimeError(f"no irreducible polynomial of degree {k} over F_{p}")


def poly_ring_gens(names: Iterable[str], modulus: Optional[int] = None) -> Iterator[MultiPoly]:
    names = tuple(names)
    return (MultiPoly.gen(names, n, modulus) for n in names)
