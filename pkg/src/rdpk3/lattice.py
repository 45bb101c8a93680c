"""Integer lattices, discriminant forms, and gluing.

A lattice is a free Z-module with an integer-valued symmetric bilinear
form, recorded by its Gram matrix.  This module computes:

  * discriminant groups L*/L with their generator lifts, and the
    induced quadratic form q(v) = v^2 mod 2Z and bilinear form
    b(v, w) = v.w mod Z on them (`disc_group`);
  * signatures by exact congruence diagonalization (`signature`);
  * even overlattices glued from two lattices along an anti-isometry
    of the prime-to-p parts of their discriminant groups (`glue`);
  * existence of integral unimodular overlattices of finite index by
    exhaustive isotropic-subgroup search (`unimodular_overlattice_exists`);
  * negative-definite root lattices of types A, D, E (`dynkin_gram`).

All arithmetic is exact (Python ints and Fractions).
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt, lcm
from typing import Iterable, List, Optional, Sequence, Tuple

from .chartring import parse_symbol

SEARCH_GUARD = 100_000


# ---------------------------------------------------------------------------
# integer matrix utilities


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_diagonal(rows: Sequence[Sequence[int]]) -> Tuple[List[int], List[List[int]]]:
    """Smith normal form diagonal plus the inverse left transform.

    Returns (d, W) where d is the list of invariant factors
    (nonnegative, each dividing the next) of the square matrix M and W
    is unimodular with the property: if U M V = diag(d) then W = U^{-1},
    so column i of W generates the Z/d_i factor of coker(M).
    """
    n = len(rows)
    m = [list(map(int, row)) for row in rows]
    w = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        for row in w:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):
        # row i += c * row j; W gets col j -= c * col i
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        for row in w:
            row[j] -= c * row[i]

    def negate_row(i):
        m[i] = [-a for a in m[i]]
        for row in w:
            row[i] = -row[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]

    def add_col(i, j, c):
        for row in m:
            row[i] += c * row[j]

    for k in range(n):
        while True:
            # move a minimal nonzero entry of the trailing block to (k, k)
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    if m[i][j] != 0 and (best is None or abs(m[i][j]) < best[0]):
                        best = (abs(m[i][j]), i, j)
            if best is None:
                break
            _, bi, bj = best
            if bi != k:
                swap_rows(k, bi)
            if bj != k:
                swap_cols(k, bj)
            dirty = False
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    add_row(i, k, -(m[i][k] // m[k][k]))
                    dirty = dirty or m[i][k] != 0
            for j in range(k + 1, n):
                if m[k][j] != 0:
                    add_col(j, k, -(m[k][j] // m[k][k]))
                    dirty = dirty or m[k][j] != 0
            if dirty:
                continue
            # divisibility fix-up: pivot must divide the trailing block
            offender = None
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    if m[i][j] % m[k][k] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(k, offender, 1)
        if m[k][k] < 0:
            negate_row(k)
    return [m[i][i] for i in range(n)], w


def hermite_row_basis(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """Row-style Hermite basis of the lattice spanned by integer rows.

    Returns the nonzero rows of an upper-echelon basis; for full
    column rank input this is a square triangular matrix.
    """
    work = [list(map(int, row)) for row in rows if any(row)]
    ncols = len(rows[0])
    basis: List[List[int]] = []
    col = 0
    while col < ncols and work:
        live = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            head = live[0]
            reduced = []
            for r in live[1:]:
                c = r[col] // head[col]
                new = [a - c * b for a, b in zip(r, head)]
                (reduced if new[col] != 0 else rest).append(new)
            live = [head] + reduced
        pivot = live[0]
        if pivot[col] < 0:
            pivot = [-a for a in pivot]
        basis.append(pivot)
        work = [r for r in rest if any(r)]
        col += 1
    return basis


def solve_rational(
    mat: Sequence[Sequence[int]], rhs: Sequence[Fraction]
) -> List[Fraction]:
    """Solve M x = rhs exactly (M square nonsingular)."""
    n = len(mat)
    a = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for k in range(n):
        piv = next(i for i in range(k, n) if a[i][k] != 0)
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [a[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# lattices


class GramLattice:
    """A non-degenerate integer lattice given by its Gram matrix."""

    __slots__ = ("gram", "rank", "det")

    def __init__(self, gram: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in gram)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        d = det_int(rows)
        if d == 0:
            raise ValueError("degenerate lattice (zero determinant)")
        object.__setattr__(self, "gram", rows)
        object.__setattr__(self, "rank", n)
        object.__setattr__(self, "det", d)

    def __setattr__(self, name, value):
        raise AttributeError("GramLattice is immutable")

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def is_unimodular(self) -> bool:
        return abs(self.det) == 1

    def dot(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        acc = Fraction(0)
        for i in range(self.rank):
            if x[i]:
                for j in range(self.rank):
                    if y[j]:
                        acc += x[i] * self.gram[i][j] * y[j]
        return acc

    def in_dual(self, vec: Sequence[Fraction]) -> bool:
        """Whether a rational vector pairs integrally with the lattice."""
        for i in range(self.rank):
            pairing = sum(Fraction(self.gram[i][j]) * vec[j] for j in range(self.rank))
            if pairing.denominator != 1:
                return False
        return True

    def direct_sum(self, other: "GramLattice") -> "GramLattice":
        n, m = self.rank, other.rank
        rows = []
        for i in range(n):
            rows.append(list(self.gram[i]) + [0] * m)
        for i in range(m):
            rows.append([0] * n + list(other.gram[i]))
        return GramLattice(rows)

    def __eq__(self, other):
        return isinstance(other, GramLattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __str__(self):
        body = ", ".join("[" + ", ".join(map(str, row)) + "]" for row in self.gram)
        return f"[{body}]"

    def __repr__(self):
        return f"GramLattice({self})"


def diagonal_gram(entries: Sequence[int]) -> GramLattice:
    n = len(entries)
    return GramLattice(
        [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
    )


def hyperbolic_plane() -> GramLattice:
    return GramLattice([[0, 1], [1, 0]])


def dynkin_gram(symbol) -> GramLattice:
    """Negative-definite root lattice of type A_N, D_N, or E_N.

    Convention: e_i^2 = -2 and e_i . e_j = 1 for nodes joined by an
    edge.  A_N is a chain; D_N is a chain of N-2 nodes with two extra
    nodes on its last node; E_N is a chain of N-1 nodes with one extra
    node on its third node.
    """
    family, N = parse_symbol(symbol) if isinstance(symbol, str) else tuple(symbol)
    edges = []
    if family == "A":
        edges = [(i, i + 1) for i in range(N - 1)]
    elif family == "D":
        edges = [(i, i + 1) for i in range(N - 3)]
        edges += [(N - 3, N - 2), (N - 3, N - 1)]
    else:
        edges = [(i, i + 1) for i in range(N - 2)]
        edges.append((2, N - 1))
    rows = [[-2 if i == j else 0 for j in range(N)] for i in range(N)]
    for i, j in edges:
        rows[i][j] = rows[j][i] = 1
    return GramLattice(rows)


def signature(L: GramLattice) -> Tuple[int, int]:
    """(positive, negative) inertia indices, by exact diagonalization."""
    n = L.rank
    a = [[Fraction(x) for x in row] for row in L.gram]
    pos = neg = 0
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            # symmetric matrix with zero diagonal: fold a nonzero
            # off-diagonal entry onto the diagonal
            found = next(
                (i, j)
                for i in range(k, n)
                for j in range(i + 1, n)
                if a[i][j] != 0
            )
            i, j = found
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for r in range(n):
                a[r][k], a[r][piv] = a[r][piv], a[r][k]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / d
                for c in range(n):
                    a[i][c] -= f * a[k][c]
        for j in range(k + 1, n):
            a[k][j] = Fraction(0)
            a[j][k] = Fraction(0)
    return pos, neg


# ---------------------------------------------------------------------------
# discriminant groups


@dataclass(frozen=True)
class DiscForm:
    """The finite group L*/L with its torsion form data.

    orders are the invariant factors > 1 (each divides the next);
    gens[i] is a rational vector in the basis of L representing a
    generator of the Z/orders[i] factor.  Elements of the group are
    integer tuples, one residue per listed order.
    """

    lattice: GramLattice
    orders: Tuple[int, ...]
    gens: Tuple[Tuple[Fraction, ...], ...]

    @property
    def group_order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    def elements(self):
        return itertools.product(*(range(d) for d in self.orders))

    def reduce(self, elem: Sequence[int]) -> Tuple[int, ...]:
        return tuple(a % d for a, d in zip(elem, self.orders))

    def add(self, x: Sequence[int], y: Sequence[int]) -> Tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def order_of(self, elem: Sequence[int]) -> int:
        out = 1
        for a, d in zip(elem, self.orders):
            out = lcm(out, d // gcd(a, d))
        return out

    def vector(self, elem: Sequence[int]) -> Tuple[Fraction, ...]:
        """A coset representative in L tensor Q (lattice basis coords)."""
        vec = [Fraction(0)] * self.lattice.rank
        for a, g in zip(elem, self.gens):
            if a:
                vec = [v + a * c for v, c in zip(vec, g)]
        return tuple(vec)

    @cached_property
    def _gen_pairings(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(
            tuple(self.lattice.dot(g, h) for h in self.gens) for g in self.gens
        )

    def _raw_dot(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        pair = self._gen_pairings
        acc = Fraction(0)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        acc += a * b * pair[i][j]
        return acc

    def b_value(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        """Bilinear pairing in Q/Z, represented in [0, 1)."""
        return self._raw_dot(x, y) % 1

    def q_value(self, elem: Sequence[int]) -> Fraction:
        """Quadratic value v^2 in Q/2Z, represented in [0, 2).

        Well-defined only when the lattice is even.
        """
        if not self.lattice.is_even:
            raise ValueError("quadratic discriminant form needs an even lattice")
        return self._raw_dot(elem, elem) % 2

    def prime_to(self, p: int) -> List[Tuple[int, ...]]:
        """All elements of order coprime to p (the prime-to-p part)."""
        return [x for x in self.elements() if gcd(self.order_of(x), p) == 1]


def disc_group(L: GramLattice) -> DiscForm:
    """Discriminant group L*/L with generator lifts.

    Smith normal form of the Gram matrix gives the cyclic structure;
    the inverse left transform gives dual-basis coordinates of the
    generators, converted to lattice-basis coordinates through G^{-1}.
    """
    diag, w = smith_diagonal(L.gram)
    orders = []
    gens = []
    for i, d in enumerate(diag):
        if d > 1:
            # column i of the inverse left transform, read in the dual
            # basis, generates the Z/d factor; G^{-1} converts it to
            # lattice-basis coordinates
            dual_coords = [Fraction(w[row][i]) for row in range(L.rank)]
            vec = solve_rational(L.gram, dual_coords)
            gens.append(tuple(vec))
            orders.append(d)
    return DiscForm(L, tuple(orders), tuple(gens))


# ---------------------------------------------------------------------------
# gluing


def _span(disc: DiscForm, disc2: DiscForm, seeds) -> set:
    """Closure of seed pairs under addition in disc x disc2."""
    zero = (tuple([0] * len(disc.orders)), tuple([0] * len(disc2.orders)))
    out = {zero}
    frontier = [zero]
    while frontier:
        cur = frontier.pop()
        for sx, sy in seeds:
            item = (disc.add(cur[0], sx), disc2.add(cur[1], sy))
            if item not in out:
                out.add(item)
                frontier.append(item)
    return out


def _coords_of(disc: DiscForm, vec: Sequence[Fraction]) -> Tuple[int, ...]:
    """Group coordinates of a dual vector, by exhaustive matching.

    Two dual vectors represent the same class iff their difference is
    integral in lattice coordinates.
    """
    for elem in disc.elements():
        rep = disc.vector(elem)
        if all((a - b).denominator == 1 for a, b in zip(rep, vec)):
            return elem
    raise ValueError("vector does not represent a discriminant class")


def glue(
    L: GramLattice,
    T: GramLattice,
    p: int,
    pairs: Sequence[Tuple[Sequence[Fraction], Sequence[Fraction]]],
) -> GramLattice:
    """Even overlattice of L + T glued along dual vector pairs.

    Each pair (l, t) of dual vectors adds the glue vector l + t.  The
    classes generated must form the graph of an anti-isometry between
    the full prime-to-p parts of the two discriminant groups (checked:
    q_L(l) + q_T(t) = 0 in Q/2Z on every glued class, and both
    projections cover the prime-to-p parts exactly).  Returns the glued
    lattice on a Hermite basis.
    """
    if not (L.is_even and T.is_even):
        raise ValueError("gluing is defined for even lattices")
    dl = disc_group(L)
    dt = disc_group(T)
    seeds = []
    for vec_l, vec_t in pairs:
        vl = [Fraction(x) for x in vec_l]
        vt = [Fraction(x) for x in vec_t]
        if len(vl) != L.rank or len(vt) != T.rank:
            raise ValueError("glue vector length disagrees with the rank")
        if not L.in_dual(vl) or not T.in_dual(vt):
            raise ValueError("glue vectors must pair integrally with the lattices")
        seeds.append((_coords_of(dl, vl), _coords_of(dt, vt)))
    graph = _span(dl, dt, seeds)
    for x, y in graph:
        if gcd(dl.order_of(x) * dt.order_of(y), p) != 1:
            raise ValueError("glued classes must have order coprime to p")
        if (dl.q_value(x) + dt.q_value(y)) % 2 != 0:
            raise ValueError(
                "glue map is not an anti-isometry of discriminant forms"
            )
    left = {x for x, _ in graph}
    right = {y for _, y in graph}
    if len(left) != len(graph) or len(right) != len(graph):
        raise ValueError("glue classes do not form the graph of a bijection")
    if set(dl.prime_to(p)) != left:
        raise ValueError("glue map does not cover the prime-to-p part of L*/L")
    if set(dt.prime_to(p)) != right:
        raise ValueError("glue map does not cover the prime-to-p part of T*/T")

    n = L.rank + T.rank
    gens: List[List[Fraction]] = []
    for i in range(L.rank):
        gens.append([Fraction(int(i == j)) for j in range(n)])
    for i in range(T.rank):
        gens.append([Fraction(int(i + L.rank == j)) for j in range(n)])
    for x, y in graph:
        gens.append(list(dl.vector(x)) + list(dt.vector(y)))
    scale = lcm(*(f.denominator for row in gens for f in row))
    int_rows = [[int(f * scale) for f in row] for row in gens]
    basis_rows = hermite_row_basis(int_rows)
    if len(basis_rows) != n:
        raise RuntimeError("glued lattice lost rank; basis extraction bug")
    basis = [[Fraction(x, scale) for x in row] for row in basis_rows]
    big = L.direct_sum(T)
    gram = []
    for brow in basis:
        out_row = []
        for bcol in basis:
            val = big.dot(brow, bcol)
            if val.denominator != 1:
                raise RuntimeError("glued lattice is not integral; glue data bug")
            out_row.append(int(val))
        gram.append(out_row)
    glued = GramLattice(gram)
    index = len(graph)
    if abs(glued.det) * index * index != abs(L.det) * abs(T.det):
        raise RuntimeError("determinant bookkeeping failed in glue")
    return glued


# ---------------------------------------------------------------------------
# unimodular overlattices


def _extend_subgroup(disc: DiscForm, sub: frozenset, e, cap: int):
    """The subgroup generated by a subgroup and one more element.

    Builds the coset union sub + 0*e, sub + 1*e, ... until a multiple
    of e falls back into sub; returns None as soon as the size
    exceeds cap.
    """
    new = set(sub)
    cur = e
    while cur not in sub:
        new.update(disc.add(cur, s) for s in sub)
        if len(new) > cap:
            return None
        cur = disc.add(cur, e)
    return frozenset(new)


def _isotropic_subgroups_of_order(
    disc: DiscForm, m: int, even_only: bool
) -> Iterable[frozenset]:
    """Isotropic subgroups of exact order m (b = 0 on the subgroup).

    With even_only the quadratic values must vanish too.  Subgroups of
    isotropic subgroups are isotropic, so the closure-extension search
    stays inside isotropic subgroups of order dividing m and still
    reaches every target: any chain of single-element extensions of an
    order-m isotropic subgroup consists of such groups.
    """
    zero = tuple([0] * len(disc.orders))
    trivial = frozenset([zero])
    seen = {trivial}
    frontier = [trivial]
    elements = []
    for e in disc.elements():
        order = disc.order_of(e)
        if order == 1 or m % order:
            continue
        if disc.b_value(e, e) != 0:
            continue
        if even_only and disc.q_value(e) != 0:
            continue
        elements.append(e)
    while frontier:
        sub = frontier.pop()
        if len(sub) == m:
            yield sub
            continue
        for e in elements:
            if e in sub:
                continue
            if any(disc.b_value(e, s) != 0 for s in sub):
                continue
            new = _extend_subgroup(disc, sub, e, m)
            if new is None or m % len(new):
                continue
            if new not in seen:
                seen.add(new)
                if len(seen) > SEARCH_GUARD:
                    raise RuntimeError("subgroup search guard exceeded")
                frontier.append(new)


def _overlattice_from_subgroup(
    L: GramLattice, disc: DiscForm, sub: Iterable[Tuple[int, ...]]
) -> GramLattice:
    n = L.rank
    gens: List[List[Fraction]] = [
        [Fraction(int(i == j)) for j in range(n)] for i in range(n)
    ]
    for elem in sub:
        gens.append(list(disc.vector(elem)))
    scale = lcm(*(f.denominator for row in gens for f in row))
    int_rows = [[int(f * scale) for f in row] for row in gens]
    basis = [
        [Fraction(x, scale) for x in row] for row in hermite_row_basis(int_rows)
    ]
    gram = []
    for brow in basis:
        row_out = []
        for bcol in basis:
            val = L.dot(brow, bcol)
            if val.denominator != 1:
                raise RuntimeError("overlattice is not integral; isotropy bug")
            row_out.append(int(val))
        gram.append(row_out)
    return GramLattice(gram)


def unimodular_overlattice_exists(
    L: GramLattice, even_only: bool = False
) -> Tuple[bool, Optional[GramLattice]]:
    """Search for a finite-index unimodular overlattice of L.

    Overlattices of finite index correspond to subgroups H of L*/L
    with b(H, H) = 0 in Q/Z; the overlattice is unimodular iff
    |H|^2 = |disc(L)|.  With even_only=True (requires L even) the
    subgroup must also satisfy q(H) = 0 in Q/2Z, making the
    overlattice even.  Returns (found, witness Gram or None).
    """
    if even_only and not L.is_even:
        raise ValueError("even_only search needs an even lattice")
    disc_order = abs(L.det)
    m = isqrt(disc_order)
    if m * m != disc_order:
        return False, None
    if disc_order > SEARCH_GUARD:
        raise ValueError(
            f"discriminant group order {disc_order} exceeds the search guard"
        )
    if m == 1:
        return True, GramLattice(L.gram)
    disc = disc_group(L)
    for sub in _isotropic_subgroups_of_order(disc, m, even_only):
        witness = _overlattice_from_subgroup(L, disc, list(sub))
        if abs(witness.det) != 1:
            raise RuntimeError("witness is not unimodular; search bug")
        return True, witness
    return False, None


# ---------------------------------------------------------------------------
# JSON loading


GLUE_SCHEMA = "rdpk3/glue-spec/1"


def lattice_from_json(doc: dict) -> GramLattice:
    if "dynkin" in doc:
        return dynkin_gram(doc["dynkin"])
    if "diagonal" in doc:
        return diagonal_gram([int(x) for x in doc["diagonal"]])
    if "gram" in doc:
        return GramLattice(doc["gram"])
    raise ValueError("lattice document needs a dynkin, diagonal, or gram field")


def glue_from_json(doc: dict) -> GramLattice:
    """Run a glue computation described by a JSON document."""
    if doc.get("schema") != GLUE_SCHEMA:
        raise ValueError(f"expected schema {GLUE_SCHEMA!r}, got {doc.get('schema')!r}")
    L = lattice_from_json(doc["left"])
    T = lattice_from_json(doc["right"])
    pairs = [
        (
            [Fraction(str(x)) for x in pair["left_vector"]],
            [Fraction(str(x)) for x in pair["right_vector"]],
        )
        for pair in doc["pairs"]
    ]
    return glue(L, T, int(doc["p"]), pairs)
