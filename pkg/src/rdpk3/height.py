"""Heights of K3 surfaces and of quotient maps between them.

The height of the formal Brauer group of a K3 surface is either a
finite integer in 1..10 or infinity (the supersingular case).  This
module collects the finite, exactly checkable pieces of that story:

  * which coindexed rational double points force which heights
    (`height_from_rdp`), and the resulting realizability criteria for
    a single rational double point on some K3 surface
    (`rdp_realizable_on_k3`, `taut_realizable`);
  * coindex bookkeeping under partial resolutions
    (`partial_resolution_coindex`) and the Picard-rank bound
    (`picard_bound_ok`);
  * point counting over small finite fields for two flavours of
    surface model (`count_points`), and the integrality test on
    Newton-transformed point counts that pins the height exactly
    (`height_gt_test`, `height_from_counts`);
  * the Fedder-style ordinarity test for hypersurfaces in weighted
    projective 3-space (`ordinary_test`);
  * height tables for quotients of K3 surfaces by infinitesimal group
    schemes and by etale group schemes, plus height composition
    (`quotient_height`, `etale_quotient_height`, `compose_heights`).

Everything is exact: integer and Fraction arithmetic only.
"""

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .chartring import RdpSpec, parse_symbol, rmax
from .ffpoly import FiniteField, MultiPoly, is_prime, parse_poly


# ---------------------------------------------------------------------------
# height values


@dataclass(frozen=True)
class HeightValue:
    """A height: finite n, infinite, or only bounded below ("> n").

    The third kind records a strict lower bound when the data at hand
    determines no more than that.
    """

    kind: str  # "finite" | "greater-than" | "infinite"
    bound: int = 0

    def __post_init__(self):
        if self.kind not in ("finite", "greater-than", "infinite"):
            raise ValueError(f"bad height kind {self.kind!r}")
        if self.kind == "finite" and not (1 <= self.bound <= 10):
            raise ValueError(f"finite K3 height must be in 1..10, got {self.bound}")
        if self.kind == "greater-than" and self.bound < 0:
            raise ValueError("lower bound must be >= 0")
        if self.kind == "infinite" and self.bound:
            raise ValueError("infinite height carries no bound")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self):
        if self.kind == "finite":
            return str(self.bound)
        if self.kind == "greater-than":
            return f">{self.bound}"
        return "infinity"

    def as_json(self) -> dict:
        return {"kind": self.kind, "bound": self.bound}


def finite(h: int) -> HeightValue:
    return HeightValue("finite", h)


def greater_than(l: int) -> HeightValue:
    return HeightValue("greater-than", l)


INFINITE = HeightValue("infinite")


def compose_heights(h1: HeightValue, h2: HeightValue) -> HeightValue:
    """Height of a composite of two quotient maps: h1 + h2 - 1.

    Infinity absorbs everything.  A factor known only as "> l" makes
    the composite known only as a strict lower bound as well.
    """
    if h1.kind == "infinite" or h2.kind == "infinite":
        return INFINITE
    # minimum possible value of each factor
    m1 = h1.bound if h1.kind == "finite" else h1.bound + 1
    m2 = h2.bound if h2.kind == "finite" else h2.bound + 1
    if h1.kind == "finite" and h2.kind == "finite":
        return finite(m1 + m2 - 1)
    return greater_than(m1 + m2 - 2)


# ---------------------------------------------------------------------------
# coindex versus height for a rational double point on a K3 surface


class NonOccurrenceError(ValueError):
    """Raised for a coindexed rational double point that no K3 carries."""


def height_sequence(p: int, family: str, N: int) -> Tuple[int, ...]:
    """Coindexes (r_1, r_2, ...) realized at heights 1, 2, ... on K3s.

    The sequence is a strictly decreasing subsequence of
    (rmax, ..., 2, 1).  A K3 surface of finite height h carrying the
    singularity has coindex r_h; height > len(sequence) (in particular
    infinite height) forces coindex 0.  Empty for taut types.

    For D_N in characteristic 2 (write m = floor(N/2)) the realized
    coindexes are m-1, m-2, m-4, those that are >= 1; for E_8 in
    characteristic 2 they are 4, 3, 2; in every other case the whole
    range rmax, ..., 1 occurs.
    """
    bound = rmax(p, family, N)
    if bound == 0:
        return ()
    if p == 2 and family == "D":
        m = N // 2
        return tuple(r for r in (m - 1, m - 2, m - 4) if r >= 1)
    if p == 2 and family == "E" and N == 8:
        return (4, 3, 2)
    return tuple(range(bound, 0, -1))


def coindex_occurs(p: int, family: str, N: int, r: int) -> bool:
    """Whether some K3 surface carries this coindexed singularity."""
    if r == 0:
        return True
    return r in height_sequence(p, family, N)


def height_from_rdp(spec: RdpSpec) -> HeightValue:
    """Height of a K3 surface forced by one coindexed singularity.

    Positive coindex r pins the height to the position of r in
    height_sequence; coindex 0 only bounds the height below by the
    sequence length.  Raises NonOccurrenceError when r > 0 is not in
    the sequence (no K3 surface has such a singularity at all).
    """
    seq = height_sequence(spec.p, spec.family, spec.N)
    if spec.r == 0:
        return greater_than(len(seq))
    if spec.r not in seq:
        raise NonOccurrenceError(
            f"{spec} does not occur on any K3 surface: coindex {spec.r} "
            f"is outside the realized sequence {seq}"
        )
    return finite(seq.index(spec.r) + 1)


# ---------------------------------------------------------------------------
# realizability of a single rational double point on a K3 surface


@dataclass(frozen=True)
class Verdict:
    """A boolean answer together with the reason for it."""

    ok: bool
    reason: str

    def __bool__(self):
        return self.ok


def taut_realizable(p: int, family: str, N: int) -> bool:
    """Whether some K3 surface in characteristic p has this taut RDP.

    Requires the type to be taut in characteristic p (use
    rdp_realizable_on_k3 otherwise).  Types of rank at most 19 always
    occur.  At rank 20 and 21 only A_20 and A_21 can occur, the former
    exactly when p divides 21 or 21 is a quadratic non-residue mod p
    (equivalently p is +-2, +-8, +-10 mod 21), the latter only for
    p = 11 (a supersingular surface with a full rank-22 Picard
    lattice).  Rank 22 and beyond exceeds the Picard rank.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic must be prime, got {p}")
    if rmax(p, family, N) != 0:
        raise ValueError(
            f"{family}_{N} is not taut in characteristic {p}; "
            "use rdp_realizable_on_k3"
        )
    if N <= 19:
        return True
    if (family, N) == ("A", 20):
        return p in (3, 7) or p % 21 in (2, 8, 10, 11, 13, 19)
    if (family, N) == ("A", 21):
        return p == 11
    return False


def rdp_realizable_on_k3(spec: RdpSpec) -> Verdict:
    """Whether some K3 surface carries this coindexed singularity.

    For non-taut types the answer combines the coindex-occurrence
    check, one lattice-theoretic exclusion (D_19 with coindex 8 in
    characteristic 2), and the Picard-rank bound N < 22 - 2h (with h
    the forced height; N < 22 when the coindex is 0).  Taut types
    defer to the rank-20/21 tables of taut_realizable.
    """
    p, family, N, r = spec.p, spec.family, spec.N, spec.r
    if rmax(p, family, N) == 0:
        ok = taut_realizable(p, family, N)
        return Verdict(ok, f"taut type, table lookup for rank {N}")
    try:
        h = height_from_rdp(spec)
    except NonOccurrenceError as exc:
        return Verdict(False, str(exc))
    if (p, family, N, r) == (2, "D", 19, 8):
        return Verdict(
            False,
            "lattice obstruction: the orthogonal complement needed for "
            "D_19 with coindex 8 admits no unimodular overlattice",
        )
    if r > 0:
        limit = 22 - 2 * h.bound
        ok = N < limit
        return Verdict(ok, f"height {h.bound} forces rank bound {N} < {limit}")
    ok = N < 22
    return Verdict(ok, f"coindex 0, rank bound {N} < 22")


# ---------------------------------------------------------------------------
# partial resolutions


def is_connected_subdiagram(sub: Tuple[str, int], amb: Tuple[str, int]) -> bool:
    """Whether `sub` embeds as a connected full subdiagram of `amb`.

    Both are (family, N) pairs of Dynkin types A/D/E.  A chain of
    length N-1 sits inside D_N and E_N; forks give D_M inside D_N for
    M <= N and inside E_N for M <= N-1; E_M sits in E_N for M <= N.
    """
    fam_s, n_s = sub
    fam_a, n_a = amb
    if sub == amb:
        return True
    if fam_a == "A":
        return fam_s == "A" and n_s <= n_a
    if fam_a == "D":
        if fam_s == "A":
            return n_s <= n_a - 1
        return fam_s == "D" and n_s <= n_a
    # ambient E_6, E_7, E_8
    if fam_s == "E":
        return n_s <= n_a
    return n_s <= n_a - 1


def partial_resolution_coindex(
    p: int, sym_from: Union[str, Tuple[str, int]], r: int, sym_to: Union[str, Tuple[str, int]]
) -> int:
    """Coindex after resolving all but a connected subdiagram.

    Blowing a coindex-r singularity of type S down to the part
    supported on a connected subdiagram S' leaves coindex
    max(0, r - (rmax(S) - rmax(S'))).
    """
    src = parse_symbol(sym_from) if isinstance(sym_from, str) else tuple(sym_from)
    dst = parse_symbol(sym_to) if isinstance(sym_to, str) else tuple(sym_to)
    bound_src = rmax(p, *src)
    bound_dst = rmax(p, *dst)
    if not (0 <= r <= bound_src):
        raise ValueError(f"coindex {r} out of range 0..{bound_src} for {src}")
    if not is_connected_subdiagram(dst, src):
        raise ValueError(f"{dst} is not a connected subdiagram of {src}")
    return max(0, r - (bound_src - bound_dst))


# ---------------------------------------------------------------------------
# singularity configurations


SING_TOKEN = re.compile(r"^(?:(\d+)\s*[x*]?\s*)?([ADEade])\s*(\d+)(?::(\d+))?$")


def parse_sing_config(text: str) -> Tuple[Tuple[str, int, int], ...]:
    """Parse "2D4:0 + A2" into (("A",2,0), ("D",4,0), ("D",4,0)).

    Tokens are separated by "+" or ",".  Each token is an optional
    multiplicity, a family letter, the rank, and an optional ":r"
    coindex (default 0).  The result is sorted, with multiplicities
    expanded.
    """
    items: List[Tuple[str, int, int]] = []
    for token in re.split(r"[+,]", text):
        token = token.strip()
        if not token:
            continue
        m = SING_TOKEN.match(token)
        if m is None:
            raise ValueError(f"bad singularity token {token!r}")
        count = int(m.group(1)) if m.group(1) else 1
        family = m.group(2).upper()
        N = int(m.group(3))
        r = int(m.group(4)) if m.group(4) else 0
        parse_symbol(f"{family}{N}")
        items.extend([(family, N, r)] * count)
    return tuple(sorted(items))


def _as_config(config) -> Tuple[Tuple[str, int, int], ...]:
    if isinstance(config, str):
        return parse_sing_config(config)
    return tuple(sorted(tuple(item) for item in config))


def sing_config_str(config) -> str:
    parts = [f"{fam}{N}:{r}" for (fam, N, r) in _as_config(config)]
    return " + ".join(parts) if parts else "(smooth)"


def picard_bound_ok(h: HeightValue, config) -> bool:
    """Rank bound on the singular locus of one K3 surface.

    The ranks N_i of the rational double points must satisfy
    sum N_i < 22 - 2h for finite height h and sum N_i < 22 for
    infinite height.  A bare lower bound "> l" only guarantees the
    weaker supersingular-safe inequality sum N_i < 22.
    """
    total = sum(N for (_, N, _) in _as_config(config))
    if h.kind == "finite":
        return total < 22 - 2 * h.bound
    return total < 22


# ---------------------------------------------------------------------------
# quotient height tables


MU_PRIMES = (2, 3, 5, 7)

# maximal quotients by the infinitesimal additive group scheme:
# characteristic and singular locus of the quotient -> height of the map
ALPHA_QUOTIENT_TABLE = {
    (2, (("D", 4, 0), ("D", 4, 0))): 2,
    (3, (("E", 6, 0), ("E", 6, 0))): 2,
    (5, (("E", 8, 0), ("E", 8, 0))): 2,
    (2, (("D", 8, 0),)): 3,
    (2, (("E", 8, 0),)): 4,
}

# etale quotients (Z/p actions): the coindexes jump by the map height
ETALE_QUOTIENT_TABLE = {
    (2, (("D", 4, 1), ("D", 4, 1))): 1,
    (3, (("E", 6, 1), ("E", 6, 1))): 1,
    (5, (("E", 8, 1), ("E", 8, 1))): 1,
    (2, (("D", 8, 2),)): 2,
    (2, (("E", 8, 2),)): 3,
}


def quotient_height(group: str, p: int, config) -> HeightValue:
    """Height of a maximal quotient map by mu_p or alpha_p.

    The singular locus of the quotient surface determines the height:
    mu_p quotients have 24/(p+1) points of type A_{p-1} and height 1;
    alpha_p quotients run through a five-row table with heights 2..4.
    Raises for configurations outside the tables.
    """
    cfg = _as_config(config)
    name = group.lower().lstrip("_ ")
    if name.startswith("mu"):
        if p not in MU_PRIMES:
            raise ValueError(f"no mu_p quotient table entry for p={p}")
        expected = tuple([("A", p - 1, 0)] * (24 // (p + 1)))
        if cfg != expected:
            raise ValueError(
                f"mu_{p} maximal quotient must have singular locus "
                f"{sing_config_str(expected)}, got {sing_config_str(cfg)}"
            )
        return finite(1)
    if name.startswith("alpha"):
        h = ALPHA_QUOTIENT_TABLE.get((p, cfg))
        if h is None:
            raise ValueError(
                f"no alpha_{p} maximal quotient with singular locus "
                f"{sing_config_str(cfg)}"
            )
        return finite(h)
    raise ValueError(f"unknown group scheme {group!r}; expected mu or alpha")


def etale_quotient_height(p: int, config) -> HeightValue:
    """Height of a quotient map by Z/p, read off the singular locus.

    Cross-checked on every call: each positive-coindex member of the
    configuration must force the same height via height_from_rdp.
    """
    cfg = _as_config(config)
    h = ETALE_QUOTIENT_TABLE.get((p, cfg))
    if h is None:
        raise ValueError(
            f"no etale quotient table entry for p={p}, "
            f"singular locus {sing_config_str(cfg)}"
        )
    for family, N, r in cfg:
        if r > 0:
            forced = height_from_rdp(RdpSpec(p, family, N, r))
            if forced != finite(h):
                raise RuntimeError(
                    f"table height {h} disagrees with forced height "
                    f"{forced} for {p}:{family}{N}:{r}"
                )
    return finite(h)


# ---------------------------------------------------------------------------
# surface models and point counting


MODEL_SCHEMA = "rdpk3/surface-model/1"


@dataclass(frozen=True)
class TwoChart:
    """An elliptic surface glued from two affine Weierstrass charts.

    chart1 lives in three variables (fiber coordinates and the base
    parameter); chart2_at_infinity is the affine fiber equation over
    the one base point the first chart misses.  Rational points over
    F_q decompose as: solutions of chart1 in F_q^3, solutions of
    chart2_at_infinity in F_q^2, plus one point at infinity on each of
    the q+1 fibers (the zero section).
    """

    characteristic: int
    chart1: MultiPoly
    chart2_at_infinity: MultiPoly

    def __post_init__(self):
        if self.chart1.modulus != self.characteristic:
            raise ValueError("chart1 modulus disagrees with the characteristic")
        if self.chart2_at_infinity.modulus != self.characteristic:
            raise ValueError("chart2 modulus disagrees with the characteristic")
        if len(self.chart1.variables) != 3:
            raise ValueError("chart1 must have exactly three variables")
        if len(self.chart2_at_infinity.variables) != 2:
            raise ValueError("chart2_at_infinity must have exactly two variables")


@dataclass(frozen=True)
class WeightedHypersurface:
    """A hypersurface in a weighted projective space over F_p."""

    characteristic: int
    weights: Tuple[int, ...]
    polynomial: MultiPoly

    def __post_init__(self):
        if self.polynomial.modulus != self.characteristic:
            raise ValueError("polynomial modulus disagrees with the characteristic")
        if len(self.weights) != len(self.polynomial.variables):
            raise ValueError("need one weight per variable")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")


SurfaceModel = Union[TwoChart, WeightedHypersurface]


def model_from_json(doc: dict) -> SurfaceModel:
    if doc.get("schema") != MODEL_SCHEMA:
        raise ValueError(f"expected schema {MODEL_SCHEMA!r}, got {doc.get('schema')!r}")
    p = int(doc["characteristic"])
    kind = doc.get("kind")
    if kind == "two-chart":
        c1 = doc["chart1"]
        c2 = doc["chart2_at_infinity"]
        return TwoChart(
            p,
            parse_poly(c1["polynomial"], tuple(c1["variables"]), modulus=p),
            parse_poly(c2["polynomial"], tuple(c2["variables"]), modulus=p),
        )
    if kind == "weighted-hypersurface":
        return WeightedHypersurface(
            p,
            tuple(int(w) for w in doc["weights"]),
            parse_poly(doc["polynomial"], tuple(doc["variables"]), modulus=p),
        )
    raise ValueError(f"unknown model kind {kind!r}")


def model_to_json(model: SurfaceModel) -> dict:
    if isinstance(model, TwoChart):
        return {
            "schema": MODEL_SCHEMA,
            "kind": "two-chart",
            "characteristic": model.characteristic,
            "chart1": {
                "variables": list(model.chart1.variables),
                "polynomial": str(model.chart1),
            },
            "chart2_at_infinity": {
                "variables": list(model.chart2_at_infinity.variables),
                "polynomial": str(model.chart2_at_infinity),
            },
        }
    return {
        "schema": MODEL_SCHEMA,
        "kind": "weighted-hypersurface",
        "characteristic": model.characteristic,
        "weights": list(model.weights),
        "variables": list(model.polynomial.variables),
        "polynomial": str(model.polynomial),
    }


def load_model(path: str) -> SurfaceModel:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_json(json.load(fh))


def _affine_count(field: FiniteField, poly: MultiPoly) -> int:
    nvars = len(poly.variables)
    count = 0
    for point in itertools.product(field.elements(), repeat=nvars):
        if field.evaluate_poly(poly, point) == 0:
            count += 1
    return count


def count_points(model: SurfaceModel, q: int) -> int:
    """Number of F_q-rational points of the surface model.

    TwoChart: affine solutions of both charts plus the q+1 points of
    the zero section.  WeightedHypersurface: Burnside count of orbits
    of the weighted scaling action on nonzero cone solutions; for a
    scaling factor L only coordinates whose weight kills L may be
    nonzero, so each L contributes the solutions supported there.
    """
    field = FiniteField(q)
    if field.p != model.characteristic:
        raise ValueError(
            f"q={q} is not a power of the characteristic {model.characteristic}"
        )
    if isinstance(model, TwoChart):
        if q**3 > 2**30:
            raise ValueError(f"q={q} exceeds the enumeration guard for charts")
        return (
            _affine_count(field, model.chart1)
            + _affine_count(field, model.chart2_at_infinity)
            + (q + 1)
        )
    if q**4 > 2**32:
        raise ValueError(f"q={q} exceeds the enumeration guard for hypersurfaces")
    weights = model.weights
    poly = model.polynomial
    nvars = len(weights)
    total = 0
    for lam in range(1, q):
        support = [i for i in range(nvars) if field.pow(lam, weights[i]) == 1]
        for values in itertools.product(field.elements(), repeat=len(support)):
            if not any(values):
                continue
            point = [0] * nvars
            for i, v in zip(support, values):
                point[i] = v
            if field.evaluate_poly(poly, tuple(point)) == 0:
                total += 1
    if total % (q - 1) != 0:
        raise RuntimeError("orbit count is not integral; enumeration bug")
    return total // (q - 1)


# ---------------------------------------------------------------------------
# the height test on point counts


def power_sums_from_counts(counts: Sequence[int], q: int) -> List[Fraction]:
    """a(m) = (#Y(F_{q^m}) - 1 - q^{2m}) / q^m, exactly."""
    return [
        Fraction(counts[m - 1] - 1 - q ** (2 * m), q**m)
        for m in range(1, len(counts) + 1)
    ]


def newton_elementary(psums: Sequence[Fraction]) -> List[Fraction]:
    """Elementary symmetric functions from power sums, exactly.

    Solves p_j = sum_{i=1}^{j-1} (-1)^{i-1} e_i p_{j-i} + (-1)^{j-1} j e_j
    for e_j, one j at a time.
    """
    es: List[Fraction] = []
    for j in range(1, len(psums) + 1):
        acc = Fraction(psums[j - 1])
        for i in range(1, j):
            acc -= (-1) ** (i - 1) * es[i - 1] * psums[j - i - 1]
        es.append((-1) ** (j - 1) * acc / j)
    return es


def power_sums_from_elementary(es: Sequence[Fraction]) -> List[Fraction]:
    """Inverse of newton_elementary (forward Newton recursion)."""
    ps: List[Fraction] = []
    for j in range(1, len(es) + 1):
        acc = (-1) ** (j - 1) * j * Fraction(es[j - 1])
        for i in range(1, j):
            acc += (-1) ** (i - 1) * es[i - 1] * ps[j - i - 1]
        ps.append(acc)
    return ps


def counts_from_power_sums(psums: Sequence[Fraction], q: int) -> List[Fraction]:
    """#Y(F_{q^m}) = 1 + q^{2m} + a(m) q^m for m = 1..len(psums)."""
    return [
        1 + q ** (2 * m) + Fraction(psums[m - 1]) * q**m
        for m in range(1, len(psums) + 1)
    ]


def height_gt_test(counts: Sequence[int], q: int) -> Tuple[List[bool], List[Fraction]]:
    """Integrality verdicts ("height > n") and the s-values behind them.

    Returns (verdicts, s) where s = newton_elementary of the a(m) and
    verdicts[n-1] says whether s(1), ..., s(n) are all integers, which
    holds exactly when the height exceeds n.
    """
    s = newton_elementary(power_sums_from_counts(counts, q))
    verdicts: List[bool] = []
    all_integral = True
    for val in s:
        all_integral = all_integral and val.denominator == 1
        verdicts.append(all_integral)
    return verdicts, s


def height_from_counts(counts: Sequence[int], q: int) -> HeightValue:
    """Exact height when the counts reach far enough, else a bound.

    The height equals the first n with s(n) nonintegral; if every
    tested s(n) is integral the counts only certify
    height > len(counts).
    """
    verdicts, _ = height_gt_test(counts, q)
    for n, ok in enumerate(verdicts, start=1):
        if not ok:
            return finite(n)
    return greater_than(len(counts))


# ---------------------------------------------------------------------------
# ordinarity


def ordinary_test(model: WeightedHypersurface) -> bool:
    """Whether the K3 hypersurface is ordinary (height exactly 1).

    For f of weighted degree equal to the sum of the four weights,
    the surface is ordinary iff the coefficient of
    (x0 x1 x2 x3)^{p-1} in f^{p-1} is nonzero.
    """
    if len(model.weights) != 4:
        raise ValueError("ordinarity test expects four homogeneous coordinates")
    poly = model.polynomial
    wmap = dict(zip(poly.variables, model.weights))
    if not poly.is_homogeneous(wmap):
        raise ValueError("polynomial is not homogeneous for the given weights")
    degree = poly.weighted_degree(wmap)
    if degree != sum(model.weights):
        raise ValueError(
            f"weighted degree {degree} differs from the weight sum "
            f"{sum(model.weights)}; the criterion does not apply"
        )
    p = model.characteristic
    power = poly ** (p - 1)
    target = (p - 1,) * 4
    return power.coefficient_of(target) != 0


def height_from_ordinary(model: WeightedHypersurface) -> HeightValue:
    return finite(1) if ordinary_test(model) else greater_than(1)
