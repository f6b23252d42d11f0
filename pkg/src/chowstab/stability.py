"""Numerical stability function for hypersurface Chow forms, exact torus
certificates, and a bounded search for destabilizing coordinate changes.

Conventions: a diagonal one-parameter subgroup is an integer weight vector
r with sum 0; the numerical function mu is the *minimum* weight over the
support, so mu > 0 witnesses instability and mu < 0 for every weight (and
every coordinate change) means stable.  Torus certificates quantify over
all diagonal weights at once via exact linear programming: instability is
separation of the degree barycenter from the Newton polytope, and the
stable/strictly-semistable split tests whether the non-negativity cone is
trivial.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .errors import PreconditionError
from .fields import Domain
from .poly import Poly, apply_matrix, identity_matrix, mat_mul, min_inner_product
from .simplex import OPTIMAL, solve_standard_lp


@dataclass(frozen=True)
class WeightVector:
    """Integer weights (r_0, ..., r_n), summing to zero, not all zero."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries or sum(entries) != 0:
            raise PreconditionError("weights must be a nonempty zero-sum vector")
        if not any(entries):
            raise PreconditionError("weight vector must be nonzero")

    @classmethod
    def coerce(cls, r) -> "WeightVector":
        return r if isinstance(r, WeightVector) else cls(tuple(r))

    @property
    def is_r_normalized(self) -> bool:
        return all(a <= b for a, b in zip(self.entries, self.entries[1:]))

    def primitive(self) -> "WeightVector":
        g = math.gcd(*(abs(e) for e in self.entries))
        return WeightVector(tuple(e // g for e in self.entries))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class BracketSupport:
    """Support of a Chow form of an r-dimensional degree-d cycle in P^n.

    Each element is a multiset of d subsets of {0,...,n}, every subset of
    size n-r; a subset records which rows enter a Pluecker minor.  Stored
    canonically: each subset as a sorted tuple, each multiset as a sorted
    tuple of subsets, the whole support as a frozenset.
    """

    n: int
    r: int
    d: int
    tuples: frozenset

    @classmethod
    def build(cls, n: int, r: int, d: int, tuples) -> "BracketSupport":
        if not (0 <= r < n):
            raise PreconditionError("need 0 <= r < n")
        if d < 1:
            raise PreconditionError("degree must be at least 1")
        canon = set()
        for tup in tuples:
            subsets = []
            for subset in tup:
                s = tuple(sorted(set(subset)))
                if len(s) != n - r:
                    raise PreconditionError(
                        f"subset {subset} must have exactly {n - r} elements")
                if any(not (0 <= i <= n) for i in s):
                    raise PreconditionError(f"subset {subset} not within 0..{n}")
                subsets.append(s)
            if len(subsets) != d:
                raise PreconditionError(f"tuple {tup} must contain {d} subsets")
            canon.add(tuple(sorted(subsets)))
        if not canon:
            raise PreconditionError("empty bracket support")
        return cls(n, r, d, frozenset(canon))


class Verdict(str, Enum):
    UNSTABLE = "unstable_witness"
    STRICTLY_SEMISTABLE = "strictly_semistable_torus"
    STABLE = "stable_torus"
    UNKNOWN = "unknown_after_search"


@dataclass(frozen=True)
class SearchCounters:
    candidates_enumerated: int = 0
    candidates_tested: int = 0
    lp_calls: int = 0

    def as_dict(self) -> dict:
        return {"candidates_enumerated": self.candidates_enumerated,
                "candidates_tested": self.candidates_tested,
                "lp_calls": self.lp_calls}


@dataclass(frozen=True)
class StabilityCertificate:
    verdict: Verdict
    witness_r: Optional[WeightVector] = None
    witness_g: Optional[tuple] = None
    mu_value: Optional[int] = None
    lp_value: Optional[Fraction] = None
    search_budget_used: Optional[SearchCounters] = None

    def __post_init__(self):
        if self.verdict is Verdict.UNSTABLE:
            if self.witness_r is None or self.mu_value is None \
                    or self.mu_value <= 0:
                raise PreconditionError(
                    "unstable certificates need a witness with positive mu")
        elif self.verdict is Verdict.STRICTLY_SEMISTABLE:
            if self.witness_r is None or self.mu_value != 0:
                raise PreconditionError(
                    "strictly semistable certificates need a mu = 0 witness")
        elif self.verdict is Verdict.STABLE:
            if self.witness_r is not None or self.witness_g is not None \
                    or self.mu_value is not None:
                raise PreconditionError("stable certificates carry no witness")


class LpResult(NamedTuple):
    t_star: Fraction
    r_star: list


class LeeRatio(NamedTuple):
    w_f: int
    sum_wxI: int
    ratio: Fraction


class IdentityCheck(NamedTuple):
    lhs: int
    mu: int
    residual: int


# -- numerical functions ------------------------------------------------------


def _require_nonzero_homogeneous(f: Poly) -> int:
    if f.is_zero():
        raise PreconditionError("zero polynomial")
    d = f.homogeneous_degree
    if d is None:
        raise PreconditionError("polynomial is not homogeneous")
    return d


def mu_hypersurface(f: Poly, r) -> int:
    """Minimum of <r, alpha> over the support of a homogeneous form.

    For a hypersurface the form is its own Chow form, so this is the
    numerical function of the diagonal weight r; it depends only on the
    support.
    """
    _require_nonzero_homogeneous(f)
    rv = WeightVector.coerce(r)
    if len(rv) != f.nvars:
        raise PreconditionError("weight length must be the number of variables")
    return min_inner_product(f, rv.entries)


def mu_bracket(s: BracketSupport, r) -> int:
    """Minimum total weight over the bracket monomials of a general support."""
    rv = WeightVector.coerce(r)
    if len(rv) != s.n + 1:
        raise PreconditionError(f"weight length must be {s.n + 1}")
    w = rv.entries
    return min(sum(w[i] for subset in tup for i in subset) for tup in s.tuples)


def bracket_from_hypersurface(f: Poly) -> BracketSupport:
    """The bracket support of a hypersurface form (cycle dimension n-1)."""
    d = _require_nonzero_homogeneous(f)
    n = f.nvars - 1
    tuples = []
    for exp in f.terms:
        singletons = []
        for i, k in enumerate(exp):
            singletons.extend([(i,)] * k)
        tuples.append(tuple(singletons))
    return BracketSupport.build(n, n - 1, d, tuples)


def _chart_weights(r: WeightVector) -> list:
    return [ri - r.entries[0] for ri in r.entries[1:]]


def lee_ratio(f: Poly, r) -> LeeRatio:
    """Chart-weight ratio of the dehomogenization against an ordered weight.

    Requires r_0 <= ... <= r_n; the dehomogenized local equation at x_0 gets
    variable weights r_i - r_0, and the ratio w(f)/sum w(x_i) compares with
    d/(n+1): strictly below iff mu < 0.
    """
    d = _require_nonzero_homogeneous(f)
    rv = WeightVector.coerce(r)
    if len(rv) != f.nvars:
        raise PreconditionError("weight length must be the number of variables")
    if not rv.is_r_normalized:
        raise PreconditionError("weights must be sorted ascending for the chart")
    local = f.dehomogenize(0)
    w_f = min_inner_product(local, _chart_weights(rv))
    sum_wxi = -f.nvars * rv.entries[0]
    return LeeRatio(w_f, sum_wxi, Fraction(w_f, sum_wxi))


def numerical_identity_check(f: Poly, r) -> IdentityCheck:
    """Verify d*sum w(x_I) - (n+1)*w(f) == -(n+1)*mu exactly; residual is 0."""
    d = _require_nonzero_homogeneous(f)
    ratio = lee_ratio(f, r)
    mu = mu_hypersurface(f, r)
    lhs = d * ratio.sum_wxI - f.nvars * ratio.w_f
    return IdentityCheck(lhs, mu, lhs + f.nvars * mu)


# -- exact linear programming certificates -------------------------------------


def lp_membership_maxmin(points, c) -> LpResult:
    """max t  s.t.  <r, p - c> >= t for all points p, sum r = 0, |r_i| <= 1.

    Exact rational optimum; t_star > 0 iff c lies outside the convex hull of
    the points (separation within the zero-sum hyperplane).  Always feasible
    and bounded, and t_star >= 0 since r = 0 is feasible.
    """
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        raise PreconditionError("empty point set")
    dim = len(pts[0])
    cvec = tuple(Fraction(x) for x in c)
    if len(cvec) != dim or any(len(p) != dim for p in pts):
        raise PreconditionError("inconsistent dimensions")
    m = len(pts)
    idx_u, idx_v, idx_t = 0, dim, 2 * dim
    idx_s, idx_p = idx_t + 1, idx_t + 1 + m
    idx_q = idx_p + dim
    nvars = idx_q + dim
    rows, rhs = [], []
    for k, alpha in enumerate(pts):
        row = [Fraction(0)] * nvars
        for i in range(dim):
            diff = alpha[i] - cvec[i]
            row[idx_u + i] = diff
            row[idx_v + i] = -diff
        row[idx_t] = Fraction(-1)
        row[idx_s + k] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(0))
    for i in range(dim):
        row = [Fraction(0)] * nvars
        row[idx_u + i] = Fraction(1)
        row[idx_p + i] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
        row = [Fraction(0)] * nvars
        row[idx_v + i] = Fraction(1)
        row[idx_q + i] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    row = [Fraction(0)] * nvars
    for i in range(dim):
        row[idx_u + i] = Fraction(1)
        row[idx_v + i] = Fraction(-1)
    rows.append(row)
    rhs.append(Fraction(0))
    cost = [Fraction(0)] * nvars
    cost[idx_t] = Fraction(-1)
    status, x, _ = solve_standard_lp(rows, rhs, cost)
    if status != OPTIMAL:  # cannot happen: r=0, t=0 is feasible, t is bounded
        raise PreconditionError(f"separation LP reported {status}")
    r_star = [x[idx_u + i] - x[idx_v + i] for i in range(dim)]
    return LpResult(x[idx_t], r_star)


def _max_over_cone(points, objective) -> LpResult:
    """max objective.r over {sum r = 0, <r, p> >= 0 for all p, |r_i| <= 1}."""
    dim = len(objective)
    m = len(points)
    idx_u, idx_v = 0, dim
    idx_s, idx_p = 2 * dim, 2 * dim + m
    idx_q = idx_p + dim
    nvars = idx_q + dim
    rows, rhs = [], []
    for k, alpha in enumerate(points):
        row = [Fraction(0)] * nvars
        for i in range(dim):
            entry = Fraction(alpha[i])
            row[idx_u + i] = entry
            row[idx_v + i] = -entry
        row[idx_s + k] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(0))
    for i in range(dim):
        row = [Fraction(0)] * nvars
        row[idx_u + i] = Fraction(1)
        row[idx_p + i] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
        row = [Fraction(0)] * nvars
        row[idx_v + i] = Fraction(1)
        row[idx_q + i] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    row = [Fraction(0)] * nvars
    for i in range(dim):
        row[idx_u + i] = Fraction(1)
        row[idx_v + i] = Fraction(-1)
    rows.append(row)
    rhs.append(Fraction(0))
    cost = [Fraction(0)] * nvars
    for i in range(dim):
        cost[idx_u + i] = -Fraction(objective[i])
        cost[idx_v + i] = Fraction(objective[i])
    status, x, value = solve_standard_lp(rows, rhs, cost)
    if status != OPTIMAL:
        raise PreconditionError(f"cone LP reported {status}")
    r_star = [x[idx_u + i] - x[idx_v + i] for i in range(dim)]
    return LpResult(-value, r_star)


def primitive_integer_vector(vec) -> tuple:
    """Clear denominators and divide by the gcd; preserves direction."""
    fracs = [Fraction(v) for v in vec]
    if all(v == 0 for v in fracs):
        raise PreconditionError("zero vector has no primitive form")
    scale = math.lcm(*(v.denominator for v in fracs))
    ints = [int(v * scale) for v in fracs]
    g = math.gcd(*(abs(i) for i in ints))
    return tuple(i // g for i in ints)


def _torus_unstable_witness(f: Poly):
    """(witness, mu, t_star) separating the barycenter, or (None, None, t_star)."""
    d = f.homogeneous_degree
    n1 = f.nvars
    pts = sorted(f.terms)
    c = [Fraction(d, n1)] * n1
    res = lp_membership_maxmin(pts, c)
    if res.t_star <= 0:
        return None, None, res.t_star
    witness = WeightVector(primitive_integer_vector(res.r_star))
    mu = min_inner_product(f, witness.entries)
    if mu <= 0:  # impossible: the LP value scales to mu
        raise PreconditionError("separation witness failed verification")
    return witness, mu, res.t_star


def torus_certificate(f: Poly) -> StabilityCertificate:
    """Exact stability verdict over all diagonal weights in these coordinates.

    Unstable iff the degree barycenter separates from the Newton polytope;
    otherwise stable iff the cone of weights with non-negative support
    weight is trivial, and strictly semistable when a nonzero mu = 0 weight
    exists.  Witnesses are primitive integer vectors.
    """
    _require_nonzero_homogeneous(f)
    witness, mu, t_star = _torus_unstable_witness(f)
    if witness is not None:
        return StabilityCertificate(Verdict.UNSTABLE, witness_r=witness,
                                    mu_value=mu, lp_value=t_star)
    pts = sorted(f.terms)
    n1 = f.nvars
    for i in range(n1):
        for sign in (1, -1):
            objective = [0] * n1
            objective[i] = sign
            res = _max_over_cone(pts, objective)
            if res.t_star > 0:
                witness = WeightVector(primitive_integer_vector(res.r_star))
                mu = min_inner_product(f, witness.entries)
                if mu != 0:
                    raise PreconditionError("semistable witness failed verification")
                return StabilityCertificate(Verdict.STRICTLY_SEMISTABLE,
                                            witness_r=witness, mu_value=0,
                                            lp_value=t_star)
    return StabilityCertificate(Verdict.STABLE, lp_value=t_star)


# -- bounded destabilization search ---------------------------------------------


@dataclass(frozen=True)
class SearchBudget:
    """Bounds for the coordinate-change search.

    max_candidates counts the seeded pseudo-random stage; the deterministic
    stage (identity, permutations, transvections, and their products up to
    `depth` factors) always runs first.  A seed is mandatory so searches are
    reproducible.
    """

    max_candidates: int = 2000
    transvection_scalars: tuple = (1, -1)
    depth: int = 2
    seed: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "transvection_scalars",
                           tuple(self.transvection_scalars))
        if self.max_candidates < 0 or self.depth < 0 \
                or not self.transvection_scalars:
            raise PreconditionError("empty search budget")
        if self.seed is None:
            raise PreconditionError("search budget requires a seed")


def permutation_matrix(perm: Sequence[int]) -> list:
    n = len(perm)
    return [[1 if perm[i] == j else 0 for j in range(n)] for i in range(n)]


def transvection_matrix(n: int, i: int, j: int, scalar) -> list:
    m = identity_matrix(n)
    m[i][j] = scalar
    return m


def _matrix_key(rows, domain: Domain) -> tuple:
    def key(v):
        c = domain.coerce(v)
        return c.residue if domain.kind == "FP" else c
    return tuple(tuple(key(v) for v in row) for row in rows)


def _generators(n1: int, budget: SearchBudget, domain: Domain) -> list:
    gens = []
    for perm in itertools.permutations(range(n1)):
        if perm != tuple(range(n1)):
            gens.append(permutation_matrix(perm))
    for i in range(n1):
        for j in range(n1):
            if i == j:
                continue
            for s in budget.transvection_scalars:
                if domain.coerce(s) != 0:
                    gens.append(transvection_matrix(n1, i, j, s))
    return gens


def _random_unimodular(rng: random.Random, n1: int, budget: SearchBudget) -> list:
    m = identity_matrix(n1)
    for _ in range(budget.depth + 2):
        if rng.random() < 0.25:
            i, j = rng.sample(range(n1), 2)
            perm = list(range(n1))
            perm[i], perm[j] = perm[j], perm[i]
            step = permutation_matrix(perm)
        else:
            i, j = rng.sample(range(n1), 2)
            s = rng.choice(budget.transvection_scalars)
            step = transvection_matrix(n1, i, j, s)
        m = mat_mul(m, step)
    return m


def destab_search(f: Poly, budget: SearchBudget) -> StabilityCertificate:
    """Search coordinate changes for a diagonal destabilizing weight.

    Candidates run in a deterministic order; the first unstable torus
    certificate wins.  UnknownAfterSearch is a semi-decision: it is NOT a
    stability proof, only the report that the budget found no witness.
    """
    _require_nonzero_homogeneous(f)
    n1 = f.nvars
    domain = f.domain
    enumerated = tested = lp_calls = 0
    seen_matrices = set()
    settled_supports = set()

    def candidates():
        yield identity_matrix(n1)
        gens = _generators(n1, budget, domain)
        level = [identity_matrix(n1)]
        for _ in range(budget.depth):
            nxt = []
            for left in level:
                for g in gens:
                    nxt.append(mat_mul(left, g))
            level = nxt
            yield from level
        rng = random.Random(budget.seed)
        for _ in range(budget.max_candidates):
            yield _random_unimodular(rng, n1, budget)

    for g in candidates():
        enumerated += 1
        key = _matrix_key(g, domain)
        if key in seen_matrices:
            continue
        seen_matrices.add(key)
        tested += 1
        transformed = apply_matrix(f, g)
        sup = transformed.support()
        if sup in settled_supports:
            continue
        lp_calls += 1
        witness, mu, t_star = _torus_unstable_witness(transformed)
        if witness is not None:
            counters = SearchCounters(enumerated, tested, lp_calls)
            return StabilityCertificate(Verdict.UNSTABLE, witness_r=witness,
                                        witness_g=_matrix_key(g, domain),
                                        mu_value=mu, lp_value=t_star,
                                        search_budget_used=counters)
        settled_supports.add(sup)
    counters = SearchCounters(enumerated, tested, lp_calls)
    return StabilityCertificate(Verdict.UNKNOWN, search_budget_used=counters)
