"""Independent cross-check of the exact separation LP against scipy.

scipy only confirms the optimum numerically; the exact rational answer is
the authority.  Skipped quietly when scipy is unavailable.
"""

import random
from fractions import Fraction

import pytest

from chowstab import lp_membership_maxmin

scipy_opt = pytest.importorskip("scipy.optimize")


def _scipy_maxmin(points, c):
    """max t s.t. <r, p - c> >= t, sum r = 0, -1 <= r <= 1, via HiGHS."""
    dim = len(c)
    m = len(points)
    # variables: r_0..r_{dim-1}, t
    cost = [0.0] * dim + [-1.0]
    a_ub = []
    for p in points:
        a_ub.append([-(pi - ci) for pi, ci in zip(p, c)] + [1.0])
    b_ub = [0.0] * m
    a_eq = [[1.0] * dim + [0.0]]
    b_eq = [0.0]
    bounds = [(-1.0, 1.0)] * dim + [(None, None)]
    res = scipy_opt.linprog(cost, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq,
                            bounds=bounds, method="highs")
    assert res.status == 0
    return -res.fun


def test_separation_lp_matches_scipy():
    rng = random.Random(500)
    for _ in range(40):
        dim = rng.randrange(2, 5)
        npts = rng.randrange(1, 8)
        d = rng.randrange(1, 6)
        points = []
        for _ in range(npts):
            cuts = sorted(rng.randrange(d + 1) for _ in range(dim - 1))
            parts, prev = [], 0
            for cut in cuts:
                parts.append(cut - prev)
                prev = cut
            parts.append(d - prev)
            points.append(tuple(parts))
        center = [Fraction(d, dim)] * dim
        exact = lp_membership_maxmin(points, center)
        approx = _scipy_maxmin(points, [float(x) for x in center])
        assert abs(float(exact.t_star) - approx) < 1e-7
