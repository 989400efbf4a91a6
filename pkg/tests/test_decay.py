"""Threshold, fixed-point, extremal-sequence, and certified-interval tests."""

import math
from fractions import Fraction

import pytest

from hypermatch import (
    ModelParams,
    RatioInterval,
    contraction_ratio,
    critical_activity,
    decay_rate_bounds,
    extremal_ratio_sequences,
    fixed_point,
    regular_root_extremes,
    tree_recursion_step,
    truncated_marginal,
    two_periodic_points,
)

from conftest import (
    brute_partition,
    random_float_activities,
    random_hypergraph,
    seeded,
    triangle,
)


def bisect_fixed_point(d, k, lam, iters=130):
    """Independent rational bisection for x * (1+x)**d = k * lam."""
    lam = Fraction(lam)
    target = k * lam
    lo, hi = Fraction(0), max(target, Fraction(1))
    for _ in range(iters):
        mid = (lo + hi) / 2
        if mid * (1 + mid) ** d < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def test_tree_recursion_step():
    assert tree_recursion_step([], Fraction(3, 2)) == Fraction(3, 2)
    assert tree_recursion_step([[math.inf]], 2) == 0
    assert tree_recursion_step([[1], [2]], 6) == 1
    assert tree_recursion_step([[Fraction(1, 2), Fraction(1, 2)]], Fraction(4)) == 2
    # one infinite child zeroes everything, even with other groups present
    assert tree_recursion_step([[1], [math.inf, 5]], 7) == 0


def test_ratio_interval():
    iv = RatioInterval(lo=Fraction(1, 2), hi=Fraction(1))
    assert iv.width == Fraction(1, 2)
    assert iv.probability_bounds() == (pytest.approx(1 / 3), pytest.approx(0.5))
    assert iv.contains(Fraction(3, 4))
    assert not iv.contains(2)
    assert iv.contains(2, slack=1)
    assert RatioInterval(0.0, math.inf).probability_bounds() == (0.0, 1.0)
    with pytest.raises(ValueError):
        RatioInterval(lo=2, hi=1)
    with pytest.raises(ValueError):
        RatioInterval(lo=-1, hi=1)


def test_model_params_validation():
    p = ModelParams(d=2, k=4, lam=1.0)
    assert p.critical == 1.0
    with pytest.raises(ValueError):
        ModelParams(d=0, k=1, lam=1.0)
    with pytest.raises(ValueError):
        ModelParams(d=1, k=1, lam=0.0)


def test_critical_activity_values():
    assert critical_activity(2, 4) == 1.0
    assert critical_activity(2, 1) == 4.0
    assert critical_activity(2, 2) == 2.0
    assert critical_activity(3, 3) == 0.5625
    for k in range(1, 7):
        assert critical_activity(1, k) == math.inf
    # decreasing in k at fixed d
    for d in range(2, 6):
        vals = [critical_activity(d, k) for k in range(1, 7)]
        assert vals == sorted(vals, reverse=True)
    with pytest.raises(ValueError):
        critical_activity(0, 3)


def test_fixed_point_examples():
    assert fixed_point(1, 2, 1.0) == pytest.approx(1.0, abs=1e-12)
    assert fixed_point(2, 4, 1.0) == pytest.approx(1.0, abs=1e-12)
    # d = 1 closed form against the quadratic
    for k in (1, 2, 5):
        for lam in (0.1, 1.0, 7.5):
            x = fixed_point(1, k, lam)
            assert x * (1 + x) == pytest.approx(k * lam, rel=1e-12)


def test_fixed_point_matches_bisection_oracle():
    for d in (1, 2, 3, 5):
        for k in (1, 2, 4):
            lams = [Fraction(1, 10), Fraction(1, 2), Fraction(1), Fraction(10)]
            if d > 1:
                lams.append(Fraction(d**d, k * (d - 1) ** (d + 1)))
            for lam in lams:
                got = fixed_point(d, k, float(lam))
                want = float(bisect_fixed_point(d, k, lam))
                assert got == pytest.approx(want, rel=1e-12, abs=1e-13)


def test_fixed_point_extreme_activities():
    for d, k, lam in [(5, 5, 1e6), (2, 1, 1e-9), (4, 3, 1e4)]:
        x = fixed_point(d, k, lam)
        assert abs(x * (1 + x) ** d - k * lam) <= 1e-10 * max(1.0, k * lam)


def test_contraction_trichotomy():
    for d in (2, 3, 4, 5):
        for k in (1, 2, 3, 4, 5):
            lc = critical_activity(d, k)
            assert contraction_ratio(d, k, lc) == pytest.approx(1.0, abs=1e-9)
            for i in range(1, 26):
                below = lc * i / 26.0
                above = lc * (1.0 + i / 5.0)
                assert contraction_ratio(d, k, below) < 1.0
                assert contraction_ratio(d, k, above) > 1.0
    # d = 1 never reaches the threshold
    for lam in (0.5, 10.0, 1e5):
        assert contraction_ratio(1, 3, lam) < 1.0


def test_two_periodic_points_below_threshold():
    assert two_periodic_points(2, 4, 0.5) == (fixed_point(2, 4, 0.5),)
    assert two_periodic_points(2, 4, 1.0) == (fixed_point(2, 4, 1.0),)
    assert len(two_periodic_points(1, 3, 100.0)) == 1


def test_two_periodic_points_above_threshold():
    # (d, k) = (2, 4), lam = 2: the attracting pair is 3 -+ 2 sqrt(2)
    lo, mid, hi = two_periodic_points(2, 4, 2.0)
    assert lo == pytest.approx(3 - 2 * math.sqrt(2), rel=1e-12)
    assert hi == pytest.approx(3 + 2 * math.sqrt(2), rel=1e-12)
    assert mid == pytest.approx(fixed_point(2, 4, 2.0), rel=1e-12)

    def f(x, d, k, lam):
        return k * lam / (1 + x) ** d

    for d, k, lam in [(2, 4, 2.0), (3, 2, 1.0), (2, 1, 9.0), (4, 5, 0.5)]:
        assert lam > critical_activity(d, k)
        roots = two_periodic_points(d, k, lam)
        assert len(roots) == 3
        lo, mid, hi = roots
        assert lo < mid < hi
        assert f(lo, d, k, lam) == pytest.approx(hi, abs=1e-9)
        assert f(hi, d, k, lam) == pytest.approx(lo, abs=1e-9)
        for x in roots:
            assert f(f(x, d, k, lam), d, k, lam) == pytest.approx(x, abs=1e-9)


def test_extremal_sequences_sandwich():
    for d in (2, 3, 4, 5):
        for k in (1, 2, 3, 4, 5):
            lc = critical_activity(d, k)
            for lam in (lc / 2, lc, 2 * lc):
                upper, lower = extremal_ratio_sequences(d, k, lam, 100)
                x_hat = fixed_point(d, k, lam) / k
                for i in range(100):
                    assert lower[i] <= x_hat <= upper[i]
                    if i:
                        assert upper[i] <= upper[i - 1] + 1e-15
                        assert lower[i] >= lower[i - 1] - 1e-15
                gap = upper[-1] - lower[-1]
                if lam < lc:
                    assert gap <= 1e-5
                elif lam == lc:
                    assert gap <= 0.6 * (upper[9] - lower[9])


def test_extremal_sequences_limits_above_threshold():
    # above the threshold the even/odd limits are the two-periodic pair
    for d, k, lam in [(2, 4, 2.0), (3, 2, 1.0)]:
        upper, lower = extremal_ratio_sequences(d, k, lam, 4000)
        lo, _, hi = two_periodic_points(d, k, lam)
        assert upper[-1] == pytest.approx(hi / k, rel=1e-6)
        assert lower[-1] == pytest.approx(lo / k, rel=1e-6)


def test_regular_root_extremes():
    for d, k, lam in [(2, 4, 1.0), (3, 2, 0.7), (1, 2, 2.0)]:
        assert regular_root_extremes(d, k, lam, 1) == (lam, 0.0)
        r_plus, r_minus = regular_root_extremes(d, k, lam, 2)
        assert r_plus == pytest.approx(lam)
        assert r_minus == pytest.approx(lam / (1 + k * lam) ** (d + 1))
        # one more independent unrolling for ell = 3
        up2 = lam / (1 + k * 0.0) ** d
        low2 = lam / (1 + k * lam) ** d
        r_plus, r_minus = regular_root_extremes(d, k, lam, 3)
        assert r_plus == pytest.approx(lam / (1 + k * low2) ** (d + 1), rel=1e-12)
        assert r_minus == pytest.approx(lam / (1 + k * up2) ** (d + 1), rel=1e-12)
    with pytest.raises(ValueError):
        regular_root_extremes(2, 2, 1.0, 0)


def test_full_tree_boundary_bracketing():
    # on the uniform tree with uniform activity, any leaf boundary in
    # [0, lam] lands between the extremal sequences; the constant-0 and
    # constant-lam boundaries hit them exactly with alternating parity
    rng = seeded(616)

    def value(level, d, k, lam, boundary):
        if level == 1:
            return boundary()
        kid = lambda: value(level - 1, d, k, lam, boundary)  # noqa: E731
        return lam / math.prod(1 + sum(kid() for _ in range(k)) for _ in range(d))

    for d, k, lam in [(2, 2, 1.0), (2, 4, 1.0), (3, 2, 2.0)]:
        for ell in (1, 2, 3, 4, 5):
            upper, lower = extremal_ratio_sequences(d, k, lam, ell)
            for _ in range(20):
                v = value(ell, d, k, lam, lambda: rng.uniform(0.0, lam))
                assert lower[ell - 1] - 1e-12 <= v <= upper[ell - 1] + 1e-12
            v0 = value(ell, d, k, lam, lambda: 0.0)
            vl = value(ell, d, k, lam, lambda: lam)
            if ell % 2:
                assert v0 == pytest.approx(lower[ell - 1], abs=1e-13)
                assert vl == pytest.approx(upper[ell - 1], abs=1e-13)
            else:
                assert v0 == pytest.approx(upper[ell - 1], abs=1e-13)
                assert vl == pytest.approx(lower[ell - 1], abs=1e-13)


def test_two_step_contraction_below_threshold():
    # g = f o f contracts toward the fixed point at rate f'(x_hat)^2
    rng = seeded(717)
    for d, k in [(2, 4), (3, 2), (5, 5), (2, 1)]:
        lc = critical_activity(d, k)
        for lam in (0.3 * lc, 0.9 * lc, lc):
            x_hat = fixed_point(d, k, lam)
            rate = contraction_ratio(d, k, lam) ** 2

            def g(x):
                fx = k * lam / (1 + x) ** d
                return k * lam / (1 + fx) ** d

            for _ in range(250):
                x = x_hat + rng.uniform(1e-9, 4.0)
                assert g(x) - x_hat <= rate * (x - x_hat) + 1e-12


def test_decay_rate_bounds_values():
    b = decay_rate_bounds(2, 4, 1.0, 10)
    assert b.ssm_factor == 252.0
    # subcritical bounds decay geometrically at the contraction ratio
    r = contraction_ratio(2, 4, 0.5)
    for ell in (4, 7, 15):
        b1 = decay_rate_bounds(2, 4, 0.5, ell).wsm_bound
        b2 = decay_rate_bounds(2, 4, 0.5, ell + 1).wsm_bound
        assert b2 / b1 == pytest.approx(r, rel=1e-12)
    assert decay_rate_bounds(2, 4, 0.5, 4).wsm_bound == pytest.approx(
        0.5 * (1 + 4 * 2 * 0.5), rel=1e-12
    )


def test_decay_rate_bounds_critical_and_above():
    assert decay_rate_bounds(2, 4, 1.5, 10).wsm_bound is None
    assert decay_rate_bounds(2, 4, 1.5, 10).ssm_factor > 0
    # at the threshold the bound eventually decays like 1 / sqrt(ell)
    vals = [decay_rate_bounds(2, 4, 1.0, ell).wsm_bound for ell in range(1, 5000, 250)]
    assert all(v is not None for v in vals)
    tail = [v for v in vals[4:]]
    assert all(b <= a + 1e-15 for a, b in zip(tail, tail[1:]))
    big = decay_rate_bounds(2, 4, 1.0, 4 * 10**6).wsm_bound
    small = decay_rate_bounds(2, 4, 1.0, 10**6).wsm_bound
    assert big == pytest.approx(small / 2, rel=0.01)
    with pytest.raises(ValueError):
        decay_rate_bounds(2, 4, 1.0, 0)
    with pytest.raises(ValueError):
        decay_rate_bounds(2, 4, 0.0, 3)


def test_truncated_marginal_brackets_oracle():
    rng = seeded(818)
    for _ in range(30):
        H = random_hypergraph(rng, n_max=7, m_max=7)
        acts = random_float_activities(rng, H, lam_max=2.0)
        v = rng.randrange(H.n)
        _, marg = brute_partition(H, acts)
        for t in (0, 1, 2, 3, 5, 9):
            iv = truncated_marginal(H, v, activities=acts, depth=t)
            p_lo, p_hi = iv.probability_bounds()
            assert p_lo - 1e-12 <= marg[v] <= p_hi + 1e-12


def test_truncated_marginal_interval_nesting():
    rng = seeded(919)
    for _ in range(25):
        H = random_hypergraph(rng, n_max=7, m_max=7)
        acts = random_float_activities(rng, H, lam_max=2.0)
        v = rng.randrange(H.n)
        prev = truncated_marginal(H, v, activities=acts, depth=0)
        for t in range(1, 8):
            cur = truncated_marginal(H, v, activities=acts, depth=t)
            lo_p, hi_p = prev.probability_bounds()
            lo_c, hi_c = cur.probability_bounds()
            assert lo_c >= lo_p - 1e-12
            assert hi_c <= hi_p + 1e-12
            prev = cur
    with pytest.raises(ValueError):
        truncated_marginal(triangle(), 0, depth=-1)


def test_interval_width_within_certified_decay():
    # the advertised contract: probability-interval width at depth t is at
    # most ssm_factor * wsm_bound(t) whenever the activity is subcritical
    rng = seeded(121)
    checked = 0
    for _ in range(40):
        H = random_hypergraph(rng, n_max=8, m_max=6)
        from hypermatch import validate_and_stats

        st = validate_and_stats(H)
        d, k = max(1, st.d), max(1, st.k)
        lc = critical_activity(d, k)
        lam = rng.uniform(0.05, min(lc, 4.0) * 0.95) if lc < math.inf else rng.uniform(0.05, 4.0)
        v = rng.randrange(H.n)
        for t in (1, 2, 4, 8):
            iv = truncated_marginal(H, v, activities=lam, depth=t)
            p_lo, p_hi = iv.probability_bounds()
            bound = decay_rate_bounds(d, k, lam, t)
            assert p_hi - p_lo <= bound.ssm_factor * bound.wsm_bound + 1e-12
            checked += 1
    assert checked > 100
