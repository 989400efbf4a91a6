"""Uniqueness thresholds, fixed points, and certified decay bounds.

On the infinite (k+1)-uniform (d+1)-regular hypertree the occupation ratio
of a vertex with d child groups of k children each satisfies the one
dimensional recursion x -> f(x) with

    f(x) = k * lambda / (1 + x)**d        (x = k * R)

The recursion has a unique positive fixed point x_hat solving
x * (1 + x)**d = k * lambda.  Correlation decay holds exactly up to the
critical activity

    lambda_c(d, k) = d**d / (k * (d - 1)**(d + 1))      (infinite for d = 1)

where the contraction ratio |f'(x_hat)| = d * x_hat / (1 + x_hat) passes
through one.  Above lambda_c the two-step map f(f(x)) acquires a pair of
attracting fixed points swapped by f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from scipy.optimize import brentq

from .hypergraph import ActivityVector, Hypergraph, Number, Pinning
from .sawtree import DEFAULT_MAX_NODES, EdgeOrdering, evaluate_root_ratio

__all__ = [
    "ModelParams",
    "RatioInterval",
    "DecayBounds",
    "tree_recursion_step",
    "truncated_marginal",
    "critical_activity",
    "fixed_point",
    "contraction_ratio",
    "two_periodic_points",
    "extremal_ratio_sequences",
    "regular_root_extremes",
    "decay_rate_bounds",
]


def _check_dk(d: int, k: int) -> None:
    if not (isinstance(d, int) and isinstance(k, int)):
        raise ValueError("d and k must be integers")
    if d < 1 or k < 1:
        raise ValueError("d and k must be at least 1")


def _check_lambda(lam: float) -> None:
    if not lam > 0:
        raise ValueError("activity must be positive")


@dataclass(frozen=True)
class ModelParams:
    """Degree parameter d, edge-size parameter k, and a uniform activity."""

    d: int
    k: int
    lam: float

    def __post_init__(self) -> None:
        _check_dk(self.d, self.k)
        _check_lambda(self.lam)

    @property
    def critical(self) -> float:
        return critical_activity(self.d, self.k)


@dataclass(frozen=True)
class RatioInterval:
    """Certified enclosure [lo, hi] of an occupation ratio R = p/(1-p)."""

    lo: Number
    hi: Number

    def __post_init__(self) -> None:
        if not 0 <= self.lo <= self.hi:
            raise ValueError("interval bounds out of order")

    @property
    def width(self) -> Number:
        return self.hi - self.lo

    def probability_bounds(self) -> tuple[float, float]:
        lo = 1.0 if self.lo == math.inf else self.lo / (1 + self.lo)
        hi = 1.0 if self.hi == math.inf else self.hi / (1 + self.hi)
        return (float(lo), float(hi))

    def contains(self, value: Number, slack: float = 0.0) -> bool:
        return self.lo - slack <= value <= self.hi + slack


def tree_recursion_step(
    groups: Sequence[Sequence[Number]], lam_v: Number
) -> Number:
    """One step of the ratio recursion: lambda_v * prod_i 1/(1 + sum_j R_ij).

    A group containing +inf forces its factor (and hence the result) to
    zero; an empty group list returns lam_v.
    """
    value: Number = lam_v
    for group in groups:
        total: Number = 0
        infinite = False
        for r in group:
            if r == math.inf:
                infinite = True
                break
            total = total + r
        if infinite:
            return 0
        value = value / (1 + total)
    return value


def truncated_marginal(
    H: Hypergraph,
    v: int,
    pinning: Pinning | None = None,
    activities: Union[Number, ActivityVector] = 1,
    depth: int = 0,
    ordering: EdgeOrdering | None = None,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> RatioInterval:
    """Certified interval around the exact occupation ratio of v.

    Runs the walk-tree recursion twice, initializing every unexpanded node
    at ``depth`` once with 0 and once with +inf.  The recursion step is
    antitone in each child, and all cut nodes sit at the same depth, so the
    two runs bracket the fully expanded value; the interval is therefore a
    rigorous enclosure at every depth and shrinks as the depth grows.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if depth > 400:
        import sys

        sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * depth + 200))
    kwargs = dict(
        pinning=pinning, activities=activities, ordering=ordering,
        depth=depth, max_nodes=max_nodes,
    )
    a = evaluate_root_ratio(H, v, frontier=0.0, **kwargs)
    b = evaluate_root_ratio(H, v, frontier=math.inf, **kwargs)
    lo, hi = (a, b) if a <= b else (b, a)
    return RatioInterval(lo=lo, hi=hi)


def critical_activity(d: int, k: int) -> float:
    """Uniqueness threshold d**d / (k * (d-1)**(d+1)); infinite when d == 1."""
    _check_dk(d, k)
    if d == 1:
        return math.inf
    return d**d / (k * (d - 1) ** (d + 1))


def fixed_point(d: int, k: int, lam: float) -> float:
    """Unique positive root x_hat of x * (1 + x)**d = k * lambda.

    For d == 1 the closed form (-1 + sqrt(1 + 4*k*lambda)) / 2 is returned;
    otherwise a bracketed solve is polished with Newton steps to around
    machine precision.
    """
    _check_dk(d, k)
    _check_lambda(lam)
    target = k * lam
    if d == 1:
        return (-1.0 + math.sqrt(1.0 + 4.0 * target)) / 2.0

    def h(x: float) -> float:
        return x * (1.0 + x) ** d - target

    hi = max(target, 1e-12)
    x = brentq(h, 0.0, hi, xtol=1e-15, rtol=8.9e-16, maxiter=200)
    for _ in range(3):
        deriv = (1.0 + x) ** (d - 1) * (1.0 + (d + 1) * x)
        if deriv == 0:
            break
        step = h(x) / deriv
        x -= step
        if abs(step) < 1e-17:
            break
    return x


def contraction_ratio(d: int, k: int, lam: float) -> float:
    """|f'(x_hat)| = d * x_hat / (1 + x_hat); below/at/above one exactly as
    lambda is below/at/above the critical activity."""
    x = fixed_point(d, k, lam)
    return d * x / (1.0 + x)


def two_periodic_points(d: int, k: int, lam: float) -> tuple[float, ...]:
    """Fixed points of the two-step map g = f o f, sorted increasingly.

    At or below the critical activity the only fixed point is x_hat; above
    it the map has an attracting pair x_minus < x_hat < x_plus with
    f(x_minus) = x_plus and f(x_plus) = x_minus.
    """
    _check_dk(d, k)
    _check_lambda(lam)
    x_hat = fixed_point(d, k, lam)
    if lam <= critical_activity(d, k):
        return (x_hat,)

    target = k * lam

    def f(x: float) -> float:
        return target / (1.0 + x) ** d

    def g(x: float) -> float:
        return f(f(x))

    def g_prime(x: float) -> float:
        fx = f(x)
        return d * d * g(x) * fx / ((1.0 + fx) * (1.0 + x))

    def settle(x: float) -> float:
        for _ in range(5000):
            nxt = g(x)
            if abs(nxt - x) < 1e-13:
                x = nxt
                break
            x = nxt
        for _ in range(100):
            resid = g(x) - x
            if abs(resid) <= 1e-14:
                break
            denom = g_prime(x) - 1.0
            if abs(denom) < 1e-12:
                break
            x -= resid / denom
        return x

    x_plus = settle(target)
    x_minus = settle(0.0)
    return tuple(sorted((x_minus, x_hat, x_plus)))


def extremal_ratio_sequences(
    d: int, k: int, lam: float, ell_max: int
) -> tuple[list[float], list[float]]:
    """Extremal root ratios on the depth-ell regular tree with a degree-d root.

    Returns (upper, lower) lists where index ell-1 holds the level-ell value:
    R_plus(1) = lambda, R_minus(1) = 0, and then each side feeds the other's
    previous value through R -> lambda / (1 + k*R)**d.  The upper sequence is
    nonincreasing, the lower nondecreasing, and the true ratio under any
    boundary condition at level ell lies between them.  The root of the
    regular tree itself has one more neighbor; see regular_root_extremes.
    """
    _check_dk(d, k)
    _check_lambda(lam)
    if ell_max < 1:
        raise ValueError("ell_max must be at least 1")
    upper = [lam]
    lower = [0.0]
    for _ in range(ell_max - 1):
        upper.append(lam / (1.0 + k * lower[-1]) ** d)
        lower.append(lam / (1.0 + k * upper[-2]) ** d)
    return upper, lower


def regular_root_extremes(d: int, k: int, lam: float, ell: int) -> tuple[float, float]:
    """Extremal ratios at the root of the (d+1)-regular tree, boundary at level ell."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if ell == 1:
        return (lam, 0.0)
    upper, lower = extremal_ratio_sequences(d, k, lam, ell - 1)
    r_plus = lam / (1.0 + k * lower[-1]) ** (d + 1)
    r_minus = lam / (1.0 + k * upper[-1]) ** (d + 1)
    return (r_plus, r_minus)


@dataclass(frozen=True)
class DecayBounds:
    """A worst-case boundary-influence bound plus the pinning amplification factor.

    ``wsm_bound`` is None above the critical activity, where no decay
    guarantee exists.  Both constants are deliberately conservative: they
    only steer depth selection, while result correctness always rests on the
    certified interval of truncated_marginal.
    """

    wsm_bound: float | None
    ssm_factor: float


def _critical_offset(d: int, k: int, lam: float, gamma: float) -> int:
    """Level after which the critical-decay envelope gamma/sqrt applies."""
    x_hat = fixed_point(d, k, lam)
    target = k * lam
    x = target  # level-1 upper value in x-scale
    level = 1
    threshold = gamma / math.sqrt(2.0)
    while x - x_hat > threshold:
        x = target / (1.0 + target / (1.0 + x) ** d) ** d
        level += 2
        if level > 2_000_000:
            raise RuntimeError("critical decay envelope failed to engage")
    return level


def _critical_envelope(d: int, k: int, lam: float) -> tuple[int, float]:
    """Offset and constant of the square-root decay envelope at criticality."""
    gamma = math.sqrt(3.0 * d * d / ((d + 1) * (d - 1) ** 3))
    offset = _critical_offset(d, k, lam, gamma) + 1
    c2 = math.sqrt(2.0) * gamma * (1.0 + k * d * lam) * (1.0 + k * lam) / k
    return offset, c2


def decay_rate_bounds(d: int, k: int, lam: float, ell: int) -> DecayBounds:
    """Boundary-influence decay rate at depth ell plus the pinning factor.

    Below the critical activity the bound decays geometrically with the
    contraction ratio; exactly at it the decay is of order 1/sqrt(depth).
    The ssm factor (1+lambda)(lambda+(1+k*lambda)**(d+1))/lambda converts a
    bound under free boundaries into one under arbitrary pinnings.
    """
    _check_dk(d, k)
    _check_lambda(lam)
    if ell < 1:
        raise ValueError("ell must be at least 1")
    ssm = (1.0 + lam) * (lam + (1.0 + k * lam) ** (d + 1)) / lam
    lam_c = critical_activity(d, k)
    if lam < lam_c:
        ratio = contraction_ratio(d, k, lam)
        c1 = lam * (1.0 + k * d * lam)
        return DecayBounds(wsm_bound=c1 * ratio ** (ell - 4), ssm_factor=ssm)
    if lam == lam_c:
        offset, c2 = _critical_envelope(d, k, lam)
        if ell <= offset:
            return DecayBounds(wsm_bound=lam, ssm_factor=ssm)
        return DecayBounds(wsm_bound=c2 / math.sqrt(ell - offset), ssm_factor=ssm)
    return DecayBounds(wsm_bound=None, ssm_factor=ssm)
