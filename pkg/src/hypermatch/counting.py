"""Deterministic approximate counting via telescoping conditioned marginals.

The partition function factors as 1/Z = prod_i (1 - p_i) where p_i is the
occupation probability of vertex v_i conditioned on v_1 .. v_{i-1} all
unoccupied.  Each conditioned marginal is enclosed in a certified interval
by the truncated walk-tree recursion, so the product yields rigorous lower
and upper bounds on Z; the reported error is computed from those bounds and
never from the a-priori decay theory.  The decay theory only picks the depth
cap, which keeps the adaptive loop finite in the guaranteed regimes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence, Union

from .decay import (
    _critical_envelope,
    contraction_ratio,
    critical_activity,
    decay_rate_bounds,
    truncated_marginal,
)
from .hypergraph import (
    ActivityVector,
    Hypergraph,
    Number,
    UNOCCUPIED,
    as_activities,
    validate_and_stats,
)

__all__ = [
    "Regime",
    "NoGuaranteeError",
    "ApproxResult",
    "classify_regime",
    "hardness_threshold",
    "depth_for_error",
    "approx_partition",
    "approx_log_partition",
    "DEFAULT_UNGUARANTEED_DEPTH_CAP",
]

# depth cap used when lambda sits above the decay guarantee; certified
# intervals still make any returned error bound sound
DEFAULT_UNGUARANTEED_DEPTH_CAP = 64

_REFINEMENT_ROUNDS = 6


class Regime(enum.Enum):
    """Tractability regime of (d, k, lambda)."""

    FPTAS = "FPTAS"
    CriticalPTAS = "CriticalPTAS"
    Gap = "Gap"
    Hard = "Hard"


class NoGuaranteeError(ValueError):
    """No a-priori decay guarantee exists for the requested parameters."""


def hardness_threshold(d: int, k: int) -> float:
    """Activity above which approximation is intractable in the worst case.

    Equals (2k + 1 + (-1)**k) / (k + 1) times the critical activity; between
    the critical activity and this point neither an algorithm nor a hardness
    proof is known.
    """
    factor = (2 * k + 1 + (-1) ** k) / (k + 1)
    return factor * critical_activity(d, k)


def classify_regime(d: int, k: int, lam: float) -> Regime:
    """Place lambda relative to the critical and hardness thresholds."""
    if lam < 0:
        raise ValueError("activity must be nonnegative")
    lam_c = critical_activity(d, k)
    if lam < lam_c:
        return Regime.FPTAS
    if lam == lam_c:
        return Regime.CriticalPTAS
    if lam > hardness_threshold(d, k):
        return Regime.Hard
    return Regime.Gap


def _depth_for_budget(d: int, k: int, lam: float, budget: float) -> int:
    """Smallest depth whose worst-case decay bound clears the budget."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    lam_c = critical_activity(d, k)
    if lam > lam_c:
        raise NoGuaranteeError(
            f"activity {lam} exceeds the critical activity {lam_c}; "
            "no finite depth guarantees the requested error"
        )
    if lam < lam_c:
        ratio = contraction_ratio(d, k, lam)
        c1 = lam * (1.0 + k * d * lam)
        if c1 <= budget:
            t = 1
        else:
            t = max(1, 4 + math.ceil(math.log(c1 / budget) / math.log(1.0 / ratio)))
        # snap to the exact crossing; the log formula can be off by one ulp
        while t > 1 and decay_rate_bounds(d, k, lam, t - 1).wsm_bound <= budget:
            t -= 1
        while decay_rate_bounds(d, k, lam, t).wsm_bound > budget:
            t += 1
        return t
    # critical case: constant lam up to the offset, then c2/sqrt(t - offset)
    if lam <= budget:
        return 1
    offset, c2 = _critical_envelope(d, k, lam)
    extra = (c2 / budget) ** 2
    if not extra < 1e15:
        raise NoGuaranteeError(
            f"budget {budget} needs an impractically large depth at criticality"
        )
    t = offset + max(1, math.ceil(extra))
    while t > 1 and decay_rate_bounds(d, k, lam, t - 1).wsm_bound <= budget:
        t -= 1
    return t


def _effective_cap(
    H: Hypergraph,
    max_depth: int | None,
    theory: bool,
    d: int,
    k: int,
    lam: float,
    budget: float,
) -> int:
    """Depth cap actually used by a counting run.

    A self-avoiding walk adds a fresh vertex per level and consumes a fresh
    edge per step, so no walk survives past depth min(n - 1, m); cutting one
    level beyond makes every truncated interval exact.  That instance bound
    keeps runs finite even when the worst-case analysis asks for a depth too
    large to schedule (deep critical budgets), without weakening the cap the
    analysis promises.
    """
    instance_cap = min(H.n, H.m + 1)
    if max_depth is not None:
        return min(max_depth, instance_cap)
    if theory:
        try:
            return min(_depth_for_budget(d, k, lam, budget), instance_cap)
        except NoGuaranteeError:
            return instance_cap
    return min(DEFAULT_UNGUARANTEED_DEPTH_CAP, instance_cap)


def depth_for_error(d: int, k: int, lam: float, eps: float, n: int) -> int:
    """A-priori truncation depth for an eps-relative partition estimate on n
    vertices: the smallest t with wsm_bound(t) <= eps / (2 (1 + lam) n).

    Raises NoGuaranteeError above the critical activity.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if n < 1:
        raise ValueError("n must be at least 1")
    budget = eps / (2.0 * (1.0 + lam) * n)
    return _depth_for_budget(d, k, lam, budget)


@dataclass(frozen=True)
class ApproxResult:
    """Certified output of an approximate counting run.

    ``estimate`` is the partition function (kind "partition") or its log
    (kind "log_partition").  ``lower`` and ``upper`` always bound log Z.
    ``certified_error`` is relative in both kinds and is derived from the
    certified bounds alone; ``guaranteed`` records whether the activity sat
    in a regime with an a-priori depth cap, not whether the run succeeded.
    """

    estimate: float
    certified_error: float
    depth_used: int
    per_marginal_budget: float
    lower: float
    upper: float
    regime: Regime
    guaranteed: bool
    eps: float
    kind: str

    @property
    def ok(self) -> bool:
        return self.certified_error <= self.eps


def _resolve_order(H: Hypergraph, vertex_order) -> list[int]:
    if vertex_order is None or vertex_order == "input":
        return list(range(H.n))
    if vertex_order == "mindeg":
        return sorted(range(H.n), key=lambda v: (H.degree(v), v))
    order = [int(v) for v in vertex_order]
    if sorted(order) != list(range(H.n)):
        raise ValueError("vertex_order must be a permutation of all vertices")
    return order


def _log_bound_terms(p_lo: float, p_hi: float) -> tuple[float, float]:
    lo_term = -math.log1p(-p_lo)
    hi_term = math.inf if p_hi >= 1.0 else -math.log1p(-p_hi)
    return lo_term, hi_term


@dataclass
class _MarginalState:
    p_lo: float = 0.0
    p_hi: float = 1.0
    depth: int = 0


def _schedule_next(t: int, cap: int) -> int:
    return min(cap, max(t + 1, math.ceil(t * 1.5)))


def _refine_marginals(
    H: Hypergraph,
    order: Sequence[int],
    activities: ActivityVector,
    states: list[_MarginalState],
    budget: float,
    cap: int,
) -> None:
    """Push each conditioned marginal interval below width 2*budget.

    States persist across refinement rounds, so depths only ever grow and
    the schedule stays deterministic.
    """
    pinning: dict[int, bool] = {}
    for idx, v in enumerate(order):
        st = states[idx]
        while st.p_hi - st.p_lo > 2.0 * budget and st.depth < cap:
            t = 1 if st.depth == 0 else _schedule_next(st.depth, cap)
            iv = truncated_marginal(
                H, v, pinning=pinning, activities=activities, depth=t
            )
            st.p_lo, st.p_hi = iv.probability_bounds()
            st.depth = t
            if st.p_hi - st.p_lo <= 0.0:
                break
        pinning[v] = UNOCCUPIED


def _accumulate(states: Sequence[_MarginalState]) -> tuple[float, float, int]:
    llo = 0.0
    lhi = 0.0
    depth = 0
    for st in states:
        a, b = _log_bound_terms(st.p_lo, st.p_hi)
        llo += a
        lhi += b
        depth = max(depth, st.depth)
    return llo, lhi, depth


def _prepare(
    H: Hypergraph,
    activities: Union[Number, ActivityVector],
    eps: float,
    kind: str,
    vertex_order,
    max_depth: int | None,
):
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if max_depth is not None and max_depth < 0:
        raise ValueError("max_depth must be nonnegative")
    acts = as_activities(activities)
    lam_max = float(max((acts(v) for v in range(H.n)), default=0.0))
    if lam_max < 0:
        raise ValueError("activities must be nonnegative")
    stats = validate_and_stats(H)
    d_eff = max(1, stats.d)
    k_eff = max(1, stats.k)
    regime = classify_regime(d_eff, k_eff, lam_max) if lam_max > 0 else Regime.FPTAS
    if kind == "partition":
        guaranteed = regime is Regime.FPTAS
    else:
        guaranteed = regime in (Regime.FPTAS, Regime.CriticalPTAS)
    order = _resolve_order(H, vertex_order)
    return acts, lam_max, d_eff, k_eff, regime, guaranteed, order


def approx_partition(
    H: Hypergraph,
    activities: Union[Number, ActivityVector] = 1.0,
    eps: float = 0.1,
    vertex_order=None,
    max_depth: int | None = None,
) -> ApproxResult:
    """Estimate the partition function within relative error eps.

    Below the critical activity this is the deterministic polynomial-time
    scheme with per-marginal budget eps / (2 (1 + lam) n); elsewhere it runs
    in warning mode with a default depth cap and reports whatever certified
    error the intervals achieve.  Check ``ok`` (certified_error <= eps) on
    the result; the estimate is never silently unguaranteed.
    """
    acts, lam_max, d_eff, k_eff, regime, guaranteed, order = _prepare(
        H, activities, eps, "partition", vertex_order, max_depth
    )
    n = H.n
    if n == 0 or lam_max == 0.0:
        return ApproxResult(
            estimate=1.0, certified_error=0.0, depth_used=0,
            per_marginal_budget=math.inf, lower=0.0, upper=0.0,
            regime=regime, guaranteed=True, eps=eps, kind="partition",
        )
    budget = eps / (2.0 * (1.0 + lam_max) * n)
    cap = _effective_cap(
        H, max_depth,
        theory=(guaranteed or regime is Regime.CriticalPTAS),
        d=d_eff, k=k_eff, lam=lam_max, budget=budget,
    )

    states = [_MarginalState() for _ in order]
    llo = lhi = 0.0
    depth = 0
    for round_idx in range(_REFINEMENT_ROUNDS):
        _refine_marginals(H, order, acts, states, budget, cap)
        llo, lhi, depth = _accumulate(states)
        if math.expm1((lhi - llo) / 2.0) <= eps:
            break
        budget /= 2.0
    half = (lhi - llo) / 2.0
    return ApproxResult(
        estimate=math.exp((llo + lhi) / 2.0),
        certified_error=math.expm1(half) if half < math.inf else math.inf,
        depth_used=depth,
        per_marginal_budget=budget,
        lower=llo,
        upper=lhi,
        regime=regime,
        guaranteed=guaranteed,
        eps=eps,
        kind="partition",
    )


def approx_log_partition(
    H: Hypergraph,
    activities: Union[Number, ActivityVector] = 1.0,
    eps: float = 0.1,
    vertex_order=None,
    max_depth: int | None = None,
) -> ApproxResult:
    """Estimate log Z within relative error eps.

    This is the scheme that stays a PTAS exactly at the critical activity,
    where the per-marginal budget eps / (4 max(1, ln(1/eps))) costs depth
    quadratic in its inverse.  The budget constant is a conservative choice
    (only the order of the budget is dictated by the analysis); as always
    the reported error comes from the certified interval product.
    """
    acts, lam_max, d_eff, k_eff, regime, guaranteed, order = _prepare(
        H, activities, eps, "log_partition", vertex_order, max_depth
    )
    n = H.n
    if n == 0 or lam_max == 0.0:
        return ApproxResult(
            estimate=0.0, certified_error=0.0, depth_used=0,
            per_marginal_budget=math.inf, lower=0.0, upper=0.0,
            regime=regime, guaranteed=True, eps=eps, kind="log_partition",
        )
    budget = eps / (4.0 * max(1.0, math.log(1.0 / eps)))
    cap = _effective_cap(
        H, max_depth, theory=guaranteed,
        d=d_eff, k=k_eff, lam=lam_max, budget=budget,
    )

    states = [_MarginalState() for _ in order]
    llo = lhi = 0.0
    depth = 0
    certified = math.inf
    for round_idx in range(_REFINEMENT_ROUNDS):
        _refine_marginals(H, order, acts, states, budget, cap)
        llo, lhi, depth = _accumulate(states)
        half = (lhi - llo) / 2.0
        if half == 0.0:
            certified = 0.0
        elif llo > 0.0:
            certified = half / llo
        else:
            certified = math.inf
        if certified <= eps:
            break
        budget /= 2.0
    return ApproxResult(
        estimate=(llo + lhi) / 2.0,
        certified_error=certified,
        depth_used=depth,
        per_marginal_budget=budget,
        lower=llo,
        upper=lhi,
        regime=regime,
        guaranteed=guaranteed,
        eps=eps,
        kind="log_partition",
    )
