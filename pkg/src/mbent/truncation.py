"""Analytic and adaptive control of the centre-of-mass truncation error.

The squeezed-state amplitudes form a geometric ladder in tanh(r), so
cutting the excitation sum at nmax discards exactly
tanh(r)**(2*(nmax+1)) of the probability weight.  The adaptive selector
grows nmax until both that tail and the observed change of every probed
purity fall inside an error budget, split 1/4 : 1/4 : 1/2 between tail,
convergence, and float slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence


class BudgetInfeasibleError(RuntimeError):
    """The nmax cap was reached before the error budget was met."""

    def __init__(self, r: float, nmax_cap: int, target_error: float):
        super().__init__(
            f"truncation budget {target_error} infeasible at r={r} within nmax cap {nmax_cap}"
        )
        self.r = r


@dataclass
class TruncationBudget:
    """Absolute error budget for truncated purity and bound values.

    ``achieved_tail`` is filled in by :func:`select_nmax`.
    """

    target_error: float
    nmax_cap: int = 64
    achieved_tail: float | None = None

    def __post_init__(self) -> None:
        if self.target_error <= 0:
            raise ValueError(f"target_error must be > 0, got {self.target_error}")
        if self.nmax_cap < 0:
            raise ValueError(f"nmax_cap must be >= 0, got {self.nmax_cap}")


def tail_weight(r: float, nmax: int) -> float:
    """Probability weight tanh(r)**(2*(nmax+1)) of the discarded sector."""
    if r < 0:
        raise ValueError(f"squeezing parameter must be >= 0, got {r}")
    if nmax < 0:
        raise ValueError(f"nmax must be >= 0, got {nmax}")
    return math.tanh(r) ** (2 * (nmax + 1))


def purity_error_bound(tail: float, convergence_gap: float) -> float:
    """Reported bound on the purity error of a renormalized truncation.

    Twice the tail covers the renormalization shift of a geometric
    spectrum; the empirically observed convergence gap covers the
    redistribution among sectors.
    """
    return 2.0 * tail + convergence_gap


def _thermal_truncated_purity(r: float, nmax: int) -> float:
    # purity of the renormalized full-trap marginal; closed geometric form
    lam = math.tanh(r) ** 2
    if lam == 0.0:
        return 1.0
    eps = lam ** (nmax + 1)
    return (1 - lam) ** 2 * (1 - eps**2) / ((1 - lam**2) * (1 - eps) ** 2)


def select_nmax(
    r: float,
    budget: TruncationBudget,
    probe: Callable[[int], Sequence[float]] | None = None,
) -> int:
    """Smallest nmax meeting the tail and convergence quarters of the budget.

    Starting from the first nmax whose tail weight is at most
    ``target_error / 4``, the candidate grows until every purity probed
    at nmax and nmax - 1 differs by less than ``target_error / 4``.
    ``probe(nmax)`` returns the purities of the splits under study; by
    default the analytic full-trap thermal purity is probed, the class
    with the slowest geometric convergence.  Records ``achieved_tail``
    on the budget and raises :class:`BudgetInfeasibleError` if the cap
    is hit first.
    """
    if r < 0:
        raise ValueError(f"squeezing parameter must be >= 0, got {r}")
    if r == 0.0:
        budget.achieved_tail = 0.0
        return 0
    if probe is None:
        probe = lambda nmax: (_thermal_truncated_purity(r, nmax),)  # noqa: E731

    quarter = budget.target_error / 4.0
    log_tanh_sq = 2.0 * math.log(math.tanh(r))
    # first nmax with tanh(r)**(2*(nmax+1)) <= quarter
    candidate = max(1, math.ceil(math.log(quarter) / log_tanh_sq - 1.0))
    if candidate > budget.nmax_cap or tail_weight(r, budget.nmax_cap) > quarter:
        raise BudgetInfeasibleError(r, budget.nmax_cap, budget.target_error)

    previous = probe(candidate - 1)
    while True:
        current = probe(candidate)
        gap = max(abs(a - b) for a, b in zip(current, previous))
        if gap < quarter:
            budget.achieved_tail = tail_weight(r, candidate)
            return candidate
        if candidate >= budget.nmax_cap:
            raise BudgetInfeasibleError(r, budget.nmax_cap, budget.target_error)
        candidate += 1
        previous = current
