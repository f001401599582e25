"""Multipartite entanglement decisions and measures for pure states.

A pure state of M modes is M-way entangled exactly when no bipartite
split factorizes it, i.e. when every reduced density operator over up to
floor(M/2) modes has purity strictly below one.  The quantitative
measure used here is the minimum over all bipartite splits of the
reduced von Neumann entropy; when eigendecompositions are out of reach
it is lower-bounded through the linear entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .fock import ModeRegister, OccupationVector
from .reduce import (
    DIM_GUARD,
    CapacityError,
    DensityOperator,
    SplitSpec,
    purity,
    split_entropy,
)
from .states import PureState

LOG2_E = math.log2(math.e)

#: scale factors turning a linear entropy into a von Neumann lower bound
BOUND_CONSTANTS = {"paper": 1.0 / LOG2_E, "tight": LOG2_E}


@dataclass(frozen=True)
class SplitResult:
    """Purity and entropies of one evaluated split."""

    split: SplitSpec
    signature: tuple[int, int] | None
    purity: float
    linear_entropy: float
    entropy: float | None = None

    @property
    def label(self) -> str:
        if self.signature is not None:
            return f"{self.signature[0]}/{self.signature[1]}"
        return self.split.label


@dataclass(frozen=True)
class MeasureReport:
    """Per-split purity/entropy table with the derived verdict and bounds."""

    n_modes: int
    per_split: tuple[SplitResult, ...]
    is_mway_entangled: bool
    tolerance: float
    truncation_error: float
    min_linear_entropy: float
    entropy_bound: float
    bound_mode: str = "paper"
    min_entropy: float | None = None

    @property
    def offending_splits(self) -> tuple[SplitResult, ...]:
        """Splits whose purity is not below the entanglement threshold."""
        return tuple(s for s in self.per_split if s.purity >= 1.0 - self.tolerance)


def enumerate_splits(register: ModeRegister, symmetry: bool = False) -> list[SplitSpec]:
    """Bipartite splits to test, one per class.

    Without symmetry this is every traced subset of size 1..floor(F/2);
    when F is even, half-size subsets are deduplicated against their
    complements (the one containing mode 0 is kept).  With symmetry,
    which requires a trap-structured register, one canonical
    representative per (t, v) signature is returned, with (t, v) and
    (v, t) merged when the traps have equal size.
    """
    n = register.n_modes
    if n < 2:
        raise ValueError("need at least two modes to enumerate splits")
    if not symmetry:
        out = []
        half = n // 2
        for size in range(1, half + 1):
            for combo in combinations(range(n), size):
                if n % 2 == 0 and size == half and 0 not in combo:
                    continue
                out.append(SplitSpec(n_modes=n, traced=frozenset(combo)))
        return out

    if register.trap_sizes is None:
        raise ValueError("symmetry-reduced enumeration needs a trap-structured register")
    n1, n2 = register.trap_sizes
    half = n // 2
    seen: set[tuple[int, int]] = set()
    out = []
    for t in range(n1 + 1):
        for v in range(n2 + 1):
            if not 1 <= t + v <= half:
                continue
            key = (t, v)
            if n1 == n2:
                key = (max(t, v), min(t, v))
                # complements of half-size classes carry the same spectrum
                if t + v == half:
                    comp = (n1 - t, n2 - v)
                    comp = (max(comp), min(comp))
                    key = min(key, comp)
            if key in seen:
                continue
            seen.add(key)
            out.append(SplitSpec.from_signature(register, *key))
    return out


def default_tolerance(truncation_error: float) -> float:
    """Purity gap demanded by the strict-inequality entanglement test."""
    return max(1e-9, 4.0 * truncation_error)


def check_mway_entanglement(
    state: PureState,
    tolerance: float | None = None,
    symmetry: bool | None = None,
    truncation_error: float | None = None,
    with_entropy: bool = False,
    bound_mode: str = "paper",
) -> MeasureReport:
    """Decide whether ``state`` is entangled across all of its modes.

    Evaluates Tr(rho^2) for every split class from
    :func:`enumerate_splits` and reports entanglement when every purity
    is below ``1 - tolerance``.  The default tolerance is
    ``max(1e-9, 4 * truncation_error)`` where the truncation error
    defaults to twice the state's recorded norm deficit.

    Parameters
    ----------
    symmetry : bool or None
        Use the (t, v) class reduction.  ``None`` enables it exactly for
        trap-structured registers.
    with_entropy : bool
        Also record per-split von Neumann entropies (may raise
        :class:`~mbent.reduce.CapacityError` on large splits).
    """
    if state.n_modes < 2:
        raise ValueError("the M-way entanglement test needs at least two modes")
    if truncation_error is None:
        truncation_error = 2.0 * state.norm_deficit
    if tolerance is None:
        tolerance = default_tolerance(truncation_error)
    if tolerance <= 0:
        raise ValueError(f"tolerance must be > 0, got {tolerance}")
    if bound_mode not in BOUND_CONSTANTS:
        raise ValueError(f"bound_mode must be one of {sorted(BOUND_CONSTANTS)}")
    if symmetry is None:
        symmetry = state.register.trap_sizes is not None

    results = []
    for split in enumerate_splits(state.register, symmetry=symmetry):
        p = purity(state, split)
        entropy = split_entropy(state, split) if with_entropy else None
        results.append(
            SplitResult(
                split=split,
                signature=split.signature(state.register),
                purity=p,
                linear_entropy=1.0 - p,
                entropy=entropy,
            )
        )

    min_sl = min(r.linear_entropy for r in results)
    entropies = [r.entropy for r in results]
    return MeasureReport(
        n_modes=state.n_modes,
        per_split=tuple(results),
        is_mway_entangled=all(r.purity < 1.0 - tolerance for r in results),
        tolerance=tolerance,
        truncation_error=truncation_error,
        min_linear_entropy=min_sl,
        entropy_bound=min_sl * BOUND_CONSTANTS[bound_mode],
        bound_mode=bound_mode,
        min_entropy=min(entropies) if all(e is not None for e in entropies) else None,
    )


def min_bipartite_entropy(
    state: PureState, symmetry: bool | None = None, dim_guard: int = DIM_GUARD
) -> float:
    """Minimum reduced von Neumann entropy over all bipartite splits (bits).

    Raises :class:`~mbent.reduce.CapacityError` when any split's smaller
    side exceeds the eigendecomposition guard; use
    :func:`min_bipartite_entropy_bound` there.
    """
    if symmetry is None:
        symmetry = state.register.trap_sizes is not None
    splits = enumerate_splits(state.register, symmetry=symmetry)
    return min(split_entropy(state, s, dim_guard=dim_guard) for s in splits)


def min_bipartite_entropy_bound(
    state: PureState, bound_mode: str = "paper", symmetry: bool | None = None
) -> float:
    """Lower bound on the minimum bipartite entropy via linear entropies.

    ``paper`` mode divides the minimum linear entropy by log2(e);
    ``tight`` mode multiplies by log2(e).  Both are valid lower bounds of
    the von Neumann entropy in bits, the latter uniformly larger.
    """
    if bound_mode not in BOUND_CONSTANTS:
        raise ValueError(f"bound_mode must be one of {sorted(BOUND_CONSTANTS)}")
    if symmetry is None:
        symmetry = state.register.trap_sizes is not None
    splits = enumerate_splits(state.register, symmetry=symmetry)
    min_sl = min(1.0 - purity(state, s) for s in splits)
    return min_sl * BOUND_CONSTANTS[bound_mode]


def npt_min_eigenvalue(rho: DensityOperator, transpose_side, dim_guard: int = DIM_GUARD) -> float:
    """Smallest eigenvalue of the partial transpose of ``rho``.

    ``transpose_side`` is a set of mode positions (indices into the
    basis occupation vectors).  A negative return certifies entanglement
    across that split; the check is sufficient only.  The operator is
    embedded into the product closure of the per-mode levels observed in
    its basis so the transpose stays representable.
    """
    if not rho.basis:
        raise ValueError("density operator has an empty basis")
    n_modes = len(rho.basis[0])
    side = sorted(set(int(i) for i in transpose_side))
    if not side or len(side) >= n_modes or any(i < 0 or i >= n_modes for i in side):
        raise ValueError(
            f"transpose side {side} must be a non-empty proper subset of the {n_modes} modes"
        )

    levels = [sorted({b[m] for b in rho.basis}) for m in range(n_modes)]
    dim = 1
    for lv in levels:
        dim *= len(lv)
    if dim > dim_guard:
        raise CapacityError(
            f"product-closure dimension {dim} exceeds guard {dim_guard}"
        )

    level_pos = [{occ: i for i, occ in enumerate(lv)} for lv in levels]

    def flat_index(occ) -> int:
        idx = 0
        for m in range(n_modes):
            idx = idx * len(levels[m]) + level_pos[m][occ[m]]
        return idx

    full = np.zeros((dim, dim), dtype=complex)
    positions = [flat_index(b) for b in rho.basis]
    for i, pi in enumerate(positions):
        for j, pj in enumerate(positions):
            full[pi, pj] = rho.matrix[i, j]

    shape = tuple(len(lv) for lv in levels)
    tensor = full.reshape(shape + shape)
    for m in side:
        tensor = np.swapaxes(tensor, m, n_modes + m)
    transposed = tensor.reshape(dim, dim)
    return float(np.linalg.eigvalsh(transposed)[0])


def mixture_density_operator(
    weights, states: list[PureState]
) -> DensityOperator:
    """Convex mixture of pure states as a DensityOperator on a shared basis."""
    if len(weights) != len(states) or not states:
        raise ValueError("need matching non-empty weights and states")
    basis = sorted({k for s in states for k in s.amplitudes})
    index = {k: i for i, k in enumerate(basis)}
    mat = np.zeros((len(basis), len(basis)), dtype=complex)
    for w, s in zip(weights, states):
        vec = np.zeros(len(basis), dtype=complex)
        for k, a in s.amplitudes.items():
            vec[index[k]] = a
        mat += w * np.outer(vec, vec.conj())
    return DensityOperator(basis=tuple(OccupationVector(b) for b in basis), matrix=mat)
