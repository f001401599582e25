"""Partial trace, purity, and entropies over bipartite splits of a pure state.

Purity is evaluated without materializing the larger marginal: the sparse
amplitude map is reshaped into a (traced-basis x kept-basis) matrix A and
the Gram matrix G = A A^dagger is formed on the smaller side; both
marginals of a pure state share the nonzero spectrum of G, so
Tr(rho^2) = Tr(G^2) and S(rho) can be read off G's eigenvalues.

``com_split_purity`` is a fast path for the two-trap centre-of-mass
squeezed state: a group of atoms couples to the rest only through its
own centre-of-mass mode, so a split that traces t atoms from one trap
and v from the other reduces to four effective modes regardless of N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.stats import binom as _binom

from .fock import ModeRegister, OccupationVector
from .states import PureState

EIG_FLOOR = 1e-12
DIM_GUARD = 4096


class CapacityError(RuntimeError):
    """Operation exceeds the dense eigendecomposition guard."""


@dataclass(frozen=True)
class SplitSpec:
    """A bipartite split of a mode register, named by the traced side.

    ``traced`` must be a non-empty proper subset of ``range(n_modes)``.
    For two-trap registers the split class is summarized by the signature
    (t, v): the number of traced modes in each trap.
    """

    n_modes: int
    traced: frozenset = field()

    def __post_init__(self) -> None:
        traced = frozenset(int(i) for i in self.traced)
        object.__setattr__(self, "traced", traced)
        if not traced:
            raise ValueError("traced set must be non-empty")
        if not traced < set(range(self.n_modes)):
            raise ValueError(
                f"traced set {sorted(traced)} must be a proper subset of range({self.n_modes})"
            )

    @property
    def kept(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n_modes) if i not in self.traced)

    def signature(self, register: ModeRegister) -> tuple[int, int] | None:
        """(t, v) trap membership counts of the traced set, if trap-structured."""
        if register.trap_sizes is None:
            return None
        n1, _ = register.trap_sizes
        t = sum(1 for i in self.traced if i < n1)
        return (t, len(self.traced) - t)

    @property
    def label(self) -> str:
        return "{" + ",".join(str(i) for i in sorted(self.traced)) + "}"

    @classmethod
    def from_signature(cls, register: ModeRegister, t: int, v: int) -> "SplitSpec":
        """Canonical representative tracing the first t and v atoms per trap."""
        if register.trap_sizes is None:
            raise ValueError("signature splits need a trap-structured register")
        n1, n2 = register.trap_sizes
        if not (0 <= t <= n1 and 0 <= v <= n2):
            raise ValueError(f"signature ({t},{v}) out of range for traps {register.trap_sizes}")
        traced = frozenset(range(t)) | frozenset(range(n1, n1 + v))
        return cls(n_modes=register.n_modes, traced=traced)


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian density matrix over an explicit ordered occupation basis."""

    basis: tuple
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "basis", tuple(OccupationVector(b) for b in self.basis))
        dim = len(self.basis)
        if mat.shape != (dim, dim):
            raise ValueError(f"matrix shape {mat.shape} does not match basis size {dim}")
        if not np.allclose(mat, mat.conj().T, atol=1e-12, rtol=0.0):
            raise ValueError("matrix is not Hermitian within 1e-12")
        trace = float(np.trace(mat).real)
        if abs(trace - 1.0) > 1e-10:
            raise ValueError(f"trace is {trace}, expected 1 within 1e-10")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def from_pure(cls, state: PureState) -> "DensityOperator":
        """Projector |psi><psi| over the state's support basis."""
        basis = sorted(state.amplitudes)
        vec = np.array([state.amplitudes[b] for b in basis])
        return cls(basis=tuple(basis), matrix=np.outer(vec, vec.conj()))


def _amplitude_matrix(state: PureState, split: SplitSpec):
    """Sparse (traced-basis x kept-basis) amplitude matrix plus both bases."""
    if split.n_modes != state.n_modes:
        raise ValueError(
            f"split over {split.n_modes} modes does not match state with {state.n_modes}"
        )
    traced = sorted(split.traced)
    kept = list(split.kept)
    traced_index: dict = {}
    kept_index: dict = {}
    rows: list[int] = []
    cols: list[int] = []
    data: list = []
    for key, amp in state.amplitudes.items():
        t_key = tuple(key[i] for i in traced)
        k_key = tuple(key[i] for i in kept)
        row = traced_index.setdefault(t_key, len(traced_index))
        col = kept_index.setdefault(k_key, len(kept_index))
        rows.append(row)
        cols.append(col)
        data.append(amp)
    matrix = sp.csr_matrix(
        (np.asarray(data), (rows, cols)), shape=(len(traced_index), len(kept_index))
    )
    traced_basis = sorted(traced_index, key=traced_index.get)
    kept_basis = sorted(kept_index, key=kept_index.get)
    return matrix, traced_basis, kept_basis


def partial_trace(state: PureState, split: SplitSpec) -> DensityOperator:
    """Reduced density operator on the kept modes of ``split``.

    The basis is restricted to kept-mode occupations that actually occur
    in the state's support; the full tensor space is never allocated.
    """
    amp, _, kept_basis = _amplitude_matrix(state, split)
    rho = (amp.conj().T @ amp).toarray().conj()
    idx = sorted(range(len(kept_basis)), key=lambda i: kept_basis[i])
    basis = tuple(kept_basis[i] for i in idx)
    rho = rho[np.ix_(idx, idx)]
    return DensityOperator(basis=basis, matrix=rho)


def purity(state: PureState, split: SplitSpec) -> float:
    """Tr(rho^2) of either marginal of ``state`` across ``split``.

    Formed from the Gram matrix of the amplitude matrix on whichever
    side spans fewer basis states, identical for both sides because the
    marginals of a pure state share a spectrum.
    """
    amp, traced_basis, kept_basis = _amplitude_matrix(state, split)
    if len(traced_basis) <= len(kept_basis):
        gram = amp @ amp.conj().T
    else:
        gram = amp.conj().T @ amp
    return float(gram.multiply(gram.conj()).sum().real)


def linear_entropy(state: PureState, split: SplitSpec) -> float:
    """S_L = 1 - Tr(rho^2) across ``split``, in [0, 1)."""
    return 1.0 - purity(state, split)


def split_spectrum(state: PureState, split: SplitSpec, dim_guard: int = DIM_GUARD) -> np.ndarray:
    """Eigenvalues shared by both marginals of ``state`` across ``split``.

    Diagonalizes the Gram matrix on the smaller side; raises
    :class:`CapacityError` when even that side exceeds ``dim_guard``.
    """
    amp, traced_basis, kept_basis = _amplitude_matrix(state, split)
    small = min(len(traced_basis), len(kept_basis))
    if small > dim_guard:
        raise CapacityError(
            f"smaller split side spans {small} basis states (> {dim_guard}); "
            "use the linear-entropy bound instead"
        )
    if len(traced_basis) <= len(kept_basis):
        gram = (amp @ amp.conj().T).toarray()
    else:
        gram = (amp.conj().T @ amp).toarray()
    return np.linalg.eigvalsh(gram)


def entropy_from_eigenvalues(eigenvalues: np.ndarray) -> float:
    """Shannon entropy in bits of an eigenvalue distribution.

    Eigenvalues at or below the floor 1e-12 are dropped (0 log 0 := 0).
    """
    lam = np.asarray(eigenvalues, dtype=float)
    lam = lam[lam > EIG_FLOOR]
    if lam.size == 0:
        return 0.0
    return float(max(0.0, -np.sum(lam * np.log2(lam))))


def von_neumann_entropy(rho: DensityOperator, dim_guard: int = DIM_GUARD) -> float:
    """S(rho) = -Tr(rho log2 rho) in bits via dense Hermitian eigensolve.

    Raises :class:`CapacityError` above the dimension guard; the caller
    should fall back to the linear-entropy bound there.
    """
    if rho.dim > dim_guard:
        raise CapacityError(
            f"operator dimension {rho.dim} exceeds guard {dim_guard}; "
            "use the linear-entropy bound instead"
        )
    return entropy_from_eigenvalues(np.linalg.eigvalsh(rho.matrix))


def split_entropy(state: PureState, split: SplitSpec, dim_guard: int = DIM_GUARD) -> float:
    """Von Neumann entropy in bits of either marginal across ``split``."""
    return entropy_from_eigenvalues(split_spectrum(state, split, dim_guard=dim_guard))


def com_split_purity(r: float, n_atoms_per_trap: int, nmax: int, t: int, v: int) -> float:
    """Split-class purity of the centre-of-mass squeezed state, no state build.

    Tracing the first ``t`` atoms of trap one and the first ``v`` of trap
    two touches each trap only through the centre-of-mass mode of the
    traced group: a centre-of-mass number state scatters binomially onto
    (traced-group, kept-group) collective excitations with weight
    t/n per traced-group quantum.  The resulting four-effective-mode
    amplitude matrix is formed sparsely and Tr(G^2) returned, for the
    truncated state renormalized at ``nmax``.
    """
    n = n_atoms_per_trap
    if not (0 <= t <= n and 0 <= v <= n and 1 <= t + v <= n):
        raise ValueError(f"signature ({t},{v}) is not a valid split class for n={n}")
    if r == 0.0:
        return 1.0
    lam = math.tanh(r) ** 2
    weight_sq = np.array([lam**k for k in range(nmax + 1)])
    weight_sq *= (1.0 - lam) / (1.0 - lam ** (nmax + 1))
    weight = np.sqrt(weight_sq)

    tau1 = t / n
    tau2 = v / n
    dim = nmax + 1
    rows: list[int] = []
    cols: list[int] = []
    data: list[float] = []
    for cap_n in range(nmax + 1):
        ks = np.arange(cap_n + 1)
        b1 = np.sqrt(_binom.pmf(ks, cap_n, tau1))
        b2 = np.sqrt(_binom.pmf(ks, cap_n, tau2))
        for k1 in range(cap_n + 1):
            if b1[k1] == 0.0:
                continue
            base = weight[cap_n] * b1[k1]
            for k2 in range(cap_n + 1):
                if b2[k2] == 0.0:
                    continue
                rows.append(k1 * dim + k2)
                cols.append((cap_n - k1) * dim + (cap_n - k2))
                data.append(base * b2[k2])
    amp = sp.csr_matrix((data, (rows, cols)), shape=(dim * dim, dim * dim))
    gram = amp @ amp.T
    return float(gram.multiply(gram).sum())
