"""Independent oracles for the test suite.

Everything here is deliberately written against different machinery than
the package under test: exhaustive enumeration instead of recursion,
exact rational arithmetic instead of log-gamma, dense tensor
contractions instead of sparse Gram matrices, and closed-form geometric
or Gaussian expressions instead of basis sums.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import numpy as np


def compositions_by_filter(total: int, parts: int) -> list[tuple[int, ...]]:
    """All compositions of ``total`` into ``parts``, by brute-force filter."""
    return [
        combo
        for combo in product(range(total + 1), repeat=parts)
        if sum(combo) == total
    ]


def com_coefficient_exact(nvec, total: int) -> float:
    """sqrt(total!/(prod n_i! * N**total)) via exact rational arithmetic."""
    denom = math.prod(math.factorial(n) for n in nvec) * len(nvec) ** total
    return math.sqrt(Fraction(math.factorial(total), denom))


def dense_state_tensor(amplitudes: dict, n_modes: int, cutoff: int) -> np.ndarray:
    """Dense (cutoff+1)^n_modes tensor of a sparse amplitude map."""
    tensor = np.zeros((cutoff + 1,) * n_modes, dtype=complex)
    for key, amp in amplitudes.items():
        tensor[tuple(key)] = amp
    return tensor


def dense_reduced_density(amplitudes: dict, n_modes: int, cutoff: int, traced) -> np.ndarray:
    """Reduced density matrix on the kept modes via dense tensordot."""
    psi = dense_state_tensor(amplitudes, n_modes, cutoff)
    axes = sorted(traced)
    rho = np.tensordot(psi, psi.conj(), axes=(axes, axes))
    dim = (cutoff + 1) ** (n_modes - len(axes))
    return rho.reshape(dim, dim)


def dense_purity(amplitudes: dict, n_modes: int, cutoff: int, traced) -> float:
    rho = dense_reduced_density(amplitudes, n_modes, cutoff, traced)
    return float(np.trace(rho @ rho).real)


def dense_entropy_bits(amplitudes: dict, n_modes: int, cutoff: int, traced) -> float:
    rho = dense_reduced_density(amplitudes, n_modes, cutoff, traced)
    lam = np.linalg.eigvalsh(rho)
    lam = lam[lam > 1e-12]
    return float(-np.sum(lam * np.log2(lam)))


# ---------------------------------------------------------------------------
# closed forms for the two-trap centre-of-mass squeezed state
# ---------------------------------------------------------------------------

def thermal_purity_exact(r: float) -> float:
    """Untruncated purity after tracing one entire trap: (1-l)/(1+l), l=tanh^2 r."""
    lam = math.tanh(r) ** 2
    return (1.0 - lam) / (1.0 + lam)


def thermal_purity_truncated(r: float, nmax: int) -> float:
    """Truncated-renormalized full-trap purity by explicit geometric sums."""
    lam = math.tanh(r) ** 2
    if lam == 0.0:
        return 1.0
    probs = np.array([(1 - lam) * lam**n for n in range(nmax + 1)])
    probs /= probs.sum()
    return float(np.sum(probs**2))


def tmsv_entropy_bits(r: float) -> float:
    """Untruncated full-trap von Neumann entropy in bits."""
    if r == 0.0:
        return 0.0
    ch2 = math.cosh(r) ** 2
    sh2 = math.sinh(r) ** 2
    return ch2 * math.log2(ch2) - sh2 * math.log2(sh2)


def binary_entropy_bits(c: float) -> float:
    if c in (0.0, 1.0):
        return 0.0
    return -c * math.log2(c) - (1 - c) * math.log2(1 - c)


def gaussian_split_purity(r: float, n_atoms: int, t: int, v: int) -> float:
    """Untruncated purity of the (t, v) split class, from Gaussian covariances.

    The traced group of each trap taps the trap's centre-of-mass mode
    with transmittance t/n (resp. v/n); the purity of the resulting
    two-mode Gaussian marginal follows from its covariance determinant.
    """
    sh2 = math.sinh(r) ** 2
    ch2 = math.cosh(r) ** 2
    tau1 = t / n_atoms
    tau2 = v / n_atoms
    return 1.0 / ((1 + 2 * tau1 * sh2) * (1 + 2 * tau2 * sh2) - 4 * tau1 * tau2 * sh2 * ch2)


# ---------------------------------------------------------------------------
# literal quadruple-sum purity evaluator for the two-trap squeezed state
# ---------------------------------------------------------------------------

def _projected_kept_vector(comps_with_coeffs, prefix, prefix_len):
    """Kept-mode amplitudes of one trap after projecting the traced prefix."""
    out: dict[tuple[int, ...], float] = {}
    for comp, coeff in comps_with_coeffs:
        if comp[:prefix_len] == prefix:
            out[comp[prefix_len:]] = coeff
    return out


def quadruple_sum_purity(r: float, n_atoms: int, nmax: int, t: int, v: int) -> float:
    """Tr(rho^2) of the (t, v) split by the explicit four-index mode sum.

    Tracing the first ``t`` atoms of trap one and first ``v`` of trap two
    with occupations P leaves kept-mode vectors u(P; capN); the squared
    trace is the four-fold sum over excitation numbers of the weighted
    overlaps of those vectors.  Exponential in nmax; only for tiny cases.
    """
    from itertools import product as iproduct

    tanh_r, cosh_r = math.tanh(r), math.cosh(r)
    tail = tanh_r ** (2 * (nmax + 1))
    w = [tanh_r**k / cosh_r / math.sqrt(1 - tail) for k in range(nmax + 1)]

    comps = {}
    for cap in range(nmax + 1):
        cs = compositions_by_filter(cap, n_atoms)
        comps[cap] = [(c, com_coefficient_exact(c, cap)) for c in cs]

    # u[(P, cap)] maps kept occupations to amplitudes, per trap then combined
    p_values = list(iproduct(range(nmax + 1), repeat=t + v))

    def kept_vector(p_occ, cap):
        left = _projected_kept_vector(comps[cap], p_occ[:t], t)
        right = _projected_kept_vector(comps[cap], p_occ[t:], v)
        return {
            (lk + rk): lv * rv
            for lk, lv in left.items()
            for rk, rv in right.items()
        }

    vectors = {
        (p_occ, cap): kept_vector(p_occ, cap)
        for p_occ in p_values
        for cap in range(nmax + 1)
    }

    def dot(a: dict, b: dict) -> float:
        if len(b) < len(a):
            a, b = b, a
        return sum(val * b.get(key, 0.0) for key, val in a.items())

    total = 0.0
    caps = range(nmax + 1)
    for p_occ in p_values:
        for q_occ in p_values:
            for cap_n in caps:
                u_pn = vectors[(p_occ, cap_n)]
                if not u_pn:
                    continue
                for cap_np in caps:
                    u_pnp = vectors[(p_occ, cap_np)]
                    if not u_pnp:
                        continue
                    for cap_m in caps:
                        u_qm = vectors[(q_occ, cap_m)]
                        if not u_qm:
                            continue
                        inner1 = dot(u_pnp, u_qm)
                        if inner1 == 0.0:
                            continue
                        for cap_mp in caps:
                            u_qmp = vectors[(q_occ, cap_mp)]
                            if not u_qmp:
                                continue
                            inner2 = dot(u_qmp, u_pn)
                            if inner2 == 0.0:
                                continue
                            total += (
                                w[cap_n] * w[cap_np] * w[cap_m] * w[cap_mp] * inner1 * inner2
                            )
    return total


# ---------------------------------------------------------------------------
# partial transpose for small product systems
# ---------------------------------------------------------------------------

def dense_pt_min_eig(matrix: np.ndarray, dims: list[int], side) -> float:
    """Min eigenvalue after transposing ``side`` subsystems of a dense matrix."""
    n = len(dims)
    tensor = matrix.reshape(tuple(dims) + tuple(dims))
    for m in sorted(side):
        tensor = np.swapaxes(tensor, m, n + m)
    dim = int(np.prod(dims))
    return float(np.linalg.eigvalsh(tensor.reshape(dim, dim))[0])
