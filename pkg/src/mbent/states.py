"""Sparse pure-state construction for multi-mode phonon registers.

States are sparse maps from occupation vectors to amplitudes over a
declared :class:`~mbent.fock.ModeRegister`.  Builders normalize over the
stored (possibly truncated) support and record the analytically known
discarded weight in ``norm_deficit``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .fock import ModeRegister, OccupationVector, com_coefficient, enumerate_compositions

NORM_ATOL = 1e-12


class StateFileError(ValueError):
    """A state file failed to parse; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class StateNormError(ValueError):
    """A parsed state file is not unit-norm within tolerance."""


@dataclass(frozen=True)
class PureState:
    """Sparse pure state over a mode register.

    ``amplitudes`` maps occupation tuples to nonzero complex (or real)
    amplitudes; the stored support is unit-norm and ``norm_deficit``
    holds the weight of any analytically truncated tail, so that
    sum(|amplitude|^2) + norm_deficit = 1 up to float error.  Treated as
    immutable after construction.
    """

    register: ModeRegister
    amplitudes: dict = field(repr=False)
    norm_deficit: float = 0.0

    def __post_init__(self) -> None:
        if not self.amplitudes:
            raise ValueError("state needs at least one amplitude")
        if self.norm_deficit < 0:
            raise ValueError(f"norm_deficit must be >= 0, got {self.norm_deficit}")
        for key, amp in self.amplitudes.items():
            if not self.register.valid_key(key):
                raise ValueError(f"key {key} violates register {self.register}")
            if amp == 0:
                raise ValueError(f"zero amplitude stored for key {key}")
        norm_sq = self.norm_sq()
        if abs(norm_sq - 1.0) > 1e-10:
            raise ValueError(f"stored support has squared norm {norm_sq}, expected 1")

    @property
    def n_modes(self) -> int:
        return self.register.n_modes

    def norm_sq(self) -> float:
        """Squared norm of the stored support (1 up to float error)."""
        return math.fsum(abs(a) ** 2 for a in self.amplitudes.values())

    def items(self):
        return self.amplitudes.items()


@dataclass(frozen=True)
class SqueezedPairSpec:
    """Parameters of the two-trap centre-of-mass squeezed state.

    ``r`` is the (dimensionless, non-negative) squeezing parameter,
    ``n_atoms_per_trap`` the atom count N of each trap, and ``nmax`` the
    centre-of-mass excitation cutoff; the discarded tail then carries
    weight tanh(r)**(2*(nmax+1)).
    """

    r: float
    n_atoms_per_trap: int
    nmax: int

    def __post_init__(self) -> None:
        if self.r < 0:
            raise ValueError(f"squeezing parameter must be >= 0, got {self.r}")
        if self.n_atoms_per_trap < 1:
            raise ValueError(f"need at least one atom per trap, got {self.n_atoms_per_trap}")
        if self.nmax < 0:
            raise ValueError(f"nmax must be >= 0, got {self.nmax}")

    @property
    def tail_weight(self) -> float:
        return math.tanh(self.r) ** (2 * (self.nmax + 1))


def com_squeezed_state(spec: SqueezedPairSpec) -> PureState:
    """Two-trap centre-of-mass squeezed state in the per-atom number basis.

    The centre-of-mass modes of the two traps carry two-mode-squeezed
    correlations: the occupation pair (n, m) with per-trap totals both
    equal to some cap-N <= nmax receives amplitude

        tanh(r)**capN / cosh(r) * c(n, capN) * c(m, capN),

    where ``c`` is :func:`~mbent.fock.com_coefficient`.  The truncated
    support is rescaled to unit norm and the discarded geometric tail
    tanh(r)**(2*(nmax+1)) is recorded as ``norm_deficit``.
    """
    n = spec.n_atoms_per_trap
    tanh_r = math.tanh(spec.r)
    cosh_r = math.cosh(spec.r)
    deficit = spec.tail_weight
    rescale = 1.0 / math.sqrt(1.0 - deficit)

    amplitudes: dict = {}
    for cap_n in range(spec.nmax + 1):
        weight = tanh_r**cap_n / cosh_r * rescale
        if weight == 0.0:
            continue
        comps = enumerate_compositions(cap_n, n)
        coeffs = [com_coefficient(c, cap_n) for c in comps]
        for left, c_left in zip(comps, coeffs):
            w_left = weight * c_left
            for right, c_right in zip(comps, coeffs):
                amplitudes[tuple(left) + tuple(right)] = w_left * c_right

    register = ModeRegister.traps(n, n, local_cutoff=spec.nmax)
    return PureState(register=register, amplitudes=amplitudes, norm_deficit=deficit)


def generalized_ghz(n_parties: int, c: float) -> PureState:
    """Two-branch GHZ-family state sqrt(c)|0...0> + sqrt(1-c)|1...1>.

    ``n_parties`` >= 2 qubit-like modes (cutoff 1); ``c`` in [0, 1].
    Branches with zero amplitude are not stored.
    """
    if n_parties < 2:
        raise ValueError(f"need at least two modes, got {n_parties}")
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"branch weight c must lie in [0, 1], got {c}")
    amplitudes: dict = {}
    if c > 0.0:
        amplitudes[(0,) * n_parties] = math.sqrt(c)
    if c < 1.0:
        amplitudes[(1,) * n_parties] = math.sqrt(1.0 - c)
    register = ModeRegister.flat(n_parties, local_cutoff=1)
    return PureState(register=register, amplitudes=amplitudes)


def basis_state(counts, local_cutoff: int | None = None) -> PureState:
    """Single number-state |counts> with amplitude 1."""
    vec = OccupationVector(counts)
    cutoff = max(max(vec), 1) if local_cutoff is None else local_cutoff
    register = ModeRegister.flat(len(vec), local_cutoff=cutoff)
    return PureState(register=register, amplitudes={tuple(vec): 1.0})


def product_state(states: list[PureState]) -> PureState:
    """Tensor product of states on disjoint registers (concatenated).

    The resulting flat register has the concatenated mode count and the
    maximum of the factor cutoffs; the combined norm deficit is
    1 - prod(1 - deficit_i).
    """
    if not states:
        raise ValueError("product of zero states is undefined")
    amplitudes: dict = {(): 1.0}
    for state in states:
        combined: dict = {}
        for key, amp in amplitudes.items():
            for k2, a2 in state.amplitudes.items():
                combined[key + tuple(k2)] = amp * a2
        amplitudes = combined
    n_modes = sum(s.n_modes for s in states)
    cutoff = max(s.register.local_cutoff for s in states)
    kept_weight = 1.0
    for s in states:
        kept_weight *= 1.0 - s.norm_deficit
    register = ModeRegister.flat(n_modes, local_cutoff=cutoff)
    return PureState(register=register, amplitudes=amplitudes, norm_deficit=1.0 - kept_weight)


def predicted_support_size(n_atoms_per_trap: int, nmax: int) -> int:
    """Number of amplitudes com_squeezed_state would store (exact count)."""
    return sum(
        math.comb(cap_n + n_atoms_per_trap - 1, n_atoms_per_trap - 1) ** 2
        for cap_n in range(nmax + 1)
    )


def write_state_file(state: PureState, path) -> None:
    """Write a state as text: header line, then one line per basis term.

    Format: ``modes=<F> cutoff=<c>`` followed by lines of space-separated
    occupations and the real and imaginary amplitude parts, printed with
    17 significant digits so values round-trip exactly.
    """
    lines = [f"modes={state.n_modes} cutoff={state.register.local_cutoff}"]
    for key in sorted(state.amplitudes):
        amp = complex(state.amplitudes[key])
        occ = " ".join(str(c) for c in key)
        lines.append(f"{occ} {amp.real:.17g} {amp.imag:.17g}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_state_file(path, norm_atol: float = 1e-6) -> PureState:
    """Read a state file written by :func:`write_state_file`.

    The stored amplitudes must be unit-norm within ``norm_atol``; small
    deviations beyond float round-off are rescaled away.  Parse problems
    raise :class:`StateFileError` with the offending line number.
    """
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read().splitlines()
    if not raw:
        raise StateFileError("empty state file", 1)

    header = raw[0].split()
    try:
        fields = dict(part.split("=", 1) for part in header)
        n_modes = int(fields["modes"])
        cutoff = int(fields["cutoff"])
    except (ValueError, KeyError) as exc:
        raise StateFileError(f"bad header {raw[0]!r}: {exc}", 1) from None

    amplitudes: dict = {}
    for lineno, line in enumerate(raw[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != n_modes + 2:
            raise StateFileError(
                f"expected {n_modes} occupations plus 2 amplitude parts, got {len(parts)} fields",
                lineno,
            )
        try:
            occ = tuple(int(p) for p in parts[:n_modes])
            re_part = float(parts[n_modes])
            im_part = float(parts[n_modes + 1])
        except ValueError as exc:
            raise StateFileError(str(exc), lineno) from None
        if any(c < 0 or c > cutoff for c in occ):
            raise StateFileError(f"occupation {occ} outside cutoff {cutoff}", lineno)
        if occ in amplitudes:
            raise StateFileError(f"duplicate basis term {occ}", lineno)
        amp = complex(re_part, im_part) if im_part != 0.0 else re_part
        if amp != 0:
            amplitudes[occ] = amp
    if not amplitudes:
        raise StateFileError("state file contains no nonzero amplitudes", len(raw))

    norm_sq = math.fsum(abs(a) ** 2 for a in amplitudes.values())
    if abs(norm_sq - 1.0) > norm_atol:
        raise StateNormError(
            f"state has squared norm {norm_sq}, not unit within {norm_atol}"
        )
    if abs(norm_sq - 1.0) > NORM_ATOL:
        scale = 1.0 / math.sqrt(norm_sq)
        amplitudes = {k: a * scale for k, a in amplitudes.items()}

    register = ModeRegister.flat(n_modes, local_cutoff=cutoff)
    return PureState(register=register, amplitudes=amplitudes)
