"""Fock-basis combinatorics for registers of trapped-atom vibrational modes.

Occupation vectors label number-state basis elements, compositions
enumerate the occupation vectors of a fixed total excitation number, and
``com_coefficient`` gives the amplitude with which a centre-of-mass
excitation number state of ``N`` atoms projects onto an individual-atom
occupation vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class OccupationVector(tuple):
    """Per-mode phonon counts labeling a Fock basis state.

    An immutable tuple of non-negative integers, one entry per mode.
    Instances compare and hash like plain tuples, so they interoperate
    with tuple keys in sparse amplitude maps.
    """

    __slots__ = ()

    def __new__(cls, counts) -> "OccupationVector":
        vec = super().__new__(cls, (int(c) for c in counts))
        if any(c < 0 for c in vec):
            raise ValueError(f"occupation counts must be non-negative, got {tuple(vec)}")
        return vec

    def total(self) -> int:
        """Total phonon number (exact integer sum of the entries)."""
        return sum(self)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"OccupationVector{tuple(self)!r}"


@dataclass(frozen=True)
class ModeRegister:
    """Mode bookkeeping for a state: register size, cutoff, trap layout.

    Parameters
    ----------
    n_modes : int
        Number of modes F in the register.
    local_cutoff : int
        Maximum phonon number any single mode may hold.
    trap_sizes : tuple[int, int] or None
        When the register represents two groups of atoms, the pair
        (N1, N2) of atom counts per trap; modes 0..N1-1 belong to the
        first trap and N1..N1+N2-1 to the second.  ``None`` for flat
        registers with no trap structure.
    """

    n_modes: int
    local_cutoff: int
    trap_sizes: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.n_modes < 1:
            raise ValueError(f"register needs at least one mode, got {self.n_modes}")
        if self.local_cutoff < 0:
            raise ValueError(f"local_cutoff must be >= 0, got {self.local_cutoff}")
        if self.trap_sizes is not None:
            n1, n2 = self.trap_sizes
            if n1 < 1 or n2 < 1:
                raise ValueError(f"trap sizes must be >= 1, got {self.trap_sizes}")
            if n1 + n2 != self.n_modes:
                raise ValueError(
                    f"trap sizes {self.trap_sizes} do not sum to n_modes={self.n_modes}"
                )

    @classmethod
    def traps(cls, n1: int, n2: int, local_cutoff: int) -> "ModeRegister":
        """Register for two groups of atoms of sizes ``n1`` and ``n2``."""
        return cls(n_modes=n1 + n2, local_cutoff=local_cutoff, trap_sizes=(int(n1), int(n2)))

    @classmethod
    def flat(cls, n_modes: int, local_cutoff: int) -> "ModeRegister":
        """Register of ``n_modes`` modes with no trap structure."""
        return cls(n_modes=int(n_modes), local_cutoff=int(local_cutoff))

    def valid_key(self, key) -> bool:
        """True when ``key`` is a legal occupation vector for this register."""
        return (
            len(key) == self.n_modes
            and all(0 <= c <= self.local_cutoff for c in key)
        )


def enumerate_compositions(total: int, parts: int) -> list[OccupationVector]:
    """All length-``parts`` vectors of non-negative integers summing to ``total``.

    The output is in ascending lexicographic order and contains each
    composition exactly once; its length is C(total+parts-1, parts-1).

    Parameters
    ----------
    total : int
        The fixed sum (>= 0).
    parts : int
        The number of entries per vector (>= 1).
    """
    if parts < 1:
        raise ValueError(f"parts must be >= 1, got {parts}")
    if total < 0:
        raise ValueError(f"total must be >= 0, got {total}")
    out: list[OccupationVector] = []
    vec = [0] * parts

    def fill(pos: int, remaining: int) -> None:
        if pos == parts - 1:
            vec[pos] = remaining
            out.append(OccupationVector(vec))
            return
        for first in range(remaining + 1):
            vec[pos] = first
            fill(pos + 1, remaining - first)

    fill(0, total)
    return out


def com_coefficient(nvec, total: int) -> float:
    """Overlap of a centre-of-mass number state with an occupation vector.

    For ``N`` atoms sharing ``total`` centre-of-mass phonons, the
    amplitude on the individual-atom occupation vector ``nvec`` is

        sqrt( total! / (n_1! n_2! ... n_N! * N**total) )

    evaluated through log-factorials so that totals up to at least 64
    stay inside float range.

    Raises
    ------
    ValueError
        If the entries of ``nvec`` do not sum to ``total``.
    """
    nvec = OccupationVector(nvec)
    if nvec.total() != total:
        raise ValueError(
            f"occupation vector sums to {nvec.total()}, expected total {total}"
        )
    n_modes = len(nvec)
    log_c2 = (
        math.lgamma(total + 1)
        - sum(math.lgamma(n + 1) for n in nvec)
        - total * math.log(n_modes)
    )
    return math.exp(0.5 * log_c2)
