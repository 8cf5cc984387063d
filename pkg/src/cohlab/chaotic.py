"""Chaotic (maximum-entropy, Fock-diagonal) states and their correlators.

Each mode carries an independent thermal weight distribution fixed by its
mean occupation M: geometric weights (1/(1+M)) (M/(1+M))^n for bosons, the
two-point distribution (1-M, M) for fermions.  Higher-order correlators come
from the first-order kernel via the permutation-sum formula: permanent of
the kernel matrix for bosons, determinant for fermions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fock import (
    CutoffTooSmallError,
    Statistics,
    WeightedMixture,
    enumerate_basis,
)

MAX_WICK_ORDER = 8
MAX_PERMANENT_SIZE = 12


@dataclass(frozen=True)
class ChaoticModeSpec:
    """Mean occupation per mode of a chaotic field."""

    mean_occupations: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "mean_occupations", tuple(float(m) for m in self.mean_occupations)
        )
        if any(m < 0 for m in self.mean_occupations):
            raise ValueError("mean occupations must be nonnegative")

    @property
    def num_modes(self) -> int:
        return len(self.mean_occupations)

    @classmethod
    def uniform(cls, num_modes: int, mean_occupation: float) -> "ChaoticModeSpec":
        return cls((mean_occupation,) * num_modes)

    def boltzmann_parameter(self, mode: int, statistics: Statistics) -> float:
        """xi with e^{-xi} = M/(1+M) (boson) or M/(1-M) (fermion)."""
        m = self.mean_occupations[mode]
        if statistics is Statistics.BOSON:
            return -math.log(m / (1.0 + m))
        if m >= 1.0:
            raise ValueError("fermion mean occupation must be < 1")
        return -math.log(m / (1.0 - m))

    def mode_weights(self, mode: int, statistics: Statistics, cutoff: int | None = None):
        """Occupation-number weights of one mode; boson weights run to cutoff."""
        m = self.mean_occupations[mode]
        if statistics is Statistics.FERMION:
            if m >= 1.0:
                raise ValueError("fermion mean occupation must be < 1")
            return np.array([1.0 - m, m])
        q = m / (1.0 + m)
        return (1.0 - q) * q ** np.arange(cutoff)


def chaotic_mixture(
    spec: ChaoticModeSpec,
    statistics: Statistics,
    boson_cutoff: int | None = None,
    tail_tol: float = 1e-10,
) -> WeightedMixture:
    """Product of per-mode thermal weight distributions as a weighted mixture.

    Boson weights above the cutoff are renormalized away after checking the
    per-mode tail q^cutoff against ``tail_tol``.
    """
    if statistics is Statistics.BOSON:
        for mode, m in enumerate(spec.mean_occupations):
            q = m / (1.0 + m)
            tail = q**boson_cutoff
            if tail >= tail_tol:
                raise CutoffTooSmallError(
                    f"mode {mode}: cutoff {boson_cutoff} leaves thermal tail "
                    f"{tail:.3e} >= {tail_tol:.1e}",
                    tail=tail,
                )
    basis = enumerate_basis(spec.num_modes, statistics, boson_cutoff)
    per_mode = [
        spec.mode_weights(mode, statistics, boson_cutoff)
        for mode in range(spec.num_modes)
    ]
    weights = np.ones(1)
    for w in per_mode:
        weights = np.kron(w, weights)  # mode k varies with stride dim^k
    weights = weights / weights.sum()
    components = tuple(
        (float(weights[i]), basis.occupations_of(i)) for i in range(basis.dimension)
    )
    return WeightedMixture(basis, components)


def chaotic_first_order(spec: ChaoticModeSpec, mode_basis, x, y) -> complex:
    """First-order kernel sum_i M_i phi_i(x)* phi_i(y); same for both statistics."""
    if spec.num_modes != mode_basis.num_modes:
        raise ValueError("mode count mismatch between spec and mode basis")
    phi_x = mode_basis.mode_matrix(x)[0]
    phi_y = mode_basis.mode_matrix(y)[0]
    m = np.asarray(spec.mean_occupations)
    return complex(np.sum(m * np.conj(phi_x) * phi_y))


def permanent(matrix: np.ndarray) -> complex:
    """Permanent by Ryser's inclusion-exclusion with Gray-code updates."""
    a = np.asarray(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("permanent requires a square matrix")
    n = a.shape[0]
    if n > MAX_PERMANENT_SIZE:
        raise ValueError(f"permanent limited to {MAX_PERMANENT_SIZE}x{MAX_PERMANENT_SIZE}")
    if n == 0:
        return 1.0 + 0.0j
    row_sums = np.zeros(n, dtype=np.complex128)
    total = 0.0 + 0.0j
    gray = 0
    sign = 1.0
    for step in range(1, 1 << n):
        new_gray = step ^ (step >> 1)
        changed_bit = (gray ^ new_gray).bit_length() - 1
        if new_gray & (1 << changed_bit):
            row_sums += a[:, changed_bit]
        else:
            row_sums -= a[:, changed_bit]
        gray = new_gray
        subset_size = gray.bit_count()
        term = np.prod(row_sums)
        total += term if (n - subset_size) % 2 == 0 else -term
    return complex(total)


def chaotic_nth_order(
    spec: ChaoticModeSpec, mode_basis, pts, statistics: Statistics
):
    """n-th-order chaotic correlator from the first-order kernel.

    Builds the matrix K[a, b] = G1(x_a, y_b) over the point tuple (ys taken in
    the reversed stored order so index b matches x-index pairing) and returns
    its permanent (bosons) or determinant (fermions).
    """
    from .correlators import CorrelatorResult

    n = pts.order
    if n > MAX_WICK_ORDER:
        raise ValueError(f"order limited to {MAX_WICK_ORDER}")
    ys = tuple(reversed(pts.ys))  # y_1..y_n
    kmat = np.empty((n, n), dtype=np.complex128)
    for a, x in enumerate(pts.xs):
        for b, y in enumerate(ys):
            kmat[a, b] = chaotic_first_order(spec, mode_basis, x, y)
    if statistics is Statistics.BOSON:
        value = permanent(kmat)
    else:
        value = complex(np.linalg.det(kmat))
    return CorrelatorResult(value, n, "wick")
