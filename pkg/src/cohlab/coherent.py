"""Coherent-state constructions for both statistics.

Bosons get the standard number-state expansion of the annihilation-operator
eigenstate.  Fermions get the single-mode displaced vacuum
cos|a| |0> + sin|a| e^{i arg a} |1>, its multimode ordered products (one per
mode permutation), and the permutation average.  The multimode states are
built from closed-form subset amplitudes:

    amp(S) = sgn(S, P) * prod_{k in S} sin|a_k| e^{i phi_k}
                       * prod_{k not in S} cos|a_k|

with sgn(S, P) the parity of sorting the P-ordered creation operators
restricted to S into ascending mode order.  The sequential-exponential
construction is kept in the tests as the independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fock import (
    BasisSet,
    CutoffTooSmallError,
    StateVector,
    Statistics,
    apply_annihilation,
    enumerate_basis,
    inner_product,
)

MAX_AVERAGED_MODES = 8
MAX_EXPLICIT_ORDERED_MODES = 20


def _splitmix64(seed: int):
    """Deterministic 64-bit stream; fixed so seeded runs reproduce bit-for-bit."""
    mask = (1 << 64) - 1
    z = seed & mask

    def next_value() -> int:
        nonlocal z
        z = (z + 0x9E3779B97F4A7C15) & mask
        r = z
        r = ((r ^ (r >> 30)) * 0xBF58476D1CE4E5B9) & mask
        r = ((r ^ (r >> 27)) * 0x94D049BB133111EB) & mask
        return r ^ (r >> 31)

    return next_value


def _fisher_yates(n: int, seed: int) -> tuple[int, ...]:
    # Modulo reduction of the splitmix64 stream; the tiny bias is irrelevant
    # here and keeps the shuffle portable.
    draw = _splitmix64(seed)
    order = list(range(n))
    for i in range(n - 1, 0, -1):
        j = draw() % (i + 1)
        order[i], order[j] = order[j], order[i]
    return tuple(order)


@dataclass(frozen=True)
class PermutationSpec:
    """A mode ordering: ``order[m]`` is the mode displaced at position m.

    Position 0 is the leftmost (last-applied) displacement operator in the
    ordered product.
    """

    order: tuple[int, ...]
    provenance: str = "explicit"
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(i) for i in self.order))
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError(f"not a permutation of 0..{len(self.order) - 1}: {self.order}")

    def __len__(self) -> int:
        return len(self.order)

    @classmethod
    def identity(cls, n: int) -> "PermutationSpec":
        return cls(tuple(range(n)), provenance="identity")

    @classmethod
    def from_list(cls, order: Sequence[int]) -> "PermutationSpec":
        return cls(tuple(order), provenance="explicit")

    @classmethod
    def from_seed(cls, n: int, seed: int) -> "PermutationSpec":
        """splitmix64-driven Fisher-Yates shuffle; reproducible across platforms."""
        return cls(_fisher_yates(n, seed), provenance="seeded", seed=seed)


@dataclass(frozen=True)
class EpsilonReport:
    """Best complex eigenvalue fit for the lowering operator on one mode.

    ``beta_min`` minimizes || c|u> - beta|u> || over complex beta;
    ``residual`` is the minimal norm.  ``epsilon_threshold`` is the smallest
    eps for which the state qualifies as eps-coherent, i.e. the residual.
    """

    beta_min: complex
    residual: float

    @property
    def epsilon_threshold(self) -> float:
        return self.residual

    def is_epsilon_coherent(self, epsilon: float) -> bool:
        return self.residual <= epsilon


def coherent_amplitudes(alpha: complex, cutoff: int) -> np.ndarray:
    """exp(-|a|^2/2) a^n / sqrt(n!) for n < cutoff, computed stably."""
    alpha = complex(alpha)
    amps = np.zeros(cutoff, dtype=np.complex128)
    log_norm = -abs(alpha) ** 2 / 2.0
    term = complex(math.exp(log_norm))
    for n in range(cutoff):
        amps[n] = term
        term = term * alpha / math.sqrt(n + 1)
    return amps


def coherent_tail_weight(alpha: complex, cutoff: int) -> float:
    """Probability weight of number states at or above the cutoff."""
    mu = abs(alpha) ** 2
    head = 0.0
    term = math.exp(-mu)
    for n in range(cutoff):
        head += term
        term = term * mu / (n + 1)
    return max(0.0, 1.0 - head)


def boson_coherent(
    alpha: complex, cutoff: int, tail_tol: float = 1e-10
) -> StateVector:
    """Single-mode boson coherent state on a truncated basis.

    The truncated tail weight is computed exactly, checked against
    ``tail_tol``, and recorded on the state's ``truncation`` field.
    """
    tail = coherent_tail_weight(alpha, cutoff)
    if tail >= tail_tol:
        raise CutoffTooSmallError(
            f"cutoff {cutoff} leaves tail weight {tail:.3e} >= {tail_tol:.1e} "
            f"for |alpha| = {abs(alpha):.4g}",
            tail=tail,
        )
    basis = enumerate_basis(1, Statistics.BOSON, cutoff)
    return StateVector(basis, coherent_amplitudes(alpha, cutoff), truncation=tail)


def boson_coherent_product(
    alphas: Sequence[complex], cutoff: int, tail_tol: float = 1e-10
) -> StateVector:
    """Multimode product of boson coherent states, one amplitude per mode."""
    alphas = [complex(a) for a in alphas]
    tail = 0.0
    for a in alphas:
        t = coherent_tail_weight(a, cutoff)
        if t >= tail_tol:
            raise CutoffTooSmallError(
                f"cutoff {cutoff} leaves per-mode tail {t:.3e} for |alpha| = {abs(a):.4g}",
                tail=t,
            )
        tail += t
    basis = enumerate_basis(len(alphas), Statistics.BOSON, cutoff)
    amps = np.ones(1, dtype=np.complex128)
    for a in alphas:
        # mode k varies with stride cutoff^k, so later modes go on the left
        amps = np.kron(coherent_amplitudes(a, cutoff), amps)
    return StateVector(basis, amps, truncation=tail)


def fermion_displaced(alpha: complex) -> StateVector:
    """Single-mode displaced fermion vacuum: cos|a| |0> + sin|a| e^{i arg a} |1>."""
    alpha = complex(alpha)
    basis = enumerate_basis(1, Statistics.FERMION)
    mod, phase = abs(alpha), np.angle(alpha) if alpha != 0 else 0.0
    amps = np.array(
        [math.cos(mod), math.sin(mod) * np.exp(1j * phase)], dtype=np.complex128
    )
    return StateVector(basis, amps)


def epsilon_residual(state: StateVector, mode: int = 0) -> EpsilonReport:
    """How far a normalized state is from an eigenstate of the lowering operator.

    The minimizing eigenvalue is the projection beta = <u| c |u>; the minimal
    norm is sqrt(<c+ c> - |<c>|^2).
    """
    lowered = apply_annihilation(state, mode)
    beta = inner_product(state, lowered)
    second_moment = inner_product(lowered, lowered).real
    residual_sq = max(0.0, second_moment - abs(beta) ** 2)
    return EpsilonReport(beta_min=beta, residual=math.sqrt(residual_sq))


def _subset_sign(order: Sequence[int], occupied: np.ndarray) -> np.ndarray:
    """Parity of sorting each occupation bitmask's P-ordered operators ascending.

    ``occupied`` is an integer array of bitmasks; returns +/-1 per entry.
    """
    signs = np.ones(occupied.shape, dtype=np.float64)
    n = len(order)
    for pos_a in range(n):
        for pos_b in range(pos_a + 1, n):
            i, j = order[pos_a], order[pos_b]
            if i > j:
                both = ((occupied >> i) & 1) & ((occupied >> j) & 1)
                signs = np.where(both == 1, -signs, signs)
    return signs


def ordered_amplitude(
    alphas: Sequence[complex], perm: PermutationSpec, occupied_modes: Sequence[int]
) -> complex:
    """Closed-form amplitude of one occupation subset; no state vector needed.

    Works for any mode count, which is what the large-N correlator paths use.
    """
    alphas = [complex(a) for a in alphas]
    occupied = set(int(m) for m in occupied_modes)
    if len(occupied) != len(occupied_modes):
        raise ValueError("occupied modes must be distinct")
    amp = 1.0 + 0.0j
    for k, a in enumerate(alphas):
        mod = abs(a)
        if k in occupied:
            phase = np.angle(a) if a != 0 else 0.0
            amp *= math.sin(mod) * np.exp(1j * phase)
        else:
            amp *= math.cos(mod)
    filtered = [m for m in perm.order if m in occupied]
    inversions = sum(
        1
        for a_pos in range(len(filtered))
        for b_pos in range(a_pos + 1, len(filtered))
        if filtered[a_pos] > filtered[b_pos]
    )
    return amp * (-1.0) ** inversions


def permutation_ordered_state(
    alphas: Sequence[complex], perm: PermutationSpec
) -> StateVector:
    """Multimode fermion state from displacements applied in the order ``perm``.

    Amplitudes come from the closed form (see module docstring); the explicit
    vector is limited to 20 modes.  Use :func:`ordered_amplitude` beyond that.
    """
    alphas = [complex(a) for a in alphas]
    n = len(alphas)
    if len(perm) != n:
        raise ValueError(f"permutation length {len(perm)} != mode count {n}")
    if n > MAX_EXPLICIT_ORDERED_MODES:
        raise ValueError(
            f"explicit state limited to {MAX_EXPLICIT_ORDERED_MODES} modes; "
            "use ordered_amplitude for subsets"
        )
    basis = enumerate_basis(n, Statistics.FERMION)
    indices = np.arange(basis.dimension)
    amps = np.ones(basis.dimension, dtype=np.complex128)
    for k, a in enumerate(alphas):
        mod = abs(a)
        phase = np.angle(a) if a != 0 else 0.0
        occ = (indices >> k) & 1
        factor = np.where(occ == 1, math.sin(mod) * np.exp(1j * phase), math.cos(mod))
        amps *= factor
    amps *= _subset_sign(perm.order, indices)
    return StateVector(basis, amps)


def permutation_averaged_state(alphas: Sequence[complex]) -> StateVector:
    """Normalized sum of the ordered states over all N! mode permutations.

    The multi-particle components cancel pairwise, leaving support on the
    vacuum and single-particle sectors only.
    """
    import itertools

    alphas = [complex(a) for a in alphas]
    n = len(alphas)
    if n > MAX_AVERAGED_MODES:
        raise ValueError(
            f"permutation average limited to {MAX_AVERAGED_MODES} modes (N! sum)"
        )
    basis = enumerate_basis(n, Statistics.FERMION)
    total = np.zeros(basis.dimension, dtype=np.complex128)
    for order in itertools.permutations(range(n)):
        total += permutation_ordered_state(
            alphas, PermutationSpec.from_list(order)
        ).amplitudes
    return StateVector(basis, total).normalized()
