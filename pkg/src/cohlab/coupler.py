"""Two-mode linear coupler (beam splitter / quantum point contact) and loss.

The coupler with complex transmissivity t and reflectivity r sends the
creation operator of the first target mode to t c_i^+ + r c_j^+.  It is
realized as the exponential of the number-conserving quadratic generator

    G = theta (e^{i chi} c_j^+ c_i - e^{-i chi} c_i^+ c_j)
        + i tau (n_i + n_j)

with theta = arccos|t|, chi = arg r - arg t and tau = arg t.  The phase
convention this fixes for the second input port is that it maps to
-conj(r) e^{2 i arg t} c_i^+ + conj(t) e^{2 i arg t} c_j^+.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fock import (
    DEFAULT_SERIES_TOL,
    GeneratorSpec,
    GeneratorTerm,
    StateVector,
    Statistics,
    TermKind,
    apply_generator_exponential,
    enumerate_basis,
    tensor_product,
    vacuum_state,
)

UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class CouplerSpec:
    """Complex transmissivity/reflectivity pair acting on two modes."""

    t: complex
    r: complex
    modes: tuple[int, int] = (0, 1)

    def __post_init__(self):
        object.__setattr__(self, "t", complex(self.t))
        object.__setattr__(self, "r", complex(self.r))
        object.__setattr__(self, "modes", (int(self.modes[0]), int(self.modes[1])))
        if self.modes[0] == self.modes[1]:
            raise ValueError("coupler requires two distinct modes")
        if abs(abs(self.t) ** 2 + abs(self.r) ** 2 - 1.0) > UNITARITY_TOL:
            raise ValueError(
                f"|t|^2 + |r|^2 = {abs(self.t)**2 + abs(self.r)**2:.15f}, expected 1"
            )

    @classmethod
    def balanced(cls, modes: tuple[int, int] = (0, 1)) -> "CouplerSpec":
        return cls(1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0), modes)


@dataclass(frozen=True)
class SchmidtReport:
    """Singular values of a bipartition and the distance from a product state."""

    singular_values: tuple[float, ...]
    product_residual: float


def coupler_generator(spec: CouplerSpec) -> GeneratorSpec:
    """Anti-Hermitian quadratic generator whose exponential realizes the coupler."""
    i, j = spec.modes
    theta = math.acos(min(1.0, abs(spec.t)))
    arg_t = np.angle(spec.t) if spec.t != 0 else 0.0
    arg_r = np.angle(spec.r) if spec.r != 0 else 0.0
    chi = arg_r - arg_t
    terms = [
        GeneratorTerm(theta * np.exp(1j * chi), TermKind.CREATE_ANNIHILATE, (j, i)),
        GeneratorTerm(-theta * np.exp(-1j * chi), TermKind.CREATE_ANNIHILATE, (i, j)),
    ]
    if arg_t != 0.0:
        terms.append(GeneratorTerm(1j * arg_t, TermKind.CREATE_ANNIHILATE, (i, i)))
        terms.append(GeneratorTerm(1j * arg_t, TermKind.CREATE_ANNIHILATE, (j, j)))
    return GeneratorSpec(tuple(terms), anti_hermitian=True)


def couple(
    state: StateVector, spec: CouplerSpec, tol: float = DEFAULT_SERIES_TOL
) -> StateVector:
    """Apply the two-mode coupler unitary; particle number is conserved.

    Boson amplitudes clipped at the cutoff are flagged on ``truncation``.
    """
    return apply_generator_exponential(state, coupler_generator(spec), tol=tol)


def _fermion_cross_signs(
    indices: np.ndarray, part: Sequence[int], rest: Sequence[int]
) -> np.ndarray:
    """Parity of moving the occupied ``part`` modes in front of ``rest`` ones."""
    signs = np.ones(indices.shape)
    for i in part:
        for j in rest:
            if j < i:
                both = ((indices >> i) & 1) & ((indices >> j) & 1)
                signs = np.where(both == 1, -signs, signs)
    return signs


def product_state_residual(
    state: StateVector, partition: Sequence[int]
) -> SchmidtReport:
    """Schmidt test of a pure state across a mode bipartition.

    The amplitude vector is reshaped to a (partition) x (complement) matrix
    (with fermion reordering signs for non-contiguous partitions) and
    decomposed; the residual 1 - s_max^2 / sum(s^2) is zero exactly for
    product states.
    """
    basis = state.basis
    part = sorted(int(m) for m in partition)
    if not part or len(set(part)) != len(part):
        raise ValueError("partition must be a nonempty set of distinct modes")
    if any(m < 0 or m >= basis.num_modes for m in part):
        raise ValueError("partition modes out of range")
    rest = [m for m in range(basis.num_modes) if m not in part]
    if not rest:
        raise ValueError("partition must leave at least one mode on each side")

    if basis.statistics is Statistics.FERMION:
        indices = np.arange(basis.dimension)
        rows = np.zeros(basis.dimension, dtype=np.int64)
        cols = np.zeros(basis.dimension, dtype=np.int64)
        for pos, m in enumerate(part):
            rows |= (((indices >> m) & 1)) << pos
        for pos, m in enumerate(rest):
            cols |= (((indices >> m) & 1)) << pos
        amps = state.amplitudes * _fermion_cross_signs(indices, part, rest)
        matrix = np.zeros((1 << len(part), 1 << len(rest)), dtype=np.complex128)
        matrix[rows, cols] = amps
    else:
        cutoff = basis.boson_cutoff
        indices = np.arange(basis.dimension)
        rows = np.zeros(basis.dimension, dtype=np.int64)
        cols = np.zeros(basis.dimension, dtype=np.int64)
        for pos, m in enumerate(part):
            rows += ((indices // cutoff**m) % cutoff) * cutoff**pos
        for pos, m in enumerate(rest):
            cols += ((indices // cutoff**m) % cutoff) * cutoff**pos
        matrix = np.zeros((cutoff ** len(part), cutoff ** len(rest)), dtype=np.complex128)
        matrix[rows, cols] = state.amplitudes

    singular = np.linalg.svd(matrix, compute_uv=False)
    total = float(np.sum(singular**2))
    if total == 0.0:
        raise ValueError("cannot analyze the zero vector")
    residual = 1.0 - float(singular[0] ** 2) / total
    return SchmidtReport(tuple(float(s) for s in singular), max(0.0, residual))


def loss_channel(
    state: StateVector, mode: int, transmissivity: float
) -> list[tuple[float, StateVector]]:
    """Linear loss on one mode as coupling to a fresh vacuum environment mode.

    The environment mode is appended, coupled with t = sqrt(transmissivity),
    and traced out by resolving it in the occupation basis.  Returns the
    resulting ensemble as (probability, normalized signal state) pairs with
    zero-probability branches dropped.
    """
    if not 0.0 <= transmissivity <= 1.0:
        raise ValueError("transmissivity must lie in [0, 1]")
    env_basis = enumerate_basis(1, state.basis.statistics, state.basis.boson_cutoff)
    extended = tensor_product(state, vacuum_state(env_basis))
    env_mode = state.basis.num_modes
    spec = CouplerSpec(
        math.sqrt(transmissivity),
        math.sqrt(1.0 - transmissivity),
        (mode, env_mode),
    )
    coupled = couple(extended, spec)
    signal_dim = state.basis.dimension
    env_dim = env_basis.dimension
    blocks = coupled.amplitudes.reshape(env_dim, signal_dim)
    ensemble = []
    for env_occ in range(env_dim):
        block = blocks[env_occ]
        prob = float(np.sum(np.abs(block) ** 2))
        if prob > 0.0:
            ensemble.append(
                (prob, StateVector(state.basis, block / math.sqrt(prob)))
            )
    return ensemble
