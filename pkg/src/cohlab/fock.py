"""Exact multimode Fock spaces for bosons and fermions.

Basis states are occupation-number configurations over a fixed set of modes.
Fermion states are indexed by the occupation bitmask (bit k = mode k); boson
states by base-`cutoff` digits (mode 0 least significant).  The canonical
ket for a fermion configuration is the creation-operator string applied to
the vacuum in ascending mode order, so applying ``c_k`` or ``c_k^+`` picks up
the Jordan-Wigner sign ``(-1)^(number of occupied modes below k)``.

Ladder-operator actions are precomputed per mode as (source, target,
coefficient) index maps, so state transformations are vectorized gathers.
All operations are pure: inputs are never mutated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

DEFAULT_DIMENSION_CEILING = 2**24
MAX_FERMION_MODES = 24
DEFAULT_SERIES_TOL = 1e-14
DEFAULT_MAX_SERIES_TERMS = 200


class Statistics(Enum):
    """Particle statistics: commuting (boson) or anticommuting (fermion) algebra."""

    BOSON = "boson"
    FERMION = "fermion"


class DimensionOverflowError(ValueError):
    """Requested basis exceeds the configured dense-dimension ceiling."""


class BasisMismatchError(ValueError):
    """Two states live on different bases."""


class CutoffTooSmallError(ValueError):
    """Boson cutoff leaves more tail weight than tolerated.

    Attributes:
        tail: the computed weight above the cutoff.
    """

    def __init__(self, message: str, tail: float):
        super().__init__(message)
        self.tail = tail


class SeriesConvergenceError(RuntimeError):
    """Exponential series did not converge within the term budget.

    Attributes:
        residual: norm of the last Taylor term, an estimate of the error.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


def _popcount(values: np.ndarray) -> np.ndarray:
    return np.bitwise_count(values)


@dataclass(frozen=True)
class BasisSet:
    """Enumerated occupation basis for ``num_modes`` modes of one statistics.

    Fermion dimension is 2^num_modes; boson dimension is cutoff^num_modes
    with per-mode occupation in [0, cutoff).  Index <-> occupation round
    trips through :meth:`index_of` / :meth:`occupations_of`.
    """

    num_modes: int
    statistics: Statistics
    boson_cutoff: int | None = None
    _maps: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def dimension(self) -> int:
        if self.statistics is Statistics.FERMION:
            return 1 << self.num_modes
        return self.boson_cutoff**self.num_modes

    def index_of(self, occupations: Sequence[int]) -> int:
        if len(occupations) != self.num_modes:
            raise ValueError(
                f"expected {self.num_modes} occupations, got {len(occupations)}"
            )
        if self.statistics is Statistics.FERMION:
            if any(n not in (0, 1) for n in occupations):
                raise ValueError("fermion occupations must be 0 or 1")
            return sum(1 << k for k, n in enumerate(occupations) if n)
        if any(n < 0 or n >= self.boson_cutoff for n in occupations):
            raise ValueError(f"boson occupations must lie in [0, {self.boson_cutoff})")
        return sum(n * self.boson_cutoff**k for k, n in enumerate(occupations))

    def occupations_of(self, index: int) -> tuple[int, ...]:
        if index < 0 or index >= self.dimension:
            raise IndexError(f"basis index {index} out of range")
        if self.statistics is Statistics.FERMION:
            return tuple((index >> k) & 1 for k in range(self.num_modes))
        return tuple(
            (index // self.boson_cutoff**k) % self.boson_cutoff
            for k in range(self.num_modes)
        )

    def all_occupations(self) -> Iterable[tuple[int, ...]]:
        return (self.occupations_of(i) for i in range(self.dimension))

    def mode_occupation_array(self, mode: int) -> np.ndarray:
        """Occupation of ``mode`` for every basis index."""
        key = ("occ", mode)
        if key not in self._maps:
            idx = np.arange(self.dimension)
            if self.statistics is Statistics.FERMION:
                occ = (idx >> mode) & 1
            else:
                occ = (idx // self.boson_cutoff**mode) % self.boson_cutoff
            self._maps[key] = occ
        return self._maps[key]

    def total_number_array(self) -> np.ndarray:
        """Total particle number for every basis index."""
        if "total" not in self._maps:
            total = np.zeros(self.dimension, dtype=np.int64)
            for k in range(self.num_modes):
                total += self.mode_occupation_array(k)
            self._maps["total"] = total
        return self._maps["total"]

    def _fermion_sign_array(self, mode: int) -> np.ndarray:
        key = ("sign", mode)
        if key not in self._maps:
            idx = np.arange(self.dimension, dtype=np.uint64)
            below = idx & np.uint64((1 << mode) - 1)
            parity = _popcount(below) & 1
            self._maps[key] = 1.0 - 2.0 * parity
        return self._maps[key]

    def annihilation_map(self, mode: int):
        """(src, dst, coeff) arrays describing the action of the lowering operator."""
        key = ("ann", mode)
        if key not in self._maps:
            idx = np.arange(self.dimension)
            occ = self.mode_occupation_array(mode)
            src = idx[occ >= 1]
            if self.statistics is Statistics.FERMION:
                dst = src ^ (1 << mode)
                coeff = self._fermion_sign_array(mode)[src].astype(np.complex128)
            else:
                dst = src - self.boson_cutoff**mode
                coeff = np.sqrt(occ[src]).astype(np.complex128)
            self._maps[key] = (src, dst, coeff)
        return self._maps[key]

    def creation_map(self, mode: int):
        """(src, dst, coeff, clipped_src, clipped_coeff) for the raising operator.

        ``clipped_src`` is empty for fermions (Pauli blocking is exact physics,
        not truncation); for bosons it collects the top-cutoff-layer indices
        whose image falls outside the space.
        """
        key = ("cre", mode)
        if key not in self._maps:
            idx = np.arange(self.dimension)
            occ = self.mode_occupation_array(mode)
            if self.statistics is Statistics.FERMION:
                src = idx[occ == 0]
                dst = src | (1 << mode)
                coeff = self._fermion_sign_array(mode)[src].astype(np.complex128)
                clipped_src = np.zeros(0, dtype=np.int64)
                clipped_coeff = np.zeros(0, dtype=np.complex128)
            else:
                src = idx[occ <= self.boson_cutoff - 2]
                dst = src + self.boson_cutoff**mode
                coeff = np.sqrt(occ[src] + 1.0).astype(np.complex128)
                clipped_src = idx[occ == self.boson_cutoff - 1]
                clipped_coeff = np.full(
                    clipped_src.shape, math.sqrt(self.boson_cutoff), dtype=np.complex128
                )
            self._maps[key] = (src, dst, coeff, clipped_src, clipped_coeff)
        return self._maps[key]


def enumerate_basis(
    num_modes: int,
    statistics: Statistics,
    boson_cutoff: int | None = None,
    max_dimension: int = DEFAULT_DIMENSION_CEILING,
) -> BasisSet:
    """Build the occupation basis, guarding against runaway dimensions."""
    if num_modes < 1:
        raise ValueError("num_modes must be >= 1")
    if statistics is Statistics.FERMION:
        if num_modes > MAX_FERMION_MODES:
            raise DimensionOverflowError(
                f"fermion basis limited to {MAX_FERMION_MODES} modes, got {num_modes}"
            )
        dimension = 1 << num_modes
        boson_cutoff = None
    else:
        if boson_cutoff is None or boson_cutoff < 2:
            raise ValueError("boson basis requires cutoff >= 2")
        dimension = boson_cutoff**num_modes
    if dimension > max_dimension:
        raise DimensionOverflowError(
            f"basis dimension {dimension} exceeds ceiling {max_dimension}"
        )
    return BasisSet(num_modes, statistics, boson_cutoff)


@dataclass(eq=False)
class StateVector:
    """Complex amplitudes over a :class:`BasisSet`.

    ``truncation`` accumulates an upper estimate of squared norm lost to the
    boson cutoff; it stays 0.0 for fermions and untruncated operations.
    """

    basis: BasisSet
    amplitudes: np.ndarray
    truncation: float = 0.0

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (self.basis.dimension,):
            raise ValueError(
                f"amplitude vector has shape {self.amplitudes.shape}, "
                f"expected ({self.basis.dimension},)"
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.basis, self.amplitudes / n, self.truncation)

    def amplitude(self, occupations: Sequence[int]) -> complex:
        return complex(self.amplitudes[self.basis.index_of(occupations)])


def vacuum_state(basis: BasisSet) -> StateVector:
    amps = np.zeros(basis.dimension, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(basis, amps)


def basis_vector(basis: BasisSet, occupations: Sequence[int]) -> StateVector:
    amps = np.zeros(basis.dimension, dtype=np.complex128)
    amps[basis.index_of(occupations)] = 1.0
    return StateVector(basis, amps)


def _check_mode(basis: BasisSet, mode: int) -> None:
    if mode < 0 or mode >= basis.num_modes:
        raise IndexError(f"mode {mode} out of range for {basis.num_modes} modes")


def apply_annihilation(state: StateVector, mode: int) -> StateVector:
    """Lowering operator on ``mode``; output is not renormalized.

    Bosons: |..n..> -> sqrt(n)|..n-1..>.  Fermions: sign is the parity of the
    occupied modes below ``mode``.  The zero vector is a legal result.
    """
    _check_mode(state.basis, mode)
    src, dst, coeff = state.basis.annihilation_map(mode)
    out = np.zeros_like(state.amplitudes)
    out[dst] = coeff * state.amplitudes[src]
    return StateVector(state.basis, out, state.truncation)


def apply_creation(state: StateVector, mode: int) -> StateVector:
    """Raising operator on ``mode``; adjoint of :func:`apply_annihilation`.

    Fermion double occupation yields the zero vector exactly.  Boson
    amplitudes raised past the cutoff are dropped and their squared weight is
    added to ``truncation`` so the clipping is never silent.
    """
    _check_mode(state.basis, mode)
    src, dst, coeff, clipped_src, clipped_coeff = state.basis.creation_map(mode)
    out = np.zeros_like(state.amplitudes)
    out[dst] = coeff * state.amplitudes[src]
    truncation = state.truncation
    if clipped_src.size:
        truncation += float(
            np.sum(np.abs(clipped_coeff * state.amplitudes[clipped_src]) ** 2)
        )
    return StateVector(state.basis, out, truncation)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    if a.basis != b.basis:
        raise BasisMismatchError("inner product requires a common basis")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def tensor_product(a: StateVector, b: StateVector) -> StateVector:
    """Compose two registers; modes of ``a`` come before modes of ``b``.

    For fermions the combined canonical ordering is (a-modes ascending,
    then b-modes ascending), which is exactly the concatenated creation
    string, so no reordering signs appear.
    """
    if a.basis.statistics is not b.basis.statistics:
        raise BasisMismatchError("tensor product requires matching statistics")
    if (
        a.basis.statistics is Statistics.BOSON
        and a.basis.boson_cutoff != b.basis.boson_cutoff
    ):
        raise BasisMismatchError("tensor product requires matching boson cutoffs")
    combined = enumerate_basis(
        a.basis.num_modes + b.basis.num_modes,
        a.basis.statistics,
        a.basis.boson_cutoff,
    )
    # index(combined) = index(a) + index(b) * dim(a) for both encodings
    amps = np.kron(b.amplitudes, a.amplitudes)
    return StateVector(combined, amps, a.truncation + b.truncation)


class TermKind(Enum):
    CREATE = "create"
    ANNIHILATE = "annihilate"
    CREATE_CREATE = "create_create"
    CREATE_ANNIHILATE = "create_annihilate"
    ANNIHILATE_ANNIHILATE = "annihilate_annihilate"


@dataclass(frozen=True)
class GeneratorTerm:
    coefficient: complex
    kind: TermKind
    modes: tuple[int, ...]

    def __post_init__(self):
        expected = 1 if self.kind in (TermKind.CREATE, TermKind.ANNIHILATE) else 2
        if len(self.modes) != expected:
            raise ValueError(f"{self.kind.value} takes {expected} mode index(es)")


_ADJOINT_KIND = {
    TermKind.CREATE: TermKind.ANNIHILATE,
    TermKind.ANNIHILATE: TermKind.CREATE,
    TermKind.CREATE_CREATE: TermKind.ANNIHILATE_ANNIHILATE,
    TermKind.ANNIHILATE_ANNIHILATE: TermKind.CREATE_CREATE,
    TermKind.CREATE_ANNIHILATE: TermKind.CREATE_ANNIHILATE,
}


@dataclass(frozen=True)
class GeneratorSpec:
    """Sum of linear/quadratic ladder terms, optionally flagged anti-Hermitian.

    When ``anti_hermitian`` is set, applying the exponential first verifies
    that the terms come in adjoint pairs with negated-conjugate coefficients
    (under the algebra of the target basis), so exp(G) is unitary.
    """

    terms: tuple[GeneratorTerm, ...]
    anti_hermitian: bool = False

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def _canonical_coefficients(self, statistics: Statistics) -> dict:
        swap_sign = -1.0 if statistics is Statistics.FERMION else 1.0
        coeffs: dict[tuple, complex] = {}

        def add(kind: TermKind, modes: tuple[int, ...], c: complex):
            if kind in (TermKind.CREATE_CREATE, TermKind.ANNIHILATE_ANNIHILATE):
                i, j = modes
                if i > j:
                    modes, c = (j, i), c * swap_sign
            key = (kind, modes)
            coeffs[key] = coeffs.get(key, 0.0) + c

        for t in self.terms:
            add(t.kind, t.modes, complex(t.coefficient))
        return coeffs

    def validate_anti_hermitian(self, statistics: Statistics) -> None:
        swap = -1.0 if statistics is Statistics.FERMION else 1.0
        coeffs = self._canonical_coefficients(statistics)
        for (kind, modes), c in coeffs.items():
            adj_kind = _ADJOINT_KIND[kind]
            adj_modes = tuple(reversed(modes)) if len(modes) == 2 else modes
            adj_c = np.conj(c)
            if kind in (TermKind.CREATE_CREATE, TermKind.ANNIHILATE_ANNIHILATE):
                i, j = adj_modes
                if i > j:
                    adj_modes = (j, i)
                    adj_c = adj_c * swap
            partner = coeffs.get((adj_kind, adj_modes), 0.0)
            if abs(partner + adj_c) > 1e-12 * max(1.0, abs(c)):
                raise ValueError(
                    "terms are not anti-Hermitian: "
                    f"{kind.value}{modes} lacks a conjugate partner"
                )

    def norm_bound(self, basis: BasisSet) -> float:
        """Crude operator-norm bound on the truncated space, for step sizing."""
        if basis.statistics is Statistics.FERMION:
            factor = 1.0
        else:
            factor = math.sqrt(basis.boson_cutoff)
        total = 0.0
        for t in self.terms:
            n_ops = 1 if t.kind in (TermKind.CREATE, TermKind.ANNIHILATE) else 2
            total += abs(t.coefficient) * factor**n_ops
        return total


def displacement_generator(alpha: complex, mode: int) -> GeneratorSpec:
    """alpha * raise(mode) - conj(alpha) * lower(mode)."""
    alpha = complex(alpha)
    return GeneratorSpec(
        (
            GeneratorTerm(alpha, TermKind.CREATE, (mode,)),
            GeneratorTerm(-np.conj(alpha), TermKind.ANNIHILATE, (mode,)),
        ),
        anti_hermitian=True,
    )


def _apply_term(state: StateVector, term: GeneratorTerm) -> StateVector:
    if term.kind is TermKind.CREATE:
        out = apply_creation(state, term.modes[0])
    elif term.kind is TermKind.ANNIHILATE:
        out = apply_annihilation(state, term.modes[0])
    elif term.kind is TermKind.CREATE_CREATE:
        out = apply_creation(apply_creation(state, term.modes[1]), term.modes[0])
    elif term.kind is TermKind.CREATE_ANNIHILATE:
        out = apply_creation(apply_annihilation(state, term.modes[1]), term.modes[0])
    else:
        out = apply_annihilation(
            apply_annihilation(state, term.modes[1]), term.modes[0]
        )
    return out


def apply_generator(state: StateVector, gen: GeneratorSpec) -> StateVector:
    """One application of the generator (sum of its terms)."""
    out = np.zeros_like(state.amplitudes)
    truncation = state.truncation
    for term in gen.terms:
        piece = _apply_term(StateVector(state.basis, state.amplitudes), term)
        out += complex(term.coefficient) * piece.amplitudes
        truncation += abs(term.coefficient) ** 2 * piece.truncation
    return StateVector(state.basis, out, truncation)


def apply_generator_exponential(
    state: StateVector,
    gen: GeneratorSpec,
    tol: float = DEFAULT_SERIES_TOL,
    max_terms: int = DEFAULT_MAX_SERIES_TERMS,
) -> StateVector:
    """exp(G)|state> by scaled Taylor application, no dense matrix build.

    The generator is split into enough substeps that each Taylor series
    converges quickly; the series stops when a term's norm drops below
    ``tol`` relative to the running result.
    """
    if gen.anti_hermitian:
        gen.validate_anti_hermitian(state.basis.statistics)
    bound = gen.norm_bound(state.basis)
    steps = max(1, math.ceil(bound / 4.0))
    result = StateVector(state.basis, state.amplitudes.copy(), state.truncation)
    scaled = GeneratorSpec(
        tuple(
            GeneratorTerm(complex(t.coefficient) / steps, t.kind, t.modes)
            for t in gen.terms
        ),
        anti_hermitian=gen.anti_hermitian,
    )
    for _ in range(steps):
        acc = result.amplitudes.copy()
        term = result
        truncation = result.truncation
        scale = max(1.0, float(np.linalg.norm(acc)))
        converged = False
        for n in range(1, max_terms + 1):
            term = apply_generator(term, scaled)
            term = StateVector(
                state.basis, term.amplitudes / n, term.truncation
            )
            acc += term.amplitudes
            truncation = term.truncation
            if term.norm() <= tol * scale:
                converged = True
                break
        if not converged:
            raise SeriesConvergenceError(
                f"exponential series not converged after {max_terms} terms",
                residual=term.norm(),
            )
        result = StateVector(state.basis, acc, truncation)
    return result


def number_sector_weights(state: StateVector) -> np.ndarray:
    """Probability per total-particle-number sector (expects a normalized state)."""
    total = state.basis.total_number_array()
    probs = np.abs(state.amplitudes) ** 2
    weights = np.zeros(int(total.max()) + 1)
    np.add.at(weights, total, probs)
    return weights


@dataclass(frozen=True)
class WeightedMixture:
    """Probability-weighted occupation configurations (a Fock-diagonal state).

    components: tuple of (probability, occupations) pairs.  Weights must be
    nonnegative and sum to 1 within 1e-12.
    """

    basis: BasisSet
    components: tuple[tuple[float, tuple[int, ...]], ...]

    def __post_init__(self):
        comps = tuple(
            (float(p), tuple(int(n) for n in occ)) for p, occ in self.components
        )
        object.__setattr__(self, "components", comps)
        if any(p < 0 for p, _ in comps):
            raise ValueError("mixture probabilities must be nonnegative")
        total = sum(p for p, _ in comps)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"mixture probabilities sum to {total}, expected 1")
        for _, occ in comps:
            self.basis.index_of(occ)  # validates length and occupancy range
