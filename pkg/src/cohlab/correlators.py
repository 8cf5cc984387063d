"""Spatial field correlators on a monochromatic comb of modes.

The mode functions are plane waves phi_j(x) = exp(i k_j x)/sqrt(L) with
k_j = 2 pi (j0 + j*spacing)/L, orthonormal on [0, L) for integer spacing.
First-order quantities route through the one-body matrix K[k, l] = <c_k^+ c_l>
so grids are dense linear algebra; the general n-th-order correlator applies
field operators sequentially (the brute-force reference path).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .coherent import PermutationSpec
from .fock import (
    StateVector,
    WeightedMixture,
    apply_annihilation,
    basis_vector,
    inner_product,
)

NORM_TOL = 1e-9
ZERO_INTENSITY_TOL = 1e-14
CAUCHY_SCHWARZ_SLACK = 1e-10


class ZeroIntensityError(ValueError):
    """Degree of coherence is undefined where the intensity vanishes."""


@dataclass(frozen=True)
class ModeBasis:
    """Equally spaced wavenumber comb on a ring of length ``length``."""

    num_modes: int
    length: float = 1.0
    offset: float = 0.0
    spacing: int = 1

    def __post_init__(self):
        if self.num_modes < 1:
            raise ValueError("num_modes must be >= 1")
        if self.length <= 0:
            raise ValueError("domain length must be positive")
        if int(self.spacing) != self.spacing or self.spacing < 1:
            raise ValueError("spacing must be a positive integer (orthonormal comb)")

    def wavenumber(self, j: int) -> float:
        return 2.0 * math.pi * (self.offset + j * self.spacing) / self.length

    def mode_function(self, j: int, x) -> np.ndarray:
        return np.exp(1j * self.wavenumber(j) * np.asarray(x)) / math.sqrt(self.length)

    def mode_matrix(self, xs) -> np.ndarray:
        """phi_j(x) for all modes: shape (len(xs), num_modes)."""
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        ks = np.array([self.wavenumber(j) for j in range(self.num_modes)])
        return np.exp(1j * np.outer(xs, ks)) / math.sqrt(self.length)

    def grid_points(self, grid_size: int) -> np.ndarray:
        if grid_size < 2:
            raise ValueError("grid_size must be >= 2")
        return np.arange(grid_size) * (self.length / grid_size)


@dataclass(frozen=True)
class PointTuple:
    """Arguments of an order-n correlator: xs = (x_1..x_n), ys = (y_n..y_1)."""

    xs: tuple[float, ...]
    ys: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(float(x) for x in self.xs))
        object.__setattr__(self, "ys", tuple(float(y) for y in self.ys))
        if len(self.xs) != len(self.ys):
            raise ValueError("xs and ys must have equal length")
        if not self.xs:
            raise ValueError("correlator order must be >= 1")

    @classmethod
    def coincidence(cls, points: Sequence[float]) -> "PointTuple":
        """Repeated-argument tuple (x_1..x_n, x_n..x_1): an n-particle detection."""
        pts = tuple(float(p) for p in points)
        return cls(pts, tuple(reversed(pts)))

    @property
    def order(self) -> int:
        return len(self.xs)


@dataclass(frozen=True)
class CorrelatorResult:
    value: complex
    order: int
    method: str  # "brute-force" | "closed-form" | "wick"


@dataclass(frozen=True)
class PermutationOrderedSource:
    """Closed-form correlator source: displacement amplitudes plus ordering."""

    alphas: tuple[complex, ...]
    perm: PermutationSpec

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(complex(a) for a in self.alphas))
        if len(self.perm) != len(self.alphas):
            raise ValueError("permutation length must match mode count")


Source = Union[StateVector, WeightedMixture]


def _check_points(mode_basis: ModeBasis, points) -> None:
    for p in points:
        if p < 0.0 or p >= mode_basis.length:
            raise ValueError(f"position {p} outside [0, {mode_basis.length})")


def _check_source(source: Source, mode_basis: ModeBasis) -> None:
    if isinstance(source, StateVector):
        if source.basis.num_modes != mode_basis.num_modes:
            raise ValueError("mode count mismatch between state and mode basis")
        if abs(source.norm() - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized: norm = {source.norm():.6g}")
    elif isinstance(source, WeightedMixture):
        if source.basis.num_modes != mode_basis.num_modes:
            raise ValueError("mode count mismatch between mixture and mode basis")
        total = sum(p for p, _ in source.components)
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"mixture weights sum to {total:.6g}, expected 1")
    else:
        raise TypeError(f"unsupported correlator source: {type(source).__name__}")


def field_annihilate(state: StateVector, mode_basis: ModeBasis, x: float) -> StateVector:
    """psi(x)|state> = sum_k phi_k(x) c_k |state>; not renormalized."""
    if state.basis.num_modes != mode_basis.num_modes:
        raise ValueError("mode count mismatch between state and mode basis")
    out = np.zeros_like(state.amplitudes)
    truncation = state.truncation
    for k in range(mode_basis.num_modes):
        lowered = apply_annihilation(state, k)
        out += mode_basis.mode_function(k, x) * lowered.amplitudes
    return StateVector(state.basis, out, truncation)


def _pure_correlator_value(
    state: StateVector, mode_basis: ModeBasis, pts: PointTuple
) -> complex:
    left = state
    for x in pts.xs:
        left = field_annihilate(left, mode_basis, x)
    if pts.xs == tuple(reversed(pts.ys)):
        return inner_product(left, left)
    right = state
    for y in reversed(pts.ys):
        right = field_annihilate(right, mode_basis, y)
    return inner_product(left, right)


def _mixture_components(mixture: WeightedMixture):
    for prob, occ in mixture.components:
        yield prob, basis_vector(mixture.basis, occ)


def correlator(
    source: Source, mode_basis: ModeBasis, pts: PointTuple
) -> CorrelatorResult:
    """Normally-ordered correlator of order n by direct operator application.

    Computed as <A|B> with |A> built by applying psi(x_1)..psi(x_n) and |B>
    by applying psi(y_1)..psi(y_n); mixtures are weight-summed per component.
    """
    _check_source(source, mode_basis)
    _check_points(mode_basis, pts.xs)
    _check_points(mode_basis, pts.ys)
    if isinstance(source, StateVector):
        value = _pure_correlator_value(source, mode_basis, pts)
    else:
        value = 0.0 + 0.0j
        for prob, component in _mixture_components(source):
            value += prob * _pure_correlator_value(component, mode_basis, pts)
    return CorrelatorResult(complex(value), pts.order, "brute-force")


def one_body_matrix(source: Source) -> np.ndarray:
    """K[k, l] = <c_k^+ c_l>, the first-order correlator in mode space."""
    if isinstance(source, StateVector):
        n = source.basis.num_modes
        lowered = np.stack(
            [apply_annihilation(source, k).amplitudes for k in range(n)]
        )
        return np.conj(lowered) @ lowered.T
    if isinstance(source, WeightedMixture):
        n = source.basis.num_modes
        out = np.zeros((n, n), dtype=np.complex128)
        for prob, component in _mixture_components(source):
            out += prob * one_body_matrix(component)
        return out
    raise TypeError(f"unsupported correlator source: {type(source).__name__}")


def pair_lowered_gram(source: Source) -> np.ndarray:
    """Gram tensor of pair-lowered states: T[(lk),(l'k')] = <c_l c_k psi | c_l' c_k' psi>.

    Lets second-order coincidence grids run as one dense contraction.
    """
    if isinstance(source, StateVector):
        n = source.basis.num_modes
        rows = []
        for l in range(n):
            lowered_l = apply_annihilation(source, l)
            for k in range(n):
                rows.append(apply_annihilation(lowered_l, k).amplitudes)
        w = np.stack(rows)
        return np.conj(w) @ w.T
    if isinstance(source, WeightedMixture):
        n = source.basis.num_modes
        out = np.zeros((n * n, n * n), dtype=np.complex128)
        for prob, component in _mixture_components(source):
            out += prob * pair_lowered_gram(component)
        return out
    raise TypeError(f"unsupported correlator source: {type(source).__name__}")


def first_order_from_matrix(
    kmat: np.ndarray, mode_basis: ModeBasis, x, y
) -> np.ndarray:
    """Gamma(x, y) = phi(x)^+ K phi(y), vectorized over arrays of positions."""
    phi_x = mode_basis.mode_matrix(x)
    phi_y = mode_basis.mode_matrix(y)
    return np.squeeze(np.conj(phi_x) @ kmat @ phi_y.T)


def closed_form_one_body_matrix(
    alphas: Sequence[complex], perm: PermutationSpec
) -> np.ndarray:
    """One-body matrix of a permutation-ordered state, O(N^2), no state vector.

    In the ordering's position labels the entries are

        K[m, n] = 1/4 sin(2 a_m) sin(2 a_n) U_mn e^{i (phi_n - phi_m)}
                  + delta_mn sin^4 a_m

    with U_mn the product of cos(2 a_l) over positions strictly between m and
    n.  A general ordering is the identity-ordered formula after relabeling
    modes by the permutation, so the result is scattered back to mode labels.
    """
    alphas = [complex(a) for a in alphas]
    n = len(alphas)
    if len(perm) != n:
        raise ValueError("permutation length must match mode count")
    order = list(perm.order)
    mods = np.array([abs(alphas[m]) for m in order])
    phases = np.array(
        [np.angle(alphas[m]) if alphas[m] != 0 else 0.0 for m in order]
    )
    sin2 = np.sin(2.0 * mods)
    cos2 = np.cos(2.0 * mods)
    u = np.ones((n, n))
    for m in range(n):
        for nn in range(m + 2, n):
            u[m, nn] = u[m, nn - 1] * cos2[nn - 1]
    u = np.triu(u) + np.triu(u, 1).T
    phase_mat = np.exp(1j * (phases[None, :] - phases[:, None]))
    k_pos = 0.25 * np.outer(sin2, sin2) * u * phase_mat
    k_pos[np.diag_indices(n)] += np.sin(mods) ** 4
    k_mode = np.zeros_like(k_pos)
    k_mode[np.ix_(order, order)] = k_pos
    return k_mode


def first_order_closed_form(
    alphas: Sequence[complex],
    perm: PermutationSpec,
    mode_basis: ModeBasis,
    x: float,
    y: float,
) -> CorrelatorResult:
    """First-order correlator of a permutation-ordered state without the vector."""
    kmat = closed_form_one_body_matrix(alphas, perm)
    value = first_order_from_matrix(kmat, mode_basis, x, y)
    return CorrelatorResult(complex(value), 1, "closed-form")


def degree_of_coherence(
    source: Source, mode_basis: ModeBasis, x: float, y: float
) -> complex:
    """gamma(x, y) = Gamma(x, y) / sqrt(Gamma(x, x) Gamma(y, y))."""
    gxx = correlator(source, mode_basis, PointTuple.coincidence((x,))).value.real
    gyy = correlator(source, mode_basis, PointTuple.coincidence((y,))).value.real
    if gxx <= ZERO_INTENSITY_TOL or gyy <= ZERO_INTENSITY_TOL:
        raise ZeroIntensityError(
            f"intensity vanishes at x={x} or y={y}; gamma undefined"
        )
    gxy = correlator(source, mode_basis, PointTuple((x,), (y,))).value
    gamma = gxy / math.sqrt(gxx * gyy)
    if abs(gamma) > 1.0 + CAUCHY_SCHWARZ_SLACK:
        raise AssertionError(f"|gamma| = {abs(gamma)} violates Cauchy-Schwarz")
    return complex(gamma)


def _resolve_one_body(source, mode_basis: ModeBasis) -> np.ndarray:
    from .chaotic import ChaoticModeSpec

    if isinstance(source, PermutationOrderedSource):
        if len(source.alphas) != mode_basis.num_modes:
            raise ValueError("mode count mismatch between source and mode basis")
        return closed_form_one_body_matrix(source.alphas, source.perm)
    if isinstance(source, ChaoticModeSpec):
        if source.num_modes != mode_basis.num_modes:
            raise ValueError("mode count mismatch between source and mode basis")
        return np.diag(np.asarray(source.mean_occupations, dtype=np.complex128))
    _check_source(source, mode_basis)
    return one_body_matrix(source)


def coherence_grid(source, mode_basis: ModeBasis, grid_size: int = 128) -> np.ndarray:
    """|gamma(x, y)|^2 over the uniform grid on [0, L)^2.

    Accepts a StateVector or WeightedMixture (brute force through the
    one-body matrix), a PermutationOrderedSource (closed form), or a
    ChaoticModeSpec (diagonal one-body matrix).
    """
    kmat = _resolve_one_body(source, mode_basis)
    xs = mode_basis.grid_points(grid_size)
    gamma_matrix = first_order_from_matrix(kmat, mode_basis, xs, xs)
    intensity = np.real(np.diag(gamma_matrix))
    if np.any(intensity <= ZERO_INTENSITY_TOL):
        raise ZeroIntensityError("intensity vanishes on the grid; gamma undefined")
    denom = np.sqrt(np.outer(intensity, intensity))
    return np.abs(gamma_matrix / denom) ** 2


def pair_coincidence_grid(
    source: Source, mode_basis: ModeBasis, grid_size: int = 64
) -> np.ndarray:
    """|Gamma^(2)(x, y, y, x)|^2 over the grid: the two-particle detection map."""
    _check_source(source, mode_basis)
    gram = pair_lowered_gram(source)
    xs = mode_basis.grid_points(grid_size)
    phi = mode_basis.mode_matrix(xs)  # (g, n)
    g = grid_size
    n = mode_basis.num_modes
    # A[(x,y), (l,k)] = phi_l(y) phi_k(x); Gamma2 = diag(conj(A) Gram A^T)
    a = (phi[None, :, :, None] * phi[:, None, None, :]).reshape(g * g, n * n)
    values = np.einsum("gi,ij,gj->g", np.conj(a), gram, a, optimize=True)
    return np.abs(values.reshape(g, g)) ** 2


def second_order_coincidence(
    source: Source, mode_basis: ModeBasis, x: float, y: float
) -> float:
    """Gamma^(2)(x, y, y, x) as a real coincidence rate."""
    res = correlator(source, mode_basis, PointTuple.coincidence((x, y)))
    return float(res.value.real)
