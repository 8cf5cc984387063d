"""Independent dense-matrix constructions used as oracles by the tests.

Everything here is deliberately built by a different route than the package:
ladder operators as explicit Kronecker products (Jordan-Wigner strings for
fermions), exponentials through scipy's expm, permanents from the n!
definition.  Basis layout matches the package convention: mode k is digit k,
mode 0 least significant.
"""

import math
from itertools import permutations

import numpy as np
from scipy.linalg import expm

_LOWER = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
_Z = np.diag([1.0, -1.0]).astype(complex)
_EYE2 = np.eye(2, dtype=complex)


def fermion_annihilators(num_modes):
    """Dense Jordan-Wigner lowering matrices, one per mode."""
    ops = []
    for k in range(num_modes):
        factors = []
        for j in range(num_modes):
            if j < k:
                factors.append(_Z)
            elif j == k:
                factors.append(_LOWER)
            else:
                factors.append(_EYE2)
        mat = np.eye(1, dtype=complex)
        for j in range(num_modes - 1, -1, -1):
            mat = np.kron(mat, factors[j])
        ops.append(mat)
    return ops


def boson_annihilators(num_modes, cutoff):
    """Dense truncated lowering matrices, one per mode."""
    single = np.diag(np.sqrt(np.arange(1.0, cutoff)), k=1).astype(complex)
    eye = np.eye(cutoff, dtype=complex)
    ops = []
    for k in range(num_modes):
        mat = np.eye(1, dtype=complex)
        for j in range(num_modes - 1, -1, -1):
            mat = np.kron(mat, single if j == k else eye)
        ops.append(mat)
    return ops


def dense_displacement(alpha, annihilator):
    """expm(alpha a+ - conj(alpha) a) on the truncated space."""
    gen = alpha * annihilator.conj().T - np.conj(alpha) * annihilator
    return expm(gen)


def permanent_definition(matrix):
    """Permanent straight from the n! permutation sum."""
    a = np.asarray(matrix)
    n = a.shape[0]
    total = 0.0 + 0.0j
    for perm in permutations(range(n)):
        total += np.prod([a[i, perm[i]] for i in range(n)])
    return complex(total)


def coherent_mean_occupation(alpha, cutoff):
    """<n> from the truncated number-state expansion."""
    mu = abs(alpha) ** 2
    weights = [math.exp(-mu) * mu**n / math.factorial(n) for n in range(cutoff)]
    return sum(n * w for n, w in enumerate(weights))


def beta_scan_minimum(state_amplitudes, annihilator, radius=1.0):
    """Grid scan of || a|u> - beta|u> || over complex beta, refined to 1e-6.

    Independent verification of the projection formula for the best
    eigenvalue fit.
    """
    v = np.asarray(state_amplitudes, dtype=complex)
    lowered = annihilator @ v

    def norm_at(beta):
        return np.linalg.norm(lowered - beta * v)

    center = 0.0 + 0.0j
    half_width = radius
    best = center
    while half_width > 1e-7:
        grid = np.linspace(-half_width, half_width, 21)
        candidates = [
            center + dr + 1j * di for dr in grid for di in grid
        ]
        best = min(candidates, key=norm_at)
        center = best
        half_width = half_width * 2.0 / 20.0 * 1.5
    return best, norm_at(best)
