import math

import numpy as np
import pytest

from cohlab.fock import (
    BasisMismatchError,
    DimensionOverflowError,
    GeneratorSpec,
    GeneratorTerm,
    SeriesConvergenceError,
    StateVector,
    Statistics,
    TermKind,
    WeightedMixture,
    apply_annihilation,
    apply_creation,
    apply_generator_exponential,
    basis_vector,
    displacement_generator,
    enumerate_basis,
    inner_product,
    number_sector_weights,
    tensor_product,
    vacuum_state,
)

from conftest import random_state
from oracles import boson_annihilators, dense_displacement, fermion_annihilators


def test_enumerate_basis_dimensions():
    assert enumerate_basis(2, Statistics.FERMION).dimension == 4
    assert enumerate_basis(1, Statistics.BOSON, 3).dimension == 3
    assert enumerate_basis(10, Statistics.FERMION).dimension == 1024


def test_enumerate_basis_guards():
    with pytest.raises(DimensionOverflowError):
        enumerate_basis(25, Statistics.FERMION)
    with pytest.raises(DimensionOverflowError):
        enumerate_basis(9, Statistics.BOSON, 8, max_dimension=2**24)
    with pytest.raises(ValueError):
        enumerate_basis(0, Statistics.FERMION)
    with pytest.raises(ValueError):
        enumerate_basis(2, Statistics.BOSON, 1)


@pytest.mark.parametrize(
    "num_modes,statistics,cutoff",
    [(3, Statistics.FERMION, None), (2, Statistics.BOSON, 4)],
)
def test_index_roundtrip(num_modes, statistics, cutoff):
    basis = enumerate_basis(num_modes, statistics, cutoff)
    for index in range(basis.dimension):
        occ = basis.occupations_of(index)
        assert basis.index_of(occ) == index


def test_fermion_index_is_bitmask():
    basis = enumerate_basis(4, Statistics.FERMION)
    assert basis.index_of((1, 0, 1, 0)) == 0b0101
    assert basis.occupations_of(0b1100) == (0, 0, 1, 1)


def test_annihilation_examples():
    basis = enumerate_basis(2, Statistics.FERMION)
    both = basis_vector(basis, (1, 1))
    lowered = apply_annihilation(both, 1)
    assert lowered.amplitude((1, 0)) == pytest.approx(-1.0)

    bos = enumerate_basis(1, Statistics.BOSON, 6)
    n3 = basis_vector(bos, (3,))
    assert apply_annihilation(n3, 0).amplitude((2,)) == pytest.approx(math.sqrt(3))

    assert apply_annihilation(vacuum_state(basis), 0).norm() == 0.0


def test_creation_examples():
    basis = enumerate_basis(2, Statistics.FERMION)
    vac = vacuum_state(basis)
    order_a = apply_creation(apply_creation(vac, 1), 0)  # c0+ then leftmost c0+? built c0+ c1+ |0>
    order_b = apply_creation(apply_creation(vac, 0), 1)  # c1+ c0+ |0>
    np.testing.assert_allclose(order_a.amplitudes, -order_b.amplitudes, atol=1e-15)
    assert order_a.amplitude((1, 1)) == pytest.approx(1.0)

    bos = enumerate_basis(1, Statistics.BOSON, 4)
    assert apply_creation(vacuum_state(bos), 0).amplitude((1,)) == pytest.approx(1.0)

    single = basis_vector(basis, (1, 0))
    assert apply_creation(single, 0).norm() == 0.0  # Pauli blocking


def test_boson_creation_truncation_flagged():
    basis = enumerate_basis(1, Statistics.BOSON, 4)
    top = basis_vector(basis, (3,))
    raised = apply_creation(top, 0)
    assert raised.norm() == 0.0
    assert raised.truncation == pytest.approx(4.0)  # |sqrt(4) * 1|^2


@pytest.mark.parametrize(
    "statistics,cutoff,num_modes",
    [(Statistics.FERMION, None, 4), (Statistics.BOSON, 5, 2)],
)
def test_ladder_operators_match_dense_oracle(statistics, cutoff, num_modes, rng):
    basis = enumerate_basis(num_modes, statistics, cutoff)
    if statistics is Statistics.FERMION:
        dense_ops = fermion_annihilators(num_modes)
    else:
        dense_ops = boson_annihilators(num_modes, cutoff)
    state = random_state(basis, rng)
    for mode, dense in enumerate(dense_ops):
        np.testing.assert_allclose(
            apply_annihilation(state, mode).amplitudes,
            dense @ state.amplitudes,
            atol=1e-12,
        )
        np.testing.assert_allclose(
            apply_creation(state, mode).amplitudes,
            dense.conj().T @ state.amplitudes,
            atol=1e-12,
        )


def test_fermion_anticommutators_on_all_basis_states():
    basis = enumerate_basis(4, Statistics.FERMION)
    for i in range(4):
        for j in range(4):
            for index in range(basis.dimension):
                v = StateVector(
                    basis, np.eye(basis.dimension, dtype=complex)[index]
                )
                c_i = lambda s: apply_annihilation(s, i)
                cd_j = lambda s: apply_creation(s, j)
                anti_1 = c_i(cd_j(v)).amplitudes + cd_j(c_i(v)).amplitudes
                expected = v.amplitudes if i == j else 0.0 * v.amplitudes
                np.testing.assert_allclose(anti_1, expected, atol=1e-14)
                anti_2 = (
                    apply_annihilation(apply_annihilation(v, j), i).amplitudes
                    + apply_annihilation(apply_annihilation(v, i), j).amplitudes
                )
                np.testing.assert_allclose(anti_2, 0.0, atol=1e-14)
                anti_3 = (
                    apply_creation(apply_creation(v, j), i).amplitudes
                    + apply_creation(apply_creation(v, i), j).amplitudes
                )
                np.testing.assert_allclose(anti_3, 0.0, atol=1e-14)


def test_boson_commutator_exact_below_cutoff_flagged_on_top():
    cutoff = 6
    basis = enumerate_basis(2, Statistics.BOSON, cutoff)
    for i in range(2):
        for j in range(2):
            for index in range(basis.dimension):
                occ = basis.occupations_of(index)
                v = basis_vector(basis, occ)
                a_ad = apply_annihilation(apply_creation(v, j), i)
                ad_a = apply_creation(apply_annihilation(v, i), j)
                comm = a_ad.amplitudes - ad_a.amplitudes
                expected = v.amplitudes if i == j else 0.0 * v.amplitudes
                if occ[j] == cutoff - 1:
                    # top layer: the commutator cannot close, but it is flagged
                    assert a_ad.truncation > 0.0
                else:
                    np.testing.assert_allclose(comm, expected, atol=1e-13)
                    assert a_ad.truncation == 0.0


def test_adjointness_of_ladder_pair(rng):
    for statistics, cutoff in ((Statistics.FERMION, None), (Statistics.BOSON, 5)):
        basis = enumerate_basis(3, statistics, cutoff)
        a = random_state(basis, rng)
        b = random_state(basis, rng)
        for mode in range(3):
            lhs = inner_product(a, apply_annihilation(b, mode))
            rhs = inner_product(apply_creation(a, mode), b)
            assert lhs == pytest.approx(rhs, abs=1e-12)


def test_inner_product_examples():
    basis = enumerate_basis(2, Statistics.FERMION)
    vac = vacuum_state(basis)
    assert inner_product(vac, vac) == pytest.approx(1.0)

    order_a = apply_creation(apply_creation(vac, 1), 0)
    order_b = apply_creation(apply_creation(vac, 0), 1)
    assert inner_product(order_a, order_b) == pytest.approx(-1.0)

    other = enumerate_basis(3, Statistics.FERMION)
    with pytest.raises(BasisMismatchError):
        inner_product(vac, vacuum_state(other))


def test_inner_product_conjugate_linear_first_argument(rng):
    basis = enumerate_basis(2, Statistics.FERMION)
    a = random_state(basis, rng)
    b = random_state(basis, rng)
    scaled = StateVector(basis, (2.0 + 1.0j) * a.amplitudes)
    assert inner_product(scaled, b) == pytest.approx(
        np.conj(2.0 + 1.0j) * inner_product(a, b)
    )
    assert inner_product(a, a).imag == pytest.approx(0.0)
    assert inner_product(a, a).real >= 0.0


def test_boson_coherent_norm_partial_sum():
    # partial sum of exp(-|a|^2) sum |a|^(2n)/n! at cutoff 20 is 1 to 1e-10
    from cohlab.coherent import boson_coherent

    state = boson_coherent(0.5, 20)
    assert abs(inner_product(state, state) - 1.0) < 1e-10


def test_tensor_product_examples():
    fermion = enumerate_basis(1, Statistics.FERMION)
    one = basis_vector(fermion, (1,))
    vac = vacuum_state(fermion)
    assert tensor_product(one, vac).amplitude((1, 0)) == pytest.approx(1.0)

    beta = StateVector(fermion, np.array([0.6, 0.8]))
    combined = tensor_product(beta, vac)
    assert combined.amplitude((0, 0)) == pytest.approx(0.6)
    assert combined.amplitude((1, 0)) == pytest.approx(0.8)

    assert tensor_product(one, one).amplitude((1, 1)) == pytest.approx(1.0)

    boson = enumerate_basis(1, Statistics.BOSON, 3)
    with pytest.raises(BasisMismatchError):
        tensor_product(one, vacuum_state(boson))


def test_projector_is_ordering_invariant():
    # rank-1 projector onto the doubly occupied pair, built both ways
    basis = enumerate_basis(2, Statistics.FERMION)
    vac = vacuum_state(basis)
    v = apply_creation(apply_creation(vac, 1), 0).amplitudes
    w = apply_creation(apply_creation(vac, 0), 1).amplitudes
    np.testing.assert_allclose(
        np.outer(v, v.conj()), np.outer(w, w.conj()), atol=1e-15
    )


def test_generator_exponential_identity():
    basis = enumerate_basis(2, Statistics.FERMION)
    state = basis_vector(basis, (1, 0))
    zero = GeneratorSpec((GeneratorTerm(0.0, TermKind.CREATE, (0,)),))
    out = apply_generator_exponential(state, zero)
    np.testing.assert_allclose(out.amplitudes, state.amplitudes, atol=1e-14)


def test_generator_exponential_fermion_displacement():
    basis = enumerate_basis(1, Statistics.FERMION)
    out = apply_generator_exponential(
        vacuum_state(basis), displacement_generator(0.3, 0)
    )
    np.testing.assert_allclose(
        out.amplitudes, [math.cos(0.3), math.sin(0.3)], atol=1e-13
    )


def test_generator_exponential_boson_displacement():
    cutoff = 30
    basis = enumerate_basis(1, Statistics.BOSON, cutoff)
    out = apply_generator_exponential(
        vacuum_state(basis), displacement_generator(0.5, 0)
    )
    expected = np.array(
        [
            math.exp(-0.125) * 0.5**n / math.sqrt(math.factorial(n))
            for n in range(cutoff)
        ]
    )
    np.testing.assert_allclose(out.amplitudes, expected, atol=1e-10)


def test_generator_exponential_matches_dense_expm(rng):
    basis = enumerate_basis(3, Statistics.FERMION)
    dense = fermion_annihilators(3)
    alpha = 0.4 - 0.2j
    state = random_state(basis, rng)
    out = apply_generator_exponential(state, displacement_generator(alpha, 1))
    oracle = dense_displacement(alpha, dense[1]) @ state.amplitudes
    np.testing.assert_allclose(out.amplitudes, oracle, atol=1e-12)


def test_generator_exponential_unitary_preserves_norm(rng):
    basis = enumerate_basis(1, Statistics.BOSON, 40)
    state = random_state(basis, rng)
    out = apply_generator_exponential(state, displacement_generator(1.2j, 0))
    assert abs(out.norm() - 1.0) < 10 * 1e-14 + 1e-12


def test_generator_exponential_convergence_error():
    basis = enumerate_basis(1, Statistics.BOSON, 40)
    with pytest.raises(SeriesConvergenceError) as info:
        apply_generator_exponential(
            vacuum_state(basis), displacement_generator(2.0, 0), max_terms=2
        )
    assert info.value.residual > 0.0


def test_anti_hermitian_validation():
    bad = GeneratorSpec(
        (GeneratorTerm(1.0, TermKind.CREATE, (0,)),), anti_hermitian=True
    )
    basis = enumerate_basis(1, Statistics.FERMION)
    with pytest.raises(ValueError, match="anti-Hermitian"):
        apply_generator_exponential(vacuum_state(basis), bad)


def test_number_sector_weights_examples():
    basis = enumerate_basis(2, Statistics.FERMION)
    np.testing.assert_allclose(number_sector_weights(vacuum_state(basis)), [1, 0, 0])

    from cohlab.coherent import fermion_displaced

    weights = number_sector_weights(fermion_displaced(0.166))
    np.testing.assert_allclose(
        weights, [math.cos(0.166) ** 2, math.sin(0.166) ** 2], atol=1e-12
    )
    assert weights[1] == pytest.approx(0.0273, abs=5e-5)

    pair = basis_vector(basis, (1, 1))
    np.testing.assert_allclose(number_sector_weights(pair), [0, 0, 1])
    assert number_sector_weights(pair).sum() == pytest.approx(1.0, abs=1e-12)


def test_weighted_mixture_validation():
    basis = enumerate_basis(1, Statistics.FERMION)
    WeightedMixture(basis, ((0.7, (0,)), (0.3, (1,))))
    with pytest.raises(ValueError, match="sum"):
        WeightedMixture(basis, ((0.7, (0,)), (0.2, (1,))))
    with pytest.raises(ValueError, match="nonnegative"):
        WeightedMixture(basis, ((1.5, (0,)), (-0.5, (1,))))
