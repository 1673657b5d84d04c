"""Tests for the state-operator correspondence and Schmidt machinery."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import clustered_spectrum, random_complex
from uli import (
    BadSpectrum,
    DimensionMismatch,
    NotNormalized,
    NotSorted,
    apply_local,
    cluster_spectrum,
    hs_inner,
    kron,
    matrix_to_vec,
    partial_trace_1,
    partial_trace_2,
    random_state_with_spectrum,
    schmidt_decompose,
    state_from_matrix,
    svd,
    vec_to_matrix,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


def bell_state():
    return state_from_matrix(np.eye(2, dtype=complex) / np.sqrt(2))


def random_state(rng, d1, d2):
    m = random_complex(rng, d1, d2)
    return state_from_matrix(m / np.linalg.norm(m))


class TestVecMatrix:
    def test_basis_state(self):
        state = vec_to_matrix(np.array([1, 0, 0, 0], dtype=complex), 2, 2)
        np.testing.assert_array_equal(state.psi, [[1, 0], [0, 0]])

    def test_bell_vector(self):
        state = vec_to_matrix(np.array([1, 0, 0, 1]) / np.sqrt(2), 2, 2)
        np.testing.assert_allclose(state.psi, np.eye(2) / np.sqrt(2))

    def test_round_trip_exact(self):
        rng = np.random.default_rng(0)
        v = random_complex(rng, 1, 6).ravel()
        v /= np.linalg.norm(v)
        state = vec_to_matrix(v, 2, 3)
        np.testing.assert_array_equal(matrix_to_vec(state), v)

    @settings(deadline=None)
    @given(
        d1=st.integers(min_value=1, max_value=6),
        d2=st.integers(min_value=1, max_value=6),
        seed=st.integers(min_value=0, max_value=2**32 - 1),
    )
    def test_round_trip_all_shapes(self, d1, d2, seed):
        rng = np.random.default_rng(seed)
        v = rng.standard_normal(d1 * d2) + 1j * rng.standard_normal(d1 * d2)
        v /= np.linalg.norm(v)
        np.testing.assert_array_equal(matrix_to_vec(vec_to_matrix(v, d1, d2)), v)

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            vec_to_matrix(np.ones(3) / np.sqrt(3), 2, 2)

    def test_rejects_non_normalized_and_carries_norm(self):
        with pytest.raises(NotNormalized) as excinfo:
            vec_to_matrix(np.array([1.0, 1.0, 0, 0]), 2, 2)
        assert excinfo.value.norm == pytest.approx(np.sqrt(2))

    def test_normalize_flag_records_input_norm(self):
        state = vec_to_matrix(np.array([2.0, 0, 0, 0]), 2, 2, normalize=True)
        assert state.input_norm == pytest.approx(2.0)
        assert state.norm() == pytest.approx(1.0)


class TestApplyLocal:
    def test_bit_flip_leaves_bell_invariant(self):
        out = apply_local(SIGMA_X, SIGMA_X, bell_state())
        np.testing.assert_allclose(out.psi, np.eye(2) / np.sqrt(2), atol=1e-15)

    def test_identity(self):
        rng = np.random.default_rng(1)
        state = random_state(rng, 3, 2)
        out = apply_local(np.eye(3), np.eye(2), state)
        np.testing.assert_array_equal(out.psi, state.psi)

    def test_kron_oracle_pins_vec_convention(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            state = random_state(rng, 3, 4)
            a = random_complex(rng, 3, 3)
            b = random_complex(rng, 4, 4)
            direct = matrix_to_vec(apply_local(a, b, state))
            oracle = kron(a, b) @ matrix_to_vec(state)
            assert np.max(np.abs(direct - oracle)) <= 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            apply_local(np.eye(3), np.eye(2), bell_state())


class TestHsInner:
    def test_self_overlap_of_unit_state(self):
        assert hs_inner(np.eye(2) / np.sqrt(2), np.eye(2) / np.sqrt(2)) == pytest.approx(1.0)

    def test_orthogonal_basis_operators(self):
        a = np.array([[1, 0], [0, 0]], dtype=complex)
        b = np.array([[0, 0], [0, 1]], dtype=complex)
        assert hs_inner(a, b) == 0

    def test_vectorization_oracle_and_conjugate_symmetry(self):
        rng = np.random.default_rng(3)
        a, b = random_complex(rng, 3, 4), random_complex(rng, 3, 4)
        oracle = np.dot(a.ravel().conj(), b.ravel())
        assert abs(hs_inner(a, b) - oracle) <= 1e-13
        assert hs_inner(a, b) == pytest.approx(np.conj(hs_inner(b, a)))

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            hs_inner(np.eye(2), np.eye(3))


class TestPartialTraces:
    def test_bell_reductions_maximally_mixed(self):
        state = bell_state()
        np.testing.assert_allclose(partial_trace_2(state), np.eye(2) / 2, atol=1e-15)
        np.testing.assert_allclose(partial_trace_1(state), np.eye(2) / 2, atol=1e-15)

    def test_product_state_reduction(self):
        state = state_from_matrix(np.array([[1, 0], [0, 0]], dtype=complex))
        np.testing.assert_array_equal(partial_trace_2(state), np.diag([1.0, 0.0]))

    def test_hermitian_psd_unit_trace(self):
        rng = np.random.default_rng(4)
        state = random_state(rng, 3, 4)
        for rho in (partial_trace_2(state), partial_trace_1(state)):
            np.testing.assert_allclose(rho, rho.conj().T, atol=1e-14)
            assert np.trace(rho).real == pytest.approx(1.0)
            assert np.min(np.linalg.eigvalsh(rho)) >= -1e-14

    def test_eigenvalues_match_squared_singular_values(self):
        rng = np.random.default_rng(5)
        state = random_state(rng, 3, 4)
        squared = np.sort(svd(state.psi).sigma ** 2)[::-1]
        eig1 = np.sort(np.linalg.eigvalsh(partial_trace_2(state)))[::-1]
        eig2 = np.sort(np.linalg.eigvalsh(partial_trace_1(state)))[::-1]
        np.testing.assert_allclose(eig1[:3], squared, atol=1e-12)
        np.testing.assert_allclose(eig2, np.append(squared, 0.0), atol=1e-12)

    def test_brute_force_projector_oracle(self):
        # oracle: partial traces of the rank-one projector on the vectorized state
        rng = np.random.default_rng(6)
        state = random_state(rng, 3, 4)
        vec = matrix_to_vec(state)
        rho = np.outer(vec, vec.conj()).reshape(3, 4, 3, 4)
        np.testing.assert_allclose(
            partial_trace_2(state), np.einsum("ijkj->ik", rho), atol=1e-13
        )
        np.testing.assert_allclose(
            partial_trace_1(state), np.einsum("ijik->jk", rho), atol=1e-13
        )


class TestSchmidtDecompose:
    def test_already_diagonal(self):
        state = state_from_matrix(np.diag([np.sqrt(0.8), np.sqrt(0.2)]).astype(complex))
        form = schmidt_decompose(state)
        np.testing.assert_allclose(form.sigma, [np.sqrt(0.8), np.sqrt(0.2)])
        assert form.rank == 2
        np.testing.assert_allclose(form.s1, np.eye(2), atol=1e-14)
        np.testing.assert_allclose(form.s2, np.eye(2), atol=1e-14)

    def test_bell(self):
        form = schmidt_decompose(bell_state())
        np.testing.assert_allclose(form.sigma, np.full(2, 1 / np.sqrt(2)))
        assert form.rank == 2

    def test_reconstruction_and_sigma_match(self):
        rng = np.random.default_rng(7)
        state = random_state(rng, 4, 3)
        form = schmidt_decompose(state)
        assert np.max(np.abs(form.reconstruct() - state.psi)) <= 1e-12
        np.testing.assert_allclose(form.sigma, svd(state.psi).sigma, atol=1e-14)
        assert abs(np.sum(form.sigma**2) - 1.0) <= 1e-12

    def test_schmidt_vector_rows_rebuild_state(self):
        # sum_k sigma_k outer(row_k(s1), row_k(s2)) must reproduce psi
        rng = np.random.default_rng(8)
        state = random_state(rng, 3, 5)
        form = schmidt_decompose(state)
        rebuilt = sum(
            form.sigma[k] * np.outer(form.s1[k, :], form.s2[k, :])
            for k in range(len(form.sigma))
        )
        np.testing.assert_allclose(rebuilt, state.psi, atol=1e-12)


class TestClusterSpectrum:
    def test_maximally_entangled_pair(self):
        spectrum = cluster_spectrum(np.full(2, 1 / np.sqrt(2)))
        assert spectrum.clusters == ((pytest.approx(1 / np.sqrt(2)), 2),)
        assert spectrum.r_counts == {2: 1}
        assert spectrum.rank == 2

    def test_distinct_values(self):
        spectrum = cluster_spectrum(np.array([np.sqrt(0.8), np.sqrt(0.2)]))
        assert [m for _, m in spectrum.clusters] == [1, 1]
        assert spectrum.r_counts == {1: 2}
        assert spectrum.rank == 2

    def test_explicit_zero_goes_to_null_space(self):
        spectrum = cluster_spectrum(np.array([0.8, 0.6, 0.0]), rank_tol=1e-10, dims=(3, 3))
        assert spectrum.rank == 2
        assert spectrum.null_dims == (1, 1)

    def test_rejects_unsorted(self):
        with pytest.raises(NotSorted):
            cluster_spectrum(np.array([0.3, 0.5]))

    def test_rejects_negative(self):
        with pytest.raises(BadSpectrum):
            cluster_spectrum(np.array([0.5, -0.1]))

    def test_near_degenerate_chains_with_loose_tolerance(self):
        sigma = np.array([0.8, 0.8 - 1e-9, 0.1])
        sigma = sigma / np.linalg.norm(sigma)
        loose = cluster_spectrum(sigma, degeneracy_tol=1e-8)
        tight = cluster_spectrum(sigma, degeneracy_tol=1e-12)
        assert [m for _, m in loose.clusters] == [2, 1]
        assert [m for _, m in tight.clusters] == [1, 1, 1]

    @settings(deadline=None)
    @given(
        rank=st.integers(min_value=1, max_value=8),
        seed=st.integers(min_value=0, max_value=2**32 - 1),
    )
    def test_totals_on_fuzzed_spectra(self, rank, seed):
        rng = np.random.default_rng(seed)
        sigma, mults = clustered_spectrum(rng, rank)
        spectrum = cluster_spectrum(sigma, dims=(rank, rank))
        assert sum(m for _, m in spectrum.clusters) == spectrum.rank == rank
        assert sum(k * v for k, v in spectrum.r_counts.items()) == rank
        assert [m for _, m in spectrum.clusters] == mults
        values = [v for v, _ in spectrum.clusters]
        assert all(values[i] > values[i + 1] for i in range(len(values) - 1))


class TestRandomStateWithSpectrum:
    def test_rank_one_is_product(self):
        rng = np.random.default_rng(9)
        state = random_state_with_spectrum(np.array([1.0]), 2, 2, rng)
        assert schmidt_decompose(state).rank == 1

    def test_maximally_entangled_core(self):
        rng = np.random.default_rng(10)
        state = random_state_with_spectrum(np.full(2, 1 / np.sqrt(2)), 2, 2, rng)
        np.testing.assert_allclose(
            schmidt_decompose(state).sigma, np.full(2, 1 / np.sqrt(2)), atol=1e-12
        )

    def test_recovers_requested_spectrum(self):
        rng = np.random.default_rng(11)
        sigma = np.sqrt(np.array([0.5, 0.3, 0.2]))
        state = random_state_with_spectrum(sigma, 3, 4, rng)
        np.testing.assert_allclose(schmidt_decompose(state).sigma, sigma, atol=1e-12)

    def test_rejects_bad_spectra(self):
        rng = np.random.default_rng(12)
        with pytest.raises(BadSpectrum):
            random_state_with_spectrum(np.array([1.0, 1.0]), 2, 2, rng)
        with pytest.raises(BadSpectrum):
            random_state_with_spectrum(np.array([0.5, 0.5, 0.5, 0.5]), 2, 3, rng)
