import numpy as np
import pytest

from cobsic import (
    DimensionError,
    InvalidOperatorError,
    RankDeficientError,
    eig_hermitian,
    gell_mann_basis,
    gram_schmidt_operators,
    hs_gram,
    hs_inner,
    random_hermitian,
)

import refdata

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class TestHsInner:
    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_identity_inner_product_is_dimension(self, d):
        eye = np.eye(d)
        assert hs_inner(eye, eye) == pytest.approx(d)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_gell_mann_delta_pattern(self, d):
        basis = gell_mann_basis(d)
        gram = hs_gram(basis.elements)
        assert np.max(np.abs(gram - np.eye(d * d))) < 1e-12

    def test_reference_cob_elements_orthogonal(self):
        a1, a2 = refdata.D2_COB_C1[0], refdata.D2_COB_C1[1]
        assert abs(hs_inner(a1, a2)) < 1e-15

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            hs_inner(np.eye(2), np.eye(3))


class TestEigHermitian:
    def test_identity(self):
        w, _ = eig_hermitian(np.eye(2))
        assert np.allclose(w, [1.0, 1.0])

    def test_diagonal_descending(self):
        w, _ = eig_hermitian(np.diag([2.0, -1.0]))
        assert np.allclose(w, [2.0, -1.0])
        assert w[-1] == pytest.approx(-1.0)  # minimum is always last

    def test_qubit_cob_element_spectrum(self):
        w, _ = eig_hermitian(refdata.D2_COB_C2[0])
        expected = [(1 + np.sqrt(3)) / 4, (1 - np.sqrt(3)) / 4]
        assert np.allclose(w, expected, atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(InvalidOperatorError):
            eig_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))

    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    def test_trace_identities(self, d, rng):
        for _ in range(5):
            a = random_hermitian(d, rng)
            w, v = eig_hermitian(a)
            assert abs(w.sum() - np.trace(a).real) < 1e-10
            assert abs((w**2).sum() - np.trace(a @ a).real) < 1e-10
            recon = (v * w) @ v.conj().T
            assert np.linalg.norm(a - recon) < 1e-10


class TestGramSchmidt:
    def test_orthonormal_input_is_fixed_point(self):
        basis = gell_mann_basis(2)
        out = gram_schmidt_operators(list(basis))
        assert np.max(np.abs(out.elements - basis.elements)) < 1e-12

    def test_two_element_input(self, rng):
        a = random_hermitian(3, rng)
        b = random_hermitian(3, rng)
        out = gram_schmidt_operators([a, b])
        assert len(out) == 2
        assert abs(hs_inner(out[0], out[1])) < 1e-12
        assert abs(hs_inner(out[1], out[1]) - 1) < 1e-12
        # first output is the normalized first input
        assert np.max(np.abs(out[0] - a / np.linalg.norm(a))) < 1e-12

    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    def test_random_inputs_orthonormal(self, d, rng):
        seq = [random_hermitian(d, rng) for _ in range(d * d)]
        out = gram_schmidt_operators(seq)
        gram = hs_gram(out.elements)
        assert np.max(np.abs(gram - np.eye(d * d))) < 1e-10

    def test_dependent_input_rejected(self):
        a = np.diag([1.0, -1.0]).astype(complex)
        with pytest.raises(RankDeficientError):
            gram_schmidt_operators([a, 2 * a])


class TestGellMannBasis:
    def test_d2_is_scaled_pauli(self):
        basis = gell_mann_basis(2)
        expected = [np.eye(2), PAULI["x"], PAULI["y"], PAULI["z"]]
        for got, want in zip(basis, expected):
            assert np.max(np.abs(got - want / np.sqrt(2))) < 1e-15

    def test_d3_traceless_except_first(self):
        basis = gell_mann_basis(3)
        assert len(basis) == 9
        assert abs(np.trace(basis[0]) - 3 / np.sqrt(3)) < 1e-12
        for t in basis.elements[1:]:
            assert abs(np.trace(t)) < 1e-14

    @pytest.mark.parametrize("d", [2, 3, 5, 8])
    def test_spans_hermitian_space(self, d, rng):
        basis = gell_mann_basis(d)
        a = random_hermitian(d, rng)
        coeffs = [hs_inner(t, a) for t in basis]
        recon = sum(c * t for c, t in zip(coeffs, basis))
        assert np.max(np.abs(recon - a)) < 1e-10
        assert max(abs(c.imag) for c in coeffs) < 1e-12

    def test_rejects_small_dimension(self):
        with pytest.raises(DimensionError):
            gell_mann_basis(1)
