import numpy as np
import pytest

from qframes.errors import NotHermitianError
from qframes.qmat import adjoint, is_symplectic, matmul, norm_inf, psi, qdiag, qeye
from qframes.spectral import complete_basis, eigh_q, eigvalsh_q, svd_q
from qframes.synthesis import random_symplectic

from helpers import hermitian_with_spectrum, rand_hermitian, rand_q

J_ = [0.0, 0.0, 1.0, 0.0]


def test_diagonal_input():
    e = eigh_q(qdiag([3.0, 1.0]))
    np.testing.assert_allclose(e.eigenvalues, [3.0, 1.0])
    # eigenvectors only fixed up to a unit quaternion per column
    np.testing.assert_allclose(np.sqrt(np.sum(e.U**2, axis=-1)), np.eye(2), atol=1e-14)


def test_off_diagonal_j():
    H = np.zeros((2, 2, 4))
    H[0, 1] = J_
    H[1, 0] = [0, 0, -1, 0]
    # embedding written out by hand; each eigenvalue appears twice
    M = np.array([[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]], dtype=complex)
    np.testing.assert_array_equal(psi(H), M)
    oracle = np.sort(np.linalg.eigvalsh(M))[::-1][::2]
    np.testing.assert_allclose(eigvalsh_q(H), oracle, atol=1e-14)
    np.testing.assert_allclose(eigvalsh_q(H), [1.0, -1.0], atol=1e-14)


def test_prescribed_spectrum_round_trip():
    rng = np.random.default_rng(0)
    H, _ = hermitian_with_spectrum(rng, [2.0, 1.0, 0.0])
    e = eigh_q(H)
    np.testing.assert_allclose(e.eigenvalues, [2.0, 1.0, 0.0], atol=1e-9)
    assert norm_inf(e.reconstruct() - H) <= 1e-9


@pytest.mark.parametrize("m", [1, 2, 3, 5, 8])
def test_reconstruction_and_unitarity(m):
    rng = np.random.default_rng(m)
    for _ in range(10):
        H = rand_hermitian(rng, m)
        e = eigh_q(H)
        assert is_symplectic(e.U, 1e-10)
        assert norm_inf(e.reconstruct() - H) <= 1e-9 * (1 + norm_inf(H))
        assert np.all(np.diff(e.eigenvalues) <= 0)


def test_degenerate_spectrum():
    rng = np.random.default_rng(1)
    H, _ = hermitian_with_spectrum(rng, [2.0, 2.0, 2.0, 1.0, 1.0])
    e = eigh_q(H)
    assert is_symplectic(e.U, 1e-10)
    np.testing.assert_allclose(e.eigenvalues, [2, 2, 2, 1, 1], atol=1e-12)
    assert norm_inf(e.reconstruct() - H) <= 1e-12


def test_gauge_invariance_of_projector():
    rng = np.random.default_rng(2)
    H = rand_hermitian(rng, 4)
    e = eigh_q(H)
    u = e.U[:, :1]
    P = matmul(u, adjoint(u))
    # the spectral projector is gauge-free; compare with the embedding's
    w, V = np.linalg.eigh(psi(H))
    Pc = V[:, -2:] @ V[:, -2:].conj().T
    np.testing.assert_allclose(psi(P), Pc, atol=1e-10)


def test_even_multiplicity_pairing():
    rng = np.random.default_rng(3)
    for _ in range(50):
        H = rand_hermitian(rng, int(rng.integers(1, 7)))
        w = np.sort(np.linalg.eigvalsh(psi(H)))
        assert np.max(np.abs(w[0::2] - w[1::2])) <= 1e-8


def test_conjugation_invariance():
    rng = np.random.default_rng(4)
    for _ in range(20):
        m = int(rng.integers(1, 6))
        H = rand_hermitian(rng, m)
        W = random_symplectic(m, rng)
        np.testing.assert_allclose(eigvalsh_q(matmul(matmul(W, H), adjoint(W))), eigvalsh_q(H), atol=1e-9)


def test_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        eigh_q(rand_q(np.random.default_rng(5), 3, 3))


def test_svd_examples():
    s = svd_q(qeye(2))
    np.testing.assert_allclose(s.singular_values, [1.0, 1.0])
    F = np.zeros((2, 3, 4))
    F[0, 0, 0] = F[1, 1, 0] = 1.0
    s = svd_q(F)
    np.testing.assert_allclose(s.singular_values, [1.0, 1.0])
    np.testing.assert_allclose(eigvalsh_q(matmul(adjoint(F), F)), [1.0, 1.0, 0.0], atol=1e-15)


def test_svd_matches_frame_operator():
    rng = np.random.default_rng(6)
    for _ in range(20):
        F = rand_q(rng, 2, 4)
        s = svd_q(F)
        np.testing.assert_allclose(s.singular_values**2, eigvalsh_q(matmul(F, adjoint(F))), atol=1e-9)
        assert norm_inf(s.reconstruct() - F) <= 1e-9
        assert is_symplectic(s.U) and is_symplectic(s.V)


def test_svd_rank_deficient_and_tall():
    rng = np.random.default_rng(7)
    A = rand_q(rng, 3, 1)
    F = matmul(A, rand_q(rng, 1, 5))
    s = svd_q(F)
    assert np.count_nonzero(s.singular_values) == 1
    assert norm_inf(s.reconstruct() - F) <= 1e-9 * (1 + norm_inf(F))
    T = rand_q(rng, 5, 2)
    s = svd_q(T)
    assert s.U.shape[:2] == (5, 5) and s.V.shape[:2] == (2, 2)
    assert norm_inf(s.reconstruct() - T) <= 1e-9


def test_complete_basis():
    rng = np.random.default_rng(8)
    U = random_symplectic(5, rng)
    Q = complete_basis(U[:, :2], 5)
    assert is_symplectic(Q)
    np.testing.assert_allclose(Q[:, :2], U[:, :2], atol=1e-12)
