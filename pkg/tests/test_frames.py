import json

import numpy as np
import pytest

from qframes.errors import DimensionError, NegativeEigenvalueError, RankError
from qframes.frames import (
    Frame,
    NormSpec,
    SpectrumSpec,
    analysis,
    column_norms_sq,
    frame_bounds,
    frame_operator,
    frame_spectrum,
    gram,
    gram_to_frame,
    is_parseval,
    is_tight,
    synthesis,
)
from qframes.qmat import from_real, inner_product, matmul, norm_inf, qeye, real_trace
from qframes.spectral import eigvalsh_q, zero_threshold
from qframes.synthesis import random_symplectic, synthesize_frame

from helpers import rand_q


def basis_frame(d):
    return Frame(qeye(d))


def e1e1e2():
    F = np.zeros((2, 3, 4))
    F[0, 0, 0] = F[0, 1, 0] = F[1, 2, 0] = 1.0
    return Frame(F)


def random_frame(rng, d, N):
    return Frame(rand_q(rng, d, N))


def test_frame_validation():
    with pytest.raises(RankError):
        Frame(np.zeros((2, 3, 4)))
    with pytest.raises(RankError):
        Frame(rand_q(np.random.default_rng(0), 3, 2))
    fr = Frame.unchecked(np.zeros((2, 3, 4)))
    assert fr.d == 2 and fr.N == 3
    with pytest.raises(ValueError):
        basis_frame(2).F[0, 0, 0] = 5.0


def test_analysis_synthesis():
    fr = basis_frame(2)
    v = np.array([[1.0, 0, 0, 0], [0, 0, 0, 0]])
    np.testing.assert_array_equal(analysis(fr, v), v)
    rng = np.random.default_rng(1)
    F = random_frame(rng, 3, 5)
    v = rand_q(rng, 3)
    c = analysis(F, v)
    for j in range(5):
        np.testing.assert_allclose(c[j], inner_product(v, F.column(j)).to_array(), atol=1e-13)
    w = np.zeros((5, 4))
    w[2, 0] = 1.0
    np.testing.assert_allclose(synthesis(F, w), F.column(2), atol=0)
    w = rand_q(rng, 5)
    assert inner_product(analysis(F, v), w).isclose(inner_product(v, synthesis(F, w)), 1e-12)
    Sv = matmul(frame_operator(F), v[:, None, :])[:, 0]
    np.testing.assert_allclose(synthesis(F, analysis(F, v)), Sv, atol=1e-12)
    with pytest.raises(DimensionError):
        analysis(F, rand_q(rng, 2))
    with pytest.raises(DimensionError):
        synthesis(F, rand_q(rng, 4))


def test_parseval_analysis_is_isometric():
    fr = synthesize_frame([1.0, 1.0], [0.5, 0.5, 0.5, 0.5])
    rng = np.random.default_rng(2)
    v = rand_q(rng, 2)
    c = analysis(fr, v)
    assert abs(np.sum(c * c) - np.sum(v * v)) <= 1e-10


def test_frame_operator_examples():
    np.testing.assert_array_equal(frame_operator(basis_frame(3)), qeye(3))
    untf = synthesize_frame([1.5, 1.5], [1.0, 1.0, 1.0])
    assert norm_inf(frame_operator(untf) - 1.5 * qeye(2)) <= 1e-10
    rng = np.random.default_rng(3)
    F = random_frame(rng, 3, 6)
    tr = real_trace(frame_operator(F))
    assert abs(tr - np.sum(column_norms_sq(F))) <= 1e-12 * tr
    assert abs(tr - real_trace(gram(F))) <= 1e-12 * tr


def test_gram_examples():
    np.testing.assert_array_equal(gram(basis_frame(2)), qeye(2))
    rng = np.random.default_rng(4)
    F = random_frame(rng, 2, 5)
    G = gram(F)
    mu = eigvalsh_q(G)
    assert int(np.sum(mu > zero_threshold(mu))) == 2
    np.testing.assert_allclose(np.diagonal(G[..., 0]), F.norms_sq(), atol=1e-12)
    U = random_symplectic(2, rng)
    assert norm_inf(gram(matmul(U, F.F)) - G) <= 1e-10


def test_spectrum_examples():
    np.testing.assert_array_equal(frame_spectrum(basis_frame(3)).values, [1, 1, 1])
    np.testing.assert_allclose(frame_spectrum(e1e1e2()).values, [2.0, 1.0])
    rng = np.random.default_rng(5)
    F = random_frame(rng, 3, 4)
    U = random_symplectic(3, rng)
    np.testing.assert_allclose(frame_spectrum(matmul(U, F.F)).values, frame_spectrum(F).values, atol=1e-9)
    with pytest.raises(RankError):
        frame_spectrum(Frame.unchecked(np.zeros((2, 2, 4))))


def test_nonzero_spectra_of_frame_operator_and_gram_agree():
    rng = np.random.default_rng(6)
    for _ in range(20):
        F = random_frame(rng, 2, 5)
        a = eigvalsh_q(frame_operator(F))
        b = eigvalsh_q(gram(F))
        np.testing.assert_allclose(b[:2], a, atol=1e-9)
        assert np.all(np.abs(b[2:]) <= 1e-9)


def test_bounds():
    assert frame_bounds(basis_frame(2)) == (1.0, 1.0)
    rng = np.random.default_rng(7)
    F = random_frame(rng, 3, 5)
    A, B = frame_bounds(F)
    assert B <= np.sum(F.norms_sq()) + 1e-10
    for _ in range(100):
        v = rand_q(rng, 3)
        c = analysis(F, v)
        vv = np.sum(v * v)
        assert A * vv - 1e-10 <= np.sum(c * c) <= B * vv + 1e-10


def test_tightness():
    assert is_tight(basis_frame(3)) and is_parseval(basis_frame(3))
    assert not is_tight(e1e1e2())
    untf = synthesize_frame([2.0, 2.0], [1.0] * 4)
    assert is_tight(untf, 1e-9) and not is_parseval(untf)


def test_gram_to_frame_examples():
    fr = gram_to_frame(qeye(3), 3)
    assert norm_inf(gram(fr) - qeye(3)) <= 1e-12
    ones = from_real(np.ones((2, 2)))
    fr = gram_to_frame(ones, 1)
    alpha = fr.F[0]
    np.testing.assert_allclose(np.sum(alpha * alpha, axis=-1), [1.0, 1.0], atol=1e-10)
    np.testing.assert_allclose(alpha[0], alpha[1], atol=1e-10)
    assert norm_inf(gram(fr) - ones) <= 1e-10


def test_gram_to_frame_round_trip():
    rng = np.random.default_rng(8)
    for d, N in [(1, 3), (2, 4), (3, 6)]:
        F = random_frame(rng, d, N)
        G = gram(F)
        fr = gram_to_frame(G, d)
        assert norm_inf(gram(fr) - G) <= 1e-9 * (1 + norm_inf(G))
        np.testing.assert_allclose(frame_spectrum(fr).values, eigvalsh_q(G)[:d], atol=1e-9)


def test_gram_to_frame_errors():
    with pytest.raises(NegativeEigenvalueError):
        gram_to_frame(from_real(np.diag([1.0, -0.5])), 1)
    with pytest.raises(RankError):
        gram_to_frame(from_real(np.diag([1.0, 1.0, 0.0])), 1)


def test_spec_types():
    lam = SpectrumSpec([1.0, 3.0, 2.0])
    np.testing.assert_array_equal(lam.values, [3.0, 2.0, 1.0])
    r = NormSpec([0.5, 2.0, 1.0])
    np.testing.assert_array_equal(r.values, [2.0, 1.0, 0.5])
    np.testing.assert_array_equal(r.original[r.perm], r.values)
    np.testing.assert_array_equal(r.original, [0.5, 2.0, 1.0])
    for bad in ([], [1.0, 0.0], [1.0, -2.0], [float("nan")]):
        with pytest.raises(ValueError):
            SpectrumSpec(bad)


def test_frame_json_round_trip():
    fr = random_frame(np.random.default_rng(9), 2, 3)
    obj = json.loads(json.dumps(fr.to_json_dict()))
    assert obj["d"] == 2 and obj["N"] == 3 and np.shape(obj["columns"]) == (3, 2, 4)
    np.testing.assert_array_equal(Frame.from_json_dict(obj).F, fr.F)
    obj["N"] = 4
    with pytest.raises(DimensionError):
        Frame.from_json_dict(obj)
