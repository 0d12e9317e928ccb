import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathlab.errors import NumericFailure
from pathlab.nogo.gram import GramReport, bochner_gram_min_eig, jacobi_eigh

_NODES = tuple(0.35 * j for j in range(12))


def _cholesky_floor(g: np.ndarray, lam: float) -> bool:
    """True iff g - lam I is positive definite (Cholesky succeeds)."""
    try:
        np.linalg.cholesky(g - lam * np.eye(g.shape[0]))
        return True
    except np.linalg.LinAlgError:
        return False


def _bisect_min_eig(g: np.ndarray, lo: float, hi: float, iters: int = 80) -> float:
    """Independent minimal-eigenvalue bound by Cholesky bisection: the
    largest lam with g - lam I positive definite."""
    assert _cholesky_floor(g, lo) and not _cholesky_floor(g, hi)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if _cholesky_floor(g, mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_jacobi_validation():
    with pytest.raises(ValueError):
        jacobi_eigh(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        jacobi_eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_jacobi_trivial_cases():
    w, v = jacobi_eigh(np.zeros((3, 3)))
    assert np.array_equal(w, np.zeros(3))
    w, v = jacobi_eigh(np.diag([3.0, -1.0, 2.0]).astype(complex))
    assert np.allclose(w, [-1.0, 2.0, 3.0])


def test_jacobi_matches_lapack_random_hermitian():
    g = np.random.default_rng(42)
    for n in (2, 3, 5, 8, 13, 24):
        for _ in range(12):
            m = g.normal(size=(n, n)) + 1j * g.normal(size=(n, n))
            h = 0.5 * (m + m.conj().T)
            w, v = jacobi_eigh(h)
            ref = np.linalg.eigvalsh(h)
            scale = max(1.0, float(np.abs(ref).max()))
            assert np.max(np.abs(w - ref)) < 5e-13 * scale
            # eigenvectors: unitary and diagonalizing
            assert np.max(np.abs(v.conj().T @ v - np.eye(n))) < 1e-12
            assert np.max(np.abs(h @ v - v * w[None, :])) < 1e-11 * scale


def test_jacobi_near_degenerate_pairs():
    # clustered spectra stress the rotation ordering
    h = np.diag([1.0, 1.0 + 1e-12, 1.0 + 2e-12]).astype(complex)
    h[0, 1] = h[1, 0] = 1e-13
    w, _ = jacobi_eigh(h)
    ref = np.linalg.eigvalsh(h)
    assert np.max(np.abs(w - ref)) < 1e-14


def test_gram_node_count_validation():
    gamma = lambda s: np.exp(-np.asarray(s, dtype=float) ** 2)
    with pytest.raises(ValueError):
        bochner_gram_min_eig(gamma, [0.0])
    with pytest.raises(ValueError):
        bochner_gram_min_eig(gamma, np.arange(65, dtype=float))


def test_gram_rejects_complex_at_origin():
    gamma = lambda s: 1j * np.ones_like(np.asarray(s, dtype=float))
    with pytest.raises(ValueError):
        bochner_gram_min_eig(gamma, [0.0, 1.0])


def test_gaussian_characteristic_function_psd():
    # gamma = exp(-s^2/2) is the standard normal characteristic
    # function, so every Gram matrix is PSD up to roundoff
    gamma = lambda s: np.exp(-np.asarray(s, dtype=float) ** 2 / 2.0)
    rep = bochner_gram_min_eig(gamma, _NODES)
    assert isinstance(rep, GramReport)
    assert rep.matrix_dim == 12
    assert rep.min_eigenvalue > -1e-12
    assert rep.residual <= 1e-10


def test_constant_one_psd():
    gamma = lambda s: np.ones_like(np.asarray(s, dtype=float))
    rep = bochner_gram_min_eig(gamma, _NODES)
    # rank-one all-ones matrix: eigenvalues {0 (x11), 12}
    assert abs(rep.min_eigenvalue) < 1e-12


def test_fresnel_symbol_fails_bochner():
    # gamma(s) = exp(i s^2 / 4) would be the characteristic function of
    # the free kernel's quadratic phase; its Gram matrix dips clearly
    # negative, and an independent Cholesky bisection certifies the
    # same minimal eigenvalue
    gamma = lambda s: np.exp(0.25j * np.asarray(s, dtype=float) ** 2)
    rep = bochner_gram_min_eig(gamma, _NODES)
    assert rep.min_eigenvalue < -0.01

    xi = np.asarray(_NODES)
    diff = xi[:, None] - xi[None, :]
    a = np.asarray(gamma(diff), dtype=complex)
    g = 0.5 * (a + a.conj().T)
    by_bisect = _bisect_min_eig(g, rep.min_eigenvalue - 1.0,
                                rep.min_eigenvalue + 1.0)
    assert abs(by_bisect - rep.min_eigenvalue) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.floats(0.05, 2.0), st.floats(-3.0, 3.0)),
                min_size=1, max_size=5),
       st.integers(0, 10_000))
def test_positive_measures_always_pass(atoms, node_seed):
    # gamma(s) = sum_j w_j e^{i xi_j s} is the transform of a finite
    # positive atomic measure; Bochner says PSD at any node set
    g = np.random.default_rng(node_seed)
    nodes = np.sort(g.uniform(-4.0, 4.0, size=g.integers(2, 10)))

    def gamma(s):
        s = np.asarray(s, dtype=float)
        out = np.zeros(s.shape, dtype=complex)
        for w, xi in atoms:
            out = out + w * np.exp(1j * xi * s)
        return out

    rep = bochner_gram_min_eig(gamma, nodes)
    total = sum(w for w, _ in atoms)
    assert rep.min_eigenvalue > -1e-10 * max(1.0, total)
