import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from sumsquares.numeric import (
    PointIndex,
    Subspace,
    Tol,
    axis_subspace,
    inner,
    is_special_orthogonal,
    orthonormalize,
    random_subspace,
    random_unit_vector,
    rotation_2d,
)


def test_inner():
    assert inner((1, 0, 0), (0, 1, 0)) == 0
    assert inner((1, 1), (1, 1)) == 2
    # 1*4 + 2*5 + 3*6
    assert inner((1, 2, 3), (4, 5, 6)) == 32
    with pytest.raises(ValueError):
        inner((1, 2), (1, 2, 3))


def test_tol_invariants():
    Tol()
    with pytest.raises(ValueError):
        Tol(eq_tol=1e-8, verify_tol=1e-9)
    with pytest.raises(ValueError):
        Tol(eq_tol=1e-4, verify_tol=1e-3, key_digits=4)


def test_orthonormalize_examples():
    np.testing.assert_allclose(orthonormalize([(2, 0, 0)]), [[1, 0, 0]])
    b = orthonormalize([(1, 1, 0), (1, 0, 0)])
    np.testing.assert_allclose(b @ b.T, np.eye(2), atol=1e-9)
    with pytest.raises(ValueError, match="degenerate"):
        orthonormalize([(1, 0), (2, 0)])


def test_orthonormalize_skip_dependent_keeps_order():
    b = orthonormalize([(1, 1, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], skip_dependent=True)
    assert b.shape == (3, 3)
    np.testing.assert_allclose(b[0], np.array([1, 1, 0]) / np.sqrt(2))


def test_orthonormalize_ill_conditioned():
    # nearly parallel columns; classical Gram-Schmidt loses orthogonality here
    eps = 1e-7
    v = np.array([[1, eps, 0, 0], [1, 0, eps, 0], [1, 0, 0, eps]])
    b = orthonormalize(v)
    assert np.abs(b @ b.T - np.eye(3)).max() <= 1e-9


@settings(max_examples=60, deadline=None)
@given(arrays(float, (3, 5), elements=st.floats(-10, 10)))
def test_orthonormalize_property(rows):
    try:
        b = orthonormalize(rows)
    except ValueError:
        return
    assert np.abs(b @ b.T - np.eye(len(b))).max() <= 1e-9
    # same span: each input row is reproduced by projection onto the output
    assert np.abs(rows - rows @ b.T @ b).max() <= 1e-6 * max(1.0, np.abs(rows).max())


def test_random_unit_vector():
    assert random_unit_vector(1, 123)[0] in (1.0, -1.0)
    np.testing.assert_array_equal(random_unit_vector(3, 7), random_unit_vector(3, 7))
    assert abs(np.linalg.norm(random_unit_vector(5, 11)) - 1) <= 1e-9
    with pytest.raises(ValueError):
        random_unit_vector(0, 1)


def test_random_unit_vector_mean_monte_carlo():
    samples = np.array([random_unit_vector(4, s) for s in range(10_000)])
    assert np.abs(samples.mean(axis=0)).max() <= 0.05
    # second moment of a uniform point on S^3 is 1/4 per coordinate
    assert np.abs((samples**2).mean(axis=0) - 0.25).max() <= 0.02


def test_random_subspace():
    s = random_subspace(3, 3, 5)
    np.testing.assert_allclose(s.basis @ s.basis.T, np.eye(3), atol=1e-9)
    np.testing.assert_array_equal(random_subspace(2, 1, 9).basis, random_subspace(2, 1, 9).basis)
    s = random_subspace(4, 2, 1)
    assert s.basis.shape == (2, 4)
    assert abs(s.basis[0] @ s.basis[1]) <= 1e-9
    for m, n in ((0, 3), (4, 3)):
        with pytest.raises(ValueError):
            random_subspace(n, m, 0)


@pytest.mark.parametrize("n,m", [(2, 1), (3, 2), (4, 2), (6, 5), (8, 3)])
def test_projector_idempotent_symmetric(n, m):
    for seed in range(20):
        p = random_subspace(n, m, seed).projector()
        assert np.abs(p @ p - p).max() <= 1e-8
        assert np.abs(p - p.T).max() <= 1e-8
        assert abs(np.trace(p) - m) <= 1e-8


def test_haar_subspace_projector_mean():
    # E[P] = (m/n) I for a rotation-invariant distribution
    n, m = 4, 2
    mean = sum(random_subspace(n, m, s).projector() for s in range(4000)) / 4000
    assert np.abs(mean - m / n * np.eye(n)).max() <= 0.03


def test_complement():
    s = random_subspace(5, 2, 3)
    c = s.complement()
    assert c.dim == 3
    np.testing.assert_allclose(s.projector() + c.projector(), np.eye(5), atol=1e-9)
    assert axis_subspace(3, 3).complement() is None


def test_subspace_rejects_non_orthonormal():
    with pytest.raises(ValueError):
        Subspace([[1, 1, 0]])


def test_is_special_orthogonal():
    assert is_special_orthogonal(np.eye(3))
    assert not is_special_orthogonal(np.diag([1, 1, -1]))
    # 30 degrees, built from cos/sin directly
    c, s = np.sqrt(3) / 2, 0.5
    assert is_special_orthogonal(np.array([[c, -s], [s, c]]))
    assert is_special_orthogonal(rotation_2d(np.pi / 6))
    assert not is_special_orthogonal(2 * np.eye(2))
    assert not is_special_orthogonal(np.ones((2, 3)))


def test_point_index_boundary_and_confirmation():
    # a point sitting on a rounding boundary of the first grid
    pts = np.array([[0.1234565, 0.0], [1.0, 2.0]])
    idx = PointIndex(pts)
    q = pts + np.array([[4e-10, 0.0], [0.0, -4e-10]])
    np.testing.assert_array_equal(idx.find(q), [0, 1])
    assert idx.find([[0.1234567, 0.0]])[0] == -1
    with pytest.raises(ArithmeticError):
        idx.find([[1.0 + 1e-8, 2.0]], strict=True)
