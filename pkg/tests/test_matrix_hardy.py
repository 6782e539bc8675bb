import json
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardynorms.errors import (DimensionMismatch, DomainError, NonFinite, SingularMatrix,
                               ZeroMatrix)
from hardynorms.matrix_hardy import (RealMatrix, complex_pair_hp_norm, complex_pair_of_2x2,
                                     diag_hp_norm, matrix_dual_norm, matrix_h4_closed,
                                     matrix_hp_norm, matrix_inner, matrix_of_complex_pair,
                                     projection, random_orthogonal, sphere_moments)
from hardynorms.numerics import SphereGrid, sphere_grid

P1, P2 = projection(3, 1), projection(3, 2)


def test_projection_constants():
    assert matrix_hp_norm(P1, 1) == pytest.approx(0.5, abs=1e-12)
    assert matrix_hp_norm(P1, 4) == pytest.approx(5 ** -0.25, abs=1e-14)
    assert matrix_hp_norm(P1, 0) == pytest.approx(1 / math.e, abs=1e-12)
    assert matrix_hp_norm(P2, 1) == pytest.approx(math.pi / 4, abs=1e-12)
    assert matrix_hp_norm(P2, 4) == pytest.approx((8 / 15) ** 0.25, abs=1e-14)
    assert matrix_dual_norm(P1, 1) == pytest.approx(2 / 3, abs=1e-10)
    assert matrix_dual_norm(P2, 1) == pytest.approx(8 / (3 * math.pi), abs=1e-10)


def test_p2_h0_against_mpmath():
    # ||P2 x|| = sqrt(1 - u^2) with u uniform on [-1, 1]
    mp.mp.dps = 20
    val = mp.exp(mp.quad(lambda u: 0.5 * mp.log(1 - u * u), [0, 1]))
    assert matrix_hp_norm(P2, 0) == pytest.approx(float(val), rel=1e-12)


@pytest.mark.parametrize("p", [0, 0.5, 1, 3])
def test_n3_reduction_against_product_grid(p, rng):
    grid = sphere_grid(3, 64)
    for _ in range(5):
        A = rng.standard_normal((3, 3))
        assert matrix_hp_norm(A, p) == pytest.approx(matrix_hp_norm(A, p, grid), rel=1e-8)


@pytest.mark.parametrize("p", [0, 0.5, 1, 3])
def test_n2_complex_pair_against_circle_grid(p, rng):
    grid = sphere_grid(2, 2 ** 16)
    for _ in range(5):
        A = rng.standard_normal((2, 2))
        ref = matrix_hp_norm(A, p, grid)
        assert matrix_hp_norm(A, p) == pytest.approx(ref, rel=1e-11)
        assert complex_pair_hp_norm(A, p) == pytest.approx(ref, rel=1e-11)


def test_h4_closed_form_against_grids(rng):
    for n in (2, 3):
        grid = sphere_grid(n, 32)
        for _ in range(5):
            A = rng.standard_normal((n, n))
            assert matrix_h4_closed(A) == pytest.approx(matrix_hp_norm(A, 4, grid), rel=1e-13)
    A = rng.standard_normal((5, 5))
    assert matrix_h4_closed(A) == pytest.approx(matrix_hp_norm(A, 4, sphere_grid(5, 400_000)),
                                                rel=5e-3)


def test_sphere_moments():
    for n in range(2, 9):
        m = sphere_moments(n)
        assert n * m.alpha + n * (n - 1) * m.beta == pytest.approx(1.0, abs=1e-15)
    assert sphere_moments(3).alpha == pytest.approx(1 / 5)
    assert sphere_moments(3).beta == pytest.approx(1 / 15)
    with pytest.raises(DomainError):
        sphere_moments(1)


def test_h2_and_hinf(rng):
    A = rng.standard_normal((4, 4))
    s = np.linalg.svd(A, compute_uv=False)
    assert matrix_hp_norm(A, 2) == pytest.approx(np.linalg.norm(A) / 2, rel=1e-13)
    assert matrix_hp_norm(A, math.inf) == pytest.approx(s[0], rel=1e-13)


def test_h0_2x2_trace_norm(rng):
    # Mahler measure of a 2x2 matrix is half its trace norm; fails for n = 3 (P1 gives 1/e)
    A = rng.standard_normal((2, 2))
    assert matrix_hp_norm(A, 0) == pytest.approx(np.linalg.svd(A, compute_uv=False).sum() / 2)
    assert matrix_hp_norm(P1, 0) != pytest.approx(1 / 3, abs=1e-2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([0, 0.5, 1, 3, 4]), st.floats(0.1, 10))
def test_orthogonal_invariance_and_homogeneity(seed, p, c):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((3, 3))
    U, V = random_orthogonal(3, rng), random_orthogonal(3, rng)
    base = matrix_hp_norm(A, p)
    assert matrix_hp_norm(U @ A @ V, p) == pytest.approx(base, rel=1e-10)
    assert matrix_hp_norm(c * A, p) == pytest.approx(c * base, rel=1e-10)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_monotone_in_p(seed):
    A = np.random.default_rng(seed).standard_normal((3, 3))
    vals = [matrix_hp_norm(A, p) for p in (0, 0.5, 1, 2, 4, math.inf)]
    assert all(x <= y + 1e-10 for x, y in zip(vals, vals[1:]))


@pytest.mark.parametrize("p", [0, 0.5])
def test_triangle_2x2(p, rng):
    n = 10_000
    U, V = rng.standard_normal((n, 2, 2)), rng.standard_normal((n, 2, 2))
    norm = lambda M: diag_hp_norm(np.linalg.svd(M, compute_uv=False), p)  # noqa: E731
    assert np.all(norm(U + V) <= norm(U) + norm(V) + 1e-9)


def test_complex_pair_bridge(rng):
    for _ in range(10):
        A = rng.standard_normal((2, 2))
        a, b = complex_pair_of_2x2(A)
        assert np.allclose(matrix_of_complex_pair(a, b).entries, A)
        s = np.linalg.svd(A, compute_uv=False)
        assert s[0] == pytest.approx(abs(a) + abs(b))
        assert s[1] == pytest.approx(abs(abs(a) - abs(b)))
        # A x in complex notation equals a z + b conj(z)
        z = 0.3 - 0.8j
        y = A @ [z.real, z.imag]
        assert complex(*y) == pytest.approx(a * z + b * z.conjugate())


def test_inner_product_is_sphere_average(rng):
    A, B = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
    g = sphere_grid(3, 8)
    avg = g.integrate(np.einsum("ki,ki->k", g.nodes @ A.T, g.nodes @ B.T))
    assert matrix_inner(A, B) == pytest.approx(avg, rel=1e-13)


@pytest.mark.parametrize("p,q", [(1, math.inf), (4, 4 / 3), (2, 2)])
def test_holder(p, q, rng):
    for _ in range(10):
        A, B = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
        assert matrix_inner(A, B) <= matrix_hp_norm(A, q) * matrix_hp_norm(B, p) + 1e-8


def test_dual_reduced_vs_brute(rng):
    for n in (2, 3):
        A = rng.standard_normal((n, n))
        red = matrix_dual_norm(A, 1)
        brute = matrix_dual_norm(A, 1, "brute", samples=20_000, seed=1)
        assert brute <= red + 1e-9
        assert red - brute < 1e-4


def test_dual_n4_coordinate_ascent(rng):
    A = np.diag([1.0, 0.7, 0.4, 0.1])
    red = matrix_dual_norm(A, 4)
    brute = matrix_dual_norm(A, 4, "brute", samples=10_000, seed=2)
    assert brute <= red + 1e-9
    assert red - brute < 1e-3


def test_dual_dominates_ratios(rng):
    A = rng.standard_normal((3, 3))
    d = matrix_dual_norm(A, 1)
    for _ in range(50):
        B = rng.standard_normal((3, 3))
        assert abs(matrix_inner(A, B)) <= d * matrix_hp_norm(B, 1) + 1e-10


def test_dual_special_exponents(rng):
    A = rng.standard_normal((3, 3))
    s = np.linalg.svd(A, compute_uv=False)
    assert matrix_dual_norm(A, 2) == pytest.approx(matrix_hp_norm(A, 2))
    assert matrix_dual_norm(A, math.inf) == pytest.approx(s.mean())


def test_identity_dual():
    assert matrix_dual_norm(np.eye(3), 1) == pytest.approx(1.0, abs=1e-12)


def test_errors():
    with pytest.raises(ZeroMatrix):
        matrix_dual_norm(np.zeros((3, 3)), 1)
    with pytest.raises(DimensionMismatch):
        RealMatrix(np.ones((2, 3)))
    with pytest.raises(NonFinite):
        RealMatrix([[1, math.inf], [0, 1]])
    with pytest.raises(DimensionMismatch):
        matrix_inner(np.eye(2), np.eye(3))
    with pytest.raises(DimensionMismatch):
        matrix_hp_norm(np.eye(3), 1, sphere_grid(2, 8))
    with pytest.raises(DomainError):
        matrix_dual_norm(np.eye(2), 1, method="magic")


def test_singular_on_grid_node():
    # a node exactly in the kernel makes the log integrand infinite
    grid = SphereGrid(2, np.array([[1.0, 0.0], [0.0, 1.0]]), np.array([0.5, 0.5]))
    with pytest.raises(SingularMatrix):
        matrix_hp_norm(np.diag([1.0, 0.0]), 0, grid)
    assert matrix_hp_norm(np.diag([1.0, 0.0]), 1, grid) == 0.5


def test_zero_matrix_norm():
    assert matrix_hp_norm(np.zeros((3, 3)), 1) == 0.0


def test_json_round_trip(tmp_path):
    A = RealMatrix([[1.0, 2.5], [-0.125, 3.0]])
    path = tmp_path / "a.json"
    path.write_text(A.to_json())
    B = RealMatrix.load(path)
    assert np.array_equal(A.entries, B.entries)
    assert json.loads(A.to_json())["n"] == 2
    with pytest.raises(DimensionMismatch):
        RealMatrix.from_json('{"n": 2, "rows": [[1, 2]]}')
    with pytest.raises(DomainError):
        RealMatrix.from_json('{"rows": [[1]]}')


def test_entries_read_only():
    A = RealMatrix(np.eye(2))
    with pytest.raises(ValueError):
        A.entries[0, 0] = 5.0
