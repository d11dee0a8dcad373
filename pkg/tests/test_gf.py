import itertools

import numpy as np
import pytest

from trimodel import gf
from trimodel.errors import DimensionMismatch, SearchBudgetExceeded


def brute_kernel_size(a, p):
    cols = a.shape[1]
    return sum(1 for v in itertools.product(range(p), repeat=cols) if not ((a @ np.array(v)) % p).any())


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rank_matches_kernel_count(p):
    rng = np.random.default_rng(p)
    for _ in range(25):
        rows, cols = rng.integers(1, 5, size=2)
        a = rng.integers(0, p, size=(rows, cols))
        r = gf.rank(a, p)
        assert p ** (cols - r) == brute_kernel_size(a, p)
        kern = gf.kernel_matrix(a, p)
        assert kern.shape == (cols, cols - r)
        assert not ((a @ kern) % p).any()


def test_inverse_round_trip():
    rng = np.random.default_rng(7)
    found = 0
    for _ in range(40):
        a = rng.integers(0, 3, size=(3, 3))
        inv = gf.inverse(a, 3)
        if inv is None:
            assert gf.rank(a, 3) < 3
            continue
        found += 1
        assert np.array_equal((a @ inv) % 3, np.eye(3, dtype=np.int64))
    assert found


def test_solve_affine():
    a = np.array([[1, 1, 0], [0, 1, 1]])
    b = np.array([1, 0])
    x, kern = gf.solve_affine(a, b, 2)
    assert np.array_equal((a @ x) % 2, b)
    assert len(kern) == 1
    assert gf.solve_affine(np.array([[1, 1], [1, 1]]), np.array([0, 1]), 2) is None


def test_solve_affine_shape_check():
    with pytest.raises(DimensionMismatch):
        gf.solve_affine(np.eye(2, dtype=np.int64), np.array([1, 0, 0]), 2)


def test_in_span_and_empty_basis():
    basis = np.array([[1, 0, 1]])
    assert gf.in_span(basis, [1, 0, 1], 2)
    assert not gf.in_span(basis, [0, 1, 0], 2)
    assert gf.in_span(np.zeros((0, 3), dtype=np.int64), [0, 0, 0], 2)


def test_enumeration_order_and_index():
    vecs = gf.all_vectors(3, 2)
    assert [gf.vector_index(v, 2) for v in vecs] == list(range(8))
    assert [tuple(v) for v in gf.enumerate_vectors(2, 3)] == list(itertools.product(range(3), repeat=2))


def test_budget_is_enforced():
    with pytest.raises(SearchBudgetExceeded) as err:
        list(gf.enumerate_vectors(10, 2, budget=100))
    assert err.value.needed == 1024


def test_inverse_scalar():
    for x in range(1, 7):
        assert x * gf.inverse_scalar(x, 7) % 7 == 1
    with pytest.raises(ZeroDivisionError):
        gf.inverse_scalar(0, 7)
