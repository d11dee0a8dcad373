import numpy as np
import pytest

from trimodel import scan
from trimodel.addcat import CategoryPresentation
from trimodel.errors import ValidationError


def test_universe_sizes(n3, vec):
    assert len(n3.backend.universe()) == 6
    assert len(vec.backend.universe()) == 3
    assert all(x.total <= 2 for x in n3.backend.universe())


def test_composition_is_associative_on_samples(n3):
    be = n3.backend
    cat = be.cat
    objs = be.universe()
    rng = np.random.default_rng(0)
    for _ in range(30):
        a, b, c, d = (objs[i] for i in rng.integers(0, len(objs), 4))
        f = cat.mor(a, b, rng.integers(0, 2, cat.hom_size(a, b)))
        g = cat.mor(b, c, rng.integers(0, 2, cat.hom_size(b, c)))
        h = cat.mor(c, d, rng.integers(0, 2, cat.hom_size(c, d)))
        assert (h @ g) @ f == h @ (g @ f)
        assert cat.identity(b) @ f == f and f @ cat.identity(a) == f


def test_matrix_components_round_trip(n3):
    cat = n3.backend.cat
    m1, m2 = cat.indec(0), cat.indec(1)
    f = cat.basis_mor(0, 1, 0)
    g = cat.identity(m1)
    col = cat.column(f, g)
    assert cat.component(col, [m1], [m2, m1], 0, 0) == f
    assert cat.component(col, [m1], [m2, m1], 1, 0) == g
    assert cat.projection([m2, m1], 0) @ col == f


def test_orbit_representatives_cover_hom_space(n3):
    be = n3.backend
    cat = be.cat
    x, y = cat.obj(1, 1), cat.obj(0, 2)
    reps = cat.orbit_representatives(x, y, be.budget)
    assert sum(size for _, size in reps) == cat.hom_count(x, y)
    for side in ("source", "target"):
        one_sided = cat.orbit_representatives(x, y, be.budget, side=side)
        assert sum(size for _, size in one_sided) == cat.hom_count(x, y)
        assert len(one_sided) >= len(reps)


def test_isomorphisms_detected(n3):
    cat = n3.backend.cat
    x = cat.obj(1, 1)
    for g in cat.automorphism_generators(x):
        ok, inv = cat.is_isomorphism(g)
        assert ok and g @ inv == cat.identity(x)
    assert not cat.is_isomorphism(cat.zero(x, x))[0]


def test_scan_homs_are_representatives(n3):
    be = n3.backend
    x = be.cat.obj(2, 0)
    assert len(scan.homs(be, x, x)) < len(list(scan.all_homs(be, x, x)))


def non_associative_table():
    # basis 1, a, b with a a = b, a b = a and b a = 0
    t = np.zeros((3, 3, 3), dtype=np.int64)
    for s in range(3):
        t[0, s, s] = 1
        t[s, 0, s] = 1
    t[1, 1, 2] = 1
    t[1, 2, 1] = 1
    return t


def test_non_associative_presentation_names_the_triple():
    with pytest.raises(ValidationError) as err:
        CategoryPresentation(2, ["E"], [[3]], {(0, 0, 0): non_associative_table()}, [[1, 0, 0]])
    assert "not associative on basis triple" in str(err.value)
    assert "E->E" in str(err.value)


def test_bad_identity_rejected():
    t = np.ones((1, 1, 1), dtype=np.int64)
    with pytest.raises(ValidationError):
        CategoryPresentation(2, ["k"], [[1]], {(0, 0, 0): t}, [[0]])
