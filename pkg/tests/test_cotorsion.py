import pytest

from trimodel import cotorsion as ct
from trimodel.errors import PreconditionError


def names(fx, s):
    return fx.subcategory_name(s)


def test_all_class_cotorsion_pairs(n3):
    xi = n3.xi("all")
    lat = ct.subcategory_lattice(n3.backend)
    pairs = sorted((names(n3, x), names(n3, y)) for x in lat for y in lat if ct.is_cotorsion_pair(x, y, xi))
    assert ("all", "zero") in pairs and ("zero", "all") in pairs
    hc = sorted(p for p in pairs if ct.is_hereditary_complete(n3.subcategory(p[0]), n3.subcategory(p[1]), xi))
    assert hc == [("all", "zero"), ("zero", "all")]


def test_split_class_has_one_pair(n3):
    xi = n3.xi("split")
    lat = ct.subcategory_lattice(n3.backend)
    pairs = [(x, y) for x in lat for y in lat if ct.is_cotorsion_pair(x, y, xi)]
    everything = ct.everything(n3.backend)
    assert pairs == [(everything, everything)]


def test_orthogonals(n3):
    xi = n3.xi("all")
    everything = ct.everything(n3.backend)
    assert ct.orthogonal(everything, "right", xi) == ct.nothing()
    assert ct.orthogonal(ct.nothing(), "left", xi) == everything


def test_approximation_triangles(n3):
    be = n3.backend
    xi = n3.xi("all")
    x, y = ct.everything(be), ct.nothing()
    for a in range(be.cat.n):
        t = ct.approximation_triangle(be.cat.indec(a), x, y, xi)
        assert t is not None and t.Y in x and t.X in y
    rep = ct.completeness(x, y, xi)
    assert rep.complete


def test_heredity_refuses_incomplete_pairs(n3):
    xi = n3.xi("all")
    m1, m2 = n3.subcategory("M1"), n3.subcategory("M2")
    assert not ct.is_complete_pair(m1, m2, xi)
    with pytest.raises(PreconditionError):
        ct.heredity(m1, m2, xi)
    forms = ct.heredity(m1, m2, xi, require_complete=False)
    assert len(forms) == 3


def test_right_approximations(n3):
    be = n3.backend
    cat = be.cat
    m1 = n3.subcategory("M1")
    for a in range(cat.n):
        t = ct.right_approximation(m1, cat.indec(a), be)
        assert t is not None and t.source in m1
    assert ct.contravariantly_finite(ct.nothing(), be)
    assert ct.covariantly_finite(m1, be)


def test_co_t_structure_examples(n3):
    be = n3.backend
    everything, nothing = ct.everything(be), ct.nothing()
    assert ct.co_t_structure_check(everything, nothing, be)
    assert not ct.co_t_structure_check(n3.subcategory("M1"), n3.subcategory("M2"), be)


def test_extension_closure(n3):
    xi = n3.xi("all")
    assert ct.extension_closure_check(ct.everything(n3.backend), xi)
    assert not ct.extension_closure_check(n3.subcategory("M1"), xi)
