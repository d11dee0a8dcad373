import pytest

from trimodel import cotorsion as ct
from trimodel import homotopy as ho
from trimodel import model as md
from trimodel.errors import PreconditionError


@pytest.fixture(scope="module")
def cofibrant_model(n3):
    be = n3.backend
    return md.build_projective_model(ct.everything(be), ct.nothing(), n3.xi("all"))


@pytest.fixture(scope="module")
def hovey_split(n3):
    a = n3.subcategory("all")
    return md.build_xi_triangulated_model(a, a, a, n3.xi("split"))


def test_identity_not_null_homotopic(n3, cofibrant_model):
    cat = n3.backend.cat
    m1 = cat.indec(0)
    one, zero = cat.identity(m1), cat.zero(m1, m1)
    assert not ho.left_homotopic(one, zero, cofibrant_model)
    assert not ho.right_homotopic(one, zero, cofibrant_model)
    assert ho.left_homotopic(one, one, cofibrant_model)


def test_cylinder_witness_when_all_maps_are_weak(n3, hovey_split):
    cat = n3.backend.cat
    m1 = cat.indec(0)
    one, zero = cat.identity(m1), cat.zero(m1, m1)
    cyl = ho.left_homotopy(one, zero, hovey_split)
    assert cyl is not None
    assert cyl.sigma @ cyl.d0 == one and cyl.sigma @ cyl.d1 == one
    assert cyl.h @ cyl.d0 == one and cyl.h @ cyl.d1 == zero
    path = ho.right_homotopy(one, zero, hovey_split)
    assert path is not None and path.d0 @ path.h == one and path.d1 @ path.h == zero


def test_homotopy_category_dims(n3, cofibrant_model, hovey_split):
    q = ho.pi_cf(cofibrant_model)
    assert q.dims() == [[1, 1], [1, 1]]
    assert q.check_ideal()
    assert ho.pi_cf(hovey_split).dims() == [[0, 0], [0, 0]]


def test_equivalence_relation(n3, cofibrant_model):
    cat = n3.backend.cat
    rel = ho.homotopy_equivalence_relation_check(cofibrant_model, cat.indec(0), cat.indec(1))
    assert rel["reflexive"] and rel["symmetric"] and rel["transitive"]


def test_additive_quotient(n3):
    be = n3.backend
    everything = ct.everything(be)
    q = ho.additive_quotient(everything, n3.subcategory("M1"), be)
    # only the identity of M2 avoids factoring through M1
    assert q.dims() == [[0, 0], [0, 1]]
    assert ho.quotient_equivalence_check(q, q)
    with pytest.raises(PreconditionError):
        ho.additive_quotient(n3.subcategory("M1"), everything, be)


def test_fundamental_conditions_vec(vec):
    be = vec.backend
    everything = ct.everything(be)
    ms = md.build_projective_model(everything, everything, vec.xi("split"))
    assert ho.verify_fundamental_conditions(ms) == (True, True)


def test_triangulation_diagnostic(n3, cofibrant_model):
    diag = ho.triangulation_diagnostic(ho.pi_cf(cofibrant_model))
    assert diag["label"] == "diagnostic"
    assert set(diag) == {"label", "objects_shift_closed", "ideal_shift_stable"}
