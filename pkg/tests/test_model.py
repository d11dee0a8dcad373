import pytest

from trimodel import cotorsion as ct
from trimodel import model as md
from trimodel import scan
from trimodel.errors import PreconditionError


@pytest.fixture(scope="module")
def cofibrant_model(n3):
    """Every object cofibrant, no nonzero trivially fibrant object."""
    be = n3.backend
    ms = md.build_projective_model(ct.everything(be), ct.nothing(), n3.xi("all"))
    assert md.verify_model_axioms(ms).passed
    return ms


def test_object_classes(n3, cofibrant_model):
    be = n3.backend
    assert md.derive_triple(cofibrant_model) == (ct.everything(be), ct.everything(be), ct.nothing())
    assert md.psi(cofibrant_model) == (ct.everything(be), ct.nothing())


def test_non_hereditary_pair_is_rejected(n3):
    be = n3.backend
    ms = md.build_projective_model(ct.everything(be), ct.everything(be), n3.xi("all"))
    report = md.verify_model_axioms(ms)
    assert not report.passed
    assert any(v.counterexample for v in report.verdicts if v.passed is False)


def test_constructive_factorizations(n3, cofibrant_model):
    ms = cofibrant_model
    for f in scan.morphisms(n3.backend):
        first, second = md.factorize(f, ms, "cofib-tfib")
        assert second @ first == f and ms.cofib(first) and ms.tfib(second)
        first, second = md.factorize(f, ms, "tcofib-fib")
        assert second @ first == f and ms.tcofib(first) and ms.fib(second)


def test_factorize_needs_projective_construction(n3):
    be = n3.backend
    ms = md.build_injective_model(ct.everything(be), ct.nothing(), n3.xi("all"))
    f = next(iter(scan.morphisms(be)))
    with pytest.raises(PreconditionError):
        md.factorize(f, ms, "cofib-tfib")


def test_obvious_factorizations_compose(n3):
    for f in list(scan.morphisms(n3.backend))[:30]:
        for first, second in md.obvious_factorizations(f):
            assert second @ first == f


def test_dual_constructions_agree(n3):
    be = n3.backend
    xi = n3.xi("all")
    x, y = ct.everything(be), ct.nothing()
    direct = md.build_injective_model(x, y, xi)
    moved = md.transported_injective_model(x, y, xi)
    assert md.same_predicates(direct, moved) is None


def test_weak_projectivity_and_characterizations(n3, cofibrant_model):
    wp = md.weakly_projective_check(cofibrant_model)
    assert wp.verdict and wp.agree and wp.all_fibrant
    assert md.tclass_characterization_check(cofibrant_model)
    closure = md.closure_check(cofibrant_model)
    assert closure["retracts"] and closure["pushouts"] and closure["pullbacks"]


def test_projectives(n3):
    proj, enough = md.xi_projective_report(n3.xi("all"))
    assert proj == ct.nothing() and enough
    proj, _ = md.xi_projective_report(n3.xi("split"))
    assert proj == ct.everything(n3.backend)


def test_hovey_triple_detection(n3):
    xi = n3.xi("all")
    everything, nothing = ct.everything(n3.backend), ct.nothing()
    assert md.is_hovey_triple(everything, everything, nothing, xi)
    assert not md.is_hovey_triple(n3.subcategory("M1"), everything, everything, xi)
    assert md.is_thick(everything, xi) and md.is_thick(nothing, xi)
    assert not md.is_thick(n3.subcategory("M1"), xi)


def test_vec_split_model(vec):
    be = vec.backend
    everything = ct.everything(be)
    ms = md.build_projective_model(everything, everything, vec.xi("split"))
    assert md.verify_model_axioms(ms).passed
    # every map is a weak equivalence in this model
    assert all(ms.weq(f) for f in scan.morphisms(be))
