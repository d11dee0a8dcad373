import pytest

from trimodel import proper as pc
from trimodel import scan
from trimodel.errors import PreconditionError


class IndecomposableFirstTerm(pc.ProperClass):
    """Split triangles plus those whose first object is indecomposable; not closed under sums."""

    kind = "test"

    def _member(self, t):
        return t.w.is_zero or t.X.total == 1


@pytest.mark.parametrize("name", ["all", "split"])
def test_vec_classes_are_proper(vec, name):
    report = pc.verify_proper_class_axioms(vec.xi(name))
    assert report.passed, report.to_json()


def test_class_without_sum_closure_fails(n3):
    xi = IndecomposableFirstTerm(n3.backend, "indecomposable-first")
    report = pc.verify_proper_class_axioms(xi)
    assert not report.passed
    failing = [v for v in report.verdicts if v.passed is False]
    assert failing and failing[0].counterexample is not None


def test_membership_basics(n3):
    be = n3.backend
    all_, split = n3.xi("all"), n3.xi("split")
    for t in pc.distinguished_triangles(be):
        assert all_.contains(t)
        assert split.contains(t) == t.w.is_zero


def test_cohomological_classes_contain_split(n3):
    be = n3.backend
    for name in ("coh_M1", "coh_M2"):
        xi = n3.xi(name)
        for t in pc.distinguished_triangles(be):
            if t.w.is_zero:
                assert xi.contains(t)


def test_strictness_is_recorded(n3, capsys):
    rows = {name: pc.strictness_report(n3.xi(name)) for name in ("all", "split", "coh_M1", "coh_M2")}
    assert rows["all"] == (True, False)
    assert rows["split"][0] is False
    with capsys.disabled():
        print(f"\nstrictness (contains non-split, misses some): {rows}")


def test_proper_morphisms(n3):
    be = n3.backend
    cat = be.cat
    m1 = cat.indec(0)
    split = n3.xi("split")
    assert pc.is_proper(cat.identity(m1), "mono", split)
    assert pc.is_proper(cat.identity(m1), "epi", split)
    nonsplit = [u for u in scan.morphisms(be) if not be.cone(u).w.is_zero]
    assert nonsplit
    assert not pc.is_proper(nonsplit[0], "mono", split)
    with pytest.raises(ValueError):
        pc.is_proper(cat.identity(m1), "sideways", split)


def test_four_term_triangles(n3):
    be = n3.backend
    xi = n3.xi("all")
    made = 0
    for alpha, beta in list(scan.composable_pairs(be))[::25]:
        for case in (1, 2, 3, 4):
            t = pc.four_term_triangle(alpha, beta, case, xi)
            assert be.is_distinguished(t)
            made += 1
    assert made


def test_four_term_preconditions(n3):
    be = n3.backend
    split = n3.xi("split")
    nonsplit = next(u for u in scan.morphisms(be) if not be.cone(u).w.is_zero)
    before = be.cat.identity(nonsplit.source)
    with pytest.raises(PreconditionError):
        pc.four_term_triangle(before, nonsplit, 2, split)
    with pytest.raises(PreconditionError):
        pc.four_term_triangle(nonsplit, nonsplit, 1, split)


def test_opposite_class(n3):
    be = n3.backend
    xi = pc.OppositeClass(n3.xi("split"))
    report = pc.verify_proper_class_axioms(xi)
    assert report.passed
    for t in pc.distinguished_triangles(be)[:40]:
        assert xi.contains(be.to_opposite_triangle(t)) == t.w.is_zero


def test_explicit_class_of_split_seeds(vec):
    be = vec.backend
    xi = pc.make_class(be, {"kind": "explicit", "seeds": []}, "seedless")
    for t in pc.distinguished_triangles(be):
        assert xi.contains(t) == t.w.is_zero
