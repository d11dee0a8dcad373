import pytest

from trimodel import scan
from trimodel.errors import PreconditionError
from trimodel.frobenius import SemisimpleBackend
from trimodel.tricat import verify_triangulated_axioms


def test_rotation_round_trip(n3):
    be = n3.backend
    for u in scan.morphisms(be):
        t = be.cone(u)
        assert be.rotate(be.rotate(t, 1), -1) == t
        assert be.is_distinguished(be.rotate(t, 3))


def test_zero_third_map_means_split(n3):
    be = n3.backend
    for u in scan.morphisms(be):
        t = be.cone(u)
        zero_w, mono, epi = be.split_forms(t)
        assert zero_w == mono == epi


def test_non_distinguished_sign_flip(vec):
    # flipping a sign on the second map of a non-split triangle breaks exactness only on non-degenerate data
    be = vec.backend
    cat = be.cat
    k = cat.indec(0)
    t = be.cone(cat.zero(k, k))
    assert be.is_distinguished(t)
    bogus = be.triangle(t.u, cat.zero(t.Y, t.Z), t.w, check=False)
    assert not be.is_distinguished(bogus)


def test_completion_helpers(n3):
    be = n3.backend
    for u in list(scan.morphisms(be))[:20]:
        t = be.cone(u)
        w = be.complete(t.u, t.v)
        assert w is not None and be.is_distinguished(be.triangle(t.u, t.v, w, check=False))
        first = be.complete_first(t.v, t.w)
        assert first is not None and be.is_distinguished(be.triangle(first, t.v, t.w, check=False))


def test_homotopy_cartesian_squares(n3):
    from trimodel.model import pullback_square, pushout_square

    be = n3.backend
    objs = be.universe()
    for f in list(scan.morphisms(be))[::5]:
        for c in objs:
            for g in scan.homs_up_to_target(be, f.source, c):
                assert be.is_weak_pushout(pushout_square(be, f, g))
            for g in scan.homs_up_to_source(be, c, f.target):
                assert be.is_weak_pullback(pullback_square(be, f, g))


def test_square_must_commute(n3):
    be = n3.backend
    cat = be.cat
    m1 = cat.indec(0)
    one = cat.identity(m1)
    with pytest.raises(PreconditionError):
        be.square(one, one, one, cat.zero(m1, m1))


def test_octahedron_rows_are_distinguished(n3):
    be = n3.backend
    pairs = list(scan.composable_pairs(be))[::40]
    assert pairs
    for u, v in pairs:
        d = be.octahedron(u, v)
        for t in (d.first, d.composite, d.second, d.third):
            assert be.is_distinguished(t)


def test_opposite_involution(n3):
    be = n3.backend
    op = be.opposite()
    assert op.opposite() is be
    for u in list(scan.morphisms(be))[:30]:
        t = be.cone(u)
        t_op = be.to_opposite_triangle(t)
        assert op.is_distinguished(t_op)
        assert op.to_opposite_triangle(t_op) == t


def test_permutation_shift_backend():
    be = SemisimpleBackend(3, ["a", "b"], perm=[1, 0])
    report = verify_triangulated_axioms(be)
    assert report.passed, report.to_json()
    a = be.cat.indec(0)
    assert be.shift(a) == be.cat.indec(1)
    assert be.shift(a, 2) == a


def test_axiom_report_names(vec):
    report = verify_triangulated_axioms(vec.backend)
    names = [v.name for v in report.verdicts]
    assert names[:2] == ["identity-triangles", "cones-distinguished"]
    assert "zero-map-triangle-rejected" in names
    assert report.verdict("rotation").checked > 0
