import itertools

import pytest

from trimodel import ext
from trimodel import proper as pc
from trimodel import scan
from trimodel.errors import PreconditionError


def test_split_class_has_no_extensions(n3):
    cat = n3.backend.cat
    m1 = cat.indec(0)
    assert ext.ext_dim(m1, m1, n3.xi("split")) == 0
    assert ext.ext_vanishes(m1, m1, n3.xi("split"))


def test_all_class_extensions_are_hom_into_shift(n3):
    be = n3.backend
    xi = n3.xi("all")
    for x, y in itertools.product(be.universe(), be.universe()):
        g = ext.ext_group(x, y, xi)
        assert g.dim == g.ambient_dim == be.cat.hom_size(x, be.shift(y))


def test_extension_triangle_ends(n3):
    be = n3.backend
    cat = be.cat
    m1, m2 = cat.indec(0), cat.indec(1)
    for w in scan.all_homs(be, m1, be.shift(m2)):
        t = ext.extension_triangle(be, w)
        assert (t.X, t.Z, t.w) == (m2, m1, w)
        assert be.is_distinguished(t)


def test_baer_sum_adds_third_maps(vec):
    be = vec.backend
    xi = vec.xi("all")
    k = be.cat.indec(0)
    ws = list(scan.all_homs(be, k, be.shift(k)))
    for w1, w2 in itertools.product(ws, ws):
        s = ext.baer_sum(ext.extension_triangle(be, w1), ext.extension_triangle(be, w2), xi)
        assert s.w == w1 + w2


def test_baer_sum_needs_shared_ends(n3):
    be = n3.backend
    cat = be.cat
    m1, m2 = cat.indec(0), cat.indec(1)
    a = ext.extension_triangle(be, cat.zero(m1, be.shift(m1)))
    b = ext.extension_triangle(be, cat.zero(m2, be.shift(m1)))
    with pytest.raises(PreconditionError):
        ext.baer_sum(a, b, n3.xi("all"))


def test_nonliftable_diagram_when_ext_is_nonzero(n3):
    cat = n3.backend.cat
    m1 = cat.indec(0)
    xi = n3.xi("all")
    assert not ext.ext_vanishes(m1, m1, xi)
    d = ext.find_nonliftable_diagram(m1, m1, xi)
    assert d is not None
    assert ext.lifting_exists(d, xi) is None
    assert ext.find_nonliftable_diagram(m1, m1, n3.xi("split")) is None


def test_lifting_equivalence_small(vec):
    be = vec.backend
    for name in ("all", "split"):
        xi = vec.xi(name)
        for x, y in itertools.product(be.universe(), be.universe()):
            assert ext.extension_lifting_equivalence(x, y, xi) == ext.ext_group(x, y, xi).is_zero


def test_six_term_sequences(n3):
    be = n3.backend
    xi = n3.xi("coh_M1")
    tris = [t for t in pc.distinguished_triangles(be) if xi.contains(t)][:15]
    for t in tris:
        for w in be.universe():
            for side in ("contravariant", "covariant"):
                rep = ext.six_term_check(t, w, side, xi)
                assert rep.exact and len(rep.dims) == 6


def test_six_term_needs_member(n3):
    be = n3.backend
    t = next(t for t in pc.distinguished_triangles(be) if not t.w.is_zero)
    with pytest.raises(PreconditionError):
        ext.six_term_check(t, be.cat.indec(0), "covariant", n3.xi("split"))
