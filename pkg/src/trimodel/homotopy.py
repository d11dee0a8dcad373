"""Homotopy relations, the fundamental push-out/pull-back conditions and quotient categories."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf, scan
from .addcat import Mor, Obj
from .cotorsion import Subcategory
from .errors import PreconditionError, TheoremViolation
from .model import ModelStructure, derive_triple, mor_json, pullback_square, pushout_square
from .tricat import TriangulatedBackend


# ---------------------------------------------------------------------------
# cylinders and path objects


@dataclass
class Cylinder:
    obj: Obj
    sigma: Mor
    d0: Mor
    d1: Mor
    h: Mor


@dataclass
class PathObject:
    obj: Obj
    s: Mor
    d0: Mor
    d1: Mor
    h: Mor


def _sections(be: TriangulatedBackend, sigma: Mor):
    """All d with sigma d = 1."""
    cat = be.cat
    a = sigma.target
    sol = gf.solve_affine(cat.post_matrix(sigma, a), cat.identity(a).coords, be.p)
    if sol is None:
        return []
    return [Mor(cat, a, sigma.source, v) for v in gf.enumerate_affine(sol[0], sol[1], be.p, be.budget)]


def _retractions(be: TriangulatedBackend, s: Mor):
    """All d with d s = 1."""
    cat = be.cat
    b = s.source
    sol = gf.solve_affine(cat.pre_matrix(s, b), cat.identity(b).coords, be.p)
    if sol is None:
        return []
    return [Mor(cat, s.target, b, v) for v in gf.enumerate_affine(sol[0], sol[1], be.p, be.budget)]


def left_homotopy(f: Mor, g: Mor, ms: ModelStructure, bound: int | None = None, require_cofibration: bool = False) -> Cylinder | None:
    """A cylinder A + A -(d0, d1)-> C -sigma-> A with sigma weq and h: C -> B restricting to f and g."""
    if (f.source, f.target) != (g.source, g.target):
        raise PreconditionError("f and g must be parallel")
    be = ms.backend
    cat, p = be.cat, be.p
    a, b = f.source, f.target
    for cyl in be.universe(bound):
        for sigma in scan.homs_up_to_source(be, cyl, a):
            if not ms.weq(sigma):
                continue
            secs = _sections(be, sigma)
            for d0 in secs:
                m0 = cat.pre_matrix(d0, b)
                for d1 in secs:
                    if require_cofibration and not ms.cofib(cat.row(d0, d1)):
                        continue
                    lhs = np.concatenate([m0, cat.pre_matrix(d1, b)], axis=0)
                    sol = gf.solve_affine(lhs, np.concatenate([f.coords, g.coords]), p)
                    if sol is not None:
                        return Cylinder(cyl, sigma, d0, d1, Mor(cat, cyl, b, sol[0]))
    return None


def right_homotopy(f: Mor, g: Mor, ms: ModelStructure, bound: int | None = None, require_fibration: bool = False) -> PathObject | None:
    """A path object B -s-> P -(d0; d1)-> B + B with s weq and h: A -> P lifting f and g."""
    if (f.source, f.target) != (g.source, g.target):
        raise PreconditionError("f and g must be parallel")
    be = ms.backend
    cat, p = be.cat, be.p
    a, b = f.source, f.target
    for path in be.universe(bound):
        for s in scan.homs_up_to_target(be, b, path):
            if not ms.weq(s):
                continue
            rets = _retractions(be, s)
            for d0 in rets:
                m0 = cat.post_matrix(d0, a)
                for d1 in rets:
                    if require_fibration and not ms.fib(cat.column(d0, d1)):
                        continue
                    lhs = np.concatenate([m0, cat.post_matrix(d1, a)], axis=0)
                    sol = gf.solve_affine(lhs, np.concatenate([f.coords, g.coords]), p)
                    if sol is not None:
                        return PathObject(path, s, d0, d1, Mor(cat, a, path, sol[0]))
    return None


def left_homotopic(f: Mor, g: Mor, ms: ModelStructure, bound: int | None = None, require_cofibration: bool = False) -> bool:
    return left_homotopy(f, g, ms, bound, require_cofibration) is not None


def right_homotopic(f: Mor, g: Mor, ms: ModelStructure, bound: int | None = None, require_fibration: bool = False) -> bool:
    return right_homotopy(f, g, ms, bound, require_fibration) is not None


def homotopy_equivalence_relation_check(ms: ModelStructure, a: Obj, b: Obj, bound: int | None = None, relation=None) -> dict:
    """Reflexivity, symmetry and transitivity of left homotopy on Hom(a, b)."""
    be = ms.backend
    rel = relation or (lambda f, g: left_homotopic(f, g, ms, bound))
    homs = list(scan.all_homs(be, a, b))
    table = {(f.key, g.key): rel(f, g) for f in homs for g in homs}
    out = {"reflexive": True, "symmetric": True, "transitive": True, "counterexample": None}
    for f in homs:
        if not table[(f.key, f.key)]:
            out["reflexive"] = False
            out["counterexample"] = {"f": mor_json(f)}
            return out
    for f in homs:
        for g in homs:
            if table[(f.key, g.key)] != table[(g.key, f.key)]:
                out["symmetric"] = False
                out["counterexample"] = {"f": mor_json(f), "g": mor_json(g)}
                return out
    for f in homs:
        for g in homs:
            if not table[(f.key, g.key)]:
                continue
            for h in homs:
                if table[(g.key, h.key)] and not table[(f.key, h.key)]:
                    out["transitive"] = False
                    out["counterexample"] = {"f": mor_json(f), "g": mor_json(g), "h": mor_json(h)}
                    return out
    return out


# ---------------------------------------------------------------------------
# conditions (iv) and (v)


def verify_fundamental_conditions(ms: ModelStructure, bound: int | None = None) -> tuple[bool, bool]:
    """Weak push-outs of trivial cofibrations and weak pull-backs of trivial fibrations stay trivial.

    The other leg is taken up to automorphisms of its free end, which only
    replaces the resulting square by an isomorphic one.
    """
    be = ms.backend
    tests = be.universe(bound)
    push_ok = True
    for i in scan.morphisms(be, bound):
        if not ms.tcofib(i):
            continue
        for c in be.universe(bound):
            for u in scan.homs_up_to_target(be, i.source, c):
                sq = pushout_square(be, i, u)
                if not (be.is_weak_pushout(sq, tests) and ms.tcofib(sq.bottom)):
                    push_ok = False
                    break
            if not push_ok:
                break
        if not push_ok:
            break
    pull_ok = True
    for pmap in scan.morphisms(be, bound):
        if not ms.tfib(pmap):
            continue
        for c in be.universe(bound):
            for v in scan.homs_up_to_source(be, c, pmap.target):
                sq = pullback_square(be, pmap, v)
                if not (be.is_weak_pullback(sq, tests) and ms.tfib(sq.left)):
                    pull_ok = False
                    break
            if not pull_ok:
                break
        if not pull_ok:
            break
    return push_ok, pull_ok


# ---------------------------------------------------------------------------
# quotient categories


@dataclass
class QuotientCategory:
    """Objects are indecomposables; ideal[(a, b)] holds row-basis vectors of N(a, b) inside Hom(a, b)."""

    backend: TriangulatedBackend
    objects: list[int]
    ideal: dict

    def hom_dim(self, a: int, b: int) -> int:
        cat = self.backend.cat
        return cat.hom_size(cat.indec(a), cat.indec(b)) - self.ideal[(a, b)].shape[0]

    def dims(self) -> list[list[int]]:
        return [[self.hom_dim(a, b) for b in self.objects] for a in self.objects]

    def check_ideal(self) -> bool:
        """N is closed under composition with arbitrary maps on either side."""
        be = self.backend
        cat, p = be.cat, be.p
        for a in self.objects:
            for b in self.objects:
                n_ab = self.ideal[(a, b)]
                if n_ab.shape[0] == 0:
                    continue
                for c in self.objects:
                    for gvec in gf.all_vectors(cat.hom_size(cat.indec(b), cat.indec(c)), p):
                        g = Mor(cat, cat.indec(b), cat.indec(c), gvec)
                        for row in n_ab:
                            comp = g @ Mor(cat, cat.indec(a), cat.indec(b), row)
                            if not gf.in_span(self.ideal[(a, c)], comp.coords, p):
                                return False
                    for hvec in gf.all_vectors(cat.hom_size(cat.indec(c), cat.indec(a)), p):
                        h = Mor(cat, cat.indec(c), cat.indec(a), hvec)
                        for row in n_ab:
                            comp = Mor(cat, cat.indec(a), cat.indec(b), row) @ h
                            if not gf.in_span(self.ideal[(c, b)], comp.coords, p):
                                return False
        return True

    def to_json(self) -> dict:
        cat = self.backend.cat
        return {"objects": [cat.labels[a] for a in self.objects], "hom_dims": self.dims()}


def factoring_subspace(be: TriangulatedBackend, a: Obj, b: Obj, through: Subcategory) -> np.ndarray:
    """Maps a -> b factoring through an object of ``through``; additive in the middle object."""
    cat, p = be.cat, be.p
    vecs = []
    for w_idx in sorted(through.indecs):
        w = cat.indec(w_idx)
        for fvec in np.eye(cat.hom_size(a, w), dtype=np.int64):
            f = Mor(cat, a, w, fvec)
            for gvec in np.eye(cat.hom_size(w, b), dtype=np.int64):
                vecs.append((Mor(cat, w, b, gvec) @ f).coords)
    n = cat.hom_size(a, b)
    return gf.row_space_basis(np.array(vecs, dtype=np.int64).reshape(len(vecs), n), p)


def additive_quotient(s: Subcategory, i: Subcategory, be: TriangulatedBackend) -> QuotientCategory:
    if not i <= s:
        raise PreconditionError("the ideal's objects must lie in the subcategory")
    cat = be.cat
    objs = sorted(s.indecs)
    ideal = {(a, b): factoring_subspace(be, cat.indec(a), cat.indec(b), i) for a in objs for b in objs}
    return QuotientCategory(be, objs, ideal)


def pi_cf(ms: ModelStructure, bound: int | None = None) -> QuotientCategory:
    """Cofibrant-fibrant indecomposables modulo maps homotopic to zero."""
    be = ms.backend
    cat, p = be.cat, be.p
    c, f_cls, _ = derive_triple(ms)
    objs = sorted((c & f_cls).indecs)
    ideal = {}
    for a in objs:
        for b in objs:
            ao, bo = cat.indec(a), cat.indec(b)
            zero = cat.zero(ao, bo)
            members = []
            for f in scan.all_homs(be, ao, bo):
                left = left_homotopic(f, zero, ms, bound)
                right = right_homotopic(f, zero, ms, bound)
                if left != right:
                    raise TheoremViolation(f"left and right homotopy differ on {mor_json(f)}")
                if left:
                    members.append(f.coords)
            n = cat.hom_size(ao, bo)
            basis = gf.row_space_basis(np.array(members, dtype=np.int64).reshape(len(members), n), p)
            if len(members) != p ** basis.shape[0]:
                raise TheoremViolation("maps homotopic to zero do not form a subspace")
            ideal[(a, b)] = basis
    q = QuotientCategory(be, objs, ideal)
    if not q.check_ideal():
        raise TheoremViolation("homotopy to zero is not an ideal")
    return q


def quotient_equivalence_check(q1: QuotientCategory, q2: QuotientCategory) -> bool:
    if q1.objects != q2.objects:
        raise PreconditionError("quotients have different objects")
    p = q1.backend.p
    for key, n1 in q1.ideal.items():
        n2 = q2.ideal[key]
        if n1.shape[0] != n2.shape[0]:
            return False
        if any(not gf.in_span(n2, row, p) for row in n1):
            return False
    return True


def triangulation_diagnostic(q: QuotientCategory) -> dict:
    """Necessary conditions for the quotient to inherit the shift; reported, never asserted."""
    be = q.backend
    cat, p = be.cat, be.p
    objs = set(q.objects)
    closed = all(be.shift(cat.indec(a)).support <= objs for a in q.objects)
    stable = True
    if closed:
        for (a, b), n in q.ideal.items():
            sa, sb = be.shift(cat.indec(a)), be.shift(cat.indec(b))
            (a2,), (b2,) = sa.support, sb.support
            for row in n:
                img = be.shift(Mor(cat, cat.indec(a), cat.indec(b), row))
                if not gf.in_span(q.ideal[(a2, b2)], img.coords, p):
                    stable = False
    return {"label": "diagnostic", "objects_shift_closed": closed, "ideal_shift_stable": stable and closed}
