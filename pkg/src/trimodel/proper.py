"""Proper classes of triangles: membership, axiom verification, proper morphisms."""

from __future__ import annotations

import itertools
from collections.abc import Sequence

import numpy as np

from . import gf, scan
from .addcat import Mor, Obj
from .errors import PreconditionError, TheoremViolation
from .memo import Memo
from .tricat import Triangle, TriangulatedBackend
from .verdicts import AxiomReport, run_axiom, triangle_json


class ProperClass:
    """A class of distinguished triangles given by a decidable membership test."""

    kind = "abstract"

    def __init__(self, backend: TriangulatedBackend, name: str | None = None):
        self.backend = backend
        self.name = name or self.kind
        self._memo: Memo = Memo()
        self.check_distinguished = True

    def _member(self, t: Triangle) -> bool:
        raise NotImplementedError

    def contains(self, t: Triangle) -> bool:
        def build():
            if self.check_distinguished and not self.backend.is_distinguished(t):
                raise PreconditionError("membership is only defined for distinguished triangles")
            return self._member(t)

        return self._memo.get(t.key, build)

    __contains__ = contains

    def describe(self) -> dict:
        return {"name": self.name, "kind": self.kind}


class AllTriangles(ProperClass):
    kind = "all"

    def _member(self, t: Triangle) -> bool:
        return True


class SplitTriangles(ProperClass):
    kind = "split"

    def _member(self, t: Triangle) -> bool:
        return t.w.is_zero


class Cohomological(ProperClass):
    """Triangles sent to short exact sequences by Hom(M, -) at every shift."""

    kind = "cohomological"

    def __init__(self, backend: TriangulatedBackend, m: Obj, name: str | None = None):
        super().__init__(backend, name)
        self.m = m

    def _member(self, t: Triangle) -> bool:
        be = self.backend
        return all(short_exact_under_hom(be, self.m, be.shift_triangle(t, i)) for i in range(be.shift_data.order))

    def describe(self) -> dict:
        return {"name": self.name, "kind": self.kind, "object": list(self.m.mult)}


def short_exact_under_hom(be: TriangulatedBackend, m: Obj, t: Triangle) -> bool:
    """0 -> Hom(M, X) -> Hom(M, Y) -> Hom(M, Z) -> 0 exact (t has v u = 0)."""
    cat, p = be.cat, be.p
    dx, dy, dz = cat.hom_size(m, t.X), cat.hom_size(m, t.Y), cat.hom_size(m, t.Z)
    ru = gf.rank(cat.post_matrix(t.u, m), p)
    rv = gf.rank(cat.post_matrix(t.v, m), p)
    return ru == dx and rv == dz and ru + rv == dy


def short_exact_under_cohom(be: TriangulatedBackend, m: Obj, t: Triangle) -> bool:
    """0 -> Hom(Z, M) -> Hom(Y, M) -> Hom(X, M) -> 0 exact."""
    cat, p = be.cat, be.p
    dx, dy, dz = cat.hom_size(t.X, m), cat.hom_size(t.Y, m), cat.hom_size(t.Z, m)
    rv = gf.rank(cat.pre_matrix(t.v, m), p)
    ru = gf.rank(cat.pre_matrix(t.u, m), p)
    return rv == dz and ru == dx and ru + rv == dy


class ExplicitClass(ProperClass):
    """Closure of seed triangles under isomorphism, suspension and finite sums, plus split triangles.

    A distinguished triangle is determined up to isomorphism by its first
    map, so membership reduces to an isomorphism of arrows between ``t.u``
    and a sum of suspended seed maps and a split inclusion.
    """

    kind = "explicit"

    def __init__(self, backend: TriangulatedBackend, seeds: Sequence[Mor], name: str | None = None):
        super().__init__(backend, name)
        be = backend
        self.pieces: list[Mor] = []
        seen = set()
        for s in seeds:
            for i in range(be.shift_data.order):
                piece = be.sign(i, be.shift(s, i))
                if piece.source.is_zero and piece.target.is_zero:
                    continue
                if piece.key not in seen:
                    seen.add(piece.key)
                    self.pieces.append(piece)
        self.verified = False

    def _member(self, t: Triangle) -> bool:
        be, cat = self.backend, self.backend.cat
        x, y = t.X, t.Y
        for combo in self._combos(x, y):
            rest_x, rest_y = x, y
            for piece in combo:
                rest_x, rest_y = rest_x.minus(piece.source), rest_y.minus(piece.target)
            try:
                c = rest_y.minus(rest_x)
            except PreconditionError:
                continue
            split_u = cat.inclusion([rest_x, c], 0)
            model = cat.direct_sum(*combo, split_u) if combo else split_u
            if arrow_isomorphic(be, t.u, model):
                return True
        return False

    def _combos(self, x: Obj, y: Obj):
        pieces = self.pieces

        def rec(start, rx, ry, chosen):
            yield list(chosen)
            for k in range(start, len(pieces)):
                pc = pieces[k]
                if pc.source <= rx and pc.target <= ry:
                    chosen.append(pc)
                    yield from rec(k, rx.minus(pc.source), ry.minus(pc.target), chosen)
                    chosen.pop()

        yield from rec(0, x, y, [])

    def describe(self) -> dict:
        return {"name": self.name, "kind": self.kind, "seeds": [p.to_json() for p in self.pieces]}


class OppositeClass(ProperClass):
    """The same class read in the opposite triangulated category."""

    kind = "opposite"

    def __init__(self, base: ProperClass):
        super().__init__(base.backend.opposite(), f"{base.name}-op")
        self.base = base

    def _member(self, t: Triangle) -> bool:
        return self.base.contains(self.backend.to_opposite_triangle(t))


def arrow_isomorphic(be: TriangulatedBackend, f: Mor, g: Mor) -> bool:
    """Whether b f = g a for some automorphisms a of the source and b of the target."""
    if f.source != g.source or f.target != g.target:
        return False
    cat, p = be.cat, be.p
    x, y = f.source, f.target
    na, nb = cat.hom_size(x, x), cat.hom_size(y, y)
    eq = np.concatenate([(-cat.post_matrix(g, x)) % p, cat.pre_matrix(f, y)], axis=1)
    if eq.shape[0] == 0:
        kern = [np.eye(na + nb, dtype=np.int64)[i] for i in range(na + nb)]
    else:
        kern = gf.kernel_basis(eq, p)
    for vec in gf.enumerate_affine(np.zeros(na + nb, dtype=np.int64), kern, p, be.budget):
        a = Mor(cat, x, x, vec[:na])
        b = Mor(cat, y, y, vec[na:])
        if cat.is_invertible_endo(a) and cat.is_invertible_endo(b):
            return True
    return False


# ---------------------------------------------------------------------------
# proper morphisms


def is_proper(u: Mor, side: str, xi: ProperClass) -> bool:
    be = xi.backend
    if side == "mono":
        return xi.contains(be.cone(u))
    if side == "epi":
        return xi.contains(be.epi_triangle(u))
    raise ValueError("side must be 'mono' or 'epi'")


# ---------------------------------------------------------------------------
# axiom verification


class DiagramCache:
    """Base and cobase change diagrams shared across proper classes of one backend."""

    def __init__(self, be: TriangulatedBackend):
        self.be = be
        self._bc: Memo = Memo()
        self._cbc: Memo = Memo()

    def base_change(self, t: Triangle, alpha: Mor):
        return self._bc.get((t.key, alpha.key), lambda: self.be.base_change(t, alpha))

    def cobase_change(self, t: Triangle, beta: Mor):
        return self._cbc.get((t.key, beta.key), lambda: self.be.cobase_change(t, beta))


_DIAGRAMS: dict[int, DiagramCache] = {}


def diagrams(be: TriangulatedBackend) -> DiagramCache:
    cache = _DIAGRAMS.get(id(be))
    if cache is None or cache.be is not be:
        cache = _DIAGRAMS[id(be)] = DiagramCache(be)
    return cache


def distinguished_triangles(be: TriangulatedBackend, bound: int | None = None) -> list[Triangle]:
    """One distinguished triangle per isomorphism class with X, Y in the universe."""
    return [be.cone(u) for u in scan.morphisms(be, bound)]


def verify_proper_class_axioms(xi: ProperClass, bound: int | None = None) -> AxiomReport:
    be = xi.backend
    cat = be.cat
    b = be.bound if bound is None else bound
    objs = be.universe(b)
    tris = distinguished_triangles(be, b)
    members = [t for t in tris if xi.contains(t)]
    report = AxiomReport(f"proper class {xi.name}", b)
    dcache = diagrams(be)

    def contains_split():
        n = 0
        for x in objs:
            for z in objs:
                t = be.split_triangle(x, z)
                n += 1
                if not xi.contains(t):
                    return False, n, triangle_json(t)
        return True, n, None

    def iso_closed():
        n = 0
        for t in members:
            for a, bb, c in _triangle_automorphisms(be, t):
                t2 = be.triangle(bb @ t.u @ cat.inverse(a), c @ t.v @ cat.inverse(bb), be.shift(a) @ t.w @ cat.inverse(c), check=False)
                n += 1
                if not xi.contains(t2):
                    return False, n, triangle_json(t2)
        return True, n, None

    def suspension_closed():
        n = 0
        for t in members:
            for i in list(range(1, be.shift_data.order)) + [-1]:
                t2 = be.shift_triangle(t, i)
                n += 1
                if not xi.contains(t2):
                    return False, n, {"triangle": triangle_json(t), "shift": i}
        return True, n, None

    def sum_closed():
        n = 0
        for t1, t2 in itertools.combinations_with_replacement(members, 2):
            s = be.direct_sum_triangle(t1, t2)
            n += 1
            if not xi.contains(s):
                return False, n, {"first": triangle_json(t1), "second": triangle_json(t2)}
        return True, n, None

    def base_closed():
        n = 0
        seen = set()
        for t in members:
            for z2 in objs:
                for alpha in scan.all_homs(be, z2, t.Z):
                    key = (t.X.mult, z2.mult, (t.w @ alpha).key)
                    if key in seen:
                        continue
                    seen.add(key)
                    d = dcache.base_change(t, alpha)
                    n += 1
                    if not xi.contains(d.row):
                        return False, n, {"triangle": triangle_json(t), "alpha": alpha.to_json()}
        return True, n, None

    def cobase_closed():
        n = 0
        seen = set()
        for t in members:
            for x2 in objs:
                for beta in scan.all_homs(be, t.X, x2):
                    key = (t.Z.mult, x2.mult, (be.shift(beta) @ t.w).key)
                    if key in seen:
                        continue
                    seen.add(key)
                    d = dcache.cobase_change(t, beta)
                    n += 1
                    if not xi.contains(d.row):
                        return False, n, {"triangle": triangle_json(t), "beta": beta.to_json()}
        return True, n, None

    def saturated():
        n = 0
        for t in tris:
            if xi.contains(t):
                continue
            # a non-member must never have a base change diagram with both ends in xi
            for z2 in objs:
                for alpha in scan.all_homs(be, z2, t.Z):
                    col = be.hok_triangle(alpha)
                    if not xi.contains(col):
                        continue
                    d = dcache.base_change(t, alpha)
                    n += 1
                    if xi.contains(d.row) and xi.contains(d.column_right):
                        return False, n, {"triangle": triangle_json(t), "alpha": alpha.to_json()}
        return True, n, None

    report.verdicts.append(run_axiom("contains split triangles", contains_split))
    report.verdicts.append(run_axiom("closed under isomorphism", iso_closed))
    report.verdicts.append(run_axiom("closed under suspension", suspension_closed))
    report.verdicts.append(run_axiom("closed under finite sums", sum_closed))
    report.verdicts.append(run_axiom("closed under base change", base_closed))
    report.verdicts.append(run_axiom("closed under cobase change", cobase_closed))
    report.verdicts.append(run_axiom("saturated", saturated))
    if isinstance(xi, ExplicitClass):
        xi.verified = report.passed
    return report


def _triangle_automorphisms(be: TriangulatedBackend, t: Triangle):
    """Generators of Aut(X) x Aut(Y) x Aut(Z), one factor at a time."""
    cat = be.cat
    ix, iy, iz = cat.identity(t.X), cat.identity(t.Y), cat.identity(t.Z)
    for a in cat.automorphism_generators(t.X):
        yield a, iy, iz
    for b in cat.automorphism_generators(t.Y):
        yield ix, b, iz
    for c in cat.automorphism_generators(t.Z):
        yield ix, iy, c


# ---------------------------------------------------------------------------
# reports


def rotation_closure_report(xi: ProperClass, bound: int | None = None) -> dict:
    """Whether xi is closed under rotation over the universe, cross-checked with xi = all."""
    be = xi.backend
    tris = distinguished_triangles(be, bound)
    rot_closed = True
    witness = None
    for t in tris:
        if not xi.contains(t):
            continue
        for k in (1, -1):
            r = be.rotate(t, k)
            if not xi.contains(r):
                rot_closed = False
                witness = {"triangle": triangle_json(t), "rotation": k}
                break
        if not rot_closed:
            break
    everything = all(xi.contains(t) for t in tris)
    if rot_closed != everything:
        raise TheoremViolation(
            f"rotation closure ({rot_closed}) disagrees with containing every triangle ({everything}) for {xi.name}"
        )
    return {"class": xi.name, "rotation_closed": rot_closed, "is_everything": everything, "witness": witness}


def strictness_report(xi: ProperClass, bound: int | None = None) -> tuple[bool, bool]:
    be = xi.backend
    tris = distinguished_triangles(be, bound)
    nonsplit = any(xi.contains(t) and not t.w.is_zero for t in tris)
    misses = any(not xi.contains(t) for t in tris)
    return nonsplit, misses


# ---------------------------------------------------------------------------
# four-term triangles


def four_term_triangle(alpha: Mor, beta: Mor, case: int, xi: ProperClass) -> Triangle:
    """The triangle relating homotopy kernels and cokernels of alpha, beta and beta alpha."""
    be = xi.backend
    if alpha.target != beta.source:
        raise PreconditionError("alpha and beta are not composable")
    ba = beta @ alpha
    if case == 1:
        if not is_proper(alpha, "epi", xi):
            raise PreconditionError("alpha must be a proper epimorphism")
        k = be.hok_triangle(beta).u
        t = be.base_change(be.hok_triangle(alpha), k).row
    elif case == 2:
        if not is_proper(beta, "mono", xi):
            raise PreconditionError("beta must be a proper monomorphism")
        va = be.cone(alpha).v
        t = be.cobase_change(be.cone(beta), va).row
    elif case == 3:
        if not (is_proper(alpha, "mono", xi) and is_proper(ba, "epi", xi)):
            raise PreconditionError("alpha must be a proper mono and beta alpha a proper epi")
        k = be.hok_triangle(beta).u
        t = be.rotate(be.base_change(be.rotate(be.cone(alpha), -1), k).row, 1)
    elif case == 4:
        if not (is_proper(beta, "epi", xi) and is_proper(ba, "mono", xi)):
            raise PreconditionError("beta must be a proper epi and beta alpha a proper mono")
        va = be.cone(alpha).v
        t = be.rotate(be.cobase_change(be.rotate(be.hok_triangle(beta), 1), va).row, -1)
    else:
        raise ValueError("case must be 1, 2, 3 or 4")
    if not xi.contains(t):
        raise TheoremViolation(f"four-term triangle of case {case} is not in {xi.name}")
    return t


def make_class(be: TriangulatedBackend, spec: dict, name: str | None = None) -> ProperClass:
    kind = spec.get("kind")
    if kind == "all":
        return AllTriangles(be, name)
    if kind == "split":
        return SplitTriangles(be, name)
    if kind == "cohomological":
        return Cohomological(be, _obj_from_spec(be, spec["object"]), name)
    if kind == "explicit":
        seeds = [be.cat.mor(be.cat.obj(s["source"]), be.cat.obj(s["target"]), s["coords"]) for s in spec["seeds"]]
        return ExplicitClass(be, seeds, name)
    raise ValueError(f"unknown proper class kind {kind!r}")


def _obj_from_spec(be: TriangulatedBackend, spec) -> Obj:
    if isinstance(spec, dict):
        m = [0] * be.cat.n
        for lab, k in spec.items():
            m[be.cat.index_of(lab)] = int(k)
        return Obj(tuple(m))
    return be.cat.obj(list(spec))
