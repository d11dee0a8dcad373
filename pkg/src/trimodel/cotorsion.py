"""Cotorsion pairs relative to a proper class."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from . import gf, scan
from .addcat import Mor, Obj
from .errors import PreconditionError, TheoremViolation
from .ext import ext_dim, ext_group, extension_triangle
from .proper import ProperClass, triangle_json
from .tricat import Triangle, TriangulatedBackend


@dataclass(frozen=True)
class Subcategory:
    """Additive subcategory generated by a set of indecomposables; summand-closed by construction."""

    indecs: frozenset[int]

    @classmethod
    def of(cls, items: Iterable[int]) -> Subcategory:
        return cls(frozenset(int(i) for i in items))

    def contains(self, x: Obj) -> bool:
        return x.support <= self.indecs

    __contains__ = contains

    def __and__(self, other: Subcategory) -> Subcategory:
        return Subcategory(self.indecs & other.indecs)

    def __le__(self, other: Subcategory) -> bool:
        return self.indecs <= other.indecs

    def objects(self, be: TriangulatedBackend, bound: int | None = None) -> list[Obj]:
        return [x for x in be.universe(bound) if self.contains(x)]

    def labels(self, cat) -> list[str]:
        return [cat.labels[i] for i in sorted(self.indecs)]


def everything(be: TriangulatedBackend) -> Subcategory:
    return Subcategory.of(range(be.cat.n))


def nothing() -> Subcategory:
    return Subcategory(frozenset())


def core(x: Subcategory, y: Subcategory) -> Subcategory:
    return x & y


def orthogonal(s: Subcategory, side: str, xi: ProperClass) -> Subcategory:
    """Right side: Z with Ext(S, Z) = 0. Left side: Z with Ext(Z, S) = 0."""
    cat = xi.backend.cat
    out = []
    for z in range(cat.n):
        zo = cat.indec(z)
        if side == "right":
            ok = all(ext_dim(cat.indec(a), zo, xi) == 0 for a in s.indecs)
        elif side == "left":
            ok = all(ext_dim(zo, cat.indec(a), xi) == 0 for a in s.indecs)
        else:
            raise ValueError("side must be 'left' or 'right'")
        if ok:
            out.append(z)
    return Subcategory.of(out)


def ext_orthogonal(x: Subcategory, y: Subcategory, xi: ProperClass) -> bool:
    cat = xi.backend.cat
    return all(ext_dim(cat.indec(a), cat.indec(b), xi) == 0 for a in x.indecs for b in y.indecs)


def is_cotorsion_pair(x: Subcategory, y: Subcategory, xi: ProperClass) -> bool:
    return orthogonal(x, "right", xi) == y and orthogonal(y, "left", xi) == x


# ---------------------------------------------------------------------------
# completeness


@dataclass
class CompletenessReport:
    bound: int
    complete: bool
    witnesses: dict = field(default_factory=dict)
    failing: str | None = None

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "complete_within_bound": self.complete,
            "failing_object": self.failing,
            "witnesses": {k: {side: triangle_json(t) for side, t in v.items()} for k, v in self.witnesses.items()},
        }


def approximation_triangle(t_obj: Obj, x: Subcategory, y: Subcategory, xi: ProperClass, bound: int | None = None) -> Triangle | None:
    """A triangle Y -> X -> T -> Y[1] in xi with X in x and Y in y, middle object in the universe."""
    be = xi.backend
    for mid in x.objects(be, bound):
        for d in scan.homs(be, mid, t_obj):
            t = be.hok_triangle(d)
            if t.X in y and xi.contains(t):
                return t
    return None


def coapproximation_triangle(t_obj: Obj, x: Subcategory, y: Subcategory, xi: ProperClass, bound: int | None = None) -> Triangle | None:
    """A triangle T -> Y' -> X' -> T[1] in xi with Y' in y and X' in x."""
    be = xi.backend
    for mid in y.objects(be, bound):
        for u in scan.homs(be, t_obj, mid):
            t = be.cone(u)
            if t.Z in x and xi.contains(t):
                return t
    return None


def completeness(x: Subcategory, y: Subcategory, xi: ProperClass, bound: int | None = None) -> CompletenessReport:
    """Search for both approximation triangles of every indecomposable.

    Sums of witnesses are witnesses for sums, so indecomposables suffice.
    A pair that is not a cotorsion pair is judged by Ext-orthogonality
    plus witnesses instead.
    """
    be = xi.backend
    cat = be.cat
    b = be.bound if bound is None else bound
    rep = CompletenessReport(b, True)
    if not ext_orthogonal(x, y, xi):
        rep.complete = False
        rep.failing = "Ext(X, Y) is nonzero"
        return rep
    for a in range(cat.n):
        t_obj = cat.indec(a)
        left = approximation_triangle(t_obj, x, y, xi, b)
        right = coapproximation_triangle(t_obj, x, y, xi, b)
        if left is None or right is None:
            rep.complete = False
            rep.failing = cat.labels[a]
            return rep
        rep.witnesses[cat.labels[a]] = {"approximation": left, "coapproximation": right}
    return rep


def is_complete_pair(x: Subcategory, y: Subcategory, xi: ProperClass, bound: int | None = None) -> bool:
    return is_cotorsion_pair(x, y, xi) and completeness(x, y, xi, bound).complete


# ---------------------------------------------------------------------------
# heredity


def closed_under_hokernels(x: Subcategory, xi: ProperClass, bound: int | None = None) -> bool:
    """K in x for every triangle K -> X1 -> X2 -> K[1] in xi with X1, X2 in x."""
    be = xi.backend
    objs = x.objects(be, bound)
    for x1 in objs:
        for x2 in objs:
            for d in scan.homs(be, x1, x2):
                t = be.hok_triangle(d)
                if xi.contains(t) and t.X not in x:
                    return False
    return True


def closed_under_hocokernels(y: Subcategory, xi: ProperClass, bound: int | None = None) -> bool:
    be = xi.backend
    objs = y.objects(be, bound)
    for y1 in objs:
        for y2 in objs:
            for u in scan.homs(be, y1, y2):
                t = be.cone(u)
                if xi.contains(t) and t.Z not in y:
                    return False
    return True


def heredity(x: Subcategory, y: Subcategory, xi: ProperClass, bound: int | None = None, require_complete: bool = True) -> tuple[bool, bool, bool]:
    """(both closures, hokernel closure of x, hocokernel closure of y); the three agree for complete pairs."""
    if require_complete and not is_complete_pair(x, y, xi, bound):
        raise PreconditionError("heredity comparison needs a complete cotorsion pair")
    hk = closed_under_hokernels(x, xi, bound)
    hc = closed_under_hocokernels(y, xi, bound)
    forms = (hk and hc, hk, hc)
    if require_complete and len(set(forms)) != 1:
        raise TheoremViolation(f"heredity forms disagree: {forms}")
    return forms


def is_hereditary_complete(x: Subcategory, y: Subcategory, xi: ProperClass, bound: int | None = None) -> bool:
    if not is_complete_pair(x, y, xi, bound):
        return False
    return heredity(x, y, xi, bound)[0]


# ---------------------------------------------------------------------------
# approximations and closure checks


def right_approximation(s: Subcategory, t_obj: Obj, be: TriangulatedBackend, bound: int | None = None) -> Mor | None:
    """A map W -> T from W in s through which every map from s to T factors.

    Factoring is additive in the source, so testing indecomposable sources
    is exact; only the size of W is bounded.
    """
    cat = be.cat
    tests = [cat.indec(a) for a in sorted(s.indecs)]
    for w in s.objects(be, bound):
        for t in scan.homs(be, w, t_obj):
            if all(_post_surjective(be, t, z) for z in tests):
                return t
    return None


def left_approximation(s: Subcategory, t_obj: Obj, be: TriangulatedBackend, bound: int | None = None) -> Mor | None:
    cat = be.cat
    tests = [cat.indec(a) for a in sorted(s.indecs)]
    for w in s.objects(be, bound):
        for t in scan.homs(be, t_obj, w):
            if all(_pre_surjective(be, t, z) for z in tests):
                return t
    return None


def _post_surjective(be: TriangulatedBackend, t: Mor, z: Obj) -> bool:
    """Hom(z, W) -> Hom(z, T) onto."""
    n = be.cat.hom_size(z, t.target)
    return n == 0 or gf.rank(be.cat.post_matrix(t, z), be.p) == n


def _pre_surjective(be: TriangulatedBackend, t: Mor, z: Obj) -> bool:
    """Hom(W, z) -> Hom(T, z) onto."""
    n = be.cat.hom_size(t.source, z)
    return n == 0 or gf.rank(be.cat.pre_matrix(t, z), be.p) == n


def contravariantly_finite(s: Subcategory, be: TriangulatedBackend, bound: int | None = None) -> bool:
    return all(right_approximation(s, be.cat.indec(a), be, bound) is not None for a in range(be.cat.n))


def covariantly_finite(s: Subcategory, be: TriangulatedBackend, bound: int | None = None) -> bool:
    return all(left_approximation(s, be.cat.indec(a), be, bound) is not None for a in range(be.cat.n))


def extension_closure_check(s: Subcategory, xi: ProperClass, bound: int | None = None) -> bool:
    be = xi.backend
    objs = s.objects(be, bound)
    for x2 in objs:
        for x1 in objs:
            for w in scan.homs(be, x2, be.shift(x1)):
                t = extension_triangle(be, w)
                if xi.contains(t) and t.Y not in s:
                    return False
    return True


def co_t_structure_check(x: Subcategory, y: Subcategory, be: TriangulatedBackend, bound: int | None = None) -> bool:
    cat = be.cat
    if not all(be.shift(cat.indec(a), -1) in x for a in x.indecs):
        return False
    if not all(be.shift(cat.indec(b)) in y for b in y.indecs):
        return False
    for a in x.indecs:
        for b in y.indecs:
            if cat.hom_size(cat.indec(a), be.shift(cat.indec(b))):
                return False
    # X[-1] -> T -> Y -> X with X in x, Y in y
    for a in range(cat.n):
        t_obj = cat.indec(a)
        found = False
        for mid in y.objects(be, bound):
            for u in scan.homs(be, t_obj, mid):
                if be.cone(u).Z in x:
                    found = True
                    break
            if found:
                break
        if not found:
            return False
    return True


def subcategory_lattice(be: TriangulatedBackend) -> list[Subcategory]:
    n = be.cat.n
    return [Subcategory.of(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)]


def ext_basis_dims(s: Subcategory, xi: ProperClass) -> dict:
    cat = xi.backend.cat
    return {(cat.labels[a], cat.labels[b]): ext_group(cat.indec(a), cat.indec(b), xi).dim for a in s.indecs for b in s.indecs}
