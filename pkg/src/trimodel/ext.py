"""Relative extension groups, Baer sums, the extension-lifting test and six-term sequences.

An extension class is stored as the connecting map w: X -> Y[1] of a
triangle Y -> E -> X -> Y[1]. The group is the subspace of Hom(X, Y[1])
of those w whose triangle lies in the proper class.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gf, scan
from .addcat import Mor, Obj
from .errors import PreconditionError, TheoremViolation
from .memo import Memo
from .proper import ProperClass, triangle_json
from .tricat import Triangle, TriangulatedBackend


@dataclass
class ExtGroup:
    X: Obj
    Y: Obj
    ambient_dim: int
    basis: np.ndarray  # rows span the member subspace of Hom(X, Y[1])
    p: int

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def contains(self, w: Mor) -> bool:
        return gf.in_span(self.basis, w.coords, self.p)

    def to_json(self) -> dict:
        return {"X": list(self.X.mult), "Y": list(self.Y.mult), "ambient_dim": self.ambient_dim, "dim": self.dim, "basis": self.basis.tolist()}


def extension_triangle(be: TriangulatedBackend, w: Mor) -> Triangle:
    """A distinguished triangle Y -> E -> X -w-> Y[1] for w: X -> Y[1]."""
    y = be.shift(w.target, -1)
    c = be.cone(-be.shift(w, -1))
    t = be.rotate(c, 1)
    if t.w != w or t.X != y:
        raise TheoremViolation("rotated completion does not end with the given map")
    return t


_EXT_MEMO: dict[int, tuple[ProperClass, Memo]] = {}


def _memo_for(xi: ProperClass) -> Memo:
    hit = _EXT_MEMO.get(id(xi))
    if hit is None or hit[0] is not xi:
        hit = _EXT_MEMO[id(xi)] = (xi, Memo())
    return hit[1]


def ext_group(x: Obj, y: Obj, xi: ProperClass) -> ExtGroup:
    be = xi.backend

    def build() -> ExtGroup:
        cat, p = be.cat, be.p
        y1 = be.shift(y)
        n = cat.hom_size(x, y1)
        members = []
        for w in scan.all_homs(be, x, y1):
            if xi.contains(extension_triangle(be, w)):
                members.append(w.coords)
        basis = gf.row_space_basis(np.array(members, dtype=np.int64).reshape(len(members), n), p)
        if len(members) != p ** basis.shape[0]:
            raise TheoremViolation(f"extension classes from {cat.name(x)} to {cat.name(y)} do not form a subgroup")
        return ExtGroup(x, y, n, basis, p)

    return _memo_for(xi).get((x.mult, y.mult), build)


def ext_dim(x: Obj, y: Obj, xi: ProperClass) -> int:
    return ext_group(x, y, xi).dim


def ext_vanishes(x: Obj, y: Obj, xi: ProperClass) -> bool:
    """Ext(x, y) = 0, computed summand by summand."""
    cat = xi.backend.cat
    for a in x.support:
        for b in y.support:
            if ext_dim(cat.indec(a), cat.indec(b), xi):
                return False
    return True


def baer_sum(t1: Triangle, t2: Triangle, xi: ProperClass) -> Triangle:
    be = xi.backend
    cat = be.cat
    if (t1.X, t1.Z) != (t2.X, t2.Z):
        raise PreconditionError("triangles must share their end objects")
    if not (xi.contains(t1) and xi.contains(t2)):
        raise PreconditionError("both triangles must lie in the proper class")
    y, x = t1.X, t1.Z
    total = be.direct_sum_triangle(t1, t2)
    diagonal = cat.column(cat.identity(x), cat.identity(x))
    pulled = be.base_change(total, diagonal).row
    codiagonal = cat.row(cat.identity(y), cat.identity(y))
    out = be.cobase_change(pulled, codiagonal).row
    if out.w != t1.w + t2.w:
        raise TheoremViolation("Baer sum does not add connecting maps")
    if not xi.contains(out):
        raise TheoremViolation("Baer sum left the proper class")
    return out


# ---------------------------------------------------------------------------
# extension-lifting


@dataclass
class LiftingDiagram:
    """Rows A -i-> B -> X -> A[1] and Y -> C -p-> D -> Y[1], with alpha: A -> C, beta: B -> D."""

    top: Triangle
    bottom: Triangle
    alpha: Mor
    beta: Mor


def lifting_exists(d: LiftingDiagram, xi: ProperClass | None = None) -> Mor | None:
    be_cat = d.alpha.cat
    i, pmap = d.top.u, d.bottom.v
    if xi is not None and not (xi.contains(d.top) and xi.contains(d.bottom)):
        raise PreconditionError("both rows must lie in the proper class")
    if pmap @ d.alpha != d.beta @ i:
        raise PreconditionError("the square does not commute")
    b, c = i.target, pmap.source
    a = np.concatenate([be_cat.pre_matrix(i, c), be_cat.post_matrix(pmap, b)], axis=0)
    rhs = np.concatenate([d.alpha.coords, d.beta.coords])
    sol = gf.solve_affine(a, rhs, be_cat.p)
    if sol is None:
        return None
    return Mor(be_cat, b, c, sol[0])


def all_squares_lift(be: TriangulatedBackend, i: Mor, pmap: Mor) -> tuple[bool, tuple[Mor, Mor] | None]:
    """Whether every commutative square from i to pmap has a diagonal filler.

    Commuting squares (alpha, beta) with p alpha = beta i form a subspace;
    those with a filler form the image of lambda -> (lambda i, p lambda).
    Returns a non-liftable square when one exists.
    """
    cat, p = be.cat, be.p
    a_obj, b_obj = i.source, i.target
    c_obj, d_obj = pmap.source, pmap.target
    na, nb = cat.hom_size(a_obj, c_obj), cat.hom_size(b_obj, d_obj)
    if na + nb == 0:
        return True, None
    # p alpha - beta i = 0
    eq = np.concatenate([cat.post_matrix(pmap, a_obj), (-cat.pre_matrix(i, d_obj)) % p], axis=1)
    squares = gf.kernel_basis(eq, p) if eq.shape[0] else [e for e in np.eye(na + nb, dtype=np.int64)]
    lam = np.concatenate([cat.pre_matrix(i, c_obj), cat.post_matrix(pmap, b_obj)], axis=0)
    lifted_rank = gf.rank(lam, p) if lam.size else 0
    if lifted_rank == len(squares):
        return True, None
    span = lam.T
    for s in squares:
        if not gf.in_span(span, s, p):
            return False, (Mor(cat, a_obj, c_obj, s[:na]), Mor(cat, b_obj, d_obj, s[na:]))
    raise TheoremViolation("lifting dimension count inconsistent")


def lifting_diagrams_shapes(x: Obj, y: Obj, xi: ProperClass, bound: int | None = None):
    """Pairs of rows (top ending at x, bottom starting at y) considered by the equivalence check.

    Rows run over one representative per isomorphism class of triangles in
    the class with middle object in the universe; for every bottom row
    Y -> C -> X the split top row C -> C + X -> X is added as well, since it
    is the diagram that detects a nonsplit extension.
    """
    be = xi.backend
    cat = be.cat
    tops = []
    for b in scan.objects(be, bound):
        for d in scan.homs(be, b, x):
            t = be.hok_triangle(d)
            if xi.contains(t):
                tops.append(t)
    bottoms = []
    for c in scan.objects(be, bound):
        for u in scan.homs(be, y, c):
            t = be.cone(u)
            if xi.contains(t):
                bottoms.append(t)
    pairs = [(t, s) for t in tops for s in bottoms]
    for s in bottoms:
        if s.Z == x:
            split_top = be.triangle(cat.inclusion([s.Y, x], 0), cat.projection([s.Y, x], 1), cat.zero(x, be.shift(s.Y)))
            pairs.append((split_top, s))
    return pairs


def extension_lifting_equivalence(x: Obj, y: Obj, xi: ProperClass, bound: int | None = None) -> bool:
    be = xi.backend
    ext_zero = ext_group(x, y, xi).is_zero
    lifts = True
    for top, bottom in lifting_diagrams_shapes(x, y, xi, bound):
        ok, _ = all_squares_lift(be, top.u, bottom.v)
        if not ok:
            lifts = False
            break
    if ext_zero != lifts:
        raise TheoremViolation(
            f"Ext vanishing ({ext_zero}) disagrees with the lifting property ({lifts}) for {be.cat.name(x)}, {be.cat.name(y)}"
        )
    return ext_zero


def find_nonliftable_diagram(x: Obj, y: Obj, xi: ProperClass, bound: int | None = None) -> LiftingDiagram | None:
    be = xi.backend
    for top, bottom in lifting_diagrams_shapes(x, y, xi, bound):
        ok, sq = all_squares_lift(be, top.u, bottom.v)
        if not ok:
            return LiftingDiagram(top, bottom, sq[0], sq[1])
    return None


# ---------------------------------------------------------------------------
# six-term exact sequences


@dataclass
class ExactnessReport:
    side: str
    triangle: dict
    test_object: list[int]
    dims: list[int]
    positions: list[bool] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(self.positions)

    def to_json(self) -> dict:
        return {"side": self.side, "triangle": self.triangle, "object": self.test_object, "dims": self.dims, "exact_at": self.positions, "exact": self.exact}


def _subspace(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def _exact_at(prev_map: np.ndarray, prev_dom: np.ndarray, next_map: np.ndarray, mid_dom: np.ndarray, p: int) -> bool:
    """Exactness of U -f-> V -g-> W at V, with U, V given as row bases inside ambient spaces."""
    img = (prev_map @ prev_dom.T) % p if prev_dom.size else np.zeros((prev_map.shape[0], 0), dtype=np.int64)
    img_rank = gf.rank(img.T, p) if img.size else 0
    if img.size and ((next_map @ img) % p).any():
        return False
    dmid = mid_dom.shape[0]
    if dmid == 0:
        return img_rank == 0
    gimg = (next_map @ mid_dom.T) % p if next_map.size else np.zeros((0, dmid), dtype=np.int64)
    kernel_dim = dmid - (gf.rank(gimg, p) if gimg.size else 0)
    return img_rank == kernel_dim


def six_term_check(t: Triangle, w_obj: Obj, side: str, xi: ProperClass) -> ExactnessReport:
    be = xi.backend
    cat, p = be.cat, be.p
    if not xi.contains(t):
        raise PreconditionError("triangle must lie in the proper class")
    f, g, h = t.u, t.v, t.w
    if side == "contravariant":
        y = w_obj
        y1 = be.shift(y)
        x1, x, x2 = t.X, t.Y, t.Z
        spaces = [
            _subspace(cat.hom_size(x2, y)),
            _subspace(cat.hom_size(x, y)),
            _subspace(cat.hom_size(x1, y)),
            ext_group(x2, y, xi).basis,
            ext_group(x, y, xi).basis,
            ext_group(x1, y, xi).basis,
        ]
        maps = [
            cat.pre_matrix(g, y),
            cat.pre_matrix(f, y),
            (cat.pre_matrix(h, y1) @ be._shift_matrix(x1, y)) % p,
            cat.pre_matrix(g, y1),
            cat.pre_matrix(f, y1),
        ]
    elif side == "covariant":
        x = w_obj
        y1, y, y2 = t.X, t.Y, t.Z
        spaces = [
            _subspace(cat.hom_size(x, y1)),
            _subspace(cat.hom_size(x, y)),
            _subspace(cat.hom_size(x, y2)),
            ext_group(x, y1, xi).basis,
            ext_group(x, y, xi).basis,
            ext_group(x, y2, xi).basis,
        ]
        maps = [
            cat.post_matrix(f, x),
            cat.post_matrix(g, x),
            cat.post_matrix(h, x),
            cat.post_matrix(be.shift(f), x),
            cat.post_matrix(be.shift(g), x),
        ]
    else:
        raise ValueError("side must be 'contravariant' or 'covariant'")
    # the connecting map must land in the extension group
    conn_img = (maps[2] @ spaces[2].T) % p if spaces[2].size else np.zeros((0, 0), dtype=np.int64)
    for col in conn_img.T:
        if not gf.in_span(spaces[3], col, p):
            raise TheoremViolation("connecting map leaves the extension group")
    positions = [_exact_at(maps[k - 1], spaces[k - 1], maps[k], spaces[k], p) for k in range(1, 5)]
    rep = ExactnessReport(side, triangle_json(t), list(w_obj.mult), [s.shape[0] for s in spaces], positions)
    if not rep.exact:
        raise TheoremViolation(f"six-term sequence not exact at positions {positions}")
    return rep
