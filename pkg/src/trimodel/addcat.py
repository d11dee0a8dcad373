"""Additive categories presented by a finite spectroid.

An object is a multiplicity vector over the indecomposables. Its summands
are listed in indecomposable order, copies of the same indecomposable
adjacent. A morphism ``X -> Y`` is stored as one flat coordinate vector:
the block for (target summand t, source summand s) holds coordinates in
``Hom(I_{a_s}, I_{b_t})`` and blocks are laid out target-major.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import gf
from .errors import DimensionMismatch, PreconditionError, ValidationError
from .memo import Memo


@dataclass(frozen=True)
class Obj:
    """Finite direct sum of indecomposables, given by multiplicities."""

    mult: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.mult)

    @cached_property
    def summands(self) -> tuple[int, ...]:
        return tuple(a for a, m in enumerate(self.mult) for _ in range(m))

    @property
    def is_zero(self) -> bool:
        return self.total == 0

    @property
    def support(self) -> frozenset[int]:
        return frozenset(a for a, m in enumerate(self.mult) if m)

    def __add__(self, other: Obj) -> Obj:
        if len(self.mult) != len(other.mult):
            raise DimensionMismatch("objects from different categories")
        return Obj(tuple(x + y for x, y in zip(self.mult, other.mult)))

    def __le__(self, other: Obj) -> bool:  # type: ignore[override]
        return all(x <= y for x, y in zip(self.mult, other.mult))

    def minus(self, other: Obj) -> Obj:
        if not other <= self:
            raise PreconditionError("not a summand")
        return Obj(tuple(x - y for x, y in zip(self.mult, other.mult)))

    def first_index(self, a: int) -> int:
        """Summand position of the first copy of indecomposable ``a``."""
        return sum(self.mult[:a])


class Mor:
    """A morphism of a presented additive category."""

    __slots__ = ("cat", "source", "target", "coords", "_key")

    def __init__(self, cat: CategoryPresentation, source: Obj, target: Obj, coords):
        c = np.asarray(coords, dtype=np.int64).reshape(-1) % cat.p
        if c.shape[0] != cat.hom_size(source, target):
            raise DimensionMismatch(
                f"morphism {source.mult}->{target.mult} needs {cat.hom_size(source, target)} coordinates,"
                f" got {c.shape[0]}"
            )
        c.flags.writeable = False
        self.cat = cat
        self.source = source
        self.target = target
        self.coords = c
        self._key = None

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.source.mult, self.target.mult, self.coords.tobytes())
        return self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Mor) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Mor({self.source.mult}->{self.target.mult}, {self.coords.tolist()})"

    def _same_shape(self, other: Mor) -> None:
        if self.source != other.source or self.target != other.target:
            raise DimensionMismatch("morphisms with different source/target")

    def __add__(self, other: Mor) -> Mor:
        self._same_shape(other)
        return Mor(self.cat, self.source, self.target, self.coords + other.coords)

    def __sub__(self, other: Mor) -> Mor:
        self._same_shape(other)
        return Mor(self.cat, self.source, self.target, self.coords - other.coords)

    def __neg__(self) -> Mor:
        return Mor(self.cat, self.source, self.target, -self.coords)

    def __rmul__(self, scalar: int) -> Mor:
        return Mor(self.cat, self.source, self.target, int(scalar) * self.coords)

    def __matmul__(self, other: Mor) -> Mor:
        return self.cat.compose(self, other)

    @property
    def is_zero(self) -> bool:
        return not self.coords.any()

    def block(self, t: int, s: int) -> np.ndarray:
        off, dims = self.cat.layout(self.source, self.target)
        return self.coords[off[t, s] : off[t, s] + dims[t, s]]

    def to_json(self) -> dict:
        return {"source": list(self.source.mult), "target": list(self.target.mult), "coords": self.coords.tolist()}


class CategoryPresentation:
    """Spectroid over GF(p): hom dimensions, composition constants, identities.

    ``composition[(a, b, c)]`` has shape ``(d_bc, d_ab, d_ac)`` and gives
    ``(g o f)_q = sum_{r,s} g_r f_s T[r, s, q]`` for ``g: I_b -> I_c`` and
    ``f: I_a -> I_b``.
    """

    def __init__(
        self,
        p: int,
        labels: Sequence[str],
        hom_dim,
        composition: Mapping[tuple[int, int, int], np.ndarray],
        identities: Sequence,
        validate: bool = True,
    ):
        self.p = int(p)
        self.labels = tuple(labels)
        self.n = len(self.labels)
        self.hom_dim = np.asarray(hom_dim, dtype=np.int64).reshape(self.n, self.n)
        self.comp = {}
        for a, b, c in itertools.product(range(self.n), repeat=3):
            shape = (self.hom_dim[b, c], self.hom_dim[a, b], self.hom_dim[a, c])
            t = composition.get((a, b, c))
            t = np.zeros(shape, dtype=np.int64) if t is None else np.asarray(t, dtype=np.int64) % self.p
            if t.shape != shape:
                raise ValidationError(f"composition ({a},{b},{c}) has shape {t.shape}, expected {shape}")
            self.comp[(a, b, c)] = t
        self.ident = [np.asarray(v, dtype=np.int64).reshape(-1) % self.p for v in identities]
        if len(self.ident) != self.n:
            raise ValidationError("one identity vector per indecomposable is required")
        self._layouts: Memo = Memo()
        self._tensors: Memo = Memo()
        self._orbits: Memo = Memo()
        self._auts: Memo = Memo()
        self._residues: list[np.ndarray | None] | None = None
        self._opposite: CategoryPresentation | None = None
        if validate:
            self.validate()

    # ----- validation -------------------------------------------------
    def validate(self) -> None:
        failures = []
        p = self.p
        for a in range(self.n):
            if self.ident[a].shape[0] != self.hom_dim[a, a]:
                failures.append(f"identity of {self.labels[a]} has wrong length")
        if failures:
            raise ValidationError(failures)
        for a, b, c, d in itertools.product(range(self.n), repeat=4):
            dab, dbc, dcd = self.hom_dim[a, b], self.hom_dim[b, c], self.hom_dim[c, d]
            if not (dab and dbc and dcd):
                continue
            t_abc = self.comp[(a, b, c)]
            t_acd = self.comp[(a, c, d)]
            t_bcd = self.comp[(b, c, d)]
            t_abd = self.comp[(a, b, d)]
            # h o (g o f) vs (h o g) o f on basis triples
            left = np.einsum("sfq,hqr->hsfr", t_abc, t_acd) % p  # (h, g, f) -> r
            right = np.einsum("hsq,qfr->hsfr", t_bcd, t_abd) % p
            if not np.array_equal(left, right):
                idx = np.argwhere(left != right)[0]
                failures.append(
                    "composition not associative on basis triple "
                    f"(h{idx[0]}:{self.labels[c]}->{self.labels[d]}, "
                    f"g{idx[1]}:{self.labels[b]}->{self.labels[c]}, "
                    f"f{idx[2]}:{self.labels[a]}->{self.labels[b]})"
                )
                break
        for a, b in itertools.product(range(self.n), repeat=2):
            d = self.hom_dim[a, b]
            if d == 0:
                continue
            eye = np.eye(d, dtype=np.int64)
            left = np.tensordot(self.ident[b], self.comp[(a, b, b)], axes=(0, 0)) % p
            right = np.tensordot(self.ident[a], self.comp[(a, a, b)], axes=(0, 1)) % p
            if not np.array_equal(left, eye):
                failures.append(f"identity of {self.labels[b]} is not a left unit on Hom({self.labels[a]},{self.labels[b]})")
            if not np.array_equal(right, eye):
                failures.append(f"identity of {self.labels[a]} is not a right unit on Hom({self.labels[a]},{self.labels[b]})")
        if failures:
            raise ValidationError(failures)

    # ----- objects ----------------------------------------------------
    def obj(self, *mult: int) -> Obj:
        if len(mult) == 1 and isinstance(mult[0], (tuple, list)):
            mult = tuple(mult[0])
        if len(mult) != self.n:
            raise DimensionMismatch(f"expected {self.n} multiplicities")
        if any(m < 0 for m in mult):
            raise PreconditionError("negative multiplicity")
        return Obj(tuple(int(m) for m in mult))

    @property
    def zero_obj(self) -> Obj:
        return Obj((0,) * self.n)

    def indec(self, a: int | str) -> Obj:
        if isinstance(a, str):
            a = self.labels.index(a)
        m = [0] * self.n
        m[a] = 1
        return Obj(tuple(m))

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    def objects(self, bound: int) -> list[Obj]:
        """All objects of total multiplicity at most ``bound``.

        Ordered by total, then with earlier indecomposables first.
        """
        out = []
        for total in range(bound + 1):
            level = [m for m in itertools.product(range(total + 1), repeat=self.n) if sum(m) == total]
            level.sort(reverse=True)
            out.extend(Obj(tuple(m)) for m in level)
        return out

    def name(self, x: Obj) -> str:
        parts = []
        for a, m in enumerate(x.mult):
            if m == 1:
                parts.append(self.labels[a])
            elif m > 1:
                parts.append(f"{self.labels[a]}^{m}")
        return "+".join(parts) if parts else "0"

    # ----- hom layout -------------------------------------------------
    def layout(self, x: Obj, y: Obj) -> tuple[np.ndarray, np.ndarray]:
        def build():
            sx, sy = x.summands, y.summands
            dims = np.zeros((len(sy), len(sx)), dtype=np.int64)
            for t, b in enumerate(sy):
                for s, a in enumerate(sx):
                    dims[t, s] = self.hom_dim[a, b]
            flat = dims.reshape(-1)
            off = np.concatenate([[0], np.cumsum(flat)[:-1]]) if flat.size else np.zeros(0, dtype=np.int64)
            return off.reshape(dims.shape).astype(np.int64), dims

        return self._layouts.get((x.mult, y.mult), build)

    def hom_size(self, x: Obj, y: Obj) -> int:
        if x.is_zero or y.is_zero:
            return 0
        _, dims = self.layout(x, y)
        return int(dims.sum())

    def comp_tensor(self, x: Obj, y: Obj, z: Obj) -> np.ndarray:
        """Tensor T with (g o f) = sum g_r f_s T[r, s, :] for f: x->y, g: y->z."""

        def build():
            dxy, dyz, dxz = self.hom_size(x, y), self.hom_size(y, z), self.hom_size(x, z)
            t = np.zeros((dyz, dxy, dxz), dtype=np.int64)
            if not (dxy and dyz and dxz):
                return t
            oxy, nxy = self.layout(x, y)
            oyz, nyz = self.layout(y, z)
            oxz, nxz = self.layout(x, z)
            sx, sy, sz = x.summands, y.summands, z.summands
            for k, c in enumerate(sz):
                for j, b in enumerate(sy):
                    if not nyz[k, j]:
                        continue
                    for i, a in enumerate(sx):
                        if not (nxy[j, i] and nxz[k, i]):
                            continue
                        block = self.comp[(a, b, c)]
                        t[
                            oyz[k, j] : oyz[k, j] + nyz[k, j],
                            oxy[j, i] : oxy[j, i] + nxy[j, i],
                            oxz[k, i] : oxz[k, i] + nxz[k, i],
                        ] = block
            return t

        return self._tensors.get((x.mult, y.mult, z.mult), build)

    # ----- morphisms --------------------------------------------------
    def mor(self, x: Obj, y: Obj, coords=None) -> Mor:
        if coords is None:
            coords = np.zeros(self.hom_size(x, y), dtype=np.int64)
        return Mor(self, x, y, coords)

    def zero(self, x: Obj, y: Obj) -> Mor:
        return self.mor(x, y)

    def identity(self, x: Obj) -> Mor:
        c = np.zeros(self.hom_size(x, x), dtype=np.int64)
        off, dims = self.layout(x, x)
        for s, a in enumerate(x.summands):
            c[off[s, s] : off[s, s] + dims[s, s]] = self.ident[a]
        return Mor(self, x, x, c)

    def basis_mor(self, a: int, b: int, k: int) -> Mor:
        """k-th basis morphism I_a -> I_b."""
        x, y = self.indec(a), self.indec(b)
        c = np.zeros(self.hom_dim[a, b], dtype=np.int64)
        c[k] = 1
        return Mor(self, x, y, c)

    def compose(self, g: Mor, f: Mor) -> Mor:
        if f.target != g.source:
            raise DimensionMismatch(f"cannot compose {g.source.mult}->{g.target.mult} after {f.source.mult}->{f.target.mult}")
        x, y, z = f.source, f.target, g.target
        size = self.hom_size(x, z)
        if size == 0 or f.coords.size == 0 or g.coords.size == 0:
            return Mor(self, x, z, np.zeros(size, dtype=np.int64))
        t = self.comp_tensor(x, y, z)
        m = np.tensordot(g.coords, t, axes=(0, 0))
        return Mor(self, x, z, (f.coords @ m) % self.p)

    def pre_matrix(self, f: Mor, z: Obj) -> np.ndarray:
        """Matrix of Hom(B, z) -> Hom(A, z), h -> h o f, for f: A -> B."""
        a, b = f.source, f.target
        rows, cols = self.hom_size(a, z), self.hom_size(b, z)
        if rows == 0 or cols == 0 or f.coords.size == 0:
            return np.zeros((rows, cols), dtype=np.int64)
        t = self.comp_tensor(a, b, z)
        return (np.tensordot(t, f.coords, axes=(1, 0)).T) % self.p

    def post_matrix(self, g: Mor, z: Obj) -> np.ndarray:
        """Matrix of Hom(z, A) -> Hom(z, B), h -> g o h, for g: A -> B."""
        a, b = g.source, g.target
        rows, cols = self.hom_size(z, b), self.hom_size(z, a)
        if rows == 0 or cols == 0 or g.coords.size == 0:
            return np.zeros((rows, cols), dtype=np.int64)
        t = self.comp_tensor(z, a, b)
        return (np.tensordot(g.coords, t, axes=(0, 0)).T) % self.p

    # ----- biproducts -------------------------------------------------
    def summand_positions(self, parts: Sequence[Obj]) -> tuple[Obj, list[list[int]]]:
        """The biproduct of ``parts`` and, per part, where its summands land."""
        total = Obj(tuple(sum(col) for col in zip(*[q.mult for q in parts]))) if parts else self.zero_obj
        seen = [0] * self.n
        positions = []
        for q in parts:
            pos = []
            for a in q.summands:
                pos.append(total.first_index(a) + seen[a])
                seen[a] += 1
            positions.append(pos)
        return total, positions

    def _place(self, big_src: Obj, big_tgt: Obj, coords: np.ndarray, f: Mor, src_pos: list[int], tgt_pos: list[int]) -> None:
        off_b, dims_b = self.layout(big_src, big_tgt)
        if f.coords.size == 0:
            return
        off_s, dims_s = self.layout(f.source, f.target)
        for t, tt in enumerate(tgt_pos):
            for s, ss in enumerate(src_pos):
                d = dims_s[t, s]
                if d:
                    o = off_b[tt, ss]
                    coords[o : o + d] = (coords[o : o + d] + f.coords[off_s[t, s] : off_s[t, s] + d]) % self.p

    def matrix(self, sources: Sequence[Obj], targets: Sequence[Obj], entries: Mapping[tuple[int, int], Mor]) -> Mor:
        """Morphism between biproducts given by components ``entries[(row, col)]``."""
        src, spos = self.summand_positions(sources)
        tgt, tpos = self.summand_positions(targets)
        coords = np.zeros(self.hom_size(src, tgt), dtype=np.int64)
        for (r, c), f in entries.items():
            if f.source != sources[c] or f.target != targets[r]:
                raise DimensionMismatch(f"entry ({r},{c}) has the wrong shape")
            self._place(src, tgt, coords, f, spos[c], tpos[r])
        return Mor(self, src, tgt, coords)

    def component(self, f: Mor, sources: Sequence[Obj], targets: Sequence[Obj], r: int, c: int) -> Mor:
        """Entry (r, c) of ``f`` viewed as a matrix between biproducts."""
        src, spos = self.summand_positions(sources)
        tgt, tpos = self.summand_positions(targets)
        if src != f.source or tgt != f.target:
            raise DimensionMismatch("biproduct decomposition does not match the morphism")
        x, y = sources[c], targets[r]
        out = np.zeros(self.hom_size(x, y), dtype=np.int64)
        if out.size == 0:
            return Mor(self, x, y, out)
        off_b, dims_b = self.layout(src, tgt)
        off_s, dims_s = self.layout(x, y)
        for t, tt in enumerate(tpos[r]):
            for s, ss in enumerate(spos[c]):
                d = dims_s[t, s]
                if d:
                    out[off_s[t, s] : off_s[t, s] + d] = f.coords[off_b[tt, ss] : off_b[tt, ss] + d]
        return Mor(self, x, y, out)

    def inclusion(self, parts: Sequence[Obj], k: int) -> Mor:
        return self.matrix([parts[k]], parts, {(k, 0): self.identity(parts[k])})

    def projection(self, parts: Sequence[Obj], k: int) -> Mor:
        return self.matrix(parts, [parts[k]], {(0, k): self.identity(parts[k])})

    def direct_sum(self, *fs: Mor) -> Mor:
        srcs = [f.source for f in fs]
        tgts = [f.target for f in fs]
        return self.matrix(srcs, tgts, {(i, i): f for i, f in enumerate(fs)})

    def column(self, *fs: Mor) -> Mor:
        """(f_1; ...; f_k): A -> B_1 + ... + B_k."""
        return self.matrix([fs[0].source], [f.target for f in fs], {(i, 0): f for i, f in enumerate(fs)})

    def row(self, *fs: Mor) -> Mor:
        """(f_1, ..., f_k): A_1 + ... + A_k -> B."""
        return self.matrix([f.source for f in fs], [fs[0].target], {(0, i): f for i, f in enumerate(fs)})

    # ----- enumeration ------------------------------------------------
    def enumerate_homs(self, x: Obj, y: Obj, budget: int | None = None) -> Iterator[Mor]:
        for v in gf.all_vectors(self.hom_size(x, y), self.p, budget):
            yield Mor(self, x, y, v)

    def hom_count(self, x: Obj, y: Obj) -> int:
        return self.p ** self.hom_size(x, y)

    # ----- invertibility ----------------------------------------------
    def _residue_functionals(self) -> list[np.ndarray | None]:
        if self._residues is not None:
            return self._residues
        out: list[np.ndarray | None] = []
        for a in range(self.n):
            out.append(self._residue_of(a))
        self._residues = out
        return out

    def _residue_of(self, a: int) -> np.ndarray | None:
        """Functional End(I_a) -> k killing the radical, when End(I_a) is local with residue field k."""
        d = int(self.hom_dim[a, a])
        if d == 0 or self.p**d > 1 << 14:
            return None
        t = self.comp[(a, a, a)]
        elems = gf.all_vectors(d, self.p)
        nil = []
        for v in elems:
            cur = v
            for _ in range(d):
                cur = (v @ np.tensordot(cur, t, axes=(0, 0))) % self.p
            if not cur.any():
                nil.append(v)
        if len(nil) != self.p ** (d - 1):
            return None
        basis = gf.row_space_basis(np.array(nil), self.p)
        if basis.shape[0] != d - 1:
            return None
        system = np.concatenate([basis, self.ident[a][None, :]], axis=0)
        rhs = np.zeros(d, dtype=np.int64)
        rhs[-1] = 1
        sol = gf.solve_affine(system, rhs, self.p)
        return None if sol is None else sol[0]

    def is_invertible_endo(self, h: Mor) -> bool:
        if h.source != h.target:
            return False
        x = h.source
        if x.is_zero:
            return True
        res = self._residue_functionals()
        if all(res[a] is not None for a in x.support):
            off, dims = self.layout(x, x)
            for a in x.support:
                start, m = x.first_index(a), x.mult[a]
                mat = np.zeros((m, m), dtype=np.int64)
                for i in range(m):
                    for j in range(m):
                        t, s = start + i, start + j
                        mat[i, j] = int(h.coords[off[t, s] : off[t, s] + dims[t, s]] @ res[a]) % self.p
                if gf.rank(mat, self.p) < m:
                    return False
            return True
        return self.is_isomorphism(h)[0]

    def is_isomorphism(self, f: Mor) -> tuple[bool, Mor | None]:
        """Decide invertibility by solving g o f = id and f o g = id together."""
        x, y = f.source, f.target
        if x.is_zero and y.is_zero:
            return True, self.zero(y, x)
        a = np.concatenate([self.pre_matrix(f, x), self.post_matrix(f, y)], axis=0)
        b = np.concatenate([self.identity(x).coords, self.identity(y).coords])
        if a.shape[1] == 0:
            return (not b.any()), (self.zero(y, x) if not b.any() else None)
        sol = gf.solve_affine(a, b, self.p)
        if sol is None:
            return False, None
        return True, Mor(self, y, x, sol[0])

    def inverse(self, f: Mor) -> Mor:
        ok, g = self.is_isomorphism(f)
        if not ok or g is None:
            raise PreconditionError("morphism is not invertible")
        return g

    # ----- automorphisms and orbits -----------------------------------
    def automorphism_generators(self, x: Obj) -> list[Mor]:
        """A set of automorphisms of ``x`` generating Aut(x) (or a large subgroup)."""

        def build():
            d = self.hom_size(x, x)
            if d == 0:
                return []
            if self.p**d <= 1 << 12:
                units = [m for m in self.enumerate_homs(x, x) if self.is_invertible_endo(m)]
                return _generating_subset(self, units)
            rng = np.random.default_rng(20240611)
            gens: list[Mor] = []
            tries = 0
            while len(gens) < 24 and tries < 2000:
                tries += 1
                m = Mor(self, x, x, rng.integers(0, self.p, size=d))
                if self.is_invertible_endo(m):
                    gens.append(m)
            return gens

        return self._auts.get(x.mult, build)

    def orbit_representatives(self, x: Obj, y: Obj, budget: int | None = None, side: str = "both") -> list[tuple[Mor, int]]:
        """Orbit representatives of Hom(x, y) under Aut(x) x Aut(y), with orbit sizes.

        ``side="source"`` uses Aut(x) alone and ``side="target"`` Aut(y) alone.

        Representatives are the lexicographically first members; the list is
        sorted by that order. Orbits may be finer than the true ones when the
        automorphism generators do not generate the full group, which only
        costs extra work.
        """

        def build():
            d = self.hom_size(x, y)
            vecs = gf.all_vectors(d, self.p, budget)
            count = vecs.shape[0]
            if d == 0:
                return [(Mor(self, x, y, vecs[0]), 1)]
            weights = (self.p ** np.arange(d - 1, -1, -1)).astype(np.int64)
            rows, cols = [], []
            mats = []
            if side in ("both", "source"):
                mats += [self.pre_matrix(a, y) for a in self.automorphism_generators(x)]
            if side in ("both", "target"):
                mats += [self.post_matrix(b, x) for b in self.automorphism_generators(y)]
            base = np.arange(count)
            for m in mats:
                img = (vecs @ m.T) % self.p
                rows.append(base)
                cols.append(img @ weights)
            if not mats:
                labels = base
            else:
                r = np.concatenate(rows)
                c = np.concatenate(cols)
                graph = coo_matrix((np.ones_like(r), (r, c)), shape=(count, count))
                _, labels = connected_components(graph, directed=True, connection="weak")
            first: dict[int, int] = {}
            sizes: dict[int, int] = {}
            for i, lab in enumerate(labels.tolist()):
                if lab not in first:
                    first[lab] = i
                sizes[lab] = sizes.get(lab, 0) + 1
            reps = sorted((first[lab], sizes[lab]) for lab in first)
            return [(Mor(self, x, y, vecs[i]), s) for i, s in reps]

        if side not in ("both", "source", "target"):
            raise ValueError("side must be 'both', 'source' or 'target'")
        return self._orbits.get((x.mult, y.mult, side), build)

    # ----- opposite ---------------------------------------------------
    def opposite(self) -> CategoryPresentation:
        if self._opposite is None:
            comp = {}
            for a, b, c in itertools.product(range(self.n), repeat=3):
                comp[(a, b, c)] = self.comp[(c, b, a)].transpose(1, 0, 2)
            op = CategoryPresentation(self.p, self.labels, self.hom_dim.T.copy(), comp, self.ident, validate=False)
            op._opposite = self
            op._residues = self._residues
            self._opposite = op
        return self._opposite

    def to_opposite(self, f: Mor) -> Mor:
        """The same arrow read in the opposite category (source and target swapped)."""
        op = self.opposite()
        x, y = f.source, f.target
        coords = np.zeros(op.hom_size(y, x), dtype=np.int64)
        if coords.size:
            off, dims = self.layout(x, y)
            off_op, _ = op.layout(y, x)
            for t in range(len(y.summands)):
                for s in range(len(x.summands)):
                    d = dims[t, s]
                    if d:
                        coords[off_op[s, t] : off_op[s, t] + d] = f.coords[off[t, s] : off[t, s] + d]
        return Mor(op, y, x, coords)


def _generating_subset(cat: CategoryPresentation, units: list[Mor]) -> list[Mor]:
    """Greedy generating set of the finite group ``units``."""
    if not units:
        return []
    ident = units[0].cat.identity(units[0].source)
    group = {ident.key}
    gens: list[Mor] = []
    members = [ident]
    for u in units:
        if u.key in group:
            continue
        gens.append(u)
        frontier = list(members)
        while frontier:
            new = []
            for m in frontier:
                for g in gens:
                    prod = cat.compose(g, m)
                    if prod.key not in group:
                        group.add(prod.key)
                        members.append(prod)
                        new.append(prod)
            frontier = new
        if len(group) == len(units):
            break
    return gens
