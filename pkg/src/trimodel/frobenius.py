"""Concrete triangulated backends.

``StableModuleBackend`` realizes the stable category of a finite-dimensional
self-injective algebra: hom spaces are module maps modulo those factoring
through a projective, the shift is the cosyzygy, and cones come from
push-outs along injective hulls.  ``SemisimpleBackend`` is the category of
finite-dimensional graded vector spaces with a permutation shift.

Modules are left modules; elements are column vectors and an action matrix
``A_i`` sends ``x`` to ``e_i x``.
"""

from __future__ import annotations

import itertools
import zlib
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from . import gf
from .addcat import CategoryPresentation, Mor, Obj
from .errors import BackendFailure, ValidationError
from .memo import Memo
from .tricat import ShiftData, Triangle, TriangulatedBackend


# ---------------------------------------------------------------------------
# algebras and modules


@dataclass(frozen=True)
class ModuleRep:
    dim: int
    actions: np.ndarray  # (d, dim, dim)

    @property
    def key(self) -> bytes:
        return self.actions.tobytes() + self.dim.to_bytes(4, "little")


class AlgebraPresentation:
    """Finite-dimensional algebra over GF(p) with a declared list of indecomposable modules."""

    def __init__(
        self,
        p: int,
        mult,
        unit,
        modules: Sequence[tuple[str, Sequence]],
        generators: Sequence | None = None,
        basis: Sequence[str] | None = None,
    ):
        self.p = int(p)
        self.mult = np.asarray(mult, dtype=np.int64) % self.p  # mult[i, j] = coords of e_i e_j
        self.dim = self.mult.shape[0]
        if self.mult.shape != (self.dim, self.dim, self.dim):
            raise ValidationError("multiplication table must have shape (d, d, d)")
        self.unit = np.asarray(unit, dtype=np.int64).reshape(-1) % self.p
        self.basis = list(basis) if basis is not None else [f"e{i}" for i in range(self.dim)]
        if generators is None:
            gens = [np.eye(self.dim, dtype=np.int64)[i] for i in range(self.dim)]
        else:
            gens = []
            for g in generators:
                if isinstance(g, int):
                    e = np.zeros(self.dim, dtype=np.int64)
                    e[g] = 1
                    gens.append(e)
                else:
                    gens.append(np.asarray(g, dtype=np.int64) % self.p)
        self.generators = gens
        self.labels = [lab for lab, _ in modules]
        self.modules = [self.module(acts) for _, acts in modules]
        self._homs: Memo = Memo()

    # ----- construction -------------------------------------------------
    def module(self, actions) -> ModuleRep:
        a = np.asarray(actions, dtype=np.int64) % self.p
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(self.dim, 0, 0)
        if a.ndim != 3 or a.shape[0] != self.dim or a.shape[1] != a.shape[2]:
            raise ValidationError("module actions must have shape (d, n, n)")
        a.flags.writeable = False
        return ModuleRep(a.shape[1], a)

    def regular(self) -> ModuleRep:
        # left multiplication by e_i: column j (e_j) goes to e_i e_j
        acts = np.transpose(self.mult, (0, 2, 1)).copy()
        return self.module(acts)

    def element_action(self, m: ModuleRep, elem: np.ndarray) -> np.ndarray:
        return np.tensordot(elem, m.actions, axes=(0, 0)) % self.p

    def direct_sum(self, mods: Sequence[ModuleRep]) -> ModuleRep:
        n = sum(m.dim for m in mods)
        acts = np.zeros((self.dim, n, n), dtype=np.int64)
        o = 0
        for m in mods:
            acts[:, o : o + m.dim, o : o + m.dim] = m.actions
            o += m.dim
        return self.module(acts)

    # ----- validation ---------------------------------------------------
    def validate(self) -> None:
        p, c = self.p, self.mult
        failures = []
        left = np.einsum("ijm,mkn->ijkn", c, c) % p
        right = np.einsum("jkm,imn->ijkn", c, c) % p
        if not np.array_equal(left, right):
            i, j, k, _ = np.argwhere(left != right)[0]
            failures.append(f"algebra multiplication not associative on ({self.basis[i]},{self.basis[j]},{self.basis[k]})")
        lu = np.einsum("i,ijk->jk", self.unit, c) % p
        ru = np.einsum("j,ijk->ik", self.unit, c) % p
        eye = np.eye(self.dim, dtype=np.int64)
        if not (np.array_equal(lu, eye) and np.array_equal(ru, eye)):
            failures.append("declared unit is not a two-sided unit")
        for lab, m in zip(self.labels, self.modules):
            failures.extend(self._module_failures(lab, m))
        if failures:
            raise ValidationError(failures)

    def _module_failures(self, lab: str, m: ModuleRep) -> list[str]:
        p = self.p
        out = []
        one = self.element_action(m, self.unit)
        if not np.array_equal(one, np.eye(m.dim, dtype=np.int64)):
            out.append(f"unit does not act as identity on {lab}")
        prod = np.einsum("iab,jbc->ijac", m.actions, m.actions) % p
        expect = np.einsum("ijk,kac->ijac", self.mult, m.actions) % p
        if not np.array_equal(prod, expect):
            out.append(f"module {lab} does not respect the multiplication")
        return out

    # ----- homomorphisms ------------------------------------------------
    def hom_system(self, m: ModuleRep, n: ModuleRep) -> np.ndarray:
        """Matrix whose kernel is Hom_A(m, n), maps as row-major (n.dim x m.dim) matrices."""
        rows = []
        im, inn = np.eye(m.dim, dtype=np.int64), np.eye(n.dim, dtype=np.int64)
        for g in self.generators:
            a = self.element_action(m, g)
            b = self.element_action(n, g)
            rows.append(np.kron(inn, a.T) - np.kron(b, im))
        if not rows:
            return np.zeros((0, m.dim * n.dim), dtype=np.int64)
        return np.concatenate(rows, axis=0) % self.p

    def hom_basis(self, m: ModuleRep, n: ModuleRep) -> list[np.ndarray]:
        def build():
            if m.dim == 0 or n.dim == 0:
                return []
            ker = gf.kernel_basis(self.hom_system(m, n), self.p)
            return [k.reshape(n.dim, m.dim) for k in ker]

        return self._homs.get((m.key, n.key), build)

    def hom_dim(self, m: ModuleRep, n: ModuleRep) -> int:
        return len(self.hom_basis(m, n))

    def is_homomorphism(self, f: np.ndarray, m: ModuleRep, n: ModuleRep) -> bool:
        for g in self.generators:
            if not np.array_equal((f @ self.element_action(m, g)) % self.p, (self.element_action(n, g) @ f) % self.p):
                return False
        return True

    def endomorphisms_local(self, m: ModuleRep, limit: int = 1 << 14) -> bool | None:
        """Whether every endomorphism is invertible or nilpotent; None when too large to scan."""
        basis = self.hom_basis(m, m)
        d = len(basis)
        if d == 0:
            return False
        if self.p**d > limit:
            return None
        stack = np.stack(basis)
        for coeffs in gf.all_vectors(d, self.p):
            f = np.tensordot(coeffs, stack, axes=(0, 0)) % self.p
            if gf.rank(f, self.p) == m.dim:
                continue
            if np.any(_mat_pow(f, m.dim, self.p)):
                return False
        return True

    # ----- quotients ----------------------------------------------------
    def quotient(self, m: ModuleRep, sub: np.ndarray) -> tuple[ModuleRep, np.ndarray, np.ndarray]:
        """Quotient by the column span of ``sub``: (module, projection, section)."""
        p = self.p
        q, lift = _quotient_maps(sub, m.dim, p)
        acts = np.einsum("ab,ibc,cd->iad", q, m.actions, lift) % p
        return self.module(acts), q, lift


def _mat_pow(f: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.eye(f.shape[0], dtype=np.int64)
    for _ in range(k):
        out = (out @ f) % p
    return out


def _quotient_maps(sub: np.ndarray, n: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Projection onto V / span(sub) in non-pivot coordinates, and the coordinate section."""
    s = np.asarray(sub, dtype=np.int64)
    if s.ndim != 2:
        s = s.reshape(n, -1)
    if s.shape[1]:
        r, piv = gf.rref(s.T, p)
        r = r[: len(piv)]
    else:
        r, piv = np.zeros((0, n), dtype=np.int64), []
    free = [c for c in range(n) if c not in set(piv)]
    # reduce e_j modulo the rows, keep free coordinates
    red = np.eye(n, dtype=np.int64)
    for row, c in enumerate(piv):
        red = (red - np.outer(r[row], red[c])) % p
    q = red[free, :] % p
    lift = np.zeros((n, len(free)), dtype=np.int64)
    for k, c in enumerate(free):
        lift[c, k] = 1
    return q, lift


def _auslander_solve(h: np.ndarray, dims: np.ndarray) -> np.ndarray | None:
    """Integer x with h^T x = dims (multiplicities from hom dimensions)."""
    try:
        x = np.linalg.solve(h.T.astype(float), dims.astype(float))
    except np.linalg.LinAlgError:
        return None
    r = np.rint(x).astype(np.int64)
    if np.any(np.abs(x - r) > 1e-6) or np.any(r < 0) or not np.array_equal(h.T @ r, dims):
        return None
    return r


def _seed(*parts: bytes) -> int:
    return zlib.crc32(b"".join(parts))


# ---------------------------------------------------------------------------
# stable module category


class StableModuleBackend(TriangulatedBackend):
    """Stable module category of a self-injective algebra."""

    def __init__(self, alg: AlgebraPresentation, bound: int = 2, budget: int | None = None, validate: bool = True):
        self.alg = alg
        p = alg.p
        if validate:
            alg.validate()
        n_all = len(alg.modules)
        self.auslander = np.array([[alg.hom_dim(a, b) for b in alg.modules] for a in alg.modules], dtype=np.int64)
        if round(abs(np.linalg.det(self.auslander.astype(float)))) == 0:
            raise ValidationError("hom-dimension matrix of the listed modules is singular; modules are not distinct indecomposables")
        if validate:
            for lab, m in zip(alg.labels, alg.modules):
                if alg.endomorphisms_local(m) is False:
                    raise ValidationError(f"module {lab} does not have a local endomorphism ring")
        reg = alg.regular()
        reg_mult = self.decompose_mult(reg)
        if reg_mult is None:
            raise ValidationError("regular module is not a sum of listed modules")
        self.projective = [bool(reg_mult[i]) for i in range(n_all)]
        self.stable_index = [i for i in range(n_all) if not self.projective[i]]
        self.proj_index = [i for i in range(n_all) if self.projective[i]]
        self._hulls = [self._injective_hull(alg.modules[i]) for i in range(n_all)]
        self._prepare_stable_homs()
        labels = [alg.labels[i] for i in self.stable_index]
        cat = CategoryPresentation(p, labels, self._stable_dim, self._stable_comp, self._stable_ident, validate=validate)
        perm, maps = self._prepare_shift(cat)
        shift = ShiftData(cat, perm, maps)
        if validate:
            shift.validate()
        super().__init__(cat, shift, bound, budget)

    # ----- decomposition --------------------------------------------------
    def decompose_mult(self, m: ModuleRep) -> np.ndarray | None:
        dims = np.array([self.alg.hom_dim(a, m) for a in self.alg.modules], dtype=np.int64)
        return _auslander_solve(self.auslander, dims)

    def realize(self, x: Obj) -> ModuleRep:
        return self.alg.direct_sum([self.alg.modules[self.stable_index[a]] for a in x.summands])

    def _find_iso(self, target: ModuleRep, parts: list[int]) -> np.ndarray:
        """Module isomorphism from the sum of listed modules ``parts`` onto ``target``.

        Summands are embedded largest first; a block is kept only when it
        raises the column rank by the summand's full dimension.
        """
        alg, p = self.alg, self.alg.p
        dims = [alg.modules[i].dim for i in parts]
        if sum(dims) != target.dim:
            raise BackendFailure("no isomorphism onto the decomposed module found")
        order = sorted(range(len(parts)), key=lambda k: (-dims[k], k))
        bases = {}
        for k in order:
            b = alg.hom_basis(alg.modules[parts[k]], target)
            if not b and dims[k]:
                raise BackendFailure("no isomorphism onto the decomposed module found")
            bases[k] = np.stack(b) if b else np.zeros((0, target.dim, 0), dtype=np.int64)
        offsets = np.concatenate([[0], np.cumsum(dims)]).astype(int)
        rng = np.random.default_rng(_seed(target.key, bytes(parts)))
        for _ in range(400):
            cols = np.zeros((target.dim, 0), dtype=np.int64)
            blocks = {}
            for k in order:
                need = cols.shape[1] + dims[k]
                for _ in range(8):
                    block = np.tensordot(rng.integers(0, p, size=bases[k].shape[0]), bases[k], axes=(0, 0)) % p
                    cand = np.concatenate([cols, block], axis=1)
                    if gf.rank(cand, p) == need:
                        cols, blocks[k] = cand, block
                        break
                else:
                    break
            else:
                phi = np.zeros((target.dim, target.dim), dtype=np.int64)
                for k, block in blocks.items():
                    phi[:, offsets[k] : offsets[k + 1]] = block
                return phi
        raise BackendFailure("no isomorphism onto the decomposed module found")

    def decompose(self, m: ModuleRep) -> tuple[list[int], np.ndarray, np.ndarray]:
        """Listed summands (projectives last), an iso D -> m and its inverse."""
        mult = self.decompose_mult(m)
        if mult is None:
            raise BackendFailure("module is not a sum of listed indecomposables")
        parts = [i for i in self.stable_index for _ in range(mult[i])]
        parts += [i for i in self.proj_index for _ in range(mult[i])]
        phi = self._find_iso(m, parts)
        return parts, phi, gf.inverse(phi, self.alg.p)

    # ----- hulls ------------------------------------------------------------
    def _injective_hull(self, m: ModuleRep) -> tuple[ModuleRep, np.ndarray]:
        alg, p = self.alg, self.alg.p
        projs = [i for i in range(len(alg.modules)) if self.projective[i]]
        if m.dim == 0:
            return alg.direct_sum([]), np.zeros((0, 0), dtype=np.int64)
        options = []
        for k in range(1, m.dim + 1):
            for combo in itertools.combinations_with_replacement(projs, k):
                total = sum(alg.modules[i].dim for i in combo)
                if total >= m.dim:
                    options.append((total, combo))
        options.sort()
        rng = np.random.default_rng(_seed(m.key))
        for _, combo in options:
            hull = alg.direct_sum([alg.modules[i] for i in combo])
            basis = alg.hom_basis(m, hull)
            if not basis:
                continue
            stack = np.stack(basis)
            tries = min(p ** len(basis), 200)
            for _ in range(tries):
                f = np.tensordot(rng.integers(0, p, size=len(basis)), stack, axes=(0, 0)) % p
                if gf.rank(f, p) == m.dim:
                    return hull, f
        raise BackendFailure("no injective hull among sums of listed projectives")

    def hull_of(self, x: Obj) -> tuple[ModuleRep, np.ndarray, list[tuple[int, int]]]:
        """Hull of realize(x) as a block sum, the embedding, and row blocks per summand."""
        alg = self.alg
        hulls = [self._hulls[self.stable_index[a]] for a in x.summands]
        mod = alg.direct_sum([h for h, _ in hulls])
        src_dim = sum(alg.modules[self.stable_index[a]].dim for a in x.summands)
        emb = np.zeros((mod.dim, src_dim), dtype=np.int64)
        blocks = []
        r = c = 0
        for (h, f), a in zip(hulls, x.summands):
            emb[r : r + h.dim, c : c + f.shape[1]] = f
            blocks.append((r, h.dim))
            r += h.dim
            c += f.shape[1]
        return mod, emb, blocks

    # ----- stable homs ------------------------------------------------------
    def _prepare_stable_homs(self) -> None:
        alg, p = self.alg, self.alg.p
        idx = self.stable_index
        n = len(idx)
        self._stable_dim = np.zeros((n, n), dtype=np.int64)
        self._hom_info = {}
        for a, ia in enumerate(idx):
            hull, iota = self._hulls[ia]
            for b, ib in enumerate(idx):
                ma, mb = alg.modules[ia], alg.modules[ib]
                basis = alg.hom_basis(ma, mb)
                k = len(basis)
                if k == 0:
                    self._hom_info[(a, b)] = (basis, None, np.zeros((0, 0), dtype=np.int64), [], [])
                    continue
                flat = np.stack([x.reshape(-1) for x in basis], axis=1)  # (mb*ma, k)
                rows = self._independent_rows(flat)
                left_inv = gf.inverse(flat[rows, :], p)
                # maps factoring through the hull: g o iota
                fac = []
                for g in alg.hom_basis(hull, mb):
                    fac.append((left_inv @ ((g @ iota) % p).reshape(-1)[rows]) % p)
                if fac:
                    r, piv = gf.rref(np.stack(fac), p)
                    r = r[: len(piv)]
                else:
                    r, piv = np.zeros((0, k), dtype=np.int64), []
                free = [c for c in range(k) if c not in set(piv)]
                self._hom_info[(a, b)] = (basis, rows, left_inv, (r, piv), free)
                self._stable_dim[a, b] = len(free)
        self._stable_comp = {}
        for a, b, c in itertools.product(range(n), repeat=3):
            dab, dbc, dac = self._stable_dim[a, b], self._stable_dim[b, c], self._stable_dim[a, c]
            t = np.zeros((dbc, dab, dac), dtype=np.int64)
            if dab and dbc and dac:
                for r_, s_ in itertools.product(range(dbc), range(dab)):
                    g = self._lift_block(b, c, np.eye(dbc, dtype=np.int64)[r_])
                    f = self._lift_block(a, b, np.eye(dab, dtype=np.int64)[s_])
                    t[r_, s_] = self._reduce_block(a, c, (g @ f) % p)
            self._stable_comp[(a, b, c)] = t
        self._stable_ident = [
            self._reduce_block(a, a, np.eye(alg.modules[ia].dim, dtype=np.int64)) for a, ia in enumerate(idx)
        ]

    def _independent_rows(self, flat: np.ndarray) -> list[int]:
        _, piv = gf.rref(flat.T, self.alg.p)
        return list(piv)

    def _lift_block(self, a: int, b: int, coords: np.ndarray) -> np.ndarray:
        basis, _, _, _, free = self._hom_info[(a, b)]
        ma = self.alg.modules[self.stable_index[a]]
        mb = self.alg.modules[self.stable_index[b]]
        out = np.zeros((mb.dim, ma.dim), dtype=np.int64)
        for j, c in enumerate(free):
            if coords[j]:
                out = out + int(coords[j]) * basis[c]
        return out % self.alg.p

    def _reduce_block(self, a: int, b: int, f: np.ndarray) -> np.ndarray:
        p = self.alg.p
        basis, rows, left_inv, rr, free = self._hom_info[(a, b)]
        if not free:
            return np.zeros(0, dtype=np.int64)
        x = (left_inv @ (f.reshape(-1)[rows] % p)) % p
        r, piv = rr
        for row, c in enumerate(piv):
            if x[c]:
                x = (x - x[c] * r[row]) % p
        return x[free]

    def lift(self, f: Mor) -> np.ndarray:
        """A module map realizing the stable morphism ``f``."""
        x, y = f.source, f.target
        dims_x = [self.alg.modules[self.stable_index[a]].dim for a in x.summands]
        dims_y = [self.alg.modules[self.stable_index[b]].dim for b in y.summands]
        ox = np.concatenate([[0], np.cumsum(dims_x)]).astype(int)
        oy = np.concatenate([[0], np.cumsum(dims_y)]).astype(int)
        out = np.zeros((int(oy[-1]), int(ox[-1])), dtype=np.int64)
        if f.coords.size == 0:
            return out
        for t, b in enumerate(y.summands):
            for s, a in enumerate(x.summands):
                blk = f.block(t, s)
                if blk.size and blk.any():
                    out[oy[t] : oy[t + 1], ox[s] : ox[s + 1]] = self._lift_block(a, b, blk)
        return out

    def reduce(self, fmat: np.ndarray, x: Obj, y: Obj) -> Mor:
        """The stable class of a module map realize(x) -> realize(y)."""
        cat = self.cat
        dims_x = [self.alg.modules[self.stable_index[a]].dim for a in x.summands]
        dims_y = [self.alg.modules[self.stable_index[b]].dim for b in y.summands]
        ox = np.concatenate([[0], np.cumsum(dims_x)]).astype(int)
        oy = np.concatenate([[0], np.cumsum(dims_y)]).astype(int)
        coords = np.zeros(cat.hom_size(x, y), dtype=np.int64)
        if coords.size:
            off, dims = cat.layout(x, y)
            for t, b in enumerate(y.summands):
                for s, a in enumerate(x.summands):
                    if dims[t, s]:
                        sub = fmat[oy[t] : oy[t + 1], ox[s] : ox[s + 1]]
                        coords[off[t, s] : off[t, s] + dims[t, s]] = self._reduce_block(a, b, sub)
        return Mor(cat, x, y, coords)

    # ----- shift ------------------------------------------------------------
    def _cosyzygy(self, i: int):
        """Cokernel of the hull embedding of listed module i, with decomposition data."""
        alg = self.alg
        hull, iota = self._hulls[i]
        coker, q, lift = alg.quotient(hull, iota)
        parts, phi, phi_inv = self.decompose(coker)
        stable_parts = [j for j in parts if not self.projective[j]]
        if len(stable_parts) != 1:
            raise BackendFailure(f"cosyzygy of {alg.labels[i]} is not indecomposable")
        target = stable_parts[0]
        dim_t = alg.modules[target].dim
        theta = phi[:, :dim_t]  # M_target -> coker (first summand of D)
        theta_inv = phi_inv[:dim_t, :]  # coker -> M_target (stable inverse)
        return target, (hull, iota, coker, q, lift, theta, theta_inv)

    def _prepare_shift(self, cat: CategoryPresentation):
        idx = self.stable_index
        self._cosyz = {}
        perm = []
        for a, ia in enumerate(idx):
            target, data = self._cosyzygy(ia)
            self._cosyz[a] = data
            perm.append(idx.index(target))
        maps = {}
        n = len(idx)
        for a in range(n):
            for b in range(n):
                d = int(self._stable_dim[a, b])
                m = np.zeros((d, d), dtype=np.int64)
                for j in range(d):
                    e = np.eye(d, dtype=np.int64)[j]
                    f = self._lift_block(a, b, e)
                    m[:, j] = self._reduce_block(perm[a], perm[b], self._shift_module_map(a, b, f))
                maps[(a, b)] = m
        return perm, maps

    def _shift_module_map(self, a: int, b: int, f: np.ndarray) -> np.ndarray:
        p = self.alg.p
        ha, ia_, _, qa, la, theta_a, _ = self._cosyz[a]
        hb, ib_, _, qb, lb, _, theta_inv_b = self._cosyz[b]
        ext = self._extend(ha, ia_, hb, ib_, f)
        induced = (qb @ ext @ la) % p
        return (theta_inv_b @ induced @ theta_a) % p

    def _extend(self, ha: ModuleRep, ia: np.ndarray, hb: ModuleRep, ib: np.ndarray, f: np.ndarray) -> np.ndarray:
        """A module map ext: ha -> hb with ext ia = ib f (hb is injective)."""
        alg, p = self.alg, self.alg.p
        basis = alg.hom_basis(ha, hb)
        target = ((ib @ f) % p).reshape(-1)
        if not basis:
            if target.any():
                raise BackendFailure("map does not extend to the hull")
            return np.zeros((hb.dim, ha.dim), dtype=np.int64)
        mat = np.stack([((g @ ia) % p).reshape(-1) for g in basis], axis=1)
        sol = gf.solve_affine(mat, target, p)
        if sol is None:
            raise BackendFailure("map does not extend to the hull; algebra not self-injective?")
        return np.tensordot(sol[0], np.stack(basis), axes=(0, 0)) % p

    # ----- cones ------------------------------------------------------------
    def _cone(self, u: Mor) -> Triangle:
        alg, p = self.alg, self.alg.p
        x, y = u.source, u.target
        m_y = self.realize(y)
        umat = self.lift(u)
        hull, iota, blocks = self.hull_of(x)
        e = alg.direct_sum([m_y, hull])
        sub = np.concatenate([umat, (-iota) % p], axis=0) % p
        c_mod, q, lift = alg.quotient(e, sub)
        v_mod = q[:, : m_y.dim] % p
        # C -> coker(iota) = sum of cosyzygies -> realize(x[1])
        xs = self.shift(x)
        w_mod = np.zeros((self.realize(xs).dim, c_mod.dim), dtype=np.int64)
        positions = self.shift_data._positions(x, self.shift_data.power(1)[0])
        dims_xs = [alg.modules[self.stable_index[a]].dim for a in xs.summands]
        oxs = np.concatenate([[0], np.cumsum(dims_xs)]).astype(int)
        hull_part = lift[m_y.dim :, :]
        for s, a in enumerate(x.summands):
            _, _, _, qa, _, _, theta_inv = self._cosyz[a]
            r0, rd = blocks[s]
            piece = (theta_inv @ qa @ hull_part[r0 : r0 + rd, :]) % p
            t = positions[s]
            w_mod[oxs[t] : oxs[t + 1], :] = piece
        parts, phi, phi_inv = self.decompose(c_mod)
        stable_parts = [j for j in parts if not self.projective[j]]
        mult = [0] * len(self.stable_index)
        for j in stable_parts:
            mult[self.stable_index.index(j)] += 1
        z = Obj(tuple(mult))
        dz = sum(alg.modules[j].dim for j in stable_parts)
        v_st = self.reduce((phi_inv[:dz, :] @ v_mod) % p, y, z)
        w_st = self.reduce((w_mod @ phi[:, :dz]) % p, z, xs)
        return Triangle(x, y, z, u, v_st, w_st)

    # ----- self-injectivity -------------------------------------------------
    def verify_self_injective(self, bound: int = 2) -> bool:
        return verify_self_injective(self.alg, bound)


def verify_self_injective(alg: AlgebraPresentation, bound: int = 2, budget: int | None = None) -> bool:
    """Hom(-, A) turns monos M -> N between listed modules (N of total at most ``bound``) into surjections."""
    p = alg.p
    reg = alg.regular()
    mods = alg.modules
    targets = []
    for k in range(1, bound + 1):
        for combo in itertools.combinations_with_replacement(range(len(mods)), k):
            targets.append(alg.direct_sum([mods[i] for i in combo]))
    for m in mods:
        hm = alg.hom_basis(m, reg)
        if not hm:
            continue
        hm_flat = np.stack([h.reshape(-1) for h in hm], axis=1)
        target_rank = gf.rank(hm_flat, p)
        for n in targets:
            basis = alg.hom_basis(m, n)
            if not basis:
                continue
            stack = np.stack(basis)
            gf.check_budget(p ** len(basis), budget, "monomorphism scan")
            hn = alg.hom_basis(n, reg)
            for coeffs in gf.all_vectors(len(basis), p):
                f = np.tensordot(coeffs, stack, axes=(0, 0)) % p
                if gf.rank(f, p) != m.dim:
                    continue
                if not hn:
                    return False
                img = np.stack([((g @ f) % p).reshape(-1) for g in hn], axis=1)
                if gf.rank(img, p) != target_rank:
                    return False
    return True


# ---------------------------------------------------------------------------
# semisimple


class SemisimpleBackend(TriangulatedBackend):
    """Graded vector spaces: n simple objects with End = k and a permutation shift."""

    def __init__(
        self,
        p: int,
        labels: Sequence[str],
        perm: Sequence[int] | None = None,
        bound: int = 2,
        budget: int | None = None,
        cat: CategoryPresentation | None = None,
        hom_maps=None,
    ):
        n = len(labels)
        if cat is None:
            comp = {(a, a, a): np.ones((1, 1, 1), dtype=np.int64) for a in range(n)}
            cat = CategoryPresentation(p, labels, np.eye(n, dtype=np.int64), comp, [[1]] * n)
        elif not np.array_equal(cat.hom_dim, np.eye(n, dtype=np.int64)):
            raise ValidationError("a semisimple cone needs Hom(I_a, I_b) = k when a = b and 0 otherwise")
        shift = ShiftData(cat, list(range(n)) if perm is None else perm, hom_maps)
        shift.validate()
        super().__init__(cat, shift, bound, budget)

    def type_matrix(self, f: Mor, a: int) -> np.ndarray:
        """The matrix of ``f`` on the isotypic component of type ``a``."""
        x, y = f.source, f.target
        rows, cols = y.mult[a], x.mult[a]
        out = np.zeros((rows, cols), dtype=np.int64)
        if rows and cols:
            off, _ = self.cat.layout(x, y)
            r0, c0 = y.first_index(a), x.first_index(a)
            for i in range(rows):
                for j in range(cols):
                    out[i, j] = f.coords[off[r0 + i, c0 + j]]
        return out

    def from_type_matrices(self, x: Obj, y: Obj, mats: dict[int, np.ndarray]) -> Mor:
        coords = np.zeros(self.cat.hom_size(x, y), dtype=np.int64)
        if coords.size:
            off, _ = self.cat.layout(x, y)
            for a, m in mats.items():
                r0, c0 = y.first_index(a), x.first_index(a)
                for i in range(m.shape[0]):
                    for j in range(m.shape[1]):
                        coords[off[r0 + i, c0 + j]] = m[i, j]
        return Mor(self.cat, x, y, coords)

    def _cone(self, u: Mor) -> Triangle:
        p = self.p
        n = self.cat.n
        x, y = u.source, u.target
        perm = self.shift_data.perm
        inv = [perm.index(b) for b in range(n)]
        coker_proj, kernels = {}, {}
        for a in range(n):
            m = self.type_matrix(u, a)
            # rows L with L m = 0 project onto the cokernel
            left = gf.kernel_basis(m.T, p)
            coker_proj[a] = np.stack(left) if left else np.zeros((0, m.shape[0]), dtype=np.int64)
            kb = gf.kernel_basis(m, p)
            kernels[a] = np.stack(kb, axis=1) if kb else np.zeros((m.shape[1], 0), dtype=np.int64)
        # Z_b = coker_b + ker_{inv b}[1]
        mult = [coker_proj[b].shape[0] + kernels[inv[b]].shape[1] for b in range(n)]
        z = Obj(tuple(mult))
        v_mats, w_mats = {}, {}
        xs = self.shift(x)
        for b in range(n):
            cb = coker_proj[b].shape[0]
            kb = kernels[inv[b]]
            v_mats[b] = np.concatenate([coker_proj[b], np.zeros((kb.shape[1], y.mult[b]), dtype=np.int64)], axis=0)
            # w on type b: Z_b -> X[1]_b = X_{inv b}; zero on cokernel part, kernel inclusion on the rest
            w_mats[b] = np.concatenate([np.zeros((xs.mult[b], cb), dtype=np.int64), kb], axis=1)
        v = self.from_type_matrices(y, z, v_mats)
        w = self.from_type_matrices(z, xs, w_mats)
        return Triangle(x, y, z, u, v, w)

    def is_exact_triangle(self, t: Triangle) -> bool:
        """Exactness of the 3-periodic sequence at Y, Z and X[1] (type by type)."""
        p = self.p
        maps = [t.u, t.v, t.w, -self.shift(t.u)]
        for f, g in zip(maps, maps[1:]):
            if not (g @ f).is_zero:
                return False
            for a in range(self.cat.n):
                mf, mg = self.type_matrix(f, a), self.type_matrix(g, a)
                mid = mf.shape[0]
                if gf.rank(mf, p) + gf.rank(mg, p) != mid:
                    return False
        return True
