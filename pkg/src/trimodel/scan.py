"""Enumeration helpers over the bounded universe of objects and morphisms.

Every predicate checked by this package is invariant under composing with
isomorphisms, so most scans visit one morphism per orbit of
Aut(X) x Aut(Y) acting on Hom(X, Y). ``exhaustive=True`` visits every
morphism instead; it exists for harnesses that test deliberately
non-invariant predicates.
"""

from __future__ import annotations

from collections.abc import Iterator

from .addcat import Mor, Obj
from .tricat import TriangulatedBackend


def objects(be: TriangulatedBackend, bound: int | None = None) -> list[Obj]:
    return be.universe(bound)


def homs(be: TriangulatedBackend, x: Obj, y: Obj, exhaustive: bool = False) -> list[Mor]:
    if exhaustive:
        return list(be.cat.enumerate_homs(x, y, be.budget))
    return [m for m, _ in be.cat.orbit_representatives(x, y, be.budget)]


def homs_up_to_source(be: TriangulatedBackend, x: Obj, y: Obj) -> list[Mor]:
    """One morphism per orbit of Aut(x) acting by precomposition."""
    return [m for m, _ in be.cat.orbit_representatives(x, y, be.budget, side="source")]


def homs_up_to_target(be: TriangulatedBackend, x: Obj, y: Obj) -> list[Mor]:
    """One morphism per orbit of Aut(y) acting by postcomposition."""
    return [m for m, _ in be.cat.orbit_representatives(x, y, be.budget, side="target")]


def morphisms(be: TriangulatedBackend, bound: int | None = None, exhaustive: bool = False) -> Iterator[Mor]:
    """Morphisms between objects of the universe, in deterministic order."""
    objs = objects(be, bound)
    for x in objs:
        for y in objs:
            yield from homs(be, x, y, exhaustive)


def morphisms_into(be: TriangulatedBackend, y: Obj, bound: int | None = None, exhaustive: bool = False) -> Iterator[Mor]:
    for x in objects(be, bound):
        yield from homs(be, x, y, exhaustive)


def morphisms_from(be: TriangulatedBackend, x: Obj, bound: int | None = None, exhaustive: bool = False) -> Iterator[Mor]:
    for y in objects(be, bound):
        yield from homs(be, x, y, exhaustive)


def all_homs(be: TriangulatedBackend, x: Obj, y: Obj) -> Iterator[Mor]:
    return be.cat.enumerate_homs(x, y, be.budget)


def composable_pairs(be: TriangulatedBackend, bound: int | None = None) -> Iterator[tuple[Mor, Mor]]:
    """Pairs (u, v) with u: X -> Y a representative and v: Y -> Z arbitrary.

    Twisting u by automorphisms of Y can be absorbed into v, so fixing u up
    to orbit and letting v range over all of Hom(Y, Z) loses nothing.
    """
    objs = objects(be, bound)
    for x in objs:
        for y in objs:
            reps = homs(be, x, y)
            for z in objs:
                vs = list(all_homs(be, y, z))
                for u in reps:
                    for v in vs:
                        yield u, v
