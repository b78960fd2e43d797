"""Matroids presented by their lattice of flats.

Flat families are validated against three axioms at construction: the
ground set is a flat, flats are closed under intersection, and for every
flat the covers partition the remaining elements.  All operations
(rank, closure, paving test, contraction) read the flat family directly.
"""

from __future__ import annotations

import json
from itertools import combinations

__all__ = [
    "Matroid",
    "matroid_from_coatoms",
    "matroid_rank",
    "is_paving",
    "contract",
    "uniform_matroid",
    "free_matroid",
    "ms_paving_coatoms",
]


class Matroid:
    """Immutable matroid given by its full flat family."""

    def __init__(self, ground, flats):
        if isinstance(ground, int):
            ground = range(1, ground + 1)
        self.ground = frozenset(ground)
        self.flats = frozenset(frozenset(f) for f in flats)
        self._validate()
        self._heights = None

    def _validate(self):
        if self.ground not in self.flats:
            raise ValueError("ground set must be a flat")
        for f in self.flats:
            if not f <= self.ground:
                raise ValueError(f"flat {sorted(f)} exceeds the ground set")
        for f, g in combinations(self.flats, 2):
            if f & g not in self.flats:
                raise ValueError(
                    f"flats {sorted(f)} and {sorted(g)} have a non-flat intersection"
                )
        for f in self.flats:
            if f == self.ground:
                continue
            blocks = [g - f for g in self._covers(f)]
            rest = self.ground - f
            if sum(len(b) for b in blocks) != len(rest) or frozenset().union(*blocks) != rest:
                raise ValueError(
                    f"covers of flat {sorted(f)} do not partition the complement"
                )

    def _covers(self, f):
        above = [g for g in self.flats if f < g]
        return [g for g in above if not any(h < g for h in above if f < h)]

    def closure(self, s):
        s = frozenset(s)
        if not s <= self.ground:
            raise ValueError("set is not contained in the ground set")
        candidates = [f for f in self.flats if s <= f]
        out = self.ground
        for f in candidates:
            out = out & f
        return out

    def coatoms(self):
        return frozenset(self._covers_below_ground())

    def _covers_below_ground(self):
        below = [f for f in self.flats if f != self.ground]
        return [f for f in below if not any(f < g for g in below)]

    def height(self, f):
        if self._heights is None:
            hs = {}
            for g in sorted(self.flats, key=len):
                subs = [hs[h] for h in self.flats if h < g and h in hs]
                hs[g] = 1 + max(subs) if subs else 0
            self._heights = hs
        return self._heights[frozenset(f)]

    def __eq__(self, other):
        return (
            isinstance(other, Matroid)
            and self.ground == other.ground
            and self.flats == other.flats
        )

    def __hash__(self):
        return hash((self.ground, self.flats))

    def __repr__(self):
        return f"Matroid(|ground|={len(self.ground)}, |flats|={len(self.flats)})"

    def to_json(self):
        return {
            "ground": len(self.ground)
            if self.ground == frozenset(range(1, len(self.ground) + 1))
            else sorted(self.ground),
            "coatoms": [sorted(c) for c in sorted(self.coatoms(), key=sorted)],
        }

    @classmethod
    def from_json(cls, data) -> "Matroid":
        if isinstance(data, str):
            data = json.loads(data)
        return matroid_from_coatoms(data["ground"], data["coatoms"])


def matroid_from_coatoms(ground, coatoms) -> Matroid:
    """Close an antichain of coatoms under intersection; validate axioms."""
    if isinstance(ground, int):
        ground = frozenset(range(1, ground + 1))
    else:
        ground = frozenset(ground)
    coatoms = [frozenset(c) for c in coatoms]
    for a, b in combinations(coatoms, 2):
        if a <= b or b <= a:
            raise ValueError("coatoms must form an antichain")
    flats = {ground} | set(coatoms)
    frontier = set(coatoms)
    while frontier:
        new = set()
        for f in frontier:
            for g in flats:
                h = f & g
                if h not in flats and h not in new:
                    new.add(h)
        flats |= new
        frontier = new
    return Matroid(ground, flats)


def matroid_rank(m: Matroid) -> int:
    return m.height(m.ground)


def is_paving(m: Matroid) -> bool:
    """Closure of every (rank-1)-subset of the ground set is a coatom."""
    r = matroid_rank(m)
    if r == 0:
        return True
    coat = m.coatoms()
    return all(
        m.closure(s) in coat for s in combinations(sorted(m.ground), r - 1)
    )


def contract(m: Matroid, e) -> Matroid:
    if e not in m.ground:
        raise ValueError(f"element {e!r} is not in the ground set")
    flats = {f - {e} for f in m.flats if e in f}
    return Matroid(m.ground - {e}, flats)


def uniform_matroid(k: int, n: int) -> Matroid:
    ground = frozenset(range(1, n + 1))
    flats = {frozenset(s) for size in range(k) for s in combinations(ground, size)}
    flats.add(ground)
    return Matroid(ground, flats)


def free_matroid(n: int) -> Matroid:
    ground = list(range(1, n + 1))
    flats = {frozenset(s) for size in range(n + 1) for s in combinations(ground, size)}
    return Matroid(ground, flats)


def ms_paving_coatoms(f) -> list:
    """Coatom family of the rank-(k+1) paving matroid attached to a family.

    Ground is [n+1]; the coatoms are the members themselves, the k-subsets
    not inside any member, and the (k-1)-subsets each extended by n+1.
    """
    n, k = f.n, f.k
    coatoms = [frozenset(T) for T in f.members]
    for s in combinations(range(1, n + 1), k):
        if not any(set(s) <= T for T in f.members):
            coatoms.append(frozenset(s))
    for s in combinations(range(1, n + 1), k - 1):
        coatoms.append(frozenset(s) | {n + 1})
    return coatoms
