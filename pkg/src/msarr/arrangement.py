"""Central hyperplane arrangements and their combinatorics.

An arrangement is an ordered list of labeled nonzero normals in an exact
ambient space.  From it we derive the intersection lattice (BFS on
codimension, deduplicated by canonical echelon form of the normal space),
localizations, an essentialization with a point back-map, chamber sign
vectors, the Zaslavsky chamber count used as an independent oracle, and
minimal circuits with their dependency coefficients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import GuardExceeded
from .fields import Q, as_scalar, format_scalar, parse_scalar, sign
from .feasibility import strict_feasibility
from .linalg import Mat, in_span, kernel_basis, rank, rref

__all__ = [
    "CentralArrangement",
    "Flat",
    "SignVector",
    "GordanCertificate",
    "EssentialMap",
    "intersection_lattice",
    "localization",
    "essentialize",
    "chamber_sign_vectors",
    "zaslavsky_chambers",
    "circuits",
    "matroid_of_arrangement",
    "CHAMBER_GUARD",
]

CHAMBER_GUARD = 22


@dataclass(frozen=True)
class Flat:
    """A lattice element: all hyperplanes containing it, plus its X^perp.

    normal_space is the canonical reduced echelon basis, so two flats are
    equal as subspaces iff their normal_space tuples are equal.
    """

    closed_set: frozenset
    codim: int
    normal_space: tuple
    pivots: tuple

    def key(self):
        return self.normal_space

    def sorted_labels(self):
        return sorted(self.closed_set)


@dataclass(frozen=True)
class SignVector:
    """Total +/- assignment over an arrangement's labels, in list order."""

    labels: tuple
    signs: tuple  # entries +1 / -1, parallel to labels

    def __post_init__(self):
        if len(self.labels) != len(self.signs):
            raise ValueError("labels and signs must have equal length")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    def sign_of(self, label) -> int:
        return self.signs[self.labels.index(label)]

    def as_dict(self):
        return dict(zip(self.labels, self.signs))

    def flip(self, flip_labels) -> "SignVector":
        fl = set(flip_labels)
        unknown = fl - set(self.labels)
        if unknown:
            raise KeyError(f"unknown labels: {sorted(unknown)}")
        return SignVector(
            self.labels,
            tuple(-s if l in fl else s for l, s in zip(self.labels, self.signs)),
        )

    def to_string(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    @classmethod
    def from_string(cls, labels, text: str) -> "SignVector":
        labels = tuple(labels)
        if len(text) != len(labels):
            raise ValueError(f"expected {len(labels)} signs, got {len(text)}")
        if set(text) - {"+", "-"}:
            raise ValueError("sign string may only contain + and -")
        return cls(labels, tuple(1 if c == "+" else -1 for c in text))


@dataclass(frozen=True)
class GordanCertificate:
    """Positive relation sum lambda_H e_H a_H = 0 proving inconsistency."""

    support: tuple
    coefficients: tuple

    def __post_init__(self):
        if not self.support:
            raise ValueError("certificate support is empty")
        if len(self.support) != len(self.coefficients):
            raise ValueError("support/coefficient length mismatch")
        if any(not c > 0 for c in self.coefficients):
            raise ValueError("certificate coefficients must be positive")

    def verify(self, arrangement: "CentralArrangement", eps: SignVector) -> bool:
        dim = arrangement.dim
        total = [Q(0)] * dim
        for lab, lam in zip(self.support, self.coefficients):
            nv = arrangement.normal(lab)
            s = eps.sign_of(lab)
            for j in range(dim):
                total[j] = total[j] + lam * s * nv[j]
        return all(v == 0 for v in total)

    def to_json(self):
        return {
            "support": list(self.support),
            "lambda": [format_scalar(c) for c in self.coefficients],
        }


class CentralArrangement:
    """Immutable labeled central arrangement with a cached lattice."""

    def __init__(self, dim: int, hyperplanes):
        if dim < 0:
            raise ValueError("dim must be nonnegative")
        labels = []
        normals = {}
        for label, normal in hyperplanes:
            label = str(label)
            nv = tuple(as_scalar(v) for v in normal)
            if len(nv) != dim:
                raise ValueError(f"normal of {label!r} has wrong length")
            if all(v == 0 for v in nv):
                raise ValueError(f"hyperplane {label!r} has zero normal")
            if label in normals:
                raise ValueError(f"duplicate label {label!r}")
            labels.append(label)
            normals[label] = nv
        self.dim = dim
        self.labels = tuple(labels)
        self._normals = normals
        self._reject_parallel()
        self._lattice = None  # filled lazily, write-once

    def _reject_parallel(self):
        seen = {}
        for lab in self.labels:
            rows, _ = rref(Mat([list(self._normals[lab])]))
            if rows in seen:
                raise ValueError(
                    f"hyperplanes {seen[rows]!r} and {lab!r} have the same kernel"
                )
            seen[rows] = lab

    def normal(self, label):
        try:
            return self._normals[label]
        except KeyError:
            raise KeyError(f"unknown hyperplane label {label!r}") from None

    def normal_matrix(self) -> Mat:
        return Mat([list(self._normals[l]) for l in self.labels])

    @property
    def n_hyperplanes(self) -> int:
        return len(self.labels)

    def rank(self) -> int:
        if not self.labels:
            return 0
        return rank(self.normal_matrix())

    def __repr__(self):
        return f"CentralArrangement(dim={self.dim}, n={self.n_hyperplanes})"

    # -- serialization ---------------------------------------------------

    def to_json(self):
        return {
            "dim": self.dim,
            "hyperplanes": [
                {
                    "label": l,
                    "normal": [format_scalar(v) for v in self._normals[l]],
                }
                for l in self.labels
            ],
        }

    @classmethod
    def from_json(cls, data) -> "CentralArrangement":
        if isinstance(data, str):
            data = json.loads(data)
        hps = [
            (h["label"], [parse_scalar(v) if isinstance(v, str) else v for v in h["normal"]])
            for h in data["hyperplanes"]
        ]
        return cls(int(data["dim"]), hps)

    # -- lattice ---------------------------------------------------------

    def full_lattice(self):
        if self._lattice is None:
            self._lattice = self._build_lattice(None)
        return self._lattice

    def _closure(self, ns_rows, ns_pivots):
        return frozenset(
            l for l in self.labels if in_span(self._normals[l], ns_rows, ns_pivots)
        )

    def _build_lattice(self, max_codim):
        top = Flat(frozenset(), 0, (), ())
        by_key = {(): top}
        frontier = [top]
        p = 0
        while frontier and (max_codim is None or p < max_codim):
            newly = {}
            for fl in frontier:
                residual = [l for l in self.labels if l not in fl.closed_set]
                for lab in residual:
                    rows = [list(r) for r in fl.normal_space]
                    rows.append(list(self._normals[lab]))
                    ns, piv = rref(Mat(rows))
                    if len(ns) != fl.codim + 1:
                        continue  # normal already in span, cannot happen post-closure
                    if ns in by_key or ns in newly:
                        continue
                    closed = self._closure(ns, piv)
                    newly[ns] = Flat(closed, fl.codim + 1, ns, piv)
            by_key.update(newly)
            frontier = list(newly.values())
            p += 1
        flats = sorted(by_key.values(), key=lambda f: (f.codim, f.sorted_labels()))
        return flats

    def flats(self, max_codim=None):
        if max_codim is None:
            return list(self.full_lattice())
        return [f for f in self.full_lattice() if f.codim <= max_codim]

    def flat_of(self, labels) -> Flat:
        """The flat determined by a set of hyperplane labels."""
        labels = list(labels)
        for l in labels:
            self.normal(l)
        if not labels:
            return Flat(frozenset(), 0, (), ())
        ns, piv = rref(Mat([list(self._normals[l]) for l in labels]))
        closed = self._closure(ns, piv)
        return Flat(closed, len(ns), ns, piv)

    def has_flat(self, x: Flat) -> bool:
        return any(f.key() == x.key() for f in self.full_lattice())


def intersection_lattice(a: CentralArrangement, max_codim=None):
    """All flats with codim <= max_codim (default: rank), graded by codim."""
    return a.flats(max_codim)


def localization(a: CentralArrangement, x: Flat) -> CentralArrangement:
    """Subarrangement of the hyperplanes containing the flat x."""
    if not a.has_flat(x):
        raise ValueError("flat does not belong to this arrangement")
    return CentralArrangement(
        a.dim, [(l, a.normal(l)) for l in a.labels if l in x.closed_set]
    )


@dataclass(frozen=True)
class EssentialMap:
    """Coordinate data tying an essentialization back to the original space.

    Pivot columns of the echelonized normal matrix serve as quotient
    coordinates; sign vectors carry over unchanged because labels do.
    """

    dim: int
    pivots: tuple
    basis: tuple  # echelon basis of the normal row space

    def lift_point(self, point):
        out = [Q(0)] * self.dim
        for coord, val in zip(self.pivots, point):
            out[coord] = as_scalar(val)
        return tuple(out)

    def project_point(self, point):
        pt = [as_scalar(v) for v in point]
        return tuple(pt[c] for c in self.pivots)


def essentialize(a: CentralArrangement):
    """Rank-preserving quotient presentation plus the point back-map.

    The new normal of H is its coefficient vector over the echelon basis of
    the full normal row space; for echelon bases those coefficients are just
    the pivot-column entries of the original normal.
    """
    if not a.labels:
        return CentralArrangement(0, []), EssentialMap(a.dim, (), ())
    basis, pivots = rref(a.normal_matrix())
    ess = CentralArrangement(
        len(basis),
        [(l, tuple(a.normal(l)[c] for c in pivots)) for l in a.labels],
    )
    return ess, EssentialMap(a.dim, pivots, basis)


def _eval(normal, point):
    return sum(c * v for c, v in zip(normal, point))


def chamber_sign_vectors(a: CentralArrangement):
    """Sign vectors realized by complement points, by pruned DFS.

    Each partial assignment carries an interior witness point; extending by
    a hyperplane reuses the witness for the sign it already satisfies, so
    only the flipped branch costs a feasibility solve.
    """
    n = a.n_hyperplanes
    if n > CHAMBER_GUARD:
        raise GuardExceeded(
            f"{n} hyperplanes exceeds the chamber enumeration guard ({CHAMBER_GUARD})"
        )
    if n == 0:
        return {SignVector((), ())}
    normals = [a.normal(l) for l in a.labels]
    out = set()

    def solve(prefix_signs):
        rows = [
            [s * c for c in normals[i]] for i, s in enumerate(prefix_signs)
        ]
        res = strict_feasibility(rows)
        return res.point

    def descend(prefix_signs, witness):
        i = len(prefix_signs)
        if i == n:
            out.add(SignVector(a.labels, tuple(prefix_signs)))
            return
        val = sign(_eval(normals[i], witness)) if witness is not None else 0
        for s in (1, -1):
            if val == s:
                descend(prefix_signs + [s], witness)
            else:
                w = solve(prefix_signs + [s])
                if w is not None:
                    descend(prefix_signs + [s], w)

    descend([], None)
    return out


def zaslavsky_chambers(a: CentralArrangement) -> int:
    """Chamber count as sum of |mu(bottom, X)| over the full lattice."""
    flats = a.full_lattice()
    # order by closed-set containment; valid since closed sets determine flats
    mu = {}
    total = 0
    for f in flats:  # already graded by codim, so predecessors come first
        if f.codim == 0:
            m = 1
        else:
            m = 0
            for g in flats:
                if g.codim < f.codim and g.closed_set <= f.closed_set:
                    m -= mu[g.key()]
        mu[f.key()] = m
        total += abs(m)
    return total


def circuits(a: CentralArrangement, max_size: int):
    """Minimal dependent label sets of size <= max_size with coefficients.

    Each circuit's dependency is unique up to scale; it is returned with
    first nonzero coefficient normalized to 1.
    """
    if max_size > a.n_hyperplanes:
        raise ValueError("max_size exceeds the number of hyperplanes")
    from itertools import combinations

    found = []
    found_sets = []
    for size in range(2, max_size + 1):
        for combo in combinations(a.labels, size):
            cs = set(combo)
            if any(f <= cs for f in found_sets):
                continue
            cols = Mat([list(a.normal(l)) for l in combo]).transpose()
            ker = kernel_basis(cols)
            if len(ker) != 1:
                continue
            coeffs = ker[0]
            if any(c == 0 for c in coeffs):
                continue  # a zero coefficient means a smaller dependent subset
            lead = next(c for c in coeffs if c != 0)
            coeffs = tuple(c / lead for c in coeffs)
            found.append((frozenset(combo), dict(zip(combo, coeffs))))
            found_sets.append(frozenset(combo))
    return found


def matroid_of_arrangement(a: CentralArrangement):
    """Linear matroid on 1..n whose flats are the lattice closed sets."""
    from .matroid import Matroid

    idx = {l: i + 1 for i, l in enumerate(a.labels)}
    flats = {
        frozenset(idx[l] for l in f.closed_set) for f in a.full_lattice()
    }
    flats.add(frozenset(range(1, a.n_hyperplanes + 1)))
    return Matroid(a.n_hyperplanes, flats)
