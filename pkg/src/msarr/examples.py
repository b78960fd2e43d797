"""Named base arrangements used throughout the docs and the CLI.

"ms-3.1": four lines in the plane, the standard small worked example.
"falk":   six planes in 3-space whose triple 1245/1346/2356 over-intersects.
"h3":     the six lines of the icosahedral reflection arrangement, over
          the quadratic extension by sqrt(5).
"b63":    a fixed very generic 3x6 rational base (seeded sample).
"moment:s1,...,sn": k = 2 moment-curve base at the given parameters.
"""

from __future__ import annotations

from .fields import PHI, Q, Qrt5
from .msbuild import GenericArrangement, moment_curve_base, random_very_generic

__all__ = ["named_base", "EXAMPLE_NAMES"]

EXAMPLE_NAMES = ("ms-3.1", "falk", "h3", "b63", "moment:...")

_MS31 = [
    [1, 0, 1, -1],
    [0, 1, 1, 1],
]

_FALK = [
    [1, 0, 0, 1, 2, 2],
    [0, 1, 0, 2, 3, 2],
    [0, 0, 1, 2, 2, 1],
]


def _h3_matrix():
    one = Qrt5(Q(1), Q(0))
    zero = Qrt5(Q(0), Q(0))
    phi = PHI
    return [
        [one, one, zero, zero, phi, -phi],
        [zero, zero, phi, -phi, one, one],
        [phi, -phi, one, one, zero, zero],
    ]


def named_base(name: str) -> GenericArrangement:
    if name == "ms-3.1":
        return GenericArrangement.from_matrix(_MS31)
    if name == "falk":
        return GenericArrangement.from_matrix(_FALK)
    if name == "h3":
        return GenericArrangement.from_matrix(_h3_matrix())
    if name == "b63":
        return random_very_generic(6, 3, seed=1).base
    if name.startswith("moment:"):
        parts = name[len("moment:"):].split(",")
        return moment_curve_base([Q(p) for p in parts])
    raise ValueError(f"unknown example {name!r}")
