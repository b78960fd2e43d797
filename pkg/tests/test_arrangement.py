"""Arrangement lattice, chambers, essentialization and circuits."""

import json

import pytest

import oracles
from msarr.errors import GuardExceeded
from msarr.fields import Q
from msarr import (
    CentralArrangement,
    SignVector,
    GordanCertificate,
    intersection_lattice,
    localization,
    essentialize,
    chamber_sign_vectors,
    zaslavsky_chambers,
    circuits,
)
from conftest import boolean


def lattice_closed_sets(a):
    return {(f.codim, f.closed_set) for f in a.full_lattice()}


# -- construction guards ---------------------------------------------------


def test_rejects_zero_normal():
    with pytest.raises(ValueError):
        CentralArrangement(2, [("z", [0, 0])])


def test_rejects_duplicate_label():
    with pytest.raises(ValueError):
        CentralArrangement(2, [("a", [1, 0]), ("a", [0, 1])])


def test_rejects_parallel_normals():
    with pytest.raises(ValueError):
        CentralArrangement(2, [("a", [1, 1]), ("b", [2, 2])])


# -- lattice vs brute force ------------------------------------------------


def test_boolean_lattice_matches_brute_force(boolean2):
    assert lattice_closed_sets(boolean2) == oracles.brute_force_flats(boolean2)
    assert len(boolean2.full_lattice()) == 4


def test_braid3_lattice_matches_brute_force(br3):
    assert lattice_closed_sets(br3) == oracles.brute_force_flats(br3)
    # center flat contains all three hyperplanes at codim 2
    codims = sorted(f.codim for f in br3.full_lattice())
    assert codims == [0, 1, 1, 1, 2]


def test_boolean4_lattice_is_full_power_set():
    b4 = boolean(4)
    assert lattice_closed_sets(b4) == oracles.brute_force_flats(b4)
    assert len(b4.full_lattice()) == 16


def test_ms52_lattice_matches_brute_force(ms52):
    assert lattice_closed_sets(ms52.arrangement) == oracles.brute_force_flats(
        ms52.arrangement
    )


def test_flat_of_and_has_flat(br3):
    x = br3.flat_of(["xy", "yz"])
    assert x.codim == 2
    assert x.closed_set == frozenset({"xy", "xz", "yz"})  # closure adds xz
    assert br3.has_flat(x)
    assert br3.flat_of([]).codim == 0


def test_intersection_lattice_truncation(br3):
    assert {f.codim for f in intersection_lattice(br3, max_codim=1)} == {0, 1}


# -- localization ------------------------------------------------------------


def test_localization_keeps_containing_hyperplanes(br3):
    x = br3.flat_of(["xy"])
    loc = localization(br3, x)
    assert loc.labels == ("xy",)
    center = br3.flat_of(["xy", "xz"])
    assert localization(br3, center).labels == ("xy", "xz", "yz")


def test_localization_rejects_foreign_flat(br3, boolean2):
    other = boolean2.flat_of(["x"])
    with pytest.raises(ValueError):
        localization(br3, other)


# -- essentialization --------------------------------------------------------


def test_essentialize_braid(br3):
    ess, emap = essentialize(br3)
    assert ess.dim == 2 == br3.rank()
    assert ess.labels == br3.labels
    # lattice closed sets are preserved
    assert lattice_closed_sets(ess) == lattice_closed_sets(br3)
    # lifted chamber points land in the announced chamber of the original
    for ch in chamber_sign_vectors(ess):
        rows = [
            [ch.sign_of(l) * c for c in ess.normal(l)] for l in ess.labels
        ]
        from msarr.feasibility import strict_feasibility

        pt = strict_feasibility(rows).point
        lifted = emap.lift_point(pt)
        for l in br3.labels:
            val = sum(c * v for c, v in zip(br3.normal(l), lifted))
            assert (val > 0) == (ch.sign_of(l) > 0)


def test_essential_map_roundtrip(br3):
    _, emap = essentialize(br3)
    pt = (Q(2), Q(-1))
    assert emap.project_point(emap.lift_point(pt)) == pt


# -- chambers ----------------------------------------------------------------


def test_braid3_chambers_match_oracle(br3):
    got = {c.to_string() for c in chamber_sign_vectors(br3)}
    assert got == oracles.braid3_chamber_strings(br3.labels)
    assert len(got) == 6


def test_boolean_chambers():
    assert len(chamber_sign_vectors(boolean(3))) == 8


def test_zaslavsky_agrees(br3, boolean2):
    assert zaslavsky_chambers(br3) == 6
    assert zaslavsky_chambers(boolean2) == 4
    for r in (1, 3, 4):
        assert zaslavsky_chambers(boolean(r)) == 2**r


def test_chamber_guard_fires():
    big = CentralArrangement(
        2, [(f"h{i}", [1, i]) for i in range(23)]
    )
    with pytest.raises(GuardExceeded):
        chamber_sign_vectors(big)


# -- circuits ----------------------------------------------------------------


def test_braid3_single_circuit(br3):
    found = circuits(br3, 3)
    assert len(found) == 1
    support, coeffs = found[0]
    assert support == frozenset({"xy", "xz", "yz"})
    # (1,-1,0) - (1,0,-1) + (0,1,-1) = 0; normalized first coefficient is 1
    assert coeffs["xy"] == Q(1)
    vec = [Q(0)] * 3
    for lab, c in coeffs.items():
        vec = [v + c * nv for v, nv in zip(vec, br3.normal(lab))]
    assert all(v == 0 for v in vec)


def test_circuits_skip_supersets():
    a = CentralArrangement(
        3,
        [
            ("a", [1, 0, 0]),
            ("b", [0, 1, 0]),
            ("c", [1, 1, 0]),
            ("d", [0, 0, 1]),
        ],
    )
    found = circuits(a, 4)
    assert [set(s) for s, _ in found] == [{"a", "b", "c"}]


def test_circuits_size_guard(br3):
    with pytest.raises(ValueError):
        circuits(br3, 4)


# -- sign vectors and certificates --------------------------------------------


def test_sign_vector_string_roundtrip(br3):
    sv = SignVector.from_string(br3.labels, "+-+")
    assert sv.to_string() == "+-+"
    assert sv.sign_of("xz") == -1
    assert sv.flip(["xz"]).to_string() == "+++"
    with pytest.raises(ValueError):
        SignVector.from_string(br3.labels, "+-")
    with pytest.raises(KeyError):
        sv.flip(["nope"])


def test_certificate_verifies_cyclic(br3):
    eps = SignVector(br3.labels, (1, -1, 1))  # x>y, z>x, y>z
    cert = GordanCertificate(br3.labels, (Q(1), Q(1), Q(1)))
    assert cert.verify(br3, eps)
    assert not cert.verify(br3, SignVector(br3.labels, (1, 1, 1)))


def test_certificate_rejects_bad_coefficients():
    with pytest.raises(ValueError):
        GordanCertificate(("a",), (Q(0),))
    with pytest.raises(ValueError):
        GordanCertificate((), ())


# -- serialization -------------------------------------------------------------


def test_arrangement_json_roundtrip(br3):
    blob = json.dumps(br3.to_json())
    back = CentralArrangement.from_json(blob)
    assert back.labels == br3.labels
    assert all(back.normal(l) == br3.normal(l) for l in br3.labels)
