#!/usr/bin/env python3
"""
Tests for degree-4 schemes: validation, spans, lines, conics, the Gorenstein gate
"""
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from errors import DegreeError, ParseError, SchemeError
from poly_core import h1_defect, rank
from schemes import (
    Degree4Scheme,
    FatPointComponent,
    GateVerdict,
    JetComponent,
    SquarePencilComponent,
    common_factor,
    conic_pencil,
    dump_scheme,
    gorenstein_gate,
    line_profile,
    load_scheme,
    map_scheme,
    normalize_square_pencil,
    restrict_to_span,
    scheme_from_json,
    scheme_span,
    span_basis,
)

FIXTURES = Path(__file__).parent / "fixtures"
GATE_SAMPLES = 1000
E0, E1, E2 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def fixture(name: str) -> Degree4Scheme:
    return load_scheme(str(FIXTURES / f"{name}.json"))


def _det3(rows) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def socle_dimension(q1, q2) -> int:
    """Socle of K[x,y]/((Q1,Q2) + (x,y)^3): the quadric line plus linear l with x*l, y*l in span(Q1,Q2)."""
    def conditions(b, c):
        return [_det3([(b, c, 0), q1, q2]), _det3([(0, b, c), q1, q2])]

    # both conditions are linear in (b, c)
    columns = [conditions(1, 0), conditions(0, 1)]
    matrix = [[columns[0][k], columns[1][k]] for k in range(2)]
    return 1 + (2 - rank(matrix, 2))


def pencil_scheme(q1, q2) -> Degree4Scheme:
    return Degree4Scheme(2, (SquarePencilComponent(E0, E1, E2, q1, q2),))


def test_gate_canonical_cases():
    assert gorenstein_gate(pencil_scheme((1, 0, 0), (0, 1, 0))) is GateVerdict.REJECT_NOT_GORENSTEIN
    assert gorenstein_gate(pencil_scheme((1, 0, 0), (0, 0, 1))) is GateVerdict.ACCEPT
    # (L1^2, L2^2) for L1 = x + y, L2 = x - 2y
    assert gorenstein_gate(pencil_scheme((1, 2, 1), (1, -4, 4))) is GateVerdict.ACCEPT
    assert common_factor((1, 0, 0), (0, 1, 0)) == (1, 0)


def test_gate_matches_socle_oracle():
    rng = np.random.default_rng(11)
    checked = 0
    while checked < GATE_SAMPLES:
        q1, q2 = (tuple(Fraction(int(c)) for c in rng.integers(-2, 3, size=3)) for _ in range(2))
        if rank([q1, q2], 3) != 2:
            continue
        gorenstein = gorenstein_gate(pencil_scheme(q1, q2)) is GateVerdict.ACCEPT
        assert gorenstein == (socle_dimension(q1, q2) == 1), f"gate disagrees on {q1}, {q2}"
        checked += 1


def test_gate_rejects_fat_points():
    assert gorenstein_gate(fixture("fat_point_p3")) is GateVerdict.REJECT_FAT_POINT
    planar_fat = Degree4Scheme(3, (FatPointComponent((1, 0, 0, 0), ((0, 1, 0, 0), (0, 0, 1, 0))),
                                   JetComponent((0, 0, 0, 1))))
    assert gorenstein_gate(planar_fat) is GateVerdict.REJECT_PLANAR_FAT_POINT


@pytest.mark.parametrize("components,message", [
    ((JetComponent(E0), JetComponent(E1)), "degree 2"),
    ((JetComponent(E0, (E1,)), JetComponent(E0, (E2,))), "distinct"),
    ((JetComponent(E0, ((2, 0, 0),)), JetComponent(E1), JetComponent(E2)), "proportional"),
    ((FatPointComponent(E0, (E1,)), JetComponent(E2), JetComponent((1, 1, 1))), "fat point"),
    ((SquarePencilComponent(E0, E1, E2, (1, 0, 0), (2, 0, 0)),), "independent"),
])
def test_invalid_schemes(components, message):
    with pytest.raises(SchemeError, match=message):
        Degree4Scheme(2, components)


def test_coordinate_count_is_checked():
    with pytest.raises(SchemeError):
        Degree4Scheme(2, (JetComponent((1, 0, 0, 0), ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))),))


def test_json_round_trip_and_errors(tmp_path):
    A = fixture("square_pencil_p2")
    assert scheme_from_json(dump_scheme(A)) == A
    with pytest.raises(ParseError):
        scheme_from_json('{"ambient_dim": 2, "components": [{"type": "blob", "support": [1, 0, 0]}]}')
    with pytest.raises(ParseError):
        scheme_from_json("not json")
    with pytest.raises(ParseError):
        load_scheme(str(tmp_path / "missing.json"))
    with pytest.raises(SchemeError):
        scheme_from_json('{"ambient_dim": 2, "components": [{"type": "square_pencil", "support": [1, 0, 0]}]}')


def test_restrict_to_span():
    A = fixture("collinear_jet_p2")
    reduced, basis = restrict_to_span(A)
    assert reduced.ambient_dim == 1
    assert len(basis) == 2 and all(len(row) == 3 for row in basis)
    assert span_basis(fixture("skew_two_jets_p3")).dim == 3


def test_map_scheme_keeps_span_dimension():
    A = fixture("smooth_conic_p2")
    B = map_scheme(A, [[1, 2, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
    assert B.ambient_dim == 3
    assert span_basis(B).dim == 2
    assert [c.degree for c in B.components] == [2, 2]


def test_scheme_span():
    with pytest.raises(DegreeError):
        scheme_span(fixture("reduced_points_p2"), 2)
    data = scheme_span(fixture("reduced_points_p2"), 3)
    assert data.span.rank == 4
    assert len(data.truncations) == 4
    assert all(sub.rank == 3 for _, sub in data.truncations)
    jet = scheme_span(fixture("four_jet_p3"), 3)
    assert jet.span.rank == 4
    assert [label for label, _ in jet.truncations] == ["component 0: jet of length 4 -> 3"]
    for name in ("skew_two_jets_p3", "square_pencil_p2", "fat_point_p3", "collinear_jet_p2"):
        assert h1_defect(scheme_span(fixture(name), 4).span, 4) == 0


def test_line_profiles():
    profile = line_profile(fixture("tangent_jet_p2"))
    assert profile.max_line_degree == 3 and profile.residual_on_line
    assert all(p.coords[2] == 0 for p in profile.witness_line)
    profile = line_profile(fixture("residual_off_line_p2"))
    assert profile.max_line_degree == 3 and not profile.residual_on_line
    assert line_profile(fixture("two_jets_on_line_p2")).max_line_degree == 3
    assert line_profile(fixture("smooth_conic_p2")).max_line_degree == 2
    assert line_profile(fixture("square_pencil_p2")).max_line_degree == 2
    assert line_profile(fixture("collinear_jet_p2")).max_line_degree == 4


def test_conic_pencils():
    smooth = conic_pencil(fixture("smooth_conic_p2"))
    assert smooth.generic_member_smooth
    assert not conic_pencil(fixture("square_pencil_p2")).generic_member_smooth
    with pytest.raises(SchemeError):
        conic_pencil(fixture("skew_two_jets_p3"))


def test_normalize_square_pencil():
    c = SquarePencilComponent(E0, E1, E2, (1, 0, 1), (0, 1, 0))
    normal = normalize_square_pencil(c)
    assert normal is not None
    assert (normal.q1, normal.q2) == ((1, 0, 0), (0, 0, 1))
    before = scheme_span(Degree4Scheme(2, (c,)), 4).span
    after = scheme_span(Degree4Scheme(2, (normal,)), 4).span
    assert before.contains_subspace(after) and after.contains_subspace(before)
    # the squares in the pencil (x^2 - y^2, x*y) are (x +- i y)^2
    assert normalize_square_pencil(SquarePencilComponent(E0, E1, E2, (1, 0, -1), (0, 1, 0))) is None


if __name__ == "__main__":
    print("🧩 Testing degree-4 schemes")
    print("=" * 50)
    test_gate_canonical_cases()
    test_gate_matches_socle_oracle()
    print(f"   • gate agrees with the socle oracle on {GATE_SAMPLES} pencils")
    test_gate_rejects_fat_points()
    test_restrict_to_span()
    test_map_scheme_keeps_span_dimension()
    test_scheme_span()
    test_line_profiles()
    test_conic_pencils()
    test_normalize_square_pencil()
    print("\n✅ Testing complete!")
