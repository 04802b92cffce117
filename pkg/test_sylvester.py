#!/usr/bin/env python3
"""
Tests for binary ranks (Sylvester) and carrier curves
"""
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from errors import DegreeError, DimensionError
from poly_core import HomogeneousForm, catalecticant, kernel, parse_form
from sylvester import (
    BinaryForm,
    CarrierCurve,
    ImplicitPointSet,
    binary_border_rank,
    binary_rank,
    explicit_roots_if_rational,
    is_squarefree,
    sylvester_decomposition,
    verify_binary_decomposition,
)

X, Y = sp.symbols("X Y")
ORACLE_SAMPLES = 10_000
INVARIANCE_SAMPLES = 200


def _sympy_form(coeffs) -> sp.Expr:
    D = len(coeffs) - 1
    return sum(sp.Rational(c.numerator, c.denominator) * X ** (D - j) * Y ** j for j, c in enumerate(coeffs))


def oracle_rank(f: BinaryForm) -> int:
    """Smallest r whose apolar system has a squarefree gcd (then its generic member is squarefree)."""
    F = f.to_form()
    for r in range(1, f.degree + 1):
        basis = kernel(catalecticant(F, r), r + 1)
        if not basis:
            continue
        g = sp.Poly(_sympy_form(basis[0]), X, Y)
        for v in basis[1:]:
            g = g.gcd(sp.Poly(_sympy_form(v), X, Y))
        if all(mult == 1 for _, mult in sp.sqf_list(g.as_expr(), X, Y)[1]):
            return r
    return f.degree + 1


def test_squarefree_and_roots():
    assert is_squarefree(BinaryForm.parse("x0^2 - x1^2"))
    assert not is_squarefree(BinaryForm.parse("x0*x1^2"))
    assert not is_squarefree(BinaryForm((0, 0, 1)))
    assert is_squarefree(BinaryForm((0, 1, 1)))
    roots = explicit_roots_if_rational(BinaryForm.parse("x0^2 - x1^2"))
    assert [p.coords for p in roots] == [(1, -1), (1, 1)]
    assert explicit_roots_if_rational(BinaryForm.parse("x0^2 - 2*x1^2")) is None


@pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 10) for b in range(1, 10) if a + b <= 10])
def test_monomial_ranks(a, b):
    f = BinaryForm.from_form(HomogeneousForm.monomial((a, b)))
    cert = binary_rank(f, np.random.default_rng(a * 31 + b))
    assert cert.rank == max(a, b) + 1
    assert cert.border_rank == min(a, b) + 1
    assert verify_binary_decomposition(f, cert.witness)


def test_pure_powers_have_rank_one():
    for D in range(1, 9):
        assert binary_rank(BinaryForm.from_form(parse_form(f"(2*x0 - 3*x1)^{D}"))).rank == 1


def test_tangent_case():
    cert, points = sylvester_decomposition(BinaryForm.parse("x0^5*x1"))
    assert (cert.rank, cert.border_rank, cert.tangent_case) == (6, 2, True)
    assert points.size == 6
    cert, _ = sylvester_decomposition(BinaryForm.parse("x0*x1^2"))
    assert (cert.rank, cert.border_rank) == (3, 2)


@pytest.mark.slow
def test_binary_rank_matches_oracle():
    rng = np.random.default_rng(7)
    checked = 0
    while checked < ORACLE_SAMPLES:
        D = int(rng.integers(1, 9))
        coeffs = tuple(Fraction(int(c)) for c in rng.integers(-2, 3, size=D + 1))
        f = BinaryForm(coeffs)
        if f.is_zero():
            continue
        cert = binary_rank(f, rng)
        assert cert.rank == oracle_rank(f), f"rank mismatch for {f}"
        assert cert.witness.degree == cert.rank
        assert verify_binary_decomposition(f, cert.witness)
        checked += 1


def test_ranks_are_invariant_under_gl2():
    rng = np.random.default_rng(13)
    checked = 0
    while checked < INVARIANCE_SAMPLES:
        D = int(rng.integers(2, 8))
        f = BinaryForm(tuple(Fraction(int(c)) for c in rng.integers(-2, 3, size=D + 1)))
        M = [[int(c) for c in rng.integers(-3, 4, size=2)] for _ in range(2)]
        if f.is_zero() or M[0][0] * M[1][1] - M[0][1] * M[1][0] == 0:
            continue
        moved = BinaryForm.from_form(f.to_form().substitute(M))
        before, after = binary_rank(f, rng), binary_rank(moved, rng)
        assert (after.rank, after.border_rank) == (before.rank, before.border_rank), f"{f} under {M}"
        assert binary_border_rank(moved) == binary_border_rank(f)
        checked += 1


def test_border_rank_rejects_zero():
    with pytest.raises(DegreeError):
        binary_border_rank(BinaryForm((0, 0, 0)))


def test_carrier_line_round_trip():
    line = CarrierCurve.line([1, 0, 2], [0, 1, -1])
    f = BinaryForm.parse("x0^3 - 2*x0*x1^2 + 5*x1^3")
    F = line.pushforward(f, 3)
    assert F.num_vars == 3
    assert line.pullback(F) == f
    assert line.pullback(parse_form("x2^3")) is None
    with pytest.raises(DimensionError):
        line.pullback(parse_form("x0^3"))


def test_carrier_conic_parametrizes_points_on_the_conic():
    # x0*x2 - x1^2 through (1:0:0)
    M = [[0, 0, Fraction(1, 2)], [0, -1, 0], [Fraction(1, 2), 0, 0]]
    conic = CarrierCurve.conic(M, [1, 0, 0])
    assert conic.param_degree == 2
    for alpha, beta in [(1, 1), (2, -1), (3, 5)]:
        x0, x1, x2 = conic.vector_at(Fraction(alpha), Fraction(beta))
        assert x0 * x2 - x1 * x1 == 0
    f = BinaryForm(tuple(Fraction(c) for c in (1, 0, -3, 0, 2, 1, 0)))
    assert conic.pullback(conic.pushforward(f, 3)) == f


def test_implicit_points_on_a_carrier():
    carrier = CarrierCurve.line([1, 0, 0], [0, 0, 1])
    block = ImplicitPointSet(BinaryForm.parse("x0^2 - x1^2"), carrier)
    points = block.explicit_points()
    assert block.size == 2
    assert sorted(p.coords for p in points) == [(1, 0, -1), (1, 0, 1)]


if __name__ == "__main__":
    print("📐 Testing Sylvester's algorithm")
    print("=" * 50)
    test_squarefree_and_roots()
    for a in range(1, 10):
        for b in range(1, 11 - a):
            test_monomial_ranks(a, b)
    print("   • monomial ranks ok")
    test_pure_powers_have_rank_one()
    test_tangent_case()
    test_binary_rank_matches_oracle()
    print(f"   • {ORACLE_SAMPLES} random forms agree with the oracle")
    test_carrier_line_round_trip()
    test_carrier_conic_parametrizes_points_on_the_conic()
    test_implicit_points_on_a_carrier()
    print("\n✅ Testing complete!")
