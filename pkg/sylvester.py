"""
sylvester.py
- Binary forms and Sylvester's algorithm for their rank
- Squarefree apolar witnesses and rational root extraction
- Carrier curves (lines, conics, twisted cubics) and pulling forms back to them
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy as sp
from sympy import QQ

from errors import DegreeError, DimensionError, SchemeError
from poly_core import (
    HomogeneousForm,
    ProjectivePoint,
    Vector,
    catalecticant,
    contract,
    expand_power,
    format_form,
    kernel,
    linear_form,
    monomials,
    parse_form,
    scalar_text,
    solve_combination,
    to_scalar,
)

logger = logging.getLogger(__name__)

# ---------- CONFIG ----------
SQUAREFREE_RETRIES = 100
SEARCH_GRID = 3
SWEEP_LIMIT = 400
DEFAULT_SEED = 0
T = sp.Symbol("t")
# ---------------------------


# ---------- BINARY FORMS ----------
@dataclass(frozen=True)
class BinaryForm:
    """Coefficients in the basis x^D, x^(D-1) y, ..., y^D."""
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise DegreeError("a binary form needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(to_scalar(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_form(cls, F: HomogeneousForm) -> "BinaryForm":
        if F.num_vars != 2:
            raise DimensionError(f"binary forms have 2 variables, got {F.num_vars}")
        return cls(tuple(F.to_vector()))

    @classmethod
    def parse(cls, text: str) -> "BinaryForm":
        return cls.from_form(parse_form(text, num_vars=2))

    def to_form(self) -> HomogeneousForm:
        return HomogeneousForm.from_vector(2, self.degree, list(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def evaluate(self, alpha: Fraction, beta: Fraction) -> Fraction:
        D = self.degree
        return sum((c * alpha ** (D - j) * beta ** j for j, c in enumerate(self.coeffs)), Fraction(0))

    def text(self, var: str = "x") -> str:
        return format_form(self.to_form()).replace("x", var)

    def to_json(self) -> List[str]:
        return [scalar_text(c) for c in self.coeffs]

    def __str__(self) -> str:
        return self.text()


def _combine(basis: Sequence[BinaryForm], weights: Sequence[int]) -> BinaryForm:
    size = len(basis[0].coeffs)
    return BinaryForm(tuple(
        sum((Fraction(int(w)) * b.coeffs[k] for w, b in zip(weights, basis)), Fraction(0)) for k in range(size)
    ))


def apolar_space(f: BinaryForm, r: int) -> List[BinaryForm]:
    """Basis of the degree-r forms h with contract(f, h) = 0."""
    if r > f.degree:
        raise DegreeError(f"apolar degree {r} exceeds the form degree {f.degree}")
    return [BinaryForm(tuple(v)) for v in kernel(catalecticant(f.to_form(), r), r + 1)]


def apolar_forms(h: BinaryForm, D: int) -> List[BinaryForm]:
    """Basis of the degree-D forms g with contract(g, h) = 0."""
    r = h.degree
    if r > D:
        raise DegreeError(f"an apolar form of degree {r} cannot act on degree {D}")
    H = h.to_form()
    columns = [contract(HomogeneousForm.monomial(e), H).to_vector() for e in monomials(2, D)]
    rows = [list(row) for row in zip(*columns)]
    return [BinaryForm(tuple(v)) for v in kernel(rows, D + 1)]


def binary_border_rank(f: BinaryForm) -> int:
    """Minimal degree of a nonzero apolar form of f."""
    if f.is_zero() or f.degree < 1:
        raise DegreeError("border rank needs a nonzero binary form of positive degree")
    for r in range(1, f.degree + 1):
        if apolar_space(f, r):
            return r
    return f.degree


def is_squarefree(h: BinaryForm) -> bool:
    """gcd(h, h') is constant, with the root at (1:0) handled separately."""
    if h.is_zero():
        return False
    leading_zeros = next(i for i, c in enumerate(h.coeffs) if c != 0)
    if leading_zeros >= 2:
        return False
    g = sp.Poly.from_list([sp.Rational(c.numerator, c.denominator) for c in h.coeffs], T, domain=QQ)
    if g.degree() <= 0:
        return True
    return g.gcd(g.diff(T)).degree() == 0


def explicit_roots_if_rational(h: BinaryForm) -> Optional[List[ProjectivePoint]]:
    """Roots of h in P^1 when h splits over QQ, else None."""
    if not is_squarefree(h):
        return None
    points = []
    if h.coeffs[0] == 0:
        points.append(ProjectivePoint((1, 0)))
    g = sp.Poly.from_list([sp.Rational(c.numerator, c.denominator) for c in h.coeffs], T, domain=QQ)
    if g.degree() > 0:
        _, factors = g.factor_list()
        for factor, _mult in factors:
            if factor.degree() != 1:
                return None
            a, b = (to_scalar(c) for c in factor.all_coeffs())
            points.append(ProjectivePoint((-b / a, 1)))
    return sorted(points, key=lambda p: p.coords)


def _avoids(h: BinaryForm, avoid: Sequence[ProjectivePoint]) -> bool:
    return all(h.evaluate(*p.coords) != 0 for p in avoid)


def find_squarefree(
    basis: Sequence[BinaryForm],
    rng: Optional[np.random.Generator] = None,
    retries: int = SQUAREFREE_RETRIES,
    avoid: Sequence[ProjectivePoint] = (),
) -> Optional[BinaryForm]:
    """A squarefree element of span(basis) not vanishing on `avoid`."""
    if not basis:
        return None
    rng = rng if rng is not None else np.random.default_rng(DEFAULT_SEED)
    for _ in range(retries):
        weights = rng.integers(-SEARCH_GRID, SEARCH_GRID + 1, size=len(basis))
        if not weights.any():
            continue
        h = _combine(basis, weights)
        if is_squarefree(h) and _avoids(h, avoid):
            return h
    logger.warning(f"random search for a squarefree apolar form failed after {retries} draws; sweeping")
    for c in range(1, SWEEP_LIMIT + 1):
        h = _combine(basis, [c ** i for i in range(len(basis))])
        if is_squarefree(h) and _avoids(h, avoid):
            return h
    return None


@dataclass(frozen=True)
class BinaryRankCertificate:
    rank: int
    border_rank: int
    witness: BinaryForm
    minimal_generator: BinaryForm
    tangent_case: bool

    @property
    def degree(self) -> int:
        return self.witness.degree


def binary_rank(
    f: BinaryForm,
    rng: Optional[np.random.Generator] = None,
    avoid: Sequence[ProjectivePoint] = (),
    retries: int = SQUAREFREE_RETRIES,
) -> BinaryRankCertificate:
    """Sylvester's algorithm.

    The witness is a squarefree apolar form of degree equal to the rank. When
    the minimal apolar form is unique the witness may still vanish on `avoid`;
    callers that care check it.
    """
    r0 = binary_border_rank(f)
    low = apolar_space(f, r0)
    if len(low) == 1:
        h0 = low[0]
        if is_squarefree(h0):
            return BinaryRankCertificate(r0, r0, h0, h0, False)
        r1 = f.degree - r0 + 2
        witness = find_squarefree(apolar_space(f, r1), rng, retries, avoid)
        if witness is None:
            raise DegreeError(f"no squarefree apolar form of degree {r1} found for {f}")
        logger.debug(f"tangent case: border rank {r0}, rank {r1}")
        return BinaryRankCertificate(r1, r0, witness, h0, True)
    witness = find_squarefree(low, rng, retries, avoid)
    if witness is None:
        raise DegreeError(f"no squarefree apolar form of degree {r0} found for {f}")
    return BinaryRankCertificate(r0, r0, witness, low[0], False)


# ---------- CARRIER CURVES ----------
@dataclass(frozen=True)
class CarrierCurve:
    """Rational curve gamma: P^1 -> P^m; coordinate i is sum_j rows[i][j] s^(e-j) u^j."""
    rows: Tuple[Tuple[Fraction, ...], ...]
    kind: str = "curve"

    def __post_init__(self):
        rows = tuple(tuple(to_scalar(c) for c in row) for row in self.rows)
        if not rows or len({len(r) for r in rows}) != 1 or len(rows[0]) < 2:
            raise DimensionError("a carrier needs equal-length rows of at least two coefficients")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence[Fraction]], kind: str = "curve") -> "CarrierCurve":
        """gamma(s, u) = sum_j s^(e-j) u^j vectors[j]."""
        return cls(tuple(tuple(v[i] for v in vectors) for i in range(len(vectors[0]))), kind)

    @classmethod
    def line(cls, a: Sequence[Fraction], b: Sequence[Fraction]) -> "CarrierCurve":
        return cls.from_vectors([a, b], "line")

    @classmethod
    def conic(cls, matrix: Sequence[Sequence[Fraction]], base: Sequence[Fraction]) -> "CarrierCurve":
        """Smooth plane conic x^T M x = 0 parametrized by lines through a rational point."""
        M = [[to_scalar(c) for c in row] for row in matrix]
        R = [to_scalar(c) for c in base]
        if sp.Matrix(M).det() == 0:
            raise SchemeError("cannot parametrize a singular conic")

        def bil(x, y):
            return sum((x[i] * M[i][j] * y[j] for i in range(3) for j in range(3)), Fraction(0))

        if bil(R, R) != 0:
            raise SchemeError(f"base point {R} is not on the conic")
        units = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
        ea, eb = next(
            (units[i], units[j]) for i in range(3) for j in range(i + 1, 3)
            if sp.Matrix([R, units[i], units[j]]).det() != 0
        )
        qa, qb, qab = bil(ea, ea), bil(eb, eb), bil(ea, eb)
        ra, rb = bil(R, ea), bil(R, eb)
        v0 = [qa * R[i] - 2 * ra * ea[i] for i in range(3)]
        v1 = [2 * qab * R[i] - 2 * rb * ea[i] - 2 * ra * eb[i] for i in range(3)]
        v2 = [qb * R[i] - 2 * rb * eb[i] for i in range(3)]
        return cls.from_vectors([v0, v1, v2], "conic")

    @property
    def num_vars(self) -> int:
        return len(self.rows)

    @property
    def param_degree(self) -> int:
        return len(self.rows[0]) - 1

    def vector_at(self, alpha: Fraction, beta: Fraction) -> Vector:
        e = self.param_degree
        return [sum((c * alpha ** (e - j) * beta ** j for j, c in enumerate(row)), Fraction(0)) for row in self.rows]

    def point(self, alpha: Fraction, beta: Fraction) -> ProjectivePoint:
        return ProjectivePoint(tuple(self.vector_at(to_scalar(alpha), to_scalar(beta))))

    def embedded(self, basis: Sequence[Sequence[Fraction]]) -> "CarrierCurve":
        """Push the curve through the linear map q -> sum_c q_c basis[c]."""
        if len(basis) != self.num_vars:
            raise DimensionError("embedding basis does not match the carrier's coordinates")
        width = len(basis[0])
        rows = tuple(
            tuple(sum((self.rows[c][j] * basis[c][i] for c in range(self.num_vars)), Fraction(0)) for j in range(self.param_degree + 1))
            for i in range(width)
        )
        return CarrierCurve(rows, self.kind)

    def span_basis(self, d: int) -> Tuple[Tuple[Fraction, ...], ...]:
        """H_0..H_de with (sum_i gamma_i(s,u) x_i)^d = sum_k s^(de-k) u^k H_k."""
        return _carrier_power_basis(self, d)

    def pullback(self, F: HomogeneousForm) -> Optional[BinaryForm]:
        """The binary form f of degree de with pushforward(f) = F, or None."""
        if F.num_vars != self.num_vars:
            raise DimensionError("form and carrier live in different spaces")
        c = solve_combination(self.span_basis(F.degree), F.to_vector())
        if c is None:
            return None
        N = F.degree * self.param_degree
        return BinaryForm(tuple(ck * comb(N, k) for k, ck in enumerate(c)))

    def pushforward(self, f: BinaryForm, d: int) -> HomogeneousForm:
        N = d * self.param_degree
        if f.degree != N:
            raise DegreeError(f"binary form of degree {f.degree} does not live on a degree-{N} curve")
        basis = self.span_basis(d)
        vec = [Fraction(0)] * len(basis[0])
        for k, fk in enumerate(f.coeffs):
            if fk:
                w = fk / comb(N, k)
                vec = [v + w * h for v, h in zip(vec, basis[k])]
        return HomogeneousForm.from_vector(self.num_vars, d, vec)

    def to_json(self) -> List[List[str]]:
        return [[scalar_text(c) for c in row] for row in self.rows]


@lru_cache(maxsize=256)
def _carrier_power_basis(curve: CarrierCurve, d: int) -> Tuple[Tuple[Fraction, ...], ...]:
    lams = [linear_form([row[j] for row in curve.rows]) for j in range(curve.param_degree + 1)]
    return tuple(tuple(form.to_vector()) for form in expand_power(lams, d))


def identity_line() -> CarrierCurve:
    return CarrierCurve.line([1, 0], [0, 1])


@dataclass(frozen=True)
class ImplicitPointSet:
    """The roots of a squarefree binary form, placed on a carrier curve."""
    witness: BinaryForm
    carrier: CarrierCurve

    @property
    def size(self) -> int:
        return self.witness.degree

    def explicit_points(self) -> Optional[List[ProjectivePoint]]:
        roots = explicit_roots_if_rational(self.witness)
        if roots is None:
            return None
        return [self.carrier.point(*q.coords) for q in roots]


def verify_binary_decomposition(f: BinaryForm, witness: Union[ImplicitPointSet, BinaryForm]) -> bool:
    """A squarefree apolar h of degree <= D certifies rank(f) <= deg h."""
    h = witness.witness if isinstance(witness, ImplicitPointSet) else witness
    if h.degree > f.degree or not is_squarefree(h):
        return False
    return contract(f.to_form(), h.to_form()).is_zero()


def sylvester_decomposition(f: BinaryForm, rng: Optional[np.random.Generator] = None) -> Tuple[BinaryRankCertificate, ImplicitPointSet]:
    cert = binary_rank(f, rng)
    return cert, ImplicitPointSet(cert.witness, identity_line())
