"""
poly_core.py
- Exact homogeneous forms over the rationals (sparse exponent -> Fraction maps)
- Veronese coordinates in a fixed graded-lex monomial order
- Apolarity contraction and catalecticant matrices
- Exact linear algebra (rank, kernel, solve, span membership) via sympy DomainMatrix
"""
import logging
import numbers
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial, prod
from tokenize import TokenError
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import sympy as sp
from sympy import QQ
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.polyerrors import BasePolynomialError
from sympy.polys.matrices import DomainMatrix

from errors import DegreeError, DimensionError, ParseError

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
Vector = List[Fraction]
Matrix = List[List[Fraction]]
ScalarLike = Union[int, str, Fraction]

# ---------- CONFIG ----------
PARSE_TRANSFORMATIONS = standard_transformations + (convert_xor,)
VARIABLE_PATTERN = re.compile(r"^x(\d+)$")
# ---------------------------


# ---------- SCALARS ----------
def to_scalar(value: ScalarLike) -> Fraction:
    """Coerce ints, 'p/q' strings and Fractions to a normalized Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational number: {value!r}")
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"not a rational number: {value!r}") from e
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    raise ParseError(f"not a rational number: {value!r}")


def scalar_text(value: Fraction) -> str:
    return str(value)


# ---------- MONOMIALS ----------
@lru_cache(maxsize=None)
def monomials(num_vars: int, degree: int) -> Tuple[Exponent, ...]:
    """Exponent vectors of the given degree, graded-lex with x0 > x1 > ..."""
    if num_vars < 1 or degree < 0:
        raise DegreeError(f"no monomials for num_vars={num_vars}, degree={degree}")
    exps = []
    for combo in combinations_with_replacement(range(num_vars), degree):
        e = [0] * num_vars
        for i in combo:
            e[i] += 1
        exps.append(tuple(e))
    return tuple(sorted(exps, reverse=True))


@lru_cache(maxsize=None)
def monomial_index(num_vars: int, degree: int) -> Dict[Exponent, int]:
    return {e: i for i, e in enumerate(monomials(num_vars, degree))}


def multinomial(exp: Exponent) -> int:
    return factorial(sum(exp)) // prod(factorial(e) for e in exp)


def falling(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1)."""
    return prod(range(n - k + 1, n + 1)) if k > 0 else 1


# ---------- POINTS ----------
@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^m scaled so its first nonzero coordinate is 1."""
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(to_scalar(c) for c in self.coords)
        pivot = next((c for c in coords if c != 0), None)
        if pivot is None:
            raise DimensionError("a projective point cannot be the zero vector")
        object.__setattr__(self, "coords", tuple(c / pivot for c in coords))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def linear_form(self) -> "HomogeneousForm":
        return linear_form(self.coords)

    def to_json(self) -> List[str]:
        return [scalar_text(c) for c in self.coords]

    def __str__(self) -> str:
        return "(" + ":".join(scalar_text(c) for c in self.coords) + ")"


# ---------- FORMS ----------
@dataclass(frozen=True)
class HomogeneousForm:
    num_vars: int
    degree: int
    coeffs: Dict[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.num_vars < 1 or self.degree < 0:
            raise DegreeError(f"invalid form shape ({self.num_vars} vars, degree {self.degree})")
        clean: Dict[Exponent, Fraction] = {}
        for exp, c in self.coeffs.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.num_vars or sum(exp) != self.degree or min(exp) < 0:
                raise DegreeError(f"exponent {exp} does not fit {self.num_vars} vars of degree {self.degree}")
            total = clean.get(exp, Fraction(0)) + to_scalar(c)
            if total:
                clean[exp] = total
            else:
                clean.pop(exp, None)
        object.__setattr__(self, "coeffs", clean)

    # construction
    @classmethod
    def zero(cls, num_vars: int, degree: int) -> "HomogeneousForm":
        return cls(num_vars, degree, {})

    @classmethod
    def one(cls, num_vars: int) -> "HomogeneousForm":
        return cls(num_vars, 0, {(0,) * num_vars: Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: ScalarLike = 1) -> "HomogeneousForm":
        exp = tuple(exp)
        return cls(len(exp), sum(exp), {exp: to_scalar(coeff)})

    @classmethod
    def from_vector(cls, num_vars: int, degree: int, vector: Sequence[ScalarLike]) -> "HomogeneousForm":
        basis = monomials(num_vars, degree)
        if len(vector) != len(basis):
            raise DimensionError(f"vector of length {len(vector)} does not match {len(basis)} monomials")
        return cls(num_vars, degree, {e: to_scalar(c) for e, c in zip(basis, vector) if to_scalar(c) != 0})

    def to_vector(self) -> Vector:
        return [self.coeffs.get(e, Fraction(0)) for e in monomials(self.num_vars, self.degree)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self.coeffs.get(tuple(exp), Fraction(0))

    # arithmetic
    def _check_same_space(self, other: "HomogeneousForm"):
        if (self.num_vars, self.degree) != (other.num_vars, other.degree):
            raise DimensionError(
                f"forms live in different spaces: ({self.num_vars},{self.degree}) vs ({other.num_vars},{other.degree})"
            )

    def __add__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        self._check_same_space(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return HomogeneousForm(self.num_vars, self.degree, out)

    def __neg__(self) -> "HomogeneousForm":
        return self.scale(-1)

    def __sub__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        return self + (-other)

    def scale(self, c: ScalarLike) -> "HomogeneousForm":
        c = to_scalar(c)
        return HomogeneousForm(self.num_vars, self.degree, {e: v * c for e, v in self.coeffs.items()})

    def __mul__(self, other: Union["HomogeneousForm", ScalarLike]) -> "HomogeneousForm":
        if not isinstance(other, HomogeneousForm):
            return self.scale(other)
        if self.num_vars != other.num_vars:
            raise DimensionError("cannot multiply forms in different numbers of variables")
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return HomogeneousForm(self.num_vars, self.degree + other.degree, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "HomogeneousForm":
        result = HomogeneousForm.one(self.num_vars)
        for _ in range(k):
            result = result * self
        return result

    def substitute(self, matrix: Sequence[Sequence[ScalarLike]]) -> "HomogeneousForm":
        """F(M x): each x_i becomes sum_j M[i][j] x_j."""
        n = self.num_vars
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise DimensionError(f"substitution matrix must be {n}x{n}")
        images = [linear_form(row) for row in matrix]
        out = HomogeneousForm.zero(n, self.degree)
        for exp, c in self.coeffs.items():
            term = HomogeneousForm.one(n)
            for i, e in enumerate(exp):
                if e:
                    term = term * (images[i] ** e)
            out = out + term.scale(c)
        return out

    def evaluate(self, point: Sequence[ScalarLike]) -> Fraction:
        values = [to_scalar(v) for v in point]
        return sum((c * prod(v ** e for v, e in zip(values, exp)) for exp, c in self.coeffs.items()), Fraction(0))

    def __str__(self) -> str:
        return format_form(self)


def linear_form(coords: Sequence[ScalarLike]) -> HomogeneousForm:
    n = len(coords)
    return HomogeneousForm(n, 1, {tuple(1 if j == i else 0 for j in range(n)): to_scalar(c) for i, c in enumerate(coords)})


def veronese(p: Union[ProjectivePoint, Sequence[ScalarLike]], d: int) -> Vector:
    """Coefficient vector of l^d where l has coefficient vector p."""
    if d < 1:
        raise DegreeError(f"veronese degree must be >= 1, got {d}")
    coords = p.coords if isinstance(p, ProjectivePoint) else tuple(to_scalar(c) for c in p)
    return [multinomial(e) * prod(c ** k for c, k in zip(coords, e)) for e in monomials(len(coords), d)]


def expand_power(lams: Sequence[HomogeneousForm], d: int, order: Optional[int] = None) -> List[HomogeneousForm]:
    """Coefficients of t^0..t^(order-1) in (sum_j t^j lams[j])^d."""
    n = lams[0].num_vars
    top = d * (len(lams) - 1) + 1
    order = top if order is None else min(order, top)
    current = [HomogeneousForm.one(n)] + [HomogeneousForm.zero(n, 0)] * (order - 1)
    for step in range(1, d + 1):
        nxt = [HomogeneousForm.zero(n, step) for _ in range(order)]
        for k, term in enumerate(current):
            if term.is_zero():
                continue
            for j, lam in enumerate(lams):
                if k + j < order:
                    nxt[k + j] = nxt[k + j] + term * lam
        current = nxt
    return current


# ---------- APOLARITY ----------
def contract(F: HomogeneousForm, G: HomogeneousForm) -> HomogeneousForm:
    """G(d/dx_0, ..., d/dx_m) applied to F."""
    if F.num_vars != G.num_vars:
        raise DimensionError("contraction needs forms in the same number of variables")
    if G.degree > F.degree:
        raise DegreeError(f"cannot contract a degree-{F.degree} form by a degree-{G.degree} operator")
    out: Dict[Exponent, Fraction] = {}
    for beta, g in G.coeffs.items():
        for alpha, f in F.coeffs.items():
            if all(a >= b for a, b in zip(alpha, beta)):
                gamma = tuple(a - b for a, b in zip(alpha, beta))
                weight = prod(falling(a, b) for a, b in zip(alpha, beta))
                out[gamma] = out.get(gamma, Fraction(0)) + g * f * weight
    return HomogeneousForm(F.num_vars, F.degree - G.degree, out)


def catalecticant(F: HomogeneousForm, a: int) -> Matrix:
    """Matrix of G -> contract(F, G) on degree-a dual forms.

    Rows are degree d-a monomials, columns degree-a monomials, both graded-lex.
    """
    d = F.degree
    if a < 0 or a > d:
        raise DegreeError(f"catalecticant order {a} outside 0..{d}")
    n = F.num_vars
    rows = monomials(n, d - a)
    cols = monomials(n, a)
    matrix = []
    for gamma in rows:
        row = []
        for beta in cols:
            alpha = tuple(g + b for g, b in zip(gamma, beta))
            c = F.coeffs.get(alpha)
            row.append(c * prod(falling(x, b) for x, b in zip(alpha, beta)) if c else Fraction(0))
        matrix.append(row)
    return matrix


# ---------- EXACT LINEAR ALGEBRA ----------
def _domain_matrix(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    return DomainMatrix([[QQ(c.numerator, c.denominator) for c in row] for row in rows], (len(rows), ncols), QQ)


def _check_rows(rows: Sequence[Sequence[Fraction]], ncols: int):
    for row in rows:
        if len(row) != ncols:
            raise DimensionError(f"row of length {len(row)} in a matrix with {ncols} columns")


def rref(rows: Sequence[Sequence[ScalarLike]], ncols: Optional[int] = None) -> Tuple[Matrix, Tuple[int, ...]]:
    """Nonzero rows of the reduced echelon form and the pivot columns."""
    rows = [[to_scalar(c) for c in row] for row in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    _check_rows(rows, ncols)
    if not rows or ncols == 0:
        return [], ()
    reduced, pivots = _domain_matrix(rows, ncols).rref()
    dense = reduced.to_Matrix().tolist()
    return [[Fraction(int(x.p), int(x.q)) for x in dense[i]] for i in range(len(pivots))], tuple(pivots)


def rank(rows: Sequence[Sequence[ScalarLike]], ncols: Optional[int] = None) -> int:
    return len(rref(rows, ncols)[1])


def kernel(rows: Sequence[Sequence[ScalarLike]], ncols: Optional[int] = None) -> List[Vector]:
    """Basis of {v : rows . v = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    reduced, pivots = rref(rows, ncols)
    basis = []
    pivot_set = set(pivots)
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i][free]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence[ScalarLike]], rhs: Sequence[ScalarLike], ncols: Optional[int] = None) -> Optional[Tuple[Vector, List[Vector]]]:
    """One solution of rows . x = rhs plus a kernel basis, or None if inconsistent."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if len(rhs) != len(rows):
        raise DimensionError(f"right-hand side of length {len(rhs)} for {len(rows)} equations")
    augmented = [[to_scalar(c) for c in row] + [to_scalar(b)] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = reduced[i][ncols]
    return x, kernel(rows, ncols)


def transpose(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*rows)]


def solve_combination(generators: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> Optional[Vector]:
    """Coefficients c with sum_i c_i generators[i] = target, or None."""
    if not generators:
        return [] if all(t == 0 for t in target) else None
    result = solve(transpose(generators), target, len(generators))
    return None if result is None else result[0]


@dataclass(frozen=True)
class LinearSubspace:
    """Span of vectors, stored as a reduced echelon basis."""
    length: int
    basis: Tuple[Tuple[Fraction, ...], ...]
    pivots: Tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[ScalarLike]], length: int) -> "LinearSubspace":
        reduced, pivots = rref(list(vectors), length)
        return cls(length, tuple(tuple(r) for r in reduced), pivots)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        """Projective dimension."""
        return len(self.basis) - 1

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        return [to_scalar(v[p]) for p in self.pivots]

    def contains(self, v: Sequence[ScalarLike]) -> bool:
        if len(v) != self.length:
            raise DimensionError(f"vector of length {len(v)} tested against a subspace of K^{self.length}")
        residual = [to_scalar(c) for c in v]
        for row, p in zip(self.basis, self.pivots):
            c = residual[p]
            if c:
                residual = [r - c * b for r, b in zip(residual, row)]
        return not any(residual)

    def contains_subspace(self, other: "LinearSubspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "LinearSubspace") -> "LinearSubspace":
        return LinearSubspace.span(list(self.basis) + list(other.basis), self.length)

    def intersect(self, other: "LinearSubspace") -> "LinearSubspace":
        if self.length != other.length:
            raise DimensionError("subspaces of different ambient spaces")
        if not self.basis or not other.basis:
            return LinearSubspace(self.length, (), ())
        # a . self_basis - b . other_basis = 0
        columns = [list(v) for v in self.basis] + [[-c for c in v] for v in other.basis]
        vectors = []
        for k in kernel(transpose(columns), len(columns)):
            a = k[: len(self.basis)]
            vectors.append([sum((ai * row[j] for ai, row in zip(a, self.basis)), Fraction(0)) for j in range(self.length)])
        return LinearSubspace.span(vectors, self.length)


def span_membership(v: Sequence[ScalarLike], subspace: LinearSubspace) -> bool:
    return subspace.contains(v)


def h1_defect(span: LinearSubspace, deg_E: int) -> int:
    """deg(E) - 1 - dim<nu_d(E)>."""
    return deg_E - 1 - span.dim


# ---------- TEXT FORMAT ----------
def parse_form(text: str, num_vars: Optional[int] = None) -> HomogeneousForm:
    """Parse 'c*x0^a*x1^b + ...' into a HomogeneousForm."""
    if not text or not text.strip():
        raise ParseError("empty polynomial text")
    try:
        expr = parse_expr(text.strip(), transformations=PARSE_TRANSFORMATIONS, evaluate=True)
    except (SyntaxError, TypeError, ValueError, sp.SympifyError, TokenError) as e:
        raise ParseError(f"cannot parse polynomial {text!r}: {e}") from e
    indices = []
    for sym in expr.free_symbols:
        match = VARIABLE_PATTERN.match(str(sym))
        if not match:
            raise ParseError(f"unknown symbol {sym} (variables must be x0, x1, ...)")
        indices.append(int(match.group(1)))
    inferred = max(indices) + 1 if indices else 1
    n = num_vars if num_vars is not None else inferred
    if n < inferred:
        raise ParseError(f"polynomial uses x{inferred - 1} but only {n} variables were declared")
    gens = [sp.Symbol(f"x{i}") for i in range(n)]
    try:
        poly = sp.Poly(expr, *gens, domain=QQ)
    except (BasePolynomialError, ValueError) as e:
        raise ParseError(f"not a polynomial over QQ: {text!r}") from e
    terms = poly.terms()
    if not terms or poly.is_zero:
        raise ParseError("the zero polynomial has no degree")
    degrees = {sum(m) for m, _ in terms}
    if len(degrees) != 1:
        raise ParseError(f"inhomogeneous polynomial (degrees {sorted(degrees)})")
    return HomogeneousForm(n, degrees.pop(), {m: to_scalar(c) for m, c in terms})


def format_form(F: HomogeneousForm) -> str:
    """Inverse of parse_form; terms in graded-lex order."""
    if F.is_zero():
        return "0"
    pieces = []
    for exp in monomials(F.num_vars, F.degree):
        c = F.coeffs.get(exp)
        if c is None:
            continue
        mono = "*".join(f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exp) if e)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text
