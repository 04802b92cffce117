"""
schemes.py
- Degree-4 zero-dimensional schemes built from jets, square pencils and fat points
- Scheme JSON (pydantic models) load/dump
- Span of the Veronese image and of every one-step truncation
- Gorenstein gate and the (L1^2, L2^2) normalizer for square pencils
- Line intersection profile with residuals; pencil of conics through a planar scheme
"""
import json
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Literal, Optional, Sequence, Tuple, Union

import sympy as sp
from pydantic import BaseModel
from sympy import QQ

from errors import DegreeError, ParseError, SchemeError
from poly_core import (
    HomogeneousForm,
    LinearSubspace,
    ProjectivePoint,
    Vector,
    catalecticant,
    expand_power,
    kernel,
    linear_form,
    monomials,
    rank,
    scalar_text,
    solve_combination,
    to_scalar,
)
from sylvester import BinaryForm, explicit_roots_if_rational

logger = logging.getLogger(__name__)

Vec = Tuple[Fraction, ...]

# ---------- CONFIG ----------
MIN_SPAN_DEGREE = 3
LOCAL_X, LOCAL_Y = sp.symbols("x y")
PENCIL_LAMBDA, PENCIL_MU = sp.symbols("lam mu")
# ---------------------------


def _vec(values: Sequence) -> Vec:
    return tuple(to_scalar(v) for v in values)


def _rational(c: Fraction) -> sp.Rational:
    return sp.Rational(c.numerator, c.denominator)


# ---------- COMPONENTS ----------
@dataclass(frozen=True)
class JetComponent:
    """Curvilinear germ gamma(t) = p + t v1 + t^2 v2 + ... mod t^k."""
    support: Vec
    jets: Tuple[Vec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "support", _vec(self.support))
        object.__setattr__(self, "jets", tuple(_vec(v) for v in self.jets))

    @property
    def degree(self) -> int:
        return 1 + len(self.jets)

    @property
    def vectors(self) -> Tuple[Vec, ...]:
        return (self.support,) + self.jets

    def truncated(self, length: int) -> "JetComponent":
        return JetComponent(self.support, self.jets[: length - 1])


@dataclass(frozen=True)
class SquarePencilComponent:
    """Local ideal (Q1, Q2) + (x, y)^3 at p, chart p + x w1 + y w2; Q = a x^2 + b xy + c y^2."""
    support: Vec
    w1: Vec
    w2: Vec
    q1: Vec
    q2: Vec

    def __post_init__(self):
        for name in ("support", "w1", "w2", "q1", "q2"):
            object.__setattr__(self, name, _vec(getattr(self, name)))

    @property
    def degree(self) -> int:
        return 4

    @property
    def vectors(self) -> Tuple[Vec, ...]:
        return (self.support, self.w1, self.w2)

    @property
    def is_gorenstein(self) -> bool:
        return common_factor(self.q1, self.q2) is None

    def direction(self, a: Fraction, b: Fraction) -> Vec:
        return tuple(a * u + b * v for u, v in zip(self.w1, self.w2))


@dataclass(frozen=True)
class FatPointComponent:
    """First infinitesimal neighbourhood of p inside span(p, directions)."""
    support: Vec
    directions: Tuple[Vec, ...]

    def __post_init__(self):
        object.__setattr__(self, "support", _vec(self.support))
        object.__setattr__(self, "directions", tuple(_vec(v) for v in self.directions))

    @property
    def degree(self) -> int:
        return 1 + len(self.directions)

    @property
    def vectors(self) -> Tuple[Vec, ...]:
        return (self.support,) + self.directions


Component = Union[JetComponent, SquarePencilComponent, FatPointComponent]


@dataclass(frozen=True)
class Degree4Scheme:
    ambient_dim: int
    components: Tuple[Component, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        validate_scheme(self)

    @property
    def num_vars(self) -> int:
        return self.ambient_dim + 1

    @property
    def supports(self) -> List[ProjectivePoint]:
        return [ProjectivePoint(c.support) for c in self.components]

    @property
    def is_reduced(self) -> bool:
        return all(isinstance(c, JetComponent) and c.degree == 1 for c in self.components)

    @property
    def support_size(self) -> int:
        return len(self.components)

    def of_type(self, kind: type) -> List[Component]:
        return [c for c in self.components if isinstance(c, kind)]


def validate_scheme(A: Degree4Scheme):
    n = A.num_vars
    if A.ambient_dim < 1:
        raise SchemeError(f"ambient dimension must be >= 1, got {A.ambient_dim}")
    if not A.components:
        raise SchemeError("a scheme needs at least one component")
    total = sum(c.degree for c in A.components)
    if total != 4:
        raise SchemeError(f"scheme has degree {total}, expected 4")
    for i, c in enumerate(A.components):
        if any(len(v) != n for v in c.vectors):
            raise SchemeError(f"component {i}: vectors must have {n} coordinates")
        if not any(c.support):
            raise SchemeError(f"component {i}: zero support vector")
        if isinstance(c, JetComponent):
            if c.degree > 4:
                raise SchemeError(f"component {i}: jets have length at most 4")
            if c.jets and rank([c.support, c.jets[0]], n) != 2:
                raise SchemeError(f"component {i}: first jet vector is proportional to the support")
        elif isinstance(c, SquarePencilComponent):
            if rank([c.support, c.w1, c.w2], n) != 3:
                raise SchemeError(f"component {i}: support, w1, w2 must be independent")
            if rank([c.q1, c.q2], 3) != 2:
                raise SchemeError(f"component {i}: Q1 and Q2 must be independent quadrics")
        elif isinstance(c, FatPointComponent):
            if len(c.directions) < 2 or rank(list(c.vectors), n) != c.degree:
                raise SchemeError(f"component {i}: fat point needs >= 2 independent directions")
        else:
            raise SchemeError(f"component {i}: unknown component type {type(c).__name__}")
    supports = A.supports
    if len(set(supports)) != len(supports):
        raise SchemeError("component supports must be pairwise distinct")


def map_scheme(A: Degree4Scheme, matrix: Sequence[Sequence[Fraction]]) -> Degree4Scheme:
    """Image of A under v -> matrix . v (a change of coordinates or an embedding)."""
    M = [[to_scalar(c) for c in row] for row in matrix]

    def image(v: Vec) -> Vec:
        return tuple(sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in M)

    comps = []
    for c in A.components:
        if isinstance(c, JetComponent):
            comps.append(JetComponent(image(c.support), tuple(image(v) for v in c.jets)))
        elif isinstance(c, SquarePencilComponent):
            comps.append(SquarePencilComponent(image(c.support), image(c.w1), image(c.w2), c.q1, c.q2))
        else:
            comps.append(FatPointComponent(image(c.support), tuple(image(v) for v in c.directions)))
    return Degree4Scheme(len(M) - 1, tuple(comps))


# ---------- AMBIENT SPAN ----------
def span_basis(A: Degree4Scheme) -> LinearSubspace:
    """<A> as a row-reduced subspace of K^(m+1)."""
    return LinearSubspace.span([v for c in A.components for v in c.vectors], A.num_vars)


def restrict_to_span(A: Degree4Scheme) -> Tuple[Degree4Scheme, List[Vector]]:
    """A rewritten in pivot coordinates of <A>, plus the basis rows embedding it back."""
    W = span_basis(A)
    if W.rank < 2:
        raise SchemeError("a degree-4 scheme cannot span a single point")
    comps = []
    for c in A.components:
        if isinstance(c, JetComponent):
            comps.append(JetComponent(tuple(W.coordinates(c.support)), tuple(tuple(W.coordinates(v)) for v in c.jets)))
        elif isinstance(c, SquarePencilComponent):
            comps.append(SquarePencilComponent(
                tuple(W.coordinates(c.support)), tuple(W.coordinates(c.w1)), tuple(W.coordinates(c.w2)), c.q1, c.q2
            ))
        else:
            comps.append(FatPointComponent(tuple(W.coordinates(c.support)), tuple(tuple(W.coordinates(v)) for v in c.directions)))
    return Degree4Scheme(W.dim, tuple(comps)), [list(row) for row in W.basis]


# ---------- SQUARE PENCILS ----------
def _local_quadric(q: Vec) -> sp.Poly:
    terms = {(2, 0): q[0], (1, 1): q[1], (0, 2): q[2]}
    return sp.Poly.from_dict({k: _rational(v) for k, v in terms.items() if v}, LOCAL_X, LOCAL_Y, domain=QQ)


def common_factor(q1: Vec, q2: Vec) -> Optional[Vec]:
    """Coefficients (a, b) of a common linear factor a x + b y of Q1, Q2, if any."""
    g = _local_quadric(q1).gcd(_local_quadric(q2))
    if g.total_degree() != 1:
        return None
    a, b = to_scalar(g.coeff_monomial(LOCAL_X)), to_scalar(g.coeff_monomial(LOCAL_Y))
    scale = a if a != 0 else b
    return (a / scale, b / scale)


def dual_quadric(q1: Vec, q2: Vec) -> Vec:
    """(a, b, c) with a X^2 + b XY + c Y^2 annihilated by Q1 and Q2."""
    rows = [[2 * q[0], q[1], 2 * q[2]] for q in (q1, q2)]
    basis = kernel(rows, 3)
    if len(basis) != 1:
        raise SchemeError("Q1 and Q2 must span a pencil of quadrics")
    return tuple(basis[0])


def normalize_square_pencil(c: SquarePencilComponent) -> Optional[SquarePencilComponent]:
    """Rewrite the chart so the ideal is (x^2, y^2); None if the squares are not rational."""
    if not c.is_gorenstein:
        return None
    (a1, b1, c1), (a2, b2, c2) = c.q1, c.q2
    disc = BinaryForm((b1 * b1 - 4 * a1 * c1, 2 * b1 * b2 - 4 * (a1 * c2 + a2 * c1), b2 * b2 - 4 * a2 * c2))
    if disc.is_zero():
        return None
    roots = explicit_roots_if_rational(disc)
    if roots is None or len(roots) != 2:
        return None
    lines = []
    for lam, mu in (r.coords for r in roots):
        A_, B_, C_ = (lam * x + mu * y for x, y in zip(c.q1, c.q2))
        lines.append((Fraction(1), B_ / (2 * A_)) if A_ != 0 else (Fraction(0), Fraction(1)))
    (l11, l12), (l21, l22) = lines
    det = l11 * l22 - l12 * l21
    w1 = tuple((l22 * u - l21 * v) / det for u, v in zip(c.w1, c.w2))
    w2 = tuple((-l12 * u + l11 * v) / det for u, v in zip(c.w1, c.w2))
    return SquarePencilComponent(c.support, w1, w2, (1, 0, 0), (0, 0, 1))


# ---------- GATE ----------
class GateVerdict(str, Enum):
    ACCEPT = "accept"
    REJECT_NOT_GORENSTEIN = "reject_not_gorenstein"
    REJECT_FAT_POINT = "reject_fat_point"
    REJECT_PLANAR_FAT_POINT = "reject_planar_fat_point"


def gorenstein_gate(A: Degree4Scheme) -> GateVerdict:
    fats = A.of_type(FatPointComponent)
    if any(f.degree >= 4 for f in fats):
        return GateVerdict.REJECT_FAT_POINT
    if fats:
        return GateVerdict.REJECT_PLANAR_FAT_POINT
    if any(not p.is_gorenstein for p in A.of_type(SquarePencilComponent)):
        return GateVerdict.REJECT_NOT_GORENSTEIN
    return GateVerdict.ACCEPT


# ---------- VERONESE SPANS ----------
def component_generators(c: Component, d: int) -> List[Vector]:
    lp = linear_form(c.support)
    if isinstance(c, JetComponent):
        lams = [lp] + [linear_form(v) for v in c.jets]
        return [f.to_vector() for f in expand_power(lams, d, order=c.degree)]
    if isinstance(c, SquarePencilComponent):
        l1, l2 = linear_form(c.w1), linear_form(c.w2)
        a, b, cc = dual_quadric(c.q1, c.q2)
        quad = (l1 * l1).scale(a) + (l1 * l2).scale(b) + (l2 * l2).scale(cc)
        return [(lp ** d).to_vector(), (lp ** (d - 1) * l1).to_vector(), (lp ** (d - 1) * l2).to_vector(),
                (lp ** (d - 2) * quad).to_vector()]
    return [(lp ** d).to_vector()] + [(lp ** (d - 1) * linear_form(w)).to_vector() for w in c.directions]


@dataclass(frozen=True)
class SpanData:
    degree: int
    span: LinearSubspace
    generators: Tuple[Tuple[Vec, ...], ...]
    truncations: Tuple[Tuple[str, LinearSubspace], ...]

    @property
    def flat_generators(self) -> List[Vec]:
        return [g for gens in self.generators for g in gens]


def scheme_span(A: Degree4Scheme, d: int) -> SpanData:
    """<nu_d(A)> with per-component generators and the spans of one-step truncations."""
    if d < MIN_SPAN_DEGREE:
        raise DegreeError(f"spans of degree-4 schemes need d >= {MIN_SPAN_DEGREE}, got {d}")
    length = len(monomials(A.num_vars, d))
    generators = tuple(tuple(tuple(g) for g in component_generators(c, d)) for c in A.components)
    flat = [g for gens in generators for g in gens]
    span = LinearSubspace.span(flat, length)

    truncations = []
    offset = 0
    for i, (c, gens) in enumerate(zip(A.components, generators)):
        if isinstance(c, FatPointComponent):
            dropped = [(offset + 1 + j, f"component {i}: drop direction {j}") for j in range(len(c.directions))]
        elif isinstance(c, SquarePencilComponent):
            dropped = [(offset + 3, f"component {i}: square pencil -> planar fat point")]
        elif c.degree == 1:
            dropped = [(offset, f"component {i}: drop point")]
        else:
            dropped = [(offset + c.degree - 1, f"component {i}: jet of length {c.degree} -> {c.degree - 1}")]
        for index, label in dropped:
            truncations.append((label, LinearSubspace.span([g for k, g in enumerate(flat) if k != index], length)))
        offset += len(gens)
    return SpanData(d, span, generators, tuple(truncations))


# ---------- LINES ----------
@dataclass(frozen=True)
class LineIncidence:
    line: LinearSubspace
    degree: int
    component_degrees: Tuple[int, ...]
    residual: Tuple[Component, ...]
    residual_on_line: bool

    @property
    def points(self) -> Tuple[ProjectivePoint, ProjectivePoint]:
        return ProjectivePoint(self.line.basis[0]), ProjectivePoint(self.line.basis[1])


@dataclass(frozen=True)
class LineProfile:
    max_line_degree: int
    witness: Optional[LineIncidence]
    incidences: Tuple[LineIncidence, ...]

    @property
    def witness_line(self) -> Optional[Tuple[ProjectivePoint, ProjectivePoint]]:
        return self.witness.points if self.witness else None

    @property
    def residual(self) -> Tuple[Component, ...]:
        return self.witness.residual if self.witness else ()

    @property
    def residual_on_line(self) -> bool:
        return self.witness.residual_on_line if self.witness else False


def _plane_direction(c: SquarePencilComponent, W: LinearSubspace) -> Optional[Tuple[Fraction, Fraction]]:
    """Local direction (a, b) of a line through p, or None if it leaves the tangent plane."""
    for u in W.basis:
        coeffs = solve_combination([c.support, c.w1, c.w2], list(u))
        if coeffs is None:
            return None
        if coeffs[1] or coeffs[2]:
            return coeffs[1], coeffs[2]
    return None


def _quadric_at(q: Vec, a: Fraction, b: Fraction) -> Fraction:
    return q[0] * a * a + q[1] * a * b + q[2] * b * b


def _component_line_degree(c: Component, W: LinearSubspace) -> int:
    if not W.contains(c.support):
        return 0
    if isinstance(c, JetComponent):
        e = 1
        for v in c.jets:
            if not W.contains(v):
                break
            e += 1
        return e
    if isinstance(c, SquarePencilComponent):
        direction = _plane_direction(c, W)
        if direction is None:
            return 1
        a, b = direction
        return 3 if _quadric_at(c.q1, a, b) == 0 and _quadric_at(c.q2, a, b) == 0 else 2
    span = LinearSubspace.span(list(c.vectors), W.length)
    return 2 if span.contains_subspace(W) else 1


def _component_residual(c: Component, W: LinearSubspace, e: int) -> Optional[Component]:
    if e == 0:
        return c
    if e >= c.degree:
        return None
    if isinstance(c, JetComponent):
        return c.truncated(c.degree - e)
    if isinstance(c, SquarePencilComponent):
        if e == 3:
            return JetComponent(c.support)
        if e == 1:
            return FatPointComponent(c.support, (c.w1, c.w2))
        a, b = _plane_direction(c, W)
        # eta * (b x - a y) must lie in span(Q1, Q2)
        A_, B_, C_ = dual_quadric(c.q1, c.q2)
        e1, e2 = B_ * b - 2 * C_ * a, -(2 * A_ * b - B_ * a)
        return JetComponent(c.support, (c.direction(-e2, e1),))
    if e == 2:
        return JetComponent(c.support)
    outside = next(w for w in c.directions if not W.contains(w))
    return JetComponent(c.support, (outside,))


def _candidate_lines(A: Degree4Scheme) -> List[LinearSubspace]:
    n = A.num_vars
    lines: List[LinearSubspace] = []

    def add(u: Sequence[Fraction], v: Sequence[Fraction]):
        W = LinearSubspace.span([u, v], n)
        if W.rank == 2 and W not in lines:
            lines.append(W)

    comps = A.components
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            add(comps[i].support, comps[j].support)
    for c in comps:
        if isinstance(c, JetComponent) and c.jets:
            add(c.support, c.jets[0])
        elif isinstance(c, SquarePencilComponent):
            add(c.support, c.w1)
            add(c.support, c.w2)
            factor = common_factor(c.q1, c.q2)
            if factor is not None:
                add(c.support, c.direction(-factor[1], factor[0]))
        elif isinstance(c, FatPointComponent):
            for w in c.directions:
                add(c.support, w)
    return lines


def line_profile(A: Degree4Scheme) -> LineProfile:
    """Maximal deg(A cap L) over the finitely many lines that can meet A in degree >= 2."""
    incidences = []
    for W in _candidate_lines(A):
        degrees = tuple(_component_line_degree(c, W) for c in A.components)
        residual = tuple(r for c, e in zip(A.components, degrees) if (r := _component_residual(c, W, e)) is not None)
        on_line = all(W.contains(r.support) for r in residual)
        incidences.append(LineIncidence(W, sum(degrees), degrees, residual, on_line))
    if not incidences:
        return LineProfile(1, None, ())
    witness = max(incidences, key=lambda inc: (inc.degree, not inc.residual_on_line))
    return LineProfile(witness.degree, witness, tuple(incidences))


# ---------- CONICS ----------
def symmetric_matrix(conic: Sequence[Fraction]) -> List[List[Fraction]]:
    """Symmetric 3x3 matrix of a conic given by coefficients on monomials(3, 2)."""
    M = [[Fraction(0)] * 3 for _ in range(3)]
    for exp, c in zip(monomials(3, 2), conic):
        idx = [i for i, e in enumerate(exp) for _ in range(e)]
        i, j = idx
        if i == j:
            M[i][i] = to_scalar(c)
        else:
            M[i][j] = M[j][i] = to_scalar(c) / 2
    return M


def conic_value(conic: Sequence[Fraction], point: Sequence[Fraction]) -> Fraction:
    return HomogeneousForm.from_vector(3, 2, list(conic)).evaluate(point)


@dataclass(frozen=True)
class ConicPencil:
    pencil_dim: int
    members: Tuple[Vec, ...]
    discriminant: BinaryForm
    generic_member_smooth: bool
    singular_members: Tuple[ProjectivePoint, ...]

    def member(self, lam: Fraction, mu: Fraction) -> Vec:
        return tuple(lam * a + mu * b for a, b in zip(*self.members))


def _rational_roots_any(f: BinaryForm) -> List[ProjectivePoint]:
    if f.is_zero():
        return []
    points = []
    if f.coeffs[0] == 0:
        points.append(ProjectivePoint((1, 0)))
    g = sp.Poly.from_list([_rational(c) for c in f.coeffs], sp.Symbol("t"), domain=QQ)
    if g.degree() > 0:
        for factor, _ in g.factor_list()[1]:
            if factor.degree() == 1:
                a, b = (to_scalar(x) for x in factor.all_coeffs())
                points.append(ProjectivePoint((-b / a, 1)))
    return sorted(set(points), key=lambda p: p.coords)


def conic_pencil(A: Degree4Scheme) -> ConicPencil:
    """Conics through a planar scheme and the discriminant cubic of the pencil."""
    if span_basis(A).rank != 3:
        raise SchemeError("conic pencils are computed for planar schemes only")
    if A.ambient_dim != 2:
        A, _ = restrict_to_span(A)
    rows = []
    for c in A.components:
        for g in component_generators(c, 2):
            rows.append(catalecticant(HomogeneousForm.from_vector(3, 2, g), 2)[0])
    members = kernel(rows, 6)
    if len(members) != 2:
        raise SchemeError(f"expected a pencil of conics through A, found dimension {len(members)}")
    mats = [symmetric_matrix(m) for m in members]
    M = sp.Matrix(3, 3, lambda i, j: PENCIL_LAMBDA * _rational(mats[0][i][j]) + PENCIL_MU * _rational(mats[1][i][j]))
    det = sp.Poly(sp.expand(M.det()), PENCIL_LAMBDA, PENCIL_MU, domain=QQ)
    disc = BinaryForm(tuple(to_scalar(det.coeff_monomial(PENCIL_LAMBDA ** (3 - j) * PENCIL_MU ** j)) for j in range(4)))
    return ConicPencil(2, tuple(tuple(m) for m in members), disc, not disc.is_zero(), tuple(_rational_roots_any(disc)))


# ---------- JSON ----------
Coord = Union[int, str]


class ComponentModel(BaseModel):
    type: Literal["jet", "square_pencil", "fat_point"]
    support: List[Coord]
    jets: List[List[Coord]] = []
    w1: Optional[List[Coord]] = None
    w2: Optional[List[Coord]] = None
    q1: Optional[List[Coord]] = None
    q2: Optional[List[Coord]] = None
    directions: List[List[Coord]] = []


class SchemeModel(BaseModel):
    ambient_dim: int
    components: List[ComponentModel]


def scheme_from_model(model: SchemeModel) -> Degree4Scheme:
    comps: List[Component] = []
    for i, c in enumerate(model.components):
        if c.type == "jet":
            comps.append(JetComponent(c.support, tuple(c.jets)))
        elif c.type == "square_pencil":
            if None in (c.w1, c.w2, c.q1, c.q2) or len(c.q1) != 3 or len(c.q2) != 3:
                raise SchemeError(f"component {i}: square_pencil needs w1, w2 and three-term q1, q2")
            comps.append(SquarePencilComponent(c.support, c.w1, c.w2, c.q1, c.q2))
        else:
            comps.append(FatPointComponent(c.support, tuple(c.directions)))
    return Degree4Scheme(model.ambient_dim, tuple(comps))


def _texts(v: Sequence[Fraction]) -> List[str]:
    return [scalar_text(x) for x in v]


def scheme_to_model(A: Degree4Scheme) -> SchemeModel:
    comps = []
    for c in A.components:
        if isinstance(c, JetComponent):
            comps.append(ComponentModel(type="jet", support=_texts(c.support), jets=[_texts(v) for v in c.jets]))
        elif isinstance(c, SquarePencilComponent):
            comps.append(ComponentModel(type="square_pencil", support=_texts(c.support), w1=_texts(c.w1),
                                        w2=_texts(c.w2), q1=_texts(c.q1), q2=_texts(c.q2)))
        else:
            comps.append(ComponentModel(type="fat_point", support=_texts(c.support),
                                        directions=[_texts(v) for v in c.directions]))
    return SchemeModel(ambient_dim=A.ambient_dim, components=comps)


def scheme_from_json(text: str) -> Degree4Scheme:
    try:
        model = SchemeModel.model_validate_json(text)
    except ValueError as e:
        raise ParseError(f"invalid scheme JSON: {e}") from e
    return scheme_from_model(model)


def load_scheme(path: str) -> Degree4Scheme:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"cannot read scheme file {path}: {e}") from e
    logger.info(f"Loaded scheme from {path}")
    return scheme_from_json(text)


def scheme_to_json(A: Degree4Scheme) -> dict:
    return scheme_to_model(A).model_dump(exclude_defaults=True)


def dump_scheme(A: Degree4Scheme) -> str:
    return json.dumps(scheme_to_json(A), indent=2)
