"""
decompose.py
- Generic point sampler for <nu_d(A)> with exact certificates
- Constructive rank decompositions, one recipe per configuration
- Exact verification (membership, irredundancy) and a randomized minimality oracle
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel

from errors import DegreeError, DimensionError, RecipeError, SamplingError, SchemeError
from poly_core import (
    HomogeneousForm,
    ProjectivePoint,
    Vector,
    catalecticant,
    contract,
    falling,
    format_form,
    kernel,
    parse_form,
    rank,
    scalar_text,
    solve_combination,
    to_scalar,
    veronese,
)
from schemes import (
    Degree4Scheme,
    SquarePencilComponent,
    conic_pencil,
    conic_value,
    line_profile,
    restrict_to_span,
    scheme_span,
    span_basis,
    symmetric_matrix,
)
from stratify import StratumResult, classify_scheme
from sylvester import (
    BinaryForm,
    CarrierCurve,
    ImplicitPointSet,
    apolar_forms,
    binary_rank,
    explicit_roots_if_rational,
    is_squarefree,
)

logger = logging.getLogger(__name__)

# ---------- CONFIG ----------
DEFAULT_GRID = 5
SAMPLE_RETRIES = 50
GRID_GROWTH_EVERY = 10
RECIPE_RETRIES = 30
RANDOM_WEIGHTS = 6
ORACLE_TRIALS = 10_000
ORACLE_GRID = 20
DEFAULT_SEED = 0
ORIGIN = ProjectivePoint((1, 0))
# ---------------------------


# ---------- SAMPLING ----------
@dataclass(frozen=True)
class SampledPoint:
    form: HomogeneousForm
    coefficients: Tuple[Fraction, ...]
    certificates: Tuple[Tuple[str, bool], ...]
    catalecticant_order: Optional[int]
    catalecticant_rank: Optional[int]
    grid: int
    attempts: int


def certificate_order(span_dim: int, d: int) -> Optional[int]:
    """Flattening order whose rank certifies border rank >= 4, if one exists."""
    if span_dim >= 2 and d >= 4:
        return 2
    if span_dim == 1 and d >= 6:
        return 3
    return None


def _rng(rng: Optional[np.random.Generator], seed: Optional[int]) -> np.random.Generator:
    if rng is not None:
        return rng
    return np.random.default_rng(DEFAULT_SEED if seed is None else seed)


def sample_point(
    A: Degree4Scheme,
    d: int,
    rng: Optional[np.random.Generator] = None,
    seed: Optional[int] = None,
    grid: int = DEFAULT_GRID,
    retries: int = SAMPLE_RETRIES,
) -> SampledPoint:
    """A point of <nu_d(A)> outside the span of every one-step truncation of A."""
    rng = _rng(rng, seed)
    data = scheme_span(A, d)
    generators = data.flat_generators
    order = certificate_order(span_basis(A).dim, d)
    for attempt in range(1, retries + 1):
        if attempt > 1 and (attempt - 1) % GRID_GROWTH_EVERY == 0:
            grid *= 2
            logger.debug(f"sampler grid enlarged to {grid}")
        weights = [int(w) for w in rng.integers(-grid, grid + 1, size=len(generators))]
        if not any(weights):
            continue
        vector = [sum((w * g[k] for w, g in zip(weights, generators)), Fraction(0)) for k in range(data.span.length)]
        certificates = tuple((label, sub.contains(vector)) for label, sub in data.truncations)
        failed = [label for label, inside in certificates if inside]
        if failed:
            logger.debug(f"attempt {attempt}: sample lies in {failed[0]}")
            continue
        F = HomogeneousForm.from_vector(A.num_vars, d, vector)
        cat_rank = rank(catalecticant(F, order)) if order is not None else None
        if order is not None and cat_rank != 4:
            logger.debug(f"attempt {attempt}: catalecticant of order {order} has rank {cat_rank}")
            continue
        return SampledPoint(F, tuple(Fraction(w) for w in weights), certificates, order, cat_rank, grid, attempt)
    raise SamplingError(f"no certified generic point after {retries} draws (d={d}); the scheme may be degenerate")


# ---------- DECOMPOSITIONS ----------
@dataclass(frozen=True)
class ExplicitPart:
    point: ProjectivePoint
    coefficient: Optional[Fraction] = None


@dataclass(frozen=True)
class ImplicitBlock:
    """Points = roots of a squarefree binary form on a carrier; form = their share of F."""
    points: ImplicitPointSet
    form: HomogeneousForm

    @property
    def size(self) -> int:
        return self.points.size


@dataclass(frozen=True)
class Decomposition:
    degree: int
    recipe: str
    parts: Tuple[ExplicitPart, ...]
    blocks: Tuple[ImplicitBlock, ...] = ()

    @property
    def total_size(self) -> int:
        return len(self.parts) + sum(b.size for b in self.blocks)


class _Retry(Exception):
    """A genericity-dependent step failed for this draw."""

    def __init__(self, step: str):
        super().__init__(step)
        self.step = step


@dataclass
class RecipeContext:
    scheme: Degree4Scheme
    form: HomogeneousForm
    degree: int
    rank: int
    rng: np.random.Generator
    grid: int = DEFAULT_GRID

    def random_vector(self, n: int) -> Vector:
        while True:
            v = [Fraction(int(x)) for x in self.rng.integers(-self.grid, self.grid + 1, size=n)]
            if any(v):
                return v

    def certified_rank(self, g: BinaryForm, avoid: Sequence[ProjectivePoint] = ()):
        try:
            return binary_rank(g, self.rng, avoid)
        except DegreeError as e:
            raise _Retry(f"sylvester: {e}") from e


RecipeOutput = Tuple[List[Vector], List[ImplicitPointSet]]


def restrict_form(F: HomogeneousForm, pivots: Sequence[int]) -> HomogeneousForm:
    """F(E y) where E puts y_j at coordinate pivots[j] and zeros elsewhere."""
    out = {}
    for exp, c in F.coeffs.items():
        if all(e == 0 for i, e in enumerate(exp) if i not in pivots):
            out[tuple(exp[p] for p in pivots)] = c
    return HomogeneousForm(len(pivots), F.degree, out)


def _split(F: HomogeneousForm, anchors: Sequence[Vector], carriers: Sequence[CarrierCurve],
           skip_first: Sequence[int] = ()) -> Tuple[Vector, List[BinaryForm]]:
    """F = sum a_i nu(anchor_i) + sum_c pushforward(g_c); returns (a, [g_c])."""
    d = F.degree
    generators = [veronese(a, d) for a in anchors]
    layout = []
    for i, carrier in enumerate(carriers):
        basis = list(carrier.span_basis(d))
        start = 1 if i in skip_first else 0
        layout.append((start, len(basis)))
        generators.extend(basis[start:])
    coeffs = solve_combination(generators, F.to_vector())
    if coeffs is None:
        raise _Retry("split the form over the carriers")
    anchor_coeffs = coeffs[: len(anchors)]
    offset = len(anchors)
    binaries = []
    for carrier, (start, size) in zip(carriers, layout):
        N = d * carrier.param_degree
        c = [Fraction(0)] * start + coeffs[offset: offset + size - start]
        offset += size - start
        binaries.append(BinaryForm(tuple(ck * comb(N, k) for k, ck in enumerate(c))))
    return anchor_coeffs, binaries


def _line_through(ctx: RecipeContext, base: Sequence[Fraction], avoid_lines: Sequence[Sequence[Vector]]) -> Vector:
    """Random second point of a line through base inside <A>, away from the given lines."""
    n = ctx.scheme.num_vars
    for _ in range(RECIPE_RETRIES):
        u = ctx.random_vector(n)
        if rank([base, u], n) != 2:
            continue
        if any(rank([base, u] + list(line), n) == 2 for line in avoid_lines):
            continue
        return u
    raise _Retry("choose a random line through the common point")


# ---------- RECIPES ----------
def _recipe_points(ctx: RecipeContext) -> RecipeOutput:
    return [list(c.support) for c in ctx.scheme.components], []


def _recipe_line(ctx: RecipeContext) -> RecipeOutput:
    carrier = CarrierCurve.line([1, 0], [0, 1])
    g = carrier.pullback(ctx.form)
    cert = ctx.certified_rank(g)
    return [], [ImplicitPointSet(cert.witness, carrier)]


def _recipe_residual_off_line(ctx: RecipeContext) -> RecipeOutput:
    profile = line_profile(ctx.scheme)
    outside = profile.residual[0].support
    u, v = profile.witness.line.basis
    carrier = CarrierCurve.line(u, v)
    _, (g,) = _split(ctx.form, [list(outside)], [carrier])
    cert = ctx.certified_rank(g)
    return [list(outside)], [ImplicitPointSet(cert.witness, carrier)]


def _special_weights(g: BinaryForm, sign: int) -> List[Fraction]:
    """Weights t at which g + sign * t * s^D gains an apolar form with h(1,0) != 0 in low degree."""
    D = g.degree
    weights = []
    for r in range(1, D + 1):
        cat = catalecticant(g.to_form(), r)
        column = [Fraction(sign * falling(D, r)) if i == 0 else Fraction(0) for i in range(len(cat))]
        augmented = [row + [column[i]] for i, row in enumerate(cat)]
        for k in kernel(augmented, r + 2):
            if k[0] != 0:
                t = k[-1] / k[0]
                if t not in weights:
                    weights.append(t)
    return weights


def _shift(g: BinaryForm, t: Fraction) -> BinaryForm:
    return BinaryForm((g.coeffs[0] + t,) + g.coeffs[1:])


def _two_line_split(ctx: RecipeContext, origin: Vector, first: Vector, second: Vector) -> RecipeOutput:
    """A inside L1 u L2 with L1 cap L2 = {O}: F = G1 + G2, unique up to t nu_d(O)."""
    c1, c2 = CarrierCurve.line(origin, first), CarrierCurve.line(origin, second)
    _, (g1, g2) = _split(ctx.form, [], [c1, c2], skip_first=(1,))
    draws = [Fraction(0)] + [Fraction(int(x)) for x in ctx.rng.integers(-ctx.grid, ctx.grid + 1, size=RANDOM_WEIGHTS)]
    candidates = draws + [t for t in _special_weights(g1, -1) + _special_weights(g2, 1) if t not in draws]
    for t in candidates:
        h1, h2 = _shift(g1, -t), _shift(g2, t)
        if h1.is_zero() or h2.is_zero():
            continue
        try:
            cert1 = ctx.certified_rank(h1, [ORIGIN])
            cert2 = ctx.certified_rank(h2, [ORIGIN])
        except _Retry:
            continue
        if cert1.rank + cert2.rank != ctx.rank:
            logger.debug(f"two-line split at t={t}: ranks {cert1.rank} + {cert2.rank}")
            continue
        if cert1.witness.evaluate(1, 0) == 0 or cert2.witness.evaluate(1, 0) == 0:
            continue
        logger.debug(f"two-line split at t={t}: ranks {cert1.rank} + {cert2.rank}")
        return [], [ImplicitPointSet(cert1.witness, c1), ImplicitPointSet(cert2.witness, c2)]
    raise _Retry("find a free weight splitting the rank over the two lines")


def _recipe_tangent_jet(ctx: RecipeContext) -> RecipeOutput:
    """Single curvilinear 4-jet with a degree-3 line: its line plus a random line through the support."""
    profile = line_profile(ctx.scheme)
    origin = list(ctx.scheme.components[0].support)
    u, v = profile.witness.line.basis
    first = list(v) if rank([origin, u], len(origin)) == 1 else list(u)
    second = _line_through(ctx, origin, [[first]])
    return _two_line_split(ctx, origin, first, second)


def _recipe_two_jets_on_line(ctx: RecipeContext) -> RecipeOutput:
    """Two 2-jets, one tangent to the line R through both supports."""
    profile = line_profile(ctx.scheme)
    R = profile.witness.line
    jet_o = next(c for c in ctx.scheme.components if not R.contains(c.jets[0]))
    other = next(c for c in ctx.scheme.components if c is not jet_o)
    origin = list(jet_o.support)
    tangent = list(jet_o.jets[0])
    second = _line_through(ctx, origin, [[tangent], [list(other.support)]])
    return _two_line_split(ctx, origin, list(other.support), second)


def _rational_line_pair(ctx: RecipeContext, c: SquarePencilComponent) -> Tuple[Vector, Vector]:
    """Directions of two rational lines whose union contains the square pencil."""
    for _ in range(RECIPE_RETRIES):
        lam, mu = (Fraction(int(x)) for x in ctx.rng.integers(-ctx.grid, ctx.grid + 1, size=2))
        if lam == 0 and mu == 0:
            continue
        q = BinaryForm(tuple(lam * a + mu * b for a, b in zip(c.q1, c.q2)))
        roots = explicit_roots_if_rational(q)
        if roots is None or len(roots) != 2:
            continue
        return tuple(list(c.direction(*r.coords)) for r in roots)
    raise _Retry("find a pencil member splitting into rational lines")


def _recipe_square_pencil(ctx: RecipeContext) -> RecipeOutput:
    c = next(comp for comp in ctx.scheme.components if isinstance(comp, SquarePencilComponent))
    first, second = _rational_line_pair(ctx, c)
    return _two_line_split(ctx, list(c.support), first, second)


def _recipe_jet_two_points(ctx: RecipeContext) -> RecipeOutput:
    jet = next(c for c in ctx.scheme.components if c.degree == 2)
    points = [list(c.support) for c in ctx.scheme.components if c is not jet]
    carrier = CarrierCurve.line(jet.support, jet.jets[0])
    _, (g,) = _split(ctx.form, points, [carrier])
    cert = ctx.certified_rank(g)
    return points, [ImplicitPointSet(cert.witness, carrier)]


def _det3(M: Sequence[Sequence[Fraction]]) -> Fraction:
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


def _recipe_smooth_conic(ctx: RecipeContext) -> RecipeOutput:
    pencil = conic_pencil(ctx.scheme)
    base = list(ctx.scheme.components[0].support)
    for _ in range(RECIPE_RETRIES):
        lam, mu = ctx.random_vector(2)
        M = symmetric_matrix(pencil.member(lam, mu))
        if _det3(M) == 0:
            continue
        carrier = CarrierCurve.conic(M, base)
        g = carrier.pullback(ctx.form)
        if g is None:
            raise _Retry("pull the form back to the conic")
        cert = ctx.certified_rank(g)
        return [], [ImplicitPointSet(cert.witness, carrier)]
    raise _Retry("choose a smooth conic through the scheme")


def _recipe_skew_jets(ctx: RecipeContext) -> RecipeOutput:
    carriers = [CarrierCurve.line(c.support, c.jets[0]) for c in ctx.scheme.components]
    _, binaries = _split(ctx.form, [], carriers)
    blocks = []
    for carrier, g in zip(carriers, binaries):
        blocks.append(ImplicitPointSet(ctx.certified_rank(g).witness, carrier))
    return [], blocks


def _recipe_twisted_cubic(ctx: RecipeContext) -> RecipeOutput:
    jet = ctx.scheme.components[0]
    carrier = CarrierCurve.from_vectors(jet.vectors, "twisted_cubic")
    g = carrier.pullback(ctx.form)
    if g is None:
        raise _Retry("pull the form back to the twisted cubic")
    return [], [ImplicitPointSet(ctx.certified_rank(g).witness, carrier)]


def _recipe_point_and_plane_jet(ctx: RecipeContext) -> RecipeOutput:
    jet = next(c for c in ctx.scheme.components if c.degree == 3)
    point = next(list(c.support) for c in ctx.scheme.components if c is not jet)
    carrier = CarrierCurve.from_vectors(jet.vectors, "conic")
    _, (g,) = _split(ctx.form, [point], [carrier])
    return [point], [ImplicitPointSet(ctx.certified_rank(g).witness, carrier)]


def _recipe_plane_cubic(ctx: RecipeContext) -> RecipeOutput:
    """Plane cubics of border rank 4: a smooth apolar conic through a random point carries 4 points."""
    apolar = kernel(catalecticant(ctx.form, 2), 6)
    R = ctx.random_vector(3)
    values = [[conic_value(k, R) for k in apolar]]
    through = kernel(values, len(apolar))
    if not through:
        raise _Retry("find apolar conics through the random point")
    weights = ctx.random_vector(len(through))
    conic = [sum((w * t[i] for w, t in zip(weights, through)), Fraction(0)) for i in range(len(apolar))]
    kappa = [sum((c * k[j] for c, k in zip(conic, apolar)), Fraction(0)) for j in range(6)]
    M = symmetric_matrix(kappa)
    if _det3(M) == 0:
        raise _Retry("draw a smooth apolar conic")
    carrier = CarrierCurve.conic(M, R)
    g = carrier.pullback(ctx.form)
    if g is None:
        raise _Retry("pull the cubic back to the apolar conic")
    cert = ctx.certified_rank(g)
    if cert.rank != 4:
        raise _Retry("find a rank-4 sextic on the conic")
    return [], [ImplicitPointSet(cert.witness, carrier)]


RECIPES: Dict[str, Callable[[RecipeContext], RecipeOutput]] = {
    "R0": _recipe_points,
    "R1": _recipe_line,
    "R2": _recipe_residual_off_line,
    "R3": _recipe_tangent_jet,
    "R4": _recipe_two_jets_on_line,
    "R5": _recipe_jet_two_points,
    "R6": _recipe_smooth_conic,
    "R7": _recipe_square_pencil,
    "R8": _recipe_skew_jets,
    "R9": _recipe_twisted_cubic,
    "R10": _recipe_point_and_plane_jet,
    "R11": _recipe_plane_cubic,
}


# ---------- ASSEMBLY ----------
def _block_vectors(block: ImplicitPointSet, d: int) -> List[Vector]:
    N = d * block.carrier.param_degree
    return [block.carrier.pushforward(a, d).to_vector() for a in apolar_forms(block.witness, N)]


def _assemble(F: HomogeneousForm, recipe: str, output: RecipeOutput, basis: Sequence[Sequence[Fraction]]) -> Decomposition:
    d = F.degree
    width = len(basis[0])

    def embed(q: Sequence[Fraction]) -> Vector:
        return [sum((q[j] * basis[j][i] for j in range(len(basis))), Fraction(0)) for i in range(width)]

    points = [ProjectivePoint(tuple(embed(q))) for q in output[0]]
    blocks = []
    for block in output[1]:
        placed = ImplicitPointSet(block.witness, block.carrier.embedded(basis))
        roots = placed.explicit_points()
        if roots is None:
            blocks.append(placed)
        else:
            points.extend(roots)
    if len(set(points)) != len(points):
        raise _Retry("assemble distinct points")

    generators = [veronese(p, d) for p in points]
    spans = [_block_vectors(b, d) for b in blocks]
    for vectors in spans:
        generators.extend(vectors)
    coeffs = solve_combination(generators, F.to_vector())
    if coeffs is None:
        raise _Retry("solve for the coefficients")

    parts = tuple(ExplicitPart(p, c) for p, c in zip(points, coeffs))
    placed_blocks = []
    offset = len(points)
    for block, vectors in zip(blocks, spans):
        share = coeffs[offset: offset + len(vectors)]
        offset += len(vectors)
        vec = [sum((c * v[k] for c, v in zip(share, vectors)), Fraction(0)) for k in range(len(F.to_vector()))]
        placed_blocks.append(ImplicitBlock(block, HomogeneousForm.from_vector(F.num_vars, d, vec)))
    return Decomposition(d, recipe, parts, tuple(placed_blocks))


def decompose(
    point: Union[SampledPoint, HomogeneousForm],
    A: Degree4Scheme,
    d: int,
    recipe_id: Optional[str] = None,
    rng: Optional[np.random.Generator] = None,
    seed: Optional[int] = None,
    retries: int = RECIPE_RETRIES,
    classification: Optional[StratumResult] = None,
) -> Decomposition:
    """Explicit decomposition of F in <nu_d(A)> of exactly the classified rank, verified."""
    F = point.form if isinstance(point, SampledPoint) else point
    if F.degree != d:
        raise DegreeError(f"form has degree {F.degree}, expected {d}")
    if F.num_vars != A.num_vars:
        raise DimensionError(f"form in {F.num_vars} variables for a scheme in P^{A.ambient_dim}")
    result = classification or classify_scheme(A, d)
    if not result.has_rank:
        raise SchemeError(f"no decomposition recipe for verdict {result.verdict.value} ({result.configuration})")
    if recipe_id is not None and recipe_id != result.recipe:
        raise SchemeError(f"recipe {recipe_id} does not match configuration {result.configuration} ({result.recipe})")
    recipe = result.recipe
    rng = _rng(rng, seed)

    reduced, basis = restrict_to_span(A)
    ctx = RecipeContext(reduced, restrict_form(F, span_basis(A).pivots), d, result.rank, rng)
    step = "start"
    for attempt in range(1, retries + 1):
        try:
            decomposition = _assemble(F, recipe, RECIPES[recipe](ctx), basis)
        except _Retry as e:
            step = e.step
            logger.debug(f"{recipe} attempt {attempt}: {step}")
            continue
        if decomposition.total_size != result.rank:
            step = f"reach size {result.rank} (got {decomposition.total_size})"
            logger.debug(f"{recipe} attempt {attempt}: {step}")
            continue
        logger.info(f"{recipe}: size {decomposition.total_size} after {attempt} attempt(s)")
        return decomposition
    logger.error(f"{recipe} exhausted {retries} attempts at step '{step}'")
    raise RecipeError(recipe, step, retries)


# ---------- VERIFICATION ----------
@dataclass(frozen=True)
class VerificationReport:
    member: bool
    irredundant: bool
    coefficients: Tuple[Fraction, ...] = ()
    reason: Optional[str] = None

    @property
    def verified(self) -> bool:
        return self.member and self.irredundant


def _solve_groups(F: HomogeneousForm, groups: Sequence[List[Vector]], skip: Optional[int] = None) -> Optional[Vector]:
    generators = [v for i, g in enumerate(groups) if i != skip for v in g]
    return solve_combination(generators, F.to_vector())


def verify_decomposition(F: HomogeneousForm, D: Decomposition) -> VerificationReport:
    d = F.degree
    for part in D.parts:
        if len(part.point.coords) != F.num_vars:
            raise DimensionError(f"point {part.point} does not live in P^{F.num_vars - 1}")
    groups: List[List[Vector]] = [[veronese(part.point, d)] for part in D.parts]
    apolar: List[List[BinaryForm]] = []
    for i, block in enumerate(D.blocks):
        h, carrier = block.points.witness, block.points.carrier
        if carrier.num_vars != F.num_vars:
            raise DimensionError(f"block {i} carrier does not live in P^{F.num_vars - 1}")
        if not is_squarefree(h):
            return VerificationReport(False, False, reason=f"block {i}: witness is not squarefree")
        g = carrier.pullback(block.form)
        if g is None:
            return VerificationReport(False, False, reason=f"block {i}: form is not on its carrier")
        if h.degree > g.degree or not contract(g.to_form(), h.to_form()).is_zero():
            return VerificationReport(False, False, reason=f"block {i}: witness is not apolar to the block form")
        forms = apolar_forms(h, d * carrier.param_degree)
        apolar.append(forms)
        groups.append([carrier.pushforward(a, d).to_vector() for a in forms])

    solution = _solve_groups(F, groups)
    if solution is None:
        return VerificationReport(False, False, reason="form is not in the span of the decomposition")
    coefficients = tuple(solution[: len(D.parts)])

    for i in range(len(groups)):
        if _solve_groups(F, groups, skip=i) is not None:
            return VerificationReport(True, False, coefficients, reason=f"part {i} can be removed")
    offset = len(D.parts)
    for i, (block, forms) in enumerate(zip(D.blocks, apolar)):
        weights = solution[offset: offset + len(forms)]
        offset += len(forms)
        # the share of F solved onto this block
        N = d * block.points.carrier.param_degree
        share = BinaryForm(tuple(sum((w * a.coeffs[j] for w, a in zip(weights, forms)), Fraction(0))
                                 for j in range(N + 1)))
        if share.is_zero() or binary_rank(share).rank != block.size:
            return VerificationReport(True, False, coefficients, reason=f"block {i} is not minimal on its carrier")
    return VerificationReport(True, True, coefficients)


# ---------- ORACLE ----------
def oracle_rank_upper(
    F: HomogeneousForm,
    r_max: int,
    trials: int = ORACLE_TRIALS,
    carriers: Sequence[CarrierCurve] = (),
    anchors: Sequence[ProjectivePoint] = (),
    seed: int = DEFAULT_SEED,
) -> Optional[int]:
    """Smallest size < r_max found by random search on the carriers, or None.

    Failing to find one is evidence only.
    """
    if F.is_zero():
        return 0
    if rank(catalecticant(F, 1)) == 1:
        return 1
    if F.num_vars == 2 and not carriers:
        carriers = (CarrierCurve.line([1, 0], [0, 1]),)
    if not carriers:
        return None
    rng = np.random.default_rng(seed)
    target = F.to_vector()
    per_size = max(1, trials // max(1, r_max - 2))
    for size in range(2, r_max):
        for _ in range(per_size):
            chosen = list(anchors[:size])
            while len(chosen) < size:
                carrier = carriers[int(rng.integers(len(carriers)))]
                alpha, beta = (int(x) for x in rng.integers(-ORACLE_GRID, ORACLE_GRID + 1, size=2))
                if alpha == 0 and beta == 0:
                    continue
                chosen.append(carrier.point(alpha, beta))
            if solve_combination([veronese(p, F.degree) for p in chosen], target) is not None:
                logger.info(f"oracle found a decomposition of size {size}")
                return size
    return None


# ---------- JSON ----------
class ExplicitPartModel(BaseModel):
    point: List[Union[int, str]]
    coefficient: Optional[str] = None


class ImplicitBlockModel(BaseModel):
    witness: List[Union[int, str]]
    carrier: List[List[Union[int, str]]]
    carrier_kind: str = "curve"
    size: int
    form: str


class DecompositionModel(BaseModel):
    degree: int
    recipe: str
    total_size: int
    parts: List[ExplicitPartModel] = []
    implicit_blocks: List[ImplicitBlockModel] = []


def decomposition_to_model(D: Decomposition) -> DecompositionModel:
    return DecompositionModel(
        degree=D.degree,
        recipe=D.recipe,
        total_size=D.total_size,
        parts=[ExplicitPartModel(point=p.point.to_json(),
                                 coefficient=None if p.coefficient is None else scalar_text(p.coefficient))
               for p in D.parts],
        implicit_blocks=[ImplicitBlockModel(witness=b.points.witness.to_json(), carrier=b.points.carrier.to_json(),
                                            carrier_kind=b.points.carrier.kind, size=b.size, form=format_form(b.form))
                         for b in D.blocks],
    )


def decomposition_from_model(model: DecompositionModel, num_vars: int) -> Decomposition:
    parts = tuple(
        ExplicitPart(ProjectivePoint(tuple(to_scalar(c) for c in p.point)),
                     None if p.coefficient is None else to_scalar(p.coefficient))
        for p in model.parts
    )
    blocks = []
    for b in model.implicit_blocks:
        carrier = CarrierCurve(tuple(tuple(to_scalar(c) for c in row) for row in b.carrier), b.carrier_kind)
        witness = BinaryForm(tuple(to_scalar(c) for c in b.witness))
        blocks.append(ImplicitBlock(ImplicitPointSet(witness, carrier), parse_form(b.form, num_vars)))
    return Decomposition(model.degree, model.recipe, parts, tuple(blocks))
