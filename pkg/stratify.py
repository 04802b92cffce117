"""
stratify.py
- Decision tree mapping a degree-4 scheme and a degree d to its rank stratum
- Reduction to the linear span of the scheme
- Rank sets per (m, d), with the externally cited strata
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Optional, Tuple

from errors import DegreeError, SchemeError
from schemes import (
    Degree4Scheme,
    GateVerdict,
    JetComponent,
    SquarePencilComponent,
    conic_pencil,
    gorenstein_gate,
    line_profile,
    restrict_to_span,
    span_basis,
)

logger = logging.getLogger(__name__)

# ---------- CONFIG ----------
MIN_DEGREE = 3
RATIONAL_CURVE_MIN_DEGREE = 6
EXTERNALLY_CITED: Dict[Tuple[int, int], FrozenSet[int]] = {
    (2, 4): frozenset({7}),
    (2, 5): frozenset({9}),
}
# ---------------------------


class Verdict(str, Enum):
    RANK = "rank"
    IN_SIGMA2 = "in_sigma2"
    IN_SIGMA3 = "in_sigma3"
    SIGMA4_ZERO = "sigma4_zero"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class StratumResult:
    verdict: Verdict
    degree: int
    span_dim: int
    configuration: str
    rank: Optional[int] = None
    recipe: Optional[str] = None
    reason: Optional[str] = None
    ambient_dim: Optional[int] = None

    @property
    def stratum(self) -> Optional[str]:
        if self.rank is None:
            return None
        m = self.ambient_dim if self.ambient_dim is not None else self.span_dim
        return f"sigma_{{4,{self.rank}}}(X_{{{m},{self.degree}}})"

    @property
    def has_rank(self) -> bool:
        return self.verdict in (Verdict.RANK, Verdict.SIGMA4_ZERO)


def rank_table(m: int, d: int) -> FrozenSet[int]:
    """Ranks r with sigma_{4,r}(X_{m,d}) nonempty."""
    if m < 1:
        raise DegreeError(f"ambient dimension must be >= 1, got {m}")
    if d < MIN_DEGREE:
        raise DegreeError(f"the stratification is stated for d >= {MIN_DEGREE}, got {d}")
    if m == 1:
        return frozenset({4, d - 2}) if d >= RATIONAL_CURVE_MIN_DEGREE else frozenset()
    if m == 2:
        fixed = {3: {4}, 4: {4, 6, 7}, 5: {4, 5, 7, 8, 9}}
        return frozenset(fixed.get(d, {4, d - 2, d, d + 2, 2 * d - 2}))
    fixed = {3: {4, 5, 6, 7}, 4: {4, 6, 8, 10}, 5: {4, 5, 7, 8, 10, 13}}
    return frozenset(fixed.get(d, {4, d - 2, d, d + 2, 2 * d - 2, 2 * d, 3 * d - 2}))


def externally_cited(m: int, d: int) -> FrozenSet[int]:
    return EXTERNALLY_CITED.get((min(m, 3), d), frozenset())


def reduce_ambient(A: Degree4Scheme) -> Degree4Scheme:
    """A rewritten inside <A> = P^s; rank does not change."""
    reduced, _ = restrict_to_span(A)
    if reduced.ambient_dim != A.ambient_dim:
        logger.debug(f"reduced ambient P^{A.ambient_dim} -> P^{reduced.ambient_dim}")
    return reduced


# ---------- DECISION TREE ----------
def _rank(d: int, s: int, rank: int, recipe: str, tag: str) -> StratumResult:
    table = rank_table(s, d)
    if rank < 4 or rank not in table:
        raise SchemeError(f"rank {rank} for {tag} is outside the stratification for (m={s}, d={d})")
    return StratumResult(Verdict.RANK, d, s, tag, rank=rank, recipe=recipe)


def _sigma4_zero(d: int, s: int, tag: str) -> StratumResult:
    return StratumResult(Verdict.SIGMA4_ZERO, d, s, tag, rank=4, recipe="R0")


def _classify_line(A: Degree4Scheme, d: int) -> StratumResult:
    tag = "I-reduced" if A.is_reduced else "I-jet-collinear"
    if d < RATIONAL_CURVE_MIN_DEGREE:
        return StratumResult(Verdict.IN_SIGMA3, d, 1, tag,
                             reason=f"sigma_4 of the degree-{d} rational normal curve is not proper")
    if A.is_reduced:
        return _sigma4_zero(d, 1, tag)
    return _rank(d, 1, d - 2, "R1", tag)


def _planar_line_case(A: Degree4Scheme, d: int, residual_on_line: bool) -> Tuple[str, Optional[int], Optional[str], Optional[Verdict]]:
    """(tag, rank, recipe, other verdict) for planar schemes meeting a line in degree 3."""
    if not residual_on_line:
        return "II1.1-residual-off-line", d, "R2", None
    size = A.support_size
    if size == 1:
        if isinstance(A.components[0], JetComponent):
            return "II1.2.1-curvilinear", 2 * d - 2, "R3", None
        return "II1.2.1-noncurvilinear", None, None, Verdict.IN_SIGMA3
    if size == 2:
        degrees = sorted(c.degree for c in A.components)
        if all(isinstance(c, JetComponent) for c in A.components):
            if degrees == [2, 2]:
                return "II1.2.2-two-jets", 2 * d - 2, "R4", None
            return "II1.2.2-tangent-point", None, None, Verdict.UNCLASSIFIED
        return "II1.2.2-fat-point", None, None, Verdict.IN_SIGMA3
    return "II1.2.3-jet-two-points", d + 2, "R5", None


def _planar_conic_case(A: Degree4Scheme, d: int) -> Tuple[str, Optional[int], Optional[str], Optional[Verdict]]:
    if A.support_size == 3:
        return "II2.1-three-points", d + 2, "R5", None
    pencil = conic_pencil(A)
    if pencil.generic_member_smooth:
        return "II2.1-smooth-conic", 2 * d - 2, "R6", None
    if any(c.is_gorenstein for c in A.of_type(SquarePencilComponent)):
        return "II2.2-singular-conic", 2 * d - 2, "R7", None
    return "II2.2-singular-conic", None, None, Verdict.UNCLASSIFIED


def _classify_plane(A: Degree4Scheme, d: int) -> StratumResult:
    profile = line_profile(A)
    if A.is_reduced:
        if d == MIN_DEGREE and profile.max_line_degree >= 3:
            return StratumResult(Verdict.IN_SIGMA3, d, 2, "II1.1-residual-off-line",
                                 reason="three collinear points: the cubic restricted to their line has rank <= 2")
        return _sigma4_zero(d, 2, "II-reduced")

    if profile.max_line_degree >= 3:
        tag, rank, recipe, other = _planar_line_case(A, d, profile.residual_on_line)
    else:
        tag, rank, recipe, other = _planar_conic_case(A, d)
    logger.debug(f"planar scheme: max line degree {profile.max_line_degree}, tag {tag}")

    if d == MIN_DEGREE and profile.max_line_degree >= 3:
        return StratumResult(Verdict.IN_SIGMA3, d, 2, f"{tag}-d3",
                             reason="length-3 line section at d = 3: the apolar conics have a degree-3 base scheme")
    if other is Verdict.UNCLASSIFIED:
        return StratumResult(other, d, 2, tag, reason=f"configuration {tag} is not covered by the case analysis")
    if other is not None:
        return StratumResult(other, d, 2, tag, reason=f"<nu_d(A)> lies in sigma_3 for configuration {tag}")
    if d == MIN_DEGREE:
        return _rank(d, 2, 4, "R11", f"{tag}-d3")
    return _rank(d, 2, rank, recipe, tag)


def _classify_space(A: Degree4Scheme, d: int) -> StratumResult:
    if A.is_reduced:
        return _sigma4_zero(d, 3, "III-reduced")
    degrees = sorted(c.degree for c in A.components)
    if degrees == [4]:
        return _rank(d, 3, 3 * d - 2, "R9", "III1-curvilinear")
    if degrees == [2, 2]:
        return _rank(d, 3, 2 * d, "R8", "III2.2-two-jets")
    if degrees == [1, 3]:
        return _rank(d, 3, 2 * d, "R10", "III2.3-point-jet")
    return _rank(d, 3, d + 2, "R5", "III3-jet-two-points")


_GATE_ROUTES = {
    GateVerdict.REJECT_FAT_POINT: (Verdict.IN_SIGMA2, "III1-fat-point"),
    GateVerdict.REJECT_PLANAR_FAT_POINT: (Verdict.IN_SIGMA3, "III2.1-fat-point"),
    GateVerdict.REJECT_NOT_GORENSTEIN: (Verdict.IN_SIGMA3, "II1.2.1-noncurvilinear"),
}


def classify(A: Degree4Scheme, d: int) -> StratumResult:
    """Stratum of a generic point of <nu_d(A)>; A must live in its own span."""
    if d < MIN_DEGREE:
        raise DegreeError(f"classification needs d >= {MIN_DEGREE}, got {d}")
    s = span_basis(A).dim
    if s != A.ambient_dim:
        raise SchemeError(f"scheme spans P^{s} inside P^{A.ambient_dim}; reduce the ambient first")

    gate = gorenstein_gate(A)
    if gate is not GateVerdict.ACCEPT:
        verdict, tag = _GATE_ROUTES[gate]
        if gate is GateVerdict.REJECT_PLANAR_FAT_POINT and s == 2:
            tag = "II1.2.2-fat-point"
        return StratumResult(verdict, d, s, tag, reason=f"gate: {gate.value}")

    if s == 1:
        result = _classify_line(A, d)
    elif s == 2:
        result = _classify_plane(A, d)
    else:
        result = _classify_space(A, d)
    logger.info(f"classified s={s}, d={d}: {result.configuration} -> {result.verdict.value}"
                + (f" rank {result.rank}" if result.rank is not None else ""))
    return result


def classify_scheme(A: Degree4Scheme, d: int) -> StratumResult:
    """Reduce to <A>, classify, and label the stratum with the original ambient."""
    result = classify(reduce_ambient(A), d)
    return StratumResult(
        result.verdict, result.degree, result.span_dim, result.configuration,
        result.rank, result.recipe, result.reason, A.ambient_dim,
    )
