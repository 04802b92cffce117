"""
atlas.py
- Random instances of every tagged configuration, embedded into P^m
- classify -> sample -> decompose -> verify per instance, optionally in worker processes
- Realized rank sets per (m, d) compared against the stratification table
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel
from tqdm import tqdm

from decompose import DecompositionModel, decompose, decomposition_to_model, sample_point, verify_decomposition
from errors import SchemeError, VerificationError
from poly_core import rank
from schemes import (
    Degree4Scheme,
    FatPointComponent,
    JetComponent,
    SquarePencilComponent,
    map_scheme,
    scheme_to_json,
    span_basis,
)
from stratify import Verdict, classify_scheme, externally_cited, rank_table

logger = logging.getLogger(__name__)

# ---------- CONFIG ----------
ATLAS_M_MAX = 3
ATLAS_D_MIN = 3
ATLAS_D_MAX = 8
ATLAS_PER_CONFIG = 2
COORD_GRID = 4
GENERATOR_RETRIES = 100
# ---------------------------

Vec = List[Fraction]


def _vec(rng: np.random.Generator, n: int) -> Vec:
    while True:
        v = [Fraction(int(x)) for x in rng.integers(-COORD_GRID, COORD_GRID + 1, size=n)]
        if any(v):
            return v


def _comb(a: Sequence[Fraction], b: Sequence[Fraction], s: Fraction, t: Fraction) -> Vec:
    return [s * x + t * y for x, y in zip(a, b)]


def _nonzero(rng: np.random.Generator) -> Fraction:
    while True:
        x = int(rng.integers(-COORD_GRID, COORD_GRID + 1))
        if x:
            return Fraction(x)


def _off(rng: np.random.Generator, vectors: Sequence[Sequence[Fraction]], n: int) -> Vec:
    """A random vector outside span(vectors)."""
    need = rank(list(vectors), n) + 1
    while True:
        v = _vec(rng, n)
        if rank(list(vectors) + [v], n) == need:
            return v


# ---------- CONFIGURATIONS (in P^s) ----------
def _gen_line_reduced(rng):
    return Degree4Scheme(1, tuple(JetComponent((1, Fraction(int(a)))) for a in rng.choice(np.arange(-8, 9), 4, replace=False)))


def _gen_line_jets(rng):
    pattern = [[4], [3, 1], [2, 2], [2, 1, 1]][int(rng.integers(4))]
    supports = rng.choice(np.arange(-8, 9), len(pattern), replace=False)
    comps = []
    for k, a in zip(pattern, supports):
        p = [Fraction(1), Fraction(int(a))]
        jets = [_off(rng, [p], 2)] + [_vec(rng, 2) for _ in range(k - 2)]
        comps.append(JetComponent(tuple(p), tuple(tuple(v) for v in jets)))
    return Degree4Scheme(1, tuple(comps))


def _gen_plane_reduced(rng):
    return Degree4Scheme(2, tuple(JetComponent(tuple(_vec(rng, 3))) for _ in range(4)))


def _gen_residual_off_line(rng):
    O, O1 = _vec(rng, 3), _vec(rng, 3)
    v = _comb(O1, O, Fraction(1), _nonzero(rng))
    O2 = _off(rng, [O, O1], 3)
    return Degree4Scheme(2, (JetComponent(tuple(O), (tuple(v),)), JetComponent(tuple(O1)), JetComponent(tuple(O2))))


def _gen_tangent_jet(rng):
    p = _vec(rng, 3)
    u = _off(rng, [p], 3)
    v1 = _comb(u, p, Fraction(1), _nonzero(rng))
    v2 = _comb(u, p, _nonzero(rng), _nonzero(rng))
    v3 = _off(rng, [p, u], 3)
    return Degree4Scheme(2, (JetComponent(tuple(p), (tuple(v1), tuple(v2), tuple(v3))),))


def _gen_two_jets_on_line(rng):
    O, P2 = _vec(rng, 3), _vec(rng, 3)
    D = _off(rng, [O, P2], 3)
    tangent = _comb(O, P2, Fraction(1), _nonzero(rng))
    return Degree4Scheme(2, (JetComponent(tuple(O), (tuple(D),)), JetComponent(tuple(P2), (tuple(tangent),))))


def _gen_jet_two_points_on_line(rng):
    O1, O2 = _vec(rng, 3), _vec(rng, 3)
    O = _comb(O1, O2, _nonzero(rng), _nonzero(rng))
    v = _off(rng, [O1, O2], 3)
    return Degree4Scheme(2, (JetComponent(tuple(O), (tuple(v),)), JetComponent(tuple(O1)), JetComponent(tuple(O2))))


def _gen_jet_two_points(rng, s: int = 2):
    n = s + 1
    O = _vec(rng, n)
    v = _off(rng, [O], n)
    O1 = _off(rng, [O, v], n)
    O2 = _off(rng, [O, v] if s == 2 else [O, v, O1], n)
    return Degree4Scheme(s, (JetComponent(tuple(O), (tuple(v),)), JetComponent(tuple(O1)), JetComponent(tuple(O2))))


def _gen_smooth_conic(rng):
    kind = int(rng.integers(3))
    if kind == 0:
        p = _vec(rng, 3)
        v1 = _off(rng, [p], 3)
        v2 = _off(rng, [p, v1], 3)
        return Degree4Scheme(2, (JetComponent(tuple(p), (tuple(v1), tuple(v2), tuple(_vec(rng, 3)))),))
    if kind == 1:
        O1 = _vec(rng, 3)
        O2 = _off(rng, [O1], 3)
        return Degree4Scheme(2, (JetComponent(tuple(O1), (tuple(_off(rng, [O1, O2], 3)),)),
                                 JetComponent(tuple(O2), (tuple(_off(rng, [O1, O2], 3)),))))
    p = _vec(rng, 3)
    v1 = _off(rng, [p], 3)
    v2 = _off(rng, [p, v1], 3)
    O = _off(rng, [p, v1], 3)
    return Degree4Scheme(2, (JetComponent(tuple(p), (tuple(v1), tuple(v2))), JetComponent(tuple(O))))


def _gen_square_pencil(rng):
    p = _vec(rng, 3)
    w1 = _off(rng, [p], 3)
    w2 = _off(rng, [p, w1], 3)
    while True:
        a, b, c, e = (_nonzero(rng) for _ in range(4))
        if a * e - b * c != 0:
            break
    q1 = (a, 0, b)
    q2 = (c, 0, e)
    return Degree4Scheme(2, (SquarePencilComponent(tuple(p), tuple(w1), tuple(w2), q1, q2),))


def _gen_nongorenstein_pencil(rng):
    p = _vec(rng, 3)
    w1 = _off(rng, [p], 3)
    w2 = _off(rng, [p, w1], 3)
    return Degree4Scheme(2, (SquarePencilComponent(tuple(p), tuple(w1), tuple(w2), (1, 0, 0), (0, 1, 0)),))


def _gen_planar_fat_point(rng, s: int = 2):
    n = s + 1
    p = _vec(rng, n)
    w1 = _off(rng, [p], n)
    w2 = _off(rng, [p, w1], n)
    O = _off(rng, [p] if s == 2 else [p, w1, w2], n)
    return Degree4Scheme(s, (FatPointComponent(tuple(p), (tuple(w1), tuple(w2))), JetComponent(tuple(O))))


def _gen_tangent_point(rng):
    p = _vec(rng, 3)
    v1 = _off(rng, [p], 3)
    v2 = _off(rng, [p, v1], 3)
    O = _comb(p, v1, _nonzero(rng), Fraction(1))
    return Degree4Scheme(2, (JetComponent(tuple(p), (tuple(v1), tuple(v2))), JetComponent(tuple(O))))


def _gen_space_reduced(rng):
    return Degree4Scheme(3, tuple(JetComponent(tuple(_vec(rng, 4))) for _ in range(4)))


def _gen_space_jet(rng):
    p = _vec(rng, 4)
    vs = [p]
    for _ in range(3):
        vs.append(_off(rng, vs, 4))
    return Degree4Scheme(3, (JetComponent(tuple(p), tuple(tuple(v) for v in vs[1:])),))


def _gen_space_fat_point(rng):
    p = _vec(rng, 4)
    vs = [p]
    for _ in range(3):
        vs.append(_off(rng, vs, 4))
    return Degree4Scheme(3, (FatPointComponent(tuple(p), tuple(tuple(v) for v in vs[1:])),))


def _gen_skew_jets(rng):
    O1 = _vec(rng, 4)
    v1 = _off(rng, [O1], 4)
    O2 = _off(rng, [O1, v1], 4)
    v2 = _off(rng, [O1, v1, O2], 4)
    return Degree4Scheme(3, (JetComponent(tuple(O1), (tuple(v1),)), JetComponent(tuple(O2), (tuple(v2),))))


def _gen_point_plane_jet(rng):
    p = _vec(rng, 4)
    v1 = _off(rng, [p], 4)
    v2 = _off(rng, [p, v1], 4)
    O = _off(rng, [p, v1, v2], 4)
    return Degree4Scheme(3, (JetComponent(tuple(p), (tuple(v1), tuple(v2))), JetComponent(tuple(O))))


@dataclass(frozen=True)
class Configuration:
    tag: str
    span_dim: int
    generate: Callable[[np.random.Generator], Degree4Scheme]


CONFIGURATIONS: Tuple[Configuration, ...] = (
    Configuration("I-reduced", 1, _gen_line_reduced),
    Configuration("I-jet-collinear", 1, _gen_line_jets),
    Configuration("II-reduced", 2, _gen_plane_reduced),
    Configuration("II1.1-residual-off-line", 2, _gen_residual_off_line),
    Configuration("II1.2.1-curvilinear", 2, _gen_tangent_jet),
    Configuration("II1.2.1-noncurvilinear", 2, _gen_nongorenstein_pencil),
    Configuration("II1.2.2-two-jets", 2, _gen_two_jets_on_line),
    Configuration("II1.2.2-fat-point", 2, _gen_planar_fat_point),
    Configuration("II1.2.2-tangent-point", 2, _gen_tangent_point),
    Configuration("II1.2.3-jet-two-points", 2, _gen_jet_two_points_on_line),
    Configuration("II2.1-three-points", 2, _gen_jet_two_points),
    Configuration("II2.1-smooth-conic", 2, _gen_smooth_conic),
    Configuration("II2.2-singular-conic", 2, _gen_square_pencil),
    Configuration("III-reduced", 3, _gen_space_reduced),
    Configuration("III1-curvilinear", 3, _gen_space_jet),
    Configuration("III1-fat-point", 3, _gen_space_fat_point),
    Configuration("III2.1-fat-point", 3, lambda rng: _gen_planar_fat_point(rng, 3)),
    Configuration("III2.2-two-jets", 3, _gen_skew_jets),
    Configuration("III2.3-point-jet", 3, _gen_point_plane_jet),
    Configuration("III3-jet-two-points", 3, lambda rng: _gen_jet_two_points(rng, 3)),
)
CONFIG_BY_TAG: Dict[str, Configuration] = {c.tag: c for c in CONFIGURATIONS}


def random_embedding(rng: np.random.Generator, s: int, m: int) -> List[Vec]:
    """Random injective (m+1) x (s+1) integer matrix."""
    while True:
        E = [_vec(rng, s + 1) for _ in range(m + 1)]
        if rank(E, s + 1) == s + 1:
            return E


def generate_instance(config: Configuration, m: int, rng: np.random.Generator) -> Degree4Scheme:
    for _ in range(GENERATOR_RETRIES):
        try:
            A = config.generate(rng)
        except SchemeError:
            continue
        if span_basis(A).dim != config.span_dim:
            continue
        if m == config.span_dim:
            return A
        try:
            return map_scheme(A, random_embedding(rng, config.span_dim, m))
        except SchemeError:
            continue
    raise SchemeError(f"could not generate a valid instance of {config.tag}")


# ---------- MODELS ----------
class AtlasEntry(BaseModel):
    m: int
    d: int
    configuration: str
    verdict: str
    stratum: Optional[str] = None
    rank: Optional[int] = None
    recipe: Optional[str] = None
    instances: int
    sample_scheme: dict
    sample_witness: Optional[DecompositionModel] = None


class AtlasCell(BaseModel):
    m: int
    d: int
    table: List[int]
    realized: List[int]
    externally_cited: List[int]
    unreachable: List[int]
    sigma_instances: int
    unclassified_instances: int
    within_table: bool


class AtlasReport(BaseModel):
    entries: List[AtlasEntry]
    cells: List[AtlasCell]


# ---------- TASKS ----------
@dataclass(frozen=True)
class AtlasTask:
    index: int
    m: int
    d: int
    tag: str
    seed: np.random.SeedSequence


@dataclass(frozen=True)
class InstanceOutcome:
    index: int
    m: int
    d: int
    tag: str
    verdict: str
    rank: Optional[int]
    recipe: Optional[str]
    stratum: Optional[str]
    scheme: dict
    witness: Optional[DecompositionModel]


def build_tasks(m_max: int, d_min: int, d_max: int, per_config: int, seed: int,
                tags: Optional[Sequence[str]] = None) -> List[AtlasTask]:
    plan = []
    for m in range(1, m_max + 1):
        for d in range(d_min, d_max + 1):
            for config in CONFIGURATIONS:
                if config.span_dim > m or (tags and config.tag not in tags):
                    continue
                plan.extend((m, d, config.tag) for _ in range(per_config))
    children = np.random.SeedSequence(seed).spawn(len(plan))
    return [AtlasTask(i, m, d, tag, child) for i, ((m, d, tag), child) in enumerate(zip(plan, children))]


def run_task(task: AtlasTask) -> InstanceOutcome:
    rng = np.random.default_rng(task.seed)
    A = generate_instance(CONFIG_BY_TAG[task.tag], task.m, rng)
    result = classify_scheme(A, task.d)
    scheme = scheme_to_json(A)
    if not result.has_rank:
        return InstanceOutcome(task.index, task.m, task.d, task.tag, result.verdict.value, None, None, None, scheme, None)
    point = sample_point(A, task.d, rng=rng)
    D = decompose(point, A, task.d, rng=rng, classification=result)
    report = verify_decomposition(point.form, D)
    if not report.verified:
        instance = {"m": task.m, "d": task.d, "configuration": task.tag, "scheme": scheme,
                    "form": str(point.form), "reason": report.reason}
        logger.error(f"verification failed for {task.tag} (m={task.m}, d={task.d}): {report.reason}")
        raise VerificationError(f"atlas instance {task.index} failed verification: {report.reason}", instance)
    return InstanceOutcome(task.index, task.m, task.d, task.tag, result.verdict.value, result.rank, result.recipe,
                           result.stratum, scheme, decomposition_to_model(D))


def _summarize(outcomes: Sequence[InstanceOutcome], m_max: int, d_min: int, d_max: int) -> AtlasReport:
    entries: Dict[Tuple[int, int, str], AtlasEntry] = {}
    for o in outcomes:
        key = (o.m, o.d, o.tag)
        if key in entries:
            entries[key].instances += 1
            continue
        entries[key] = AtlasEntry(m=o.m, d=o.d, configuration=o.tag, verdict=o.verdict, stratum=o.stratum,
                                  rank=o.rank, recipe=o.recipe, instances=1, sample_scheme=o.scheme,
                                  sample_witness=o.witness)
    cells = []
    for m in range(1, m_max + 1):
        for d in range(d_min, d_max + 1):
            here = [o for o in outcomes if o.m == m and o.d == d]
            if not here:
                continue
            table = rank_table(m, d)
            realized = {o.rank for o in here if o.rank is not None}
            cited = externally_cited(m, d)
            cells.append(AtlasCell(
                m=m, d=d, table=sorted(table), realized=sorted(realized), externally_cited=sorted(cited),
                unreachable=sorted(table - realized),
                sigma_instances=sum(o.verdict in (Verdict.IN_SIGMA2.value, Verdict.IN_SIGMA3.value) for o in here),
                unclassified_instances=sum(o.verdict == Verdict.UNCLASSIFIED.value for o in here),
                within_table=realized <= table,
            ))
    return AtlasReport(entries=list(entries.values()), cells=cells)


def run_atlas(
    m_max: int = ATLAS_M_MAX,
    d_min: int = ATLAS_D_MIN,
    d_max: int = ATLAS_D_MAX,
    per_config: int = ATLAS_PER_CONFIG,
    seed: int = 0,
    workers: int = 1,
    tags: Optional[Sequence[str]] = None,
    progress: bool = True,
) -> AtlasReport:
    tasks = build_tasks(m_max, d_min, d_max, per_config, seed, tags)
    logger.info(f"atlas: {len(tasks)} instances over m <= {m_max}, {d_min} <= d <= {d_max}")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(tqdm(pool.map(run_task, tasks), total=len(tasks), disable=not progress, desc="atlas"))
    else:
        outcomes = [run_task(t) for t in tqdm(tasks, disable=not progress, desc="atlas")]
    outcomes.sort(key=lambda o: o.index)
    report = _summarize(outcomes, m_max, d_min, d_max)
    for cell in report.cells:
        if not cell.within_table:
            logger.error(f"realized ranks {cell.realized} escape the table {cell.table} at (m={cell.m}, d={cell.d})")
    return report


def render_table(report: AtlasReport) -> str:
    lines = [f"{'m':>2} {'d':>2}  {'realized':<28} {'table':<28} externally cited"]
    for c in report.cells:
        realized = ", ".join(map(str, c.realized)) or "-"
        table = ", ".join(map(str, c.table)) or "-"
        cited = ", ".join(map(str, c.externally_cited)) or "-"
        lines.append(f"{c.m:>2} {c.d:>2}  {realized:<28} {table:<28} {cited}")
    return "\n".join(lines)
