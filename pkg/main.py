"""
main.py
- Command-line front end: classify, decompose, sylvester, verify, sample, atlas
- Versioned JSON on stdout (or --out), plain-text tables with --format table
- Exit codes: 0 ok, 2 bad input, 3 unclassified, 4 verification or recipe failure
"""
import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError
from typing_extensions import Literal

from atlas import ATLAS_D_MAX, ATLAS_D_MIN, ATLAS_M_MAX, ATLAS_PER_CONFIG, AtlasReport, render_table, run_atlas
from decompose import (
    DEFAULT_GRID,
    RECIPE_RETRIES,
    SAMPLE_RETRIES,
    DecompositionModel,
    decompose,
    decomposition_from_model,
    decomposition_to_model,
    sample_point,
    verify_decomposition,
)
from errors import (
    DegreeError,
    DimensionError,
    ParseError,
    RecipeError,
    SamplingError,
    SchemeError,
    VerificationError,
)
from poly_core import HomogeneousForm, format_form, parse_form, scalar_text
from schemes import Degree4Scheme, load_scheme, scheme_span
from stratify import StratumResult, Verdict, classify_scheme
from sylvester import BinaryForm, sylvester_decomposition, verify_binary_decomposition

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

# ---------- CONFIG ----------
SCHEMA_VERSION = "1.0"
DEFAULT_LOG_LEVEL = "WARNING"
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_UNCLASSIFIED = 3
EXIT_FAILURE = 4
# ---------------------------

Scalar = Union[int, str]


def setup_logging():
    level = os.getenv("WARING4_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format=LOG_FORMAT, stream=sys.stderr)


def resolve_seed(flag: Optional[int]) -> int:
    """--seed, then WARING4_SEED, then 0."""
    if flag is not None:
        return flag
    raw = os.getenv("WARING4_SEED")
    if raw is None or not raw.strip():
        return 0
    try:
        return int(raw)
    except ValueError as e:
        raise ParseError(f"WARING4_SEED must be an integer, got {raw!r}") from e


# Pydantic models
class RunConfig(BaseModel):
    command: Literal["classify", "decompose", "sylvester", "verify", "sample", "atlas"]
    scheme: Optional[str] = None
    form: Optional[str] = None
    witness: Optional[str] = None
    degree: Optional[int] = Field(default=None, ge=3)
    seed: int = 0
    grid: int = Field(default=DEFAULT_GRID, ge=1)
    retries: Optional[int] = Field(default=None, ge=1)
    out: Optional[str] = None
    format: Literal["json", "table"] = "json"
    workers: int = Field(default=1, ge=1)
    per_config: int = Field(default=ATLAS_PER_CONFIG, ge=1)
    m_max: int = Field(default=ATLAS_M_MAX, ge=1)
    d_min: int = Field(default=ATLAS_D_MIN, ge=3)
    d_max: int = Field(default=ATLAS_D_MAX, ge=3)


class ClassificationModel(BaseModel):
    degree: int
    ambient_dim: int
    span_dim: int
    verdict: str
    configuration: str
    stratum: Optional[str] = None
    rank: Optional[int] = None
    recipe: Optional[str] = None
    reason: Optional[str] = None


class ClassifyResponse(ClassificationModel):
    schema_version: str = SCHEMA_VERSION
    command: str = "classify"


class CertificateModel(BaseModel):
    truncation: str
    contains_sample: bool


class SampleResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: str = "sample"
    degree: int
    seed: int
    form: str
    coefficients: List[str]
    certificates: List[CertificateModel]
    catalecticant_order: Optional[int] = None
    catalecticant_rank: Optional[int] = None
    grid: int
    attempts: int


class DecomposeResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: str = "decompose"
    degree: int
    seed: int
    form: Optional[str] = None
    classification: ClassificationModel
    decomposition: Optional[DecompositionModel] = None
    verified: Optional[bool] = None


class SylvesterResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: str = "sylvester"
    form: str
    degree: int
    rank: int
    border_rank: int
    tangent_case: bool
    witness_poly: List[str]
    witness_text: str
    minimal_generator: List[str]
    rational_points: Optional[List[List[Scalar]]] = None
    verified: bool


class VerifyResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: str = "verify"
    form: str
    recipe: str
    total_size: int
    member: bool
    irredundant: bool
    verified: bool
    coefficients: List[str] = []
    reason: Optional[str] = None


class AtlasResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: str = "atlas"
    seed: int
    m_max: int
    d_min: int
    d_max: int
    per_config: int
    report: AtlasReport


# Helper functions
def _require(value: Optional[object], flag: str, command: str):
    if value is None:
        raise ParseError(f"{command} needs {flag}")
    return value


def read_form_text(value: str) -> str:
    """--form accepts a file path or the polynomial itself."""
    path = Path(value)
    try:
        if path.is_file():
            return path.read_text(encoding="utf-8").strip()
    except OSError:
        pass
    return value


def load_form(value: str, num_vars: Optional[int] = None) -> HomogeneousForm:
    return parse_form(read_form_text(value), num_vars)


def classification_model(result: StratumResult) -> ClassificationModel:
    return ClassificationModel(
        degree=result.degree,
        ambient_dim=result.ambient_dim if result.ambient_dim is not None else result.span_dim,
        span_dim=result.span_dim,
        verdict=result.verdict.value,
        configuration=result.configuration,
        stratum=result.stratum,
        rank=result.rank,
        recipe=result.recipe,
        reason=result.reason,
    )


def _key_value_table(model: BaseModel) -> str:
    rows = [(k, v) for k, v in model.model_dump().items() if not isinstance(v, (dict, list))]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {'-' if v is None else v}" for k, v in rows)


def emit(cfg: RunConfig, model: BaseModel, table: Optional[str] = None):
    text = table if cfg.format == "table" and table is not None else model.model_dump_json(indent=2)
    if cfg.out:
        Path(cfg.out).write_text(text + "\n", encoding="utf-8")
        logger.info(f"wrote {cfg.command} output to {cfg.out}")
    else:
        print(text)


def _scheme_and_degree(cfg: RunConfig) -> tuple:
    A: Degree4Scheme = load_scheme(_require(cfg.scheme, "--scheme", cfg.command))
    d: int = _require(cfg.degree, "--degree", cfg.command)
    return A, d


# ---------- COMMANDS ----------
def cmd_classify(cfg: RunConfig) -> int:
    A, d = _scheme_and_degree(cfg)
    result = classify_scheme(A, d)
    response = ClassifyResponse(**classification_model(result).model_dump())
    emit(cfg, response, _key_value_table(response))
    return EXIT_UNCLASSIFIED if result.verdict is Verdict.UNCLASSIFIED else EXIT_OK


def cmd_sample(cfg: RunConfig) -> int:
    A, d = _scheme_and_degree(cfg)
    point = sample_point(A, d, seed=cfg.seed, grid=cfg.grid, retries=cfg.retries or SAMPLE_RETRIES)
    response = SampleResponse(
        degree=d,
        seed=cfg.seed,
        form=format_form(point.form),
        coefficients=[scalar_text(c) for c in point.coefficients],
        certificates=[CertificateModel(truncation=label, contains_sample=inside) for label, inside in point.certificates],
        catalecticant_order=point.catalecticant_order,
        catalecticant_rank=point.catalecticant_rank,
        grid=point.grid,
        attempts=point.attempts,
    )
    emit(cfg, response, _key_value_table(response))
    return EXIT_OK


def _decomposition_table(response: DecomposeResponse) -> str:
    c = response.classification
    lines = [f"configuration  {c.configuration}", f"verdict        {c.verdict}", f"stratum        {c.stratum or '-'}"]
    if response.decomposition is None:
        return "\n".join(lines + ["decomposition  -"])
    D = response.decomposition
    lines.append(f"recipe         {D.recipe} (size {D.total_size}, verified {response.verified})")
    for p in D.parts:
        lines.append(f"  point        ({':'.join(map(str, p.point))})  coefficient {p.coefficient}")
    for b in D.implicit_blocks:
        lines.append(f"  {b.size} roots of  [{', '.join(map(str, b.witness))}] on {b.carrier_kind} {b.carrier}")
    return "\n".join(lines)


def cmd_decompose(cfg: RunConfig) -> int:
    A, d = _scheme_and_degree(cfg)
    result = classify_scheme(A, d)
    classification = classification_model(result)
    if not result.has_rank:
        response = DecomposeResponse(degree=d, seed=cfg.seed, classification=classification)
        emit(cfg, response, _decomposition_table(response))
        return EXIT_UNCLASSIFIED if result.verdict is Verdict.UNCLASSIFIED else EXIT_OK

    rng = np.random.default_rng(cfg.seed)
    if cfg.form is not None:
        F = load_form(cfg.form, A.num_vars)
        if F.degree != d:
            raise DegreeError(f"form has degree {F.degree}, expected {d}")
        if not scheme_span(A, d).span.contains(F.to_vector()):
            raise SchemeError("the form does not lie in the span of nu_d(A)")
    else:
        F = sample_point(A, d, rng=rng, grid=cfg.grid).form
    D = decompose(F, A, d, rng=rng, retries=cfg.retries or RECIPE_RETRIES, classification=result)
    report = verify_decomposition(F, D)
    response = DecomposeResponse(
        degree=d, seed=cfg.seed, form=format_form(F), classification=classification,
        decomposition=decomposition_to_model(D), verified=report.verified,
    )
    if not report.verified:
        raise VerificationError(f"decomposition failed verification: {report.reason}", response.model_dump())
    emit(cfg, response, _decomposition_table(response))
    return EXIT_OK


def cmd_sylvester(cfg: RunConfig) -> int:
    f = BinaryForm.parse(read_form_text(_require(cfg.form, "--form", cfg.command)))
    cert, points = sylvester_decomposition(f, np.random.default_rng(cfg.seed))
    explicit = points.explicit_points()
    response = SylvesterResponse(
        form=f.text(),
        degree=f.degree,
        rank=cert.rank,
        border_rank=cert.border_rank,
        tangent_case=cert.tangent_case,
        witness_poly=cert.witness.to_json(),
        witness_text=cert.witness.text(),
        minimal_generator=cert.minimal_generator.to_json(),
        rational_points=None if explicit is None else [p.to_json() for p in explicit],
        verified=verify_binary_decomposition(f, points),
    )
    emit(cfg, response, _key_value_table(response))
    return EXIT_OK


def _load_witness(path: str) -> tuple:
    """Accepts a decompose response or a bare decomposition; returns (model, form text or None)."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise ParseError(f"cannot read witness file {path}: {e}") from e
    form_text = None
    if isinstance(data, dict) and "decomposition" in data:
        form_text = data.get("form")
        data = data["decomposition"]
        if data is None:
            raise ParseError(f"{path} carries no decomposition (verdict without a rank)")
    return DecompositionModel.model_validate(data), form_text


def _witness_num_vars(model: DecompositionModel) -> int:
    if model.parts:
        return len(model.parts[0].point)
    if model.implicit_blocks:
        return len(model.implicit_blocks[0].carrier)
    raise ParseError("witness has no points")


def cmd_verify(cfg: RunConfig) -> int:
    model, embedded_form = _load_witness(_require(cfg.witness, "--witness", cfg.command))
    form_text = read_form_text(cfg.form) if cfg.form is not None else embedded_form
    n = _witness_num_vars(model)
    F = parse_form(_require(form_text, "--form", cfg.command), n)
    if F.degree != model.degree:
        raise DegreeError(f"form has degree {F.degree} but the witness is for degree {model.degree}")
    D = decomposition_from_model(model, n)
    report = verify_decomposition(F, D)
    response = VerifyResponse(
        form=format_form(F), recipe=D.recipe, total_size=D.total_size,
        member=report.member, irredundant=report.irredundant, verified=report.verified,
        coefficients=[scalar_text(c) for c in report.coefficients], reason=report.reason,
    )
    emit(cfg, response, _key_value_table(response))
    if not report.verified:
        logger.error(f"verification failed: {report.reason}")
        return EXIT_FAILURE
    return EXIT_OK


def cmd_atlas(cfg: RunConfig) -> int:
    if cfg.d_max < cfg.d_min:
        raise DegreeError(f"--d-max {cfg.d_max} is below --d-min {cfg.d_min}")
    report = run_atlas(cfg.m_max, cfg.d_min, cfg.d_max, cfg.per_config, cfg.seed, cfg.workers)
    response = AtlasResponse(seed=cfg.seed, m_max=cfg.m_max, d_min=cfg.d_min, d_max=cfg.d_max,
                             per_config=cfg.per_config, report=report)
    emit(cfg, response, render_table(report))
    return EXIT_OK if all(c.within_table for c in report.cells) else EXIT_FAILURE


COMMANDS = {
    "classify": cmd_classify,
    "decompose": cmd_decompose,
    "sylvester": cmd_sylvester,
    "verify": cmd_verify,
    "sample": cmd_sample,
    "atlas": cmd_atlas,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Ranks and decompositions of border-rank-4 forms")
    parser.add_argument("command", choices=sorted(COMMANDS), help="what to compute")
    parser.add_argument("--scheme", help="degree-4 scheme json file")
    parser.add_argument("--form", help="polynomial text or a file holding it")
    parser.add_argument("--witness", help="decomposition json to verify")
    parser.add_argument("--degree", "-d", type=int, help="degree d of the forms (d >= 3)")
    parser.add_argument("--seed", type=int, help="random seed (default: WARING4_SEED or 0)")
    parser.add_argument("--grid", type=int, default=DEFAULT_GRID, help="coefficient range for random draws")
    parser.add_argument("--retries", type=int, help="retry bound for sampling and recipes")
    parser.add_argument("--out", help="write output here instead of stdout")
    parser.add_argument("--format", choices=["json", "table"], default="json", help="output format")
    parser.add_argument("--workers", type=int, default=1, help="atlas worker processes")
    parser.add_argument("--per-config", type=int, default=ATLAS_PER_CONFIG, help="atlas instances per configuration")
    parser.add_argument("--m-max", type=int, default=ATLAS_M_MAX, help="largest atlas ambient dimension")
    parser.add_argument("--d-min", type=int, default=ATLAS_D_MIN, help="smallest atlas degree")
    parser.add_argument("--d-max", type=int, default=ATLAS_D_MAX, help="largest atlas degree")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    setup_logging()
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command, scheme=args.scheme, form=args.form, witness=args.witness,
            degree=args.degree, seed=resolve_seed(args.seed), grid=args.grid, retries=args.retries,
            out=args.out, format=args.format, workers=args.workers, per_config=args.per_config,
            m_max=args.m_max, d_min=args.d_min, d_max=args.d_max,
        )
        return COMMANDS[cfg.command](cfg)
    except (ParseError, SchemeError, DegreeError, DimensionError, ValidationError, json.JSONDecodeError) as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except VerificationError as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        print(json.dumps(e.instance, indent=2, default=str), file=sys.stderr)
        return EXIT_FAILURE
    except (RecipeError, SamplingError) as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
