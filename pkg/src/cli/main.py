"""
freewalk command-line interface.

    python -m src.cli.main analyze --images b c ab
    python -m src.cli.main traintrack --input phi.json --trace
    python -m src.cli.main distance --source g1.json --target g2.json
    python -m src.cli.main walk --rank 3 --steps 40 --checkpoints 5,10,20,40 \
        --trials 200 --seed 42 --out stats.csv
    python -m src.cli.main invert --images ab b c
    python -m src.cli.main seed --rank 3

Exit codes: 0 success, 1 inconclusive outcome under ``--strict`` or no
principal seed, 2 unreadable input, 3 invalid input.
"""
import argparse
import json
import os
import sys
from dataclasses import dataclass

import pandas as pd

from src.freegroup.automorphisms import FreeAutomorphism, invert
from src.graphmap.marked_graph import MarkedGraph
from src.outerspace.distance import lipschitz_distance
from src.outerspace.points import outer_space_point
from src.outerspace.projection import free_factor_projection
from src.randomwalk.distribution import (
    StepDistribution, load_distribution, reference_distribution,
)
from src.randomwalk.experiment import run_experiment
from src.randomwalk.seeds import (
    DEFAULT_SEEDS_FILE, SeedSearch, resolve_principal_report,
    resolve_principal_seed,
)
from src.trainfold.train_track import Outcome, find_train_track
from src.utils.config_loader import (
    AnalysisLimits, WalkConfig, load_yaml_config, validate_config,
)
from src.utils.errors import (
    FreeWalkError, IndexOutOfRank, NotAnAutomorphism, ParseError,
    RankMismatch, SeedNotFound, ValidationError,
)
from src.utils.file_utils import (
    delete_old_csv_files, write_csv_report, write_json_report,
)
from src.utils.logger import setup_logging
from src.whitehead.analysis import AnalysisReport, analyze_automorphism
from src.whitehead.pnp import PNPKind

logger = setup_logging("cli")

VERSION = "0.1.0"
SCHEMA_VERSION = "1.0"

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1

FORMATS = ("json", "csv", "text")


@dataclass
class Request:
    """A parsed invocation with every input loaded and validated."""

    command: str
    options: argparse.Namespace
    config: dict
    limits: AnalysisLimits
    phi: FreeAutomorphism | None = None
    graphs: tuple[MarkedGraph, ...] = ()
    mu: StepDistribution | None = None
    walk: WalkConfig | None = None

    @property
    def format(self) -> str:
        if self.options.format:
            return self.options.format
        return "csv" if self.command == "walk" else "json"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freewalk",
        description="Train tracks, Whitehead graphs and random walks on "
                    "Out(F_r).")
    parser.add_argument(
        "--version", action="version",
        version=f"freewalk {VERSION} (report schema {SCHEMA_VERSION})")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None,
                        help="YAML configuration (default: FREEWALK_CONFIG)")
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--out", default=None, help="output file")
    common.add_argument("--strict", action="store_true",
                        help="exit 1 on inconclusive outcomes")

    automorphism = argparse.ArgumentParser(add_help=False)
    source = automorphism.add_mutually_exclusive_group(required=True)
    source.add_argument("--images", nargs="+", metavar="WORD",
                        help="images of the basis, e.g. b c ab")
    source.add_argument("--input", metavar="JSON",
                        help='file with {"rank": r, "images": [...]}')
    automorphism.add_argument("--no-auto-reduce", action="store_true",
                              help="reject unreduced images")

    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("analyze", parents=[common, automorphism],
                        help="full classification of one automorphism")
    traintrack = commands.add_parser(
        "traintrack", parents=[common, automorphism],
        help="train track representative or reduction witness")
    traintrack.add_argument("--trace", action="store_true",
                            help="include every move in the report")
    traintrack.add_argument("--check-moves", action="store_true",
                            help="verify the outer class after every move")
    commands.add_parser("invert", parents=[common, automorphism],
                        help="inverse automorphism")

    distance = commands.add_parser("distance", parents=[common],
                                   help="Lipschitz distance of two points")
    distance.add_argument("--source", required=True, metavar="JSON")
    distance.add_argument("--target", required=True, metavar="JSON")
    distance.add_argument("--projection", action="store_true",
                          help="also list the free factor projections")

    walk = commands.add_parser("walk", parents=[common],
                               help="random walk experiment")
    walk.add_argument("--rank", type=int, default=None)
    walk.add_argument("--steps", type=int, default=None)
    walk.add_argument("--checkpoints", default=None,
                      help="comma separated, e.g. 5,10,20,40")
    walk.add_argument("--trials", type=int, default=None)
    walk.add_argument("--seed", type=int, required=True)
    walk.add_argument("--mu", default=None, metavar="JSON",
                      help="step distribution (default: reference "
                           "distribution with the principal seed)")
    walk.add_argument("--also-inverse", action="store_true")
    walk.add_argument("--workers", type=int, default=None)
    walk.add_argument("--records", default=None, metavar="CSV",
                      help="also write the per-checkpoint records")

    seed = commands.add_parser("seed", parents=[common],
                               help="resolve the principal seed")
    seed.add_argument("--rank", type=int, default=3)
    seed.add_argument("--no-search", action="store_true",
                      help="only accept the cached seed")
    return parser


def _read_json(file_path: str) -> dict:
    try:
        with open(file_path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"{file_path}: {e}") from e


def _load_automorphism(options: argparse.Namespace) -> FreeAutomorphism:
    if options.input:
        payload = _read_json(options.input)
    else:
        payload = {"rank": len(options.images), "images": options.images}
    try:
        return FreeAutomorphism.from_dict(
            payload, auto_reduce=not options.no_auto_reduce)
    except (NotAnAutomorphism, RankMismatch, IndexOutOfRank) as e:
        raise ValidationError(str(e)) from e


def _load_point(file_path: str) -> MarkedGraph:
    payload = _read_json(file_path)
    try:
        return outer_space_point(MarkedGraph.from_dict(payload))
    except (ParseError, ValidationError):
        raise
    except FreeWalkError as e:
        raise ValidationError(f"{file_path}: {e}") from e


def _parse_checkpoints(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ParseError(f"--checkpoints: {e}") from e


def _walk_distribution(options: argparse.Namespace, config: dict,
                       limits: AnalysisLimits) -> StepDistribution:
    if options.mu:
        return load_distribution(options.mu)
    validate_config(config, required_keys=["paths"])
    paths = config["paths"]
    validate_config(paths, required_keys=["mu_reference", "seeds_file"])
    base = load_distribution(paths["mu_reference"])
    principal = resolve_principal_seed(
        base.rank, paths["seeds_file"],
        SeedSearch.from_config(config), limits)
    return reference_distribution(principal, base)


def parse_inputs(options: argparse.Namespace) -> Request:
    """
    Load and validate every input named by ``options``.

    :raises ParseError: If a file cannot be read or parsed.
    :raises ValidationError: If parsed input violates a precondition.
    """
    config = load_yaml_config(options.config)
    limits = AnalysisLimits.from_config(config)
    request = Request(options.command, options, config, limits)
    if options.command in ("analyze", "traintrack", "invert"):
        request.phi = _load_automorphism(options)
    elif options.command == "distance":
        request.graphs = (_load_point(options.source),
                          _load_point(options.target))
    elif options.command == "walk":
        request.mu = _walk_distribution(options, config, limits)
        if options.rank is not None and options.rank != request.mu.rank:
            raise ValidationError(
                f"--rank {options.rank} but the distribution has rank "
                f"{request.mu.rank}")
        request.walk = WalkConfig.from_config(
            config, steps=options.steps,
            checkpoints=_parse_checkpoints(options.checkpoints),
            trials=options.trials, seed=options.seed,
            workers=options.workers, also_inverse=options.also_inverse,
            limits=limits)
    return request


def _emit(request: Request, payload: dict, frame: pd.DataFrame,
          text: str) -> str:
    out = request.options.out
    if request.format == "json":
        body = write_json_report({"schema_version": SCHEMA_VERSION,
                                  **payload}, out)
    elif request.format == "csv":
        body = write_csv_report(frame, out)
    else:
        body = text
        if out:
            with open(out, "w", encoding="utf-8") as handle:
                handle.write(text + "\n")
            logger.info(f"📁 Report saved to {out}")
    if not out:
        print(body.rstrip("\n"))
    return body


def _analysis_row(report: AnalysisReport) -> dict:
    payload = report.to_dict()
    flags = payload["flags"]
    return {
        "images": " ".join(payload["automorphism"]["images"]),
        "outcome": report.train_track.outcome.value,
        "lambda": report.eigenvalue,
        "k_list": ";".join(str(k) for k in report.sizes),
        "index": payload["index"],
        "fully_irreducible": flags["fully_irreducible"],
        "ageometric": flags["ageometric"],
        "triangular": flags["triangular"],
        "principal": flags["principal"],
        "pnp_status": report.pnp.kind.value if report.pnp else None,
    }


def _run_analyze(request: Request) -> int:
    report = analyze_automorphism(request.phi, request.limits)
    row = _analysis_row(report)
    text = "\n".join(f"{key}: {value}" for key, value in row.items())
    _emit(request, report.to_dict(), pd.DataFrame([row]), text)
    inconclusive = report.train_track.outcome is Outcome.INCONCLUSIVE or (
        report.pnp is not None and report.pnp.kind is PNPKind.INCONCLUSIVE)
    return EXIT_INCONCLUSIVE if request.options.strict and inconclusive \
        else EXIT_OK


def _run_traintrack(request: Request) -> int:
    limits = request.limits
    result = find_train_track(request.phi, limits.max_steps,
                              limits.eigen_tolerance,
                              limits.eigen_max_iterations,
                              check_moves=request.options.check_moves)
    payload = {"automorphism": request.phi.to_dict(),
               **result.to_dict(include_trace=request.options.trace)}
    if request.options.trace:
        frame = pd.DataFrame([{"step": i, "kind": step.kind,
                               "detail": json.dumps(step.detail,
                                                    sort_keys=True)}
                              for i, step in enumerate(result.trace.steps)],
                             columns=["step", "kind", "detail"])
    else:
        frame = pd.DataFrame([{"outcome": result.outcome.value,
                               "steps": result.steps,
                               "lambda": result.eigenvalue}])
    lines = [f"outcome: {result.outcome.value}", f"steps: {result.steps}"]
    if result.map is not None:
        lines += [f"  {edge} -> {image}"
                  for edge, image in result.map.describe().items()]
    if result.eigenvalue is not None:
        lines.append(f"lambda: {result.eigenvalue:.12g}")
    _emit(request, payload, frame, "\n".join(lines))
    return EXIT_INCONCLUSIVE if request.options.strict and \
        result.outcome is Outcome.INCONCLUSIVE else EXIT_OK


def _run_invert(request: Request) -> int:
    inverse = invert(request.phi)
    payload = {"automorphism": request.phi.to_dict(),
               "inverse": inverse.to_dict()}
    frame = pd.DataFrame([{"rank": inverse.rank,
                           "images": " ".join(str(w) or "1"
                                              for w in inverse.images)}])
    _emit(request, payload, frame, str(inverse))
    return EXIT_OK


def _run_distance(request: Request) -> int:
    source, target = request.graphs
    forward = lipschitz_distance(source, target)
    backward = lipschitz_distance(target, source)
    payload = {
        "d_cv_forward": forward.d_cv,
        "d_cv_backward": backward.d_cv,
        "d_sym": forward.d_cv + backward.d_cv,
        "witness_loop": forward.witness.name(source),
        "witness_loop_backward": backward.witness.name(target),
    }
    if request.options.projection:
        payload["projection_source"] = [
            str(f) for f in free_factor_projection(source)]
        payload["projection_target"] = [
            str(f) for f in free_factor_projection(target)]
    row = {key: value for key, value in payload.items()
           if not key.startswith("projection")}
    text = "\n".join(f"{key}: {value}" for key, value in row.items())
    _emit(request, payload, pd.DataFrame([row]), text)
    return EXIT_OK


def _run_walk(request: Request) -> int:
    options, config = request.options, request.config
    report = run_experiment(request.mu, request.walk)
    summary = report.summary
    out = options.out
    default_out = out is None and request.format == "csv"
    if default_out:
        output_dir = config.get("paths", {}).get("output_dir", "data/reports")
        out = os.path.join(output_dir, f"walk_rank{request.mu.rank}_seed"
                                       f"{request.walk.seed}.csv")
        options.out = out
        delete_old_csv_files(
            output_dir, config.get("cleanup", {}).get("days_to_keep", 7))
    payload = {"distribution": request.mu.to_dict(),
               "steps": request.walk.steps,
               "checkpoints": list(request.walk.checkpoints),
               "trials": request.walk.trials, "seed": request.walk.seed,
               "summary": summary.to_dict(orient="records")}
    _emit(request, payload, summary, summary.to_string(index=False))
    if default_out:
        print(out)
    if options.records:
        report.records_to_csv(options.records)
    unresolved = any(r.unresolved for r in report.records)
    return EXIT_INCONCLUSIVE if options.strict and unresolved else EXIT_OK


def _run_seed(request: Request) -> int:
    options, config = request.options, request.config
    report = resolve_principal_report(
        options.rank,
        config.get("paths", {}).get("seeds_file", DEFAULT_SEEDS_FILE),
        SeedSearch.from_config(config), request.limits,
        allow_search=not options.no_search)
    row = _analysis_row(report)
    _emit(request, report.to_dict(), pd.DataFrame([row]),
          "\n".join(f"{key}: {value}" for key, value in row.items()))
    return EXIT_OK


RUNNERS = {
    "analyze": _run_analyze,
    "traintrack": _run_traintrack,
    "distance": _run_distance,
    "walk": _run_walk,
    "invert": _run_invert,
    "seed": _run_seed,
}


def execute(request: Request) -> int:
    """Run a validated request, write its artifacts, return the exit code."""
    return RUNNERS[request.command](request)


def main(argv: list[str] | None = None) -> int:
    options = build_parser().parse_args(argv)
    try:
        return execute(parse_inputs(options))
    except (ParseError, ValidationError, SeedNotFound) as e:
        logger.error(f"❌ {options.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
