"""Entry point CLI ``cvk``.

Subcommand:
- ``classify``  : report klasifikasi lengkap (JSON)
- ``truncate``  : P -> P-dagger (JSON polytope)
- ``tile``      : tiling orbit, SVG (d = 2) / PLY (d = 3) + statistik JSON
- ``limit-set`` : sampel limit set (CSV) + residual ke quadric invariant
- ``fixtures``  : daftar fixture bawaan

Exit code: 0 sukses, 2 input/validasi, 3 prasyarat ditolak, 4 abort integritas numerik.

Usage:
    cvk classify --input fixture:triangle-237
    cvk tile --input fixture:triangle-237 --depth 8 --format svg --out tiles.svg
"""

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np

from config import RunConfig, Tolerance
from cvk.catalog import FIXTURES
from cvk.classify import ZariskiKind, zariski_closure
from cvk.hilbert import AffineChart
from cvk.io import LoadedInput, dumps, envelope, load_input, polytope_to_dict
from cvk.orbit import limit_set_approx, orbit_tiles, quadric_residuals, sphere_coverage
from cvk.polytope import MirrorPolytope, containing_affine_chart, coxeter_system_of
from cvk.render import limit_set_csv, tiling_ply, tiling_svg, write_atomic
from cvk.report import polytope_report, system_report
from cvk.truncate import truncate_all
from cvk.words import coxeter_growth
from utils.errors import CvkError, IntegrityError
from utils.mlogger import LogConfig, LoggerManager, log_error, logger

log = logger.bind(module="cli")


def setup_logger(level: str = "INFO") -> None:
    """Initialize the logger for the CLI (stderr only)."""
    log_config = LogConfig(
        level=level,  # type: ignore[arg-type]
        to_terminal=True,
        to_file=False,
        format_style="simple",
        bind_context={"app": "cvk"},
        enable_exception_hooks=False,
    )
    LoggerManager(log_config).setup()


def _emit(payload: dict[str, Any] | str, out: Path | None) -> None:
    text = payload if isinstance(payload, str) else dumps(payload)
    if out is None:
        sys.stdout.write(text)
    else:
        write_atomic(out, text)
        log.info(f"output ditulis ke {out}")


def _chart(poly: MirrorPolytope, tol: Tolerance) -> AffineChart:
    try:
        return AffineChart(containing_affine_chart(poly, tol=tol))
    except CvkError:
        return AffineChart(-poly.interior)


# --- Commands ---
def cmd_classify(loaded: LoadedInput, cfg: RunConfig) -> int:
    if loaded.polytope is not None:
        report = polytope_report(loaded.polytope, loaded.name, tol=cfg.tol)
    else:
        report = system_report(loaded.system, loaded.peripherals, loaded.name, tol=cfg.tol)  # type: ignore[arg-type]
    _emit(report.to_dict(), cfg.out)
    return 0


def cmd_truncate(loaded: LoadedInput, cfg: RunConfig) -> int:
    poly = loaded.require_polytope()
    result = truncate_all(poly, tol=cfg.tol)
    payload = polytope_to_dict(result)
    payload["new_facets"] = list(result.names[poly.n_facets :])
    _emit(payload, cfg.out)
    return 0


def cmd_tile(loaded: LoadedInput, cfg: RunConfig) -> int:
    poly = loaded.require_polytope()
    depth = cfg.max_word_length
    snapshot = orbit_tiles(poly, depth, tol=cfg.tol, seed=cfg.seed)
    stats = snapshot.stats()
    oracle = coxeter_growth(coxeter_system_of(poly, tol=cfg.tol), depth)
    stats["oracle_counts"] = oracle
    stats["oracle_match"] = oracle == snapshot.counts
    if snapshot.closed:
        coverage = sphere_coverage(snapshot, 100, seed=cfg.seed, tol=cfg.tol)
        stats["sphere_coverage"] = coverage
        stats["full_sphere"] = coverage == 1.0

    if cfg.output_format in ("svg", "ply"):
        if cfg.out is None:
            log.warning(f"--format {cfg.output_format} butuh --out, hanya statistik yang dicetak")
        else:
            chart = _chart(poly, cfg.tol)
            body = tiling_svg(snapshot, chart) if cfg.output_format == "svg" else tiling_ply(snapshot, chart)
            write_atomic(cfg.out, body)
            stats["written"] = str(cfg.out)
        sys.stdout.write(dumps(envelope("tiling-stats", stats)))
        return 0
    _emit(envelope("tiling-stats", stats), cfg.out)
    return 0


def cmd_limit_set(loaded: LoadedInput, cfg: RunConfig) -> int:
    poly = loaded.require_polytope()
    sample = limit_set_approx(
        poly, cfg.n_words, cfg.word_length_range, seed=cfg.seed, tol=cfg.tol
    )
    stats: dict[str, Any] = {
        "points": len(sample.points),
        "attempts": sample.attempts,
        "min_gap": float(sample.gaps.min()),
    }
    try:
        verdict = zariski_closure(poly, tol=cfg.tol)
    except CvkError as e:
        verdict = None
        stats["quadric"] = f"unavailable: {e.message}"
    if verdict is not None and verdict.kind is ZariskiKind.CONJUGATE_SO and verdict.form is not None:
        residuals = quadric_residuals(sample, verdict.form)
        stats["quadric_residual_max"] = float(residuals.max())
        stats["quadric_residual_median"] = float(np.median(residuals))

    if cfg.output_format == "csv":
        if cfg.out is None:
            sys.stdout.write(limit_set_csv(sample))
            return 0
        write_atomic(cfg.out, limit_set_csv(sample))
        stats["written"] = str(cfg.out)
        sys.stdout.write(dumps(envelope("limit-set-stats", stats)))
        return 0
    stats["sample"] = sample.to_frame().to_dict(orient="records")
    _emit(envelope("limit-set-stats", stats), cfg.out)
    return 0


def cmd_fixtures(cfg: RunConfig) -> int:
    payload = envelope("fixtures", {
        "fixtures": [{"name": f.name, "description": f.description} for f in FIXTURES.values()],
    })
    _emit(payload, cfg.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="path JSON, fixture:<name>, atau diagram:<name>")
    common.add_argument("--depth", type=int, default=8, help="panjang word maksimum")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--eps", type=float, default=1e-9)
    common.add_argument("--delta", type=float, default=1e-6)
    common.add_argument("--grid", type=float, default=1e-6)
    common.add_argument("--out", "-o", type=Path, default=None)
    common.add_argument("--format", dest="output_format", choices=["json", "svg", "ply", "csv"], default=None)
    common.add_argument("--log-level", default="WARNING",
                        choices=["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"])

    parser = argparse.ArgumentParser(prog="cvk", description="Toolkit polytope Coxeter proyektif.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="report klasifikasi")
    sub.add_parser("truncate", parents=[common], help="truncation P -> P-dagger")
    sub.add_parser("tile", parents=[common], help="tiling orbit")
    limit = sub.add_parser("limit-set", parents=[common], help="sampel limit set")
    limit.add_argument("--n-words", type=int, default=400)
    limit.add_argument("--lengths", type=int, nargs=2, default=(10, 20), metavar=("LO", "HI"))
    sub.add_parser("fixtures", parents=[common], help="daftar fixture")
    return parser


def _default_format(command: str) -> str:
    return {"limit-set": "csv"}.get(command, "json")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logger(args.log_level)

    try:
        cfg = RunConfig(
            tol=Tolerance(eps=args.eps, delta=args.delta, grid=args.grid, audit=min(1e-9, args.grid)),
            max_word_length=args.depth,
            seed=args.seed,
            out=args.out,
            output_format=args.output_format or _default_format(args.command),
            n_words=getattr(args, "n_words", 400),
            word_length_range=tuple(getattr(args, "lengths", (10, 20))),
        )
        if args.command == "fixtures":
            return cmd_fixtures(cfg)
        if not args.input:
            parser.error(f"{args.command} membutuhkan --input")
        loaded = load_input(args.input, tol=cfg.tol)
        handler = {
            "classify": cmd_classify,
            "truncate": cmd_truncate,
            "tile": cmd_tile,
            "limit-set": cmd_limit_set,
        }[args.command]
        with LoggerManager.log_block(f"cvk {args.command}", level="DEBUG"):
            return handler(loaded, cfg)
    except CvkError as e:
        if isinstance(e, IntegrityError):
            log_error(e, f"{type(e).__name__}: {e.message}")
        else:
            log.warning(f"{type(e).__name__}: {e.message}")
        sys.stdout.write(dumps(envelope("error", e.to_dict())))
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
