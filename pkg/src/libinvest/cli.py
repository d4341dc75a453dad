"""Command line entry point: ``libinvest analyze`` and ``libinvest corpus``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import ProjectOptions, emit, load_manifest, load_project, run_corpus


def _log_base(text: str) -> float:
    value = float(text)
    if value <= 1:
        raise argparse.ArgumentTypeError("log base must be > 1")
    return value


def _n_star(text: str) -> int | str:
    return "auto" if text == "auto" else int(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="libinvest", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vr-mode", choices=["pooled", "summed"], default=None)
    common.add_argument("--log-base", type=_log_base, default=None)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--decimals", type=int, default=None,
                        help="display rounding for csv output")
    common.add_argument("--output", "-o", default=None, help="file to write (default stdout)")

    an = sub.add_parser("analyze", parents=[common], help="analyze one project")
    an.add_argument("--project", required=True, action="append",
                    help="program source directory or file (repeatable)")
    an.add_argument("--library", action="append", default=[],
                    help="library source directory or file (repeatable)")
    an.add_argument("--profile", default="cpp-thesis")
    an.add_argument("--name", default=None, help="project name (default: project dir name)")
    an.add_argument("--n-star", type=_n_star, default=None,
                    help="input/output parameter count, or 'auto'")

    co = sub.add_parser("corpus", parents=[common], help="analyze every project in a manifest")
    co.add_argument("--manifest", required=True)
    co.add_argument("--workers", type=int, default=None)
    return parser


def _options(args, base: ProjectOptions | None = None) -> ProjectOptions:
    base = base or ProjectOptions()
    return ProjectOptions(
        vr_mode=args.vr_mode or base.vr_mode,
        log_base=args.log_base or base.log_base,
        n_star=getattr(args, "n_star", None) if getattr(args, "n_star", None) is not None
        else base.n_star,
        decimals=args.decimals if args.decimals is not None else base.decimals,
    )


def _run(args) -> None:
    if args.command == "analyze":
        desc = {
            "name": args.name or Path(args.project[0]).resolve().name,
            "program": [str(Path(p).resolve()) for p in args.project],
            "library": [str(Path(p).resolve()) for p in args.library],
            "profile": args.profile,
            "base_dir": "/",
        }
        bundle = load_project(desc)
        opts = _options(args, bundle.options)
        report = run_corpus([bundle], opts)
    else:
        projects = load_manifest(args.manifest)
        cli_given = any(v is not None for v in (args.vr_mode, args.log_base, args.decimals))
        report = run_corpus(projects, _options(args) if cli_given else None,
                            max_workers=args.workers)
    emit(report, args.format, args.output or sys.stdout, args.decimals)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _run(args)
    except Exception as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
