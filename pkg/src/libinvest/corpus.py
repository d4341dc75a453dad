"""Project loading, end-to-end analysis, corpus runs and report output.

Manifest files are TOML::

    manifest_version = 1

    [defaults]                 # optional, applies to every project
    profile = "cpp-thesis"
    vr_mode = "pooled"         # or "summed"
    log_base = 10
    decimals = 2

    [[project]]
    name = "sample"
    program = ["src"]          # directories or files, relative to the manifest
    library = ["lib"]
    n_star = 1                 # optional; "auto" to detect from io operators
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import IO, Iterable, Mapping, Sequence

try:
    import tomllib as tomli
except ModuleNotFoundError:  # python < 3.11
    import tomli

from . import __version__
from .census import DEFAULT_LOG_BASE, classify, halstead, merge_all
from .lexicon import BUILTIN_PROFILES, LexError, detect_io_operands, load_profile, strip_comments, tokenize
from .linkage import VrMode, detect_usage, extract_components, model_params, reduction_census, used
from .metrics import InvestmentReport, cc_from_decisions, investment, reuse_percent

MANIFEST_VERSION = 1
REPORT_SCHEMA_VERSION = 1
OUTPUT_DIR_ENV = "LIBINVEST_OUTPUT_DIR"

COLUMNS = ("project", "loc_program", "loc_reused", "v_org", "v_r", "v_nr",
           "lir", "lil", "ps", "rp", "cc", "error")


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class ProjectOptions:
    vr_mode: VrMode = VrMode.POOLED
    log_base: float = DEFAULT_LOG_BASE
    n_star: int | str | None = None
    decimals: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "vr_mode", VrMode(self.vr_mode))
        if not self.log_base > 1:
            raise CorpusError(f"log_base must be > 1, got {self.log_base}")
        if self.n_star not in (None, "auto") and not (isinstance(self.n_star, int) and self.n_star >= 0):
            raise CorpusError(f"n_star must be a nonnegative integer or 'auto', got {self.n_star!r}")


@dataclass(frozen=True)
class ProjectBundle:
    name: str
    program_sources: tuple[tuple[str, str], ...]
    library_sources: tuple[tuple[str, str], ...] = ()
    profile_name: str = "cpp-thesis"
    options: ProjectOptions = field(default_factory=ProjectOptions)

    def __post_init__(self) -> None:
        if not self.program_sources:
            raise CorpusError(f"{self.name}: no program sources")
        paths = [p for p, _ in self.program_sources + self.library_sources]
        dupes = sorted({p for p in paths if paths.count(p) > 1})
        if dupes:
            raise CorpusError(f"{self.name}: duplicate source paths {dupes}")


# ---------------------------------------------------------------------------
# loading

_OPTION_KEYS = {"vr_mode", "log_base", "n_star", "decimals"}
_PROJECT_KEYS = {"name", "program", "library", "profile"} | _OPTION_KEYS


def _read_sources(entries: Sequence[str], base: Path, extensions: Sequence[str],
                  what: str) -> list[tuple[str, str]]:
    if len(set(entries)) != len(entries):
        raise CorpusError(f"duplicate {what} entries: {sorted(entries)}")
    files: list[Path] = []
    for entry in entries:
        path = (base / entry)
        if path.is_file():
            files.append(path)
        elif path.is_dir():
            files.extend(p for p in path.rglob("*")
                         if p.is_file() and (not extensions or p.suffix in extensions))
        else:
            raise CorpusError(f"missing {what} path: {path}")
    out = []
    for path in sorted(set(files), key=lambda p: p.as_posix()):
        rel = os.path.relpath(path, base).replace(os.sep, "/")
        try:
            text = path.read_bytes().decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CorpusError(f"undecodable file {rel}: byte offset {exc.start}") from exc
        out.append((rel, text))
    return out


def load_manifest(path: str | Path) -> list[dict]:
    """Project descriptors from a manifest file, defaults applied."""
    path = Path(path)
    try:
        data = tomli.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, tomli.TOMLDecodeError) as exc:
        raise CorpusError(f"cannot read manifest {path}: {exc}") from exc
    if data.get("manifest_version") != MANIFEST_VERSION:
        raise CorpusError(f"{path}: manifest_version must be {MANIFEST_VERSION}")
    defaults = data.get("defaults", {})
    projects = data.get("project", [])
    if not projects:
        raise CorpusError(f"{path}: no [[project]] entries")
    out = []
    for proj in projects:
        unknown = set(proj) - _PROJECT_KEYS
        if unknown:
            raise CorpusError(f"{path}: unknown project keys {sorted(unknown)}")
        out.append({**defaults, **proj, "base_dir": str(path.parent)})
    return out


def load_project(manifest: str | Path | Mapping) -> ProjectBundle:
    """Build a bundle from a single-project manifest file or a descriptor mapping.

    A descriptor holds the ``[[project]]`` keys plus an optional ``base_dir``
    against which relative paths are resolved.
    """
    if not isinstance(manifest, Mapping):
        descriptors = load_manifest(manifest)
        if len(descriptors) != 1:
            raise CorpusError(f"{manifest}: expected one project, found {len(descriptors)}")
        manifest = descriptors[0]
    desc = dict(manifest)
    name = desc.get("name")
    if not name:
        raise CorpusError("project needs a name")
    base = Path(desc.get("base_dir", "."))
    profile_name = desc.get("profile", "cpp-thesis")
    if profile_name not in BUILTIN_PROFILES:
        profile_name = str(base / profile_name)
    profile = load_profile(profile_name)
    as_list = lambda v: [v] if isinstance(v, str) else list(v or [])  # noqa: E731
    program = _read_sources(as_list(desc.get("program")), base, profile.extensions, "program")
    if not program:
        raise CorpusError(f"{name}: no program sources")
    library = _read_sources(as_list(desc.get("library")), base, profile.extensions, "library")
    options = ProjectOptions(**{k: desc[k] for k in _OPTION_KEYS if k in desc})
    return ProjectBundle(name, tuple(program), tuple(library), profile_name, options)


# ---------------------------------------------------------------------------
# analysis

def count_loc(sources: Iterable[str], profile) -> int:
    """Physical lines holding something other than whitespace or comments."""
    profile = load_profile(profile)
    total = 0
    for text in sources:
        stripped = strip_comments(text, profile)
        total += sum(1 for line in stripped.splitlines() if line.strip())
    return total


def _profile_for(bundle: ProjectBundle):
    return load_profile(bundle.profile_name)


def analyze(bundle: ProjectBundle) -> InvestmentReport:
    """Tokenize, tally, link against the library and evaluate every metric."""
    profile = _profile_for(bundle)
    opts = bundle.options

    program_tokens = []
    per_file = []
    cc_by_file = {}
    for path, text in bundle.program_sources:
        try:
            toks = tokenize(text, profile)
        except LexError as exc:
            raise exc.with_path(path) from exc
        program_tokens.extend(toks)
        per_file.append(classify(toks))
        cc_by_file[path] = cc_from_decisions(toks, profile)
    program_census = merge_all(per_file)

    components = extract_components(bundle.library_sources, profile, opts.log_base)
    components = detect_usage(program_tokens, components, profile)
    triple = model_params(program_census, components, opts.vr_mode, opts.log_base)

    used_comps = used(components)
    loc_program = count_loc((t for _, t in bundle.program_sources), profile)
    loc_reused = count_loc((c.body for c in used_comps), profile)

    n_star = opts.n_star
    if n_star == "auto":
        n_star = detect_io_operands(program_tokens, profile)
    hal = halstead(program_census.with_n_star(n_star), opts.log_base)

    return investment(
        triple,
        rp=reuse_percent(loc_reused, loc_program) if loc_program + loc_reused else None,
        cc=max(cc_by_file.values()),
        project=bundle.name,
        loc_program=loc_program,
        loc_reused=loc_reused,
        used_components=tuple(c.qualified_name for c in used_comps),
        cc_by_file=cc_by_file,
        program_counts=program_census.counts(),
        reduction_counts=reduction_census(components).counts(),
        halstead=hal.to_dict(),
    )


# ---------------------------------------------------------------------------
# corpus runs

@dataclass(frozen=True)
class CorpusRow:
    project: str
    loc_program: int | None = None
    loc_reused: int | None = None
    v_org: float | None = None
    v_r: float | None = None
    v_nr: float | None = None
    lir: float | None = None
    lil: float | None = None
    ps: float | None = None
    rp: float | None = None
    cc: int | None = None
    error: str | None = None

    @classmethod
    def from_report(cls, name: str, rep: InvestmentReport) -> CorpusRow:
        t = rep.triple
        return cls(name, rep.loc_program, rep.loc_reused, t.v_org, t.v_r, t.v_nr,
                   rep.lir, rep.lil, rep.ps, rep.rp, rep.cc)

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class CorpusReport:
    rows: tuple[CorpusRow, ...]
    metadata: Mapping[str, object] = field(default_factory=dict)

    def ranking(self, metric: str) -> list[str]:
        """Project names ordered by ``metric``, largest first (ties by name)."""
        ok = [r for r in self.rows if r.ok]
        return [r.project for r in sorted(ok, key=lambda r: (-getattr(r, metric), r.project))]


def _analyze_one(item, overrides: Mapping[str, object]) -> CorpusRow:
    name = item.name if isinstance(item, ProjectBundle) else (
        item.get("name", "?") if isinstance(item, Mapping) else Path(item).stem)
    try:
        bundle = item if isinstance(item, ProjectBundle) else load_project(item)
        name = bundle.name
        if overrides:
            bundle = replace(bundle, options=replace(bundle.options, **overrides))
        return CorpusRow.from_report(name, analyze(bundle))
    except Exception as exc:  # fault isolation: one bad project must not sink the corpus
        return CorpusRow(name, error=f"{type(exc).__name__}: {exc}")


def run_corpus(manifests: Sequence[str | Path | Mapping | ProjectBundle],
               options: ProjectOptions | None = None, *,
               max_workers: int | None = None,
               timestamp: str | None = None) -> CorpusReport:
    """Analyze every project; rows come back sorted by project name.

    ``options``, when given, replaces each project's own options so that all
    rows are comparable.
    """
    if not manifests:
        raise CorpusError("no projects given")
    overrides = {} if options is None else {
        "vr_mode": options.vr_mode, "log_base": options.log_base,
        "n_star": options.n_star, "decimals": options.decimals}
    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers) as pool:
            rows = list(pool.map(lambda m: _analyze_one(m, overrides), manifests))
    else:
        rows = [_analyze_one(m, overrides) for m in manifests]
    if not any(r.ok for r in rows):
        raise CorpusError("all projects failed: " + "; ".join(f"{r.project}: {r.error}" for r in rows))
    rows.sort(key=lambda r: (r.project, r.error or ""))
    opts = options or ProjectOptions()
    meta = {
        "tool": "libinvest",
        "tool_version": __version__,
        "schema_version": REPORT_SCHEMA_VERSION,
        "vr_mode": opts.vr_mode.value,
        "log_base": opts.log_base,
        "decimals": opts.decimals,
        "profile": sorted({m.profile_name if isinstance(m, ProjectBundle) else
                           (m.get("profile", "cpp-thesis") if isinstance(m, Mapping) else "manifest")
                           for m in manifests}),
        "timestamp": timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    return CorpusReport(tuple(rows), meta)


def single_report(name: str, rep: InvestmentReport, options: ProjectOptions | None = None,
                  timestamp: str | None = None) -> CorpusReport:
    opts = options or ProjectOptions()
    meta = {"tool": "libinvest", "tool_version": __version__,
            "schema_version": REPORT_SCHEMA_VERSION, "vr_mode": rep.triple.vr_mode.value,
            "log_base": opts.log_base, "decimals": opts.decimals,
            "timestamp": timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds")}
    return CorpusReport((CorpusRow.from_report(name, rep),), meta)


# ---------------------------------------------------------------------------
# output

def _display(value, decimals: int) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.{decimals}f}"
    return str(value)


def render(report: CorpusReport | InvestmentReport, fmt: str = "json",
           decimals: int | None = None) -> str:
    """Report text in ``"json"`` (full precision) or ``"csv"`` (rounded) form."""
    if isinstance(report, InvestmentReport):
        report = single_report(report.project or "project", report, timestamp="")
    if decimals is None:
        decimals = int(report.metadata.get("decimals", 2))
    if fmt == "json":
        payload = {"metadata": dict(report.metadata),
                   "columns": list(COLUMNS),
                   "rows": [{c: getattr(r, c) for c in COLUMNS} for r in report.rows]}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        for r in report.rows:
            writer.writerow([_display(getattr(r, c), decimals) for c in COLUMNS])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}; expected 'json' or 'csv'")


def emit(report: CorpusReport | InvestmentReport, fmt: str = "json",
         destination: str | Path | IO[str] | None = None, decimals: int | None = None) -> None:
    """Write a report.  A relative path lands in ``$LIBINVEST_OUTPUT_DIR`` when set."""
    text = render(report, fmt, decimals)
    if destination is None:
        import sys
        sys.stdout.write(text)
        return
    if hasattr(destination, "write"):
        destination.write(text)
        return
    path = Path(destination)
    out_dir = os.environ.get(OUTPUT_DIR_ENV)
    if out_dir and not path.is_absolute():
        path = Path(out_dir) / path
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CorpusError(f"cannot write {path}: {exc}") from exc
