"""Investment metrics (LIR, LIL, PS) and the classical reuse/complexity metrics."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .lexicon import LanguageProfile, Token
from .linkage import VolumeTriple

CC_THRESHOLD = 10


class UndefinedMetricError(ArithmeticError):
    """A metric's denominator is zero."""

    def __init__(self, metric: str, denominator: str):
        self.metric = metric
        self.denominator = denominator
        super().__init__(f"{metric} is undefined: {denominator} is zero")


def _ratio(metric: str, num: float, den: float, den_name: str) -> float:
    if den == 0:
        raise UndefinedMetricError(metric, den_name)
    return num / den


# ---------------------------------------------------------------------------
# investment metrics

def lir(triple: VolumeTriple) -> float:
    """Library investment ratio: share of the no-reuse volume supplied by the library."""
    return _ratio("LIR", triple.v_r, triple.v_nr, "v_nr")


def lil(triple: VolumeTriple) -> float:
    """Library investment level: reduction volume relative to the program's own volume."""
    return _ratio("LIL", triple.v_r, triple.v_org, "v_org")


def ps(triple: VolumeTriple) -> float:
    """Program simplicity, ``1 - v_org / v_nr``."""
    return 1.0 - _ratio("PS", triple.v_org, triple.v_nr, "v_nr")


@dataclass(frozen=True)
class InvestmentReport:
    triple: VolumeTriple
    lir: float
    lil: float
    ps: float
    rp: float | None = None
    cc: int | None = None
    # supporting detail filled in by corpus.analyze
    project: str = ""
    loc_program: int | None = None
    loc_reused: int | None = None
    used_components: tuple[str, ...] = ()
    cc_by_file: Mapping[str, int] = field(default_factory=dict)
    program_counts: Mapping[str, int] = field(default_factory=dict)
    reduction_counts: Mapping[str, int] = field(default_factory=dict)
    halstead: Mapping[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "project": self.project,
            **self.triple.to_dict(),
            "lir": self.lir, "lil": self.lil, "ps": self.ps, "rp": self.rp, "cc": self.cc,
            "loc_program": self.loc_program, "loc_reused": self.loc_reused,
            "used_components": list(self.used_components),
            "cc_by_file": dict(self.cc_by_file),
            "program_census": dict(self.program_counts),
            "reduction_census": dict(self.reduction_counts),
            "halstead": dict(self.halstead),
        }


def investment(triple: VolumeTriple, rp: float | None = None, cc: int | None = None,
               **detail) -> InvestmentReport:
    """Evaluate all three investment metrics for ``triple``."""
    return InvestmentReport(triple, lir(triple), lil(triple), ps(triple), rp, cc, **detail)


# ---------------------------------------------------------------------------
# amount-of-reuse metrics

def reuse_percent(rsi: int, ssi: int) -> float:
    """Reused lines over reused plus shipped lines."""
    if rsi < 0 or ssi < 0:
        raise ValueError("line counts must be nonnegative")
    return _ratio("RP", rsi, rsi + ssi, "rsi + ssi")


def reuse_level(iu: int, eu: int, t: int) -> tuple[float, float, float]:
    """Internal, external and total reuse level as fractions of ``t`` components."""
    if iu < 0 or eu < 0 or iu + eu > t:
        raise ValueError("need 0 <= iu, eu and iu + eu <= t")
    irl = _ratio("RL", iu, t, "t")
    erl = eu / t
    return irl, erl, irl + erl


def reuse_frequency(iuf: int, euf: int, tf: int) -> tuple[float, float, float]:
    """Internal, external and total share of ``tf`` component references."""
    if iuf < 0 or euf < 0 or iuf + euf > tf:
        raise ValueError("need 0 <= iuf, euf and iuf + euf <= tf")
    irf = _ratio("RF", iuf, tf, "tf")
    erf = euf / tf
    return irf, erf, irf + erf


def reuse_density(iu: int, eu: int, total_loc: int) -> tuple[float, float, float]:
    """Reused components per line of code."""
    if iu < 0 or eu < 0:
        raise ValueError("component counts must be nonnegative")
    ird = _ratio("RD", iu, total_loc, "total_loc")
    erd = eu / total_loc
    return ird, erd, ird + erd


def reused_count(usage: Mapping[str, int], threshold: int) -> int:
    """Number of components referenced at least ``threshold`` times."""
    return sum(1 for n in usage.values() if n >= threshold)


@dataclass(frozen=True)
class ReuseFigures:
    """Raw observations behind the amount-of-reuse metrics."""

    rsi: int
    ssi: int
    iu: int = 0
    eu: int = 0
    t: int = 0
    iuf: int = 0
    euf: int = 0
    tf: int = 0
    total_loc: int = 1
    itl: int = 1
    etl: int = 1
    fresh: int | None = None

    def __post_init__(self) -> None:
        ints = [self.rsi, self.iu, self.eu, self.t, self.iuf, self.euf, self.tf]
        if any(v < 0 for v in ints):
            raise ValueError("counts must be nonnegative")
        if self.ssi < 1 or self.total_loc < 1 or self.itl < 1 or self.etl < 1:
            raise ValueError("ssi, total_loc and thresholds must be positive")
        if self.iu + self.eu > self.t:
            raise ValueError("iu + eu exceeds t")
        if self.iuf + self.euf > self.tf:
            raise ValueError("iuf + euf exceeds tf")
        if self.fresh is not None and self.fresh < 0:
            raise ValueError("fresh must be nonnegative")

    @classmethod
    def from_usage(cls, rsi: int, ssi: int, internal: Mapping[str, int],
                   external: Mapping[str, int], total_components: int, total_loc: int,
                   itl: int = 1, etl: int = 1) -> ReuseFigures:
        """Derive IU/EU and IUF/EUF from per-component reference counts."""
        iu, eu = reused_count(internal, itl), reused_count(external, etl)
        iuf = sum(n for n in internal.values() if n >= itl)
        euf = sum(n for n in external.values() if n >= etl)
        return cls(rsi, ssi, iu, eu, total_components, iuf, euf,
                   sum(internal.values()) + sum(external.values()), total_loc, itl, etl)

    def reuse_percent(self) -> float:
        return reuse_percent(self.rsi, self.ssi)

    def release_reuse_percent(self) -> float:
        """Reused lines over reused plus freshly written lines of one release."""
        if self.fresh is None:
            raise UndefinedMetricError("RP(release)", "fresh")
        return reuse_percent(self.rsi, self.fresh)

    def reuse_level(self) -> tuple[float, float, float]:
        return reuse_level(self.iu, self.eu, self.t)

    def reuse_frequency(self) -> tuple[float, float, float]:
        return reuse_frequency(self.iuf, self.euf, self.tf)

    def reuse_density(self) -> tuple[float, float, float]:
        return reuse_density(self.iu, self.eu, self.total_loc)


# ---------------------------------------------------------------------------
# cyclomatic complexity

@dataclass(frozen=True)
class ControlCounts:
    e: int
    n: int
    p: int = 1

    def __post_init__(self) -> None:
        if self.e < 0 or self.n < 1 or self.p < 1:
            raise ValueError("need e >= 0, n >= 1, p >= 1")
        if self.e < self.n - self.p:
            raise ValueError(f"{self.e} edges cannot join {self.n} nodes into {self.p} components")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[object, object]],
                   nodes: Iterable[object] = ()) -> ControlCounts:
        """Count edges, nodes and weakly connected components of a graph."""
        edges = list(edges)
        parent: dict[object, object] = {}

        def find(x: object) -> object:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for v in list(nodes) + [v for e in edges for v in e]:
            parent.setdefault(v, v)
        for a, b in edges:
            parent[find(a)] = find(b)
        roots = {find(v) for v in parent}
        return cls(len(edges), len(parent), len(roots))


class InvalidGraphError(ValueError):
    pass


def cc_from_graph(counts: ControlCounts) -> int:
    """``e - n + 2p``."""
    cc = counts.e - counts.n + 2 * counts.p
    if cc < 1:
        raise InvalidGraphError(f"cyclomatic complexity {cc} < 1 for {counts}")
    return cc


def decision_points(tokens: Sequence[Token], profile: LanguageProfile) -> int:
    return sum(1 for t in tokens if t.is_operator and t.lexeme in profile.decision_keywords)


def cc_from_decisions(tokens: Sequence[Token], profile: LanguageProfile) -> int:
    """Decision points plus one; ``else`` on its own adds nothing."""
    return decision_points(tokens, profile) + 1


def threshold_flag(cc: int) -> bool:
    """True when ``cc`` is below the usual testability limit of 10."""
    if cc < 1:
        raise ValueError("cyclomatic complexity is at least 1")
    return cc < CC_THRESHOLD
