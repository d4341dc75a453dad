"""Operator/operand tallies and the Halstead measures derived from them."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .lexicon import Token, TokenKind

DEFAULT_LOG_BASE = 10.0


@dataclass(frozen=True)
class TokenCensus:
    """Frequencies of every distinct operator and operand in a body of code."""

    operators: Mapping[str, int] = field(default_factory=dict)
    operands: Mapping[str, int] = field(default_factory=dict)
    n_star: int | None = None

    def __post_init__(self) -> None:
        for table in (self.operators, self.operands):
            for lexeme, freq in table.items():
                if freq < 1:
                    raise ValueError(f"frequency of {lexeme!r} must be >= 1, got {freq}")
        if self.n_star is not None and self.n_star < 0:
            raise ValueError("n_star must be nonnegative")
        # freeze a private copy so callers cannot mutate the census afterwards
        object.__setattr__(self, "operators", dict(sorted(self.operators.items())))
        object.__setattr__(self, "operands", dict(sorted(self.operands.items())))

    @property
    def n1(self) -> int:
        return len(self.operators)

    @property
    def n2(self) -> int:
        return len(self.operands)

    @property
    def N1(self) -> int:
        return sum(self.operators.values())

    @property
    def N2(self) -> int:
        return sum(self.operands.values())

    @property
    def vocabulary(self) -> int:
        return self.n1 + self.n2

    @property
    def length(self) -> int:
        return self.N1 + self.N2

    def with_n_star(self, n_star: int | None) -> TokenCensus:
        return TokenCensus(self.operators, self.operands, n_star)

    def counts(self) -> dict[str, int]:
        return {"n1": self.n1, "n2": self.n2, "N1": self.N1, "N2": self.N2}

    def to_dict(self) -> dict:
        out = {**self.counts(), "operators": dict(self.operators), "operands": dict(self.operands)}
        if self.n_star is not None:
            out["n_star"] = self.n_star
        return out


ZERO = TokenCensus()


def classify(tokens: Iterable[Token]) -> TokenCensus:
    """Tally tokens into an operator list and an operand list."""
    operators: Counter[str] = Counter()
    operands: Counter[str] = Counter()
    for tok in tokens:
        if tok.kind is TokenKind.OPERATOR:
            operators[tok.lexeme] += 1
        else:
            operands[tok.lexeme] += 1
    return TokenCensus(operators, operands)


def merge(a: TokenCensus, b: TokenCensus) -> TokenCensus:
    """Key-wise sum of two censuses.  ``n_star`` is kept only if both agree."""
    n_star = a.n_star if a.n_star == b.n_star else None
    return TokenCensus(Counter(a.operators) + Counter(b.operators),
                       Counter(a.operands) + Counter(b.operands), n_star)


def merge_all(censuses: Iterable[TokenCensus]) -> TokenCensus:
    operators: Counter[str] = Counter()
    operands: Counter[str] = Counter()
    for c in censuses:
        operators.update(c.operators)
        operands.update(c.operands)
    return TokenCensus(operators, operands)


def _log(x: float, base: float) -> float:
    return math.log(x) / math.log(base)


def _check_base(base: float) -> None:
    if not base > 1:
        raise ValueError(f"log base must be > 1, got {base}")


def _x_log_x(x: int, base: float) -> float:
    return 0.0 if x == 0 else x * _log(x, base)


def volume(census: TokenCensus, log_base: float = DEFAULT_LOG_BASE) -> float:
    """``(N1 + N2) * log(n1 + n2)``; zero when the vocabulary has at most one entry."""
    _check_base(log_base)
    n = census.vocabulary
    if n <= 1:
        return 0.0
    return census.length * _log(n, log_base)


@dataclass(frozen=True)
class HalsteadReport:
    voc: int
    length: float
    volume: float
    log_base: float
    potential_volume: float | None = None
    level: float | None = None
    difficulty: float | None = None
    effort: float | None = None
    # set when n* was given but level/difficulty/effort could not be formed
    undefined_reason: str | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def halstead(census: TokenCensus, log_base: float = DEFAULT_LOG_BASE) -> HalsteadReport:
    """All Halstead measures for ``census``.

    Estimated length uses ``n1 log n1 + n2 log n2``.  Potential volume,
    level, difficulty and effort need ``census.n_star``; without it they
    are left as ``None``.
    """
    _check_base(log_base)
    voc = census.vocabulary
    length = _x_log_x(census.n1, log_base) + _x_log_x(census.n2, log_base)
    vol = volume(census, log_base)
    if census.n_star is None:
        return HalsteadReport(voc, length, vol, log_base)

    eta = 2 + census.n_star
    potential = eta * _log(eta, log_base)
    if vol == 0.0:
        return HalsteadReport(voc, length, vol, log_base, potential,
                              undefined_reason="volume is zero")
    level = potential / vol
    return HalsteadReport(
        voc, length, vol, log_base, potential,
        level=level,
        difficulty=vol / potential,
        effort=vol / level,
    )
