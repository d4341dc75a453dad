"""Library components: extraction, usage detection and the volume triple."""

from __future__ import annotations

import enum
import warnings
from collections import defaultdict
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .census import DEFAULT_LOG_BASE, TokenCensus, classify, merge_all, volume
from .lexicon import LanguageProfile, LexError, PairSpan, Token, TokenKind, tokenize_spans

_ACCESS_LABELS = frozenset({"public", "private", "protected"})


class ExtractionError(ValueError):
    pass


class AmbiguousComponentWarning(UserWarning):
    """Two library components share a name and a reference could not be told apart."""


class VrMode(str, enum.Enum):
    POOLED = "pooled"
    SUMMED = "summed"


@dataclass(frozen=True)
class LibraryComponent:
    name: str
    owner: str
    census: TokenCensus
    v_ci: float
    f_ci: int = 0
    is_constructor: bool = False
    path: str = ""
    line: int = 0
    body: str = ""

    @property
    def qualified_name(self) -> str:
        return f"{self.owner}::{self.name}" if self.owner else self.name


@dataclass(frozen=True)
class VolumeTriple:
    v_org: float
    v_r: float
    vr_mode: VrMode = VrMode.POOLED

    @property
    def v_nr(self) -> float:
        return self.v_org + self.v_r

    def to_dict(self) -> dict:
        return {"v_org": self.v_org, "v_r": self.v_r, "v_nr": self.v_nr,
                "vr_mode": self.vr_mode.value}


# ---------------------------------------------------------------------------
# extraction

def _source_slice(text: str, start: tuple[int, int], end: tuple[int, int]) -> str:
    lines = text.splitlines(keepends=True)
    (l0, c0), (l1, c1) = start, end
    if l0 == l1:
        return lines[l0 - 1][c0 - 1:c1]
    parts = [lines[l0 - 1][c0 - 1:]] + lines[l0:l1 - 1] + [lines[l1 - 1][:c1]]
    return "".join(parts)


def _is_identifier(tok: Token) -> bool:
    return tok.kind is TokenKind.OPERAND and (tok.lexeme[0].isalpha() or tok.lexeme[0] == "_")


def _function_name(header: Sequence[Token], profile: LanguageProfile) -> tuple[int, str] | None:
    """Position and name of the function declared by ``header``, if any."""
    for k, tok in enumerate(header):
        if tok.lexeme == "=":
            return None
        if tok.lexeme != "()" or k == 0:
            continue
        prev = header[k - 1]
        if _is_identifier(prev):
            if k >= 2 and header[k - 2].lexeme == "@":
                continue
            if k >= 2 and header[k - 2].lexeme == "~":
                return k, "~" + prev.lexeme
            return k, prev.lexeme
        if k >= 2 and header[k - 2].lexeme == "operator":
            return k, "operator" + prev.lexeme
        if prev.is_operator and prev.lexeme in profile.keywords:
            # control statements such as ``if (...) {`` inside initializer blocks
            return None
    return None


def _container_name(header: Sequence[Token], profile: LanguageProfile) -> str | None:
    for k, tok in enumerate(header):
        if tok.lexeme in profile.container_keywords:
            for nxt in header[k + 1:]:
                if nxt.kind is TokenKind.OPERAND:
                    return nxt.lexeme
            return ""
    return None


def _extract_file(path: str, text: str, profile: LanguageProfile,
                  log_base: float) -> list[LibraryComponent]:
    try:
        tokens, spans = tokenize_spans(text, profile)
    except LexError as exc:
        raise ExtractionError(str(exc.with_path(path))) from exc
    marker = profile.preprocessor_marker
    directive_lines = {t.line for t in tokens if marker and t.lexeme == marker}
    found: list[LibraryComponent] = []

    def scan(start: int, end: int, owner: str) -> None:
        i = sig = start
        while i < end:
            tok = tokens[i]
            if tok.line in directive_lines:
                i += 1
                sig = i
                continue
            lex = tok.lexeme
            if lex in profile.statement_terminators:
                i += 1
                sig = i
                continue
            if lex == ":" and i > sig and tokens[i - 1].lexeme in _ACCESS_LABELS:
                i += 1
                sig = i
                continue
            if lex == "{}":
                span: PairSpan = spans[i]
                header = tokens[sig:i]
                fn = _function_name(header, profile)
                if fn is not None:
                    k, name = fn
                    qual = owner
                    if k >= 3 and header[k - 2].lexeme == profile.scope_separator:
                        qual = header[k - 3].lexeme
                    census = classify(tokens[sig:span.end])
                    found.append(LibraryComponent(
                        name=name,
                        owner=qual or path,
                        census=census,
                        v_ci=volume(census, log_base),
                        is_constructor=bool(qual) and name == qual,
                        path=path,
                        line=tokens[sig].line,
                        body=_source_slice(text, (tok.line, tok.column),
                                           (span.close_line, span.close_column)),
                    ))
                else:
                    container = _container_name(header, profile)
                    if container is not None or not any(t.lexeme == "=" for t in header):
                        scan(i + 1, span.end, container or owner)
                i = sig = span.end
                continue
            i += 1

    scan(0, len(tokens), "")
    return found


def extract_components(library_sources: Iterable[str | tuple[str, str]],
                       profile: LanguageProfile,
                       log_base: float = DEFAULT_LOG_BASE) -> list[LibraryComponent]:
    """Split library files into one component per function or method.

    A component runs from the start of its signature (after the previous
    statement, block or preprocessor line) to the closing brace of its body.
    Sources may be plain strings or ``(path, text)`` pairs; components come
    back in source order.
    """
    components: list[LibraryComponent] = []
    for n, item in enumerate(library_sources):
        path, text = item if isinstance(item, tuple) else (f"<library {n}>", item)
        components.extend(_extract_file(path, text, profile, log_base))
    return components


# ---------------------------------------------------------------------------
# usage

def _skip_template_args(tokens: Sequence[Token], i: int) -> int:
    """Index just past a ``<...>`` argument list starting at ``i`` (or ``i`` itself)."""
    if i >= len(tokens) or tokens[i].lexeme != "<":
        return i
    depth = 0
    for j in range(i, min(len(tokens), i + 64)):
        lex = tokens[j].lexeme
        if lex == "<":
            depth += 1
        elif lex == ">":
            depth -= 1
        elif lex == ">>":
            depth -= 2
        elif lex in (";", "{}", "()"):
            return i
        if depth <= 0:
            return j + 1
    return i


_DECLARATOR_FOLLOW = frozenset({";", "()", "=", ",", "{}"})


def _instantiates(tokens: Sequence[Token], i: int, profile: LanguageProfile) -> bool:
    rule = profile.constructor_rule
    if rule in ("new", "both") and i > 0 and tokens[i - 1].lexeme == profile.instantiation_keyword:
        return True
    if rule in ("declaration", "both"):
        j = _skip_template_args(tokens, i + 1)
        # the follower must exist, so a later token can never revoke a credit
        if j + 1 < len(tokens) and _is_identifier(tokens[j]):
            return tokens[j + 1].lexeme in _DECLARATOR_FOLLOW
    return False


def detect_usage(program_tokens: Sequence[Token], components: Sequence[LibraryComponent],
                 profile: LanguageProfile) -> list[LibraryComponent]:
    """Count direct references from the program to each component.

    A method or function is referenced when its name is followed by a call
    ``()`` or preceded by member access or scope qualification.  A
    constructor is referenced by a call, by ``new`` or by a variable
    declaration of its type, depending on the profile's constructor rule.
    Library-internal calls are not followed.
    """
    methods: dict[str, list[int]] = defaultdict(list)
    ctors: dict[str, list[int]] = defaultdict(list)
    for idx, comp in enumerate(components):
        (ctors if comp.is_constructor else methods)[comp.name].append(idx)

    freq = [0] * len(components)
    toks = program_tokens
    member = profile.member_access | {profile.scope_separator}
    for i, tok in enumerate(toks):
        if tok.kind is not TokenKind.OPERAND:
            continue
        name = tok.lexeme
        if name not in methods and name not in ctors:
            continue
        prev = toks[i - 1].lexeme if i > 0 else None
        nxt = toks[i + 1].lexeme if i + 1 < len(toks) else None
        call = nxt == "()"
        candidates: list[int] = []
        if name in methods and (call or prev in member):
            candidates = methods[name]
        elif name in ctors and (call or _instantiates(toks, i, profile)):
            candidates = ctors[name]
        if not candidates:
            continue
        if prev == profile.scope_separator and i >= 2:
            owner = toks[i - 2].lexeme
            narrowed = [c for c in candidates if components[c].owner == owner]
            candidates = narrowed or candidates
        if len(candidates) > 1:
            names = ", ".join(components[c].qualified_name for c in candidates)
            warnings.warn(f"reference to {name!r} at {tok.line}:{tok.column} matches {names}; "
                          "crediting all", AmbiguousComponentWarning, stacklevel=2)
        for c in candidates:
            freq[c] += 1
    return [replace(comp, f_ci=f) for comp, f in zip(components, freq)]


# ---------------------------------------------------------------------------
# model parameters

def used(components: Iterable[LibraryComponent]) -> list[LibraryComponent]:
    return [c for c in components if c.f_ci >= 1]


def reduction_census(components: Iterable[LibraryComponent]) -> TokenCensus:
    """Pooled census of every used component, each counted once."""
    return merge_all(c.census for c in used(components))


def model_params(program_census: TokenCensus, components: Iterable[LibraryComponent],
                 mode: VrMode | str = VrMode.POOLED,
                 log_base: float = DEFAULT_LOG_BASE) -> VolumeTriple:
    """Original volume, reduction volume and their sum.

    ``summed`` weights each used component's volume by its reference count;
    ``pooled`` takes the volume of the union of the used components' tokens.
    """
    mode = VrMode(mode)
    comps = used(components)
    v_org = volume(program_census, log_base)
    if mode is VrMode.SUMMED:
        v_r = sum(c.f_ci * volume(c.census, log_base) for c in comps)
    else:
        v_r = volume(merge_all(c.census for c in comps), log_base) if comps else 0.0
    return VolumeTriple(v_org, float(v_r), mode)
