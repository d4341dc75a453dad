"""Language profiles and the comment-stripping tokenizer.

A :class:`LanguageProfile` decides how raw text is cut into lexemes and
whether each lexeme counts as an operator or an operand.  Two profiles ship
with the package, ``"cpp-thesis"`` and ``"java"``; others are loaded from a
small TOML file (see :func:`parse_profile`).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import NamedTuple

try:
    import tomllib as tomli
except ModuleNotFoundError:  # python < 3.11
    import tomli

PROFILE_VERSION = 1


class LexError(ValueError):
    """Source text could not be tokenized."""

    def __init__(self, message: str, line: int, column: int, path: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        where = f"{path}:" if path else ""
        super().__init__(f"{where}{line}:{column}: {message}")

    def with_path(self, path: str) -> LexError:
        return LexError(self.message, self.line, self.column, path)


class ProfileError(ValueError):
    """A profile descriptor is unknown or malformed."""

    def __init__(self, message: str, field_name: str | None = None, line: int | None = None):
        self.field_name = field_name
        self.line = line
        parts = []
        if field_name:
            parts.append(f"field {field_name!r}")
        if line:
            parts.append(f"line {line}")
        prefix = f"{', '.join(parts)}: " if parts else ""
        super().__init__(prefix + message)


class TokenKind(enum.Enum):
    OPERATOR = "operator"
    OPERAND = "operand"


@dataclass(frozen=True, slots=True)
class Token:
    lexeme: str
    kind: TokenKind
    line: int
    column: int

    @property
    def is_operator(self) -> bool:
        return self.kind is TokenKind.OPERATOR


class PairSpan(NamedTuple):
    """Extent of a paired delimiter: ``tokens[open + 1:end]`` is its contents."""

    end: int
    close_line: int
    close_column: int


@dataclass(frozen=True)
class LanguageProfile:
    """Lexical and structural description of a C-family language."""

    name: str
    keywords: frozenset[str]
    symbolic_operators: tuple[str, ...]
    paired_delimiters: tuple[tuple[str, str], ...] = (("(", ")"), ("{", "}"), ("[", "]"))
    statement_terminators: frozenset[str] = frozenset({";"})
    io_markers: frozenset[str] = frozenset()
    decision_keywords: frozenset[str] = frozenset({"if", "for", "while", "case"})
    line_comment: str = "//"
    block_comment: tuple[str, str] = ("/*", "*/")
    string_delims: tuple[str, ...] = ('"', "'")
    identifier_start: str = "A-Za-z_"
    identifier_continue: str = "A-Za-z0-9_"
    # header names after these directives (``#include <x.h>``) are single operands
    preprocessor_marker: str = "#"
    include_directives: frozenset[str] = frozenset()
    # component extraction
    scope_separator: str = "::"
    member_access: frozenset[str] = frozenset({"."})
    container_keywords: frozenset[str] = frozenset({"class", "struct"})
    constructor_rule: str = "declaration"  # "declaration", "new" or "both"
    instantiation_keyword: str = "new"
    extensions: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        _validate(self)

    @property
    def openers(self) -> dict[str, str]:
        return dict(self.paired_delimiters)

    @property
    def closers(self) -> dict[str, str]:
        return {close: open_ for open_, close in self.paired_delimiters}

    def pair_lexeme(self, opener: str) -> str:
        return opener + self.openers[opener]

    def is_keyword(self, lexeme: str) -> bool:
        return lexeme in self.keywords

    @property
    def ordered_operators(self) -> tuple[str, ...]:
        """Symbolic operators and terminators, longest first."""
        ops = set(self.symbolic_operators) | set(self.statement_terminators)
        return tuple(sorted(ops, key=lambda s: (-len(s), s)))


_CONSTRUCTOR_RULES = {"declaration", "new", "both"}


def _validate(p: LanguageProfile) -> None:
    if not p.name:
        raise ProfileError("profile name must be non-empty", "name")
    seen: set[str] = set()
    for op in p.symbolic_operators:
        if not op or any(ch.isspace() for ch in op):
            raise ProfileError(f"invalid operator {op!r}", "symbolic_operators")
        if op in seen:
            raise ProfileError(f"duplicate symbolic operator {op!r}", "symbolic_operators")
        seen.add(op)
    delims = [c for pair in p.paired_delimiters for c in pair]
    for open_close in p.paired_delimiters:
        if len(open_close) != 2 or not all(len(c) == 1 for c in open_close):
            raise ProfileError(f"paired delimiter must be two single characters: {open_close!r}",
                               "paired_delimiters")
    if len(set(delims)) != len(delims):
        raise ProfileError("paired delimiter characters overlap", "paired_delimiters")
    clash = seen & set(delims)
    if clash:
        raise ProfileError(f"operators also declared as delimiters: {sorted(clash)}",
                           "symbolic_operators")
    if p.constructor_rule not in _CONSTRUCTOR_RULES:
        raise ProfileError(f"must be one of {sorted(_CONSTRUCTOR_RULES)}", "constructor_rule")
    if len(p.block_comment) != 2 or not all(p.block_comment):
        raise ProfileError("block comment needs an open and a close marker", "block_comment")
    try:
        re.compile(f"[{p.identifier_start}][{p.identifier_continue}]*")
    except re.error as exc:
        raise ProfileError(f"bad identifier character class: {exc}", "identifier_start") from exc


# ---------------------------------------------------------------------------
# built-in profiles

_C_FAMILY_OPERATORS = (
    "<<=", ">>=", "->*", "...",
    "::", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", ".*",
    "+", "-", "*", "/", "%", "=", "<", ">", "!", "~", "&", "|", "^",
    "?", ":", ",", ".", "#",
)

_CPP_KEYWORDS = frozenset("""
    alignas alignof and and_eq asm auto bitand bitor bool break case catch char
    char16_t char32_t class compl const constexpr const_cast continue decltype
    default delete do double dynamic_cast else enum explicit export extern false
    float for friend goto if inline int long mutable namespace new noexcept not
    not_eq nullptr operator or or_eq private protected public register
    reinterpret_cast return short signed sizeof static static_assert static_cast
    struct switch template this thread_local throw true try typedef typeid
    typename union unsigned using virtual void volatile wchar_t while xor xor_eq
    include define undef ifdef ifndef endif elif pragma
    cin cout cerr clog endl
""".split())

_JAVA_KEYWORDS = frozenset("""
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while true false null var
""".split())

CPP_THESIS = LanguageProfile(
    name="cpp-thesis",
    keywords=_CPP_KEYWORDS,
    symbolic_operators=_C_FAMILY_OPERATORS,
    io_markers=frozenset({">>", "<<"}),
    decision_keywords=frozenset({"if", "for", "while", "case", "catch"}),
    include_directives=frozenset({"include"}),
    member_access=frozenset({".", "->"}),
    container_keywords=frozenset({"class", "struct", "namespace", "union"}),
    constructor_rule="both",
    extensions=(".cpp", ".cc", ".cxx", ".c", ".h", ".hpp", ".hh"),
)

JAVA = LanguageProfile(
    name="java",
    keywords=_JAVA_KEYWORDS,
    symbolic_operators=tuple(op for op in _C_FAMILY_OPERATORS
                             if op not in {"->*", ".*", "#"}) + (">>>", ">>>=", "@"),
    decision_keywords=frozenset({"if", "for", "while", "case", "catch"}),
    preprocessor_marker="",
    container_keywords=frozenset({"class", "interface", "enum"}),
    constructor_rule="new",
    extensions=(".java",),
)

BUILTIN_PROFILES: dict[str, LanguageProfile] = {p.name: p for p in (CPP_THESIS, JAVA)}


# ---------------------------------------------------------------------------
# profile files

_LIST_FIELDS = {
    "keywords", "symbolic_operators", "statement_terminators", "io_markers",
    "decision_keywords", "string_delims", "include_directives", "member_access",
    "container_keywords", "extensions",
}
_STR_FIELDS = {
    "name", "line_comment", "identifier_start", "identifier_continue",
    "preprocessor_marker", "scope_separator", "constructor_rule", "instantiation_keyword",
}
_SPECIAL_FIELDS = {"paired_delimiters", "block_comment"}
_META_FIELDS = {"profile_version", "extends"}


def _key_line(text: str, key: str) -> int | None:
    match = re.search(rf"^\s*{re.escape(key)}\s*=", text, re.MULTILINE)
    return text.count("\n", 0, match.start()) + 1 if match else None


def parse_profile(text: str) -> LanguageProfile:
    """Build a profile from TOML text.

    Recognised keys are the :class:`LanguageProfile` field names plus
    ``profile_version`` (required, currently 1) and ``extends`` (name of a
    built-in to start from).  Any list field ``foo`` may instead be given as
    ``extra_foo`` to append to the inherited value.
    """
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        line = getattr(exc, "lineno", None)
        raise ProfileError(str(exc), line=line) from exc

    def fail(msg: str, key: str) -> ProfileError:
        return ProfileError(msg, key, _key_line(text, key))

    version = data.get("profile_version")
    if version is None:
        raise ProfileError("missing profile_version", "profile_version")
    if version != PROFILE_VERSION:
        raise fail(f"unsupported version {version!r}", "profile_version")

    base_name = data.get("extends")
    if base_name is not None:
        if base_name not in BUILTIN_PROFILES:
            raise fail(f"unknown base profile {base_name!r}", "extends")
        values = {f.name: getattr(BUILTIN_PROFILES[base_name], f.name)
                  for f in fields(LanguageProfile)}
    else:
        values = {}

    for key, raw in data.items():
        if key in _META_FIELDS:
            continue
        target = key[len("extra_"):] if key.startswith("extra_") else key
        if key.startswith("extra_") and target not in _LIST_FIELDS:
            raise fail("extra_ prefix only applies to list fields", key)
        if target in _LIST_FIELDS:
            if not isinstance(raw, list) or not all(isinstance(v, str) for v in raw):
                raise fail("expected a list of strings", key)
            if key.startswith("extra_"):
                raw = list(values.get(target, ())) + raw
            if target == "symbolic_operators":
                dupes = sorted({v for v in raw if raw.count(v) > 1})
                if dupes:
                    raise fail(f"duplicate symbolic operator(s) {dupes}", key)
                values[target] = tuple(raw)
            elif target in ("string_delims", "extensions"):
                values[target] = tuple(raw)
            else:
                values[target] = frozenset(raw)
        elif target in _STR_FIELDS:
            if not isinstance(raw, str):
                raise fail("expected a string", key)
            values[target] = raw
        elif target == "paired_delimiters":
            if not isinstance(raw, list) or not all(isinstance(v, str) and len(v) == 2 for v in raw):
                raise fail('expected a list of two-character strings such as "()"', key)
            values[target] = tuple((v[0], v[1]) for v in raw)
        elif target == "block_comment":
            if not (isinstance(raw, list) and len(raw) == 2 and all(isinstance(v, str) for v in raw)):
                raise fail("expected [open, close]", key)
            values[target] = tuple(raw)
        else:
            raise fail("unknown field", key)

    for required in ("name", "keywords", "symbolic_operators"):
        if required not in values:
            raise ProfileError("missing required field", required)
    try:
        return LanguageProfile(**values)
    except ProfileError as exc:
        raise ProfileError(str(exc).split(": ", 1)[-1], exc.field_name,
                           _key_line(text, exc.field_name or "")) from exc


def load_profile(spec: str | Path | LanguageProfile) -> LanguageProfile:
    """Resolve a built-in name, a profile file path, or pass a profile through."""
    if isinstance(spec, LanguageProfile):
        return spec
    if isinstance(spec, str) and spec in BUILTIN_PROFILES:
        return BUILTIN_PROFILES[spec]
    path = Path(spec)
    if not path.is_file():
        raise ProfileError(f"unknown profile {str(spec)!r} (built-ins: {sorted(BUILTIN_PROFILES)})")
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ProfileError(f"cannot read {path}: {exc}") from exc
    return parse_profile(text)


def with_operators(profile: LanguageProfile, *extra: str) -> LanguageProfile:
    """Copy of ``profile`` with additional symbolic operators."""
    return replace(profile, symbolic_operators=profile.symbolic_operators + extra)


# ---------------------------------------------------------------------------
# tokenizer

_NUMBER = re.compile(r"(?:\d[\w']*(?:\.[\w']*)?|\.\d[\w']*)(?:(?<=[eEpP])[+-]\w+)?")


@dataclass
class _Cursor:
    text: str
    pos: int = 0
    line: int = 1
    col: int = 1
    _line_start: int = field(default=0, repr=False)

    def advance(self, n: int) -> None:
        chunk = self.text[self.pos:self.pos + n]
        newlines = chunk.count("\n")
        if newlines:
            self.line += newlines
            self._line_start = self.pos + chunk.rfind("\n") + 1
        self.pos += n
        self.col = self.pos - self._line_start + 1


def _comment_spans(cur: _Cursor, profile: LanguageProfile) -> tuple[int, int, int] | None:
    """If a comment starts at the cursor return (start, end, kind)."""
    text, pos = cur.text, cur.pos
    if profile.line_comment and text.startswith(profile.line_comment, pos):
        end = text.find("\n", pos)
        return pos, len(text) if end < 0 else end, 0
    open_, close = profile.block_comment
    if text.startswith(open_, pos):
        end = text.find(close, pos + len(open_))
        if end < 0:
            raise LexError("unterminated block comment", cur.line, cur.col)
        return pos, end + len(close), 1
    return None


def _string_end(text: str, pos: int, quote: str, line: int, col: int) -> int:
    i = pos + 1
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            i += 2
            continue
        if ch == quote:
            return i + 1
        if ch == "\n":
            break
        i += 1
    raise LexError("unterminated string literal", line, col)


def tokenize_spans(source: str, profile: LanguageProfile) -> tuple[list[Token], dict[int, PairSpan]]:
    """Tokenize and also report where each paired delimiter closes.

    Paired delimiters become a single operator token (``"()"``) at the
    position of the opening character; the returned mapping sends the index
    of that token to a :class:`PairSpan`.
    """
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise LexError(f"undecodable byte at offset {exc.start}", 1, 1) from exc

    ident_re = re.compile(f"[{profile.identifier_start}][{profile.identifier_continue}]*")
    ident_start = re.compile(f"[{profile.identifier_start}]")
    operators = profile.ordered_operators
    openers, closers = profile.openers, profile.closers

    tokens: list[Token] = []
    spans: dict[int, PairSpan] = {}
    stack: list[tuple[str, int, int, int]] = []  # opener, token index, line, col
    cur = _Cursor(source)
    text = source
    line_has_token = False
    directive_line = False

    def emit(lexeme: str, kind: TokenKind) -> None:
        nonlocal line_has_token
        tokens.append(Token(lexeme, kind, cur.line, cur.col))
        line_has_token = True

    while cur.pos < len(text):
        ch = text[cur.pos]
        if ch == "\n":
            line_has_token = directive_line = False
            cur.advance(1)
            continue
        if ch.isspace() or (ch == "\\" and text.startswith("\n", cur.pos + 1)):
            cur.advance(1 if ch != "\\" else 2)
            continue
        comment = _comment_spans(cur, profile)
        if comment:
            start, end, _ = comment
            cur.advance(end - start)
            continue

        if ch in profile.string_delims:
            end = _string_end(text, cur.pos, ch, cur.line, cur.col)
            emit(text[cur.pos:end], TokenKind.OPERAND)
            cur.advance(end - cur.pos)
            continue

        # header name after "#include"
        if (ch == "<" and directive_line and len(tokens) >= 2
                and tokens[-1].lexeme in profile.include_directives
                and tokens[-2].lexeme == profile.preprocessor_marker):
            end = text.find(">", cur.pos)
            newline = text.find("\n", cur.pos)
            if end >= 0 and (newline < 0 or end < newline):
                emit(text[cur.pos:end + 1], TokenKind.OPERAND)
                cur.advance(end + 1 - cur.pos)
                continue

        if ch.isdigit() or (ch == "." and text[cur.pos + 1:cur.pos + 2].isdigit()):
            m = _NUMBER.match(text, cur.pos)
            emit(m.group(), TokenKind.OPERAND)
            cur.advance(m.end() - cur.pos)
            continue

        if ident_start.match(ch):
            m = ident_re.match(text, cur.pos)
            word = m.group()
            emit(word, TokenKind.OPERATOR if profile.is_keyword(word) else TokenKind.OPERAND)
            cur.advance(len(word))
            continue

        if ch in openers:
            stack.append((ch, len(tokens), cur.line, cur.col))
            emit(profile.pair_lexeme(ch), TokenKind.OPERATOR)
            cur.advance(1)
            continue
        if ch in closers:
            if not stack:
                raise LexError(f"unmatched {ch!r}", cur.line, cur.col)
            opener, index, line, col = stack.pop()
            if closers[ch] != opener:
                raise LexError(f"{ch!r} closes {opener!r} opened at {line}:{col}", cur.line, cur.col)
            spans[index] = PairSpan(len(tokens), cur.line, cur.col)
            cur.advance(1)
            continue

        for op in operators:
            if text.startswith(op, cur.pos):
                if op == profile.preprocessor_marker and not line_has_token:
                    directive_line = True
                emit(op, TokenKind.OPERATOR)
                cur.advance(len(op))
                break
        else:
            raise LexError(f"unexpected character {ch!r}", cur.line, cur.col)

    if stack:
        opener, _, line, col = stack[-1]
        raise LexError(f"unclosed {opener!r}", line, col)
    return tokens, spans


def tokenize(source: str, profile: LanguageProfile) -> list[Token]:
    """Split ``source`` into operator and operand tokens, dropping comments."""
    return tokenize_spans(source, profile)[0]


def strip_comments(source: str, profile: LanguageProfile) -> str:
    """Blank out comments, keeping every other character (and all newlines) in place."""
    out = []
    cur = _Cursor(source)
    text = source
    while cur.pos < len(text):
        ch = text[cur.pos]
        if ch in profile.string_delims:
            try:
                end = _string_end(text, cur.pos, ch, cur.line, cur.col)
            except LexError:
                end = len(text)
            out.append(text[cur.pos:end])
            cur.advance(end - cur.pos)
            continue
        comment = _comment_spans(cur, profile)
        if comment:
            start, end, _ = comment
            out.append("".join(c if c == "\n" else " " for c in text[start:end]))
            cur.advance(end - start)
            continue
        out.append(ch)
        cur.advance(1)
    return "".join(out)


def detect_io_operands(tokens: list[Token], profile: LanguageProfile) -> int:
    """Best-effort input/output parameter count.

    Counts distinct operands that directly follow an io marker such as
    ``>>`` or ``<<``.  String literals are not parameters and are skipped.
    """
    found = set()
    for prev, tok in zip(tokens, tokens[1:]):
        if (prev.lexeme in profile.io_markers and tok.kind is TokenKind.OPERAND
                and tok.lexeme[:1] not in profile.string_delims):
            found.add(tok.lexeme)
    return len(found)
