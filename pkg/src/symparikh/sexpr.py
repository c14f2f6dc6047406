"""Position-tracking S-expression reader for SMT-LIB 2 text."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError


@dataclass(frozen=True)
class Symbol:
    name: str
    line: int = 0
    col: int = 0

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Keyword:
    name: str
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class Numeral:
    value: int
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class StringLit:
    """A string literal with ``""`` already unescaped (SMT-LIB \\u escapes are not)."""

    raw: str
    line: int = 0
    col: int = 0


class SList(list):
    def __init__(self, items=(), line: int = 0, col: int = 0):
        super().__init__(items)
        self.line = line
        self.col = col


_SIMPLE = r"[A-Za-z0-9~!@$%^&*_+=<>.?/\-]"
_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>;[^\n]*)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<string>"(?:[^"]|"")*")
  | (?P<quoted>\|[^|\\]*\|)
  | (?P<keyword>:""" + _SIMPLE + r"""+)
  | (?P<hex>\#x[0-9A-Fa-f]+)
  | (?P<bin>\#b[01]+)
  | (?P<decimal>[0-9]+\.[0-9]+)
  | (?P<symbol>""" + _SIMPLE + r"""+)
    """,
    re.VERBOSE,
)


def _positions(text: str):
    line_starts = [0]
    for m in re.finditer("\n", text):
        line_starts.append(m.end())
    return line_starts


def tokenize(text: str):
    line_starts = _positions(text)
    import bisect

    def where(pos: int) -> tuple[int, int]:
        ln = bisect.bisect_right(line_starts, pos) - 1
        return ln + 1, pos - line_starts[ln] + 1

    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m:
            line, col = where(pos)
            if text[pos] == '"':
                raise ParseError("unterminated string literal", line, col)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        line, col = where(pos)
        pos = m.end()
        if kind in ("ws", "comment"):
            continue
        yield kind, m.group(), line, col


def parse_sexprs(text: str) -> list:
    """Parse all top-level S-expressions of ``text``."""
    stack: list[SList] = [SList()]
    for kind, tok, line, col in tokenize(text):
        if kind == "lpar":
            stack.append(SList(line=line, col=col))
        elif kind == "rpar":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", line, col)
            done = stack.pop()
            stack[-1].append(done)
        elif kind == "string":
            stack[-1].append(StringLit(tok[1:-1].replace('""', '"'), line, col))
        elif kind == "quoted":
            stack[-1].append(Symbol(tok[1:-1], line, col))
        elif kind == "keyword":
            stack[-1].append(Keyword(tok[1:], line, col))
        elif kind == "hex":
            stack[-1].append(Numeral(int(tok[2:], 16), line, col))
        elif kind == "bin":
            stack[-1].append(Numeral(int(tok[2:], 2), line, col))
        elif kind == "decimal":
            raise ParseError(f"decimal literal {tok} not supported", line, col)
        elif tok.isdigit():
            stack[-1].append(Numeral(int(tok), line, col))
        else:
            stack[-1].append(Symbol(tok, line, col))
    if len(stack) != 1:
        open_list = stack[-1]
        raise ParseError("unbalanced '('", open_list.line, open_list.col)
    return list(stack[0])


_RESERVED = {"par", "NUMERAL", "DECIMAL", "STRING", "_", "!", "as", "let", "exists", "forall", "match"}
_SIMPLE_SYMBOL = re.compile(r"[A-Za-z~!@$%^&*_+=<>.?/\-]" + _SIMPLE + "*$")


def quote_symbol(name: str) -> str:
    if _SIMPLE_SYMBOL.match(name) and name not in _RESERVED:
        return name
    if "|" in name or "\\" in name:
        raise ValueError(f"symbol cannot be quoted: {name!r}")
    return f"|{name}|"


_ESCAPE = re.compile(r"\\u\{([0-9A-Fa-f]{1,5})\}|\\u([0-9A-Fa-f]{4})")


def decode_string(raw: str) -> tuple[int, ...]:
    """Codepoints of an SMT-LIB string literal body, honouring \\u escapes."""
    out: list[int] = []
    pos = 0
    for m in _ESCAPE.finditer(raw):
        out.extend(ord(c) for c in raw[pos:m.start()])
        code = int(m.group(1) or m.group(2), 16)
        if code <= 0x2FFFF:
            out.append(code)
        else:
            out.extend(ord(c) for c in m.group())
        pos = m.end()
    out.extend(ord(c) for c in raw[pos:])
    return tuple(out)


def encode_string(codes: tuple[int, ...] | list[int]) -> str:
    """Inverse of :func:`decode_string`, producing the quoted literal."""
    parts = []
    for c in codes:
        if c == 0x22:
            parts.append('""')
        elif 0x20 <= c < 0x7F and c != 0x5C:
            parts.append(chr(c))
        else:
            parts.append(f"\\u{{{c:x}}}")
    return '"' + "".join(parts) + '"'
