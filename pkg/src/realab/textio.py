"""Line-oriented text format for lattices, descended lattices and certificates.

::

    # comment
    lattice rect-sqrt2
    g = 1
    field = Q(sqrt 2)
    F = [[0/1 + 1/1 w]]
    glue = []

Entries are ``p/q`` or ``p/q + r/s w`` where ``w`` is the square root of the
declared discriminant; the parser also accepts integers, bare ``w`` terms
and terms in either order. Documents start at a ``lattice <name>`` or
``descended <name>`` header. Optional keys: ``S``, ``Q`` (matrices) and
``verdict``; descended documents carry ``P`` and ``theta`` instead of ``F``
and ``glue``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exact import ExactMatrix, ExactScalar
from .lattice import DescendedLattice, GlueGroup, RealLattice, check_descended, check_real


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ValidationError(ValueError):
    def __init__(self, name: str, codes: list[str], line: int):
        super().__init__(f"line {line}: {name}: invalid ({', '.join(codes)})")
        self.name = name
        self.codes = codes
        self.line = line


@dataclass
class LatticeDocument:
    name: str
    lattice: RealLattice | None = None
    descended: DescendedLattice | None = None
    S: ExactMatrix | None = None
    Q: ExactMatrix | None = None
    verdict: str | None = None

    @property
    def g(self) -> int:
        return self.lattice.g if self.lattice is not None else self.descended.g

    @property
    def d(self) -> int | None:
        return self.lattice.d if self.lattice is not None else self.descended.d


# --------------------------------------------------------------------------
# literals

_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+)(?:\s*/\s*(\d+))?)?\s*(\*?\s*w)?\s*"
)
_FIELD = re.compile(r"^Q(?:\(\s*sqrt\s*(\d+)\s*\))?$")


def parse_scalar(text: str, d: int | None, line: int = 0, column: int = 1) -> ExactScalar:
    """Parse a field literal such as ``-3/4 + 1/2 w`` or ``2w - 1``."""
    s = text.strip()
    if not s:
        raise ParseError("empty entry", line, column)
    pos = 0
    a = Fraction(0)
    b = Fraction(0)
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, den, surd = m.groups()
        if m.end() == pos or (num is None and surd is None) or (sign is None and not first):
            raise ParseError(f"bad number literal {text.strip()!r}", line, column + pos)
        if den is not None and int(den) == 0:
            raise ParseError("zero denominator", line, column + pos)
        value = Fraction(int(num), int(den or 1)) if num is not None else Fraction(1)
        if sign == "-":
            value = -value
        if surd:
            if d is None:
                raise ParseError("'w' used in a rational field", line, column + pos)
            b += value
        else:
            a += value
        pos = m.end()
        first = False
    return ExactScalar(a, b, d)


def parse_field(text: str, line: int, column: int) -> int | None:
    m = _FIELD.match(text.strip())
    if not m:
        raise ParseError(f"bad field declaration {text.strip()!r}", line, column)
    if m.group(1) is None:
        return None
    d = int(m.group(1))
    try:
        ExactScalar(0, 0, d)
    except ValueError as exc:
        raise ParseError(str(exc), line, column) from None
    return d


def _split_top(text: str, start: int, line: int) -> list[tuple[str, int]]:
    """Comma-separated items of a bracketed list at nesting depth one."""
    s = text.strip()
    offset = start + (len(text) - len(text.lstrip()))
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError("expected a bracketed list", line, offset + 1)
    inner = s[1:-1]
    items = []
    depth = 0
    begin = 0
    for k, ch in enumerate(inner):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced brackets", line, offset + k + 2)
        elif ch == "," and depth == 0:
            items.append((inner[begin:k], offset + 1 + begin))
            begin = k + 1
    if depth != 0:
        raise ParseError("unbalanced brackets", line, offset + 1)
    if inner.strip():
        items.append((inner[begin:], offset + 1 + begin))
    return items


def parse_matrix(text: str, d: int | None, line: int, start: int = 0) -> ExactMatrix:
    rows = []
    for row_text, row_col in _split_top(text, start, line):
        entries = _split_top(row_text, row_col, line)
        rows.append([parse_scalar(e, d, line, c + 1 + len(e) - len(e.lstrip())) for e, c in entries])
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("matrix rows must be nonempty and of equal length", line, start + 1)
    return ExactMatrix(rows, d)


def parse_glue(text: str, g: int, line: int, start: int = 0) -> list[tuple[int, ...]]:
    vectors = []
    for item, col in _split_top(text, start, line):
        word = item.strip()
        col += len(item) - len(item.lstrip()) + 1
        parts = word.split("|")
        if len(parts) != 2:
            raise ParseError(f"glue vector {word!r} must look like xbits|ybits", line, col)
        for part, where in ((parts[0], col), (parts[1], col + len(parts[0]) + 1)):
            if len(part) != g:
                raise ParseError(f"glue bit-string {part!r} has length {len(part)}, expected {g}", line, where)
            if set(part) - {"0", "1"}:
                raise ParseError(f"glue bit-string {part!r} is not binary", line, where)
        vectors.append(tuple(int(ch) for ch in parts[0] + parts[1]))
    return vectors


# --------------------------------------------------------------------------
# documents

_HEADER = re.compile(r"^(lattice|descended)\s+(\S+)\s*$")
_KEYS = {"g", "field", "F", "glue", "S", "Q", "verdict", "P", "theta"}


def _strip_comment(raw: str) -> str:
    k = raw.find("#")
    return raw if k < 0 else raw[:k]


def parse(text: str) -> list[LatticeDocument]:
    """Parse every document in ``text``; validates each lattice."""
    blocks: list[tuple[str, str, int, dict]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        m = _HEADER.match(body.strip())
        if m:
            blocks.append((m.group(1), m.group(2), lineno, {}))
            continue
        if "=" not in body:
            raise ParseError(f"expected 'key = value', got {body.strip()!r}", lineno, 1)
        if not blocks:
            raise ParseError("content before the first 'lattice <name>' header", lineno, 1)
        key_part, value = body.split("=", 1)
        key = key_part.strip()
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, len(key_part) - len(key_part.lstrip()) + 1)
        fields = blocks[-1][3]
        if key in fields:
            raise ParseError(f"duplicate key {key!r}", lineno, 1)
        fields[key] = (value, lineno, len(key_part) + 1)
    return [_build(*b) for b in blocks]


def _need(fields: dict, key: str, header_line: int):
    if key not in fields:
        raise ParseError(f"missing '{key} = ...'", header_line, 1)
    return fields[key]


def _build(kind: str, name: str, header_line: int, fields: dict) -> LatticeDocument:
    value, line, col = _need(fields, "g", header_line)
    try:
        g = int(value.strip())
    except ValueError:
        raise ParseError(f"g must be an integer, got {value.strip()!r}", line, col + 1) from None
    if g < 1:
        raise ParseError("g must be positive", line, col + 1)
    d = None
    if "field" in fields:
        value, line, col = fields["field"]
        d = parse_field(value, line, col + 1)
    doc = LatticeDocument(name)
    if kind == "lattice":
        for bad in ("P", "theta"):
            if bad in fields:
                raise ParseError(f"key {bad!r} belongs to descended documents", fields[bad][1], 1)
        value, line, col = _need(fields, "F", header_line)
        F = parse_matrix(value, d, line, col)
        if F.shape != (g, g):
            raise ParseError(f"F has shape {F.shape}, expected ({g}, {g})", line, col + 1)
        glue = []
        if "glue" in fields:
            value, line, col = fields["glue"]
            glue = parse_glue(value, g, line, col)
        L = RealLattice(g, F, GlueGroup(g, tuple(glue)), d)
        codes = check_real(L)
        if codes:
            raise ValidationError(name, codes, header_line)
        doc.lattice = L
    else:
        for bad in ("F", "glue"):
            if bad in fields:
                raise ParseError(f"key {bad!r} belongs to lattice documents", fields[bad][1], 1)
        mats = {}
        for key in ("P", "theta"):
            value, line, col = _need(fields, key, header_line)
            M = parse_matrix(value, d, line, col)
            if M.shape != (2 * g, 2 * g):
                raise ParseError(f"{key} has shape {M.shape}, expected ({2 * g}, {2 * g})", line, col + 1)
            mats[key] = M
        D = DescendedLattice(g, mats["P"], mats["theta"], d)
        codes = check_descended(D)
        if codes:
            raise ValidationError(name, codes, header_line)
        doc.descended = D
    for key in ("S", "Q"):
        if key in fields:
            value, line, col = fields[key]
            M = parse_matrix(value, d, line, col)
            if M.shape != (g, g):
                raise ParseError(f"{key} has shape {M.shape}, expected ({g}, {g})", line, col + 1)
            setattr(doc, key, M)
    if "verdict" in fields:
        value, line, col = fields["verdict"]
        verdict = value.strip()
        if verdict not in ("yes", "no", "unknown"):
            raise ParseError(f"verdict must be yes, no or unknown, got {verdict!r}", line, col + 1)
        doc.verdict = verdict
    return doc


# --------------------------------------------------------------------------
# emission


def format_field(d: int | None) -> str:
    return "Q" if d is None else f"Q(sqrt {d})"


def format_matrix(M: ExactMatrix) -> str:
    return "[" + ", ".join("[" + ", ".join(x.literal() for x in row) + "]" for row in M.tolist()) + "]"


def format_glue(glue: GlueGroup) -> str:
    g = glue.g
    words = ["".join(map(str, v[:g])) + "|" + "".join(map(str, v[g:])) for v in glue.basis]
    return "[" + ", ".join(words) + "]"


def emit_document(doc: LatticeDocument) -> str:
    d = doc.d
    if doc.lattice is not None:
        L = doc.lattice
        lines = [
            f"lattice {doc.name}",
            f"g = {L.g}",
            f"field = {format_field(d)}",
            f"F = {format_matrix(L.F)}",
            f"glue = {format_glue(L.glue)}",
        ]
    else:
        D = doc.descended
        lines = [
            f"descended {doc.name}",
            f"g = {D.g}",
            f"field = {format_field(d)}",
            f"P = {format_matrix(D.P)}",
            f"theta = {format_matrix(D.theta)}",
        ]
    if doc.S is not None:
        lines.append(f"S = {format_matrix(doc.S.with_field(d))}")
    if doc.Q is not None:
        lines.append(f"Q = {format_matrix(doc.Q.with_field(d))}")
    if doc.verdict is not None:
        lines.append(f"verdict = {doc.verdict}")
    return "\n".join(lines) + "\n"


def emit(docs: list[LatticeDocument]) -> str:
    return "\n".join(emit_document(doc) for doc in docs)


def lattice_document(name: str, L: RealLattice) -> LatticeDocument:
    return LatticeDocument(name, lattice=L)
