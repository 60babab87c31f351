"""Line-oriented input language.

Statements end with ``;`` and ``#`` starts a comment::

    char 32003;
    ring x1..x6;                     # or: ring x y,  ring x:2 y:3 (weights)
    order degrevlex;
    matrix M = symmetric 3;          # generic r c | catalecticant r | [[x, y], [z, w]]
    ideal I = minors 2 M;            # or: minors 2 symmetric 3,  or a polynomial list
    check battery I;
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .polycore import (
    DEFAULT_CHARACTERISTIC,
    DEFAULT_MAX_DEGREE,
    GroundField,
    PolyMatrix,
    PolynomialSyntaxError,
    PolyRing,
    build_matrix,
    minors,
    parse_polynomial,
)
from .idealops import Ideal

__all__ = ["InputError", "Options", "Session", "parse_input"]


class InputError(ValueError):
    """Syntax or semantic error with a 1-based line and column."""

    def __init__(self, kind: str, message: str, line: int, column: int):
        super().__init__(f"{kind} error at line {line}, column {column}: {message}")
        self.kind = kind
        self.message = message
        self.line = line
        self.column = column


@dataclass
class Options:
    characteristic: int | None = None
    order: str | None = None
    max_degree: int = DEFAULT_MAX_DEGREE
    timeout: float | None = 600.0
    use_cache: bool = True
    as_json: bool = False

    def to_json(self) -> dict:
        return {"char": self.characteristic, "order": self.order, "max_degree": self.max_degree}


@dataclass
class Session:
    ring: PolyRing | None = None
    characteristic: int = DEFAULT_CHARACTERISTIC
    order: str = "degrevlex"
    matrices: dict[str, PolyMatrix] = field(default_factory=dict)
    ideals: dict[str, Ideal] = field(default_factory=dict)
    checks: list[tuple[str, list[str]]] = field(default_factory=list)
    source: str = ""

    def ideal(self, name: str | None = None) -> Ideal:
        if name is None:
            if not self.ideals:
                raise KeyError("session defines no ideal")
            name = "I" if "I" in self.ideals else next(iter(self.ideals))
        return self.ideals[name]

    def to_json(self) -> dict:
        ring = self.ring
        return {
            "source": self.source,
            "char": self.characteristic,
            "order": self.order,
            "ring": list(ring.variables) if ring else [],
            "weights": list(ring.weights) if ring else [],
            "ideals": {k: [str(g) for g in v.gens] for k, v in sorted(self.ideals.items())},
            "matrices": {k: [[str(e) for e in row] for row in m.rows] for k, m in sorted(self.matrices.items())},
        }


_NAME = r"[A-Za-z_][A-Za-z_0-9]*"


def _statements(text: str):
    """Yield (statement text, offset of its first non-blank character)."""
    clean = []
    for line in text.splitlines(keepends=True):
        cut = line.find("#")
        clean.append(line if cut < 0 else line[:cut] + " " * (len(line) - cut - (1 if line.endswith("\n") else 0))
                     + ("\n" if line.endswith("\n") else ""))
    body = "".join(clean)
    start = 0
    for i, ch in enumerate(body):
        if ch == ";":
            chunk = body[start:i]
            stripped = chunk.strip()
            if stripped:
                yield stripped, start + (len(chunk) - len(chunk.lstrip()))
            start = i + 1
    rest = body[start:]
    if rest.strip():
        off = start + (len(rest) - len(rest.lstrip()))
        yield None, off


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _expand_names(tokens: list[str]) -> tuple[list[str], list[int]]:
    names, weights = [], []
    for tok in tokens:
        w = 1
        if ":" in tok:
            tok, wtxt = tok.split(":", 1)
            if not wtxt.isdigit() or int(wtxt) < 1:
                raise ValueError(f"bad weight {wtxt!r}")
            w = int(wtxt)
        m = re.fullmatch(r"([A-Za-z_]+)(\d+)\.\.(?:\1)?(\d+)", tok)
        if m:
            stem, a, b = m.group(1), int(m.group(2)), int(m.group(3))
            if b < a:
                raise ValueError(f"empty range {tok!r}")
            for i in range(a, b + 1):
                names.append(f"{stem}{i}")
                weights.append(w)
        elif re.fullmatch(_NAME, tok):
            names.append(tok)
            weights.append(w)
        else:
            raise ValueError(f"bad variable name {tok!r}")
    return names, weights


def _split_top(text: str, sep: str = ",") -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


class _Parser:
    def __init__(self, text: str, options: Options | None):
        self.text = text
        self.options = options or Options()
        self.session = Session()
        if self.options.characteristic is not None:
            self.session.characteristic = self.options.characteristic
        if self.options.order is not None:
            self.session.order = self.options.order

    def error(self, kind: str, message: str, offset: int):
        line, col = _line_col(self.text, offset)
        raise InputError(kind, message, line, col)

    def need_ring(self, off: int) -> PolyRing:
        if self.session.ring is None:
            self.error("semantic", "no ring declared yet", off)
        return self.session.ring

    def poly(self, text: str, off: int):
        try:
            return parse_polynomial(text, self.need_ring(off))
        except PolynomialSyntaxError as exc:
            kind = "semantic" if exc.message.startswith("unknown variable") else "syntax"
            self.error(kind, exc.message, off + exc.position)

    def matrix_spec(self, spec: str, off: int) -> PolyMatrix:
        ring = self.need_ring(off)
        words = spec.split()
        if not words:
            self.error("syntax", "missing matrix specification", off)
        kind = words[0]
        if kind in ("generic", "symmetric", "catalecticant"):
            want = 2 if kind == "generic" else 1
            if len(words) != want + 1 or not all(w.isdigit() for w in words[1:]):
                self.error("semantic", f"{kind} expects {want} integer argument(s)", off)
            try:
                return build_matrix(kind, ring, *map(int, words[1:]))
            except ValueError as exc:
                self.error("semantic", str(exc), off)
        if spec.startswith("["):
            inner = spec.strip()
            if not (inner.startswith("[") and inner.endswith("]")):
                self.error("syntax", "unbalanced matrix brackets", off)
            rows_txt = _split_top(inner[1:-1])
            rows = []
            for rt in rows_txt:
                rt = rt.strip()
                if not (rt.startswith("[") and rt.endswith("]")):
                    self.error("syntax", "matrix rows must be bracketed lists", off)
                rows.append([self.poly(e.strip(), off) for e in _split_top(rt[1:-1])])
            if len({len(r) for r in rows}) != 1:
                self.error("semantic", "matrix rows have different lengths", off)
            return PolyMatrix(ring, rows)
        if spec in self.session.matrices:
            return self.session.matrices[spec]
        self.error("semantic", f"unknown matrix {spec!r}", off)

    def statement(self, stmt: str, off: int):
        head, _, rest = stmt.partition(" ")
        rest = rest.strip()
        s = self.session
        if head == "char":
            if not rest.isdigit():
                self.error("syntax", "char expects a non-negative integer", off)
            if s.ring is not None:
                self.error("semantic", "char must precede ring", off)
            if self.options.characteristic is None:
                s.characteristic = int(rest)
            try:
                GroundField(s.characteristic)
            except ValueError as exc:
                self.error("semantic", str(exc), off)
        elif head == "order":
            if s.ring is not None:
                self.error("semantic", "order must precede ring", off)
            if self.options.order is None:
                s.order = rest
        elif head == "ring":
            if not rest:
                self.error("syntax", "ring needs variable names", off)
            try:
                names, weights = _expand_names(rest.split())
                s.ring = PolyRing(names, s.characteristic, s.order, weights, self.options.max_degree)
            except ValueError as exc:
                self.error("semantic", str(exc), off)
        elif head in ("matrix", "ideal"):
            m = re.fullmatch(rf"({_NAME})\s*=\s*(.*)", rest, re.S)
            if not m:
                self.error("syntax", f"expected '{head} <name> = ...'", off)
            name, body = m.group(1), m.group(2).strip()
            after = stmt.index("=") + 1
            body_off = off + after + len(stmt[after:]) - len(stmt[after:].lstrip())
            if not body:
                self.error("syntax", f"empty {head} definition", body_off)
            if head == "matrix":
                s.matrices[name] = self.matrix_spec(body, body_off)
            else:
                s.ideals[name] = self.ideal_spec(body, body_off)
        elif head == "check":
            words = rest.split()
            if not words:
                self.error("syntax", "check needs an operation", off)
            s.checks.append((words[0], words[1:]))
        else:
            self.error("syntax", f"unknown statement {head!r}", off)

    def ideal_spec(self, body: str, off: int) -> Ideal:
        ring = self.need_ring(off)
        m = re.fullmatch(r"minors\s+(\d+)\s+(.+)", body, re.S)
        if m:
            M = self.matrix_spec(m.group(2).strip(), off)
            try:
                return Ideal(ring, minors(M, int(m.group(1))))
            except ValueError as exc:
                self.error("semantic", str(exc), off)
        parts = _split_top(body)
        polys = []
        pos = off
        for part in parts:
            if not part.strip():
                self.error("syntax", "empty polynomial in list", pos)
            polys.append(self.poly(part.strip(), pos + len(part) - len(part.lstrip())))
            pos += len(part) + 1
        return Ideal(ring, polys)


def parse_input(text: str, options: Options | None = None, source: str = "") -> Session:
    """Parse a session description; raises InputError with a position."""
    p = _Parser(text, options)
    for stmt, off in _statements(text):
        if stmt is None:
            p.error("syntax", "missing ';' at end of statement", off)
        p.statement(stmt, off)
    if p.session.ring is None:
        p.error("semantic", "input declares no ring", len(text))
    p.session.source = source
    return p.session
