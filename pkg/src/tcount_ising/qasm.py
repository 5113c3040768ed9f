"""Restricted OpenQASM 2.0 reader and writer.

Accepted: the ``OPENQASM 2.0;`` header, ``include "qelib1.inc";``, a single
``qreg``, ``rx/ry/rz(expr)``, ``cx``, the fixed gates ``x y z h s sdg t tdg``
and ``barrier`` (ignored).  Everything else is rejected with a located
:class:`ParseError` rather than skipped, since dropping e.g. a ``measure``
would silently change what the circuit means.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .circuit import CNOT, FIXED_GATES, Axis, Circuit, FixedGate, Gate, Rotation


class ParseErrorKind(enum.Enum):
    SyntaxError = "QASM-SYNTAX"
    UnsupportedStatement = "QASM-UNSUPPORTED"
    UnknownGate = "QASM-UNKNOWN-GATE"
    QubitOutOfRange = "QASM-QUBIT-RANGE"
    BadAngleExpression = "QASM-BAD-ANGLE"

    @property
    def code(self) -> str:
        return self.value


@dataclass(frozen=True)
class SourceLocation:
    line: int
    column: int

    def __post_init__(self):
        if self.line < 1 or self.column < 1:
            raise ValueError("source locations are 1-based")

    def __str__(self):
        return f"{self.line}:{self.column}"


class ParseError(Exception):
    def __init__(self, kind: ParseErrorKind, message: str, location: SourceLocation):
        super().__init__(f"{location}: {kind.code}: {message}")
        self.kind = kind
        self.message = message
        self.location = location


@dataclass(frozen=True)
class _Tok:
    kind: str  # id, num, str, sym, eof
    text: str
    loc: SourceLocation


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<str>"[^"\n]*")
  | (?P<sym>->|[()\[\],;+\-*/{}=<>!^%&|.])
    """,
    re.VERBOSE,
)


def _tokenize(source: str, err_kind: ParseErrorKind = ParseErrorKind.SyntaxError) -> list[_Tok]:
    toks = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        loc = SourceLocation(line, pos - line_start + 1)
        if m is None:
            raise ParseError(err_kind, f"unexpected character {source[pos]!r}", loc)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), loc))
        pos = m.end()
    toks.append(_Tok("eof", "", SourceLocation(line, pos - line_start + 1)))
    return toks


class _ExprParser:
    """expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*;
    unary := '-' unary | atom; atom := number | 'pi' | '(' expr ')'."""

    def __init__(self, toks: Sequence[_Tok], pos: int = 0):
        self.toks = toks
        self.pos = pos

    def _bad(self, msg: str, tok: _Tok):
        raise ParseError(ParseErrorKind.BadAngleExpression, msg, tok.loc)

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expr(self) -> float:
        value = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "sym":
            op = self.next().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> float:
        value = self.unary()
        while self.peek().text in ("*", "/") and self.peek().kind == "sym":
            op = self.next()
            rhs = self.unary()
            if op.text == "*":
                value = value * rhs
            else:
                if rhs == 0:
                    self._bad("division by zero", op)
                value = value / rhs
        return value

    def unary(self) -> float:
        tok = self.peek()
        if tok.kind == "sym" and tok.text == "-":
            self.next()
            return -self.unary()
        return self.atom()

    def atom(self) -> float:
        tok = self.next()
        if tok.kind == "num":
            return float(tok.text)
        if tok.kind == "id" and tok.text == "pi":
            return math.pi
        if tok.kind == "sym" and tok.text == "(":
            value = self.expr()
            close = self.next()
            if close.text != ")":
                self._bad("expected ')'", close)
            return value
        self._bad(f"unexpected {tok.text or 'end of expression'!r} in angle expression", tok)


def parse_angle_expr(expr: str) -> float:
    """Evaluate an angle expression (literals, ``pi``, unary minus, ``+ - * /``, parentheses)."""
    toks = _tokenize(expr, ParseErrorKind.BadAngleExpression)
    p = _ExprParser(toks)
    value = p.expr()
    if p.peek().kind != "eof":
        p._bad(f"unexpected {p.peek().text!r} after expression", p.peek())
    return value


_UNSUPPORTED = {"creg", "measure", "reset", "if", "gate", "opaque", "U", "CX"}
_ROTATIONS = {"rx": Axis.X, "ry": Axis.Y, "rz": Axis.Z}


class _Parser:
    def __init__(self, source: str):
        self.toks = _tokenize(source)
        self.pos = 0
        self.reg_name: Optional[str] = None
        self.reg_size = 0
        self.gates: list[Gate] = []

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def error(self, kind: ParseErrorKind, msg: str, tok: _Tok):
        raise ParseError(kind, msg, tok.loc)

    def expect(self, text: str) -> _Tok:
        tok = self.next()
        if tok.text != text or tok.kind in ("str", "eof"):
            self.error(ParseErrorKind.SyntaxError, f"expected {text!r}, found {tok.text or 'end of input'!r}", tok)
        return tok

    def expect_kind(self, kind: str, what: str) -> _Tok:
        tok = self.next()
        if tok.kind != kind:
            self.error(ParseErrorKind.SyntaxError, f"expected {what}, found {tok.text or 'end of input'!r}", tok)
        return tok

    def parse(self) -> Circuit:
        first = True
        while self.peek().kind != "eof":
            self.statement(first)
            first = False
        if self.reg_name is None:
            self.error(ParseErrorKind.SyntaxError, "missing qreg declaration", self.peek())
        return Circuit(self.reg_size, tuple(self.gates))

    def statement(self, first: bool):
        tok = self.peek()
        if tok.kind != "id":
            self.error(ParseErrorKind.SyntaxError, f"unexpected {tok.text!r}", tok)
        word = tok.text
        if word == "OPENQASM":
            if not first:
                self.error(ParseErrorKind.SyntaxError, "OPENQASM header must come first", tok)
            self.next()
            ver = self.expect_kind("num", "version number")
            if ver.text not in ("2.0", "2"):
                self.error(ParseErrorKind.UnsupportedStatement, f"unsupported OpenQASM version {ver.text}", ver)
            self.expect(";")
        elif word == "include":
            self.next()
            path = self.expect_kind("str", "include path")
            if path.text != '"qelib1.inc"':
                self.error(ParseErrorKind.UnsupportedStatement, f"cannot include {path.text}", path)
            self.expect(";")
        elif word == "qreg":
            if self.reg_name is not None:
                self.error(ParseErrorKind.UnsupportedStatement, "only one qreg declaration is supported", tok)
            self.next()
            name = self.expect_kind("id", "register name")
            self.expect("[")
            size = self.expect_kind("num", "register size")
            if not size.text.isdigit() or int(size.text) < 1:
                self.error(ParseErrorKind.SyntaxError, "register size must be a positive integer", size)
            self.expect("]")
            self.expect(";")
            self.reg_name, self.reg_size = name.text, int(size.text)
        elif word == "barrier":
            self.next()
            while self.peek().text != ";":
                if self.peek().kind == "eof":
                    self.expect(";")
                self.next()
            self.next()
        elif word in _UNSUPPORTED:
            self.error(ParseErrorKind.UnsupportedStatement, f"{word!r} statements are not supported", tok)
        else:
            self.gate_call()

    def qarg(self) -> int:
        name = self.expect_kind("id", "qubit argument")
        if self.reg_name is None:
            self.error(ParseErrorKind.SyntaxError, "gate applied before qreg declaration", name)
        if name.text != self.reg_name:
            self.error(ParseErrorKind.SyntaxError, f"undeclared register {name.text!r}", name)
        if self.peek().text != "[":
            self.error(ParseErrorKind.UnsupportedStatement, "whole-register gate arguments are not supported", name)
        self.next()
        idx = self.expect_kind("num", "qubit index")
        if not idx.text.isdigit():
            self.error(ParseErrorKind.SyntaxError, "qubit index must be a non-negative integer", idx)
        if int(idx.text) >= self.reg_size:
            self.error(
                ParseErrorKind.QubitOutOfRange,
                f"index {idx.text} outside {self.reg_name}[{self.reg_size}]",
                idx,
            )
        self.expect("]")
        return int(idx.text)

    def gate_call(self):
        tok = self.next()
        name = tok.text
        if name not in _ROTATIONS and name not in FIXED_GATES and name != "cx":
            self.error(ParseErrorKind.UnknownGate, f"unknown gate {name!r}", tok)
        params = []
        if self.peek().text == "(":
            self.next()
            ep = _ExprParser(self.toks, self.pos)
            params.append(ep.expr())
            self.pos = ep.pos
            while self.peek().text == ",":
                self.next()
                ep = _ExprParser(self.toks, self.pos)
                params.append(ep.expr())
                self.pos = ep.pos
            self.expect(")")
        args = [self.qarg()]
        while self.peek().text == ",":
            self.next()
            args.append(self.qarg())
        self.expect(";")

        n_params = 1 if name in _ROTATIONS else 0
        n_args = 2 if name == "cx" else 1
        if len(params) != n_params or len(args) != n_args:
            self.error(
                ParseErrorKind.SyntaxError,
                f"{name} takes {n_params} parameter(s) and {n_args} qubit(s)",
                tok,
            )
        if name in _ROTATIONS:
            self.gates.append(Rotation(args[0], _ROTATIONS[name], params[0]))
        elif name == "cx":
            if args[0] == args[1]:
                self.error(ParseErrorKind.SyntaxError, "cx control and target must differ", tok)
            self.gates.append(CNOT(args[0], args[1]))
        else:
            self.gates.append(FixedGate(args[0], name))


def parse(source: str) -> Circuit:
    """Parse restricted OpenQASM 2.0 text into a :class:`Circuit`."""
    return _Parser(source).parse()


def _format_gate(g: Gate) -> str:
    if isinstance(g, Rotation):
        return f"r{g.axis.value.lower()}({g.angle:.17g}) q[{g.qubit}];"
    if isinstance(g, CNOT):
        return f"cx q[{g.control}],q[{g.target}];"
    return f"{g.name} q[{g.qubit}];"


def emit_qasm(circuit: Circuit, annotations: Optional[Sequence[Optional[str]]] = None) -> str:
    """Serialise ``circuit``; ``annotations[i]`` (e.g. "MA", "DIAG") becomes a trailing comment."""
    if annotations is not None and len(annotations) != len(circuit.gates):
        raise ValueError("need one annotation slot per gate")
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{circuit.num_qubits}];"]
    for i, g in enumerate(circuit.gates):
        text = _format_gate(g)
        if annotations is not None and annotations[i]:
            text += f" // {annotations[i]}"
        lines.append(text)
    return "\n".join(lines) + "\n"
