"""Minimal OpenQASM-2-style text format.

Supported grammar (one statement per semicolon; // comments; whitespace free):

    program   : "OPENQASM 2.0;" include? statement*
    include   : "include \"qelib1.inc\";"                  (accepted, ignored)
    statement : qreg | creg | gate | measure | barrier | reset
    qreg      : "qreg" ID "[" INT "]"                      (exactly one)
    creg      : "creg" ID "[" INT "]"                      (at most one)
    gate      : NAME ("(" expr ("," expr)* ")")? arg ("," arg)*
    measure   : "measure" arg "->" arg
    barrier   : "barrier" (arg ("," arg)*)?
    reset     : "reset" arg
    arg       : ID "[" INT "]"
    expr      : arithmetic over numbers and "pi" with + - * / and parentheses

Gate names: id, x, y, z, h, s, sdg, t, tdg, u1, u2, u3, rx, ry, rz,
cx, cz, swap, ccx, plus cu1 (alias cp) so emitted QFT scores round-trip.
No custom gate definitions, no `if`, no includes beyond the stock header.

Endianness note: q[0] is qubit 0 of this package, i.e. the MOST significant
bit of basis-state integers and the leftmost character of histogram keys.
Translate little-endian conventions with `reverse_bits` at this boundary.
"""
from __future__ import annotations

import math
import re

from .circuit import Barrier, Circuit, Measure, Reset
from .gates import GateApplication, standard_gate

_GATE_NAMES = {
    "id", "x", "y", "z", "h", "s", "sdg", "t", "tdg",
    "u1", "u2", "u3", "rx", "ry", "rz",
    "cx", "cz", "swap", "ccx", "cu1", "cp",
}
_PARAM_COUNT = {"u1": 1, "u2": 2, "u3": 3, "rx": 1, "ry": 1, "rz": 1, "cu1": 1, "cp": 1}


class QasmError(ValueError):
    """Parse failure with 1-based line/column position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


def reverse_bits(key: str) -> str:
    """Convert a bitstring between MSB-first and little-endian register order."""
    return key[::-1]


def index_of_bits(key: str) -> int:
    """Basis-state integer of an MSB-first bitstring."""
    return int(key, 2)


_TOKEN = re.compile(
    r"\s*(?:(?P<comment>//[^\n]*)|(?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<id>[A-Za-z_][A-Za-z_0-9.]*)|(?P<sym>->|[\[\](),;+\-*/\"]))"
)


class _Tokens:
    def __init__(self, text: str):
        self.toks: list[tuple[str, str, int, int]] = []
        line, col = 1, 1
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                rest = text[pos:]
                if rest.strip() == "":
                    break
                bad = rest.strip()[0]
                skipped = text[pos:].index(bad)
                line += text[pos:pos + skipped].count("\n")
                raise QasmError(f"unexpected character {bad!r}", line, col)
            chunk = text[pos:m.end()]
            line += chunk.count("\n")
            col = len(chunk) - chunk.rfind("\n") if "\n" in chunk else col + len(chunk)
            if m.lastgroup != "comment":
                tok_text = m.group(m.lastgroup)
                self.toks.append((m.lastgroup, tok_text, line, col - len(tok_text)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, "", -1, -1)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, text: str):
        kind, val, line, col = self.next()
        if val != text:
            raise QasmError(f"expected {text!r}, found {val!r}", line, col)

    def at_end(self) -> bool:
        return self.i >= len(self.toks)


def _parse_expr(ts: _Tokens) -> float:
    def atom() -> float:
        kind, val, line, col = ts.next()
        if val == "-":
            return -atom()
        if val == "+":
            return atom()
        if val == "(":
            v = add()
            ts.expect(")")
            return v
        if kind == "num":
            return float(val)
        if kind == "id" and val == "pi":
            return math.pi
        raise QasmError(f"bad expression token {val!r}", line, col)

    def mul() -> float:
        v = atom()
        while ts.peek()[1] in ("*", "/"):
            op = ts.next()[1]
            rhs = atom()
            v = v * rhs if op == "*" else v / rhs
        return v

    def add() -> float:
        v = mul()
        while ts.peek()[1] in ("+", "-"):
            op = ts.next()[1]
            rhs = mul()
            v = v + rhs if op == "+" else v - rhs
        return v

    return add()


def _parse_arg(ts: _Tokens, registers: dict[str, int]) -> tuple[str, int]:
    kind, name, line, col = ts.next()
    if kind != "id":
        raise QasmError(f"expected register name, found {name!r}", line, col)
    if name not in registers:
        raise QasmError(f"unknown register {name!r}", line, col)
    ts.expect("[")
    kind, idx, line2, col2 = ts.next()
    if kind != "num" or "." in idx:
        raise QasmError(f"expected integer index, found {idx!r}", line2, col2)
    ts.expect("]")
    index = int(idx)
    if index >= registers[name]:
        raise QasmError(f"index {index} overflows {name}[{registers[name]}]", line2, col2)
    return name, index


def parse_qasm(text: str) -> Circuit:
    """Parse the documented subset into a Circuit."""
    ts = _Tokens(text)
    kind, val, line, col = ts.next()
    if val != "OPENQASM":
        raise QasmError("file must start with OPENQASM 2.0;", line, col)
    kind, ver, line, col = ts.next()
    if ver != "2.0":
        raise QasmError(f"unsupported version {ver!r}", line, col)
    ts.expect(";")

    qreg: tuple[str, int] | None = None
    creg: tuple[str, int] | None = None
    pending: list = []

    def qname() -> dict[str, int]:
        return {qreg[0]: qreg[1]} if qreg else {}

    def cname() -> dict[str, int]:
        return {creg[0]: creg[1]} if creg else {}

    while not ts.at_end():
        kind, val, line, col = ts.next()
        if val == "include":
            k2, fname, l2, c2 = ts.next()
            if fname != '"':
                raise QasmError("malformed include", l2, c2)
            parts = []
            while ts.peek()[1] != '"':
                if ts.at_end():
                    raise QasmError("unterminated include string", l2, c2)
                parts.append(ts.next()[1])
            ts.next()
            ts.expect(";")
            continue
        if val in ("qreg", "creg"):
            k2, name, l2, c2 = ts.next()
            if k2 != "id":
                raise QasmError("expected register name", l2, c2)
            ts.expect("[")
            k3, size, l3, c3 = ts.next()
            ts.expect("]")
            ts.expect(";")
            if val == "qreg":
                if qreg is not None:
                    raise QasmError("only one quantum register is supported", l2, c2)
                qreg = (name, int(size))
            else:
                if creg is not None:
                    raise QasmError("only one classical register is supported", l2, c2)
                creg = (name, int(size))
            continue
        if val == "measure":
            if qreg is None:
                raise QasmError("measure before qreg", line, col)
            _, q = _parse_arg_named(ts, qname(), line, col)
            ts.expect("->")
            _, b = _parse_arg_named(ts, cname(), line, col)
            ts.expect(";")
            pending.append(Measure(q, b))
            continue
        if val == "barrier":
            qs = []
            if ts.peek()[1] != ";":
                while True:
                    _, q = _parse_arg_named(ts, qname(), line, col)
                    qs.append(q)
                    if ts.peek()[1] != ",":
                        break
                    ts.next()
            ts.expect(";")
            pending.append(Barrier(tuple(qs) if qs else tuple(range(qreg[1] if qreg else 0))))
            continue
        if val == "reset":
            _, q = _parse_arg_named(ts, qname(), line, col)
            ts.expect(";")
            pending.append(Reset(q))
            continue
        if kind == "id" and val in _GATE_NAMES:
            params: list[float] = []
            if ts.peek()[1] == "(":
                ts.next()
                while True:
                    params.append(_parse_expr(ts))
                    if ts.peek()[1] == ")":
                        ts.next()
                        break
                    ts.expect(",")
            want = _PARAM_COUNT.get(val, 0)
            if len(params) != want:
                raise QasmError(f"{val} takes {want} parameter(s), got {len(params)}", line, col)
            args = []
            while True:
                _, q = _parse_arg_named(ts, qname(), line, col)
                args.append(q)
                if ts.peek()[1] != ",":
                    break
                ts.next()
            ts.expect(";")
            gate = standard_gate(val, tuple(params))
            try:
                pending.append(GateApplication(gate, tuple(args)))
            except ValueError as exc:
                raise QasmError(str(exc), line, col) from exc
            continue
        raise QasmError(f"unknown statement {val!r}", line, col)

    if qreg is None:
        raise QasmError("no quantum register declared", 1, 1)
    circuit = Circuit(qreg[1], creg[1] if creg else 0)
    circuit.ops.extend(pending)
    # revalidate indices against final register sizes
    for op in pending:
        if isinstance(op, GateApplication) and any(t >= circuit.n_qubits for t in op.targets):
            raise QasmError("qubit index out of range", 1, 1)
    return circuit


def _parse_arg_named(ts, registers, line, col):
    if not registers:
        raise QasmError("register not declared", line, col)
    return _parse_arg(ts, registers)


def _fmt(x: float) -> str:
    return repr(float(x))


def emit_qasm(c: Circuit) -> str:
    """Render a circuit in the documented subset; parse(emit(c)) == c."""
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f"qreg q[{c.n_qubits}];"]
    if c.n_clbits:
        lines.append(f"creg c[{c.n_clbits}];")
    for op in c.ops:
        if isinstance(op, Measure):
            lines.append(f"measure q[{op.qubit}] -> c[{op.clbit}];")
        elif isinstance(op, Barrier):
            args = ",".join(f"q[{q}]" for q in op.qubits)
            lines.append(f"barrier {args};")
        elif isinstance(op, Reset):
            lines.append(f"reset q[{op.qubit}];")
        else:
            name = op.gate.name
            if name not in _GATE_NAMES:
                raise ValueError(f"gate {name!r} is outside the QASM subset")
            params = f"({','.join(_fmt(p) for p in op.gate.params)})" if op.gate.params else ""
            args = ",".join(f"q[{q}]" for q in op.targets)
            lines.append(f"{name}{params} {args};")
    return "\n".join(lines) + "\n"
