"""Deterministic Turing machines with a bit-exact Godel encoding.

Machines work over the tape alphabet {0, 1, blank} on a two-way infinite
tape.  A run starts with the (blank-separated) inputs written from cell 0
and the head on cell 0; entering a final state halts the machine, whose
output is the symbol string from the head position rightwards up to the
next blank.  One step is one transition application; building the initial
configuration is free.

Encoding grammar (every section terminated by "0", the final list closed
by "00"):

    machine    = states initial finals "00" quintuple*
    states     = 1^n "0"                   n >= 1 states
    initial    = 1^(i+1) "0"               initial state index i
    finals     = (1^(f+1) "0")*            final state indices, no repeats
    quintuple  = 1^(s+1) "0" SYM "0" 1^(t+1) "0" SYM "0" MOVE "00"
    SYM, MOVE  in {1, 10, 11}  meaning  {0, 1, blank} / {L, R, N}

A string that fails to parse, repeats a (state, symbol) pair, or leaves
some non-final (state, symbol) pair uncovered denotes the designated
trivial machine, which halts after exactly one step with output "0" on
every input.  Its canonical encoding is the empty string.
"""

from __future__ import annotations

from dataclasses import dataclass, field

BLANK = "_"
SYMBOLS = ("0", "1", BLANK)
MOVES = ("L", "R", "N")

_SYM_CODE = {"0": "1", "1": "10", BLANK: "11"}
_MOVE_CODE = {"L": "1", "R": "10", "N": "11"}
_CODE_SYM = {v: k for k, v in _SYM_CODE.items()}
_CODE_MOVE = {v: k for k, v in _MOVE_CODE.items()}
_MOVE_DELTA = {"L": -1, "R": 1, "N": 0}

Transition = tuple[int, str, str]  # (next state, written symbol, move)


@dataclass(frozen=True)
class MachineDesc:
    states: int
    initial: int
    finals: frozenset[int]
    transitions: dict[tuple[int, str], Transition] = field(default_factory=dict)
    trivial: bool = False

    def __post_init__(self):
        if self.trivial:
            return
        if self.states < 1:
            raise ValueError("machine needs at least one state")
        if not 0 <= self.initial < self.states:
            raise ValueError("initial state out of range")
        if any(not 0 <= f < self.states for f in self.finals):
            raise ValueError("final state out of range")
        for (s, sym), (t, wsym, move) in self.transitions.items():
            if not (0 <= s < self.states and 0 <= t < self.states):
                raise ValueError("transition state out of range")
            if sym not in SYMBOLS or wsym not in SYMBOLS or move not in MOVES:
                raise ValueError("bad transition alphabet")
        for s in range(self.states):
            if s in self.finals:
                continue
            for sym in SYMBOLS:
                if (s, sym) not in self.transitions:
                    raise ValueError(f"missing transition for ({s}, {sym!r})")


TRIVIAL_MACHINE = MachineDesc(states=1, initial=0, finals=frozenset(),
                              transitions={}, trivial=True)


@dataclass(frozen=True, slots=True)
class Halted:
    output: str
    steps: int


@dataclass(frozen=True, slots=True)
class FuelExhaustedResult:
    steps: int


RunResult = Halted | FuelExhaustedResult


def tape_from_inputs(inputs: list[str] | tuple[str, ...]) -> dict[int, str]:
    """Sparse tape with the inputs written from cell 0, blank-separated."""
    tape: dict[int, str] = {}
    pos = 0
    for word in inputs:
        for ch in word:
            if ch not in ("0", "1"):
                raise ValueError(f"input symbol {ch!r} is not 0 or 1")
            tape[pos] = ch
            pos += 1
        pos += 1  # separating blank
    return tape


def output_at(tape: dict[int, str], head: int) -> str:
    """Symbols from the head rightwards up to the next blank."""
    out = []
    pos = head
    while pos in tape:
        out.append(tape[pos])
        pos += 1
    return "".join(out)


def run(m: MachineDesc, inputs: list[str] | tuple[str, ...], fuel: int) -> RunResult:
    """Fuel-bounded deterministic run; pure in all arguments."""
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    if m.trivial:
        return Halted("0", 1) if fuel >= 1 else FuelExhaustedResult(0)
    tape = tape_from_inputs(inputs)
    head = 0
    state = m.initial
    steps = 0
    while state not in m.finals:
        if steps == fuel:
            return FuelExhaustedResult(steps)
        sym = tape.get(head, BLANK)
        state, wsym, move = m.transitions[(state, sym)]
        if wsym == BLANK:
            tape.pop(head, None)
        else:
            tape[head] = wsym
        head += _MOVE_DELTA[move]
        steps += 1
    return Halted(output_at(tape, head), steps)


class _ParseError(Exception):
    pass


class _Parser:
    def __init__(self, bits: str):
        if any(ch not in "01" for ch in bits):
            raise _ParseError("non-binary character")
        self.bits = bits
        self.pos = 0

    def eof(self) -> bool:
        return self.pos >= len(self.bits)

    def peek(self, offset: int = 0) -> str | None:
        p = self.pos + offset
        return self.bits[p] if p < len(self.bits) else None

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise _ParseError(f"expected {ch!r} at {self.pos}")
        self.pos += 1

    def read_unary(self) -> int:
        n = 0
        while self.peek() == "1":
            n += 1
            self.pos += 1
        if n == 0:
            raise _ParseError(f"expected unary run at {self.pos}")
        return n

    def read_code_mid(self) -> str:
        """A {1,10,11} code followed by "0" and then a unary run.

        The trailing context disambiguates: after "1" the separator is
        followed by "1", after "10" by "0" then "1".
        """
        if self.peek() != "1":
            raise _ParseError(f"expected code at {self.pos}")
        if self.peek(1) == "1":
            code = "11"
            self.pos += 2
        elif self.peek(2) == "1":
            code = "1"
            self.pos += 1
        elif self.peek(2) == "0" and self.peek(3) == "1":
            code = "10"
            self.pos += 2
        else:
            raise _ParseError(f"ambiguous code at {self.pos}")
        self.expect("0")
        return code

    def read_code_end(self) -> str:
        """A {1,10,11} code followed by "00" and then "1" or end of input."""
        if self.peek() != "1":
            raise _ParseError(f"expected code at {self.pos}")
        if self.peek(1) == "1":
            code = "11"
            self.pos += 2
        elif self.peek(3) in (None, "1"):
            code = "1"
            self.pos += 1
        elif self.peek(3) == "0" and self.peek(4) in (None, "1"):
            code = "10"
            self.pos += 2
        else:
            raise _ParseError(f"ambiguous code at {self.pos}")
        self.expect("0")
        self.expect("0")
        return code


def parse_godel_structure(bits: str):
    """Shared front end: (states, initial, finals, quintuple list).

    Quintuples are returned in input order, duplicates included; callers
    impose their own (deterministic or branching) semantics.
    """
    p = _Parser(bits)
    states = p.read_unary()
    p.expect("0")
    initial = p.read_unary() - 1
    p.expect("0")
    finals = []
    while p.peek() == "1":
        finals.append(p.read_unary() - 1)
        p.expect("0")
    p.expect("0")
    p.expect("0")
    quintuples = []
    while not p.eof():
        s = p.read_unary() - 1
        p.expect("0")
        sym = _CODE_SYM[p.read_code_mid()]
        t = p.read_unary() - 1
        p.expect("0")
        wsym = _CODE_SYM[p.read_code_mid()]
        move = _CODE_MOVE[p.read_code_end()]
        quintuples.append((s, sym, t, wsym, move))
    if len(set(finals)) != len(finals):
        raise _ParseError("repeated final state")
    return states, initial, frozenset(finals), quintuples


def decode_godel(bits: str) -> MachineDesc:
    """Total decoder: anything invalid denotes the trivial machine."""
    try:
        states, initial, finals, quintuples = parse_godel_structure(bits)
        transitions: dict[tuple[int, str], Transition] = {}
        for s, sym, t, wsym, move in quintuples:
            if (s, sym) in transitions:
                raise _ParseError("duplicate transition")
            transitions[(s, sym)] = (t, wsym, move)
        return MachineDesc(states, initial, finals, transitions)
    except (_ParseError, ValueError):
        return TRIVIAL_MACHINE


def _encode_header(states: int, initial: int, finals: frozenset[int]) -> str:
    parts = ["1" * states, "0", "1" * (initial + 1), "0"]
    for f in sorted(finals):
        parts.append("1" * (f + 1))
        parts.append("0")
    parts.append("00")
    return "".join(parts)


def encode_quintuple(s: int, sym: str, t: int, wsym: str, move: str) -> str:
    return ("1" * (s + 1) + "0" + _SYM_CODE[sym] + "0"
            + "1" * (t + 1) + "0" + _SYM_CODE[wsym] + "0"
            + _MOVE_CODE[move] + "00")


def encode_godel(m: MachineDesc) -> str:
    """Canonical encoding; decode_godel(encode_godel(m)) equals m."""
    if m.trivial:
        return ""
    parts = [_encode_header(m.states, m.initial, m.finals)]
    for (s, sym), (t, wsym, move) in sorted(
            m.transitions.items(), key=lambda kv: (kv[0][0], SYMBOLS.index(kv[0][1]))):
        parts.append(encode_quintuple(s, sym, t, wsym, move))
    return "".join(parts)


def load_machine_file(path: str) -> MachineDesc:
    """Machine files are ASCII 0/1 text with an optional trailing newline."""
    with open(path, "r", encoding="ascii") as fh:
        return decode_godel(fh.read().rstrip("\n"))
