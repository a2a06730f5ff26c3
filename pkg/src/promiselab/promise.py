"""Promise problems as three-valued total deciders, plus their algebra.

A promise problem is a disjoint pair (yes-set, no-set); words outside the
union are non-promised.  A total decider answers Yes / No / OutsidePromise
on every word, mirroring the machine outputs "1" / "0" / "10".  On top of
the deciders this module provides the difference operators, the marked
union, Karp-reduction checking on bounded word ranges, and oracle machines
with promise-respecting query semantics.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, NamedTuple

from . import tm
from .errors import CapExceeded, FuelExhausted, NonPromisedQuery, \
    NotTotalDecider
from .words import words_up_to

MAX_DIFFERENCE_BOUND = 16


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    OUTSIDE = "outside-promise"

    def __repr__(self) -> str:  # keeps test failure output short
        return self.value


_OUTPUT_VERDICT = {"1": Verdict.YES, "0": Verdict.NO, "10": Verdict.OUTSIDE}


@dataclass(frozen=True)
class TotalDecider:
    """Total classification map, either built in or backed by a machine.

    Machine-backed deciders run under their fuel policy; an output other
    than "1"/"0"/"10" (or running out of fuel) raises NotTotalDecider
    instead of silently looping or defaulting.
    """

    tag: str
    fn: Callable[[str], Verdict] | None = None
    machine: tm.MachineDesc | None = None
    fuel_policy: Callable[[int], int] | None = None

    @staticmethod
    def from_function(tag: str, fn: Callable[[str], Verdict]) -> "TotalDecider":
        return TotalDecider(tag, fn=fn)

    @staticmethod
    def from_machine(tag: str, machine: tm.MachineDesc,
                     fuel_policy: Callable[[int], int]) -> "TotalDecider":
        return TotalDecider(tag, machine=machine, fuel_policy=fuel_policy)

    def classify(self, x: str) -> Verdict:
        if self.fn is not None:
            return self.fn(x)
        assert self.machine is not None and self.fuel_policy is not None
        result = tm.run(self.machine, [x], self.fuel_policy(len(x)))
        if isinstance(result, tm.FuelExhaustedResult):
            raise NotTotalDecider(f"<no output within fuel on {x!r}>")
        verdict = _OUTPUT_VERDICT.get(result.output)
        if verdict is None:
            raise NotTotalDecider(result.output)
        return verdict


def classify(decider: TotalDecider, x: str) -> Verdict:
    return decider.classify(x)


@dataclass(frozen=True)
class ReductionFn:
    """Total word function, built in or a fuel-clocked machine."""

    tag: str
    fn: Callable[[str], str] | None = None
    machine: tm.MachineDesc | None = None
    runtime: Callable[[int], int] | None = None

    def __call__(self, x: str) -> str:
        if self.fn is not None:
            return self.fn(x)
        assert self.machine is not None and self.runtime is not None
        result = tm.run(self.machine, [x], self.runtime(len(x)))
        if isinstance(result, tm.FuelExhaustedResult):
            raise FuelExhausted(
                f"reduction {self.tag} exceeded its runtime on {x!r}")
        return result.output


@dataclass(frozen=True)
class OracleMachine:
    """Machine with one distinguished query state.

    Entering the oracle state replaces the word under the head (up to the
    next blank) by the oracle's one-symbol answer; the replacement is free,
    the entering transition costs the usual single step.
    """

    base: tm.MachineDesc
    oracle_state: int
    runtime: Callable[[int], int]


class DifferenceReport(NamedTuple):
    sym_diff: frozenset[str]     # yes/no clashes:  (Ay & Bn) | (An & By)
    diff: frozenset[str]         # one-sided:       (Ay \ By) | (An \ Bn)
    total_diff: frozenset[str]   # both-sided:      diff(A,B) | diff(B,A)


def differences(a: TotalDecider, b: TotalDecider, bound: int,
                cap: int = MAX_DIFFERENCE_BOUND) -> DifferenceReport:
    """The three difference sets over all words of length <= bound."""
    if bound > cap:
        raise CapExceeded(f"difference bound {bound} exceeds cap {cap}")
    sym, one_sided, total = set(), set(), set()
    for w in words_up_to(bound):
        va, vb = a.classify(w), b.classify(w)
        if (va is Verdict.YES and vb is Verdict.NO) or \
           (va is Verdict.NO and vb is Verdict.YES):
            sym.add(w)
        a_minus_b = (va is Verdict.YES and vb is not Verdict.YES) or \
                    (va is Verdict.NO and vb is not Verdict.NO)
        b_minus_a = (vb is Verdict.YES and va is not Verdict.YES) or \
                    (vb is Verdict.NO and va is not Verdict.NO)
        if a_minus_b:
            one_sided.add(w)
        if a_minus_b or b_minus_a:
            total.add(w)
    return DifferenceReport(frozenset(sym), frozenset(one_sided), frozenset(total))


def marked_union(a: TotalDecider, a_prime: TotalDecider) -> TotalDecider:
    """0x routes to a, 1x to a_prime; the empty word is non-promised."""

    def decide(x: str) -> Verdict:
        if x == "":
            return Verdict.OUTSIDE
        if x[0] == "0":
            return a.classify(x[1:])
        return a_prime.classify(x[1:])

    return TotalDecider(f"({a.tag})(+)({a_prime.tag})", fn=decide)


@dataclass(frozen=True)
class KarpViolation:
    word: str
    verdict: Verdict
    image: str
    image_verdict: Verdict


@dataclass(frozen=True)
class KarpReport:
    checked: int
    violations: tuple[KarpViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def karp_check(f: ReductionFn, a: TotalDecider, b: TotalDecider,
               bound: int) -> KarpReport:
    """Verify yes->yes and no->no on all words of length <= bound."""
    violations = []
    checked = 0
    for w in words_up_to(bound):
        checked += 1
        va = a.classify(w)
        if va is Verdict.OUTSIDE:
            continue
        image = f(w)
        vb = b.classify(image)
        if vb is not va:
            violations.append(KarpViolation(w, va, image, vb))
    return KarpReport(checked, tuple(violations))


def cook_run(o: OracleMachine, oracle: TotalDecider, x: str,
             fuel: int | None = None) -> bool:
    """Run an oracle machine; True means it accepts (outputs "1").

    Queries outside the oracle's promise raise NonPromisedQuery; running
    beyond the machine's own runtime bound raises FuelExhausted.
    """
    m = o.base
    if fuel is None:
        fuel = o.runtime(len(x))
    if m.trivial:
        if fuel < 1:
            _raise_fuel(o, x)
        return False
    tape = tm.tape_from_inputs([x])
    head = 0
    state = m.initial
    steps = 0
    while state not in m.finals:
        if steps == fuel:
            _raise_fuel(o, x)
        sym = tape.get(head, tm.BLANK)
        state, wsym, move = m.transitions[(state, sym)]
        if wsym == tm.BLANK:
            tape.pop(head, None)
        else:
            tape[head] = wsym
        head += {"L": -1, "R": 1, "N": 0}[move]
        steps += 1
        if state == o.oracle_state:
            word = tm.output_at(tape, head)
            answer = oracle.classify(word)
            if answer is Verdict.OUTSIDE:
                raise NonPromisedQuery(word)
            for pos in range(head, head + len(word)):
                tape.pop(pos, None)
            tape[head] = "1" if answer is Verdict.YES else "0"
    return tm.output_at(tape, head) == "1"


def _raise_fuel(o: OracleMachine, x: str):
    raise FuelExhausted(f"oracle machine exceeded its runtime on {x!r}")


def karp_to_cook(f: ReductionFn) -> OracleMachine:
    """Turn a machine-backed reduction into a one-query oracle machine.

    The machine simulates f, queries the oracle on the output, and echoes
    the answer; with oracle B it decides A on promised words whenever f
    Karp-reduces A to B.
    """
    if f.machine is None or f.runtime is None:
        raise ValueError("karp_to_cook needs a machine-backed reduction")
    base = f.machine
    query = base.states
    echo = base.states + 1
    transitions = dict(base.transitions)
    for s in base.finals:
        for sym in tm.SYMBOLS:
            transitions[(s, sym)] = (query, sym, "N")
    for sym in tm.SYMBOLS:
        transitions[(query, sym)] = (echo, sym, "N")
    composed = tm.MachineDesc(
        states=base.states + 2,
        initial=base.initial,
        finals=frozenset({echo}),
        transitions=transitions,
    )
    runtime = f.runtime
    return OracleMachine(composed, query, lambda n: runtime(n) + 2)


def _parity(x: str) -> Verdict:
    return Verdict.YES if x.count("1") % 2 == 1 else Verdict.NO


def _length_in(lo: int, hi: int) -> Callable[[str], Verdict]:
    return lambda x: Verdict.YES if lo <= len(x) <= hi else Verdict.NO


# exposed read-only: the registry is fixed at import time
BUILTIN_PROBLEMS: "MappingProxyType[str, TotalDecider]" = MappingProxyType({
    "const-yes": TotalDecider("const-yes", fn=lambda x: Verdict.YES),
    "const-no": TotalDecider("const-no", fn=lambda x: Verdict.NO),
    "parity": TotalDecider("parity", fn=_parity),
    "len-even": TotalDecider(
        "len-even", fn=lambda x: Verdict.YES if len(x) % 2 == 0 else Verdict.NO),
    "len-1-to-3": TotalDecider("len-1-to-3", fn=_length_in(1, 3)),
    # a genuinely partial promise: all-zero words are non-promised
    "ones-promise": TotalDecider(
        "ones-promise",
        fn=lambda x: Verdict.OUTSIDE if x and x.count("1") == 0
        else _parity(x)),
})


def builtin(name: str) -> TotalDecider:
    try:
        return BUILTIN_PROBLEMS[name]
    except KeyError:
        raise KeyError(f"unknown builtin problem {name!r}; "
                       f"known: {', '.join(sorted(BUILTIN_PROBLEMS))}") from None
