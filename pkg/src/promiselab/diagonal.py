"""Gap languages and delayed diagonalization.

The cost model is abstract but faithful: one accounting unit per
simulated machine step, per word enumerated in a contradiction scan and
per classification call.  A costed function reports (value, cost) for
each argument; the time-construction wrapper returns
r(n) = value + cost + n + 1, so the wrapped value dominates both the
input value and its own computation cost.  That domination is what makes
the budgeted gap-membership test exact: an iterate whose evaluation cost
alone exceeds the budget |x| + 1 provably has value above |x|, so
aborting it never changes the interval parity.

Membership in the gap language of r holds when the word's length falls
in an even-indexed interval [r^n(0), r^(n+1)(0)).  The diagonalization
construction mixes two problems A and A' along these intervals, choosing
r large enough that every even interval contains a word contradicting
the corresponding presented machine (and every odd interval one for the
other presentation), and ships the prefix-marking reduction to the
marked union of A and A'.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Literal

from .enumeration import Enumeration
from .errors import (AccountingError, FuelCap, NoContradictionFound,
                     NoInstanceOfA, NotTimeConstructible)
from . import tm
from .promise import ReductionFn, TotalDecider, Verdict, marked_union
from .words import words_of_length, words_up_to

REPRESENTABLE = "representable"
PRESENTABLE = "presentable"

# Per-contradiction search: lengths scanned above the floor, and the
# total number of words examined before giving up.
DEFAULT_SEARCH_CAP = 8
WORD_SCAN_BUDGET = 1 << 14


@dataclass(frozen=True)
class CostedFunction:
    """A map on the naturals together with exact cost accounting."""

    name: str
    eval: Callable[[int], tuple[int, int]]
    gap_admissible: bool = False

    def value(self, n: int) -> int:
        return self.eval(n)[0]

    def __call__(self, n: int) -> tuple[int, int]:
        return self.eval(n)


def costed_toy(name: str, f: Callable[[int], int],
               gap_admissible: bool = True) -> CostedFunction:
    """Wrap a plain function with unit evaluation cost."""
    return CostedFunction(name, lambda n: (f(n), 1), gap_admissible)


def affine_costed(slope: int, offset: int) -> CostedFunction:
    """r(n) = slope*n + offset with unit cost; slope, offset >= 1 keeps
    r(n) > n."""
    if slope < 1 or offset < 1:
        raise ValueError("need slope >= 1 and offset >= 1")
    return costed_toy(f"affine({slope},{offset})",
                      lambda n: slope * n + offset)


def _memoized(fn: Callable[[int], tuple[int, int]]) -> Callable[[int], tuple[int, int]]:
    cache: dict[int, tuple[int, int]] = {}

    def wrapped(n: int) -> tuple[int, int]:
        if n not in cache:
            cache[n] = fn(n)
        return cache[n]

    return wrapped


def eval_counted(tc: tm.MachineDesc, n: int, fuel_cap: int = 100_000) -> int:
    """Step count of a time-constructing machine on length-n inputs.

    Verified on two inputs of that length (all zeros and all ones);
    disagreement raises NotTimeConstructible, exceeding the hard cap
    raises FuelCap.
    """
    samples = ["0" * n] if n == 0 else ["0" * n, "1" * n]
    counts = []
    for word in samples:
        result = tm.run(tc, [word], fuel_cap)
        if isinstance(result, tm.FuelExhaustedResult):
            raise FuelCap(f"time constructor ran past {fuel_cap} steps")
        counts.append(result.steps)
    if len(set(counts)) != 1:
        raise NotTimeConstructible(
            f"step counts {counts} differ on length-{n} inputs")
    return counts[0]


def time_constructor_costed(tc: tm.MachineDesc,
                            fuel_cap: int = 100_000) -> CostedFunction:
    """Costed view of a step-counting machine: cost = steps simulated."""

    def evaluate(n: int) -> tuple[int, int]:
        value = eval_counted(tc, n, fuel_cap)
        return value, value * (1 if n == 0 else 2)

    return CostedFunction("counted-machine", _memoized(evaluate))


def time_construct_wrap(f: CostedFunction) -> CostedFunction:
    """r(n) = f(n).value + f(n).cost + n + 1.

    Guarantees r(n) >= f(n).value, r(n) > n, and cost(r(n)) <= r(n);
    the last inequality is the accounting form of time-constructibility.
    """

    def evaluate(n: int) -> tuple[int, int]:
        value, cost = f.eval(n)
        return value + cost + n + 1, cost + 1

    return CostedFunction(f"wrap({f.name})", _memoized(evaluate),
                          gap_admissible=True)


def _metered_eval(r: CostedFunction, n: int, budget: int) -> tuple[int, bool]:
    """Evaluate one iterate under a budget.

    Returns (value, aborted).  An aborted evaluation spent more than the
    budget; since cost never exceeds value for admissible functions, its
    value provably exceeds the budget too, so callers may treat it as
    "too large" without looking at it.
    """
    value, cost = r.eval(n)
    if cost > value:
        raise AccountingError(
            f"{r.name}({n}) reports cost {cost} above value {value}")
    if value <= n:
        raise ValueError(f"{r.name}({n}) = {value} is not above {n}")
    return value, cost > budget


def gap_member(r: CostedFunction, x: str | int) -> bool:
    """Budgeted membership of a word (or a bare length) in the gap language.

    Iterates the interval limits 0, r(0), r(r(0)), ... with each
    evaluation metered against |x| + 1 accounting units; an aborted
    iterate is treated as exceeding |x|.  Equal to the unbudgeted
    reference on every input, in polynomially many accounting units.
    """
    length = x if isinstance(x, int) else len(x)
    budget = length + 1
    limit = 0
    k = 0
    while True:
        value, aborted = _metered_eval(r, limit, budget)
        if aborted or value > length:
            return k % 2 == 0
        limit = value
        k += 1


def gap_intervals(r: CostedFunction, max_length: int) -> list[tuple[int, int, bool]]:
    """(start, end, member) rows of all intervals touching [0, max_length]."""
    rows = []
    limit = 0
    k = 0
    while limit <= max_length:
        value, _ = r.eval(limit)
        rows.append((limit, value, k % 2 == 0))
        limit = value
        k += 1
    return rows


def _scan_contradiction(
    a: TotalDecider,
    machine: TotalDecider,
    n: int,
    mode: str,
    cap: int,
    machine_index: int = -1,
) -> tuple[str, int]:
    """Smallest word z (canonical order) with |z| > n separating a from
    the machine's problem; returns (word, accounting cost)."""
    representable = mode == REPRESENTABLE
    if mode not in (REPRESENTABLE, PRESENTABLE):
        raise ValueError(f"unknown mode {mode!r}")
    cost = 0
    scanned = 0
    for length in range(n + 1, n + cap + 1):
        for z in words_of_length(length):
            scanned += 1
            if scanned > WORD_SCAN_BUDGET:
                raise NoContradictionFound(machine_index, n, cap)
            cost += 3  # one word enumerated, two classification calls
            va = a.classify(z)
            vm = machine.classify(z)
            a_minus_m = (va is Verdict.YES and vm is not Verdict.YES) or \
                        (va is Verdict.NO and vm is not Verdict.NO)
            if a_minus_m:
                return z, cost
            if not representable:
                m_minus_a = (vm is Verdict.YES and va is not Verdict.YES) or \
                            (vm is Verdict.NO and va is not Verdict.NO)
                if m_minus_a:
                    return z, cost
    raise NoContradictionFound(machine_index, n, cap)


def find_contradiction(
    a: TotalDecider,
    machine: TotalDecider,
    n: int,
    mode: str,
    cap: int = DEFAULT_SEARCH_CAP,
) -> str:
    """The word witnessing that the machine does not capture a above n.

    In representable mode the word separates a one-sidedly (a's verdict
    is committed, the machine's differs); in presentable mode either
    side's committed verdict may do the separating.
    """
    return _scan_contradiction(a, machine, n, mode, cap)[0]


@dataclass(frozen=True)
class DiagInstance:
    a: TotalDecider
    a_prime: TotalDecider
    pres_c: Enumeration
    pres_c_prime: Enumeration
    mode_c: str = PRESENTABLE
    mode_c_prime: str = PRESENTABLE
    search_cap: int = DEFAULT_SEARCH_CAP

    def __post_init__(self):
        if self.search_cap < 1:
            raise ValueError("search cap must be at least 1")


@dataclass(frozen=True)
class ContradictionWitness:
    side: Literal["even", "odd"]
    machine_index: int
    interval_index: int
    interval_start: int
    interval_end: int
    word: str
    a_verdict: Verdict
    machine_verdict: Verdict


@dataclass(frozen=True)
class DiagResult:
    b: TotalDecider
    r: CostedFunction
    reduction: ReductionFn
    witnesses: tuple[ContradictionWitness, ...]
    reduction_to_a: ReductionFn | None = None
    q: CostedFunction | None = None
    q_prime: CostedFunction | None = None


def build_r_components(inst: DiagInstance) -> tuple[CostedFunction,
                                                    CostedFunction,
                                                    CostedFunction]:
    """(q, q', r) of the construction.

    q(n) is one more than the longest of the contradicting words above n
    for the first n+1 machines of the first presentation, q'(n) likewise
    for the second; r time-constructs their pointwise maximum, hence
    r(n) > n and r(n) >= max(q(n), q'(n)).
    """

    def q_eval(pres: Enumeration, a: TotalDecider, mode: str) -> Callable[[int], tuple[int, int]]:
        def evaluate(n: int) -> tuple[int, int]:
            best = 0
            cost = 0
            for i in range(n + 1):
                z, c = _scan_contradiction(a, pres.produce(i), n, mode,
                                           inst.search_cap, machine_index=i)
                cost += c + 1  # classification bookkeeping per machine
                best = max(best, len(z))
            return best + 1, cost
        return evaluate

    q = CostedFunction("q", _memoized(q_eval(inst.pres_c, inst.a, inst.mode_c)))
    q_prime = CostedFunction("q'", _memoized(
        q_eval(inst.pres_c_prime, inst.a_prime, inst.mode_c_prime)))

    def combined(n: int) -> tuple[int, int]:
        v1, c1 = q.eval(n)
        v2, c2 = q_prime.eval(n)
        return max(v1, v2), c1 + c2

    return q, q_prime, time_construct_wrap(CostedFunction("max(q,q')", combined))


def build_r(inst: DiagInstance) -> CostedFunction:
    return build_r_components(inst)[2]


def _interval_starts(r: CostedFunction) -> Iterator[tuple[int, int]]:
    """Yield (interval index, lower limit) pairs 0, r(0), r(r(0)), ..."""
    limit = 0
    k = 0
    while True:
        yield k, limit
        limit = r.value(limit)
        k += 1


def _witness_for(inst: DiagInstance, r: CostedFunction, side: str,
                 i: int) -> ContradictionWitness:
    want_even = side == "even"
    for k, start in _interval_starts(r):
        if (k % 2 == 0) == want_even and start >= i:
            break
    a = inst.a if want_even else inst.a_prime
    pres = inst.pres_c if want_even else inst.pres_c_prime
    mode = inst.mode_c if want_even else inst.mode_c_prime
    machine = pres.produce(i)
    z, _ = _scan_contradiction(a, machine, start, mode, inst.search_cap,
                               machine_index=i)
    return ContradictionWitness(
        side="even" if want_even else "odd",
        machine_index=i,
        interval_index=k,
        interval_start=start,
        interval_end=r.value(start),
        word=z,
        a_verdict=a.classify(z),
        machine_verdict=machine.classify(z),
    )


def diagonalize(inst: DiagInstance, witness_bound: int = 3) -> DiagResult:
    """The full construction: mixer decider, reduction, witness log.

    The mixer answers like a on words whose length falls in an even
    interval and like a_prime otherwise; the reduction prefixes "0" or
    "1" accordingly, mapping into the marked union of the two problems.
    The log records, for the first witness_bound machines of each
    presentation, a contradicting word inside an interval of the correct
    parity.
    """
    q, q_prime, r = build_r_components(inst)
    a, a_prime = inst.a, inst.a_prime

    def mix(x: str) -> Verdict:
        return a.classify(x) if gap_member(r, x) else a_prime.classify(x)

    b = TotalDecider(f"diag({a.tag};{a_prime.tag})", fn=mix)
    reduction = ReductionFn(
        "gap-mark", fn=lambda x: ("0" if gap_member(r, x) else "1") + x)
    witnesses = []
    for i in range(witness_bound):
        witnesses.append(_witness_for(inst, r, "even", i))
    for i in range(witness_bound):
        witnesses.append(_witness_for(inst, r, "odd", i))
    return DiagResult(b, r, reduction, tuple(witnesses),
                      q=q, q_prime=q_prime)


def ladner(
    a: TotalDecider,
    pres_c: Enumeration,
    mode_c: str,
    pres_harder: Enumeration,
    search_cap: int = DEFAULT_SEARCH_CAP,
    witness_bound: int = 3,
    no_instance_scan: int = 1 << 12,
) -> DiagResult:
    """Intermediate-problem construction below a.

    Diagonalizes a against pres_c and the constant-no problem against
    pres_harder (the presentation of the problems a Cook-reduces to),
    then post-composes the marked-union reduction with the map sending
    "0"+x to x and "1"+w to a fixed no-instance of a, so the produced
    problem reduces to a directly.  Its odd intervals blow no-instance
    holes into a.
    """
    const_no = TotalDecider("const-no", fn=lambda x: Verdict.NO)
    inst = DiagInstance(a, const_no, pres_c, pres_harder,
                        mode_c, PRESENTABLE, search_cap)
    result = diagonalize(inst, witness_bound)
    no_instance = None
    for scanned, w in enumerate(words_up_to(no_instance_scan.bit_length() + 1)):
        if scanned >= no_instance_scan:
            break
        if a.classify(w) is Verdict.NO:
            no_instance = w
            break
    if no_instance is None:
        raise NoInstanceOfA(f"no no-instance of {a.tag} within {no_instance_scan} words")
    r = result.r
    target = no_instance

    def to_a(x: str) -> str:
        return x if gap_member(r, x) else target

    return DiagResult(result.b, result.r, result.reduction, result.witnesses,
                      reduction_to_a=ReductionFn("gap-or-default", fn=to_a),
                      q=result.q, q_prime=result.q_prime)


def marked_union_of(inst: DiagInstance) -> TotalDecider:
    """Convenience: the reduction target of the construction."""
    return marked_union(inst.a, inst.a_prime)
