"""Computable series behind the recursive presentations.

Everything here is an index-to-object map on the naturals: Cantor
pairing, the series of all non-negative-coefficient polynomials, clocked
machine series for the deterministic classes, and wrappers that turn the
probabilistic and quantum deciders into presentations of their extremal
problems.  Indices decode as (machine, clock[, witness]) tuples; machines
come from the word bijection, clocks from the polynomial series.

Machines that break their clock are absorbed rather than reported: a
clocked decision machine defaults to No, a clocked function machine to
the empty word, an overlong probabilistic branch counts as rejecting,
and a generator that overruns emits the trivial circuit.  This keeps
every produced decider total.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, isqrt
from typing import Callable, Literal

from . import circuit as qc
from . import ptm as ptm_mod
from . import tm
from .errors import CapExceeded, FuelExhausted, GeneratorFuelExhausted, \
    NonPromisedQuery, WitnessSpaceTooLarge
from .promise import OracleMachine, ReductionFn, TotalDecider, Verdict, cook_run
from .words import index_to_word, words_of_length, words_up_to

# Pairing squares the machine word-index, so indices wrapping even small
# machines are astronomically large numerals; what actually needs bounding
# is the decoded description size (the index bit length) and the fuel.
MAX_ENUM_INDEX_BITS = 10 ** 6
MAX_FUEL = 10_000
MAX_WITNESS_SPACE = 4096
HARDER_SET_CHECK_CAP = 12


def _fuel(clock: Polynomial, n: int) -> int:
    return min(clock(n), MAX_FUEL)


@dataclass(frozen=True)
class Polynomial:
    """Non-negative integer coefficients, constant term first."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.coefficients):
            raise ValueError("coefficients must be non-negative")
        if self.coefficients and self.coefficients[-1] == 0:
            raise ValueError("trailing coefficient must be nonzero")

    def __call__(self, n: int) -> int:
        result = 0
        for c in reversed(self.coefficients):
            result = result * n + c
        return result

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*n" if c != 1 else "n")
            else:
                terms.append(f"{c}*n^{k}" if c != 1 else f"n^{k}")
        return " + ".join(terms)


def pair(j: int, k: int) -> int:
    """Cantor pairing bijection on pairs of naturals."""
    if j < 0 or k < 0:
        raise ValueError("pair arguments must be non-negative")
    return (j + k) * (j + k + 1) // 2 + k


def unpair(i: int) -> tuple[int, int]:
    if i < 0:
        raise ValueError("unpair argument must be non-negative")
    w = (isqrt(8 * i + 1) - 1) // 2
    k = i - w * (w + 1) // 2
    return w - k, k


def triple(j: int, k: int, l: int) -> int:
    return pair(pair(j, k), l)


def untriple(i: int) -> tuple[int, int, int]:
    jk, l = unpair(i)
    j, k = unpair(jk)
    return j, k, l


def _nth_composition(degree: int, total: int, idx: int) -> tuple[int, ...]:
    """idx-th tuple (c0..c_degree), sum=total, last >= 1, in lex order."""
    coeffs = []
    remaining = total
    for position in range(degree):
        slots = degree - position - 1  # inner positions left before the last
        value = 0
        while True:
            count = comb(remaining - value - 1 + slots, slots)
            if idx < count:
                break
            idx -= count
            value += 1
        coeffs.append(value)
        remaining -= value
    coeffs.append(remaining)
    return tuple(coeffs)


def poly_series(i: int) -> Polynomial:
    """Surjective, injective enumeration of all such polynomials.

    Bucket s holds the polynomials whose coefficient sum plus degree
    equals s (2^(s-1) of them, finitely many); inside a bucket the order
    is by degree, then lexicographic on the coefficient tuple.
    """
    if i < 0:
        raise ValueError("index must be non-negative")
    if i == 0:
        return Polynomial(())
    idx = i - 1
    s = 1
    while idx >= (size := 1 << (s - 1)):
        idx -= size
        s += 1
    for degree in range(s):
        total = s - degree
        count = comb(total - 1 + degree, degree)
        if idx < count:
            return Polynomial(_nth_composition(degree, total, idx))
        idx -= count
    raise AssertionError("bucket arithmetic is exhaustive")


def _check_index(i: int) -> None:
    if i < 0 or i.bit_length() > MAX_ENUM_INDEX_BITS:
        raise CapExceeded(
            f"enumeration index must be a natural of at most "
            f"{MAX_ENUM_INDEX_BITS} bits")


def machine_series(j: int) -> tm.MachineDesc:
    return tm.decode_godel(index_to_word(j))


def ptm_series(j: int) -> ptm_mod.PTMDesc:
    return ptm_mod.decode_ptm(index_to_word(j))


def p_machine(i: int) -> TotalDecider:
    """Clocked deterministic decision machines: the series for P.

    Output "1" is Yes, "0" is No; anything else, including running past
    the clock, defaults to No, so the problem is always a decision one.
    """
    _check_index(i)
    j, k = unpair(i)
    machine = machine_series(j)
    clock = poly_series(k)

    def decide(x: str) -> Verdict:
        result = tm.run(machine, [x], _fuel(clock, len(x)))
        if isinstance(result, tm.Halted) and result.output == "1":
            return Verdict.YES
        return Verdict.NO

    return TotalDecider(f"p[{i}]", fn=decide)


def polyfunc_series(i: int) -> ReductionFn:
    """Clocked machines as total word functions (the polynomial-time series).

    A run that exceeds its clock yields the empty word.
    """
    _check_index(i)
    j, k = unpair(i)
    machine = machine_series(j)
    clock = poly_series(k)

    def apply(x: str) -> str:
        result = tm.run(machine, [x], _fuel(clock, len(x)))
        return result.output if isinstance(result, tm.Halted) else ""

    return ReductionFn(f"f[{i}]", fn=apply, machine=machine,
                       runtime=lambda n: _fuel(clock, n))


def polyset_series(i: int):
    """Clocked, clamped numeric functions; lands in the polynomial set.

    Returns a costed map n -> (value, cost): the machine for index j runs
    on the binary numeral of n under clock p_k, its numeric output is
    clamped to p_l(n), and the cost is the number of simulated steps.
    """
    from .diagonal import CostedFunction

    _check_index(i)
    j, k, l = untriple(i)
    machine = machine_series(j)
    clock = poly_series(k)
    clamp = poly_series(l)

    def evaluate(n: int) -> tuple[int, int]:
        numeral = format(n, "b")
        result = tm.run(machine, [numeral], _fuel(clock, len(numeral)))
        if isinstance(result, tm.Halted):
            raw = int(result.output, 2) if result.output and \
                all(ch in "01" for ch in result.output) else 0
            return min(raw, clamp(n)), result.steps
        return min(0, clamp(n)), result.steps

    return CostedFunction(f"polyset[{i}]", evaluate)


def np_machine(i: int, witness_cap: int = MAX_WITNESS_SPACE) -> TotalDecider:
    """Existential witness loop over a clocked verifier: the series for NP."""
    _check_index(i)
    j, k, l = untriple(i)
    verifier = machine_series(j)
    clock = poly_series(k)
    wit_len = polyset_series(l)

    def decide(x: str) -> Verdict:
        m_len = wit_len.eval(len(x))[0]
        if 2 ** m_len > witness_cap:
            raise WitnessSpaceTooLarge(
                f"2^{m_len} witnesses exceed cap {witness_cap}")
        fuel = _fuel(clock, len(x))
        for y in words_of_length(m_len):
            result = tm.run(verifier, [x, y], fuel)
            if isinstance(result, tm.Halted) and result.output == "1":
                return Verdict.YES
        return Verdict.NO

    return TotalDecider(f"np[{i}]", fn=decide)


_STARRED_FAMILIES = ("promisebpp", "promisema", "bqp", "qcma", "qma")


def class_presentation(family: str, i: int) -> TotalDecider:
    """Total deciders for the extremal problems of the starred classes.

    The index decodes to (machine, clock) and for promisema additionally
    a witness-length index.  Verdicts may be OutsidePromise: these are
    presentations of extremal promise problems, not decision problems.
    """
    fam = family.lower()
    _check_index(i)
    if fam == "promisebpp":
        j, k = unpair(i)
        machine = ptm_series(j)
        clock = poly_series(k)
        return TotalDecider(
            f"promisebpp*[{i}]",
            fn=lambda x: ptm_mod.classify_bpp(
                machine, lambda n: _fuel(clock, n), x, on_overrun="reject"))
    if fam == "promisema":
        j, k, l = untriple(i)
        machine = ptm_series(j)
        clock = poly_series(k)
        wit_len = polyset_series(l)
        return TotalDecider(
            f"promisema*[{i}]",
            fn=lambda x: ptm_mod.classify_ma(
                machine, lambda n: _fuel(clock, n),
                lambda n: wit_len.eval(n)[0], x, on_overrun="reject"))
    if fam in ("bqp", "qcma", "qma"):
        j, k = unpair(i)
        gen = machine_series(j)
        clock = poly_series(k)
        classify = {"bqp": qc.classify_bqp, "qcma": qc.classify_qcma,
                    "qma": qc.classify_qma}[fam]

        def decide(x: str) -> Verdict:
            try:
                return classify(gen, lambda n: _fuel(clock, n), x)
            except GeneratorFuelExhausted:
                # an overrunning generator counts as emitting the trivial
                # circuit, which never accepts
                return Verdict.NO

        return TotalDecider(f"{fam}*[{i}]", fn=decide)
    raise ValueError(f"unknown presentation family {family!r}; "
                     f"known: {', '.join(_STARRED_FAMILIES)}")


@dataclass(frozen=True)
class Enumeration:
    """A computable series index -> total decider (or word function)."""

    family: str
    produce: Callable[[int], TotalDecider]

    def __getitem__(self, i: int) -> TotalDecider:
        return self.produce(i)


def p_presentation() -> Enumeration:
    return Enumeration("P", p_machine)


def np_presentation() -> Enumeration:
    return Enumeration("NP", np_machine)


def starred_presentation(family: str) -> Enumeration:
    fam = family.lower()
    if fam not in _STARRED_FAMILIES:
        raise ValueError(f"unknown starred family {family!r}")
    return Enumeration(fam + "*", lambda i: class_presentation(fam, i))


def builtins_presentation(deciders: list[TotalDecider] | tuple[TotalDecider, ...]) -> Enumeration:
    """Toy presentation cycling through a fixed list of deciders."""
    if not deciders:
        raise ValueError("need at least one decider")
    pool = tuple(deciders)
    names = ",".join(d.tag for d in pool)
    return Enumeration(f"cycle({names})", lambda i: pool[i % len(pool)])


def reduction_closure(a: TotalDecider, i: int) -> TotalDecider:
    """Decider i of the closure of a under polynomial-time reductions."""
    f = polyfunc_series(i)
    return TotalDecider(f"{a.tag}<=m[{i}]", fn=lambda x: a.classify(f(x)))


def reduction_closure_presentation(a: TotalDecider) -> Enumeration:
    return Enumeration(f"{a.tag}-closure", lambda i: reduction_closure(a, i))


def parse_oracle_machine(bits: str) -> tuple[tm.MachineDesc, int]:
    """Oracle grammar: "1"^(o+1) "0" prefix designating the oracle state,
    then the ordinary machine grammar.  Invalid encodings yield the
    trivial machine with a dummy oracle state."""
    try:
        p = tm._Parser(bits)
        o = p.read_unary() - 1
        p.expect("0")
        base = tm.decode_godel(bits[p.pos:])
        if base.trivial or not 0 <= o < base.states:
            return tm.TRIVIAL_MACHINE, 0
        return base, o
    except tm._ParseError:
        return tm.TRIVIAL_MACHINE, 0


def oracle_machine_series(j: int) -> OracleMachine:
    """The series of all polynomial-time oracle machines."""
    a, b = unpair(j)
    base, oracle_state = parse_oracle_machine(index_to_word(a))
    return OracleMachine(base, oracle_state, poly_series(b))


def harder_set(
    a: TotalDecider,
    c_pres: Enumeration,
    mode: Literal["M", "T"],
    i: int,
    check_cap: int = HARDER_SET_CHECK_CAP,
) -> TotalDecider:
    """Presentation of the problems of a class that a reduces to.

    Index i decodes to (j, k).  On input x the decider re-verifies, for
    every word y up to length min(|x|, check_cap), that reduction j maps
    a correctly into the k-th presented problem (mode M: the two Karp
    implications; mode T: oracle machine j with that problem as oracle
    stays inside the promise and answers correctly).  If all checks pass
    it answers like the presented problem, otherwise like a.
    """
    _check_index(i)
    j, k = unpair(i)
    m_k = c_pres.produce(k)
    if mode == "M":
        f_j = polyfunc_series(j)

        def check(y: str, expected: Verdict) -> bool:
            return m_k.classify(f_j(y)) is expected

    elif mode == "T":
        o_j = oracle_machine_series(j)

        def check(y: str, expected: Verdict) -> bool:
            try:
                accepted = cook_run(o_j, m_k, y)
            except (NonPromisedQuery, FuelExhausted):
                return False
            return accepted is (expected is Verdict.YES)

    else:
        raise ValueError("mode must be 'M' or 'T'")

    def decide(x: str) -> Verdict:
        for y in words_up_to(min(len(x), check_cap)):
            va = a.classify(y)
            if va is Verdict.OUTSIDE:
                continue
            if not check(y, va):
                return a.classify(x)
        return m_k.classify(x)

    return TotalDecider(f"harder[{mode},{i}]({a.tag})", fn=decide)


def harder_set_presentation(
    a: TotalDecider,
    c_pres: Enumeration,
    mode: Literal["M", "T"] = "T",
    check_cap: int = HARDER_SET_CHECK_CAP,
) -> Enumeration:
    return Enumeration(
        f"harder[{mode}]({a.tag};{c_pres.family})",
        lambda i: harder_set(a, c_pres, mode, i, check_cap))
