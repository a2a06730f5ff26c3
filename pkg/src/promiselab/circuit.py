"""Exact state-vector simulation of {H, T, CNOT} circuits.

Circuits are encoded as bitstrings: a gate is an opcode ("01" = H,
"10" = T, "11" = CNOT), a "0", and the 1-based operand(s) in unary
(CNOT takes control "0" target); gates are joined by single "0"
separators.  A witness header "1"^m "00" may prefix the gate stream.
Anything that fails to parse denotes the trivial circuit that never
accepts (empty gate list, acceptance probability defined as 0); its
canonical encoding is the empty string.

Conventions fixed here: qubit 1 is the most significant bit of the
amplitude index and is the measured output qubit; a witness register of
m qubits occupies the highest-indexed qubits, the remaining workspace
starts in the all-zero state.  H is the standard unitary
(1/sqrt2)[[1,1],[1,-1]]; T applies the phase (1+i)/sqrt2 to |1>.

Amplitudes are exact field elements, so acceptance probabilities and the
witness-block acceptance operator are exact and the threshold trichotomy
is decided by integer arithmetic alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import tm
from .errors import DimensionCap, GeneratorFuelExhausted, WitnessSpaceTooLarge
from .field import (ZERO, ONE, T_PHASE, ExactMatrix, FieldElem, real_sign,
                    scaled_identity, sylvester_pd, sylvester_psd)
from .promise import Verdict
from .words import words_of_length

DEFAULT_THRESHOLDS = (Fraction(2, 3), Fraction(1, 3))
MAX_QUBITS = 20
MAX_WITNESS_QUBITS = 4


@dataclass(frozen=True)
class Gate:
    kind: str  # "H" | "T" | "CNOT"
    qubits: tuple[int, ...]  # 1-based; (q,) or (control, target)

    def __post_init__(self):
        if self.kind in ("H", "T"):
            if len(self.qubits) != 1 or self.qubits[0] < 1:
                raise ValueError(f"{self.kind} takes one positive qubit index")
        elif self.kind == "CNOT":
            if len(self.qubits) != 2 or min(self.qubits) < 1 \
                    or self.qubits[0] == self.qubits[1]:
                raise ValueError("CNOT takes distinct positive control, target")
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "CNOT":
            return f"CNOT {self.qubits[0]}→{self.qubits[1]}"
        return f"{self.kind} q{self.qubits[0]}"


@dataclass(frozen=True)
class Circuit:
    gates: tuple[Gate, ...]
    witness_qubits: int = 0
    trivial: bool = False

    def __post_init__(self):
        if self.witness_qubits < 0:
            raise ValueError("witness register size must be non-negative")

    @property
    def total_qubits(self) -> int:
        # At least one qubit so the output qubit always exists; a witness
        # register larger than the gates' reach still occupies qubits.
        referenced = max((q for g in self.gates for q in g.qubits), default=0)
        return max(1, referenced, self.witness_qubits)

    def listing(self) -> str:
        return "; ".join(str(g) for g in self.gates) if self.gates else "(no gates)"


TRIVIAL_CIRCUIT = Circuit(gates=(), witness_qubits=0, trivial=True)


@dataclass(frozen=True)
class StateVector:
    num_qubits: int
    amplitudes: tuple[FieldElem, ...]


class _ParseError(Exception):
    pass


def _parse_gate(bits: str, pos: int) -> tuple[Gate, int]:
    opcode = bits[pos:pos + 2]
    if len(opcode) != 2 or opcode == "00":
        raise _ParseError(f"bad opcode at {pos}")
    pos += 2
    if pos >= len(bits) or bits[pos] != "0":
        raise _ParseError(f"missing separator at {pos}")
    pos += 1
    operand, pos = _read_unary(bits, pos)
    if opcode == "01":
        return Gate("H", (operand,)), pos
    if opcode == "10":
        return Gate("T", (operand,)), pos
    if pos >= len(bits) or bits[pos] != "0":
        raise _ParseError(f"missing CNOT separator at {pos}")
    pos += 1
    target, pos = _read_unary(bits, pos)
    if target == operand:
        raise _ParseError("CNOT control equals target")
    return Gate("CNOT", (operand, target)), pos


def _read_unary(bits: str, pos: int) -> tuple[int, int]:
    n = 0
    while pos < len(bits) and bits[pos] == "1":
        n += 1
        pos += 1
    if n == 0:
        raise _ParseError(f"expected unary run at {pos}")
    return n, pos


def parse_circuit(bits: str, expect_witness_header: bool = False) -> Circuit:
    """Total parser; any failure denotes the trivial never-accepting circuit."""
    try:
        if any(ch not in "01" for ch in bits):
            raise _ParseError("non-binary character")
        pos = 0
        m = 0
        if expect_witness_header:
            m, pos = _read_unary(bits, pos)
            if bits[pos:pos + 2] != "00":
                raise _ParseError("missing witness header terminator")
            pos += 2
        gates = []
        gate, pos = _parse_gate(bits, pos)
        gates.append(gate)
        while pos < len(bits):
            if bits[pos] != "0":
                raise _ParseError(f"missing gate separator at {pos}")
            pos += 1
            gate, pos = _parse_gate(bits, pos)
            gates.append(gate)
        return Circuit(tuple(gates), witness_qubits=m)
    except _ParseError:
        return TRIVIAL_CIRCUIT


def encode_circuit(c: Circuit) -> str:
    """Canonical encoding; the trivial circuit encodes to the empty string."""
    if c.trivial or not c.gates:
        return ""
    parts = []
    if c.witness_qubits > 0:
        parts.append("1" * c.witness_qubits + "00")
    for i, g in enumerate(c.gates):
        if i:
            parts.append("0")
        if g.kind == "H":
            parts.append("01" + "0" + "1" * g.qubits[0])
        elif g.kind == "T":
            parts.append("10" + "0" + "1" * g.qubits[0])
        else:
            parts.append("11" + "0" + "1" * g.qubits[0] + "0" + "1" * g.qubits[1])
    return "".join(parts)


def load_circuit_file(path: str, expect_witness_header: bool = False) -> Circuit:
    with open(path, "r", encoding="ascii") as fh:
        return parse_circuit(fh.read().rstrip("\n"), expect_witness_header)


def simulate(c: Circuit, basis_input: str) -> StateVector:
    """Apply the gate list in order to the given computational basis state."""
    n = c.total_qubits
    if len(basis_input) != n or any(ch not in "01" for ch in basis_input):
        raise ValueError(f"basis input must be {n} bits")
    if n > MAX_QUBITS:
        raise DimensionCap(f"{n} qubits exceed cap {MAX_QUBITS}")
    size = 1 << n
    amps = [ZERO] * size
    amps[int(basis_input, 2)] = ONE
    for g in c.gates:
        if g.kind == "H":
            bit = 1 << (n - g.qubits[0])
            for i in range(size):
                if i & bit:
                    continue
                j = i | bit
                u, v = amps[i], amps[j]
                amps[i] = (u + v).mul_sqrt2_inv()
                amps[j] = (u - v).mul_sqrt2_inv()
        elif g.kind == "T":
            bit = 1 << (n - g.qubits[0])
            for i in range(size):
                if i & bit:
                    amps[i] = amps[i] * T_PHASE
        else:
            cbit = 1 << (n - g.qubits[0])
            tbit = 1 << (n - g.qubits[1])
            for i in range(size):
                if (i & cbit) and not (i & tbit):
                    j = i | tbit
                    amps[i], amps[j] = amps[j], amps[i]
    return StateVector(n, tuple(amps))


def p_acc(c: Circuit, basis_input: str | None = None) -> FieldElem:
    """Exact probability of measuring 1 on the output qubit (qubit 1)."""
    if c.trivial:
        return ZERO
    if basis_input is None:
        basis_input = "0" * c.total_qubits
    state = simulate(c, basis_input)
    half = 1 << (state.num_qubits - 1)
    total = ZERO
    for i in range(half, 2 * half):
        amp = state.amplitudes[i]
        if not amp.is_zero():
            total = total + amp.abs2()
    return total


def _witness_input(c: Circuit, y: str) -> str:
    k = c.total_qubits - c.witness_qubits
    return "0" * k + y


def acceptance_operator(c: Circuit,
                        dimension_cap: int = 1 << MAX_WITNESS_QUBITS) -> ExactMatrix:
    """Exact 2^m x 2^m operator of the witness block, Hermitian by check.

    Entry (y', y) is the overlap of the output-1 components of the runs
    on witnesses y' and y with zeroed workspace; its diagonal reproduces
    the per-witness acceptance probabilities.
    """
    m = c.witness_qubits
    if m < 1:
        raise ValueError("circuit has no witness register")
    dim = 1 << m
    if dim > dimension_cap:
        raise DimensionCap(f"2^{m} exceeds cap {dimension_cap}")
    if c.trivial:
        return scaled_identity(dim, ZERO)
    states = [simulate(c, _witness_input(c, y)).amplitudes
              for y in words_of_length(m)]
    half = 1 << (c.total_qubits - 1)
    size = 1 << c.total_qubits
    rows = []
    for yp in range(dim):
        row = []
        for y in range(dim):
            acc = ZERO
            left, right = states[yp], states[y]
            for i in range(half, size):
                if left[i].is_zero() or right[i].is_zero():
                    continue
                acc = acc + left[i].conjugate() * right[i]
            row.append(acc)
        rows.append(tuple(row))
    q = ExactMatrix(tuple(rows))
    if not q.is_hermitian():
        raise AssertionError("acceptance operator failed the Hermiticity check")
    return q


def _generate(gen: tm.MachineDesc, gen_runtime: Callable[[int], int],
              x: str) -> str:
    result = tm.run(gen, [x], gen_runtime(len(x)))
    if isinstance(result, tm.FuelExhaustedResult):
        raise GeneratorFuelExhausted(
            f"circuit generator exceeded its runtime on {x!r}")
    return result.output


def classify_bqp(
    gen: tm.MachineDesc,
    gen_runtime: Callable[[int], int],
    x: str,
    thresholds: tuple[Fraction, Fraction] = DEFAULT_THRESHOLDS,
) -> Verdict:
    """Run the generator, simulate its circuit, apply the trichotomy."""
    c, s = _check_thresholds(thresholds)
    circ = parse_circuit(_generate(gen, gen_runtime, x))
    p = p_acc(circ)
    return _trichotomy(p, c, s)


def classify_qcma(
    gen: tm.MachineDesc,
    gen_runtime: Callable[[int], int],
    x: str,
    thresholds: tuple[Fraction, Fraction] = DEFAULT_THRESHOLDS,
    witness_cap: int = 1 << MAX_WITNESS_QUBITS,
) -> Verdict:
    """Trichotomy over the best classical (basis) witness."""
    c, s = _check_thresholds(thresholds)
    circ = parse_circuit(_generate(gen, gen_runtime, x), expect_witness_header=True)
    m = circ.witness_qubits
    if 2 ** m > witness_cap:
        raise WitnessSpaceTooLarge(f"2^{m} witnesses exceed cap {witness_cap}")
    if circ.trivial:
        return _trichotomy(ZERO, c, s)
    some_yes = False
    all_no = True
    for y in words_of_length(m):
        p = p_acc(circ, _witness_input(circ, y))
        if real_sign(p - FieldElem(c)) >= 0:
            some_yes = True
            break
        if real_sign(p - FieldElem(s)) > 0:
            all_no = False
    if some_yes:
        return Verdict.YES
    if all_no:
        return Verdict.NO
    return Verdict.OUTSIDE


def classify_qma(
    gen: tm.MachineDesc,
    gen_runtime: Callable[[int], int],
    x: str,
    thresholds: tuple[Fraction, Fraction] = DEFAULT_THRESHOLDS,
    dimension_cap: int = 1 << MAX_WITNESS_QUBITS,
) -> Verdict:
    """Trichotomy over quantum witnesses via definiteness tests.

    With Q the witness-block operator and thresholds (c, s):
    sI - Q positive semi-definite is equivalent to max eigenvalue <= s,
    and cI - Q not positive definite to max eigenvalue >= c, so the
    verdict needs no eigenvalue computation.
    """
    c, s = _check_thresholds(thresholds)
    circ = parse_circuit(_generate(gen, gen_runtime, x), expect_witness_header=True)
    if circ.trivial:
        return _trichotomy(ZERO, c, s)
    q = acceptance_operator(circ, dimension_cap)
    return classify_qma_operator(q, (c, s))


def classify_qma_operator(
    q: ExactMatrix,
    thresholds: tuple[Fraction, Fraction] = DEFAULT_THRESHOLDS,
) -> Verdict:
    c, s = thresholds
    if sylvester_psd(scaled_identity(q.dim, FieldElem(s)) - q):
        return Verdict.NO
    if not sylvester_pd(scaled_identity(q.dim, FieldElem(c)) - q):
        return Verdict.YES
    return Verdict.OUTSIDE


def _check_thresholds(thresholds) -> tuple[Fraction, Fraction]:
    c, s = thresholds
    if c < s:
        raise ValueError("completeness threshold below soundness threshold")
    return Fraction(c), Fraction(s)


def _trichotomy(p: FieldElem, c: Fraction, s: Fraction) -> Verdict:
    if real_sign(p - FieldElem(c)) >= 0:
        return Verdict.YES
    if real_sign(p - FieldElem(s)) <= 0:
        return Verdict.NO
    return Verdict.OUTSIDE
