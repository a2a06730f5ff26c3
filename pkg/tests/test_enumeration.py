import random

import pytest

from helpers_machines import (always_accept_machine, always_reject_machine,
                              const_output_machine, diverging_machine,
                              fan_ptm, identity_machine, parity_machine,
                              two_input_fan_ptm, witness_equals_one_ptm)
from promiselab.circuit import Circuit, Gate, encode_circuit
from promiselab.enumeration import (Enumeration, Polynomial,
                                    builtins_presentation, class_presentation,
                                    harder_set, harder_set_presentation,
                                    machine_series, np_machine, p_machine,
                                    pair, parse_oracle_machine, poly_series,
                                    polyfunc_series, polyset_series,
                                    reduction_closure, triple, unpair,
                                    untriple)
from promiselab.errors import CapExceeded
from promiselab.promise import TotalDecider, Verdict, builtin
from promiselab.ptm import encode_ptm
from promiselab.tm import encode_godel
from promiselab.words import index_to_word, word_to_index, words_up_to

PARITY = builtin("parity")


def machine_index(machine) -> int:
    """Index of a deterministic machine in the word series."""
    return word_to_index(encode_godel(machine))


def ptm_index(machine) -> int:
    return word_to_index(encode_ptm(machine))


def clock_index(target: Polynomial) -> int:
    """Search the polynomial series for an exact clock, small ranges only."""
    for i in range(50_000):
        if poly_series(i) == target:
            return i
    raise AssertionError(f"{target} not in the first 50000 polynomials")


LINEAR_CLOCK = Polynomial((2, 1))  # n + 2


class TestWordBijection:
    def test_base_cases(self):
        assert index_to_word(0) == ""
        assert [index_to_word(i) for i in range(1, 7)] == \
            ["0", "1", "00", "01", "10", "11"]

    def test_roundtrip(self):
        for i in range(2000):
            assert word_to_index(index_to_word(i)) == i


class TestPairing:
    def test_base_case(self):
        assert pair(0, 0) == 0

    def test_bijection_on_samples(self):
        rng = random.Random(307)
        for _ in range(10_000):
            j, k = rng.randrange(10 ** 6), rng.randrange(10 ** 6)
            assert unpair(pair(j, k)) == (j, k)

    def test_monotone_in_each_argument(self):
        rng = random.Random(311)
        for _ in range(500):
            j, k = rng.randrange(1000), rng.randrange(1000)
            assert pair(j + 1, k) > pair(j, k)
            assert pair(j, k + 1) > pair(j, k)

    def test_triple_roundtrip(self):
        rng = random.Random(313)
        for _ in range(2000):
            j, k, l = (rng.randrange(10 ** 4) for _ in range(3))
            assert untriple(triple(j, k, l)) == (j, k, l)


class TestPolySeries:
    def test_zero_polynomial_first(self):
        p = poly_series(0)
        assert p.coefficients == ()
        assert p(5) == 0

    def test_surjectivity_hits_targets(self):
        seen = {poly_series(i).coefficients: i for i in range(200)}
        assert (0, 0, 1) in seen      # n^2
        assert (3, 2) in seen         # 2n + 3
        assert seen[(0, 0, 1)] <= 200 and seen[(3, 2)] <= 200

    def test_injective_over_first_500(self):
        forms = [poly_series(i).coefficients for i in range(500)]
        assert len(set(forms)) == 500

    def test_evaluation(self):
        i = clock_index(Polynomial((3, 2)))
        p = poly_series(i)
        assert [p(n) for n in range(4)] == [3, 5, 7, 9]

    def test_monotone_in_coefficients(self):
        rng = random.Random(331)
        for _ in range(200):
            coeffs = [rng.randrange(4) for _ in range(rng.randint(1, 4))]
            coeffs[-1] += 1
            p = Polynomial(tuple(coeffs))
            k = rng.randrange(len(coeffs))
            bumped = list(coeffs)
            bumped[k] += 1
            q = Polynomial(tuple(bumped))
            n = rng.randrange(6)
            assert q(n) >= p(n)


class TestPMachine:
    def test_always_accept_is_constant_yes(self):
        i = pair(machine_index(always_accept_machine()),
                 clock_index(LINEAR_CLOCK))
        decider = p_machine(i)
        for x in ("", "0", "1101"):
            assert decider.classify(x) is Verdict.YES

    def test_diverging_machine_defaults_to_no(self):
        i = pair(machine_index(diverging_machine()), clock_index(LINEAR_CLOCK))
        decider = p_machine(i)
        for x in ("", "01"):
            assert decider.classify(x) is Verdict.NO

    def test_parity_machine_with_sufficient_clock(self):
        i = pair(machine_index(parity_machine()), clock_index(LINEAR_CLOCK))
        decider = p_machine(i)
        for x in words_up_to(8):
            assert decider.classify(x) is PARITY.classify(x)

    def test_never_outside_promise(self):
        rng = random.Random(337)
        for _ in range(50):
            decider = p_machine(rng.randrange(500))
            for x in words_up_to(4):
                assert decider.classify(x) in (Verdict.YES, Verdict.NO)

    def test_index_cap(self):
        with pytest.raises(CapExceeded):
            p_machine(1 << (10 ** 6 + 1))
        with pytest.raises(CapExceeded):
            p_machine(-1)


class TestPolyFuncSeries:
    def test_identity_function(self):
        i = pair(machine_index(identity_machine()), 0)
        f = polyfunc_series(i)
        for x in words_up_to(6):
            assert f(x) == x

    def test_fuel_starved_machine_gives_empty(self):
        # the parity walker needs n+1 steps; the zero clock starves it
        i = pair(machine_index(parity_machine()), 0)
        f = polyfunc_series(i)
        assert f("01") == ""

    def test_polyset_clamp(self):
        rng = random.Random(347)
        for _ in range(40):
            i = rng.randrange(2000)
            f = polyset_series(i)
            clamp = poly_series(untriple(i)[2])
            for n in range(5):
                value, _ = f.eval(n)
                assert 0 <= value <= clamp(n)


class TestNpMachine:
    def test_witness_one_verifier_is_constant_yes(self):
        # deterministic verifier accepting iff the witness bit is 1
        verifier = _determinize(witness_equals_one_ptm())
        i = triple(machine_index(verifier), clock_index(Polynomial((4, 1))),
                   _polyset_index_for_constant(1))
        decider = np_machine(i)
        for x in ("", "1", "010"):
            assert decider.classify(x) is Verdict.YES

    def test_always_reject_is_constant_no(self):
        i = triple(machine_index(always_reject_machine()),
                   clock_index(LINEAR_CLOCK), _polyset_index_for_constant(1))
        decider = np_machine(i)
        for x in ("", "0", "11"):
            assert decider.classify(x) is Verdict.NO

    def test_matches_brute_force_witness_search(self):
        from promiselab import tm
        from promiselab.words import words_of_length
        verifier = _determinize(witness_equals_one_ptm())
        i = triple(machine_index(verifier), clock_index(Polynomial((4, 1))),
                   _polyset_index_for_constant(1))
        decider = np_machine(i)
        for x in words_up_to(3):
            brute = any(
                isinstance(r := tm.run(verifier, [x, y], len(x) + 4), tm.Halted)
                and r.output == "1"
                for y in words_of_length(1))
            assert (decider.classify(x) is Verdict.YES) == brute


def _determinize(ptm_desc):
    """PTMs with singleton branch sets are deterministic machines."""
    from promiselab.tm import MachineDesc
    transitions = {key: actions[0]
                   for key, actions in ptm_desc.transitions.items()}
    assert all(len(a) == 1 for a in ptm_desc.transitions.values())
    return MachineDesc(ptm_desc.states, ptm_desc.initial, ptm_desc.finals,
                       transitions)


def _polyset_index_for_constant(value: int) -> int:
    """Index of a clamped series member that is constantly `value`.

    A machine printing the numeral of `value` under a generous clock,
    clamped by the constant polynomial `value`, stays at `value`.
    """
    printer = const_output_machine(format(value, "b"))
    return triple(machine_index(printer), clock_index(Polynomial((10, 1))),
                  clock_index(Polynomial((value,))))


class TestClassPresentations:
    def test_promisebpp_trivial_index_is_constant_no(self):
        # index 0 decodes to the trivial PTM under the zero clock
        decider = class_presentation("promisebpp", 0)
        for x in ("", "0", "10"):
            assert decider.classify(x) is Verdict.NO

    def test_promisebpp_fair_coin_is_outside_everywhere(self):
        i = pair(ptm_index(fan_ptm(1, 2)), clock_index(LINEAR_CLOCK))
        decider = class_presentation("promisebpp", i)
        for x in ("", "0", "11"):
            assert decider.classify(x) is Verdict.OUTSIDE

    def test_promisema_witness_machine(self):
        i = triple(ptm_index(witness_equals_one_ptm()),
                   clock_index(Polynomial((4, 1))),
                   _polyset_index_for_constant(1))
        decider = class_presentation("promisema", i)
        assert decider.classify("0") is Verdict.YES

    def test_bqp_trivial_generator_is_constant_no(self):
        i = pair(machine_index(const_output_machine("")),
                 clock_index(Polynomial((4, 1))))
        decider = class_presentation("bqp", i)
        for x in ("", "1", "00"):
            assert decider.classify(x) is Verdict.NO

    def test_bqp_single_h_generator_is_outside(self):
        gen = const_output_machine("0101")
        i = pair(machine_index(gen), clock_index(Polynomial((8, 1))))
        decider = class_presentation("bqp", i)
        assert decider.classify("0") is Verdict.OUTSIDE

    def test_qcma_witness_copy_is_constant_yes(self):
        circ = Circuit((Gate("CNOT", (2, 1)),), witness_qubits=1)
        gen = const_output_machine(encode_circuit(circ))
        i = pair(machine_index(gen), clock_index(Polynomial((12, 1))))
        decider = class_presentation("qcma", i)
        for x in ("", "0", "11"):
            assert decider.classify(x) is Verdict.YES

    def test_overrunning_generator_counts_as_trivial(self):
        i = pair(machine_index(diverging_machine()), 0)
        decider = class_presentation("qma", i)
        assert decider.classify("0") is Verdict.NO

    def test_every_index_is_total_at_small_scale(self):
        families = [lambda i, f=f: class_presentation(f, i)
                    for f in ("promisebpp", "promisema", "bqp", "qcma", "qma")]
        families += [p_machine, np_machine]
        for produce in families:
            for i in range(0, 51, 5):
                decider = produce(i)
                for x in words_up_to(6):
                    assert decider.classify(x) in (
                        Verdict.YES, Verdict.NO, Verdict.OUTSIDE)


class TestReductionClosure:
    def test_identity_index_reproduces_problem(self):
        i = pair(machine_index(identity_machine()), 0)
        decider = reduction_closure(PARITY, i)
        for x in words_up_to(8):
            assert decider.classify(x) is PARITY.classify(x)

    def test_constant_function_gives_constant_problem(self):
        i = pair(machine_index(const_output_machine("1")),
                 clock_index(Polynomial((4, 1))))
        decider = reduction_closure(PARITY, i)
        expected = PARITY.classify("1")
        for x in words_up_to(5):
            assert decider.classify(x) is expected

    def test_composition_matches_direct_oracle(self):
        i = pair(machine_index(identity_machine()), 0)
        f = polyfunc_series(i)
        decider = reduction_closure(PARITY, i)
        for x in words_up_to(6):
            assert decider.classify(x) is PARITY.classify(f(x))


class TestHarderSet:
    def test_failed_checks_fall_back_to_base_problem(self):
        # index 0: both the reduction and the presented machine are junk,
        # so the checks fail on short witnesses and the decider equals
        # the base problem beyond them
        pres = builtins_presentation([builtin("const-no"), builtin("const-yes")])
        decider = harder_set(PARITY, pres, "M", 0)
        for x in words_up_to(5):
            if len(x) >= 1:
                assert decider.classify(x) is PARITY.classify(x)

    def test_passing_checks_follow_presented_machine(self):
        # identity reduction onto the problem itself: all checks pass
        pres = builtins_presentation([PARITY])
        i = pair(pair(machine_index(identity_machine()), 0), 0)
        decider = harder_set(PARITY, pres, "M", i)
        for x in words_up_to(6):
            assert decider.classify(x) is PARITY.classify(x)

    def test_mode_t_with_trivial_oracle_machine(self):
        # the trivial oracle machine rejects everything: correct for the
        # constant-no problem, so checks pass and the decider follows the
        # presented machine.  j = pair(0, 1): trivial machine under the
        # constant-1 clock, which is just enough fuel for its single step.
        pres = builtins_presentation([builtin("len-even")])
        decider = harder_set(builtin("const-no"), pres, "T", pair(pair(0, 1), 0))
        for x in words_up_to(4):
            assert decider.classify(x) is builtin("len-even").classify(x)

    def test_mode_t_falls_back_when_oracle_machine_wrong(self):
        pres = builtins_presentation([builtin("len-even")])
        decider = harder_set(builtin("const-yes"), pres, "T", 0)
        # trivial oracle machine rejects, but const-yes demands accepts:
        # checks fail from the empty word on
        for x in words_up_to(4):
            assert decider.classify(x) is Verdict.YES

    def test_soundness_on_presented_problem(self):
        # whenever all embedded checks pass up to the bound, verdicts
        # equal the presented machine's
        pres = builtins_presentation([PARITY])
        i = pair(pair(machine_index(identity_machine()), 0), 0)
        decider = harder_set(PARITY, pres, "M", i, check_cap=8)
        report_words = list(words_up_to(8))
        assert all(decider.classify(x) is PARITY.classify(x)
                   for x in report_words)

    def test_presentation_wrapper(self):
        pres = harder_set_presentation(PARITY, builtins_presentation([PARITY]),
                                       "M")
        decider = pres.produce(3)
        assert decider.classify("1") in (Verdict.YES, Verdict.NO)


class TestOracleMachineSeries:
    def test_invalid_prefix_gives_trivial(self):
        base, state = parse_oracle_machine("")
        assert base.trivial and state == 0

    def test_roundtrip_prefix(self):
        m = always_accept_machine()
        bits = "1" * 2 + "0" + encode_godel(m)  # oracle state 1
        base, state = parse_oracle_machine(bits)
        assert base == m and state == 1

    def test_out_of_range_oracle_state_is_trivial(self):
        m = always_accept_machine()
        bits = "1" * 9 + "0" + encode_godel(m)
        base, state = parse_oracle_machine(bits)
        assert base.trivial
