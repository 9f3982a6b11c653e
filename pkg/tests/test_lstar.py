import math
import random
import time

import pytest

from regsynth import automata, benchmarks, lstar
from regsynth.automata import Alphabet, Dfa
from regsynth.benchmarks.build import Grammar, alt, seq, star
from regsynth.errors import ContractError, RoundLimitExceeded, TeacherContractError
from regsynth.game import RegularSafetyGame
from regsynth.lstar import (DfaTeacher, ObservationTable, build_hypothesis, close_table, learn,
                            process_counterexample)
from regsynth.teacher import Teacher
from regsynth.transducer import identity

from oracles import all_words, random_dfa


def _languages():
    a_only = Grammar(["a"])
    ab = Grammar(["a", "b"])
    a, b = ab.sym("a"), ab.sym("b")
    any_ = ab.sym("a", "b")
    rng = random.Random(2024)
    five = random_dfa(rng, ab.alphabet, 5)
    while automata.minimize(five).n_states != 5:
        five = random_dfa(rng, ab.alphabet, 5)
    return {
        "(aa)*": a_only.dfa(star(seq(a_only.sym("a"), a_only.sym("a")))),
        "ends in a": ab.dfa(seq(star(any_), a)),
        "random 5-state": five,
        "empty": automata.empty(ab.alphabet),
        "everything": automata.universal(ab.alphabet),
        "even number of b": ab.dfa(star(alt(a, seq(b, star(a), b)))),
        "contains ab": ab.dfa(seq(star(any_), a, b, star(any_))),
        "length divisible by 3": ab.dfa(star(seq(any_, any_, any_))),
        "a*b*": ab.dfa(seq(star(a), star(b))),
        "third from last is a": ab.dfa(seq(star(any_), a, any_, any_)),
    }


LANGUAGES = _languages()


@pytest.mark.parametrize("name", sorted(LANGUAGES))
def test_perfect_teacher_learns_minimal_dfa(name):
    target = automata.minimize(automata.determinize(LANGUAGES[name]))
    h, stats = learn(DfaTeacher(target))
    assert automata.minimize(h).table == target.table
    assert h.n_states == target.n_states
    assert stats.equivalence_queries <= target.n_states
    assert not stats.envelope_violations()


def test_aa_star_over_one_letter():
    h, stats = learn(DfaTeacher(LANGUAGES["(aa)*"]))
    assert h.n_states == 2 and stats.equivalence_queries <= 2


def test_perfect_teacher_suite_is_fast():
    start = time.perf_counter()
    for target in LANGUAGES.values():
        learn(DfaTeacher(target))
    assert time.perf_counter() - start < 1.0


# -- the table --------------------------------------------------------------------------

def _table(member, symbols=("a",)):
    t = ObservationTable(Alphabet(symbols), member)
    t.fill()
    return t


def test_close_table_examples():
    t = _table(lambda w: len(w) % 2 == 0)
    assert not t.is_closed()
    close_table(t)
    assert t.access == [b"", b"\x00"]
    before = (list(t.access), dict(t.cells))
    close_table(t)
    assert (t.access, t.cells) == before


def test_closure_independent_of_promotion_order():
    target = LANGUAGES["third from last is a"]
    member = lambda w: automata.accepts(target, w)
    suffixes = [b"", b"\x00", b"\x00\x00", b"\x01\x00"]

    def closed_rows(reverse):
        t = ObservationTable(target.alphabet, member)
        t.suffixes = list(suffixes)
        t.fill()
        while True:
            pending = [x + bytes((c,)) for x in t.access for c in range(2)
                       if t.row(x + bytes((c,))) not in t._row_index]
            if not pending:
                return {t.row(x) for x in t.access}
            t.promote(pending[-1] if reverse else pending[0])

    assert closed_rows(False) == closed_rows(True)


def test_build_hypothesis_examples():
    t = _table(lambda w: False)
    close_table(t)
    h = build_hypothesis(t)
    assert h.n_states == 1 and not h.finals
    t = _table(lambda w: True)
    close_table(t)
    h = build_hypothesis(t)
    assert h.n_states == 1 and h.finals == {0}
    t = _table(lambda w: len(w) % 2 == 0)
    with pytest.raises(ContractError):
        build_hypothesis(t)


def test_hypothesis_replays_the_table():
    target = LANGUAGES["contains ab"]
    member = lambda w: automata.accepts(target, w)
    t = ObservationTable(target.alphabet, member)
    t.fill()
    close_table(t)
    h = build_hypothesis(t)
    process_counterexample(t, automata.distinguishing_word(h, target), h)
    close_table(t)
    h = build_hypothesis(t)
    for x in t.access + [x + bytes((c,)) for x in t.access for c in range(2)]:
        for y in t.suffixes:
            assert automata.accepts(h, x + y) == t.cells[x + y]
    rows = [t.row(x) for x in t.access]
    assert len(set(rows)) == len(rows) == h.n_states


def test_short_counterexamples():
    member = lambda w: w == b"\x00\x01"
    t = _table(member, ("a", "b"))
    close_table(t)
    h = build_hypothesis(t)
    assert h.n_states == 1
    # one-letter words already label rows of the table, so they never disagree with h
    with pytest.raises(TeacherContractError):
        process_counterexample(t, b"\x00", h)
    probes = process_counterexample(t, b"\x00\x01", h)
    assert probes <= math.ceil(math.log2(2)) + 2
    assert t.suffixes[-1] == b"\x01"


def test_non_counterexample_is_a_contract_error():
    t = _table(lambda w: len(w) % 2 == 0)
    close_table(t)
    h = build_hypothesis(t)
    with pytest.raises(TeacherContractError):
        process_counterexample(t, b"\x00\x00", h)


def test_round_limit_aborts_with_diagnostics():
    target = LANGUAGES["third from last is a"]
    with pytest.raises(RoundLimitExceeded) as info:
        learn(DfaTeacher(target), max_rounds=2)
    exc = info.value
    assert exc.rounds == 2
    assert exc.stats.equivalence_queries == 2
    assert "X \\ Y" in exc.diagnostics


class LyingTeacher(DfaTeacher):
    def equivalence(self, h):
        from regsynth.teacher import EquivalenceAnswer, Polarity
        w = next(w for w in all_words(2, 6) if automata.accepts(h, w) == self.membership(w))
        return EquivalenceAnswer(w, Polarity.SHOULD_BE_IN)


def test_bogus_counterexample_is_detected():
    with pytest.raises(TeacherContractError):
        learn(LyingTeacher(LANGUAGES["contains ab"]))


def test_trivial_game_answered_in_first_round():
    al = Alphabet(["a"])
    nothing = Dfa(al, [[0]], 0, [])
    # Player 0 owns every word but has no moves, so nothing is winning; I = B = empty
    from regsynth.transducer import Transducer
    g = RegularSafetyGame(al, automata.universal(al), nothing, Transducer(al, 1, 0, [], []),
                          nothing, nothing)
    h, stats = learn(Teacher(g))
    assert stats.equivalence_queries == 1 and h.n_states == 1 and not h.finals
    g = RegularSafetyGame(al, automata.universal(al), nothing, identity(al), nothing, nothing)
    h, stats = learn(Teacher(g))
    assert stats.equivalence_queries == 1 and h.finals == {0}


@pytest.mark.parametrize("name", benchmarks.list_benchmarks())
def test_benchmark_runs_respect_the_envelope(name):
    g = benchmarks.load(name)
    sizes = []
    teacher = Teacher(g)
    h, stats = learn(teacher, trace=lambda e: sizes.append(e["hypothesis_size"]))
    assert sizes == stats.hypothesis_sizes
    assert all(b > a for a, b in zip(sizes, sizes[1:]))
    assert stats.equivalence_queries <= stats.final_size
    bound = (stats.final_size * (stats.final_size + stats.final_size * len(g.alphabet))
             + stats.final_size * math.log2(max(stats.longest_counterexample, 1))
             + 4 * stats.final_size)
    assert stats.membership_queries <= bound
    for m, probes in zip(stats.counterexample_lengths, stats.counterexample_probes):
        assert probes <= math.ceil(math.log2(max(m, 1))) + 2


def test_table_entries_match_fresh_queries():
    g = benchmarks.load("diagonal")
    teacher = Teacher(g)
    cells = {}

    def remember(w):
        cells[w] = teacher.membership(w)
        return cells[w]

    class Wrapped:
        alphabet = g.alphabet
        membership = staticmethod(remember)
        equivalence = teacher.equivalence

    learn(Wrapped())
    fresh = benchmarks.load("diagonal")
    for w in random.Random(7).sample(sorted(cells), 200):
        assert fresh.oracle(w) == cells[w]
