import itertools

import pytest

from regsynth import automata, benchmarks, lstar
from regsynth.automata import Dfa
from regsynth.errors import Unrealizable
from regsynth.game import membership, parse_game
from regsynth.teacher import (YES, Cause, Polarity, Teacher, answer_equivalence,
                              answer_membership, verify_certificate)

from oracles import TOY, brute_winning, transducer_outputs


def toy(initial="s a t"):
    # I = {a} instead of a+, which keeps the toy game realizable
    text = TOY.replace("automaton I\nstates: s t\ninitial: s\naccepting: t\ntrans: s a t\ntrans: t a t",
                       f"automaton I\nstates: s t\ninitial: s\naccepting: t\ntrans: {initial}")
    return parse_game(text, "toy")


def reject_all(al):
    return Dfa(al, [[0] * len(al)], 0, [])


def accept_all(al):
    return Dfa(al, [[0] * len(al)], 0, [0])


def test_membership_delegates():
    g = toy()
    assert answer_membership(g, "a") is True
    assert answer_membership(g, "a c") is False


def test_reject_all_gets_initial_counterexample():
    g = toy()
    ans = answer_equivalence(g, reject_all(g.alphabet))
    assert (ans.counterexample, ans.polarity, ans.cause) == (
        g.alphabet.word("a"), Polarity.SHOULD_BE_IN, Cause.INITIAL)


def test_accept_all_gets_bad_counterexample():
    g = toy()
    ans = answer_equivalence(g, accept_all(g.alphabet))
    assert (ans.counterexample, ans.polarity, ans.cause) == (
        g.alphabet.word("a c"), Polarity.SHOULD_BE_OUT, Cause.BAD)


def test_exact_winning_region_is_accepted():
    g = toy()
    # brute force says the region is {a, b}; encode that by hand
    for n in range(5):
        expected = {g.alphabet.word("a"), g.alphabet.word("b")} if n == 1 else set()
        assert brute_winning(g, n) == expected
    region = Dfa(g.alphabet, [[1, 1, 2], [2, 2, 2], [2, 2, 2]], 0, [1])
    assert answer_equivalence(g, region) is YES
    assert verify_certificate(g, region).valid


def test_unrealizable_initial_vertex():
    g = parse_game(TOY, "toy")       # I = a+ contains the losing vertex "a a"
    assert not membership(g, "a a")
    h = Dfa(g.alphabet, [[1, 1, 2], [2, 2, 2], [2, 2, 2]], 0, [1])
    with pytest.raises(Unrealizable) as info:
        Teacher(g).equivalence(h)
    assert info.value.witness == ("a", "a")


def test_universal_case_returns_escaping_successor():
    g = toy()
    # {a, b, "b b"}: "b b" is a Player-1 vertex that can leave the set
    h = automata.minimize(automata.union(
        Dfa(g.alphabet, [[1, 1, 2], [2, 2, 2], [2, 2, 2]], 0, [1]),
        Dfa(g.alphabet, [[3, 1, 3], [3, 2, 3], [3, 3, 3], [3, 3, 3]], 0, [2])))
    ans = Teacher(g).equivalence(h)
    assert ans.cause is Cause.UNIVERSAL
    assert ans.polarity is Polarity.SHOULD_BE_OUT       # "b b" itself is losing
    assert ans.counterexample == g.alphabet.word("b b")


# -- a three-vertex arena evaluated by hand -------------------------------------------

THREE = """\
alphabet: p q r
automaton V0
states: s t
initial: s
accepting: t
trans: s p t
automaton V1
states: s t
initial: s
accepting: t
trans: s q t
trans: s r t
automaton I
states: s t
initial: s
accepting: t
trans: s p t
automaton B
states: s t
initial: s
accepting: t
trans: s q t
transducer E
states: a b
initial: a
accepting: b
trans: a p/q b
trans: a p/r b
trans: a q/q b
trans: a r/p b
"""


def _definition_holds(w):
    """Direct evaluation of the four winning-set conditions on the explicit arena."""
    succ = {"p": {"q", "r"}, "q": {"q"}, "r": {"p"}}
    owner = {"p": 0, "q": 1, "r": 1}
    return ("p" in w and "q" not in w
            and all(succ[v] & w for v in w if owner[v] == 0)
            and all(succ[v] <= w for v in w if owner[v] == 1))


def test_three_vertex_certificates_match_hand_evaluation():
    g = parse_game(THREE)
    al = g.alphabet
    for size in range(4):
        for subset in itertools.combinations("pqr", size):
            finals = [1 + al.index(v) for v in subset]
            table = [[1, 2, 3], [4, 4, 4], [4, 4, 4], [4, 4, 4], [4, 4, 4]]
            h = Dfa(al, table, 0, finals)
            cert = verify_certificate(g, h)
            assert cert.valid == _definition_holds(set(subset)), subset
    cert = verify_certificate(g, Dfa(al, [[1, 2, 3]] + [[4] * 3] * 4, 0, [1]))
    assert [c.cause for c in cert.failures()] == [Cause.EXISTENTIAL]
    assert cert.failures()[0].witness == al.word("p")
    cert = verify_certificate(g, Dfa(al, [[1, 2, 3]] + [[4] * 3] * 4, 0, [1, 2, 3]))
    assert Cause.BAD in [c.cause for c in cert.failures()]


# -- runs on the benchmarks ---------------------------------------------------------------

class RecordingTeacher(Teacher):
    def __init__(self, game):
        super().__init__(game)
        self.log = []

    def equivalence(self, h):
        ans = super().equivalence(h)
        self.log.append((h, ans))
        return ans


def _real_violation(g, h, cause, w):
    """Check a verifier witness against the explicit successor relation."""
    inside = lambda u: automata.accepts(h, u) and g.is_vertex(u)
    succ = [v for v in transducer_outputs(g.edges, w) if g.is_vertex(v)]
    if cause is Cause.INITIAL:
        return automata.accepts(g.initial, w) and not automata.accepts(h, w)
    if cause is Cause.BAD:
        return automata.accepts(g.bad, w) and automata.accepts(h, w)
    if cause is Cause.EXISTENTIAL:
        return g.owner(w) == 0 and inside(w) and not any(inside(v) for v in succ)
    return g.owner(w) == 1 and inside(w) and any(not inside(v) for v in succ)


@pytest.mark.parametrize("name", benchmarks.list_benchmarks())
def test_counterexamples_are_sound(name):
    g = benchmarks.load(name)
    teacher = RecordingTeacher(g)
    h, stats = lstar.learn(teacher)
    assert teacher.log[-1][1] is YES
    assert verify_certificate(g, h).valid
    for hyp, ans in teacher.log[:-1]:
        w = ans.counterexample
        inside = automata.accepts(hyp, w)
        assert inside == (ans.polarity is Polarity.SHOULD_BE_OUT)
        assert membership(g, w) != inside
    # the same queries get the same answers
    again = RecordingTeacher(benchmarks.load(name))
    for hyp, ans in teacher.log:
        assert again.equivalence(hyp) == ans


@pytest.mark.parametrize("name", ["box", "evasion", "nim", "resource-allocation"])
def test_mutated_certificates(name):
    g = benchmarks.load(name)
    h, _ = lstar.learn(Teacher(g))
    h = automata.minimize(h)
    first = automata.shortest_member(g.initial_dfa)
    target = h.run(first)
    flipped = Dfa(h.alphabet, h.table, h.initial, set(h.finals) ^ {target})
    cert = verify_certificate(g, flipped)
    assert not cert.valid
    assert cert.failures()[0].cause is Cause.INITIAL
    # every single-state flip: each reported failure is a genuine violation
    for q in range(h.n_states):
        mutant = Dfa(h.alphabet, h.table, h.initial, set(h.finals) ^ {q})
        for failure in verify_certificate(g, mutant).failures():
            assert _real_violation(g, mutant, failure.cause, failure.witness)
