import random

import pytest

from regsynth import automata, benchmarks
from regsynth.automata import Alphabet, Dfa, Nfa
from regsynth.errors import (BudgetExceeded, CertificateInvalid, ContractError, InputError,
                             ParseError, WellFormednessError)
from regsynth.game import (FiniteArena, RegularSafetyGame, extract_move, induced_arena,
                           membership, parse_game, positional_strategy, render_game, slice_arena,
                           solve_finite)
from regsynth.transducer import Transducer, identity

from oracles import TOY, brute_winning, game_slice, greatest_safe_set, random_arena, rngs

def toy():
    return parse_game(TOY, "toy")


def test_parse_toy_and_roundtrip():
    g = toy()
    assert g.owner("a") == 0 and g.owner("b a") == 1 and g.owner("c") is None
    assert g.is_bad("a c")
    back = parse_game(render_game(g))
    for mine, theirs in ((g.v0, back.v0), (g.v1, back.v1), (g.initial, back.initial),
                         (g.bad, back.bad)):
        assert automata.equivalent(mine, theirs)
    assert g.moves("a a") == [g.alphabet.word("b a"), g.alphabet.word("b c")]


@pytest.mark.parametrize("name", benchmarks.list_benchmarks())
def test_benchmark_roundtrip(name):
    g = benchmarks.get(name).game()
    back = parse_game(render_game(g))
    for mine, theirs in ((g.v0, back.v0), (g.v1, back.v1), (g.initial, back.initial),
                         (g.bad, back.bad)):
        assert automata.is_empty(automata.difference(mine, automata.determinize(theirs)))
        assert automata.is_empty(automata.difference(theirs, automata.determinize(mine)))
    for n in range(2, 6):
        for w in automata.enumerate_length(g.vertex_dfa, n)[:50]:
            assert g.moves(w) == back.moves(w)


def test_empty_transitions_deadlock_everything():
    text = """\
alphabet: a
automaton V0
states: s
initial: s
accepting: s
trans: s a s
automaton V1
states: s
initial: s
accepting:
automaton I
states: s
initial: s
accepting: s
automaton B
states: s
initial: s
accepting:
transducer E
states: p
initial: p
accepting: p
trans:
"""
    g = parse_game(text)
    for w in ("a", "a a", "a a a"):
        assert g.moves(w) == []
        assert not membership(g, w)    # a Player-0 deadlock is losing


def test_overlap_is_reported_with_witness():
    text = TOY.replace("automaton V1\nstates: s t\ninitial: s\naccepting: t\ntrans: s b t",
                       "automaton V1\nstates: s t\ninitial: s\naccepting: t\ntrans: s a t")
    with pytest.raises(WellFormednessError) as info:
        parse_game(text)
    assert info.value.witness == ("a",)


def test_initial_outside_vertices():
    text = TOY.replace("automaton I\nstates: s t\ninitial: s\naccepting: t\ntrans: s a t",
                       "automaton I\nstates: s t\ninitial: s\naccepting: t\ntrans: s c t")
    with pytest.raises(WellFormednessError) as info:
        parse_game(text)
    assert info.value.witness == ("c",)


def test_parse_errors_have_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_game(TOY.replace("trans: q a/c r", "trans: q a/z r"))
    assert info.value.line == TOY.splitlines().index("trans: q a/c r") + 1
    with pytest.raises(ParseError):
        parse_game(TOY.replace("transducer E", "transducer F"))
    with pytest.raises(ParseError):
        parse_game(TOY.replace("alphabet: a b c", ""))
    with pytest.raises(ParseError):
        parse_game("alphabet: a\nautomaton V0\n")


def test_components_must_share_alphabet():
    g = toy()
    other = Nfa(Alphabet(["x"]), 1, 0, [], [0])
    with pytest.raises(InputError):
        RegularSafetyGame(g.alphabet, other, g.v1, g.edges, g.initial, g.bad)


# -- finite arenas -----------------------------------------------------------------

def _single(alphabet, accept_all=True):
    return Dfa(alphabet, [[0] * len(alphabet)], 0, [0] if accept_all else [])


def test_induced_arena_deadlock_and_identity():
    al = Alphabet(["a"])
    none = Transducer(al, 1, 0, [], [0])
    g = RegularSafetyGame(al, _single(al), _single(al, False), none, _single(al, False),
                          _single(al, False))
    arena = induced_arena(g, "a a")
    assert arena.vertices == [al.word("a a")] and arena.successors(0) == []
    g = RegularSafetyGame(al, _single(al), _single(al, False), identity(al), _single(al, False),
                          _single(al, False))
    arena = induced_arena(g, "a a")
    assert arena.vertices == [al.word("a a")] and arena.successors(0) == [0]
    assert membership(g, "a a")
    with pytest.raises(InputError):
        induced_arena(toy(), "c")


def test_induced_arena_is_the_successor_closure():
    g = toy()
    for n in range(1, 6):
        verts, owner, bad, succ = game_slice(g, n)
        for w in verts:
            seen, frontier = {w}, [w]
            while frontier:
                for v in succ[frontier.pop()]:
                    if v not in seen:
                        seen.add(v)
                        frontier.append(v)
            assert set(induced_arena(g, w).vertices) == seen


def test_budget_is_enforced():
    g = benchmarks.load("nim")
    with pytest.raises(BudgetExceeded):
        induced_arena(g, "t0 c111 c111 c111", budget=50)
    with pytest.raises(BudgetExceeded):
        slice_arena(g, 4, budget=100)


def _arena(owner, bad, succ):
    indptr, indices = [0], []
    for s in succ:
        indices.extend(s)
        indptr.append(len(indices))
    return FiniteArena(list(range(len(owner))), bytearray(owner), bytearray(bad), indptr, indices)


def test_solve_finite_examples():
    assert solve_finite(_arena([0, 1], [0, 0], [[1], [0]])) == [True, True]
    # Player 0's only edge leads into a bad sink
    assert solve_finite(_arena([0, 1], [0, 1], [[1], [1]])) == [False, False]
    # Player-1 deadlock is safe, Player-0 deadlock is not
    assert solve_finite(_arena([1, 0], [0, 0], [[], []])) == [True, False]
    assert solve_finite(_arena([], [], [])) == []


def test_solve_finite_random_and_monotone():
    for rng in rngs(300, seed=11):
        n = rng.randint(1, 10)
        owner, bad, succ = random_arena(rng, n)
        won = solve_finite(_arena(owner, bad, succ))
        assert {v for v in range(n) if won[v]} == greatest_safe_set(range(n), owner, bad, succ)
        # more Player-1 edges never help Player 0; fewer bad vertices never hurt
        more = [sorted(set(s) | ({rng.randrange(n)} if owner[v] == 1 else set()))
                for v, s in enumerate(succ)]
        won_more = solve_finite(_arena(owner, bad, more))
        assert all(not b or a for a, b in zip(won, won_more))
        fewer_bad = [b and rng.random() < 0.5 for b in bad]
        won_fewer = solve_finite(_arena(owner, fewer_bad, succ))
        assert all(not a or b for a, b in zip(won, won_fewer))


# -- membership -------------------------------------------------------------------------

def test_membership_examples():
    g = toy()
    assert not membership(g, "a c")           # bad words are never winning
    assert not membership(g, "c a")           # not a vertex
    al = Alphabet(["a"])
    safe = RegularSafetyGame(al, _single(al), _single(al, False), identity(al), _single(al),
                             _single(al, False))
    assert membership(safe, "a a a")


def test_membership_matches_brute_force_on_toy():
    g = toy()
    for n in range(6):
        winning = brute_winning(g, n)
        for w in automata.enumerate_length(automata.universal(g.alphabet), n):
            assert membership(g, w) == (w in winning)


def test_membership_matches_box_slice():
    g = benchmarks.load("box")
    for n in (6, 7, 8):
        arena = slice_arena(g, n)
        won = solve_finite(arena)
        for w, flag in zip(arena.vertices, won):
            assert membership(g, w) == flag


def test_membership_is_stable_under_memoization():
    g = benchmarks.load("evasion")
    words = automata.enumerate_length(g.vertex_dfa, 4)
    first = [membership(g, w) for w in words]
    fresh = benchmarks.load("evasion")
    assert [membership(fresh, w) for w in reversed(words)][::-1] == first
    assert [membership(g, w) for w in words] == first


@pytest.mark.parametrize("name", benchmarks.list_benchmarks())
def test_winning_region_is_closed_on_slices(name):
    g = benchmarks.load(name)
    for n in range(1, 6):
        try:
            arena = slice_arena(g, n, budget=20_000)
        except BudgetExceeded:
            break
        win = {w for w in arena.vertices if membership(g, w)}
        for i, w in enumerate(arena.vertices):
            if w not in win:
                continue
            assert not arena.bad[i]
            succ = [arena.vertices[j] for j in arena.successors(i)]
            if arena.owner[i] == 0:
                assert any(s in win for s in succ)
            else:
                assert all(s in win for s in succ)


# -- strategies --------------------------------------------------------------------------

def test_extract_move_identity_game():
    al = Alphabet(["a", "b"])
    g = RegularSafetyGame(al, _single(al), _single(al, False), identity(al), _single(al, False),
                          _single(al, False))
    cert = _single(al)
    assert extract_move(g, cert, "a b") == al.word("a b")


def test_extract_move_unique_and_errors():
    g = toy()
    winning_b = Dfa(g.alphabet, [[2, 1, 2], [1, 1, 2], [2, 2, 2]], 0, [1])   # b (a|b)*
    cert = automata.minimize(automata.union(
        winning_b, Dfa(g.alphabet, [[1, 2, 2], [1, 2, 2], [2, 2, 2]], 0, [1])))   # ... or a+
    assert extract_move(g, cert, "a a") == g.alphabet.word("b a")
    with pytest.raises(ContractError):
        extract_move(g, cert, "b a")           # Player 1's vertex
    with pytest.raises(ContractError):
        extract_move(g, winning_b, "a a")      # outside the certificate
    only_a = Dfa(g.alphabet, [[1, 2, 2], [1, 2, 2], [2, 2, 2]], 0, [1])
    with pytest.raises(CertificateInvalid):
        extract_move(g, only_a, "a a")
    strategy = positional_strategy(g, cert, [g.alphabet.word(w) for w in ("a", "a a", "b")])
    assert set(strategy) == {g.alphabet.word("a"), g.alphabet.word("a a")}


def test_random_toy_variants_against_oracle():
    g = toy()
    rng = random.Random(5)
    for _ in range(20):
        keep = [t for t in g.edges.transitions() if rng.random() < 0.8]
        edges = Transducer(g.alphabet, g.edges.n_states, g.edges.initial, keep, g.edges.finals)
        h = RegularSafetyGame(g.alphabet, g.v0, g.v1, edges, g.initial, g.bad)
        for n in range(1, 5):
            winning = brute_winning(h, n)
            for w in automata.enumerate_length(h.vertex_dfa, n):
                assert membership(h, w) == (w in winning)
