"""Small combinators for writing game components by hand.

Two styles are supported.  Regular expressions over symbol names (or over
``in/out`` symbol pairs, for transducers) cover the local-rewrite moves, and
``explore_nfa`` turns a Python step function over a finite state space into an
automaton, which is handier for counting constraints.
"""

from itertools import product

from .. import automata
from ..automata import Alphabet, Nfa
from ..transducer import from_pair_automaton, minimize_transducer, pair_alphabet

# Regex AST: ("sym", frozenset of letter ids) | ("cat", r, s) | ("alt", r, s) | ("star", r) | ("eps",)
EPS = ("eps",)
NOTHING = ("sym", frozenset())


def seq(*parts):
    out = EPS
    for p in parts:
        out = p if out == EPS else ("cat", out, p)
    return out


def alt(*parts):
    if not parts:
        return NOTHING
    out = parts[0]
    for p in parts[1:]:
        out = ("alt", out, p)
    return out


def star(r):
    return ("star", r)


def opt(r):
    return alt(EPS, r)


def plus(r):
    return seq(r, star(r))


def power(r, n):
    return seq(*([r] * n))


def _compile(rx, alphabet):
    """Thompson construction followed by epsilon elimination."""
    eps = []
    moves = []
    count = [0]

    def fresh():
        count[0] += 1
        eps.append([])
        moves.append([])
        return count[0] - 1

    def build(r):
        tag = r[0]
        s, e = fresh(), fresh()
        if tag == "eps":
            eps[s].append(e)
        elif tag == "sym":
            for a in sorted(r[1]):
                moves[s].append((a, e))
        elif tag == "cat":
            s1, e1 = build(r[1])
            s2, e2 = build(r[2])
            eps[s].append(s1)
            eps[e1].append(s2)
            eps[e2].append(e)
        elif tag == "alt":
            for sub in r[1:]:
                s1, e1 = build(sub)
                eps[s].append(s1)
                eps[e1].append(e)
        elif tag == "star":
            s1, e1 = build(r[1])
            eps[s] += [s1, e]
            eps[e1] += [s1, e]
        else:
            raise ValueError(f"unknown regex node {tag!r}")
        return s, e

    start, end = build(rx)

    def closure(q):
        seen = {q}
        stack = [q]
        while stack:
            for p in eps[stack.pop()]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return seen

    closures = [closure(q) for q in range(count[0])]
    transitions = [(q, a, t) for q in range(count[0]) for p in closures[q] for a, t in moves[p]]
    finals = [q for q in range(count[0]) if end in closures[q]]
    return Nfa(alphabet, count[0], start, transitions, finals)


class Grammar:
    """Symbol-name front end for one alphabet."""

    def __init__(self, symbols):
        self.alphabet = Alphabet(symbols)
        self.k = len(self.alphabet)
        self.pairs_alphabet = pair_alphabet(self.alphabet)

    # languages
    def sym(self, *names):
        return ("sym", frozenset(self.alphabet.index(n) for n in names))

    def dfa(self, rx):
        return minimal(_compile(rx, self.alphabet))

    # relations
    def pair(self, *pairs):
        """Any one of the given ``(in, out)`` pairs; ``"a/b"`` strings also work."""
        ix = self.alphabet.index
        letters = set()
        for p in pairs:
            a, b = p.split("/") if isinstance(p, str) else p
            letters.add(ix(a) * self.k + ix(b))
        return ("sym", frozenset(letters))

    def keep(self, *names):
        return self.pair(*((n, n) for n in names))

    def relation(self, rx):
        nfa = _compile(rx, self.pairs_alphabet)
        return minimize_transducer(from_pair_automaton(self.alphabet, nfa))

    def machine(self, init, step, accept):
        return minimal(explore_nfa(self.alphabet, init, step, accept))


def minimal(a):
    return automata.minimize(automata.determinize(a))


def explore_nfa(alphabet, init, step, accept):
    """Automaton over the states reachable from ``init``.

    ``step(state, name)`` returns the successor state, ``None`` for no move, or
    (when it returns a list or set) several successors.  ``accept(state)``
    marks final states.  The reachable state space must be finite.
    """
    index = {init: 0}
    order = [init]
    transitions = []
    i = 0
    while i < len(order):
        s = order[i]
        for a, name in enumerate(alphabet.symbols):
            nxt = step(s, name)
            if nxt is None:
                continue
            for t in (nxt if isinstance(nxt, (list, set, frozenset)) else (nxt,)):
                j = index.get(t)
                if j is None:
                    j = index[t] = len(order)
                    order.append(t)
                transitions.append((i, a, j))
        i += 1
    finals = [j for j, s in enumerate(order) if accept(s)]
    return Nfa(alphabet, len(order), 0, transitions, finals)


def bit_cells(tracks):
    """Names of cells carrying one bit per track, e.g. ``00 01 10 11`` for two tracks."""
    return ["".join(bits) for bits in product("01", repeat=tracks)]


def flip(name, track):
    bits = list(name)
    bits[track] = "1" if bits[track] == "0" else "0"
    return "".join(bits)
