"""Regular safety games, their finite slices, and the membership oracle.

The arena's edge relation is the transducer relation restricted to pairs of
vertices: a transducer output that is not accepted by ``v0`` or ``v1`` is not a
move.
"""

from dataclasses import dataclass, field
from functools import cached_property

from . import automata, kernels
from .automata import Alphabet, as_word, tokenize
from .errors import (BudgetExceeded, CertificateInvalid, ContractError, InputError, ParseError,
                     WellFormednessError)
from .transducer import Transducer, build_transducer, render_transducer

DEFAULT_BUDGET = 1_000_000

PLAYER0 = 0
PLAYER1 = 1

_BLOCKS = (("automaton", "V0"), ("automaton", "V1"), ("automaton", "I"),
           ("automaton", "B"), ("transducer", "E"))


def dfa_kernel(d):
    k = len(d.alphabet)
    flat = [r for row in d.table for r in row]
    finals = bytes(1 if q in d.finals else 0 for q in range(d.n_states))
    return kernels.DfaKernel(flat, k, d.initial, finals)


class RegularSafetyGame:
    def __init__(self, alphabet, v0, v1, edges, initial, bad, name="", budget=DEFAULT_BUDGET):
        for part in (v0, v1, edges, initial, bad):
            if part.alphabet != alphabet:
                raise InputError("all game components must share the game alphabet")
        self.alphabet = alphabet
        self.v0 = v0
        self.v1 = v1
        self.edges = edges
        self.initial = initial
        self.bad = bad
        self.name = name
        self.budget = budget

    def __repr__(self):
        return f"RegularSafetyGame({self.name or '?'}, |Σ|={len(self.alphabet)})"

    @cached_property
    def v0_dfa(self):
        return automata.minimize(automata.determinize(self.v0))

    @cached_property
    def v1_dfa(self):
        return automata.minimize(automata.determinize(self.v1))

    @cached_property
    def vertex_dfa(self):
        return automata.minimize(automata.union(self.v0_dfa, self.v1_dfa))

    @cached_property
    def initial_dfa(self):
        return automata.minimize(automata.determinize(self.initial))

    @cached_property
    def bad_dfa(self):
        return automata.minimize(automata.determinize(self.bad))

    @cached_property
    def _kernels(self):
        return (self.edges.kernel, dfa_kernel(self.v0_dfa), dfa_kernel(self.v1_dfa),
                dfa_kernel(self.bad_dfa))

    @cached_property
    def oracle(self):
        return MembershipOracle(self, self.budget)

    def _word(self, w):
        return w if type(w) is bytes else as_word(self.alphabet, w)

    def is_vertex(self, w):
        w = self._word(w)
        _, k0, k1, _ = self._kernels
        return k0.accepts(w) or k1.accepts(w)

    def owner(self, w):
        """``PLAYER0``/``PLAYER1``, or ``None`` for a word that is not a vertex."""
        w = self._word(w)
        _, k0, k1, _ = self._kernels
        if k0.accepts(w):
            return PLAYER0
        if k1.accepts(w):
            return PLAYER1
        return None

    def is_bad(self, w):
        return self._kernels[3].accepts(self._word(w))

    def moves(self, w, budget=None):
        """Successor vertices of ``w`` in lexicographic order."""
        w = as_word(self.alphabet, w)
        trans, k0, k1, _ = self._kernels
        limit = self.budget if budget is None else budget
        return [s for s in trans.successors(w, limit) if k0.accepts(s) or k1.accepts(s)]

    def check_well_formed(self):
        show = self.alphabet.decode
        witness = automata.shortest_member(automata.intersect(self.v0_dfa, self.v1_dfa))
        if witness is not None:
            raise WellFormednessError("V0 and V1 overlap", show(witness))
        witness = automata.shortest_member(automata.difference(self.initial, self.vertex_dfa))
        if witness is not None:
            raise WellFormednessError("initial vertex outside V0 ∪ V1", show(witness))
        witness = automata.shortest_member(automata.difference(self.bad, self.vertex_dfa))
        if witness is not None:
            raise WellFormednessError("bad vertex outside V0 ∪ V1", show(witness))
        return self


# -- file format --------------------------------------------------------------

def parse_game(text, name=""):
    """Parse and check a game file; diagnostics carry the offending line number."""
    alphabet = None
    blocks = {}
    current = None
    for lineno, tokens in tokenize(text):
        head = tokens[0]
        if head.startswith("alphabet:"):
            if alphabet is not None:
                raise ParseError("alphabet declared twice", lineno)
            if blocks:
                raise ParseError("alphabet must precede all blocks", lineno)
            rest = head[len("alphabet:"):]
            symbols = ([rest] if rest else []) + tokens[1:]
            try:
                alphabet = Alphabet(symbols)
            except InputError as exc:
                raise ParseError(str(exc), lineno) from None
            continue
        if head in ("automaton", "transducer"):
            if len(tokens) != 2:
                raise ParseError(f"'{head}' header takes exactly one name", lineno)
            key = (head, tokens[1])
            if key not in _BLOCKS:
                raise ParseError(f"unexpected block '{head} {tokens[1]}'", lineno)
            if key in blocks:
                raise ParseError(f"block '{head} {tokens[1]}' appears twice", lineno)
            if alphabet is None:
                raise ParseError("alphabet must be declared before the first block", lineno)
            current = blocks[key] = (lineno, [])
            continue
        if current is None:
            raise ParseError(f"unexpected line outside of any block: {' '.join(tokens)}", lineno)
        current[1].append((lineno, tokens))
    if alphabet is None:
        raise ParseError("missing 'alphabet:' line")
    for key in _BLOCKS:
        if key not in blocks:
            raise ParseError(f"missing block '{key[0]} {key[1]}'")

    def auto(label):
        start, lines = blocks["automaton", label]
        return automata.build_automaton(lines, alphabet, start)

    start, lines = blocks["transducer", "E"]
    edges = build_transducer(lines, alphabet, start)
    game = RegularSafetyGame(alphabet, auto("V0"), auto("V1"), edges, auto("I"), auto("B"), name)
    return game.check_well_formed()


def render_game(g, header=None):
    out = []
    if header:
        out.extend(f"# {line}" if line else "#" for line in header.splitlines())
    out.append("alphabet: " + " ".join(g.alphabet.symbols))
    for label, part, prefix in (("V0", g.v0, "a"), ("V1", g.v1, "b"), ("I", g.initial, "i"),
                                ("B", g.bad, "x")):
        out.append("")
        out.append(f"automaton {label}")
        out.append(automata.render_automaton(part, prefix).rstrip("\n"))
    out.append("")
    out.append("transducer E")
    out.append(render_transducer(g.edges).rstrip("\n"))
    return "\n".join(out) + "\n"


def load_game(path):
    from pathlib import Path

    path = Path(path)
    return parse_game(path.read_text(encoding="utf-8"), name=path.stem)


# -- finite slices ------------------------------------------------------------

@dataclass
class FiniteArena:
    """Explicit game graph over words of one length, adjacency in CSR form."""

    vertices: list
    owner: bytearray
    bad: bytearray
    indptr: object
    indices: object
    _index: dict = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.vertices)

    def successors(self, i):
        return list(self.indices[self.indptr[i]:self.indptr[i + 1]])

    def index(self, word):
        if self._index is None:
            self._index = {w: i for i, w in enumerate(self.vertices)}
        return self._index[word]


def induced_arena(g, w, budget=None):
    """Sub-arena of vertices reachable from vertex ``w``."""
    w = as_word(g.alphabet, w)
    if not g.is_vertex(w):
        raise InputError(f"{g.alphabet.show(w)} is not a vertex")
    budget = g.budget if budget is None else budget
    trans, k0, k1, kb = g._kernels
    vertices, owner, bad, indptr, indices = kernels.explore(trans, k0, k1, kb, w, budget)
    return FiniteArena(vertices, owner, bad, indptr, indices)


def slice_arena(g, n, budget=None):
    """The full length-``n`` slice: every vertex of that length with all its moves."""
    budget = g.budget if budget is None else budget
    vertices = automata.enumerate_length(g.vertex_dfa, n, budget)
    index = {w: i for i, w in enumerate(vertices)}
    trans, k0, _, kb = g._kernels
    owner = bytearray(0 if k0.accepts(w) else 1 for w in vertices)
    bad = bytearray(1 if kb.accepts(w) else 0 for w in vertices)
    indptr = [0]
    indices = []
    for w in vertices:
        for s in trans.successors(w, budget):
            j = index.get(s)
            if j is not None:
                indices.append(j)
        indptr.append(len(indices))
    return FiniteArena(vertices, owner, bad, indptr, indices, index)


def solve_finite(arena):
    """Per-vertex booleans: ``True`` where Player 0 wins the safety game."""
    if not len(arena):
        return []
    won = kernels.attractor(arena.owner, arena.bad, arena.indptr, arena.indices)
    return [flag == 1 for flag in won]


class MembershipOracle:
    """Memoized ``Mem(w)``: is ``w`` a vertex from which Player 0 wins?

    Solving the arena induced by one query also settles every vertex in it, so
    all of them are cached.  Cache fills are idempotent.
    """

    def __init__(self, game, budget=DEFAULT_BUDGET):
        self.game = game
        self.budget = budget
        self.cache = {}
        self.calls = 0
        self.arenas = 0
        self.arena_vertices = 0

    def __call__(self, w):
        self.calls += 1
        known = self.cache.get(w)
        if known is not None:
            return known
        g = self.game
        if not g.is_vertex(w):
            self.cache[w] = False
            return False
        try:
            arena = induced_arena(g, w, self.budget)
        except BudgetExceeded as exc:
            exc.word = g.alphabet.show(w)
            raise
        self.arenas += 1
        self.arena_vertices += len(arena)
        won = kernels.attractor(arena.owner, arena.bad, arena.indptr, arena.indices)
        cache = self.cache
        for v, flag in zip(arena.vertices, won):
            cache.setdefault(v, flag == 1)
        return cache[w]


def membership(g, w):
    return g.oracle(as_word(g.alphabet, w))


# -- strategies ---------------------------------------------------------------

def extract_move(g, cert, w):
    """Lexicographically smallest move from Player-0 vertex ``w`` that stays inside ``cert``."""
    w = as_word(g.alphabet, w)
    if g.owner(w) != PLAYER0:
        raise ContractError(f"{g.alphabet.show(w)} is not a Player-0 vertex")
    if not automata.accepts(cert, w):
        raise ContractError(f"{g.alphabet.show(w)} is not in the certificate")
    for v in g.moves(w):
        if automata.accepts(cert, v):
            return v
    raise CertificateInvalid(
        f"no move from {g.alphabet.show(w)} stays inside the certificate", g.alphabet.decode(w))


def positional_strategy(g, cert, words):
    """``{w: extract_move(g, cert, w)}`` for the Player-0 words of ``words`` inside ``cert``."""
    return {w: extract_move(g, cert, w) for w in words
            if g.owner(w) == PLAYER0 and automata.accepts(cert, w)}
