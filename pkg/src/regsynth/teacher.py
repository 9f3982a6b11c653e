"""The teacher: membership by finite-slice solving, equivalence by winning-set checks.

An equivalence query is answered "yes" for *any* hypothesis whose language is
a winning set, not only for the maximal one.  Every "no" comes with a
counterexample in the symmetric difference of the hypothesis and the maximal
winning region.
"""

import enum
import time
from dataclasses import dataclass, field

from . import automata
from .errors import TeacherContractError, Unrealizable
from .transducer import pre_image


class Polarity(enum.Enum):
    SHOULD_BE_IN = "ShouldBeIn"
    SHOULD_BE_OUT = "ShouldBeOut"


class Cause(enum.Enum):
    INITIAL = "Initial"
    BAD = "Bad"
    EXISTENTIAL = "Existential"
    UNIVERSAL = "Universal"


@dataclass(frozen=True)
class EquivalenceAnswer:
    counterexample: bytes = None
    polarity: Polarity = None
    cause: Cause = None

    @property
    def accepted(self):
        return self.counterexample is None


YES = EquivalenceAnswer()


def violation(g, h, cause):
    """Shortest word witnessing that ``L(h)`` breaks condition ``cause``, or ``None``.

    Only vertices count as members of the candidate set: words of ``L(h)``
    outside V are ignored by every condition.
    """
    if cause is Cause.INITIAL:
        return automata.shortest_difference(g.initial_dfa, h)
    if cause is Cause.BAD:
        return automata.shortest_member(automata.intersect(h, g.bad_dfa))
    if cause is Cause.EXISTENTIAL:
        inside = automata.minimize(automata.intersect(h, g.vertex_dfa))
        has_move_inside = pre_image(g.edges, inside)
        return automata.shortest_difference(automata.intersect(g.v0_dfa, h), has_move_inside)
    if cause is Cause.UNIVERSAL:
        outside = automata.minimize(automata.difference(g.vertex_dfa, h))
        can_leave = pre_image(g.edges, outside)
        return automata.shortest_member(automata.intersect(automata.intersect(g.v1_dfa, h), can_leave))
    raise ValueError(cause)


@dataclass
class ConditionResult:
    cause: Cause
    passed: bool
    witness: bytes = None


@dataclass
class WinningSetCertificate:
    dfa: automata.Dfa
    conditions: list
    seconds: float = 0.0

    @property
    def valid(self):
        return all(c.passed for c in self.conditions)

    @property
    def size(self):
        return self.dfa.n_states

    def failures(self):
        return [c for c in self.conditions if not c.passed]


def verify_certificate(g, h):
    """Check all four winning-set conditions without any membership query."""
    h = automata.determinize(h)
    start = time.perf_counter()
    results = []
    for cause in Cause:
        w = violation(g, h, cause)
        results.append(ConditionResult(cause, w is None, w))
    return WinningSetCertificate(h, results, time.perf_counter() - start)


@dataclass
class TeacherCounts:
    membership: int = 0
    internal_membership: int = 0
    equivalence: int = 0
    counterexamples: list = field(default_factory=list)


class Teacher:
    """Answers the learner's queries about the maximal winning region of ``game``.

    ``trace`` is an optional callable receiving one dict per query.
    """

    def __init__(self, game, trace=None):
        self.game = game
        self.alphabet = game.alphabet
        self.oracle = game.oracle
        self.trace = trace
        self.counts = TeacherCounts()

    def _emit(self, **record):
        if self.trace is not None:
            self.trace(record)

    def membership(self, w):
        self.counts.membership += 1
        answer = self.oracle(w)
        if self.trace is not None:
            self._emit(kind="membership", word=self.alphabet.show(w), answer=answer,
                       count=self.counts.membership)
        return answer

    def _mem(self, w):
        self.counts.internal_membership += 1
        return self.oracle(w)

    def _no(self, h, w, polarity, cause):
        answer = EquivalenceAnswer(w, polarity, cause)
        self.counts.counterexamples.append(answer)
        self._emit(kind="equivalence", hypothesis_size=h.n_states, answer="no",
                   counterexample=self.alphabet.show(w), polarity=polarity.value,
                   cause=cause.value, count=self.counts.equivalence)
        return answer

    def equivalence(self, h):
        self.counts.equivalence += 1
        g = self.game
        h = automata.determinize(h)

        v = violation(g, h, Cause.INITIAL)
        if v is not None:
            if not self._mem(v):
                raise Unrealizable(self.alphabet.decode(v))
            return self._no(h, v, Polarity.SHOULD_BE_IN, Cause.INITIAL)

        v = violation(g, h, Cause.BAD)
        if v is not None:
            return self._no(h, v, Polarity.SHOULD_BE_OUT, Cause.BAD)

        v = violation(g, h, Cause.EXISTENTIAL)
        if v is not None:
            if not self._mem(v):
                return self._no(h, v, Polarity.SHOULD_BE_OUT, Cause.EXISTENTIAL)
            for u in g.moves(v):
                if self._mem(u):
                    return self._no(h, u, Polarity.SHOULD_BE_IN, Cause.EXISTENTIAL)
            raise TeacherContractError(
                f"winning Player-0 vertex {self.alphabet.show(v)} has no winning move")

        v = violation(g, h, Cause.UNIVERSAL)
        if v is not None:
            if not self._mem(v):
                return self._no(h, v, Polarity.SHOULD_BE_OUT, Cause.UNIVERSAL)
            for u in g.moves(v):
                if not automata.accepts(h, u):
                    return self._no(h, u, Polarity.SHOULD_BE_IN, Cause.UNIVERSAL)
            raise TeacherContractError(
                f"universal violation at {self.alphabet.show(v)} has no escaping move")

        self._emit(kind="equivalence", hypothesis_size=h.n_states, answer="yes",
                   count=self.counts.equivalence)
        return YES


def answer_membership(g, w):
    return g.oracle(automata.as_word(g.alphabet, w))


def answer_equivalence(g, h):
    return Teacher(g).equivalence(h)
