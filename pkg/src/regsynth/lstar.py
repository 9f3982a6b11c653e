"""Angluin-style learner with binary-search counterexample analysis.

The observation table only ever holds pairwise-distinct rows for its access
words, so consistency holds by construction; counterexamples contribute a
single new column each and never new rows.
"""

import math
import time
from dataclasses import dataclass, field

from . import automata
from .errors import ContractError, RoundLimitExceeded, TeacherContractError

DEFAULT_ROUNDS = 500


class ObservationTable:
    """Boolean table over access words ``X`` (and their one-letter extensions) times suffixes ``Y``."""

    def __init__(self, alphabet, member):
        self.alphabet = alphabet
        self.member = member
        self.access = [b""]
        self.suffixes = [b""]
        self.cells = {}
        self.queries = 0
        self._rows = {}
        self._row_index = {}

    def query(self, word):
        known = self.cells.get(word)
        if known is None:
            self.queries += 1
            known = self.cells[word] = bool(self.member(word))
        return known

    def row(self, x):
        r = self._rows.get(x)
        if r is None:
            r = self._rows[x] = [self.query(x + y) for y in self.suffixes]
        elif len(r) < len(self.suffixes):
            r.extend(self.query(x + y) for y in self.suffixes[len(r):])
        return tuple(r)

    def fill(self):
        k = len(self.alphabet)
        self._row_index = {}
        for i, x in enumerate(self.access):
            self._row_index.setdefault(self.row(x), i)
            for a in range(k):
                self.row(x + bytes((a,)))

    def unclosed(self):
        """First extension ``x·a`` whose row matches no access row, scanning X then Σ in order."""
        k = len(self.alphabet)
        for x in self.access:
            for a in range(k):
                xa = x + bytes((a,))
                if self.row(xa) not in self._row_index:
                    return xa
        return None

    def is_closed(self):
        return self.unclosed() is None

    def promote(self, xa):
        r = self.row(xa)
        if r in self._row_index:
            raise ContractError("promoted word duplicates an existing row")
        self._row_index[r] = len(self.access)
        self.access.append(xa)
        for a in range(len(self.alphabet)):
            self.row(xa + bytes((a,)))

    def add_suffix(self, y):
        if y in self.suffixes:
            raise ContractError("suffix already present")
        self.suffixes.append(y)
        self.fill()

    def row_classes(self):
        return len(self._row_index)

    def dump(self):
        show = self.alphabet.show
        head = ["X \\ Y"] + [show(y) for y in self.suffixes]
        lines = [" | ".join(head)]
        for x in self.access:
            lines.append(" | ".join([show(x)] + ["1" if b else "0" for b in self.row(x)]))
        return "\n".join(lines)


def close_table(t):
    while True:
        xa = t.unclosed()
        if xa is None:
            return t
        t.promote(xa)


def build_hypothesis(t):
    """Quotient DFA of a closed table; state ``i`` is the class of ``t.access[i]``."""
    k = len(t.alphabet)
    table = []
    for x in t.access:
        row = []
        for a in range(k):
            j = t._row_index.get(t.row(x + bytes((a,))))
            if j is None:
                raise ContractError("hypothesis requested from an unclosed table")
            row.append(j)
        table.append(row)
    finals = [i for i, x in enumerate(t.access) if t.row(x)[0]]
    return automata.Dfa(t.alphabet, table, 0, finals)


def process_counterexample(t, w, h):
    """Add the distinguishing suffix of counterexample ``w``.

    Returns the number of membership probes made by the search itself (the
    counterexample plus one per bisection step); refilling the table for the
    new column is not counted.
    """
    target = t.query(w)
    if target == automata.accepts(h, w):
        raise TeacherContractError(
            f"{t.alphabet.show(w)} is not a counterexample for the hypothesis")
    probes = 1

    def alpha(i):
        return t.query(t.access[h.run(w[:i])] + w[i:])

    # alpha(0) is Mem(w) and alpha(|w|) is h's verdict on w, so they differ
    lo, hi = 0, len(w)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        probes += 1
        if alpha(mid) == target:
            lo = mid
        else:
            hi = mid
    suffix = w[hi:]
    if suffix in t.suffixes:
        raise TeacherContractError("membership answers are inconsistent with the table")
    t.add_suffix(suffix)
    return probes


@dataclass
class LearningStats:
    alphabet_size: int = 0
    membership_queries: int = 0
    equivalence_queries: int = 0
    hypothesis_sizes: list = field(default_factory=list)
    counterexample_lengths: list = field(default_factory=list)
    counterexample_probes: list = field(default_factory=list)
    seconds: dict = field(default_factory=lambda: {"table": 0.0, "equivalence": 0.0,
                                                   "counterexample": 0.0})

    @property
    def final_size(self):
        return self.hypothesis_sizes[-1] if self.hypothesis_sizes else 0

    @property
    def longest_counterexample(self):
        return max(self.counterexample_lengths, default=0)

    def membership_bound(self):
        n, k, m = self.final_size, self.alphabet_size, self.longest_counterexample
        return n * (n + n * k) + n * math.log2(max(m, 1)) + 4 * n

    def envelope_violations(self):
        out = []
        if self.equivalence_queries > self.final_size:
            out.append(f"{self.equivalence_queries} equivalence queries exceed "
                       f"{self.final_size} hypothesis states")
        if self.membership_queries > self.membership_bound():
            out.append(f"{self.membership_queries} membership queries exceed the bound "
                       f"{self.membership_bound():.1f}")
        if any(b <= a for a, b in zip(self.hypothesis_sizes, self.hypothesis_sizes[1:])):
            out.append(f"hypothesis sizes not strictly increasing: {self.hypothesis_sizes}")
        return out

    def as_dict(self):
        return {
            "membership_queries": self.membership_queries,
            "equivalence_queries": self.equivalence_queries,
            "hypothesis_sizes": list(self.hypothesis_sizes),
            "longest_counterexample": self.longest_counterexample,
            "membership_bound": round(self.membership_bound(), 3),
            "seconds": {k: round(v, 6) for k, v in self.seconds.items()},
        }


def learn(teacher, max_rounds=DEFAULT_ROUNDS, trace=None):
    """Run the learner against ``teacher`` until it accepts a hypothesis.

    ``teacher`` needs ``alphabet``, ``membership(word) -> bool`` and
    ``equivalence(dfa)`` returning an object with ``accepted`` and
    ``counterexample``.  Returns ``(dfa, stats)``.
    """
    alphabet = teacher.alphabet
    stats = LearningStats(alphabet_size=len(alphabet))
    t = ObservationTable(alphabet, teacher.membership)

    clock = time.perf_counter()
    t.fill()
    close_table(t)
    stats.seconds["table"] += time.perf_counter() - clock

    while True:
        h = build_hypothesis(t)
        stats.hypothesis_sizes.append(h.n_states)
        if stats.equivalence_queries >= max_rounds:
            stats.membership_queries = t.queries
            raise RoundLimitExceeded(max_rounds, stats, t.dump())
        stats.equivalence_queries += 1
        clock = time.perf_counter()
        answer = teacher.equivalence(h)
        stats.seconds["equivalence"] += time.perf_counter() - clock
        event = {"kind": "round", "round": stats.equivalence_queries, "rows": len(t.access),
                 "columns": len(t.suffixes), "hypothesis_size": h.n_states,
                 "membership_queries": t.queries}
        if answer.accepted:
            stats.membership_queries = t.queries
            if trace is not None:
                trace({**event, "answer": "yes"})
            return h, stats
        w = answer.counterexample
        if trace is not None:
            cause = getattr(answer, "cause", None)
            trace({**event, "answer": "no", "counterexample": alphabet.show(w),
                   "cause": cause.value if cause is not None else None})
        stats.counterexample_lengths.append(len(w))
        clock = time.perf_counter()
        stats.counterexample_probes.append(process_counterexample(t, w, h))
        stats.seconds["counterexample"] += time.perf_counter() - clock
        clock = time.perf_counter()
        close_table(t)
        stats.seconds["table"] += time.perf_counter() - clock
        if t.row_classes() <= h.n_states:
            raise TeacherContractError("counterexample did not add a state")


class DfaTeacher:
    """Exact teacher for a known target automaton (shortest counterexamples)."""

    def __init__(self, target):
        self.target = automata.minimize(automata.determinize(target))
        self.alphabet = target.alphabet

    def membership(self, w):
        return automata.accepts(self.target, w)

    def equivalence(self, h):
        from .teacher import YES, EquivalenceAnswer, Polarity

        w = automata.distinguishing_word(h, self.target)
        if w is None:
            return YES
        polarity = Polarity.SHOULD_BE_IN if self.membership(w) else Polarity.SHOULD_BE_OUT
        return EquivalenceAnswer(w, polarity)
