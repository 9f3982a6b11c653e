"""Length-preserving transducers: the edge relation of a regular arena."""

from collections import defaultdict

from . import automata
from .automata import Alphabet, Nfa, as_word
from .errors import InputError, ParseError
from .kernels import TransducerKernel


class Transducer:
    """Automaton over symbol pairs; ``(p, a, b, q)`` reads ``a`` and writes ``b``."""

    def __init__(self, alphabet, n_states, initial, transitions, finals):
        if n_states < 1:
            raise InputError("a transducer needs at least one state")
        if not 0 <= initial < n_states:
            raise InputError(f"initial state {initial} out of range")
        k = len(alphabet)
        by_in = [defaultdict(set) for _ in range(n_states)]
        for p, a, b, q in transitions:
            if not (0 <= p < n_states and 0 <= q < n_states):
                raise InputError(f"transition ({p}, {a}/{b}, {q}) has an endpoint out of range")
            if not (0 <= a < k and 0 <= b < k):
                raise InputError(f"transition ({p}, {a}/{b}, {q}) uses a symbol outside the alphabet")
            by_in[p][a].add((b, q))
        finals = frozenset(finals)
        if any(not 0 <= f < n_states for f in finals):
            raise InputError("final state out of range")
        self.alphabet = alphabet
        self.n_states = n_states
        self.initial = initial
        self.finals = finals
        self.by_in = [{a: tuple(sorted(s)) for a, s in sorted(d.items())} for d in by_in]
        by_out = [defaultdict(list) for _ in range(n_states)]
        for p, d in enumerate(self.by_in):
            for a, outs in d.items():
                for b, q in outs:
                    by_out[p][b].append((a, q))
        self.by_out = [{b: tuple(sorted(s)) for b, s in sorted(d.items())} for d in by_out]
        self._kernel = None

    def transitions(self):
        for p, d in enumerate(self.by_in):
            for a, outs in d.items():
                for b, q in outs:
                    yield p, a, b, q

    def n_transitions(self):
        return sum(len(outs) for d in self.by_in for outs in d.values())

    def __repr__(self):
        return f"Transducer(states={self.n_states}, transitions={self.n_transitions()})"

    @property
    def kernel(self):
        """Pair-deterministic, trimmed form of the relation, compiled for successor enumeration."""
        if self._kernel is None:
            self._kernel = TransducerKernel(*compile_tables(self))
        return self._kernel


def compile_tables(t):
    """Flat ``(table, k, initial, finals)`` of the pair-determinized, trimmed relation."""
    k = len(t.alphabet)
    kk = k * k
    start = frozenset((t.initial,))
    index = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        subset = order[i]
        targets = defaultdict(set)
        for p in subset:
            for a, outs in t.by_in[p].items():
                for b, q in outs:
                    targets[a * k + b].add(q)
        row = [-1] * kk
        for letter, qs in targets.items():
            qs = frozenset(qs)
            j = index.get(qs)
            if j is None:
                j = index[qs] = len(order)
                order.append(qs)
            row[letter] = j
        rows.append(row)
        i += 1
    n = len(order)
    live = {j for j, s in enumerate(order) if not s.isdisjoint(t.finals)}
    changed = True
    while changed:
        changed = False
        for j, row in enumerate(rows):
            if j not in live and any(r in live for r in row if r >= 0):
                live.add(j)
                changed = True
    table = []
    for j, row in enumerate(rows):
        table.extend(r if r >= 0 and r in live else -1 for r in row)
    finals = bytes(1 if not order[j].isdisjoint(t.finals) else 0 for j in range(n))
    return table, k, 0, finals


def identity(alphabet):
    return Transducer(alphabet, 1, 0, [(0, a, a, 0) for a in range(len(alphabet))], [0])


def _same_alphabet(t, a):
    if t.alphabet != a.alphabet:
        raise InputError("transducer and automaton are over different alphabets")


def relates(t, u, v):
    u = as_word(t.alphabet, u)
    v = as_word(t.alphabet, v)
    if len(u) != len(v):
        return False
    current = {t.initial}
    for a, b in zip(u, v):
        nxt = set()
        for p in current:
            for b2, q in t.by_in[p].get(a, ()):
                if b2 == b:
                    nxt.add(q)
        if not nxt:
            return False
        current = nxt
    return not current.isdisjoint(t.finals)


def successors(t, u, budget=1_000_000):
    """Every ``v`` related to ``u``, lexicographically ordered."""
    u = as_word(t.alphabet, u)
    return t.kernel.successors(u, budget)


def _image(t, a, forward):
    _same_alphabet(t, a)
    moves = t.by_in if forward else t.by_out
    da = a.delta
    start = (t.initial, a.initial)
    index = {start: 0}
    order = [start]
    transitions = []
    i = 0
    while i < len(order):
        p, q = order[i]
        dq = da[q]
        for read, outs in moves[p].items():
            qs = dq.get(read)
            if not qs:
                continue
            for emit, p2 in outs:
                for q2 in qs:
                    pair = (p2, q2)
                    j = index.get(pair)
                    if j is None:
                        j = index[pair] = len(order)
                        order.append(pair)
                    transitions.append((i, emit, j))
        i += 1
    finals = [j for j, (p, q) in enumerate(order) if p in t.finals and q in a.finals]
    return Nfa(t.alphabet, len(order), 0, transitions, finals)


def post_image(t, a):
    """NFA for ``{v : exists u in L(a), (u, v) related}``."""
    return _image(t, a, forward=True)


def pre_image(t, a):
    """NFA for ``{u : exists v in L(a), (u, v) related}``."""
    return _image(t, a, forward=False)


def domain(t):
    return pre_image(t, automata.universal(t.alphabet))


# -- pair-alphabet view, used to compact generated transducers ----------------------

def pair_alphabet(alphabet):
    return Alphabet(f"{a}/{b}" for a in alphabet for b in alphabet)


def to_pair_nfa(t):
    k = len(t.alphabet)
    return Nfa(pair_alphabet(t.alphabet), t.n_states, t.initial,
               [(p, a * k + b, q) for p, a, b, q in t.transitions()], t.finals)


def from_pair_automaton(alphabet, a):
    """Inverse of :func:`to_pair_nfa`; states that cannot reach a final state are dropped."""
    k = len(alphabet)
    live = set(a.finals)
    changed = True
    while changed:
        changed = False
        for p, c, q in a.transitions():
            if q in live and p not in live:
                live.add(p)
                changed = True
    if a.initial not in live:
        return Transducer(alphabet, 1, 0, [], [])
    keep = sorted(live)
    ren = {q: i for i, q in enumerate(keep)}
    transitions = [(ren[p], c // k, c % k, ren[q]) for p, c, q in a.transitions()
                   if p in live and q in live]
    return Transducer(alphabet, len(keep), ren[a.initial], transitions, [ren[f] for f in a.finals])


def minimize_transducer(t):
    """Smallest pair-deterministic transducer for the same relation (sink removed)."""
    d = automata.minimize(automata.determinize(to_pair_nfa(t)))
    return from_pair_automaton(t.alphabet, d)


# -- text format --------------------------------------------------------------

def build_transducer(lines, alphabet, start_line=None):
    reader = automata._BlockReader("transducer")
    for lineno, tokens in lines:
        reader.feed(lineno, tokens)
    n, init, finals = reader.header(start_line)
    transitions = []
    for lineno, (src, label, dst) in reader.trans:
        a, sep, b = label.partition("/")
        if not sep or not a or not b:
            raise ParseError(f"transducer label {label!r} must be 'in/out'", lineno)
        transitions.append((reader.state(lineno, src), automata._symbol(alphabet, lineno, a),
                            automata._symbol(alphabet, lineno, b), reader.state(lineno, dst)))
    return Transducer(alphabet, n, init, transitions, finals)


def render_transducer(t, prefix="e"):
    names = [f"{prefix}{i}" for i in range(t.n_states)]
    sym = t.alphabet.symbols
    out = [
        "states: " + " ".join(names),
        f"initial: {names[t.initial]}",
        "accepting: " + " ".join(names[f] for f in sorted(t.finals)),
    ]
    for p, a, b, q in t.transitions():
        out.append(f"trans: {names[p]} {sym[a]}/{sym[b]} {names[q]}")
    return "\n".join(line.rstrip() for line in out) + "\n"


def to_dot(t, name="E"):
    sym = t.alphabet.symbols
    labels = defaultdict(list)
    for p, a, b, q in t.transitions():
        labels[p, q].append(f"{sym[a]}/{sym[b]}")
    esc = automata._dot_escape
    out = [f'digraph "{esc(name)}" {{', "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in range(t.n_states):
        shape = "doublecircle" if q in t.finals else "circle"
        out.append(f'  e{q} [shape={shape}, label="e{q}"];')
    out.append(f"  __start -> e{t.initial};")
    for (p, q), labs in sorted(labels.items()):
        out.append(f'  e{p} -> e{q} [label="{esc(",".join(labs))}"];')
    out.append("}")
    return "\n".join(out) + "\n"
