"""Finite automata over a fixed alphabet.

Words are ``bytes`` objects holding symbol ids; the id of a symbol is its
position in the declared :class:`Alphabet`.  Byte order therefore coincides
with the declared symbol order, which is what every lexicographic tie-break in
the package relies on.

NFAs keep, per state, a mapping ``symbol id -> tuple of successor states``.
DFAs are always complete: ``table[q][a]`` is defined for every state and
symbol, with an explicit rejecting sink where needed.
"""

from collections import defaultdict, deque

from .errors import ContractError, InputError, ParseError

Word = bytes

EPSILON = "ε"


class Alphabet:
    """Ordered, duplicate-free list of opaque symbol names."""

    def __init__(self, symbols):
        symbols = tuple(symbols)
        if not symbols:
            raise InputError("alphabet must contain at least one symbol")
        if len(set(symbols)) != len(symbols):
            dupes = sorted({s for s in symbols if symbols.count(s) > 1})
            raise InputError(f"duplicate symbols in alphabet: {dupes}")
        for s in symbols:
            if not isinstance(s, str) or not s or any(ch.isspace() for ch in s) or "#" in s:
                raise InputError(f"invalid symbol name {s!r}")
        self.symbols = symbols
        self._index = {s: i for i, s in enumerate(symbols)}

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"Alphabet({list(self.symbols)!r})"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown symbol {name!r}") from None

    def encode(self, names):
        """Turn a sequence of symbol names into a word."""
        ids = [self.index(n) for n in names]
        if ids and max(ids) > 255:
            raise InputError("words can only be formed over the first 256 symbols")
        return bytes(ids)

    def word(self, text):
        """Parse a whitespace-separated word; ``ε`` or the empty string is the empty word."""
        tokens = text.split()
        if tokens == [EPSILON]:
            return b""
        return self.encode(tokens)

    def decode(self, w):
        return tuple(self.symbols[c] for c in w)

    def show(self, w):
        return " ".join(self.decode(w)) or EPSILON

    def check(self, w):
        k = len(self.symbols)
        for c in w:
            if c >= k:
                raise InputError(f"symbol id {c} outside alphabet of size {k}")
        return bytes(w)


def as_word(alphabet, w):
    """Coerce ``w`` to an id-encoded word over ``alphabet``.

    Accepts bytes (checked), a sequence of symbol names, or a string.  A string
    containing whitespace is split into tokens; otherwise, unless it names a
    single symbol, it is read character by character.
    """
    if isinstance(w, (bytes, bytearray)):
        return alphabet.check(w)
    if isinstance(w, str):
        tokens = w.split()
        if len(tokens) == 1 and tokens[0] not in alphabet:
            tokens = list(tokens[0])
        if tokens == [EPSILON]:
            tokens = []
        return alphabet.encode(tokens)
    return alphabet.encode(w)


class Nfa:
    """Nondeterministic automaton with states ``0 .. n_states-1``."""

    def __init__(self, alphabet, n_states, initial, transitions, finals):
        if n_states < 1:
            raise InputError("an automaton needs at least one state")
        if not 0 <= initial < n_states:
            raise InputError(f"initial state {initial} out of range")
        k = len(alphabet)
        succ = [defaultdict(set) for _ in range(n_states)]
        for p, a, q in transitions:
            if not (0 <= p < n_states and 0 <= q < n_states):
                raise InputError(f"transition ({p}, {a}, {q}) has an endpoint out of range")
            if not 0 <= a < k:
                raise InputError(f"transition ({p}, {a}, {q}) uses a symbol outside the alphabet")
            succ[p][a].add(q)
        finals = frozenset(finals)
        if any(not 0 <= f < n_states for f in finals):
            raise InputError("final state out of range")
        self.alphabet = alphabet
        self.n_states = n_states
        self.initial = initial
        self.finals = finals
        self._delta = [{a: tuple(sorted(qs)) for a, qs in sorted(d.items())} for d in succ]

    @property
    def delta(self):
        return self._delta

    def transitions(self):
        for p, d in enumerate(self.delta):
            for a, qs in d.items():
                for q in qs:
                    yield p, a, q

    def n_transitions(self):
        return sum(len(qs) for d in self.delta for qs in d.values())

    def is_deterministic(self):
        return all(len(qs) <= 1 for d in self.delta for qs in d.values())

    def __repr__(self):
        return (f"{type(self).__name__}(states={self.n_states}, "
                f"transitions={self.n_transitions()}, finals={len(self.finals)})")


class Dfa(Nfa):
    """Complete deterministic automaton given by a transition table."""

    def __init__(self, alphabet, table, initial, finals):
        n = len(table)
        k = len(alphabet)
        if n < 1:
            raise InputError("a DFA needs at least one state")
        rows = []
        for q, row in enumerate(table):
            row = tuple(row)
            if len(row) != k:
                raise ContractError(f"state {q} of DFA is not complete")
            if any(not 0 <= r < n for r in row):
                raise InputError(f"state {q} has a successor out of range")
            rows.append(row)
        if not 0 <= initial < n:
            raise InputError(f"initial state {initial} out of range")
        finals = frozenset(finals)
        if any(not 0 <= f < n for f in finals):
            raise InputError("final state out of range")
        self.alphabet = alphabet
        self.n_states = n
        self.initial = initial
        self.finals = finals
        self.table = rows
        self._delta = None

    @property
    def delta(self):
        if self._delta is None:
            self._delta = [{a: (r,) for a, r in enumerate(row)} for row in self.table]
        return self._delta

    def run(self, w, state=None):
        q = self.initial if state is None else state
        table = self.table
        for c in w:
            q = table[q][c]
        return q

    def is_deterministic(self):
        return True


def _same_alphabet(a, b):
    if a.alphabet != b.alphabet:
        raise InputError("automata are over different alphabets")


# -- membership ---------------------------------------------------------------

def accepts(a, w):
    w = as_word(a.alphabet, w)
    if isinstance(a, Dfa):
        return a.run(w) in a.finals
    delta = a.delta
    current = {a.initial}
    for c in w:
        current = {q for p in current for q in delta[p].get(c, ())}
        if not current:
            return False
    return not current.isdisjoint(a.finals)


# -- constructions ------------------------------------------------------------

def determinize(a):
    """Subset construction restricted to reachable subsets."""
    if isinstance(a, Dfa):
        return a
    k = len(a.alphabet)
    delta = a.delta
    start = frozenset((a.initial,))
    index = {start: 0}
    order = [start]
    table = []
    i = 0
    while i < len(order):
        subset = order[i]
        row = []
        for c in range(k):
            target = frozenset(q for p in subset for q in delta[p].get(c, ()))
            j = index.get(target)
            if j is None:
                j = index[target] = len(order)
                order.append(target)
            row.append(j)
        table.append(row)
        i += 1
    finals = [j for j, subset in enumerate(order) if not subset.isdisjoint(a.finals)]
    return Dfa(a.alphabet, table, 0, finals)


def complement(d):
    if not isinstance(d, Dfa):
        raise ContractError("complement requires a complete DFA")
    return Dfa(d.alphabet, d.table, d.initial, set(range(d.n_states)) - d.finals)


def _product_dfa(a, b, accept):
    k = len(a.alphabet)
    ta, tb = a.table, b.table
    start = (a.initial, b.initial)
    index = {start: 0}
    order = [start]
    table = []
    i = 0
    while i < len(order):
        p, q = order[i]
        ra, rb = ta[p], tb[q]
        row = []
        for c in range(k):
            pair = (ra[c], rb[c])
            j = index.get(pair)
            if j is None:
                j = index[pair] = len(order)
                order.append(pair)
            row.append(j)
        table.append(row)
        i += 1
    fa, fb = a.finals, b.finals
    finals = [j for j, (p, q) in enumerate(order) if accept(p in fa, q in fb)]
    return Dfa(a.alphabet, table, 0, finals)


def intersect(a, b):
    """Product automaton for L(a) ∩ L(b); a DFA when both inputs are DFAs."""
    _same_alphabet(a, b)
    if isinstance(a, Dfa) and isinstance(b, Dfa):
        return _product_dfa(a, b, lambda x, y: x and y)
    da, db = a.delta, b.delta
    start = (a.initial, b.initial)
    index = {start: 0}
    order = [start]
    transitions = []
    i = 0
    while i < len(order):
        p, q = order[i]
        dq = db[q]
        for c, ps in da[p].items():
            qs = dq.get(c)
            if not qs:
                continue
            for p2 in ps:
                for q2 in qs:
                    pair = (p2, q2)
                    j = index.get(pair)
                    if j is None:
                        j = index[pair] = len(order)
                        order.append(pair)
                    transitions.append((i, c, j))
        i += 1
    finals = [j for j, (p, q) in enumerate(order) if p in a.finals and q in b.finals]
    return Nfa(a.alphabet, len(order), 0, transitions, finals)


def union(a, b):
    _same_alphabet(a, b)
    if isinstance(a, Dfa) and isinstance(b, Dfa):
        return _product_dfa(a, b, lambda x, y: x or y)
    na = a.n_states
    fresh = na + b.n_states
    transitions = list(a.transitions())
    transitions += [(p + na, c, q + na) for p, c, q in b.transitions()]
    for c, qs in a.delta[a.initial].items():
        transitions += [(fresh, c, q) for q in qs]
    for c, qs in b.delta[b.initial].items():
        transitions += [(fresh, c, q + na) for q in qs]
    finals = set(a.finals) | {f + na for f in b.finals}
    if a.initial in a.finals or b.initial in b.finals:
        finals.add(fresh)
    return Nfa(a.alphabet, fresh + 1, fresh, transitions, finals)


def difference(a, b):
    """L(a) minus L(b); ``b`` is determinized first when it is not a DFA."""
    _same_alphabet(a, b)
    return intersect(a, complement(determinize(b)))


def universal(alphabet):
    return Dfa(alphabet, [[0] * len(alphabet)], 0, [0])


def empty(alphabet):
    return Dfa(alphabet, [[0] * len(alphabet)], 0, [])


# -- witnesses and decision procedures -------------------------------------------

def _reconstruct(parent, state):
    out = []
    while parent[state] is not None:
        state, c = parent[state]
        out.append(c)
    return bytes(reversed(out))


def shortest_member(a):
    """Shortest accepted word, ties broken lexicographically; ``None`` if L(a) is empty."""
    if a.initial in a.finals:
        return b""
    k = len(a.alphabet)
    finals = a.finals
    parent = {a.initial: None}
    queue = deque((a.initial,))
    if isinstance(a, Dfa):
        table = a.table
        while queue:
            p = queue.popleft()
            row = table[p]
            for c in range(k):
                q = row[c]
                if q not in parent:
                    parent[q] = (p, c)
                    if q in finals:
                        return _reconstruct(parent, q)
                    queue.append(q)
        return None
    delta = a.delta
    while queue:
        p = queue.popleft()
        for c, qs in delta[p].items():
            for q in qs:
                if q not in parent:
                    parent[q] = (p, c)
                    if q in finals:
                        return _reconstruct(parent, q)
                    queue.append(q)
    return None


def is_empty(a):
    return shortest_member(a) is None


def distinguishing_word(a, b):
    """Shortest (then lexicographically least) word in L(a) ⊖ L(b), or ``None``."""
    _same_alphabet(a, b)
    a, b = determinize(a), determinize(b)
    k = len(a.alphabet)
    start = (a.initial, b.initial)
    if (start[0] in a.finals) != (start[1] in b.finals):
        return b""
    parent = {start: None}
    queue = deque((start,))
    while queue:
        p, q = pair = queue.popleft()
        ra, rb = a.table[p], b.table[q]
        for c in range(k):
            nxt = (ra[c], rb[c])
            if nxt not in parent:
                parent[nxt] = (pair, c)
                if (nxt[0] in a.finals) != (nxt[1] in b.finals):
                    return _reconstruct(parent, nxt)
                queue.append(nxt)
    return None


def equivalent(a, b):
    return distinguishing_word(a, b) is None


def is_subset(a, b):
    return is_empty(difference(a, b))


def trim_unreachable(d):
    """Renumber the reachable part of a DFA in breadth-first, symbol-ordered discovery order."""
    k = len(d.alphabet)
    index = {d.initial: 0}
    order = [d.initial]
    i = 0
    while i < len(order):
        row = d.table[order[i]]
        for c in range(k):
            if row[c] not in index:
                index[row[c]] = len(order)
                order.append(row[c])
        i += 1
    table = [[index[d.table[q][c]] for c in range(k)] for q in order]
    finals = [index[q] for q in order if q in d.finals]
    return Dfa(d.alphabet, table, 0, finals)


def minimize(d):
    """Minimal complete DFA via Hopcroft partition refinement.

    The result is in canonical breadth-first numbering, so two minimal DFAs for
    the same language have identical tables.
    """
    if not isinstance(d, Dfa):
        raise ContractError("minimize requires a complete DFA")
    d = trim_unreachable(d)
    n, k = d.n_states, len(d.alphabet)
    inverse = [[[] for _ in range(n)] for _ in range(k)]
    for q, row in enumerate(d.table):
        for c, r in enumerate(row):
            inverse[c][r].append(q)

    blocks = [set(b) for b in (d.finals, set(range(n)) - d.finals) if b]
    block_of = [0] * n
    for i, b in enumerate(blocks):
        for q in b:
            block_of[q] = i
    work = deque(range(len(blocks)))
    pending = set(work)
    while work:
        b = work.popleft()
        pending.discard(b)
        splitter = tuple(blocks[b])
        for c in range(k):
            inv = inverse[c]
            touched = defaultdict(set)
            for r in splitter:
                for q in inv[r]:
                    touched[block_of[q]].add(q)
            for y, inside in touched.items():
                whole = blocks[y]
                if len(inside) == len(whole):
                    continue
                outside = whole - inside
                new = len(blocks)
                blocks[y] = outside
                blocks.append(inside)
                for q in inside:
                    block_of[q] = new
                if y in pending:
                    work.append(new)
                    pending.add(new)
                else:
                    smaller = new if len(inside) <= len(outside) else y
                    work.append(smaller)
                    pending.add(smaller)

    table = [[block_of[d.table[next(iter(b))][c]] for c in range(k)] for b in blocks]
    finals = [i for i, b in enumerate(blocks) if next(iter(b)) in d.finals]
    return trim_unreachable(Dfa(d.alphabet, table, block_of[d.initial], finals))


def enumerate_length(a, n, budget=None):
    """All accepted words of length exactly ``n``, in lexicographic order.

    Raises :class:`BudgetExceeded` once more than ``budget`` words are found.
    """
    from .errors import BudgetExceeded

    delta = a.delta
    alive = [None] * (n + 1)
    alive[n] = set(a.finals)
    for i in range(n - 1, -1, -1):
        nxt = alive[i + 1]
        alive[i] = {p for p in range(a.n_states)
                    if any(not nxt.isdisjoint(qs) for qs in delta[p].values())}
    if a.initial not in alive[0]:
        return []
    k = len(a.alphabet)
    out = []
    prefix = bytearray()

    def walk(states, depth):
        if depth == n:
            if budget is not None and len(out) >= budget:
                raise BudgetExceeded(budget, "words")
            out.append(bytes(prefix))
            return
        live = alive[depth + 1]
        for c in range(k):
            nxt = frozenset(q for p in states for q in delta[p].get(c, ()) if q in live)
            if nxt:
                prefix.append(c)
                walk(nxt, depth + 1)
                prefix.pop()

    walk(frozenset((a.initial,)), 0)
    return out


# -- text format --------------------------------------------------------------

def tokenize(text):
    """Yield ``(line number, tokens)`` for every non-blank line, comments stripped."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        tokens = line.split()
        if tokens:
            yield lineno, tokens


def _split_key(lineno, tokens):
    head = tokens[0]
    if ":" in head:
        key, _, rest = head.partition(":")
        rest_tokens = [rest] if rest else []
        return key, rest_tokens + tokens[1:]
    raise ParseError(f"expected 'key:' but found {head!r}", lineno)


class _BlockReader:
    """Shared reader for the ``states:/initial:/accepting:/trans:`` block syntax."""

    def __init__(self, what):
        self.what = what
        self.names = {}
        self.initial = None
        self.accepting = []
        self.trans = []

    def feed(self, lineno, tokens):
        key, args = _split_key(lineno, tokens)
        if key == "states":
            for s in args:
                if s in self.names:
                    raise ParseError(f"duplicate state {s!r}", lineno)
                self.names[s] = len(self.names)
        elif key == "initial":
            if len(args) != 1:
                raise ParseError("'initial:' takes exactly one state", lineno)
            if self.initial is not None:
                raise ParseError("initial state declared twice", lineno)
            self.initial = (lineno, args[0])
        elif key == "accepting":
            self.accepting.extend((lineno, s) for s in args)
        elif key == "trans":
            if args:
                if len(args) != 3:
                    raise ParseError("'trans:' takes 'src label dst'", lineno)
                self.trans.append((lineno, args))
        else:
            raise ParseError(f"unknown key {key!r} in {self.what} block", lineno)

    def state(self, lineno, name):
        try:
            return self.names[name]
        except KeyError:
            raise ParseError(f"undeclared state {name!r}", lineno) from None

    def header(self, start_line):
        if not self.names:
            raise ParseError(f"{self.what} block declares no states", start_line)
        if self.initial is None:
            raise ParseError(f"{self.what} block has no initial state", start_line)
        init = self.state(*self.initial)
        finals = {self.state(ln, s) for ln, s in self.accepting}
        return len(self.names), init, finals


def _symbol(alphabet, lineno, name):
    if name not in alphabet:
        raise ParseError(f"unknown symbol {name!r}", lineno)
    return alphabet.index(name)


def build_automaton(lines, alphabet, start_line=None):
    """Build an :class:`Nfa` from ``(line number, tokens)`` pairs of one block."""
    reader = _BlockReader("automaton")
    for lineno, tokens in lines:
        reader.feed(lineno, tokens)
    n, init, finals = reader.header(start_line)
    transitions = []
    for lineno, (src, sym, dst) in reader.trans:
        transitions.append((reader.state(lineno, src), _symbol(alphabet, lineno, sym),
                            reader.state(lineno, dst)))
    return Nfa(alphabet, n, init, transitions, finals)


def parse_automaton(text, alphabet):
    """Parse a standalone automaton block (e.g. a certificate file).

    An optional ``automaton NAME`` header line and an optional ``alphabet:``
    line are accepted; the latter must agree with ``alphabet``.
    """
    lines = []
    start = None
    for lineno, tokens in tokenize(text):
        if start is None:
            start = lineno
        if tokens[0] == "automaton":
            if lines:
                raise ParseError("only one automaton block expected", lineno)
            continue
        if tokens[0] == "alphabet:" or tokens[0].startswith("alphabet:"):
            _, args = _split_key(lineno, tokens)
            if tuple(args) != alphabet.symbols:
                raise ParseError("certificate alphabet differs from the game alphabet", lineno)
            continue
        lines.append((lineno, tokens))
    if not lines:
        raise ParseError("empty automaton", start)
    return build_automaton(lines, alphabet, start)


def render_automaton(a, prefix="q"):
    """Block text for ``a``; DFAs are written with every transition."""
    names = [f"{prefix}{i}" for i in range(a.n_states)]
    out = [
        "states: " + " ".join(names),
        f"initial: {names[a.initial]}",
        "accepting: " + " ".join(names[f] for f in sorted(a.finals)),
    ]
    sym = a.alphabet.symbols
    for p, c, q in a.transitions():
        out.append(f"trans: {names[p]} {sym[c]} {names[q]}")
    return "\n".join(line.rstrip() for line in out) + "\n"


def _dot_escape(s):
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(a, name="A"):
    """Graphviz rendering: doubled circles for finals, edges labelled with symbol names."""
    sym = a.alphabet.symbols
    labels = defaultdict(list)
    for p, c, q in a.transitions():
        labels[p, q].append(sym[c])
    out = [f'digraph "{_dot_escape(name)}" {{', "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in range(a.n_states):
        shape = "doublecircle" if q in a.finals else "circle"
        out.append(f'  q{q} [shape={shape}, label="q{q}"];')
    out.append(f"  __start -> q{a.initial};")
    for (p, q), syms in sorted(labels.items()):
        out.append(f'  q{p} -> q{q} [label="{_dot_escape(",".join(syms))}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def shortest_difference(a, b):
    """Shortest word in L(a) minus L(b), determinizing ``b`` only as far as the search needs.

    Same result as ``shortest_member(difference(a, b))`` without building the
    complement of ``b`` up front.
    """
    _same_alphabet(a, b)
    k = len(a.alphabet)
    da, db = a.delta, b.delta
    bfin = b.finals
    start = (frozenset((a.initial,)), frozenset((b.initial,)))

    def good(node):
        return not node[0].isdisjoint(a.finals) and node[1].isdisjoint(bfin)

    if good(start):
        return b""
    parent = {start: None}
    queue = deque((start,))
    while queue:
        node = queue.popleft()
        sa, sb = node
        for c in range(k):
            na = frozenset(q for p in sa for q in da[p].get(c, ()))
            if not na:
                continue
            nxt = (na, frozenset(q for p in sb for q in db[p].get(c, ())))
            if nxt not in parent:
                parent[nxt] = (node, c)
                if good(nxt):
                    return _reconstruct(parent, nxt)
                queue.append(nxt)
    return None
