"""Pure-Python hot kernels; ``_ckernels.pyx`` mirrors this module function for function.

Automata arrive here pre-flattened: a DFA over ``k`` symbols is a list of
``Q * k`` successor ids, a pair-deterministic transducer is a list of
``Q * k * k`` successor ids (``-1`` for a missing transition) and ``finals`` is
a bytes object with one flag per state.  Words are ``bytes`` of symbol ids.
"""

from .errors import BudgetExceeded


class DfaKernel:
    __slots__ = ("table", "nsym", "initial", "finals")

    def __init__(self, table, nsym, initial, finals):
        self.table = list(table)
        self.nsym = nsym
        self.initial = initial
        self.finals = bytes(finals)

    def accepts(self, word):
        table, k = self.table, self.nsym
        q = self.initial
        for c in word:
            q = table[q * k + c]
        return self.finals[q] == 1


class TransducerKernel:
    __slots__ = ("table", "nsym", "n_states", "initial", "finals")

    def __init__(self, table, nsym, initial, finals):
        self.table = list(table)
        self.nsym = nsym
        self.n_states = len(finals)
        self.initial = initial
        self.finals = bytes(finals)

    def successors(self, word, limit):
        """All ``v`` with ``(word, v)`` in the relation, in lexicographic order."""
        table, k, finals = self.table, self.nsym, self.finals
        kk = k * k
        n = len(word)
        out = []
        buf = bytearray(n)
        dead = set()

        def walk(pos, q):
            if pos == n:
                if finals[q]:
                    if len(out) >= limit:
                        raise BudgetExceeded(limit, "successors")
                    out.append(bytes(buf))
                    return True
                return False
            if (pos, q) in dead:
                return False
            base = q * kk + word[pos] * k
            found = False
            for b in range(k):
                r = table[base + b]
                if r >= 0:
                    buf[pos] = b
                    if walk(pos + 1, r):
                        found = True
            if not found:
                dead.add((pos, q))
            return found

        walk(0, self.initial)
        return out


def explore(trans, v0, v1, bad, root, budget):
    """Forward closure of ``root`` under the edge relation restricted to V.

    ``root`` must itself be a vertex.  Returns ``(vertices, owner, bad, indptr,
    indices)`` with the adjacency in CSR form; owner 0 is Player 0.
    """
    index = {root: 0}
    vertices = [root]
    rejected = set()
    owner = bytearray()
    is_bad = bytearray()
    indptr = [0]
    indices = []
    i = 0
    while i < len(vertices):
        w = vertices[i]
        owner.append(0 if v0.accepts(w) else 1)
        is_bad.append(1 if bad.accepts(w) else 0)
        for s in trans.successors(w, budget):
            j = index.get(s)
            if j is None:
                if s in rejected:
                    continue
                if not (v0.accepts(s) or v1.accepts(s)):
                    rejected.add(s)
                    continue
                if len(vertices) >= budget:
                    raise BudgetExceeded(budget, "vertices", root)
                j = index[s] = len(vertices)
                vertices.append(s)
            indices.append(j)
        indptr.append(len(indices))
        i += 1
    return vertices, owner, is_bad, indptr, indices


def attractor(owner, bad, indptr, indices):
    """Per-vertex flag, 1 iff Player 0 wins (vertex outside Player 1's attractor of ``bad``).

    Player-0 vertices without successors are losing; Player-1 vertices without
    successors are safe.
    """
    n = len(owner)
    preds = [[] for _ in range(n)]
    remaining = [0] * n
    for v in range(n):
        lo, hi = indptr[v], indptr[v + 1]
        remaining[v] = hi - lo
        for e in range(lo, hi):
            preds[indices[e]].append(v)
    attr = bytearray(n)
    stack = []
    for v in range(n):
        if bad[v] or (owner[v] == 0 and remaining[v] == 0):
            attr[v] = 1
            stack.append(v)
    while stack:
        v = stack.pop()
        for u in preds[v]:
            if attr[u]:
                continue
            if owner[u] == 1:
                attr[u] = 1
                stack.append(u)
            else:
                remaining[u] -= 1
                if remaining[u] == 0:
                    attr[u] = 1
                    stack.append(u)
    return bytearray(1 - a for a in attr)
