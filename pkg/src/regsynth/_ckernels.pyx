# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counterparts of ``_pykernels``; same signatures, same results."""

from array import array

from cpython.mem cimport PyMem_Malloc, PyMem_Free
from libc.string cimport memset

from .errors import BudgetExceeded


cdef class DfaKernel:
    cdef int[::1] table
    cdef readonly int nsym
    cdef readonly int initial
    cdef const unsigned char[::1] finals_view
    cdef readonly bytes finals

    def __init__(self, table, int nsym, int initial, finals):
        self.table = array("i", table)
        self.nsym = nsym
        self.initial = initial
        self.finals = bytes(finals)
        self.finals_view = self.finals

    cdef bint _accepts(self, const unsigned char[:] word):
        cdef Py_ssize_t i
        cdef int q = self.initial
        cdef int k = self.nsym
        for i in range(word.shape[0]):
            q = self.table[q * k + word[i]]
        return self.finals_view[q] == 1

    def accepts(self, bytes word):
        return self._accepts(word)


cdef class TransducerKernel:
    cdef int[::1] table
    cdef readonly int nsym
    cdef readonly int n_states
    cdef readonly int initial
    cdef const unsigned char[::1] finals_view
    cdef readonly bytes finals

    def __init__(self, table, int nsym, int initial, finals):
        self.table = array("i", table)
        self.nsym = nsym
        self.initial = initial
        self.finals = bytes(finals)
        self.finals_view = self.finals
        self.n_states = len(self.finals)

    cdef list _successors(self, bytes word, Py_ssize_t limit):
        cdef Py_ssize_t n = len(word)
        cdef const unsigned char[:] w = word
        cdef int k = self.nsym
        cdef int kk = k * k
        cdef int Q = self.n_states
        cdef list out = []
        cdef Py_ssize_t depth, base
        cdef int q, b, r
        cdef int *state = <int *> PyMem_Malloc((n + 1) * sizeof(int))
        cdef int *nextb = <int *> PyMem_Malloc((n + 1) * sizeof(int))
        cdef unsigned char *found = <unsigned char *> PyMem_Malloc(n + 1)
        cdef unsigned char *dead = <unsigned char *> PyMem_Malloc((n + 1) * Q)
        cdef unsigned char *buf = <unsigned char *> PyMem_Malloc(n + 1)
        if not (state and nextb and found and dead and buf):
            PyMem_Free(state); PyMem_Free(nextb); PyMem_Free(found); PyMem_Free(dead); PyMem_Free(buf)
            raise MemoryError()
        try:
            memset(dead, 0, (n + 1) * Q)
            depth = 0
            state[0] = self.initial
            nextb[0] = 0
            found[0] = 0
            while depth >= 0:
                q = state[depth]
                if depth == n:
                    if self.finals_view[q]:
                        if len(out) >= limit:
                            raise BudgetExceeded(limit, "successors")
                        out.append(buf[:n])
                        if depth > 0:
                            found[depth - 1] = 1
                    depth -= 1
                    continue
                if nextb[depth] == 0 and dead[depth * Q + q]:
                    depth -= 1
                    continue
                base = q * kk + w[depth] * k
                b = nextb[depth]
                while b < k and self.table[base + b] < 0:
                    b += 1
                if b == k:
                    if found[depth]:
                        if depth > 0:
                            found[depth - 1] = 1
                    else:
                        dead[depth * Q + q] = 1
                    depth -= 1
                    continue
                nextb[depth] = b + 1
                buf[depth] = <unsigned char> b
                r = self.table[base + b]
                depth += 1
                state[depth] = r
                nextb[depth] = 0
                found[depth] = 0
            return out
        finally:
            PyMem_Free(state)
            PyMem_Free(nextb)
            PyMem_Free(found)
            PyMem_Free(dead)
            PyMem_Free(buf)

    def successors(self, bytes word, Py_ssize_t limit):
        return self._successors(word, limit)


def explore(TransducerKernel trans, DfaKernel v0, DfaKernel v1, DfaKernel bad,
            bytes root, Py_ssize_t budget):
    cdef dict index = {root: 0}
    cdef list vertices = [root]
    cdef set rejected = set()
    cdef bytearray owner = bytearray()
    cdef bytearray is_bad = bytearray()
    indptr = array("i", [0])
    indices = array("i")
    cdef Py_ssize_t i = 0
    cdef bytes w, s
    cdef object j
    while i < len(vertices):
        w = vertices[i]
        owner.append(0 if v0._accepts(w) else 1)
        is_bad.append(1 if bad._accepts(w) else 0)
        for s in trans._successors(w, budget):
            j = index.get(s)
            if j is None:
                if s in rejected:
                    continue
                if not (v0._accepts(s) or v1._accepts(s)):
                    rejected.add(s)
                    continue
                if len(vertices) >= budget:
                    raise BudgetExceeded(budget, "vertices", root)
                j = len(vertices)
                index[s] = j
                vertices.append(s)
            indices.append(j)
        indptr.append(len(indices))
        i += 1
    return vertices, owner, is_bad, indptr, indices


def attractor(owner, bad, indptr, indices):
    cdef const unsigned char[:] own = bytes(owner)
    cdef const unsigned char[:] bd = bytes(bad)
    cdef int[::1] ptr = indptr if isinstance(indptr, array) and indptr.typecode == "i" else array("i", indptr)
    cdef int[::1] idx = indices if isinstance(indices, array) and indices.typecode == "i" else array("i", indices)
    cdef Py_ssize_t n = own.shape[0]
    cdef Py_ssize_t m = idx.shape[0]
    cdef Py_ssize_t v, e, top
    cdef int u
    rev_ptr_arr = array("i", bytes(4 * (n + 1)))
    rev_arr = array("i", bytes(4 * m))
    remaining_arr = array("i", bytes(4 * n))
    stack_arr = array("i", bytes(4 * n))
    fill_arr = array("i", bytes(4 * (n + 1)))
    cdef int[::1] rev_ptr = rev_ptr_arr
    cdef int[::1] rev = rev_arr
    cdef int[::1] remaining = remaining_arr
    cdef int[::1] stack = stack_arr
    cdef int[::1] fill = fill_arr
    result = bytearray(n)
    cdef unsigned char[::1] attr = bytearray(n)

    for e in range(m):
        rev_ptr[idx[e] + 1] += 1
    for v in range(n):
        rev_ptr[v + 1] += rev_ptr[v]
        fill[v] = rev_ptr[v]
    for v in range(n):
        remaining[v] = ptr[v + 1] - ptr[v]
        for e in range(ptr[v], ptr[v + 1]):
            rev[fill[idx[e]]] = <int> v
            fill[idx[e]] += 1

    top = 0
    for v in range(n):
        if bd[v] or (own[v] == 0 and remaining[v] == 0):
            attr[v] = 1
            stack[top] = <int> v
            top += 1
    while top > 0:
        top -= 1
        v = stack[top]
        for e in range(rev_ptr[v], rev_ptr[v + 1]):
            u = rev[e]
            if attr[u]:
                continue
            if own[u] == 1:
                attr[u] = 1
                stack[top] = u
                top += 1
            else:
                remaining[u] -= 1
                if remaining[u] == 0:
                    attr[u] = 1
                    stack[top] = u
                    top += 1
    for v in range(n):
        result[v] = 1 - attr[v]
    return result
