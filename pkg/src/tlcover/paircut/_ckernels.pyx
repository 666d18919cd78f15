# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled graph kernels for the pair-cut solver.

Integer arrays are ``array.array('i')`` and masks are ``bytearray``; the
pure-Python twin in ``_pykernels`` takes and returns the same types.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free

BACKEND = "cython"


def reach(const int[::1] indptr, const int[::1] targets, int source,
          const unsigned char[::1] removed):
    """Vertices reachable from ``source`` avoiding ``removed`` (mask)."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    out = bytearray(n)
    cdef unsigned char[::1] seen = out
    cdef int *stack = <int *> PyMem_Malloc((n + 1) * sizeof(int))
    if stack == NULL:
        raise MemoryError()
    cdef int top = 0, v, w, i
    try:
        seen[source] = 1
        stack[top] = source
        top += 1
        while top:
            top -= 1
            v = stack[top]
            for i in range(indptr[v], indptr[v + 1]):
                w = targets[i]
                if not seen[w] and not removed[w]:
                    seen[w] = 1
                    stack[top] = w
                    top += 1
    finally:
        PyMem_Free(stack)
    return out


def augment(const int[::1] indptr, const int[::1] arcs, const int[::1] head,
            int[::1] cap, int source, int sink):
    """Push one unit along a shortest augmenting path; return 1 if found.

    Arc ``e`` and ``e ^ 1`` are mutual reverses.
    """
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef int *parent = <int *> PyMem_Malloc(n * sizeof(int))
    cdef int *queue = <int *> PyMem_Malloc(n * sizeof(int))
    if parent == NULL or queue == NULL:
        PyMem_Free(parent)
        PyMem_Free(queue)
        raise MemoryError()
    cdef int qh = 0, qt = 0, v, e, w, i, found = 0
    try:
        for i in range(n):
            parent[i] = -2
        parent[source] = -1
        queue[qt] = source
        qt += 1
        while qh < qt and not found:
            v = queue[qh]
            qh += 1
            for i in range(indptr[v], indptr[v + 1]):
                e = arcs[i]
                if cap[e] <= 0:
                    continue
                w = head[e]
                if parent[w] != -2:
                    continue
                parent[w] = e
                if w == sink:
                    found = 1
                    break
                queue[qt] = w
                qt += 1
        if found:
            w = sink
            while w != source:
                e = parent[w]
                cap[e] -= 1
                cap[e ^ 1] += 1
                w = head[e ^ 1]
    finally:
        PyMem_Free(parent)
        PyMem_Free(queue)
    return found


def residual_reach(const int[::1] indptr, const int[::1] arcs, const int[::1] head,
                   const int[::1] cap, int source):
    """Nodes reachable from ``source`` through arcs of positive residual capacity."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    out = bytearray(n)
    cdef unsigned char[::1] seen = out
    cdef int *stack = <int *> PyMem_Malloc((n + 1) * sizeof(int))
    if stack == NULL:
        raise MemoryError()
    cdef int top = 0, v, w, e, i
    try:
        seen[source] = 1
        stack[top] = source
        top += 1
        while top:
            top -= 1
            v = stack[top]
            for i in range(indptr[v], indptr[v + 1]):
                e = arcs[i]
                if cap[e] > 0:
                    w = head[e]
                    if not seen[w]:
                        seen[w] = 1
                        stack[top] = w
                        top += 1
    finally:
        PyMem_Free(stack)
    return out


def first_full_pair(const unsigned char[::1] mask, const int[::1] pa, const int[::1] pb):
    """Index of the first pair with both ends set in ``mask``, else -1."""
    cdef Py_ssize_t i
    for i in range(pa.shape[0]):
        if mask[pa[i]] and mask[pb[i]]:
            return i
    return -1
