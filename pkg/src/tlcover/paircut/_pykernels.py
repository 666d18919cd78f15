"""Pure-Python versions of the compiled kernels (same signatures)."""

from collections import deque

BACKEND = "python"


def reach(indptr, targets, source, removed):
    seen = bytearray(len(indptr) - 1)
    seen[source] = 1
    stack = [source]
    while stack:
        v = stack.pop()
        for i in range(indptr[v], indptr[v + 1]):
            w = targets[i]
            if not seen[w] and not removed[w]:
                seen[w] = 1
                stack.append(w)
    return seen


def augment(indptr, arcs, head, cap, source, sink):
    parent = {source: -1}
    queue = deque([source])
    found = False
    while queue and not found:
        v = queue.popleft()
        for i in range(indptr[v], indptr[v + 1]):
            e = arcs[i]
            if cap[e] <= 0:
                continue
            w = head[e]
            if w in parent:
                continue
            parent[w] = e
            if w == sink:
                found = True
                break
            queue.append(w)
    if not found:
        return 0
    w = sink
    while w != source:
        e = parent[w]
        cap[e] -= 1
        cap[e ^ 1] += 1
        w = head[e ^ 1]
    return 1


def residual_reach(indptr, arcs, head, cap, source):
    seen = bytearray(len(indptr) - 1)
    seen[source] = 1
    stack = [source]
    while stack:
        v = stack.pop()
        for i in range(indptr[v], indptr[v + 1]):
            e = arcs[i]
            if cap[e] > 0:
                w = head[e]
                if not seen[w]:
                    seen[w] = 1
                    stack.append(w)
    return seen


def first_full_pair(mask, pa, pb):
    for i in range(len(pa)):
        if mask[pa[i]] and mask[pb[i]]:
            return i
    return -1
