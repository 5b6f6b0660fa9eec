"""Pure-Python counting kernels.

These are the reference implementations of the two hot loops: the
generic embedding counter and the independent-set counter used for
exhaustive free-subgraph enumeration.  hxkit._kernels holds compiled
twins with the same signatures; hxkit.kernels picks one at import.
"""

from __future__ import annotations

from typing import Sequence

BACKEND_NAME = "python"


def count_embeddings(
    order: Sequence[int],
    h_edges: Sequence[Sequence[int]],
    host_n: int,
    host_masks: Sequence[int],
    allowed_masks: Sequence[int] | None = None,
) -> int:
    """Count injective vertex maps sending every pattern edge onto a host edge.

    order        assignment sequence over pattern vertices 0..s-1
    h_edges      pattern edges (tuples over 0..s-1)
    host_masks   host edges as vertex bitmasks
    allowed_masks  optional per-pattern-vertex bitmask of permitted hosts
    """
    s = len(order)
    pos = {v: i for i, v in enumerate(order)}
    host_set = frozenset(host_masks)
    host_list = list(host_masks)

    # per step: edges finishing there, and edges touched but unfinished
    finish_at: list[list[int]] = [[] for _ in range(s)]
    partial_at: list[list[int]] = [[] for _ in range(s)]
    for ei, e in enumerate(h_edges):
        last = max(pos[v] for v in e)
        finish_at[last].append(ei)
        for v in e:
            if pos[v] != last:
                partial_at[pos[v]].append(ei)

    img = [0] * len(h_edges)
    full_host = (1 << host_n) - 1

    def covered(mask: int) -> bool:
        for hm in host_list:
            if mask & hm == mask:
                return True
        return False

    def rec(i: int, used: int) -> int:
        if i == s:
            return 1
        v = order[i]
        cand = full_host & ~used
        if allowed_masks is not None:
            cand &= allowed_masks[v]
        total = 0
        while cand:
            bit = cand & -cand
            cand -= bit
            ok = True
            touched = []
            for ei in finish_at[i]:
                if v in h_edges[ei]:
                    new = img[ei] | bit
                else:
                    new = img[ei]
                if new not in host_set:
                    ok = False
                    break
                if v in h_edges[ei]:
                    touched.append(ei)
                    img[ei] = new
            if ok:
                for ei in partial_at[i]:
                    new = img[ei] | bit
                    if not covered(new):
                        ok = False
                        break
                    touched.append(ei)
                    img[ei] = new
            if ok:
                total += rec(i + 1, used | bit)
            for ei in touched:
                img[ei] &= ~bit
        return total

    return rec(0, 0)


def count_independent_sets(n_vertices: int, copies: Sequence[Sequence[int]]) -> int:
    """Number of vertex subsets containing no copy in full.

    Subsets are enumerated by a DFS over vertices in index order; a
    branch dies the moment an inclusion would complete a copy.
    """
    t_of = [len(c) for c in copies]
    by_vertex: list[list[int]] = [[] for _ in range(n_vertices)]
    for ci, c in enumerate(copies):
        for v in c:
            by_vertex[v].append(ci)
    included = [0] * len(copies)
    dead = [0] * len(copies)

    def rec(v: int) -> int:
        if v == n_vertices:
            return 1
        # exclude v
        for ci in by_vertex[v]:
            dead[ci] += 1
        total = rec(v + 1)
        for ci in by_vertex[v]:
            dead[ci] -= 1
        # include v unless it completes a live copy
        for ci in by_vertex[v]:
            if not dead[ci] and included[ci] == t_of[ci] - 1:
                return total
        for ci in by_vertex[v]:
            included[ci] += 1
        total += rec(v + 1)
        for ci in by_vertex[v]:
            included[ci] -= 1
        return total

    return rec(0)
