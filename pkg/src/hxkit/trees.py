"""Hypertrees, tree-defining orderings, cross-cuts, and cycle constructions.

A hypertree is built by repeatedly attaching a leaf edge whose
intersection with the existing vertex set lies inside one existing
(parent) edge.  Recognition here is a complete search: a memoized DFS
peels leaf edges in every order, so a negative answer is exhaustive,
not a greedy artifact.  Lexicographically least choices are explored
first, which makes the returned certificate deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .core import Hypergraph, VertexSet


class NoCrossCutError(ValueError):
    """The hypergraph has no set meeting every edge exactly once."""


@dataclass(frozen=True)
class HypertreeCert:
    """Witness that `host` is a hypertree.

    order[i] is the index (into host.edges) of the i-th edge of a
    tree-defining ordering; parent[i] is the position j < i of an edge
    containing everything the i-th edge shares with its predecessors
    (parent[0] is -1).  expansion, when set, lists two designated
    degree-1 vertices per edge in order position.
    """

    host: Hypergraph
    order: tuple[int, ...]
    parent: tuple[int, ...]
    expansion: Optional[tuple[tuple[int, int], ...]] = None

    def edges_in_order(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.host.edges[i] for i in self.order)

    def validate(self) -> None:
        edges = self.edges_in_order()
        if sorted(self.order) != list(range(len(self.host.edges))):
            raise ValueError("order is not a permutation of the edge indices")
        seen: set[int] = set(edges[0])
        for i in range(1, len(edges)):
            inter = set(edges[i]) & seen
            par = edges[self.parent[i]]
            if self.parent[i] >= i:
                raise ValueError(f"parent of position {i} does not precede it")
            if inter != set(edges[i]) & set(par):
                raise ValueError(f"edge at position {i} is not a leaf over its parent")
            seen.update(edges[i])
        if self.expansion is not None:
            degs = vertex_degrees(self.host)
            for pos, pair in enumerate(self.expansion):
                if len(set(pair)) != 2:
                    raise ValueError(f"expansion pair at position {pos} is not two vertices")
                for v in pair:
                    if v not in edges[pos]:
                        raise ValueError(f"expansion vertex {v} not in its edge")
                    if degs[v] != 1:
                        raise ValueError(f"expansion vertex {v} has degree {degs[v]}")


@dataclass(frozen=True)
class TreeProfile:
    """Size and structure constants of a hypertree: vertex count s,
    edge count t, overlap bound ell, cross-cut number sigma."""

    s: int
    t: int
    ell: int
    sigma: int


def vertex_degrees(H: Hypergraph) -> dict[int, int]:
    degs: dict[int, int] = {}
    for e in H.edges:
        for v in e:
            degs[v] = degs.get(v, 0) + 1
    return degs


def find_tree_order(H: Hypergraph) -> Optional[HypertreeCert]:
    """A tree-defining ordering of H, or None if H is not a hypertree.

    Peels leaf edges depth-first over all choices with memoization on
    the remaining edge subset, trying the lexicographically least
    removable edge first.
    """
    m = len(H.edges)
    if m == 0:
        raise ValueError("empty hypergraph has no tree order")
    if m == 1:
        return HypertreeCert(H, (0,), (-1,))
    edge_sets = [frozenset(e) for e in H.edges]
    full = frozenset(range(m))
    no_order: set[frozenset] = set()

    def peel(remaining: frozenset):
        if len(remaining) == 1:
            return [(next(iter(remaining)), -1)]
        if remaining in no_order:
            return None
        for i in sorted(remaining):
            rest = remaining - {i}
            rest_vertices = set()
            for j in rest:
                rest_vertices |= edge_sets[j]
            inter = edge_sets[i] & rest_vertices
            parent = next((j for j in sorted(rest) if inter <= edge_sets[j]), None)
            if parent is None:
                continue
            sub = peel(rest)
            if sub is not None:
                return sub + [(i, parent)]
        no_order.add(remaining)
        return None

    seq = peel(full)
    if seq is None:
        return None
    order = tuple(i for i, _ in seq)
    place = {edge: pos for pos, edge in enumerate(order)}
    parent = tuple(-1 if p == -1 else place[p] for _, p in seq)
    return HypertreeCert(H, order, parent)


def is_t_contractible(H: Hypergraph, t: int) -> tuple[bool, dict[tuple[int, ...], tuple[int, ...]]]:
    """Whether every edge has at least t degree-1 vertices.

    Returns (flag, witness) where witness maps each edge to its sorted
    degree-1 vertices (possibly fewer than t when the flag is False).
    """
    if not 1 <= t <= H.k - 1:
        raise ValueError(f"contractibility order {t} out of range [1, {H.k - 1}]")
    degs = vertex_degrees(H)
    witness = {e: tuple(v for v in e if degs[v] == 1) for e in H.edges}
    ok = all(len(w) >= t for w in witness.values())
    return ok, witness


def with_expansion(cert: HypertreeCert) -> HypertreeCert:
    """Designate the two smallest degree-1 vertices of each edge."""
    ok, witness = is_t_contractible(cert.host, 2)
    if not ok:
        raise ValueError("host is not 2-contractible")
    expansion = tuple(witness[e][:2] for e in cert.edges_in_order())
    return HypertreeCert(cert.host, cert.order, cert.parent, expansion)


def overlap(H: Hypergraph) -> int:
    """Largest pairwise edge intersection; 0 for a single edge."""
    if len(H.edges) == 0:
        raise ValueError("overlap of an empty hypergraph is undefined")
    best = 0
    sets = [set(e) for e in H.edges]
    for a, b in combinations(sets, 2):
        best = max(best, len(a & b))
    return best


def cross_cut(H: Hypergraph) -> tuple[int, VertexSet]:
    """Minimum size of a set meeting every edge exactly once, with witness.

    Searches target sizes 1, 2, ... via a DFS that picks one vertex per
    still-unhit edge (ascending vertex order) and prunes any edge hit
    twice, so the witness is deterministic.  Single edge: sigma = 1.
    """
    m = len(H.edges)
    if m == 0:
        raise ValueError("cross-cut of an empty hypergraph is undefined")
    edges = [set(e) for e in H.edges]

    def search(limit: int):
        # edges processed in stored order; chosen vertices accumulate
        def rec(idx: int, chosen: tuple[int, ...]):
            if idx == m:
                return chosen
            hits = len(edges[idx] & set(chosen))
            if hits > 1:
                return None
            if hits == 1:
                return rec(idx + 1, chosen)
            if len(chosen) == limit:
                return None
            for v in sorted(edges[idx]):
                if any(v in edges[j] and len(edges[j] & set(chosen)) >= 1
                       for j in range(idx)):
                    # v would double-hit an earlier edge
                    continue
                got = rec(idx + 1, chosen + (v,))
                if got is not None:
                    return got
            return None

        return rec(0, ())

    for limit in range(1, m + 1):
        got = search(limit)
        if got is not None:
            return len(got), tuple(sorted(got))
    raise NoCrossCutError("no cross-cut exists")


def is_cross_cut(H: Hypergraph, S) -> bool:
    s = set(S)
    return all(len(s & set(e)) == 1 for e in H.edges)


def cross_cut_brute(H: Hypergraph) -> tuple[int, VertexSet]:
    """Exhaustive cross-cut over all subsets, smallest first.  Oracle use."""
    verts = H.vertices()
    for size in range(1, len(verts) + 1):
        for S in combinations(verts, size):
            if is_cross_cut(H, S):
                return size, S
    raise NoCrossCutError("no cross-cut exists")


def linear_cycle(k: int, ell: int) -> Hypergraph:
    """The k-uniform linear cycle: a graph ell-cycle with each edge
    widened by k-2 fresh degree-1 vertices.  Vertices 0..ell-1 are the
    cycle vertices; pendants follow."""
    if k < 3:
        raise ValueError("linear cycle needs k >= 3")
    if ell < 3:
        raise ValueError("linear cycle needs ell >= 3")
    edges = []
    nxt = ell
    for i in range(ell):
        e = [i, (i + 1) % ell] + list(range(nxt, nxt + k - 2))
        nxt += k - 2
        edges.append(e)
    return Hypergraph(k, nxt, edges)


def _cycle_junction_pairs(ell: int) -> list[tuple[int, int]]:
    return [(i, (i + 1) % ell) for i in range(ell)]


def covering_tree(k: int, ell: int) -> Hypergraph:
    """A 2-contractible k-tree that contains the linear ell-cycle and has
    the same cross-cut number floor((ell+1)/2).

    Layout: junction vertices x_0..x_{ell-1} carry the cycle edges
    C_i = {x_i, x_{i+1}} plus fresh pendants.  A chain of carrier edges
    c_j = {x_0, x_{2j-1}, x_{2j+1}} walks the odd junctions, and bridge
    edges B_j = {x_{2j-1}, x_{2j}, x_{2j+1}} hang off the carriers; for
    odd ell one extra bridge {x_{ell-2}, x_{ell-1}, x_0} closes the walk.
    Every cycle edge then attaches below a bridge (or carrier), so the
    whole family is a tree, and {x_0, x_2, ...} (plus one pendant for
    odd ell) meets every edge exactly once.
    """
    if k < 5:
        raise ValueError("covering tree construction needs k >= 5")
    if ell < 3:
        raise ValueError("covering tree needs ell >= 3")
    r = ell // 2
    fresh = ell  # next unused vertex id

    def pad(busy: list[int], count: int) -> list[int]:
        nonlocal fresh
        out = busy + list(range(fresh, fresh + count))
        fresh += count
        return out

    edges: list[list[int]] = []
    edges.append(pad([0, 1], k - 2))                                # C_0, the root
    for j in range(1, r):
        edges.append(pad([0, 2 * j - 1, 2 * j + 1], k - 3))         # carrier c_j
        edges.append(pad([2 * j - 1, 2 * j, 2 * j + 1], k - 3))     # bridge B_j
    if ell % 2 == 1:
        edges.append(pad([ell - 2, ell - 1, 0], k - 3))             # closing bridge
    for i in range(1, ell):
        edges.append(pad([i, (i + 1) % ell], k - 2))                # cycle edge C_i
    return Hypergraph(k, fresh, edges)


def contains_linear_cycle(F: Hypergraph, ell: int) -> bool:
    """Whether F has ell edges forming a linear cycle: consecutive edges
    share exactly one vertex, non-consecutive ones are disjoint.  That
    intersection pattern characterizes an isomorphic copy."""
    m = len(F.edges)
    if m < ell:
        return False
    sets = [frozenset(e) for e in F.edges]

    def rec(chain: list[int]):
        if len(chain) == ell:
            closing = sets[chain[-1]] & sets[chain[0]]
            if len(closing) != 1:
                return False
            mid = closing | (sets[chain[0]] & sets[chain[1]])
            return len(mid) == 2
        last = chain[-1]
        for cand in range(m):
            if cand in chain:
                continue
            if len(sets[last] & sets[cand]) != 1:
                continue
            ok = True
            for pos, prev in enumerate(chain[:-1]):
                want_empty = not (pos == 0 and len(chain) == ell - 1)
                inter = sets[prev] & sets[cand]
                if want_empty and inter:
                    ok = False
                    break
            if not ok:
                continue
            chain.append(cand)
            if rec(chain):
                return True
            chain.pop()
        return False

    for start in range(m):
        if rec([start]):
            return True
    return False


def tree_profile(H: Hypergraph, cert: Optional[HypertreeCert] = None) -> TreeProfile:
    if cert is None:
        cert = find_tree_order(H)
        if cert is None:
            raise ValueError("not a hypertree")
    sigma, _ = cross_cut(H)
    return TreeProfile(
        s=H.num_active_vertices(),
        t=len(H.edges),
        ell=overlap(H),
        sigma=sigma,
    )


def partition_from_cert(cert: HypertreeCert) -> dict[int, int]:
    """A k-partition of the host built along the tree order: each edge
    inherits part labels from its parent on shared vertices and fills
    the unused parts with its fresh vertices in ascending order."""
    k = cert.host.k
    edges = cert.edges_in_order()
    part: dict[int, int] = {}
    for i, e in enumerate(edges):
        taken = {part[v] for v in e if v in part}
        free = sorted(set(range(k)) - taken)
        news = sorted(v for v in e if v not in part)
        if len(taken) + len(news) != k or len(set(taken)) != len([v for v in e if v in part]):
            raise ValueError("certificate does not induce a partition")
        for v, p in zip(news, free):
            part[v] = p
    for e in edges:
        if sorted(part[v] for v in e) != list(range(k)):
            raise ValueError("induced labeling is not a k-partition")
    return part
