"""Canonical k-uniform hypergraphs and their shadow/link/degree primitives.

A hypergraph is stored as a sorted tuple of sorted k-tuples over the
vertex universe {0, ..., n-1}.  Equality compares (k, edge set); the
universe size n is metadata only.  All values here are immutable and
every operation is pure, so instances can be shared freely across
threads.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Iterable, Sequence

Edge = tuple[int, ...]
VertexSet = tuple[int, ...]


class FormatError(ValueError):
    """Raised for malformed text input or inconsistent edge data."""


class Hypergraph:
    __slots__ = ("k", "n", "edges", "_edge_set", "_hash")

    def __init__(self, k: int, n: int, edges: Iterable[Iterable[int]]):
        if k < 1:
            raise ValueError(f"uniformity must be >= 1, got {k}")
        if n < 0:
            raise ValueError(f"vertex count must be >= 0, got {n}")
        canon = set()
        for e in edges:
            t = tuple(sorted(e))
            if len(t) != k or len(set(t)) != k:
                raise FormatError(f"edge {t} does not have {k} distinct vertices")
            if t[0] < 0 or t[-1] >= n:
                raise FormatError(f"edge {t} out of range [0, {n})")
            canon.add(t)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        object.__setattr__(self, "_edge_set", frozenset(canon))
        object.__setattr__(self, "_hash", hash((k, self._edge_set)))

    def __setattr__(self, name, value):
        raise AttributeError("Hypergraph is immutable")

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, edge) -> bool:
        return tuple(sorted(edge)) in self._edge_set

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.k == other.k and self._edge_set == other._edge_set

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Hypergraph(k={self.k}, n={self.n}, m={len(self.edges)})"

    @property
    def edge_set(self) -> frozenset:
        return self._edge_set

    def vertices(self) -> VertexSet:
        """Vertices that appear in at least one edge, sorted."""
        seen = set()
        for e in self.edges:
            seen.update(e)
        return tuple(sorted(seen))

    def num_active_vertices(self) -> int:
        return len(self.vertices())

    def edge_masks(self) -> list[int]:
        """Each edge as a vertex bitmask."""
        out = []
        for e in self.edges:
            m = 0
            for v in e:
                m |= 1 << v
            out.append(m)
        return out

    def with_edges(self, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        """Same (k, n), different edge set."""
        return Hypergraph(self.k, self.n, edges)

    def restrict(self, edge_indices: Iterable[int]) -> "Hypergraph":
        """Sub-hypergraph spanned by the given positions in self.edges."""
        return Hypergraph(self.k, self.n, (self.edges[i] for i in edge_indices))


def complete_hypergraph(n: int, k: int) -> Hypergraph:
    return Hypergraph(k, n, combinations(range(n), k))


def shadow(F: Hypergraph, i: int) -> set[VertexSet]:
    """All i-subsets of edges of F.

    For i = 0 the result is {()} when F is nonempty and the empty set
    otherwise (the empty family has an empty 0-shadow).
    """
    if i < 0 or i > F.k:
        raise ValueError(f"shadow order {i} out of range [0, {F.k}]")
    out: set[VertexSet] = set()
    for e in F.edges:
        out.update(combinations(e, i))
    return out


def link(F: Hypergraph, D: Sequence[int]) -> set[VertexSet]:
    """Residues E - D over edges E containing D; may contain ()."""
    d = frozenset(D)
    out: set[VertexSet] = set()
    for e in F.edges:
        if d <= set(e):
            out.add(tuple(v for v in e if v not in d))
    return out


def degree(F: Hypergraph, D: Sequence[int]) -> int:
    return len(link(F, D))


def max_degree(F: Hypergraph, i: int) -> int:
    """Largest degree over i-sets in the shadow; 0 for an empty family."""
    if not 1 <= i <= F.k - 1:
        raise ValueError(f"degree order {i} out of range [1, {F.k - 1}]")
    counts = _shadow_degrees(F, i)
    return max(counts.values()) if counts else 0


def proper_min_degree(F: Hypergraph, i: int) -> int:
    """Minimum degree over i-sets that lie inside some edge."""
    if not 1 <= i <= F.k - 1:
        raise ValueError(f"degree order {i} out of range [1, {F.k - 1}]")
    counts = _shadow_degrees(F, i)
    if not counts:
        raise ValueError("proper minimum degree of an empty family is undefined")
    return min(counts.values())


def _shadow_degrees(F: Hypergraph, i: int) -> dict[VertexSet, int]:
    counts: dict[VertexSet, int] = {}
    for e in F.edges:
        for d in combinations(e, i):
            counts[d] = counts.get(d, 0) + 1
    return counts


def remove_vertices(F: Hypergraph, S: Sequence[int], multiset: bool = False):
    """Delete the vertices of S from every edge.

    Every edge must lose the same number of vertices so the result is
    uniform.  By default duplicate residues collapse and a Hypergraph is
    returned; with multiset=True the raw sorted tuple of residues is
    returned instead (contractions are allowed to be multigraphs).
    """
    s = frozenset(S)
    if not F.edges:
        return F if not multiset else ()
    losses = {len(s & set(e)) for e in F.edges}
    if len(losses) > 1:
        raise FormatError("non-uniform contraction")
    loss = losses.pop()
    residues = [tuple(v for v in e if v not in s) for e in F.edges]
    if multiset:
        return tuple(sorted(residues))
    return Hypergraph(F.k - loss, F.n, residues)


def binom_real(x: float, k: int) -> float:
    """binom(x, k) = x(x-1)...(x-k+1)/k! for real x."""
    prod = 1.0
    for j in range(k):
        prod *= x - j
    return prod / math.factorial(k)


def lovasz_shadow_lower_bound(m: int, k: int, i: int) -> float:
    """Shadow size bound binom(x, i) where x >= k-1 solves binom(x, k) = m.

    binom(x, k) is strictly increasing for x >= k-1, so x is found by
    bisection to absolute tolerance 1e-9.
    """
    if m < 1:
        raise ValueError("family size must be >= 1")
    if not 1 <= i <= k - 1:
        raise ValueError(f"shadow order {i} out of range [1, {k - 1}]")
    lo = float(k - 1)
    hi = float(k)
    while binom_real(hi, k) < m:
        hi *= 2.0
    while hi - lo > 1e-9:
        mid = (lo + hi) / 2.0
        if binom_real(mid, k) < m:
            lo = mid
        else:
            hi = mid
    return binom_real((lo + hi) / 2.0, i)


def parse_hypergraph(text: str, multiset: bool = False) -> Hypergraph:
    """Parse the text format: a `k n m` header, then m edge lines.

    Duplicate edge lines are rejected unless multiset=True, in which
    case they collapse (the canonical store is a set).
    """
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty input")
    header = lines[0].split()
    if len(header) != 3:
        raise FormatError(f"expected header 'k n m', got {lines[0]!r}")
    try:
        k, n, m = (int(x) for x in header)
    except ValueError as exc:
        raise FormatError(f"non-integer header {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"header promises {m} edges, found {len(body)}")
    edges = []
    seen = set()
    for ln in body:
        try:
            e = tuple(sorted(int(x) for x in ln.split()))
        except ValueError as exc:
            raise FormatError(f"non-integer edge line {ln!r}") from exc
        if e in seen and not multiset:
            raise FormatError(f"duplicate edge {ln!r} (use --multiset to collapse)")
        seen.add(e)
        edges.append(e)
    return Hypergraph(k, n, edges)


def format_hypergraph(F: Hypergraph) -> str:
    lines = [f"{F.k} {F.n} {len(F.edges)}"]
    lines.extend(" ".join(str(v) for v in e) for e in F.edges)
    return "\n".join(lines) + "\n"


def read_hypergraph(path: str, multiset: bool = False) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_hypergraph(fh.read(), multiset=multiset)


def write_hypergraph(path: str, F: Hypergraph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_hypergraph(F))
