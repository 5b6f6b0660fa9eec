"""Partitioned families, intersection patterns, the filtering process that
extracts diverse high-degree subfamilies, and the resulting structural
dichotomy (a large type-1 family, or a small hub set met exactly once).

Parts are indexed 0..k-1 throughout.  All thresholds are compared in
exact integer or Fraction arithmetic so runs are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Iterable, Optional, Sequence

from .core import Hypergraph, VertexSet, link

Pattern = frozenset


def filter_fraction(k: int, s: int) -> Fraction:
    """Guaranteed retained fraction of the filtering process."""
    return Fraction(factorial(k), k**k) / (2 * s * (1 + 2**k)) ** (2**k)


class PartitionedFamily:
    """A k-partite hypergraph with a fixed assignment of vertices to parts.

    parts[v] is the part index of vertex v, or -1 for vertices outside
    every edge.  Each edge must meet every part exactly once.
    """

    __slots__ = ("F", "parts", "_by_part")

    def __init__(self, F: Hypergraph, parts: Sequence[int]):
        if len(parts) != F.n:
            raise ValueError("parts must label every vertex of the universe")
        by_part = []
        for e in F.edges:
            labels = sorted(parts[v] for v in e)
            if labels != list(range(F.k)):
                raise ValueError(f"edge {e} does not meet every part exactly once")
            row = [0] * F.k
            for v in e:
                row[parts[v]] = v
            by_part.append(tuple(row))
        self.F = F
        self.parts = tuple(parts)
        self._by_part = tuple(by_part)

    def __len__(self) -> int:
        return len(self.F.edges)

    def __repr__(self) -> str:
        return f"PartitionedFamily(k={self.F.k}, n={self.F.n}, m={len(self)})"

    def part_rows(self) -> tuple[tuple[int, ...], ...]:
        """Edges as k-tuples indexed by part."""
        return self._by_part

    def part_of(self, v: int) -> int:
        return self.parts[v]

    def part_members(self, p: int) -> tuple[int, ...]:
        return tuple(v for v in range(self.F.n) if self.parts[v] == p)

    def restrict(self, edges: Iterable[tuple[int, ...]]) -> "PartitionedFamily":
        return PartitionedFamily(self.F.with_edges(edges), self.parts)


def pattern(P: PartitionedFamily, D: Sequence[int]) -> Pattern:
    """Set of part indices the vertex set D touches."""
    return frozenset(P.parts[v] for v in D)


def projection(P: PartitionedFamily, E: Sequence[int], J: Iterable[int]) -> VertexSet:
    """Vertices of E lying in the parts of J, sorted."""
    j = set(J)
    return tuple(sorted(v for v in E if P.parts[v] in j))


def is_s_diverse(L: Iterable[Sequence[int]], s: int) -> bool:
    """Every vertex lies in fewer than |L|/s members, and |L| >= s.

    The size requirement makes small links non-diverse even when no
    vertex is popular; in particular the link {()} is never diverse.
    """
    if s < 2:
        raise ValueError("diversity parameter must be >= 2")
    members = [frozenset(x) for x in L]
    if len(members) < s:
        return False
    m = len(members)
    counts: dict[int, int] = {}
    for mem in members:
        for v in mem:
            counts[v] = counts.get(v, 0) + 1
    return all(c * s < m for c in counts.values())


def mutual_patterns(P: PartitionedFamily) -> frozenset:
    """Patterns of pairwise intersections of distinct edges."""
    rows = P.part_rows()
    out = set()
    m = len(rows)
    k = P.F.k
    for i in range(m):
        ri = rows[i]
        for j in range(i + 1, m):
            rj = rows[j]
            out.add(frozenset(p for p in range(k) if ri[p] == rj[p]))
    return frozenset(out)


def rank(patterns: Iterable[Pattern], k: int) -> int:
    """Smallest |D|, D a subset of the part indices, contained in no member."""
    pats = [frozenset(p) for p in patterns]
    for size in range(k + 1):
        for D in combinations(range(k), size):
            d = frozenset(D)
            if not any(d <= J for J in pats):
                return size
    return k + 1  # unreachable: the full index set is never a member


def closed_under_intersection(patterns: Iterable[Pattern]) -> bool:
    pats = [frozenset(p) for p in patterns]
    have = set(pats)
    return all(a & b in have for a, b in combinations(pats, 2))


@dataclass(frozen=True)
class TypeOutcome:
    kind: str                      # "type1" | "type2"
    B: Optional[frozenset] = None  # type1: 2^B inside the pattern family
    central: Optional[int] = None  # type2: the central index


def _find_type1_base(patterns: frozenset, k: int) -> Optional[frozenset]:
    pats = set(patterns)
    for B in combinations(range(k), k - 2):
        need = {frozenset(sub) for size in range(k - 1) for sub in combinations(B, size)}
        if need <= pats:
            return frozenset(B)
    return None


def _find_central_indices(patterns: frozenset, k: int) -> list[int]:
    pats = set(patterns)
    out = []
    for i in range(k):
        others = [x for x in range(k) if x != i]
        ok = all(
            frozenset(sub) | {i} in pats
            for size in range(k - 1)
            for sub in combinations(others, size)
        )
        if ok:
            ok = all(
                frozenset(D) not in pats
                for size in (k - 2, k - 1)
                for D in combinations(others, size)
            )
        if ok:
            out.append(i)
    return out


def classify_type(patterns: Iterable[Pattern], k: int) -> TypeOutcome:
    """The type dichotomy for an intersection-closed family of rank >= k-1:
    either a (k-2)-set B whose full power set appears, or a unique central
    index through which every large trace passes."""
    if k < 3:
        raise ValueError("type classification needs k >= 3")
    pats = frozenset(frozenset(p) for p in patterns)
    if not closed_under_intersection(pats):
        raise ValueError("pattern family is not closed under intersection")
    if rank(pats, k) < k - 1:
        raise ValueError("pattern family has rank below k-1")
    B = _find_type1_base(pats, k)
    if B is not None:
        return TypeOutcome("type1", B=B)
    centrals = _find_central_indices(pats, k)
    if len(centrals) != 1:
        raise RuntimeError(f"expected a unique central index, found {centrals}")
    return TypeOutcome("type2", central=centrals[0])


# ---------------------------------------------------------------------------
# rainbow partition


def rainbow_partition(F: Hypergraph, seed: int = 0) -> PartitionedFamily:
    """A k-partition keeping at least a k!/k^k fraction of the edges.

    Vertices are assigned one at a time to the part maximizing the
    expected number of rainbow edges under uniform random completion
    (exact Fraction arithmetic, ties to the smallest part).  The greedy
    bound is certain; a seeded random rescue exists as a safety net and
    is not expected to run.
    """
    k, n = F.k, F.n
    parts = _greedy_parts(F)
    kept = _rainbow_edges(F, parts)
    if len(kept) * k**k >= len(F.edges) * factorial(k):
        return PartitionedFamily(F.with_edges(kept), parts)
    rng = random.Random(seed)
    best_parts, best_kept = parts, kept
    for _ in range(2**k * factorial(k)):
        cand = [rng.randrange(k) for _ in range(n)]
        got = _rainbow_edges(F, cand)
        if len(got) > len(best_kept):
            best_parts, best_kept = cand, got
        if len(best_kept) * k**k >= len(F.edges) * factorial(k):
            break
    if len(best_kept) * k**k < len(F.edges) * factorial(k):
        raise RuntimeError("rainbow partition fell below the guaranteed fraction")
    return PartitionedFamily(F.with_edges(best_kept), best_parts)


def _rainbow_edges(F: Hypergraph, parts: Sequence[int]) -> list[tuple[int, ...]]:
    return [e for e in F.edges if len({parts[v] for v in e}) == F.k]


def _greedy_parts(F: Hypergraph) -> list[int]:
    k, n = F.k, F.n
    parts = [-1] * n
    # falling factorial table: ways to injectively place u vertices into r parts
    def ways(r: int, u: int) -> int:
        w = 1
        for j in range(u):
            w *= r - j
        return w if w > 0 else 0

    for v in range(n):
        best_p, best_score = 0, None
        for p in range(k):
            parts[v] = p
            score = Fraction(0)
            for e in F.edges:
                assigned = [parts[u] for u in e if parts[u] != -1]
                un = len(e) - len(assigned)
                if len(set(assigned)) != len(assigned):
                    continue
                score += Fraction(ways(k - len(assigned), un), k**un)
            if best_score is None or score > best_score:
                best_p, best_score = p, score
        parts[v] = best_p
    return parts


# ---------------------------------------------------------------------------
# the filtering process


@dataclass
class FilterTrace:
    """Diagnostics of one filtering run."""

    rounds: int = 0
    moved_low_degree: int = 0
    moved_non_diverse: int = 0
    sizes: list = field(default_factory=list)


def _projection_groups(P_rows, J: frozenset):
    """Edges grouped by their projection onto the parts of J."""
    idx = sorted(J)
    groups: dict[tuple, list[int]] = {}
    for ei, row in enumerate(P_rows):
        key = tuple(row[p] for p in idx)
        groups.setdefault(key, []).append(ei)
    return groups


def _mi_of_rows(rows, k: int) -> frozenset:
    out = set()
    m = len(rows)
    for i in range(m):
        ri = rows[i]
        for j in range(i + 1, m):
            rj = rows[j]
            out.add(frozenset(p for p in range(k) if ri[p] == rj[p]))
    return frozenset(out)


def filter_super_homogeneous(
    F: Hypergraph, s: int, seed: int = 0, trace: Optional[FilterTrace] = None
) -> PartitionedFamily:
    """Extract a subfamily in which every mutual-pattern projection has a
    diverse link of high degree.

    After a rainbow partition, edges whose projection link is small or
    concentrated are moved out in canonical passes; if the survivors are
    too few, the process recurses into the densest removed class, which
    loses one mutual pattern, so at most 2^k recursions happen.  The
    output conditions are re-verified by direct computation on return.
    """
    if s < 2 * F.k:
        raise ValueError(f"diversity parameter must be >= 2k = {2 * F.k}")
    if not F.edges:
        raise ValueError("cannot filter an empty family")
    P0 = rainbow_partition(F, seed=seed)
    parts = P0.parts
    k, n = F.k, F.n
    current = list(P0.F.edges)
    mi_size_prev = None
    tr = trace if trace is not None else FilterTrace()

    while True:
        tr.rounds += 1
        base_size = len(current)
        tr.sizes.append(base_size)
        rows = [tuple(sorted(e, key=lambda v: parts[v])) for e in current]
        # store edges with part-ordered rows alongside
        edges = list(current)
        rows = []
        for e in edges:
            row = [0] * k
            for v in e:
                row[parts[v]] = v
            rows.append(tuple(row))

        removed_to_w: list[int] = []
        buckets: dict[frozenset, list[tuple[tuple, list[int]]]] = {}
        alive = set(range(len(edges)))

        changed = True
        while changed:
            changed = False
            alive_rows = {i: rows[i] for i in alive}
            mi = _mi_of_rows([rows[i] for i in sorted(alive)], k)
            for J in sorted(mi, key=lambda x: (len(x), sorted(x))):
                idx = sorted(J)
                groups: dict[tuple, list[int]] = {}
                for ei in sorted(alive):
                    key = tuple(rows[ei][p] for p in idx)
                    groups.setdefault(key, []).append(ei)
                for key in sorted(groups):
                    members = groups[key]
                    link_res = [tuple(v for v in edges[ei] if v not in key) for ei in members]
                    if not link_res:
                        continue
                    if not is_s_diverse(link_res, s):
                        buckets.setdefault(J, []).append((key, members))
                        alive.difference_update(members)
                        tr.moved_non_diverse += len(members)
                        changed = True
                        break
                    if len(members) * 2 * k * n ** len(J) < base_size:
                        removed_to_w.extend(members)
                        alive.difference_update(members)
                        tr.moved_low_degree += len(members)
                        changed = True
                        break
                if changed:
                    break

        w_count = len(removed_to_w)
        if 2 * w_count > base_size:
            raise RuntimeError("low-degree removals exceeded half the family")
        survivors = [edges[i] for i in sorted(alive)]
        if len(survivors) * (1 + 2**k) >= base_size - w_count:
            result = survivors
            break
        # recurse into the densest removed class; it drops one pattern
        best_J = max(
            buckets,
            key=lambda J: (sum(len(m) for _, m in buckets[J]), [-x for x in sorted(J)]),
        )
        refined: list[tuple[int, ...]] = []
        for key, members in buckets[best_J]:
            counts: dict[int, int] = {}
            for ei in members:
                for v in edges[ei]:
                    if v not in key:
                        counts[v] = counts.get(v, 0) + 1
            v_star = max(sorted(counts), key=lambda v: counts[v])
            if counts[v_star] * s < len(members):
                raise RuntimeError("batch has no popular vertex despite failing diversity")
            refined.extend(edges[ei] for ei in members if v_star in edges[ei])
        if 2 * s * (1 + 2**k) * len(refined) < base_size - w_count:
            raise RuntimeError("refined class smaller than the pigeonhole bound")
        new_rows = []
        for e in refined:
            row = [0] * k
            for v in e:
                row[parts[v]] = v
            new_rows.append(tuple(row))
        mi_new = _mi_of_rows(new_rows, k)
        if best_J in mi_new:
            raise RuntimeError("refined class still realizes the removed pattern")
        if mi_size_prev is not None and len(mi_new) >= mi_size_prev:
            raise RuntimeError("mutual pattern count failed to decrease")
        mi_size_prev = len(mi_new)
        current = refined

    out = PartitionedFamily(F.with_edges(result), parts)
    problems = verify_super_homogeneous(out, s)
    if problems:
        raise RuntimeError(f"filter output failed verification: {problems[0]}")
    cks = filter_fraction(k, s)
    if cks * len(F.edges) >= 1 and len(out) < cks * len(F.edges):
        raise RuntimeError("filter output below the guaranteed fraction")
    if len(out) == 0:
        raise RuntimeError("filter produced an empty family")
    return out


def verify_super_homogeneous(P: PartitionedFamily, s: int) -> list[str]:
    """Direct check of the two output conditions: every mutual-pattern
    projection has an s-diverse link whose degree is at least
    max(s, |F|/(2k n^{|J|})).  Returns a list of violation messages."""
    problems = []
    k, n = P.F.k, P.F.n
    m = len(P)
    mi = mutual_patterns(P)
    rows = P.part_rows()
    for J in sorted(mi, key=lambda x: (len(x), sorted(x))):
        idx = sorted(J)
        groups: dict[tuple, list[int]] = {}
        for ei, row in enumerate(rows):
            key = tuple(row[p] for p in idx)
            groups.setdefault(key, []).append(ei)
        for key, members in groups.items():
            link_res = [
                tuple(v for v in P.F.edges[ei] if v not in key) for ei in members
            ]
            if not is_s_diverse(link_res, s):
                problems.append(f"projection {key} (pattern {sorted(J)}) is not {s}-diverse")
            deg = len(members)
            if deg < s or deg * 2 * k * n ** len(J) < m:
                problems.append(f"projection {key} (pattern {sorted(J)}) has degree {deg}")
    return problems


# ---------------------------------------------------------------------------
# the dichotomy


@dataclass(frozen=True)
class DichotomyOutcome:
    kind: str                                   # "type1" | "type2"
    family: Optional[PartitionedFamily] = None  # type1 witness
    B: Optional[frozenset] = None
    hubs: Optional[tuple[int, ...]] = None      # type2: the set met exactly once
    centered: Optional[Hypergraph] = None       # type2: the surviving subfamily
    pieces: int = 0                             # extracted subfamilies


def _central_index_for(P: PartitionedFamily, s: int) -> tuple[int, bool]:
    """Central part index of a filtered family.

    Uses the type lemma when its hypotheses hold (returning genuine=True
    so the disjoint-shadow claim may be asserted); families too small
    for the rank bound fall back to the part with the fewest distinct
    vertices, which concentrates the center classes.
    """
    mi = mutual_patterns(P)
    k = P.F.k
    if rank(mi, k) >= k - 1 and closed_under_intersection(mi):
        outcome = classify_type(mi, k)
        if outcome.kind == "type2":
            return outcome.central, True
    rows = P.part_rows()
    sizes = [(len({row[p] for row in rows}), p) for p in range(k)]
    return min(sizes)[1], False


def dichotomy(
    F: Hypergraph,
    s: int,
    eps,
    seed: int = 0,
) -> DichotomyOutcome:
    """Repeatedly extract filtered subfamilies until the residue is below
    (eps/2)|F|; return the first type-1 family, or a hub set W and a
    subfamily in which every edge meets W exactly once."""
    eps = Fraction(eps).limit_denominator(10**9) if not isinstance(eps, Fraction) else eps
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if not F.edges:
        raise ValueError("cannot run the dichotomy on an empty family")
    k, n = F.k, F.n
    total = len(F.edges)

    pieces: list[PartitionedFamily] = []
    residue = F
    while 2 * len(residue.edges) > eps * total:
        piece = filter_super_homogeneous(residue, s, seed=seed)
        base = _find_type1_base(mutual_patterns(piece), k)
        if base is not None:
            return DichotomyOutcome(
                "type1", family=piece, B=base, pieces=len(pieces) + 1
            )
        pieces.append(piece)
        kept = piece.F.edge_set
        residue = residue.with_edges(e for e in residue.edges if e not in kept)
        if not residue.edges:
            break

    # every piece is centered; group edges by their central vertex
    centers: dict[tuple[int, ...], int] = {}
    for piece in pieces:
        central_part, genuine = _central_index_for(piece, s)
        rows = piece.part_rows()
        for ei, e in enumerate(piece.F.edges):
            centers[e] = rows[ei][central_part]
        if genuine:
            _assert_disjoint_shadows(piece, central_part)

    star_edges: dict[int, list[tuple[int, ...]]] = {}
    for e, c in centers.items():
        star_edges.setdefault(c, []).append(e)

    def shadow_size(c: int) -> int:
        shades = set()
        for e in star_edges[c]:
            residue_e = tuple(v for v in e if v != c)
            shades.update(combinations(residue_e, k - 2))
        return len(shades)

    ordered = sorted(star_edges, key=lambda c: (-shadow_size(c), c))
    m_pieces = max(1, len(pieces))
    cap_h = int((Fraction(5 * m_pieces) / eps) ** (k - 1))
    all_edges = [e for piece in pieces for e in piece.F.edges]

    for w in range(1, min(len(ordered), max(cap_h, 1)) + 1):
        W = set(ordered[:w])
        surviving = [
            e for e in all_edges
            if centers[e] in W and len(W.intersection(e)) == 1
        ]
        if len(surviving) >= (1 - eps) * total:
            hub = tuple(sorted(W))
            centered = F.with_edges(surviving)
            for e in centered.edges:
                if len(set(e) & set(hub)) != 1:
                    raise RuntimeError("centered family edge misses the hub condition")
            cks = filter_fraction(k, s)
            if len(hub) > (Fraction(10) / (cks * eps * eps)) ** (k - 1):
                raise RuntimeError("hub set larger than its guaranteed bound")
            return DichotomyOutcome(
                "type2", hubs=hub, centered=centered, pieces=len(pieces)
            )
    raise RuntimeError("no hub prefix keeps a (1-eps) fraction of the family")


def _assert_disjoint_shadows(piece: PartitionedFamily, central_part: int) -> None:
    """Distinct centers within one genuinely centered family must have
    disjoint (k-2)-shadows of their residues."""
    k = piece.F.k
    rows = piece.part_rows()
    shadows: dict[int, set] = {}
    for ei, e in enumerate(piece.F.edges):
        c = rows[ei][central_part]
        residue_e = tuple(v for v in e if v != c)
        shadows.setdefault(c, set()).update(combinations(residue_e, k - 2))
    total = set()
    combined = 0
    for c, sh in shadows.items():
        combined += len(sh)
        total |= sh
    if combined != len(total):
        raise RuntimeError("center classes have overlapping residue shadows")
