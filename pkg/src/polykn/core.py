"""Edge-colorings of complete graphs and their structural certificates.

The central objects are surjective edge-colorings of K_n, vertex orderings,
and the "inherited" vertex coloring obtained by assigning each vertex its
main color.  A vertex is *ordered* at position i if all its edges to later
vertices share one color; it is *unitary* if all but one of its incident
edges share one color and the single off-color edge leads to a partner
vertex with the mirrored property.  A coloring is *combed* when some
ordering makes every vertex ordered or unitary.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

Edge = tuple[int, int]


def edge_index(n: int, i: int, j: int) -> int:
    """Index of pair (i, j), 1 <= i < j <= n, in lexicographic pair order."""
    return (i - 1) * (2 * n - i) // 2 + (j - i - 1)


def all_edges(n: int) -> list[Edge]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


@dataclass(frozen=True)
class EdgeColoring:
    """A surjective coloring of the edges of K_n with colors 1..k.

    Colors are stored once per unordered pair in a flat triangular tuple so
    lookup is O(1).  Instances are canonical: every color in 1..k occurs on
    at least one edge.  Constructors compact gapped palettes (used colors
    are relabelled in ascending order).
    """

    n: int
    k: int
    colors: tuple[int, ...]

    @staticmethod
    def from_pairs(n: int, mapping: dict[Edge, int]) -> "EdgeColoring":
        if n < 2:
            raise ValueError("need at least 2 vertices")
        m = n * (n - 1) // 2
        if len(mapping) != m:
            raise ValueError(f"expected {m} edges, got {len(mapping)}")
        colors = [0] * m
        for (i, j), c in mapping.items():
            if not (1 <= i < j <= n):
                raise ValueError(f"bad edge ({i}, {j})")
            if c < 1:
                raise ValueError(f"bad color {c} on edge ({i}, {j})")
            colors[edge_index(n, i, j)] = c
        if 0 in colors:
            raise ValueError("some edge missing from mapping")
        used = sorted(set(colors))
        relabel = {c: t for t, c in enumerate(used, start=1)}
        return EdgeColoring(n, len(used), tuple(relabel[c] for c in colors))

    @staticmethod
    def from_function(n: int, fn) -> "EdgeColoring":
        return EdgeColoring.from_pairs(n, {(i, j): fn(i, j) for (i, j) in all_edges(n)})

    def color(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("no loops in K_n")
        if i > j:
            i, j = j, i
        if not (1 <= i and j <= self.n):
            raise ValueError(f"vertex out of range: ({i}, {j})")
        return self.colors[edge_index(self.n, i, j)]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield (i, j, color) in lexicographic pair order."""
        for (i, j) in all_edges(self.n):
            yield i, j, self.colors[edge_index(self.n, i, j)]

    def edges_of_color(self, t: int) -> list[Edge]:
        return [(i, j) for (i, j, c) in self.edges() if c == t]

    def recolored(self, i: int, j: int, c: int) -> "EdgeColoring":
        """New coloring with one edge changed; result is re-canonicalized."""
        mapping = {(a, b): col for (a, b, col) in self.edges()}
        mapping[(min(i, j), max(i, j))] = c
        return EdgeColoring.from_pairs(self.n, mapping)

    def canonicalize(self) -> "EdgeColoring":
        return EdgeColoring.from_pairs(self.n, {(i, j): c for (i, j, c) in self.edges()})

    def vertex_color_counts(self, v: int) -> Counter:
        return Counter(self.color(v, u) for u in range(1, self.n + 1) if u != v)


@dataclass(frozen=True)
class VertexOrdering:
    """A permutation of 1..n; order[p-1] is the vertex at position p."""

    order: tuple[int, ...]
    positions: tuple[int, ...] = field(repr=False, default=())

    def __post_init__(self):
        n = len(self.order)
        if sorted(self.order) != list(range(1, n + 1)):
            raise ValueError("ordering must be a permutation of 1..n")
        if not self.positions:
            pos = [0] * (n + 1)
            for p, v in enumerate(self.order, start=1):
                pos[v] = p
            object.__setattr__(self, "positions", tuple(pos))

    @staticmethod
    def identity(n: int) -> "VertexOrdering":
        return VertexOrdering(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.order)

    def vertex_at(self, p: int) -> int:
        return self.order[p - 1]

    def position_of(self, v: int) -> int:
        return self.positions[v]


class UnitaryVertex(NamedTuple):
    vertex: int
    main: int
    minority: int
    partner: int


@dataclass(frozen=True)
class InheritedColoring:
    """Vertex mains of a combed coloring, with class and prefix bookkeeping.

    ``main[v-1]`` is the main color of vertex v.  ``unitary_set`` lists the
    unitary vertices (0, 3, or 4 of them) with their main color, minority
    color and partner.  Prefix counts |M_t(j)| are precomputed so majority
    queries are O(1).
    """

    coloring: EdgeColoring
    ordering: VertexOrdering
    main: tuple[int, ...]
    unitary_set: tuple[UnitaryVertex, ...]
    _prefix: tuple[tuple[int, ...], ...] = field(repr=False, default=())

    def __post_init__(self):
        n = self.coloring.n
        if len(self.main) != n:
            raise ValueError("main colors must cover all vertices")
        if len(self.unitary_set) not in (0, 3, 4):
            raise ValueError("unitary vertices always come in groups of 3 or 4")
        if not self._prefix:
            k = self.k
            rows = []
            for t in range(1, k + 1):
                row = [0] * (n + 1)
                for p in range(1, n + 1):
                    v = self.ordering.vertex_at(p)
                    row[p] = row[p - 1] + (1 if self.main[v - 1] == t else 0)
                rows.append(tuple(row))
            object.__setattr__(self, "_prefix", tuple(rows))

    @property
    def n(self) -> int:
        return self.coloring.n

    @property
    def k(self) -> int:
        return self.coloring.k

    def class_of(self, t: int) -> frozenset[int]:
        return frozenset(v for v in range(1, self.n + 1) if self.main[v - 1] == t)

    def class_sizes(self) -> tuple[int, ...]:
        counts = Counter(self.main)
        return tuple(counts.get(t, 0) for t in range(1, self.k + 1))

    def prefix_count(self, t: int, j: int) -> int:
        """|M_t(j)|: members of class t among the first j positions."""
        return self._prefix[t - 1][j]

    def unitary_vertices(self) -> frozenset[int]:
        return frozenset(u.vertex for u in self.unitary_set)

    def class_has_unitary(self, t: int) -> bool:
        return any(u.main == t for u in self.unitary_set)


class MajorityEntry(NamedTuple):
    color: int
    status: str  # "prefix" | "unitary" | "fails"
    j: Optional[int]


@dataclass(frozen=True)
class MajorityCertificate:
    """Per-color result of the prefix-majority check.

    In strict mode a color t is witnessed by the smallest j with
    |M_t(j)| > j/2.  In weak mode the threshold is |M_t(j)| >= j/2, and a
    class containing a unitary vertex is flagged "unitary" instead.
    """

    n: int
    mode: str  # "strict" | "weak"
    entries: tuple[MajorityEntry, ...]

    @property
    def complete(self) -> bool:
        return all(e.status != "fails" for e in self.entries)

    def entry(self, t: int) -> MajorityEntry:
        return self.entries[t - 1]

    def failing_colors(self) -> tuple[int, ...]:
        return tuple(e.color for e in self.entries if e.status == "fails")

    def unitary_colors(self) -> tuple[int, ...]:
        return tuple(e.color for e in self.entries if e.status == "unitary")


# ---------------------------------------------------------------------------
# operations


def is_ordered_at(c: EdgeColoring, o: VertexOrdering, i: int) -> Optional[int]:
    """Main color at position i, or None if the rightward edges disagree.

    Positions n-1 and n are vacuously ordered and report the color of the
    edge between the last two vertices.
    """
    n = c.n
    if not (1 <= i <= n):
        raise ValueError(f"position {i} out of range")
    if i >= n - 1:
        return c.color(o.vertex_at(n - 1), o.vertex_at(n))
    v = o.vertex_at(i)
    first = c.color(v, o.vertex_at(i + 1))
    for p in range(i + 2, n + 1):
        if c.color(v, o.vertex_at(p)) != first:
            return None
    return first


def is_unitary(c: EdgeColoring, v: int) -> Optional[tuple[int, int, int]]:
    """Return (main, minority, partner) if v is unitary, else None.

    v qualifies when exactly n-2 of its edges share a color a and the one
    remaining edge vu has a color b != a with u itself carrying n-2 edges
    of color b.  For n = 3 both color splits can qualify; the smallest main
    color wins.
    """
    n = c.n
    if n < 3:
        raise ValueError("unitary vertices need n >= 3")
    counts = c.vertex_color_counts(v)
    if len(counts) != 2:
        return None
    for a in sorted(counts):
        if counts[a] != n - 2:
            continue
        (b,) = [x for x in counts if x != a]
        if counts[b] != 1:
            continue
        u = next(w for w in range(1, n + 1) if w != v and c.color(v, w) == b)
        b_count = sum(1 for w in range(1, n + 1) if w != u and c.color(u, w) == b)
        if b_count == n - 2:
            return (a, b, u)
    return None


def _unitary_structure(c: EdgeColoring) -> Optional[dict[int, tuple[int, int, int]]]:
    """Map every truly unitary vertex to (main, minority, partner).

    ``is_unitary`` is a one-step shape check; genuine unitarity additionally
    requires the partner chain to close (the partner must itself be unitary).
    After discarding vertices whose chain dies, the survivors form a single
    partner cycle of length 3 (distinct mains) or 4 (two alternating mains),
    or there are none at all.
    """
    n = c.n
    if n == 3:
        p, q, r = c.color(1, 2), c.color(1, 3), c.color(2, 3)
        if len({p, q, r}) == 3:
            # rainbow triangle: every vertex is unitary; fix the partner
            # cycle 1 -> 3 -> 2 -> 1 so mains are deterministic
            return {1: (p, q, 3), 2: (r, p, 1), 3: (q, r, 2)}
        return None
    info = {}
    for v in range(1, n + 1):
        res = is_unitary(c, v)
        if res is not None:
            info[v] = res
    # drop shape-only vertices until partners are closed under the map
    changed = True
    while changed:
        changed = False
        for v in list(info):
            if info[v][2] not in info:
                del info[v]
                changed = True
    if not info:
        return None
    # survivors can only be one partner cycle on 3 or 4 vertices
    seen: set[int] = set()
    v = min(info)
    while v not in seen:
        seen.add(v)
        v = info[v][2]
    if len(seen) != len(info) or len(info) not in (3, 4):
        raise RuntimeError(f"inconsistent unitary structure: {info}")
    return info


def _greedy_order(c: EdgeColoring, prefix: list[int]) -> Optional[list[int]]:
    """Extend prefix to a full ordering, always taking the smallest vertex
    whose edges to the remaining vertices are monochromatic."""
    n = c.n
    remaining = sorted(v for v in range(1, n + 1) if v not in prefix)
    placed = list(prefix)
    while len(remaining) > 2:
        pick = None
        for v in remaining:
            colors = {c.color(v, u) for u in remaining if u != v}
            if len(colors) == 1:
                pick = v
                break
        if pick is None:
            return None
        placed.append(pick)
        remaining.remove(pick)
    placed.extend(remaining)
    return placed


def inherited_coloring(c: EdgeColoring, o: VertexOrdering) -> InheritedColoring:
    """Inherited coloring of c under ordering o.

    Every vertex must be ordered at its position or unitary; unitary mains
    take precedence (the two agree wherever both apply).
    """
    n = c.n
    structure = _unitary_structure(c) if n >= 3 else None
    unitary = structure or {}
    mains = [0] * n
    for p in range(1, n + 1):
        v = o.vertex_at(p)
        if v in unitary:
            mains[v - 1] = unitary[v][0]
            continue
        m = is_ordered_at(c, o, p)
        if m is None:
            raise ValueError(f"vertex {v} is neither ordered at position {p} nor unitary")
        mains[v - 1] = m
    unit = tuple(
        UnitaryVertex(v, a, b, u) for v, (a, b, u) in sorted(unitary.items())
    )
    return InheritedColoring(c, o, tuple(mains), unit)


def comb_certificate(c: EdgeColoring) -> Optional[InheritedColoring]:
    """Search for an ordering under which c is combed.

    A valid unitary prefix (3 or 4 vertices, placed first in label order) is
    extracted when present, then remaining vertices are ordered greedily.
    Returns None when no combing ordering exists.
    """
    n = c.n
    if n == 2:
        return inherited_coloring(c, VertexOrdering.identity(2))
    structure = _unitary_structure(c)
    if structure is None:
        order = _greedy_order(c, [])
        if order is None:
            return None
        return inherited_coloring(c, VertexOrdering(tuple(order)))
    order = _greedy_order(c, sorted(structure))
    if order is None:
        return None
    return inherited_coloring(c, VertexOrdering(tuple(order)))


def majority_certificate(ic: InheritedColoring, strict: bool) -> MajorityCertificate:
    """Prefix-majority certificate over all colors of the coloring.

    strict: smallest j in [n-1] with |M_t(j)| > j/2, else "fails".
    weak:   classes holding a unitary vertex are flagged "unitary"; other
            classes get the smallest j with |M_t(j)| >= j/2, else "fails".
    """
    n = ic.n
    entries = []
    for t in range(1, ic.k + 1):
        if not strict and ic.class_has_unitary(t):
            entries.append(MajorityEntry(t, "unitary", None))
            continue
        j_found = None
        for j in range(1, n):
            twice = 2 * ic.prefix_count(t, j)
            if (strict and twice > j) or (not strict and twice >= j):
                j_found = j
                break
        if j_found is None:
            entries.append(MajorityEntry(t, "fails", None))
        else:
            entries.append(MajorityEntry(t, "prefix", j_found))
    return MajorityCertificate(n, "strict" if strict else "weak", tuple(entries))
