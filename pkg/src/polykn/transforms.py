"""Local moves on witnesses and colorings.

Twist reconnects a Hamiltonian cycle after deleting two disjoint edges (the
reconnection keeping one cycle is unique); a 2-switch is the same exchange
on a 2-factor, where both reconnections can be legal.  Max-vertex profiles
record monochromatic degrees outside a frozen vertex set, and the greedy
comb-improvement loop recolors off-color edges at max-vertices whenever an
exact feasibility query shows polychromaticity cannot break.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .constructions import FamilyKind
from .core import Edge, EdgeColoring, comb_certificate
from .families import (
    AllowedGraph,
    SubgraphWitness,
    find_member_containing,
)
from .verify import is_polychromatic


def _cycle_sequence(edges: tuple[Edge, ...]) -> list[int]:
    adj: dict[int, list[int]] = {}
    for (i, j) in edges:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)
    start = min(adj)
    seq = [start, min(adj[start])]
    while len(seq) < len(adj):
        a, b = adj[seq[-1]]
        seq.append(a if a != seq[-2] else b)
    return seq


def twist(h: SubgraphWitness, e1: Edge, e2: Edge) -> SubgraphWitness:
    """Remove two disjoint cycle edges and reconnect into a single cycle.

    Orienting the cycle and removing arcs a->b, c->d, the only reconnection
    preserving one cycle adds {a, c} and {b, d} and reverses the b..c arc.
    """
    if h.kind is not FamilyKind.HAMILTONIAN_CYCLE:
        raise ValueError("twist operates on Hamiltonian cycles")
    e1, e2 = tuple(sorted(e1)), tuple(sorted(e2))
    if e1 not in h.edges or e2 not in h.edges:
        raise ValueError("both edges must lie on the cycle")
    if set(e1) & set(e2):
        raise ValueError("edges must be disjoint")
    seq = _cycle_sequence(h.edges)
    n = len(seq)
    cuts = []
    for i in range(n):
        pair = tuple(sorted((seq[i], seq[(i + 1) % n])))
        if pair in (e1, e2):
            cuts.append(i)
    i, j = cuts
    new_seq = seq[: i + 1] + seq[i + 1 : j + 1][::-1] + seq[j + 1 :]
    edges = [(new_seq[p], new_seq[(p + 1) % n]) for p in range(n)]
    out = SubgraphWitness(
        FamilyKind.HAMILTONIAN_CYCLE, tuple(sorted(tuple(sorted(e)) for e in edges))
    )
    out.validate(n)
    return out


def two_switch(f: SubgraphWitness, e1: Edge, e2: Edge, choice: int) -> SubgraphWitness:
    """Exchange two disjoint 2-factor edges for one of the two cross pairs.

    With e1 = (a, b) and e2 = (c, d) endpoint-sorted, choice 0 adds
    {a, c}, {b, d} and choice 1 adds {a, d}, {b, c}.  A choice is illegal
    when a replacement edge already belongs to the 2-factor.
    """
    if f.kind not in (FamilyKind.TWO_FACTOR, FamilyKind.HAMILTONIAN_CYCLE):
        raise ValueError("2-switch operates on 2-factors")
    if choice not in (0, 1):
        raise ValueError("choice must be 0 or 1")
    e1, e2 = tuple(sorted(e1)), tuple(sorted(e2))
    if e1 not in f.edges or e2 not in f.edges:
        raise ValueError("both edges must lie in the 2-factor")
    if set(e1) & set(e2):
        raise ValueError("edges must be disjoint")
    a, b = e1
    c, d = e2
    new_pair = [(a, c), (b, d)] if choice == 0 else [(a, d), (b, c)]
    new_pair = [tuple(sorted(e)) for e in new_pair]
    remaining = [e for e in f.edges if e not in (e1, e2)]
    for e in new_pair:
        if e in remaining:
            raise ValueError(f"replacement edge {e} already present")
    n = max(max(e) for e in f.edges)
    out = SubgraphWitness(FamilyKind.TWO_FACTOR, tuple(sorted(remaining + new_pair)))
    out.validate(n)
    return out


class VertexStats(NamedTuple):
    vertex: int
    degree: int  # maximum monochromatic degree inside the induced coloring
    color: int  # a color attaining it (smallest on ties)
    minority: Optional[int]  # set when all off-color edges share one color


@dataclass(frozen=True)
class MaxVertexProfile:
    """Monochromatic-degree profile of the coloring restricted to V minus X."""

    n: int
    outside: frozenset[int]  # X
    stats: tuple[VertexStats, ...]
    max_degree: int
    max_vertices: tuple[int, ...]
    s_vertices: Optional[tuple[int, ...]]
    t_vertices: Optional[tuple[int, ...]]
    w_vertices: Optional[tuple[int, ...]]

    def stat(self, v: int) -> VertexStats:
        for s in self.stats:
            if s.vertex == v:
                return s
        raise KeyError(v)


def max_vertex_profile(c: EdgeColoring, outside: frozenset[int] | set[int]) -> MaxVertexProfile:
    """Per-vertex monochromatic degrees in K_n restricted to V minus X.

    When the minority pairs of the max-vertices use exactly two colors in
    opposite roles, the vertices split into S ((x,y)-max), T ((y,x)-max)
    and W (the rest), mirroring the exchange analysis.
    """
    X = frozenset(outside)
    zs = [v for v in range(1, c.n + 1) if v not in X]
    if not zs:
        raise ValueError("V minus X must be nonempty")
    stats = []
    for v in zs:
        counts = Counter(c.color(v, u) for u in zs if u != v)
        if not counts:
            stats.append(VertexStats(v, 0, 0, None))
            continue
        degree = max(counts.values())
        color = min(t for t, cnt in counts.items() if cnt == degree)
        rest = [c.color(v, u) for u in zs if u != v and c.color(v, u) != color]
        minority = rest[0] if rest and len(set(rest)) == 1 else None
        stats.append(VertexStats(v, degree, color, minority))
    max_degree = max(s.degree for s in stats)
    max_vertices = tuple(s.vertex for s in stats if s.degree == max_degree)
    pairs = {
        (s.color, s.minority)
        for s in stats
        if s.vertex in max_vertices and s.minority is not None
    }
    s_set = t_set = w_set = None
    if pairs:
        colors = sorted({x for p in pairs for x in p})
        if len(colors) == 2 and pairs <= {(colors[0], colors[1]), (colors[1], colors[0])}:
            fwd, back = (colors[0], colors[1]), (colors[1], colors[0])
            s_set = tuple(
                s.vertex for s in stats
                if s.vertex in max_vertices and (s.color, s.minority) == fwd
            )
            t_set = tuple(
                s.vertex for s in stats
                if s.vertex in max_vertices and (s.color, s.minority) == back
            )
            w_set = tuple(v for v in zs if v not in s_set and v not in t_set)
    return MaxVertexProfile(
        c.n, X, tuple(stats), max_degree, max_vertices, s_set, t_set, w_set
    )


def recolor_unitary_triple(c: EdgeColoring, x: int, y: int, z: int) -> EdgeColoring:
    """Recolor all edges at x, y, z so they become a unitary rainbow triple.

    Edges at x turn color 1 except xy; at y color 2 except yz; at z color 3
    except zx.  The triangle ends up colored xy=2, yz=3, zx=1, making x, y,
    z unitary with mains 1, 2, 3.  Edges disjoint from the triple keep
    their colors.
    """
    if len({x, y, z}) != 3:
        raise ValueError("vertices must be distinct")
    if c.k < 3:
        raise ValueError("colors 1, 2 and 3 must exist before recoloring")
    trip = {x, y, z}
    mapping = {}
    for (i, j, col) in c.edges():
        pair = {i, j}
        if pair == {x, y}:
            col = 2
        elif pair == {y, z}:
            col = 3
        elif pair == {z, x}:
            col = 1
        elif x in pair and not (pair & trip - {x}):
            col = 1
        elif y in pair and not (pair & trip - {y}):
            col = 2
        elif z in pair and not (pair & trip - {z}):
            col = 3
        mapping[(i, j)] = col
    return EdgeColoring.from_pairs(c.n, mapping)


@dataclass(frozen=True)
class ImproveResult:
    coloring: EdgeColoring
    combed: bool
    moves: int
    constant_set_size: int


def improve_toward_combed(c: EdgeColoring, kind: FamilyKind,
                          check_each_step: bool = True) -> ImproveResult:
    """Greedy polychromaticity-preserving push toward a combed coloring.

    Vertices whose edges to the rest of Z are monochromatic accrete into a
    constant set X.  Then, at a max-vertex v of Z with majority color a, an
    off-color edge uv may be recolored to a whenever every family member
    through uv keeps a second edge of its color - checked exactly by asking
    for a member forced through uv in the graph of other-colored edges.
    Each accepted move raises (|X|, max monochromatic degree), so the loop
    terminates; the output need not be combed and is reported with a flag.
    """
    cert = is_polychromatic(c, kind)
    if not cert.polychromatic:
        raise ValueError("input coloring is not polychromatic for this family")
    current = c
    x_set: set[int] = set()
    moves = 0
    while True:
        # accretion: monochromatic-toward-Z vertices join X
        grew = True
        while grew:
            grew = False
            zs = [v for v in range(1, current.n + 1) if v not in x_set]
            if len(zs) <= 2:
                break
            for v in zs:
                colors = {current.color(v, u) for u in zs if u != v}
                if len(colors) == 1:
                    x_set.add(v)
                    grew = True
                    break
        zs = [v for v in range(1, current.n + 1) if v not in x_set]
        if len(zs) <= 2:
            break
        profile = max_vertex_profile(current, frozenset(x_set))
        moved = False
        for v in profile.max_vertices:
            a = profile.stat(v).color
            for u in zs:
                if u == v or current.color(u, v) == a:
                    continue
                t = current.color(u, v)
                allowed = AllowedGraph.minus_color(current, t)
                lone = find_member_containing(kind, allowed, (u, v))
                if lone is not None:
                    continue  # some member would lose its only t edge
                candidate = current.recolored(u, v, a)
                if candidate.k != current.k:
                    raise RuntimeError("palette changed by a safe recoloring")
                if check_each_step:
                    if not is_polychromatic(candidate, kind).polychromatic:
                        raise RuntimeError("polychromaticity lost by a safe recoloring")
                    after = max_vertex_profile(candidate, frozenset(x_set))
                    if after.max_degree <= profile.max_degree:
                        raise RuntimeError("accepted move did not raise the measure")
                current = candidate
                moves += 1
                moved = True
                break
            if moved:
                break
        if not moved:
            break
    combed = comb_certificate(current) is not None
    return ImproveResult(current, combed, moves, len(x_set))
