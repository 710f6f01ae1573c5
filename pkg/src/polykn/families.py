"""Exact existence and enumeration engines for spanning subgraph families.

Existence queries run against an allowed edge set (typically K_n minus one
color class):

* 1-factors via augmenting-path maximum matching with blossom contraction,
* 2-factors via reduction to perfect matching on the standard
  degree-constraint gadget (each vertex expanded so exactly two of its
  allowed edges survive),
* Hamiltonian cycles via bitmask dynamic programming for small n and
  degree/connectivity-pruned backtracking beyond that.

Enumeration is a separate brute-force oracle that emits members in
lexicographic order of their sorted edge lists.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional

from .constructions import FamilyKind
from .core import Edge, EdgeColoring

# Bitmask DP is quadratic in 2^n; past this size backtracking wins.
HC_DP_MAX_N = 18

ENUMERATION_CAPS = {
    FamilyKind.ONE_FACTOR: 16,
    FamilyKind.TWO_FACTOR: 12,
    FamilyKind.HAMILTONIAN_CYCLE: 12,
}


class CapExceededError(ValueError):
    pass


@dataclass(frozen=True)
class AllowedGraph:
    """Symmetric loop-free edge set over vertices 1..n, as per-vertex bitsets."""

    n: int
    masks: tuple[int, ...]  # index v holds neighbor bits; index 0 unused

    def __post_init__(self):
        if len(self.masks) != self.n + 1:
            raise ValueError("masks must have one entry per vertex plus slot 0")
        for v in range(1, self.n + 1):
            if self.masks[v] >> (self.n + 1):
                raise ValueError("neighbor bit out of range")
            if (self.masks[v] >> v) & 1:
                raise ValueError("loops are not allowed")
            for u in range(1, self.n + 1):
                if (self.masks[v] >> u) & 1 and not (self.masks[u] >> v) & 1:
                    raise ValueError("adjacency must be symmetric")

    @staticmethod
    def from_edges(n: int, edges) -> "AllowedGraph":
        masks = [0] * (n + 1)
        for (i, j) in edges:
            if i == j or not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"bad edge ({i}, {j})")
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return AllowedGraph(n, tuple(masks))

    @staticmethod
    def complete(n: int) -> "AllowedGraph":
        full = (2 << n) - 2  # bits 1..n
        return AllowedGraph(n, tuple(0 if v == 0 else full & ~(1 << v) for v in range(n + 1)))

    @staticmethod
    def minus_color(c: EdgeColoring, t: int) -> "AllowedGraph":
        return AllowedGraph.from_edges(c.n, [(i, j) for (i, j, col) in c.edges() if col != t])

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.masks[i] >> j) & 1)

    def degree(self, v: int) -> int:
        return bin(self.masks[v]).count("1")

    def edges(self) -> list[Edge]:
        out = []
        for i in range(1, self.n + 1):
            m = self.masks[i] >> (i + 1)
            j = i + 1
            while m:
                if m & 1:
                    out.append((i, j))
                m >>= 1
                j += 1
        return out

    def with_edge(self, i: int, j: int) -> "AllowedGraph":
        masks = list(self.masks)
        masks[i] |= 1 << j
        masks[j] |= 1 << i
        return AllowedGraph(self.n, tuple(masks))


@dataclass(frozen=True)
class SubgraphWitness:
    """An edge set certified as a member of one of the three families.

    Edges are normalized on construction: endpoints sorted within a pair,
    pairs sorted lexicographically.
    """

    kind: FamilyKind
    edges: tuple[Edge, ...]

    def __post_init__(self):
        normalized = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        if normalized != self.edges:
            object.__setattr__(self, "edges", normalized)

    def validate(self, n: int) -> None:
        deg = [0] * (n + 1)
        seen = set()
        for (i, j) in self.edges:
            if not (1 <= i < j <= n):
                raise ValueError(f"bad witness edge ({i}, {j})")
            if (i, j) in seen:
                raise ValueError(f"repeated witness edge ({i}, {j})")
            seen.add((i, j))
            deg[i] += 1
            deg[j] += 1
        target = 1 if self.kind is FamilyKind.ONE_FACTOR else 2
        for v in range(1, n + 1):
            if deg[v] != target:
                raise ValueError(f"vertex {v} has degree {deg[v]}, expected {target}")
        if self.kind is FamilyKind.HAMILTONIAN_CYCLE and self._cycle_count(n) != 1:
            raise ValueError("Hamiltonian cycle witness is disconnected")

    def _cycle_count(self, n: int) -> int:
        adj = {v: [] for v in range(1, n + 1)}
        for (i, j) in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        seen: set[int] = set()
        cycles = 0
        for v in range(1, n + 1):
            if v in seen:
                continue
            cycles += 1
            stack = [v]
            while stack:
                u = stack.pop()
                if u in seen:
                    continue
                seen.add(u)
                stack.extend(adj[u])
        return cycles


def _sorted_witness(kind: FamilyKind, edges) -> SubgraphWitness:
    return SubgraphWitness(kind, tuple(sorted(tuple(sorted(e)) for e in edges)))


# ---------------------------------------------------------------------------
# maximum matching with blossom contraction (0-based internally)


def maximum_matching(n: int, adj: list[list[int]]) -> list[int]:
    """Maximum cardinality matching in a general graph; match[v] = -1 if free."""
    match = [-1] * n
    for v in range(n):  # cheap greedy seed, fewer augmentation rounds
        if match[v] == -1:
            for u in adj[v]:
                if match[u] == -1:
                    match[v] = u
                    match[u] = v
                    break
    parent = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        used = [False] * n
        while True:
            a = base[a]
            used[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if used[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_augmenting_path(root: int) -> bool:
        nonlocal parent, base
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    in_blossom = [False] * n
                    mark_path(v, cur, to, in_blossom)
                    mark_path(to, cur, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        u = to
                        while u != -1:
                            pv = parent[u]
                            ppv = match[pv]
                            match[u] = pv
                            match[pv] = u
                            u = ppv
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1:
            find_augmenting_path(v)
    return match


def _perfect_matching(g: AllowedGraph, skip: frozenset[int] = frozenset()) -> Optional[list[Edge]]:
    """Perfect matching on the vertices of g outside `skip`, or None."""
    verts = [v for v in range(1, g.n + 1) if v not in skip]
    if len(verts) % 2:
        return None
    if not verts:
        return []
    index = {v: i for i, v in enumerate(verts)}
    adj: list[list[int]] = [[] for _ in verts]
    for v in verts:
        for u in verts:
            if u > v and g.has_edge(v, u):
                adj[index[v]].append(index[u])
                adj[index[u]].append(index[v])
    match = maximum_matching(len(verts), adj)
    if -1 in match:
        return None
    return [(verts[i], verts[j]) for i, j in enumerate(match) if i < j]


# ---------------------------------------------------------------------------
# 2-factors through the degree-constraint gadget


def _degree_constrained_subgraph(g: AllowedGraph, targets: dict[int, int]) -> Optional[list[Edge]]:
    """Spanning subgraph of g with prescribed degrees, via a matching gadget.

    Each vertex v becomes one external node per incident allowed edge plus
    deg(v) - target(v) internal nodes joined to all of its externals; a
    perfect matching of the gadget selects exactly target(v) original edges
    at every vertex.
    """
    edges = g.edges()
    for v in range(1, g.n + 1):
        if g.degree(v) < targets[v]:
            return None
    node_count = 0
    external: dict[tuple[int, Edge], int] = {}
    adj: list[list[int]] = []

    def new_node() -> int:
        nonlocal node_count
        adj.append([])
        node_count += 1
        return node_count - 1

    incident: dict[int, list[Edge]] = {v: [] for v in range(1, g.n + 1)}
    for e in edges:
        incident[e[0]].append(e)
        incident[e[1]].append(e)
    for v in range(1, g.n + 1):
        for e in incident[v]:
            external[(v, e)] = new_node()
        for _ in range(len(incident[v]) - targets[v]):
            inner = new_node()
            for e in incident[v]:
                adj[inner].append(external[(v, e)])
                adj[external[(v, e)]].append(inner)
    for e in edges:
        a, b = external[(e[0], e)], external[(e[1], e)]
        adj[a].append(b)
        adj[b].append(a)
    match = maximum_matching(node_count, adj)
    if -1 in match:
        return None
    chosen = [e for e in edges if match[external[(e[0], e)]] == external[(e[1], e)]]
    return chosen


def _find_two_factor(g: AllowedGraph) -> Optional[list[Edge]]:
    return _degree_constrained_subgraph(g, {v: 2 for v in range(1, g.n + 1)})


# ---------------------------------------------------------------------------
# Hamiltonian cycles / paths


def _mask_to_zero_based(g: AllowedGraph) -> list[int]:
    return [g.masks[v + 1] >> 1 for v in range(g.n)]


def _ham_path_dp(adj: list[int], n: int, start: int) -> Optional[list[list[int]]]:
    """dp[mask] = bitmask of vertices reachable as path ends from `start`."""
    full = (1 << n) - 1
    dp = [0] * (full + 1)
    dp[1 << start] = 1 << start
    for mask in range(full + 1):
        ends = dp[mask]
        if not ends:
            continue
        rest = full & ~mask
        while rest:
            bit = rest & -rest
            rest ^= bit
            j = bit.bit_length() - 1
            if adj[j] & ends:
                dp[mask | bit] |= bit
    return dp


def _dp_reconstruct(dp: list[int], adj: list[int], n: int, start: int, end: int) -> list[int]:
    full = (1 << n) - 1
    path = [end]
    mask = full
    cur = end
    while mask != (1 << start):
        prev_mask = mask & ~(1 << cur)
        candidates = dp[prev_mask] & adj[cur]
        prev = (candidates & -candidates).bit_length() - 1
        path.append(prev)
        mask = prev_mask
        cur = prev
    path.reverse()
    return path


def _ham_cycle_dp(g: AllowedGraph) -> Optional[list[Edge]]:
    n = g.n
    adj = _mask_to_zero_based(g)
    if any(bin(a).count("1") < 2 for a in adj):
        return None
    dp = _ham_path_dp(adj, n, 0)
    full = (1 << n) - 1
    ends = dp[full] & adj[0] & ~1
    if not ends:
        return None
    end = (ends & -ends).bit_length() - 1
    path = _dp_reconstruct(dp, adj, n, 0, end)
    cycle = [(path[i] + 1, path[i + 1] + 1) for i in range(n - 1)] + [(path[-1] + 1, 1)]
    return cycle


def _ham_path_exists_dp(g: AllowedGraph, u: int, v: int) -> Optional[list[Edge]]:
    """Hamiltonian u..v path (1-based endpoints), or None."""
    n = g.n
    adj = _mask_to_zero_based(g)
    dp = _ham_path_dp(adj, n, u - 1)
    full = (1 << n) - 1
    if not (dp[full] >> (v - 1)) & 1:
        return None
    path = _dp_reconstruct(dp, adj, n, u - 1, v - 1)
    return [(path[i] + 1, path[i + 1] + 1) for i in range(n - 1)]


def _ham_path_backtrack(g: AllowedGraph, start: int, end: Optional[int],
                        flood_every: int = 4) -> Optional[list[int]]:
    """Backtracking Hamiltonian path from start (to end, or closing to start).

    Branches visit low-degree neighbors first; every few levels a bitset
    flood fill checks that the unvisited region is still reachable.
    """
    n = g.n
    adj = g.masks
    all_bits = (2 << n) - 2
    path = [start]
    visited = 1 << start

    def feasible(cur: int, depth: int) -> bool:
        free = all_bits & ~visited
        target = end if end is not None else start
        for v in range(1, n + 1):
            if not (free >> v) & 1:
                continue
            avail = adj[v] & (free | (1 << cur) | (1 << target))
            need = 1 if v == end else 2
            if bin(avail).count("1") < need:
                return False
        if depth % flood_every == 0:
            reach = 1 << cur
            frontier = reach
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    bit = f & -f
                    f ^= bit
                    v = bit.bit_length() - 1
                    nxt |= adj[v] & (free | (1 << target)) & ~reach
                reach |= nxt
                frontier = nxt
            if (free | (1 << target)) & ~reach:
                return False
        return True

    def extend() -> bool:
        nonlocal visited
        cur = path[-1]
        if len(path) == n:
            if end is not None:
                return cur == end
            return bool((adj[cur] >> start) & 1)
        cands = []
        m = adj[cur] & all_bits & ~visited
        while m:
            bit = m & -m
            m ^= bit
            v = bit.bit_length() - 1
            if end is not None and v == end and len(path) != n - 1:
                continue
            cands.append(v)
        cands.sort(key=lambda v: bin(adj[v] & all_bits & ~visited).count("1"))
        for v in cands:
            path.append(v)
            visited |= 1 << v
            if feasible(v, len(path)) and extend():
                return True
            path.pop()
            visited &= ~(1 << v)
        return False

    if extend():
        return path
    return None


def _components_after_removal(g: AllowedGraph, removed: int) -> int:
    all_bits = (2 << g.n) - 2
    left = all_bits & ~removed
    comps = 0
    while left:
        comps += 1
        seed = left & -left
        reach = seed
        frontier = seed
        while frontier:
            nxt = 0
            f = frontier
            while f:
                bit = f & -f
                f ^= bit
                v = bit.bit_length() - 1
                nxt |= g.masks[v] & left & ~reach
            reach |= nxt
            frontier = nxt
        left &= ~reach
    return comps


def _separator_refutes(g: AllowedGraph, slack: int) -> bool:
    """Hamiltonian refutation: removing S must leave at most |S| components
    (|S| + 1 for a Hamiltonian path).  Tries each closed neighborhood."""
    for u in range(1, g.n + 1):
        s_bits = g.masks[u]
        size = bin(s_bits).count("1")
        if size >= g.n - 1:
            continue
        if _components_after_removal(g, s_bits) > size + slack:
            return True
    return False


def _find_ham_cycle(g: AllowedGraph) -> Optional[list[Edge]]:
    n = g.n
    if n < 3:
        return None
    if any(g.degree(v) < 2 for v in range(1, n + 1)):
        return None
    if n <= HC_DP_MAX_N:
        return _ham_cycle_dp(g)
    # polynomial refutations before exponential search: a 2-factor must
    # exist, and no vertex neighborhood may disconnect too much
    if _find_two_factor(g) is None or _separator_refutes(g, 0):
        return None
    path = _ham_path_backtrack(g, 1, None)
    if path is None:
        return None
    return [(path[i], path[i + 1]) for i in range(n - 1)] + [(path[-1], path[0])]


# ---------------------------------------------------------------------------
# public existence API


def find_member(kind: FamilyKind, g: AllowedGraph) -> Optional[SubgraphWitness]:
    """A member of the family inside the allowed graph, or None. Exact."""
    n = g.n
    if kind is FamilyKind.ONE_FACTOR:
        if n < 2 or n % 2:
            raise ValueError("1-factors need even n >= 2")
        pm = _perfect_matching(g)
        found = pm
    elif kind is FamilyKind.TWO_FACTOR:
        if n < 3:
            raise ValueError("2-factors need n >= 3")
        found = _find_two_factor(g)
    else:
        if n < 3:
            raise ValueError("Hamiltonian cycles need n >= 3")
        found = _find_ham_cycle(g)
    if found is None:
        return None
    witness = _sorted_witness(kind, found)
    witness.validate(n)
    for (i, j) in witness.edges:
        if not g.has_edge(i, j):
            raise RuntimeError(f"engine used forbidden edge ({i}, {j})")
    return witness


def find_member_containing(kind: FamilyKind, g: AllowedGraph, edge: Edge) -> Optional[SubgraphWitness]:
    """Member using every edge of g plus `edge`, forced to contain `edge`."""
    u, v = min(edge), max(edge)
    n = g.n
    if not (1 <= u < v <= n):
        raise ValueError(f"bad edge ({u}, {v})")
    g2 = g.with_edge(u, v)
    if kind is FamilyKind.ONE_FACTOR:
        if n < 2 or n % 2:
            raise ValueError("1-factors need even n >= 2")
        rest = _perfect_matching(g2, skip=frozenset((u, v)))
        found = None if rest is None else rest + [(u, v)]
    elif kind is FamilyKind.TWO_FACTOR:
        masks = list(g2.masks)
        masks[u] &= ~(1 << v)
        masks[v] &= ~(1 << u)
        stripped = AllowedGraph(n, tuple(masks))
        targets = {w: 2 for w in range(1, n + 1)}
        targets[u] = targets[v] = 1
        rest = _degree_constrained_subgraph(stripped, targets)
        found = None if rest is None else rest + [(u, v)]
    else:
        if n < 3:
            raise ValueError("Hamiltonian cycles need n >= 3")
        if n <= HC_DP_MAX_N:
            path_edges = _ham_path_exists_dp(g2, u, v)
        else:
            path_edges = None
            masks = list(g2.masks)
            masks[u] &= ~(1 << v)
            masks[v] &= ~(1 << u)
            stripped = AllowedGraph(n, tuple(masks))
            targets = {w: 2 for w in range(1, n + 1)}
            targets[u] = targets[v] = 1
            # polynomial relaxations refute most dead instances fast
            if (
                _degree_constrained_subgraph(stripped, targets) is not None
                and not _separator_refutes(g2, 1)
            ):
                path = _ham_path_backtrack(g2, u, v)
                path_edges = None if path is None else [
                    (path[i], path[i + 1]) for i in range(n - 1)
                ]
        found = None if path_edges is None else path_edges + [(u, v)]
    if found is None:
        return None
    witness = _sorted_witness(kind, found)
    witness.validate(n)
    if (u, v) not in witness.edges:
        raise RuntimeError("forced edge missing from witness")
    return witness


# ---------------------------------------------------------------------------
# enumeration oracle


def _degree_regular_members(n: int, target: int, allowed: AllowedGraph) -> Iterator[tuple[Edge, ...]]:
    """All spanning subgraphs with every degree == target, lexicographically.

    Completes vertices in increasing order, so the edge list is built
    already sorted and members stream in lexicographic order of their
    sorted edge lists.
    """
    deg = [0] * (n + 2)
    edges: list[Edge] = []

    def rec(lo: int) -> Iterator[tuple[Edge, ...]]:
        v = lo
        while v <= n and deg[v] == target:
            v += 1
        if v > n:
            yield tuple(edges)
            return
        start = edges[-1][1] + 1 if edges and edges[-1][0] == v else v + 1
        need = target - deg[v]
        avail = sum(
            1 for w in range(start, n + 1) if deg[w] < target and allowed.has_edge(v, w)
        )
        if avail < need:
            return
        for w in range(start, n + 1):
            if deg[w] < target and allowed.has_edge(v, w):
                deg[v] += 1
                deg[w] += 1
                edges.append((v, w))
                yield from rec(v)
                edges.pop()
                deg[v] -= 1
                deg[w] -= 1

    yield from rec(1)


def _is_single_cycle(n: int, edges: tuple[Edge, ...]) -> bool:
    adj = {v: [] for v in range(1, n + 1)}
    for (i, j) in edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = {1}
    stack = [1]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def enumerate_members(
    kind: FamilyKind,
    n: int,
    allowed: Optional[AllowedGraph] = None,
    max_n: Optional[int] = None,
) -> Iterator[SubgraphWitness]:
    """Every member exactly once, in lexicographic order of sorted edge lists.

    Pure recursive generation, independent of the search engines, so it can
    serve as their oracle.  `allowed` restricts the usable edges (default
    K_n).  A cap guards against runaway enumeration.
    """
    cap = max_n if max_n is not None else ENUMERATION_CAPS[kind]
    if n > cap:
        raise CapExceededError(f"enumeration cap exceeded: n={n} > {cap}")
    if kind is FamilyKind.ONE_FACTOR:
        if n < 2 or n % 2:
            raise ValueError("1-factors need even n >= 2")
    elif n < 3:
        raise ValueError("2-factors and Hamiltonian cycles need n >= 3")
    g = allowed if allowed is not None else AllowedGraph.complete(n)
    if g.n != n:
        raise ValueError("allowed graph size mismatch")
    target = 1 if kind is FamilyKind.ONE_FACTOR else 2
    for edges in _degree_regular_members(n, target, g):
        if kind is FamilyKind.HAMILTONIAN_CYCLE and not _is_single_cycle(n, edges):
            continue
        yield SubgraphWitness(kind, edges)


def count_members(
    kind: FamilyKind,
    n: int,
    allowed: Optional[AllowedGraph] = None,
    max_n: Optional[int] = None,
) -> int:
    return sum(1 for _ in enumerate_members(kind, n, allowed, max_n))
