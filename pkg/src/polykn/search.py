"""Exact polychromatic numbers at desk scale.

Full mode enumerates all edge colorings up to color permutation (colors are
labelled by first occurrence along the lexicographic edge order) and prunes
a branch as soon as some fully-assigned member avoids a used color.
Ordered and combed modes search main-color sequences instead, pruning with
the majority conditions and verifying finalists with the exact engines.

Both searches split the root of the tree into prefix tasks; with threads > 1
the tasks run in a process pool.  Reported results and node counts follow
the canonical prefix order, so they do not depend on the worker count.
"""

from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass
from typing import Optional

from .constructions import FamilyKind, build, palette_size
from .core import EdgeColoring, all_edges, edge_index
from .families import CapExceededError, enumerate_members
from .verify import is_polychromatic

BRUTE_CAPS = {
    FamilyKind.ONE_FACTOR: 6,
    FamilyKind.TWO_FACTOR: 5,
    FamilyKind.HAMILTONIAN_CYCLE: 5,
}
ORDERED_CAP = 16
COMBED_CAP = 14

_SPLIT_DEPTH = 5  # prefix depth handed to worker tasks


@dataclass(frozen=True)
class SearchReport:
    n: int
    kind: FamilyKind
    mode: str  # "full" | "ordered" | "combed"
    optimum: int
    coloring: EdgeColoring
    nodes: int
    wall_time: float


@dataclass(frozen=True)
class TheoremRow:
    n: int
    kind: FamilyKind
    construction_k: int
    formula_k: int
    search_k: Optional[int]
    search_mode: Optional[str]
    agrees: bool


def _run_tasks(tasks, worker, threads):
    """First hit over canonically ordered tasks; node counts stop at the hit."""
    if threads <= 1:
        nodes = 0
        for task in tasks:
            res, sub_nodes = worker(task)
            nodes += sub_nodes
            if res is not None:
                return res, nodes
        return None, nodes
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(threads) as pool:
        results = pool.map(worker, tasks)
    nodes = 0
    for res, sub_nodes in results:
        nodes += sub_nodes
        if res is not None:
            return res, nodes
    return None, nodes


# ---------------------------------------------------------------------------
# full brute force over edge colorings


def _bf_dead(members, assigned, class_masks, used, c_new, introduced) -> bool:
    """True when some used color already has a fully-assigned avoiding member.

    Only colors whose avoidance mask grew need rechecking: every t != c_new,
    plus c_new itself the moment it is introduced.
    """
    for t in range(1, used + 1):
        if t == c_new and not introduced:
            continue
        avoid = assigned & ~class_masks[t]
        for mem in members:
            if mem & ~avoid == 0:
                return True
    return False


def _bf_solve(task):
    """First (lex) completion of a live prefix into a polychromatic k-coloring.

    Returns (full color tuple or None, nodes explored beyond the prefix).
    """
    members, m, k, prefix = task
    class_masks = [0] * (k + 1)
    assigned0 = 0
    used0 = 0
    for e, c in enumerate(prefix):
        class_masks[c] |= 1 << e
        assigned0 |= 1 << e
        used0 = max(used0, c)
    colors = list(prefix) + [0] * (m - len(prefix))
    nodes = 0

    def rec(pos, assigned, used):
        nonlocal nodes
        if pos == m:
            return used == k
        if used + (m - pos) < k:
            return False
        bit = 1 << pos
        for c in range(1, min(used + 1, k) + 1):
            nodes += 1
            class_masks[c] |= bit
            if not _bf_dead(members, assigned | bit, class_masks, max(used, c), c, c > used):
                colors[pos] = c
                if rec(pos + 1, assigned | bit, max(used, c)):
                    return True
            class_masks[c] &= ~bit
        return False

    if rec(len(prefix), assigned0, used0):
        return tuple(colors), nodes
    return None, nodes


def _bf_live_prefixes(members, m, k, depth):
    """Surviving prefixes of the given depth plus the shallow node count."""
    depth = min(depth, m)
    class_masks = [0] * (k + 1)
    prefixes = []
    nodes = 0
    colors = [0] * depth

    def rec(pos, assigned, used):
        nonlocal nodes
        if pos == depth:
            prefixes.append(tuple(colors))
            return
        if used + (m - pos) < k:
            return
        bit = 1 << pos
        for c in range(1, min(used + 1, k) + 1):
            nodes += 1
            class_masks[c] |= bit
            if not _bf_dead(members, assigned | bit, class_masks, max(used, c), c, c > used):
                colors[pos] = c
                rec(pos + 1, assigned | bit, max(used, c))
            class_masks[c] &= ~bit

    rec(0, 0, 0)
    return prefixes, nodes


def _bf_stage(members, m, k, threads):
    prefixes, nodes = _bf_live_prefixes(members, m, k, _SPLIT_DEPTH)
    tasks = [(members, m, k, p) for p in prefixes]
    solution, deep_nodes = _run_tasks(tasks, _bf_solve, threads)
    return solution, nodes + deep_nodes


def brute_force_poly(
    n: int,
    kind: FamilyKind,
    max_k: Optional[int] = None,
    threads: int = 1,
    max_n: Optional[int] = None,
) -> SearchReport:
    """Exact optimum over all colorings, iterating the palette size upward.

    The first edge's color is fixed by the first-occurrence labelling; a
    partial coloring dies as soon as a family member is fully assigned and
    avoids some used color.  Stops at the first infeasible palette size
    (merging two color classes keeps a coloring polychromatic, so
    feasibility is monotone in k).
    """
    cap = max_n if max_n is not None else BRUTE_CAPS[kind]
    if n > cap:
        raise CapExceededError(f"brute-force cap exceeded: n={n} > {cap}")
    m = n * (n - 1) // 2
    if max_k is not None and not (1 <= max_k <= m):
        raise ValueError(f"max_k must be in 1..{m}")
    members = tuple(
        sum(1 << edge_index(n, i, j) for (i, j) in w.edges)
        for w in enumerate_members(kind, n, max_n=max(n, 12))
    )
    limit = max_k if max_k is not None else m
    start = time.perf_counter()
    total_nodes = 0
    best = None
    best_k = 0
    for k in range(1, limit + 1):
        solution, nodes = _bf_stage(members, m, k, threads)
        total_nodes += nodes
        if solution is None:
            break
        best, best_k = solution, k
    mapping = {e: best[idx] for idx, e in enumerate(all_edges(n))}
    coloring = EdgeColoring.from_pairs(n, mapping)
    if not is_polychromatic(coloring, kind).polychromatic:
        raise RuntimeError("search produced a non-polychromatic optimum")
    return SearchReport(
        n, kind, "full", best_k, coloring, total_nodes, time.perf_counter() - start
    )


# ---------------------------------------------------------------------------
# ordered / combed search over main-color sequences

# pattern name -> (fixed leading mains, colors exempt via unitarity,
#                  edge recolorings applied after the ordered build)
_PATTERNS = {
    "ordered": ((), (), ()),
    "triple": ((1, 2, 3), (1, 2, 3), (((1, 3), 3),)),
    "quad": ((1, 1, 2, 2), (1, 2), (((1, 3), 2), ((2, 4), 2))),
}


def _pattern_coloring(n, mains, recolorings) -> EdgeColoring:
    mapping = {(i, j): mains[i - 1] for (i, j) in all_edges(n)}
    for (edge, c) in recolorings:
        mapping[edge] = c
    return EdgeColoring.from_pairs(n, mapping)


class _SeqState:
    """Shared bookkeeping for the main-color sequence search.

    Tracks per-color counts and whether each color has met its majority
    condition; colors made unitary by the pattern prefix are exempt.
    """

    def __init__(self, n, kind, k, pattern):
        self.n = n
        self.k = k
        self.strict = kind is FamilyKind.ONE_FACTOR
        self.last = n - 1  # free positions 1..n-1; position n copies n-1
        fixed, exempt, self.recolorings = _PATTERNS[pattern]
        self.fixed = fixed
        self.counts = [0] * (n + 2)
        self.satisfied = [False] * (n + 2)
        self.used = 0
        for t in exempt:
            self.satisfied[t] = True
            self.used = max(self.used, t)

    def push(self, pos, c):
        self.counts[c] += 1
        self.used = max(self.used, c)
        was = self.satisfied[c]
        if 2 * self.counts[c] > pos or (not self.strict and 2 * self.counts[c] >= pos):
            self.satisfied[c] = True
        return was

    def pop(self, c, was, used_before):
        self.counts[c] -= 1
        self.satisfied[c] = was
        self.used = used_before

    def viable(self, j):
        """Can every pending color still reach its majority moment?"""
        left = self.last - j
        for t in range(1, self.used + 1):
            if self.satisfied[t]:
                continue
            top = 2 * (self.counts[t] + left)
            if (self.strict and top <= self.last) or (not self.strict and top < self.last):
                return False
        if self.used < self.k:
            if self.k - self.used > left:
                return False
            if (self.strict and 2 * j >= self.last) or (not self.strict and 2 * j > self.last):
                return False
        return True

    def complete(self):
        return self.used == self.k and all(
            self.satisfied[t] for t in range(1, self.used + 1)
        )


def _seq_solve(task):
    """First (lex) main-color tail completing the pattern at palette size k.

    Returns (color tuple of the verified EdgeColoring or None, nodes).
    """
    n, kind, k, pattern, prefix_tail = task
    state = _SeqState(n, kind, k, pattern)
    fixed = state.fixed
    if state.used > k:
        return None, 0
    if len(fixed) >= n:
        # the pattern prescribes every position (smallest n)
        if len(fixed) > n or prefix_tail:
            return None, 0
        coloring = _pattern_coloring(n, list(fixed), state.recolorings)
        ok = coloring.k == k and is_polychromatic(coloring, kind).polychromatic
        return (coloring.colors if ok else None), 1
    seq = []
    for p, c in enumerate(list(fixed) + list(prefix_tail), start=1):
        state.push(p, c)
        seq.append(c)
    nodes = 0

    def leaf():
        mains = seq + [seq[-1]]
        coloring = _pattern_coloring(n, mains, state.recolorings)
        if coloring.k != k:
            return None
        if is_polychromatic(coloring, kind).polychromatic:
            return coloring.colors
        return None

    def rec(j):
        nonlocal nodes
        if j == state.last:
            return leaf() if state.complete() else None
        pos = j + 1
        used_before = state.used
        for c in range(1, min(used_before + 1, k) + 1):
            nodes += 1
            was = state.push(pos, c)
            seq.append(c)
            if state.viable(pos):
                res = rec(pos)
                if res is not None:
                    return res
            seq.pop()
            state.pop(c, was, used_before)
        return None

    j0 = len(seq)
    if j0 == state.last:
        return (leaf() if state.complete() else None), 1
    if not state.viable(j0):
        return None, 0
    return rec(j0), nodes


def _seq_live_prefixes(n, kind, k, pattern, depth):
    """Live tail prefixes of the given length plus the shallow node count."""
    state = _SeqState(n, kind, k, pattern)
    fixed = state.fixed
    if state.used > k or len(fixed) >= n:
        return [()], 0
    base = len(fixed)
    depth = min(depth, state.last - base)
    for p, c in enumerate(fixed, start=1):
        state.push(p, c)
    if depth <= 0 or not state.viable(base):
        return [()], 0
    prefixes = []
    nodes = 0
    tail: list[int] = []

    def rec(j):
        nonlocal nodes
        if len(tail) == depth:
            prefixes.append(tuple(tail))
            return
        pos = j + 1
        used_before = state.used
        for c in range(1, min(used_before + 1, k) + 1):
            nodes += 1
            was = state.push(pos, c)
            tail.append(c)
            if state.viable(pos):
                rec(pos)
            tail.pop()
            state.pop(c, was, used_before)

    rec(base)
    return prefixes, nodes


def _seq_stage(n, kind, k, pattern, threads):
    prefixes, nodes = _seq_live_prefixes(n, kind, k, pattern, _SPLIT_DEPTH - 1)
    tasks = [(n, kind, k, pattern, p) for p in prefixes]
    solution, deep_nodes = _run_tasks(tasks, _seq_solve, threads)
    coloring = None if solution is None else EdgeColoring(n, max(solution), solution)
    return coloring, nodes + deep_nodes


def structured_poly(n: int, kind: FamilyKind, mode: str, threads: int = 1) -> SearchReport:
    """Optimum over the ordered or combed class of colorings.

    Ordered colorings are exactly the images of main-color sequences; combed
    mode additionally tries the 3- and 4-vertex unitary prefixes.  For
    1-factors the ordered optimum equals the true optimum; for the other
    families the value is exact only for the restricted class.
    """
    if mode not in ("ordered", "combed"):
        raise ValueError(f"unknown mode {mode!r}")
    if kind is FamilyKind.ONE_FACTOR:
        if mode == "combed":
            raise ValueError("combed search applies to 2-factors and Hamiltonian cycles")
        if n < 2 or n % 2:
            raise ValueError("1-factor search needs even n >= 2")
    elif n < 3:
        raise ValueError("need n >= 3")
    cap = ORDERED_CAP if mode == "ordered" else COMBED_CAP
    if n > cap:
        raise CapExceededError(f"{mode} search cap exceeded: n={n} > {cap}")
    patterns = ("ordered",) if mode == "ordered" else ("ordered", "triple", "quad")
    start = time.perf_counter()
    total_nodes = 0
    best_k = 0
    best: Optional[EdgeColoring] = None
    k_hi = min((n.bit_length() - 1) + 4, n * (n - 1) // 2)
    for k in range(1, k_hi + 1):
        found = None
        for pattern in patterns:
            if pattern == "quad" and n < 4:
                continue
            coloring, nodes = _seq_stage(n, kind, k, pattern, threads)
            total_nodes += nodes
            if coloring is not None:
                found = coloring
                break
        if found is not None:
            best_k, best = k, found
        elif mode == "ordered":
            break  # merging two colors keeps ordered colorings polychromatic
    if best is None or not is_polychromatic(best, kind).polychromatic:
        raise RuntimeError("structured search produced no verified optimum")
    return SearchReport(
        n, kind, mode, best_k, best, total_nodes, time.perf_counter() - start
    )


def theorem_table(kind: FamilyKind, n_range) -> list[TheoremRow]:
    """One row per valid n: construction palette vs formula vs tiny-n search."""
    rows = []
    for n in n_range:
        if kind is FamilyKind.ONE_FACTOR and (n < 2 or n % 2):
            continue
        if kind is not FamilyKind.ONE_FACTOR and n < 3:
            continue
        construction_k = build(kind, n).k
        formula_k = palette_size(kind, n)
        search_k = None
        search_mode = None
        if n <= BRUTE_CAPS[kind]:
            search_k = brute_force_poly(n, kind).optimum
            search_mode = "full"
        agrees = construction_k == formula_k and (search_k is None or search_k == formula_k)
        rows.append(TheoremRow(n, kind, construction_k, formula_k, search_k, search_mode, agrees))
    return rows
