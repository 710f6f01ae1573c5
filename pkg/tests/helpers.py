"""Shared oracles and generators for the test suite.

Everything here is deliberately independent of the package's engines:
counting formulas, exhaustive ordering checks and canonical sequence
generators recompute expectations from first principles.
"""

from __future__ import annotations

import itertools
import math

from polykn import EdgeColoring, VertexOrdering, build_ordered
from polykn.core import all_edges, is_ordered_at, is_unitary


def rgs(length: int, used0: int = 0, max_colors: int | None = None) -> list[tuple[int, ...]]:
    """Restricted growth strings: canonical first-occurrence color sequences."""
    out: list[tuple[int, ...]] = []

    def rec(seq, used):
        if len(seq) == length:
            out.append(tuple(seq))
            return
        top = used + 1 if max_colors is None else min(used + 1, max_colors)
        for c in range(1, top + 1):
            seq.append(c)
            rec(seq, max(used, c))
            seq.pop()

    rec([], used0)
    return out


def ordered_from_seq(seq) -> EdgeColoring:
    """Ordered coloring from the mains of positions 1..n-1."""
    return build_ordered(list(seq) + [seq[-1]])


def pattern_coloring(n: int, mains, recolorings) -> EdgeColoring:
    mapping = {(i, j): mains[i - 1] for (i, j) in all_edges(n)}
    for (edge, c) in recolorings:
        mapping[edge] = c
    return EdgeColoring.from_pairs(n, mapping)


def triple_from_tail(n: int, tail) -> EdgeColoring:
    """Combed coloring with the 3-vertex unitary prefix and the given tail."""
    mains = [1, 2, 3] + list(tail)
    mains.append(mains[-1])
    return pattern_coloring(n, mains[:n], (((1, 3), 3),))


def quad_from_tail(n: int, tail) -> EdgeColoring:
    """Combed coloring with the 4-vertex unitary prefix and the given tail."""
    mains = [1, 1, 2, 2] + list(tail)
    mains.append(mains[-1])
    return pattern_coloring(n, mains[:n], (((1, 3), 2), ((2, 4), 2)))


def all_ordered_colorings(n: int):
    for seq in rgs(n - 1):
        yield ordered_from_seq(seq)


def all_combed_colorings(n: int):
    """Ordered colorings plus both unitary-prefix families; may repeat."""
    yield from all_ordered_colorings(n)
    if n == 3:
        yield triple_from_tail(3, [])
        return
    if n >= 4:
        for tail in rgs(max(0, n - 4), used0=3):
            yield triple_from_tail(n, tail)
        for tail in rgs(max(0, n - 5), used0=2):
            yield quad_from_tail(n, tail)


def permute_vertices(c: EdgeColoring, perm: dict[int, int]) -> EdgeColoring:
    mapping = {}
    for (i, j, col) in c.edges():
        a, b = perm[i], perm[j]
        mapping[(min(a, b), max(a, b))] = col
    return EdgeColoring.from_pairs(c.n, mapping)


def permute_colors(c: EdgeColoring, perm: dict[int, int]) -> EdgeColoring:
    return EdgeColoring.from_pairs(c.n, {(i, j): perm[col] for (i, j, col) in c.edges()})


def double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _partitions_min3(n: int, lo: int = 3):
    if n == 0:
        yield ()
        return
    for part in range(lo, n + 1):
        if n - part not in (1, 2):
            for rest in _partitions_min3(n - part, part):
                yield (part,) + rest


def two_factor_count_formula(n: int) -> int:
    """Number of 2-factors of K_n by summing over cycle-type partitions."""
    total = 0
    for parts in _partitions_min3(n):
        ways = math.factorial(n)
        mult: dict[int, int] = {}
        for p in parts:
            mult[p] = mult.get(p, 0) + 1
        for lam, m in mult.items():
            ways //= (lam ** m) * math.factorial(m)
        ways //= 2 ** len(parts)
        total += ways
    return total


def truly_unitary_set(c: EdgeColoring) -> set[int]:
    """Shape vertices whose partner chains close, by direct fixpoint."""
    n = c.n
    if n == 3:
        cols = {c.color(1, 2), c.color(1, 3), c.color(2, 3)}
        return {1, 2, 3} if len(cols) == 3 else set()
    shaped = {}
    for v in range(1, n + 1):
        r = is_unitary(c, v)
        if r is not None:
            shaped[v] = r[2]
    while True:
        drop = [v for v, u in shaped.items() if u not in shaped]
        if not drop:
            break
        for v in drop:
            del shaped[v]
    return set(shaped)


def oracle_combed(c: EdgeColoring) -> bool:
    """Exhaustive check over all orderings, using only local definitions."""
    unit = truly_unitary_set(c)
    n = c.n
    for perm in itertools.permutations(range(1, n + 1)):
        o = VertexOrdering(perm)
        if all(
            perm[p - 1] in unit or is_ordered_at(c, o, p) is not None
            for p in range(1, n + 1)
        ):
            return True
    return False
