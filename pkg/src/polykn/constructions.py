"""Builders for polychromatic colorings of K_n.

Three concrete colorings, one per subgraph family, plus the generic
ordered-coloring builder.  Palette sizes come from integer inequalities,
never from floating-point logs.
"""

from __future__ import annotations

import enum

from .core import EdgeColoring, all_edges


class FamilyKind(enum.Enum):
    ONE_FACTOR = "f1"
    TWO_FACTOR = "f2"
    HAMILTONIAN_CYCLE = "hc"

    @staticmethod
    def parse(code: str) -> "FamilyKind":
        for kind in FamilyKind:
            if kind.value == code.lower():
                return kind
        raise ValueError(f"unknown family {code!r} (expected f1, f2 or hc)")


def _check_n(kind: FamilyKind, n: int) -> None:
    if kind is FamilyKind.ONE_FACTOR:
        if n < 2 or n % 2:
            raise ValueError("1-factor colorings need even n >= 2")
    elif n < 3:
        raise ValueError("2-factor and Hamiltonian-cycle colorings need n >= 3")


def palette_size(kind: FamilyKind, n: int) -> int:
    """Number of colors used by build(kind, n).

    Largest k satisfying, respectively: 2^k <= n; 2^(k-1) - 1 <= n;
    3*2^(k-3) + 1 <= n.  All three are evaluated with integers only
    (the last two cleared of fractions: 2^k <= 2(n+1) and 3*2^k <= 8(n-1)).
    """
    _check_n(kind, n)
    k = 1
    if kind is FamilyKind.ONE_FACTOR:
        while 2 ** (k + 1) <= n:
            k += 1
    elif kind is FamilyKind.TWO_FACTOR:
        while 2 ** (k + 1) <= 2 * (n + 1):
            k += 1
    else:
        while 3 * 2 ** (k + 1) <= 8 * (n - 1):
            k += 1
    return k


def class_sizes(kind: FamilyKind, n: int) -> tuple[int, ...]:
    """Sizes of the inherited color classes of build(kind, n).

    One-factor: 1, 2, 4, ..., 2^(k-2), n - 2^(k-1) + 1.
    Two-factor: 1, 1, 1, 4, 8, ..., 2^(k-3), n - 2^(k-2) + 1 (k >= 4).
    Hamiltonian: 1, 1, 1, 3, 6, ..., 3*2^(k-5), n - 3*2^(k-4) (k >= 4).
    Small palettes degenerate to (1, 1, n-2) at k = 3 and (1, n-1) at k = 2,
    the last class always absorbing the remainder.
    """
    k = palette_size(kind, n)
    if kind is FamilyKind.ONE_FACTOR:
        sizes = [2 ** (t - 1) for t in range(1, k)] + [n - 2 ** (k - 1) + 1]
        return tuple(sizes)
    if k == 2:
        return (1, n - 1)
    if k == 3:
        return (1, 1, n - 2)
    if kind is FamilyKind.TWO_FACTOR:
        middle = [2 ** (t - 2) for t in range(4, k)]
        last = n - 2 ** (k - 2) + 1
    else:
        middle = [3 * 2 ** (t - 4) for t in range(4, k)]
        last = n - 3 * 2 ** (k - 4)
    return (1, 1, 1, *middle, last)


def build_ordered(main: tuple[int, ...] | list[int]) -> EdgeColoring:
    """Ordered coloring determined by a main-color sequence.

    Edge v_i v_j (i < j) receives main[i].  The final entry never colors an
    edge and is overridden by main[n-1]; the palette is compacted.
    """
    n = len(main)
    if n < 2:
        raise ValueError("need at least 2 main colors")
    seq = list(main)
    seq[n - 1] = seq[n - 2]
    return EdgeColoring.from_function(n, lambda i, j: seq[i - 1])


def build(kind: FamilyKind, n: int) -> EdgeColoring:
    """The polychromatic coloring of K_n for the given family.

    Inherited class sizes follow class_sizes(kind, n); classes occupy
    consecutive vertex blocks.  For two-factors and Hamiltonian cycles with
    at least 3 colors, edge v_1 v_3 is then recolored from 1 to 3, which
    makes v_1, v_2, v_3 unitary with a rainbow triangle between them.
    """
    sizes = class_sizes(kind, n)
    k = len(sizes)
    mains = []
    for t, size in enumerate(sizes, start=1):
        mains.extend([t] * size)
    mapping = {(i, j): mains[i - 1] for (i, j) in all_edges(n)}
    if kind is not FamilyKind.ONE_FACTOR and k >= 3:
        mapping[(1, 3)] = 3
    return EdgeColoring.from_pairs(n, mapping)
