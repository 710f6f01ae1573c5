"""Core data model: colorings, orderings, unitary structure, certificates."""

from __future__ import annotations

import random

import pytest

from polykn import (
    EdgeColoring,
    FamilyKind,
    VertexOrdering,
    build,
    build_ordered,
    class_sizes,
    comb_certificate,
    inherited_coloring,
    is_ordered_at,
    is_unitary,
    majority_certificate,
)
from helpers import (
    all_ordered_colorings,
    oracle_combed,
    ordered_from_seq,
    truly_unitary_set,
)

F1 = FamilyKind.ONE_FACTOR
F2 = FamilyKind.TWO_FACTOR
HC = FamilyKind.HAMILTONIAN_CYCLE


def test_edge_coloring_validation():
    with pytest.raises(ValueError):
        EdgeColoring.from_pairs(4, {(1, 2): 1})  # missing edges
    with pytest.raises(ValueError):
        EdgeColoring.from_pairs(2, {(2, 1): 1})  # endpoints out of order
    with pytest.raises(ValueError):
        EdgeColoring.from_pairs(2, {(1, 2): 0})  # colors start at 1


def test_palette_compaction_and_idempotence():
    c = EdgeColoring.from_pairs(3, {(1, 2): 5, (1, 3): 9, (2, 3): 5})
    assert c.k == 2
    assert c.color(1, 2) == 1 and c.color(1, 3) == 2
    assert c.canonicalize() == c


def test_recolored_stays_canonical():
    c = build(F1, 6)
    d = c.recolored(5, 6, 1)
    assert d.color(5, 6) == 1
    assert d.color(1, 2) == c.color(1, 2)
    # dropping the last edge of a color compacts the palette
    mono = EdgeColoring.from_pairs(3, {(1, 2): 1, (1, 3): 1, (2, 3): 2})
    assert mono.recolored(2, 3, 1).k == 1


def test_is_ordered_at_main_colors():
    c = build(F1, 10)
    o = VertexOrdering.identity(10)
    assert is_ordered_at(c, o, 1) == 1
    # the last two positions report the color of the final edge
    assert is_ordered_at(c, o, 10) == c.color(9, 10)
    assert is_ordered_at(c, o, 9) == c.color(9, 10)


def test_is_ordered_at_rejects_recolored_vertex():
    c = build(F2, 15)
    o = VertexOrdering.identity(15)
    # v1's edge to v3 was recolored, so v1 is not ordered at position 1
    assert is_ordered_at(c, o, 1) is None
    assert is_ordered_at(c, o, 2) == 2


def test_is_unitary_examples():
    c = build(F2, 15)
    assert is_unitary(c, 1) == (1, 3, 3)
    assert is_unitary(c, 2) == (2, 1, 1)
    assert is_unitary(c, 3) == (3, 2, 2)
    assert is_unitary(c, 4) is None
    mono = EdgeColoring.from_function(4, lambda i, j: 1)
    assert all(is_unitary(mono, v) is None for v in range(1, 5))


def test_is_unitary_requires_partner_count():
    # v1 has the right shape but its partner has n-1 edges of the color
    c = EdgeColoring.from_pairs(
        4, {(1, 2): 1, (1, 3): 1, (1, 4): 2, (2, 4): 2, (3, 4): 2, (2, 3): 1}
    )
    assert is_unitary(c, 1) is None


def test_comb_certificate_constructions():
    ic = comb_certificate(build(F1, 10))
    assert ic is not None
    assert ic.class_sizes() == (1, 2, 7)
    assert not ic.unitary_set
    for n in range(2, 31, 2):
        ic = comb_certificate(build(F1, n))
        assert ic is not None and ic.class_sizes() == class_sizes(F1, n)
    for kind in (F2, HC):
        for n in range(3, 31):
            ic = comb_certificate(build(kind, n))
            assert ic is not None
            assert ic.class_sizes() == class_sizes(kind, n)


def test_comb_certificate_rainbow_triangle():
    c = EdgeColoring.from_pairs(3, {(1, 2): 1, (1, 3): 3, (2, 3): 2})
    ic = comb_certificate(c)
    assert ic is not None
    assert len(ic.unitary_set) == 3
    assert sorted(u.main for u in ic.unitary_set) == [1, 2, 3]


def test_comb_certificate_crossed_quad():
    # four unitary vertices in two crossed pairs
    c = EdgeColoring.from_pairs(
        4, {(1, 2): 1, (1, 4): 1, (2, 3): 1, (1, 3): 2, (2, 4): 2, (3, 4): 2}
    )
    ic = comb_certificate(c)
    assert ic is not None
    assert len(ic.unitary_set) == 4
    assert sorted(u.main for u in ic.unitary_set) == [1, 1, 2, 2]


def test_comb_certificate_not_combed_is_none():
    rng = random.Random(99)
    rejected = 0
    for _ in range(300):
        c = EdgeColoring.from_function(6, lambda i, j: rng.randint(1, 3))
        if truly_unitary_set(c):
            continue
        got = comb_certificate(c)
        if got is None:
            # confirm by exhausting all 720 orderings
            assert not oracle_combed(c)
            rejected += 1
            if rejected >= 5:
                return
    raise AssertionError("no non-combed random coloring found")


def test_comb_certificate_agrees_with_exhaustive_oracle():
    rng = random.Random(7)
    for _ in range(150):
        n = rng.choice([4, 5])
        kmax = rng.choice([2, 3, 4])
        c = EdgeColoring.from_function(n, lambda i, j: rng.randint(1, kmax))
        got = comb_certificate(c)
        assert (got is not None) == oracle_combed(c)
        if got is not None:
            # replay the certificate against the definitions
            for p in range(1, n + 1):
                v = got.ordering.vertex_at(p)
                ordered = is_ordered_at(c, got.ordering, p)
                assert ordered is not None or v in got.unitary_vertices()


def test_inherited_coloring_examples():
    ic = inherited_coloring(build(HC, 13), VertexOrdering.identity(13))
    assert ic.class_sizes() == (1, 1, 1, 3, 7)
    two = inherited_coloring(
        EdgeColoring.from_pairs(2, {(1, 2): 1}), VertexOrdering.identity(2)
    )
    assert two.class_sizes() == (2,)
    ic15 = inherited_coloring(build(F2, 15), VertexOrdering.identity(15))
    assert ic15.class_of(4) == frozenset({4, 5, 6, 7})


def test_inherited_coloring_rejects_invalid_ordering():
    c = build(F2, 15)
    bad = VertexOrdering(tuple([4] + [v for v in range(1, 16) if v != 4]))
    with pytest.raises(ValueError):
        inherited_coloring(c, bad)


def test_inherited_invariants_on_exhaustive_ordered():
    for n in (4, 6):
        for c in all_ordered_colorings(n):
            ic = inherited_coloring(c, VertexOrdering.identity(n))
            sizes = ic.class_sizes()
            assert sum(sizes) == n
            assert len(ic.unitary_set) in (0, 3, 4)
            # the last two positions share a main color
            v_last = ic.ordering.vertex_at(n)
            v_prev = ic.ordering.vertex_at(n - 1)
            assert ic.main[v_last - 1] == ic.main[v_prev - 1]


def test_prefix_counts_match_direct_recount():
    c = build(F2, 15)
    ic = inherited_coloring(c, VertexOrdering.identity(15))
    for t in range(1, ic.k + 1):
        running = 0
        for j in range(1, 16):
            v = ic.ordering.vertex_at(j)
            running += 1 if ic.main[v - 1] == t else 0
            assert ic.prefix_count(t, j) == running


def test_majority_certificate_strict_examples():
    ic = inherited_coloring(build_ordered((1, 1, 2, 2)), VertexOrdering.identity(4))
    cert = majority_certificate(ic, strict=True)
    assert cert.entry(1).status == "prefix" and cert.entry(1).j == 1
    assert cert.entry(2).status == "fails"

    ic2 = inherited_coloring(build_ordered((1, 2, 2, 2)), VertexOrdering.identity(4))
    cert2 = majority_certificate(ic2, strict=True)
    assert cert2.entry(1).j == 1
    assert cert2.entry(2).j == 3
    assert cert2.complete


def test_majority_certificate_weak_unitary_flags():
    ic = comb_certificate(build(F2, 15))
    cert = majority_certificate(ic, strict=False)
    assert [cert.entry(t).status for t in (1, 2, 3)] == ["unitary"] * 3
    assert cert.entry(4).status == "prefix"
    assert cert.entry(5).status == "prefix"


def test_majority_monotone_strict_implies_weak():
    for seq_coloring in all_ordered_colorings(6):
        ic = inherited_coloring(seq_coloring, VertexOrdering.identity(6))
        strict = majority_certificate(ic, strict=True)
        weak = majority_certificate(ic, strict=False)
        for t in range(1, ic.k + 1):
            if strict.entry(t).status == "prefix":
                assert weak.entry(t).status in ("prefix", "unitary")
                if weak.entry(t).status == "prefix":
                    assert weak.entry(t).j <= strict.entry(t).j


def test_ordering_validation():
    with pytest.raises(ValueError):
        VertexOrdering((1, 1, 2))
    o = VertexOrdering((3, 1, 2))
    assert o.vertex_at(1) == 3
    assert o.position_of(3) == 1


def test_lookup_bounds_and_tiny_cases():
    c = build(F1, 4)
    with pytest.raises(ValueError):
        c.color(2, 2)
    with pytest.raises(ValueError):
        c.color(0, 3)
    with pytest.raises(ValueError):
        is_ordered_at(c, VertexOrdering.identity(4), 5)
    with pytest.raises(ValueError):
        is_unitary(EdgeColoring.from_pairs(2, {(1, 2): 1}), 1)
    two = comb_certificate(EdgeColoring.from_pairs(2, {(1, 2): 1}))
    assert two is not None and two.class_sizes() == (2,)
