import random

import pytest

from falkkit.arrangement import dependent_3sets
from falkkit.graphs import (
    GainGraph,
    RANDOM_GAINS,
    all_circles_small,
    is_balanced,
    switch,
)
from falkkit.patterns import (
    HypothesisError,
    PatternCounts,
    TriangleKind,
    atlas,
    biased_isomorphic,
    count_patterns,
    find_occurrences,
    induced_subgraph,
    triangles,
)
from helpers import load_graph, seeded_graphs

FINAL_TRIANGLES = {
    (1, 2, 3): TriangleKind.THETA,
    (4, 5, 6): TriangleKind.THETA,
    (2, 5, 9): TriangleKind.BALANCED_CIRCLE,
    (2, 8, 13): TriangleKind.BALANCED_CIRCLE,
    (5, 8, 11): TriangleKind.BALANCED_CIRCLE,
    (9, 11, 13): TriangleKind.BALANCED_CIRCLE,
    (1, 6, 9): TriangleKind.BALANCED_CIRCLE,
    (1, 5, 10): TriangleKind.BALANCED_CIRCLE,
    (2, 4, 10): TriangleKind.BALANCED_CIRCLE,
    (3, 4, 9): TriangleKind.BALANCED_CIRCLE,
    (5, 7, 12): TriangleKind.BALANCED_CIRCLE,
    (7, 8, 14): TriangleKind.TIGHT_HANDCUFF,
    (11, 12, 14): TriangleKind.TIGHT_HANDCUFF,
}

FINAL_COUNTS = PatternCounts(
    k3=9, k4=1, d3=0, d21=2, k22=0, k33=0, gcirc=1, d31=0, g1=1, g2=0, theta=2
)


# ---------------------------------------------------------------------------
# triangle census


def test_triangles_final_example(final_example):
    got = {t.edge_ids: t.kind for t in triangles(final_example)}
    assert got == FINAL_TRIANGLES


def test_triangles_k22_reference(pattern_atlas):
    tris = triangles(pattern_atlas["K22"].reference)
    assert len(tris) == 1
    assert tris[0].edge_ids == (1, 2, 3)
    assert tris[0].kind is TriangleKind.LOOSE_HANDCUFF


def test_triangles_empty_when_nothing_dependent():
    g = GainGraph.from_edge_list(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 4, 2)])
    assert triangles(g) == []


def test_triangles_invariant_under_switching(final_example):
    rng = random.Random(4242)
    lam = {v: rng.choice(RANDOM_GAINS) for v in final_example.vertices}
    switched = switch(final_example, lam)
    assert [(t.edge_ids, t.kind) for t in triangles(switched)] == [
        (t.edge_ids, t.kind) for t in triangles(final_example)
    ]


def test_triangles_invariant_under_reorientation(final_example):
    for eid in (3, 7, 14):
        h = final_example.with_reversed_edge(eid)
        assert {t.edge_ids: t.kind for t in triangles(h)} == FINAL_TRIANGLES


# ---------------------------------------------------------------------------
# atlas self-tests


def test_atlas_census_matches_distinguished_classes(pattern_atlas):
    for name, pattern in pattern_atlas.items():
        census = {frozenset(t.edge_ids) for t in triangles(pattern.reference)}
        assert census == set(pattern.distinguished), name


def test_atlas_references_pass_standing_hypotheses(pattern_atlas):
    from falkkit.graphs import validate

    for name, pattern in pattern_atlas.items():
        report = validate(pattern.reference)
        assert report.passes("H4", "H5"), name
        if name != "B2":
            assert report.all_pass, name


def test_g1_g2_contain_no_d3(pattern_atlas):
    d3 = pattern_atlas["D3"]
    assert find_occurrences(pattern_atlas["G1"].reference, d3) == set()
    assert find_occurrences(pattern_atlas["G2"].reference, d3) == set()


def test_every_pattern_self_occurs(pattern_atlas):
    for name, pattern in pattern_atlas.items():
        full = frozenset(e.id for e in pattern.reference.edges)
        assert full in find_occurrences(pattern.reference, pattern), name


# ---------------------------------------------------------------------------
# biased isomorphism


def test_switching_equivalent_graphs_are_isomorphic(pattern_atlas):
    rng = random.Random(10)
    g = pattern_atlas["G2"].reference
    lam = {v: rng.choice(RANDOM_GAINS) for v in g.vertices}
    assert biased_isomorphic(g, switch(g, lam))


def test_balanced_vs_unbalanced_triangle_not_isomorphic():
    balanced = GainGraph.from_edge_list(3, [(1, 2, 1), (2, 3, 1), (1, 3, 1)])
    unbalanced = GainGraph.from_edge_list(3, [(1, 2, 1), (2, 3, 1), (1, 3, 2)])
    assert not biased_isomorphic(balanced, unbalanced)


def test_d3_vs_three_balanced_triangle_double():
    # doubled triangle with gains (1,2) per side has 3 balanced 3-circles,
    # one fewer than D3's 4
    other = GainGraph.from_edge_list(
        3, [(1, 2, 1), (1, 2, 2), (2, 3, 1), (2, 3, 2), (1, 3, 1), (1, 3, 2)]
    )
    balanced = [
        c for c in all_circles_small(other) if len(c) == 3 and is_balanced(other, c)
    ]
    assert len(balanced) == 3
    d3 = atlas()["D3"].reference
    assert not biased_isomorphic(d3, other)
    assert biased_isomorphic(other, other)


def test_k4_balanced_triangles_force_balanced_squares(pattern_atlas):
    rng = random.Random(99)
    k4 = pattern_atlas["K4"].reference
    for _ in range(10):
        lam = {v: rng.choice(RANDOM_GAINS) for v in k4.vertices}
        h = switch(k4, lam)
        for c in all_circles_small(h):
            assert is_balanced(h, c)
        assert biased_isomorphic(h, k4)


# ---------------------------------------------------------------------------
# occurrence search and counts


def test_find_occurrences_final_example(final_example, pattern_atlas):
    assert find_occurrences(final_example, pattern_atlas["K4"]) == {
        frozenset({2, 5, 8, 9, 11, 13})
    }
    assert find_occurrences(final_example, pattern_atlas["Gcirc"]) == {
        frozenset({5, 7, 8, 11, 12, 14})
    }
    assert find_occurrences(final_example, pattern_atlas["G1"]) == {
        frozenset({1, 2, 3, 4, 5, 6, 9, 10})
    }
    assert find_occurrences(final_example, pattern_atlas["D21"]) == {
        frozenset({7, 8, 14}),
        frozenset({11, 12, 14}),
    }


def test_find_occurrences_b2_needs_loops(pattern_atlas):
    simple = GainGraph.from_edge_list(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 4, 1)])
    assert find_occurrences(simple, pattern_atlas["B2"]) == set()


def test_count_patterns_final_example(final_example):
    assert count_patterns(final_example) == FINAL_COUNTS


def test_count_patterns_d31_reference(pattern_atlas):
    counts = count_patterns(pattern_atlas["D31"].reference)
    assert counts == PatternCounts(k3=4, d21=2, d31=1)
    # raw occurrences exist but sit inside the D31, hence the exclusions
    ref = pattern_atlas["D31"].reference
    assert len(find_occurrences(ref, pattern_atlas["D3"])) == 1
    assert len(find_occurrences(ref, pattern_atlas["Gcirc"])) == 2


def test_count_patterns_g2_reference_excludes_g1(pattern_atlas):
    ref = pattern_atlas["G2"].reference
    raw_g1 = find_occurrences(ref, pattern_atlas["G1"])
    assert len(raw_g1) == 3
    counts = count_patterns(ref)
    assert counts == PatternCounts(k3=6, g2=1, theta=3)


def test_count_patterns_balanced_k4(pattern_atlas):
    counts = count_patterns(pattern_atlas["K4"].reference)
    assert counts == PatternCounts(k3=4, k4=1)


def test_count_patterns_refuses_on_hypothesis_failure():
    with pytest.raises(HypothesisError, match="H1"):
        count_patterns(load_graph("b2.gg"))


def test_triangle_cardinality_identity(final_example):
    graphs = [final_example] + seeded_graphs(10, seed=313370)
    for g in graphs:
        counts = count_patterns(g)
        assert len(triangles(g)) == counts.k3 + counts.d21 + counts.k22 + counts.theta


def test_counts_stable_under_switching():
    rng = random.Random(500)
    for g in seeded_graphs(5, seed=171717):
        lam = {v: rng.choice(RANDOM_GAINS) for v in g.vertices}
        assert count_patterns(switch(g, lam)) == count_patterns(g)


def test_census_matches_rank_oracle_on_small_sample(final_example):
    for g in [final_example] + seeded_graphs(10, seed=808080):
        assert dependent_3sets(g) == {t.edge_ids for t in triangles(g)}


def test_induced_subgraph_relabels_densely(final_example):
    sub = induced_subgraph(final_example, {5, 7, 8, 11, 12, 14})
    assert sub.num_vertices == 3
    assert sub.n == 6
    assert sorted(e.id for e in sub.edges) == [1, 2, 3, 4, 5, 6]
