from collections import Counter

from hypothesis import given, settings

from ribbongraph.duality import geometric_dual, partial_dual
from ribbongraph.presentation import is_eulerian, parse
from ribbongraph.tracing import (
    BLACK,
    CROSSING,
    PAIRINGS,
    WHITE,
    GapId,
    boundary_components,
    is_even_face,
    is_even_state,
    state_circles,
    straight_ahead_walks,
    trace,
    transition_system,
)

from oracles import faces_by_rotation
from strategies import presentation_and_subset, presentations


def order(ap, label="1"):
    return [(g.circle, g.position) for g in transition_system(ap).cyclic_gap_order(label)]


def test_transition_system_path(path):
    # one gap per circle; both medial edges are loops at v(1)
    assert order(path) == [(0, 0), (0, 0), (1, 0), (1, 0)]


def test_transition_system_annulus(annulus):
    assert order(annulus) == [(0, 1), (0, 0), (0, 0), (0, 1)]
    e = transition_system(annulus).edge("1")
    # black joins cyclic positions 1-2 and 3-4
    assert e.black == ((e.slots[0], e.slots[1]), (e.slots[2], e.slots[3]))


def test_transition_system_moebius(moebius):
    assert order(moebius) == [(0, 1), (0, 0), (0, 1), (0, 0)]


def test_pairings_are_the_three_matchings(torus):
    for e in transition_system(torus).edges:
        matchings = {frozenset(frozenset(p) for p in e.pairing(k)) for k in PAIRINGS}
        assert len(matchings) == 3
        t1, h1, t2, h2 = e.slots
        assert frozenset(map(frozenset, e.crossing)) == {frozenset((t1, t2)), frozenset((h1, h2))}


def test_gap_ids_print_one_based():
    assert str(GapId(0, 1)) == "g1.2"


def test_trace_examples(annulus, moebius):
    assert trace(annulus, {"1": BLACK}).lengths == [2]
    assert trace(annulus, {"1": WHITE}).lengths == [1, 1]
    assert trace(moebius, {"1": WHITE}).lengths == [2]


def test_boundary_components(annulus, torus):
    assert boundary_components(annulus).lengths == [1, 1]
    assert boundary_components(torus).lengths == [4]
    assert boundary_components(parse("C1:")).lengths == [0]


def test_even_face(annulus, torus, moebius):
    assert not is_even_face(annulus)
    assert is_even_face(torus)
    assert is_even_face(moebius)


def test_straight_ahead(path, moebius, annulus):
    assert straight_ahead_walks(path)[0] == 1
    assert straight_ahead_walks(moebius)[0] == 2
    assert straight_ahead_walks(annulus)[0] == 1
    assert straight_ahead_walks(parse("C1:"))[0] == 0


def test_state_circles(annulus):
    assert state_circles(annulus, set()).lengths == [2]
    assert state_circles(annulus, {"1"}).lengths == [1, 1]
    assert not is_even_state(state_circles(annulus, {"1"}))
    assert is_even_state(state_circles(annulus, set()))
    assert is_even_state(state_circles(parse("C1: 1+ 2+ 1+ 2+"), set()))


def test_state_circle_extremes(theta):
    assert state_circles(theta, ()).lengths == [c.degree for c in theta.circles]
    assert state_circles(theta, theta.labels).lengths == boundary_components(theta).lengths


def test_json_shape(annulus):
    out = boundary_components(annulus).to_json()
    assert out == [
        {"length": 1, "gaps": ["+g1.1"], "sites": [{"edge": "1", "sign": -1}]},
        {"length": 1, "gaps": ["+g1.2"], "sites": [{"edge": "1", "sign": -1}]},
    ]


@given(presentations(max_edges=5))
def test_every_gap_used_once(ap):
    for kind in PAIRINGS:
        sc = trace(ap, [kind] * ap.edge_count)
        used = Counter(g for w in sc.walks for g in w.gaps)
        assert sorted(used) == list(range(len(sc.system.gap_ids)))
        assert set(used.values()) <= {1}
        assert sum(sc.lengths) == 2 * ap.edge_count


@given(presentations())
def test_all_black_gives_vertex_circles(ap):
    assert trace(ap, [BLACK] * ap.edge_count).lengths == [c.degree for c in ap.circles]


@given(presentations(max_edges=6))
def test_boundary_matches_rotation_system_oracle(ap):
    assert sorted(boundary_components(ap).lengths) == faces_by_rotation(ap)


@given(presentation_and_subset(max_edges=6))
def test_state_lengths_are_dual_degrees(case):
    ap, A = case
    lengths = sorted(state_circles(ap, A).lengths)
    assert lengths == sorted(c.degree for c in partial_dual(ap, A).circles)


@given(presentations())
def test_even_face_iff_dual_eulerian(ap):
    assert is_even_face(ap) == is_eulerian(geometric_dual(ap))


@settings(max_examples=30)
@given(presentations(max_edges=4))
def test_mixed_choices_partition_gaps(ap):
    for kinds in ((BLACK, WHITE, CROSSING) * 2)[: ap.edge_count], ((CROSSING, BLACK) * 3)[: ap.edge_count]:
        sc = trace(ap, kinds)
        assert sorted(g for w in sc.walks for g in w.gaps) == list(range(len(sc.system.gap_ids)))
