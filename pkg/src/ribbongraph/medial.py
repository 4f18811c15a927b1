"""Directions of the medial graph.

A direction orients every medial edge (gap).  It is stored as a tuple
indexed by gap: ``+1`` runs the gap from its start slot to its end slot
(the circle's stored direction), ``-1`` the other way, ``0`` marks the
gap of an empty circle, which is not a medial edge.

A direction is crossing-total when, around every medial vertex, the four
slots read ``in,in,out,out`` up to rotation, or are all in or all out.
The edge is then a c-edge if the two incoming slots are joined by the
black pairing, a d-edge if joined by the white pairing, and a t-edge if
all four agree.

    >>> from ribbongraph.presentation import parse
    >>> [sorted(c.C) for _, c in enumerate_all_crossing(parse("C1: 1+ 1+"))]
    [['1'], ['1']]
    >>> len(enumerate_crossing_total(parse("C1: 1+ 1-")))
    4
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .duality import geometric_dual
from .presentation import ArrowPresentation, format_subset, label_key
from .tracing import (
    BLACK,
    WHITE,
    TransitionSystem,
    is_even_state,
    straight_ahead_walks,
    trace,
    transition_system,
)

__all__ = [
    "Direction",
    "EdgeClassification",
    "NotCrossingTotal",
    "medial_edges",
    "slot_pattern",
    "is_crossing_total",
    "classify",
    "enumerate_all_crossing",
    "enumerate_crossing_total",
    "eulerian_sets",
    "even_face_sets",
    "even_state_bound",
    "lemma_cd_swap",
    "direction_to_json",
]

Direction = tuple[int, ...]

# fault injection: when set, classify() uses the opposite c/d convention
FAULT_SWAP_CD = False


class NotCrossingTotal(ValueError):
    pass


@dataclass(frozen=True)
class EdgeClassification:
    C: frozenset[str]
    D: frozenset[str]
    T: frozenset[str]

    def to_json(self) -> dict:
        key = lambda s: sorted(s, key=label_key)  # noqa: E731
        return {"C": key(self.C), "D": key(self.D), "T": key(self.T)}

    def __str__(self) -> str:
        return f"C={format_subset(self.C)} D={format_subset(self.D)} T={format_subset(self.T)}"


def medial_edges(ap: ArrowPresentation) -> list[tuple[int, tuple[str, int], tuple[str, int]]]:
    """``(gap, (edge, slot), (edge, slot))`` for every medial edge.

    Slots are positions 0..3 in the cyclic order of the edge's medial
    vertex; the first incidence is the gap's start.
    """
    ts = transition_system(ap)
    where = {}
    for e in ts.edges:
        for k, s in enumerate(e.slots):
            where[s] = (e.label, k)
    return [(g, where[ends[0]], where[ends[1]])
            for g, ends in enumerate(ts.gap_ends) if ends is not None]


def _check_shape(ts: TransitionSystem, direction: Sequence[int]) -> None:
    if len(direction) != len(ts.gap_ends):
        raise ValueError(f"direction has {len(direction)} entries, expected {len(ts.gap_ends)}")
    for g, ends in enumerate(ts.gap_ends):
        if ends is not None and direction[g] not in (1, -1):
            raise ValueError(f"gap {ts.gap_ids[g]} is not oriented")


def _slot_in(ts: TransitionSystem, direction: Sequence[int], slot: int) -> bool:
    g = ts.slot_gap[slot]
    start, end = ts.gap_ends[g]
    return slot == (end if direction[g] > 0 else start)


def slot_pattern(ap: ArrowPresentation, direction: Sequence[int]) -> dict[str, tuple[bool, ...]]:
    """Edge label -> in/out (True/False) at its four cyclic slots."""
    ts = transition_system(ap)
    _check_shape(ts, direction)
    return {e.label: tuple(_slot_in(ts, direction, s) for s in e.slots) for e in ts.edges}


def _kind(ins: tuple[bool, ...]) -> str | None:
    n = sum(ins)
    if n in (0, 4):
        return "t"
    if n != 2 or ins[0] == ins[2]:
        return None
    return "c" if ins[0] == ins[1] else "d"


def is_crossing_total(ap: ArrowPresentation, direction: Sequence[int]) -> bool:
    return all(_kind(p) is not None for p in slot_pattern(ap, direction).values())


def classify(ap: ArrowPresentation, direction: Sequence[int], *, swap_colours: bool = False) -> EdgeClassification:
    """c/d/t classification; ``swap_colours`` exchanges black and white."""
    parts: dict[str, list[str]] = {"c": [], "d": [], "t": []}
    for label, ins in slot_pattern(ap, direction).items():
        kind = _kind(ins)
        if kind is None:
            raise NotCrossingTotal(f"edge {label} has pattern {_show(ins)}")
        if (swap_colours != FAULT_SWAP_CD) and kind != "t":
            kind = "d" if kind == "c" else "c"
        parts[kind].append(label)
    return EdgeClassification(*(frozenset(parts[k]) for k in "cdt"))


def _show(ins: Iterable[bool]) -> str:
    return ",".join("in" if x else "out" for x in ins)


def _walk_orientation(ts: TransitionSystem, walks, signs: Iterable[int], alternate: bool) -> Direction:
    direction = [0] * len(ts.gap_ends)
    for walk, sign in zip(walks, signs):
        for k, step in enumerate(walk.steps):
            o = sign if step.forward else -sign
            if alternate and k % 2:
                o = -o
            direction[step.gap] = o
    return tuple(direction)


def enumerate_all_crossing(ap: ArrowPresentation) -> list[tuple[Direction, EdgeClassification]]:
    """All ``2**t`` all-crossing directions: each straight-ahead walk run
    one way or the other."""
    ts = transition_system(ap)
    t, walks = straight_ahead_walks(ap)
    out = []
    for signs in product((1, -1), repeat=t):
        d = _walk_orientation(ts, walks.walks, signs, alternate=False)
        cls = classify(ap, d)
        if cls.T:
            raise AssertionError(f"straight-ahead orientation produced t-edges {sorted(cls.T)}")
        out.append((d, cls))
    return out


def _states(ap: ArrowPresentation):
    for kinds in product((BLACK, WHITE), repeat=ap.edge_count):
        yield trace(ap, kinds)


def _medial_circles(sc) -> list:
    return [w for w in sc.walks if w.isolated_gap is None]


def enumerate_crossing_total(ap: ArrowPresentation) -> list[tuple[Direction, EdgeClassification]]:
    """Every crossing-total direction, found by giving each circle of each
    even state an alternating orientation.  Ordered by first discovery."""
    ts = transition_system(ap)
    found: dict[Direction, EdgeClassification] = {}
    for sc in _states(ap):
        if not is_even_state(sc):
            continue
        circles = _medial_circles(sc)
        for signs in product((1, -1), repeat=len(circles)):
            d = _walk_orientation(ts, circles, signs, alternate=True)
            if d not in found:
                found[d] = classify(ap, d)
    return list(found.items())


def even_state_bound(ap: ArrowPresentation) -> int:
    """Sum of ``2**c(S)`` over even states ``S``."""
    return sum(2 ** len(_medial_circles(sc)) for sc in _states(ap) if is_even_state(sc))


def _with_some(base: frozenset[str], extra: frozenset[str]) -> set[frozenset[str]]:
    extra_list = sorted(extra)
    out = set()
    for bits in product((False, True), repeat=len(extra_list)):
        out.add(base | {e for e, b in zip(extra_list, bits) if b})
    return out


def eulerian_sets(ap: ArrowPresentation, directions=None) -> set[frozenset[str]]:
    """Sets ``D | T'`` with ``T'`` any subset of ``T``, over all
    crossing-total directions."""
    directions = enumerate_crossing_total(ap) if directions is None else directions
    out: set[frozenset[str]] = set()
    for _, cls in directions:
        out |= _with_some(cls.D, cls.T)
    return out


def even_face_sets(ap: ArrowPresentation, directions=None) -> set[frozenset[str]]:
    directions = enumerate_crossing_total(ap) if directions is None else directions
    out: set[frozenset[str]] = set()
    for _, cls in directions:
        out |= _with_some(cls.C, cls.T)
    return out


def _direction_on_dual(ap: ArrowPresentation, direction: Sequence[int]) -> tuple[ArrowPresentation, Direction]:
    """Carry ``direction`` to the geometric dual, which has the same medial
    graph: dual gap ``j`` of dual circle ``k`` is the ``j``-th gap of the
    ``k``-th boundary walk."""
    dual = geometric_dual(ap)
    faces = trace(ap, [WHITE] * ap.edge_count)
    moved = []
    for walk in faces.walks:
        if walk.isolated_gap is not None:
            moved.append(0)
            continue
        for step in walk.steps:
            o = direction[step.gap]
            moved.append(o if step.forward else -o)
    return dual, tuple(moved)


def lemma_cd_swap(ap: ArrowPresentation, direction: Sequence[int]) -> bool:
    """c- and d-edges exchange, t-edges stay, both when the colours are
    swapped and when the direction is read on the geometric dual."""
    cls = classify(ap, direction)
    swapped = classify(ap, direction, swap_colours=True)
    dual, moved = _direction_on_dual(ap, direction)
    on_dual = classify(dual, moved)
    expected = (cls.D, cls.C, cls.T)
    return (swapped.C, swapped.D, swapped.T) == expected == (on_dual.C, on_dual.D, on_dual.T)


def direction_to_json(ap: ArrowPresentation, direction: Sequence[int]) -> dict[str, list[str]]:
    """gap -> [tail incidence, head incidence] as ``"<edge>@<slot>"``."""
    out = {}
    ids = transition_system(ap).gap_ids
    for g, a, b in medial_edges(ap):
        tail, head = (a, b) if direction[g] > 0 else (b, a)
        out[str(ids[g])] = [f"{tail[0]}@{tail[1]}", f"{head[0]}@{head[1]}"]
    return out
