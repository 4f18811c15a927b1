"""Transition systems and closed-walk tracing.

Every arrow occurrence has two ends.  The arc of a circle between two
consecutive arrows is a *gap*; gap ``(i, j)`` runs from the front end of
arrow ``j`` to the back end of arrow ``j + 1`` on circle ``i`` (in the
stored traversal).  Gaps are the edges of the medial graph, and the four
arrow ends of a label are the four slots of its medial vertex, in the
cyclic order ``tail(o1), head(o1), tail(o2), head(o2)``.

At each edge a walk entering a slot leaves through its partner under one
of three pairings:

* ``black``    -- ``tail(o) <-> head(o)``: run along the vertex circle;
* ``white``    -- ``head(o1) <-> tail(o2)``, ``head(o2) <-> tail(o1)``:
  cross the edge ribbon, i.e. follow the ribbon boundary;
* ``crossing`` -- ``tail(o1) <-> tail(o2)``, ``head(o1) <-> head(o2)``:
  go straight ahead through the medial vertex.

    >>> from ribbongraph.presentation import parse
    >>> annulus = parse("C1: 1+ 1+")
    >>> [w.length for w in boundary_components(annulus)]
    [1, 1]
    >>> straight_ahead_walks(parse("C1: 1+ 1-"))[0]
    2
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

from .presentation import ArrowPresentation

BLACK = "black"
WHITE = "white"
CROSSING = "crossing"
PAIRINGS = (BLACK, WHITE, CROSSING)

__all__ = [
    "BLACK",
    "WHITE",
    "CROSSING",
    "GapId",
    "EdgeTransitions",
    "TransitionSystem",
    "Step",
    "Walk",
    "StateCircles",
    "transition_system",
    "trace",
    "boundary_components",
    "is_even_face",
    "straight_ahead_walks",
    "state_circles",
    "is_even_state",
]


class GapId(NamedTuple):
    circle: int
    position: int

    def __str__(self) -> str:
        return f"g{self.circle + 1}.{self.position + 1}"


@dataclass(frozen=True)
class EdgeTransitions:
    """The medial vertex of one edge.

    ``slots`` are global arrow-end ids in cyclic order; ``gaps`` are the
    gap indices meeting those slots.  Each pairing is a pair of ordered
    slot pairs; for black and white the order is the direction of the
    marking arrow the transition carries.
    """

    label: str
    slots: tuple[int, int, int, int]
    gaps: tuple[int, int, int, int]
    black: tuple[tuple[int, int], tuple[int, int]]
    white: tuple[tuple[int, int], tuple[int, int]]
    crossing: tuple[tuple[int, int], tuple[int, int]]

    def pairing(self, kind: str) -> tuple[tuple[int, int], tuple[int, int]]:
        return getattr(self, kind)


@dataclass(frozen=True)
class TransitionSystem:
    ap: ArrowPresentation
    gap_ids: tuple[GapId, ...]
    # gap index -> (start slot, end slot); None for the gap of an empty circle
    gap_ends: tuple[tuple[int, int] | None, ...]
    slot_gap: tuple[int, ...]
    slot_edge: tuple[int, ...]
    edges: tuple[EdgeTransitions, ...]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.edges)

    @property
    def medial_gaps(self) -> tuple[int, ...]:
        """Gaps that are medial edges (all but those of empty circles)."""
        return tuple(g for g, ends in enumerate(self.gap_ends) if ends is not None)

    def edge(self, label: str) -> EdgeTransitions:
        return self.edges[self.labels.index(label)]

    def cyclic_gap_order(self, label: str) -> tuple[GapId, ...]:
        return tuple(self.gap_ids[g] for g in self.edge(label).gaps)

    def partner_table(self, kinds: Iterable[str]) -> list[int]:
        partner = [0] * len(self.slot_gap)
        for e, kind in zip(self.edges, kinds):
            for a, b in e.pairing(kind):
                partner[a] = b
                partner[b] = a
        return partner

    def arrow_signs(self, kinds: Iterable[str]) -> dict[tuple[int, int], int]:
        signs = {}
        for e, kind in zip(self.edges, kinds):
            for a, b in e.pairing(kind):
                signs[a, b] = 1
                signs[b, a] = -1
        return signs


@lru_cache(maxsize=8192)
def transition_system(ap: ArrowPresentation) -> TransitionSystem:
    # occurrence k has back end 2k and front end 2k + 1
    occ_index = {}
    gap_ids, gap_ends, slot_gap = [], [], []
    k = 0
    for i, circle in enumerate(ap.circles):
        d = circle.degree
        if d == 0:
            gap_ids.append(GapId(i, 0))
            gap_ends.append(None)
            continue
        base = k
        for j in range(d):
            occ_index[i, j] = base + j
        for j in range(d):
            gap_ids.append(GapId(i, j))
            gap_ends.append((2 * (base + j) + 1, 2 * (base + (j + 1) % d)))
        k += d
    slot_gap = [0] * (2 * k)
    for g, ends in enumerate(gap_ends):
        if ends is not None:
            slot_gap[ends[0]] = g
            slot_gap[ends[1]] = g

    slot_edge = [0] * (2 * k)
    edges = []
    for n, label in enumerate(ap.labels):
        ends = []
        for i, j in ap.occurrences(label):
            occ = occ_index[i, j]
            back, front = 2 * occ, 2 * occ + 1
            sign = ap.circles[i].arrows[j].sign
            ends.append((back, front) if sign > 0 else (front, back))
        (t1, h1), (t2, h2) = ends
        for s in (t1, h1, t2, h2):
            slot_edge[s] = n
        edges.append(EdgeTransitions(
            label=label,
            slots=(t1, h1, t2, h2),
            gaps=(slot_gap[t1], slot_gap[h1], slot_gap[t2], slot_gap[h2]),
            black=((t1, h1), (t2, h2)),
            white=((h1, t2), (h2, t1)),
            crossing=((t1, t2), (h1, h2)),
        ))
    return TransitionSystem(ap, tuple(gap_ids), tuple(gap_ends), tuple(slot_gap),
                            tuple(slot_edge), tuple(edges))


@dataclass(frozen=True)
class Step:
    """Pass through a transition into ``gap``.

    ``via`` is the ordered slot pair crossed just before entering the gap;
    ``sign`` is +1 when that agrees with the transition's arrow direction.
    ``forward`` tells whether the gap is run in its circle's stored
    direction.
    """

    edge: str
    via: tuple[int, int]
    sign: int
    gap: int
    forward: bool


@dataclass(frozen=True)
class Walk:
    steps: tuple[Step, ...]
    # set only for the length-0 walk around an empty circle
    isolated_gap: int | None = None

    @property
    def length(self) -> int:
        """Number of 2-valent vertices (arrow sites) on the walk."""
        return len(self.steps)

    @property
    def gaps(self) -> tuple[int, ...]:
        if self.isolated_gap is not None:
            return (self.isolated_gap,)
        return tuple(s.gap for s in self.steps)


@dataclass(frozen=True)
class StateCircles:
    system: TransitionSystem
    choice: tuple[str, ...]
    walks: tuple[Walk, ...]

    def __iter__(self):
        return iter(self.walks)

    def __len__(self) -> int:
        return len(self.walks)

    @property
    def lengths(self) -> list[int]:
        return [w.length for w in self.walks]

    def to_json(self) -> list[dict]:
        ids = self.system.gap_ids
        out = []
        for w in self.walks:
            if w.isolated_gap is not None:
                out.append({"length": 0, "gaps": [str(ids[w.isolated_gap])], "sites": []})
                continue
            out.append({
                "length": w.length,
                "gaps": [("+" if s.forward else "-") + str(ids[s.gap]) for s in w.steps],
                "sites": [{"edge": s.edge, "sign": s.sign} for s in w.steps],
            })
        return out


def _normalise_choice(ts: TransitionSystem, choice: Mapping[str, str] | Iterable[str]) -> tuple[str, ...]:
    if isinstance(choice, Mapping):
        missing = set(ts.labels) - set(choice)
        if missing:
            raise ValueError(f"no smoothing chosen for edges {sorted(missing)}")
        kinds = tuple(choice[label] for label in ts.labels)
    else:
        kinds = tuple(choice)
        if len(kinds) != len(ts.labels):
            raise ValueError("choice must cover every edge")
    bad = [k for k in kinds if k not in PAIRINGS]
    if bad:
        raise ValueError(f"unknown pairing {bad[0]!r}")
    return kinds


def trace(ap: ArrowPresentation, choice: Mapping[str, str] | Iterable[str]) -> StateCircles:
    """Closed walks obtained by applying ``choice`` at every edge.

    ``choice`` maps each label to ``"black"``, ``"white"`` or
    ``"crossing"`` (or is a sequence in label order).  Walks start at the
    lowest unused gap and run it forwards.
    """
    ts = transition_system(ap)
    kinds = _normalise_choice(ts, choice)
    partner = ts.partner_table(kinds)
    signs = ts.arrow_signs(kinds)
    labels = ts.labels
    used = [False] * len(ts.gap_ends)
    walks = []
    for g0, ends in enumerate(ts.gap_ends):
        if used[g0]:
            continue
        used[g0] = True
        if ends is None:
            walks.append(Walk((), g0))
            continue
        steps = []
        entry = ends[0]
        while True:
            g = ts.slot_gap[entry]
            start, end = ts.gap_ends[g]
            forward = entry == start
            prev = partner[entry]
            steps.append(Step(labels[ts.slot_edge[entry]], (prev, entry),
                              signs[prev, entry], g, forward))
            used[g] = True
            entry = partner[end if forward else start]
            if entry == ends[0]:
                break
        walks.append(Walk(tuple(steps)))
    return StateCircles(ts, kinds, tuple(walks))


def boundary_components(ap: ArrowPresentation) -> StateCircles:
    return trace(ap, [WHITE] * ap.edge_count)


def is_even_face(ap: ArrowPresentation) -> bool:
    return all(n % 2 == 0 for n in boundary_components(ap).lengths)


def straight_ahead_walks(ap: ArrowPresentation) -> tuple[int, StateCircles]:
    """``t`` and the straight-ahead walks of the medial graph.

    Empty circles contribute no medial edges and are left out.
    """
    sc = trace(ap, [CROSSING] * ap.edge_count)
    walks = tuple(w for w in sc.walks if w.isolated_gap is None)
    sc = StateCircles(sc.system, sc.choice, walks)
    return len(walks), sc


def state_circles(ap: ArrowPresentation, A: Iterable[str]) -> StateCircles:
    """State circles of the state that is white on ``A`` and black elsewhere."""
    A = set(A)
    unknown = A - ap.edge_set
    if unknown:
        raise ValueError(f"unknown edges {sorted(unknown)}")
    return trace(ap, [WHITE if label in A else BLACK for label in ap.labels])


def is_even_state(sc: StateCircles) -> bool:
    return all(w.length % 2 == 0 for w in sc.walks)
