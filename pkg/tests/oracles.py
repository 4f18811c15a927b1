"""Independent re-implementations used to cross-check the library.

None of these import the tracing code they are compared against.
"""

from __future__ import annotations

from itertools import product

import networkx as nx

from ribbongraph.presentation import Arrow, ArrowPresentation, Circle


def faces_by_rotation(ap: ArrowPresentation) -> list[int]:
    """Face degrees from the signed rotation system of ``ap``.

    Half-edges are arrow occurrences, the rotation at a vertex is the
    stored circle order, and an edge is twisted when its two flags
    disagree.  Face tracing walks (half-edge, side) states; each face is
    met once per traversal direction.
    """
    half = [(i, j) for i, c in enumerate(ap.circles) for j in range(c.degree)]
    other = {}
    by_label = {}
    for i, j in half:
        by_label.setdefault(ap.circles[i].arrows[j].label, []).append((i, j))
    for a, b in by_label.values():
        other[a], other[b] = b, a

    def twisted(h):
        i, j = h
        k, m = other[h]
        return ap.circles[i].arrows[j].sign != ap.circles[k].arrows[m].sign

    def step(state):
        h, side = state
        w, pos = other[h]
        side = -side if twisted(h) else side
        deg = ap.circles[w].degree
        return (w, (pos + side) % deg), side

    seen = set()
    lengths = []
    for state in ((h, s) for h in half for s in (1, -1)):
        if state in seen:
            continue
        n = 0
        x = state
        while x not in seen:
            seen.add(x)
            n += 1
            x = step(x)
        lengths.append(n)
    # every face shows up once in each direction
    assert len(lengths) % 2 == 0
    lengths.sort()
    faces = lengths[::2]
    assert faces == lengths[1::2]
    isolated = [0] * sum(1 for c in ap.circles if c.degree == 0)
    return sorted(isolated + faces)


def bipartite_nx(ap: ArrowPresentation) -> bool:
    g = nx.MultiGraph()
    g.add_nodes_from(range(ap.vertex_count))
    for label in ap.labels:
        ends = [i for i, c in enumerate(ap.circles) for a in c.arrows if a.label == label]
        if ends[0] == ends[1]:
            return False
        g.add_edge(*ends)
    return nx.is_bipartite(g)


def crossing_total_brute(medial_edges, n_gaps: int) -> dict[tuple, dict[str, str]]:
    """Every orientation of the medial edges checked against the local
    rule directly; returns direction -> {edge: 'c'|'d'|'t'}.

    ``medial_edges`` is the incidence list ``(gap, (edge, slot), (edge, slot))``;
    ``n_gaps`` counts all gaps, including those of empty circles.
    """
    gaps = [g for g, _, _ in medial_edges]
    out = {}
    for signs in product((1, -1), repeat=len(gaps)):
        ins: dict[str, list[bool]] = {}
        for (g, a, b), s in zip(medial_edges, signs):
            head, tail = (b, a) if s > 0 else (a, b)
            ins.setdefault(head[0], [False] * 4)[head[1]] = True
            ins.setdefault(tail[0], [False] * 4)
        kinds = {}
        for label, pat in ins.items():
            cyc = "".join("i" if x else "o" for x in pat)
            if cyc in ("iiii", "oooo"):
                kinds[label] = "t"
            elif cyc in ("iioo", "ooii"):
                kinds[label] = "c"
            elif cyc in ("oiio", "iooi"):
                kinds[label] = "d"
            else:
                break
        else:
            d = [0] * n_gaps
            for g, s in zip(gaps, signs):
                d[g] = s
            out[tuple(d)] = kinds
    return out


def equivalence_orbit(ap: ArrowPresentation) -> frozenset:
    """Closure of ``ap`` under rotation, circle reversal, pair flips and
    circle reordering, as a set of sorted circle-token tuples."""

    def key(circles):
        return tuple(sorted(tuple((a.label, a.sign) for a in c) for c in circles))

    start = [list(c.arrows) for c in ap.circles]
    seen = {key(start)}
    todo = [start]
    while todo:
        cur = todo.pop()
        moves = []
        for i, c in enumerate(cur):
            if c:
                moves.append(cur[:i] + [c[1:] + c[:1]] + cur[i + 1:])
            moves.append(cur[:i] + [[Arrow(a.label, -a.sign) for a in reversed(c)]] + cur[i + 1:])
        for label in ap.labels:
            moves.append([[Arrow(a.label, -a.sign) if a.label == label else a for a in c] for c in cur])
        for m in moves:
            k = key(m)
            if k not in seen:
                seen.add(k)
                todo.append(m)
    return frozenset(seen)


def raw_presentations(n: int):
    """Every way to write 2n arrows (labels 1..n) on 1..2n non-empty
    circles, with no symmetry reduction at all."""
    tokens = [str(lab) for lab in range(1, n + 1) for _ in (0, 1)]

    def splits(seq):
        if not seq:
            yield []
            return
        for k in range(1, len(seq) + 1):
            for rest in splits(seq[k:]):
                yield [seq[:k]] + rest

    from itertools import permutations
    seen = set()
    for perm in set(permutations(tokens)):
        for parts in splits(list(perm)):
            for signs in product((1, -1), repeat=2 * n):
                it = iter(signs)
                circles = tuple(Circle(f"C{k + 1}", tuple(Arrow(t, next(it)) for t in part))
                                for k, part in enumerate(parts))
                ap = ArrowPresentation(circles)
                if ap not in seen:
                    seen.add(ap)
                    yield ap
