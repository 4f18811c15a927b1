"""Partial duals, surface invariants and normal forms.

The partial dual with respect to ``A`` is read off the state that is
white on ``A`` and black elsewhere: each state circle becomes a vertex
circle, and each transition it passes becomes a marking arrow pointing
along the boundary orientation of that edge's ribbon.

    >>> from ribbongraph.presentation import parse, serialize
    >>> print(serialize(partial_dual(parse("C1: 1+ 1+"), {"1"})))
    C1: 1-
    C1.2: 1-
    >>> surface_invariants(parse("C1: 1+ 2+ 1+ 2+")).genus
    1
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from itertools import product
from typing import Iterable

from .presentation import Arrow, ArrowPresentation, Circle, edge_subsets, format_subset, label_key
from .report import VerificationReport
from .tracing import boundary_components, state_circles

__all__ = [
    "SurfaceInvariants",
    "partial_dual",
    "geometric_dual",
    "is_orientable",
    "surface_invariants",
    "normal_form",
    "check_dual_identities",
]


def _fresh_name(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    k = 2
    while f"{base}.{k}" in taken:
        k += 1
    return f"{base}.{k}"


def partial_dual(ap: ArrowPresentation, A: Iterable[str]) -> ArrowPresentation:
    """Arrow presentation of the partial dual of ``ap`` with respect to ``A``.

    A new circle is named after the circle holding its first gap (with a
    ``.k`` suffix when that name is already used), so ``A = {}`` returns
    ``ap`` unchanged.
    """
    sc = state_circles(ap, A)
    ids = sc.system.gap_ids
    taken: set[str] = set()
    circles = []
    for walk in sc.walks:
        name = _fresh_name(ap.circles[ids[walk.gaps[0]].circle].name, taken)
        taken.add(name)
        circles.append(Circle(name, tuple(Arrow(s.edge, s.sign) for s in walk.steps)))
    return ArrowPresentation(tuple(circles))


def geometric_dual(ap: ArrowPresentation) -> ArrowPresentation:
    return partial_dual(ap, ap.labels)


class _ParityUnionFind:
    """Union-find tracking the parity of each element relative to its root."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.parity = [0] * n

    def find(self, x: int) -> tuple[int, int]:
        p = 0
        while self.parent[x] != x:
            p ^= self.parity[x]
            x = self.parent[x]
        return x, p

    def union(self, a: int, b: int, rel: int) -> bool:
        """Impose ``parity(a) xor parity(b) == rel``; False on contradiction."""
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return (pa ^ pb) == rel
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ rel
        return True


def _edge_constraints(ap: ArrowPresentation):
    """``(label, circle1, circle2, rel)``: reversing bits must differ by ``rel``.

    Both arrows of a label can be made to agree with their circles'
    directions iff the circles' reversal bits differ exactly when the
    stored flags disagree.
    """
    for label in ap.labels:
        (i, a), (j, b) = ap.occurrences(label)
        s1 = ap.circles[i].arrows[a].sign
        s2 = ap.circles[j].arrows[b].sign
        yield label, i, j, int(s1 != s2)


def _orientable_circles(ap: ArrowPresentation) -> tuple[_ParityUnionFind, set[int]]:
    uf = _ParityUnionFind(ap.vertex_count)
    bad_roots = []
    for _, i, j, rel in _edge_constraints(ap):
        if not uf.union(i, j, rel):
            bad_roots.append(i)
    bad = {uf.find(i)[0] for i in bad_roots}
    return uf, bad


def is_orientable(ap: ArrowPresentation) -> bool:
    """True iff circles can be reversed so every arrow runs with its circle.

        >>> from ribbongraph.presentation import parse
        >>> is_orientable(parse("C1: 1+ 1+")), is_orientable(parse("C1: 1+ 1-"))
        (True, False)
    """
    return not _orientable_circles(ap)[1]


@dataclass(frozen=True)
class SurfaceInvariants:
    components: int
    vertex_count: int
    edge_count: int
    boundary_count: int
    euler_characteristic: int
    orientable: bool
    genus: int
    # "orientable" when every component is; "euler" when crosscap numbers
    # (2 - chi) of non-orientable components are included
    genus_kind: str

    def to_dict(self) -> dict:
        return asdict(self)


def surface_invariants(ap: ArrowPresentation) -> SurfaceInvariants:
    uf, bad = _orientable_circles(ap)
    roots = [uf.find(i)[0] for i in range(ap.vertex_count)]
    chi: dict[int, int] = {r: 0 for r in roots}
    for r in roots:
        chi[r] += 1
    for _, i, _, _ in _edge_constraints(ap):
        chi[roots[i]] -= 1
    faces = boundary_components(ap)
    ids = faces.system.gap_ids
    for walk in faces.walks:
        chi[roots[ids[walk.gaps[0]].circle]] += 1
    genus = 0
    for r, x in chi.items():
        genus += (2 - x) if r in bad else (2 - x) // 2
    V, E, F = ap.vertex_count, ap.edge_count, len(faces)
    return SurfaceInvariants(
        components=len(chi),
        vertex_count=V,
        edge_count=E,
        boundary_count=F,
        euler_characteristic=V - E + F,
        orientable=not bad,
        genus=genus,
        genus_kind="euler" if bad else "orientable",
    )


def _least_rotation(seq: tuple) -> tuple:
    if not seq:
        return seq
    return min(seq[k:] + seq[:k] for k in range(len(seq)))


def normal_form(ap: ArrowPresentation) -> str:
    """Canonical text, equal for presentations that differ only by circle
    rotation, circle reversal, reversing both arrows of a label, circle
    order or circle names.  Labels are never permuted.

        >>> from ribbongraph.presentation import parse
        >>> normal_form(parse("C1: 1+ 2+ 1- 2+")) == normal_form(parse("X: 2- 1+ 2- 1-"))
        True
        >>> normal_form(parse("C1: 1+ 1+")) == normal_form(parse("C1: 1+ 1-"))
        False
    """
    # Fix circle reversals up to one global flip per component: spanning
    # forest edges (chosen in label order) get agreeing flags.
    n = ap.vertex_count
    uf = _ParityUnionFind(n)
    for _, i, j, rel in sorted(_edge_constraints(ap), key=lambda t: label_key(t[0])):
        uf.union(i, j, rel)
    roots, parity = zip(*(uf.find(i) for i in range(n))) if n else ((), ())

    def encode(flip_component: dict[int, int]) -> list[tuple]:
        rev = [parity[i] ^ flip_component.get(roots[i], 0) for i in range(n)]
        sign_after = {}
        for i, c in enumerate(ap.circles):
            for j, a in enumerate(c.arrows):
                sign_after[i, j] = -a.sign if rev[i] else a.sign
        prod = {}
        for label in ap.labels:
            (i, a), (j, b) = ap.occurrences(label)
            prod[label] = sign_after[i, a] * sign_after[j, b]
        out = []
        for i, c in enumerate(ap.circles):
            toks = tuple((label_key(a.label), a.label, prod[a.label]) for a in c.arrows)
            out.append(_least_rotation(toks[::-1] if rev[i] else toks))
        return out

    base = encode({})
    flipped = encode({r: 1 for r in set(roots)})
    chosen = []
    for r in sorted(set(roots)):
        members = [i for i in range(n) if roots[i] == r]
        a = sorted(base[i] for i in members)
        b = sorted(flipped[i] for i in members)
        chosen.extend(min(a, b))
    chosen.sort()

    lines, seen = [], set()
    for k, circle in enumerate(chosen, start=1):
        toks = []
        for _, label, p in circle:
            sign = p if label in seen else 1
            seen.add(label)
            toks.append(f"{label}{'+' if sign > 0 else '-'}")
        lines.append(f"C{k}: " + " ".join(toks) if toks else f"C{k}:")
    return "\n".join(lines)


def check_dual_identities(ap: ArrowPresentation, *, max_pairs: int | None = 4096,
                          seed: int = 0, instance: str | None = None) -> VerificationReport:
    """Check the partial-duality identities on ``ap``.

    All pairs ``(A, B)`` are tried when there are at most ``max_pairs`` of
    them, otherwise ``max_pairs`` seeded random pairs.  A composition that
    differs in normal form but agrees on every surface invariant is
    recorded under the separate claim ``dual.compose.invariants_only``.
    """
    from .presentation import serialize

    name = instance or serialize(ap)
    report = VerificationReport()
    subsets = list(edge_subsets(ap))
    report.add("dual.empty_is_identity", name, partial_dual(ap, ()) == ap,
               witness=format_subset(()))

    orientable = is_orientable(ap)
    duals = {}
    for A in subsets:
        duals[A] = partial_dual(ap, A)
        ok = is_orientable(duals[A]) == orientable
        report.add("dual.orientability", name, ok, None if ok else format_subset(A))

    star = surface_invariants(duals[frozenset(ap.labels)])
    inv = surface_invariants(ap)
    ok = (star.genus, star.orientable) == (inv.genus, inv.orientable)
    report.add("dual.geometric_genus", name, ok, None if ok else f"genus {inv.genus} vs {star.genus}")

    total = len(subsets) ** 2
    if max_pairs is None or total <= max_pairs:
        pairs = product(subsets, subsets)
    else:
        rng = random.Random(seed)
        pairs = ((rng.choice(subsets), rng.choice(subsets)) for _ in range(max_pairs))
    nf = {}
    for A, B in pairs:
        lhs = partial_dual(duals[A], B)
        target = A ^ B
        if target not in nf:
            nf[target] = normal_form(duals[target])
        if normal_form(lhs) == nf[target]:
            report.add("dual.compose", name, True)
            continue
        witness = f"A={format_subset(A)} B={format_subset(B)}"
        if surface_invariants(lhs) == surface_invariants(duals[target]):
            report.add("dual.compose.invariants_only", name, False, witness)
        else:
            report.add("dual.compose", name, False, witness)
    return report
