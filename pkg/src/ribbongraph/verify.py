"""Brute-force checks of the partial-duality theorems.

Every check compares two independently computed families of edge sets
for one ribbon graph and records a replayable witness on mismatch.
Instances come from exhaustive generation (up to 4 edges) or from a
seeded random generator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from importlib import resources
from itertools import permutations, product
from typing import Iterator

from .duality import check_dual_identities, is_orientable, normal_form, partial_dual, surface_invariants
from .medial import (
    enumerate_all_crossing,
    enumerate_crossing_total,
    even_face_sets,
    even_state_bound,
    eulerian_sets,
    lemma_cd_swap,
)
from .presentation import (
    Arrow,
    ArrowPresentation,
    Circle,
    edge_subsets,
    format_subset,
    is_bipartite,
    is_eulerian,
    parse,
    serialize,
    underlying_graph,
)
from .report import VerificationReport
from .tracing import is_even_face, is_even_state, state_circles, straight_ahead_walks

__all__ = [
    "Fixture",
    "Counterexample",
    "NonOrientableInput",
    "FIXTURE_NAMES",
    "load_fixture",
    "fixtures",
    "fixture_values",
    "generate_all",
    "generate_catalog",
    "random_presentation",
    "random_corpus",
    "fmt_family",
    "bipartite_duals",
    "verify_main_theorem",
    "verify_bipartite_characterization",
    "verify_eulerian_characterization",
    "verify_bounds",
    "verify_degree_bijection",
    "verify_cd_swap",
    "verify_fixture",
    "verify_instance",
    "counterexample_search",
]

MAX_EDGES = 12


class NonOrientableInput(ValueError):
    """The bipartite characterization only applies to orientable graphs;
    use :func:`counterexample_search` for non-orientable ones."""


# ---------------------------------------------------------------------------
# fixtures

FIXTURE_NAMES = ("annulus", "moebius", "path", "theta", "torus_bouquet", "counterexample")


@dataclass(frozen=True)
class Fixture:
    name: str
    ap: ArrowPresentation
    expected: dict = field(default_factory=dict)


def _read_fixture(name: str) -> tuple[str, dict]:
    text = resources.files("ribbongraph.fixtures").joinpath(f"{name}.arp").read_text()
    expected = {}
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("# expect:"):
            for item in line[len("# expect:"):].split():
                key, _, value = item.partition("=")
                expected[key] = {"true": True, "false": False}.get(value, value)
                if isinstance(expected[key], str) and expected[key].lstrip("-").isdigit():
                    expected[key] = int(expected[key])
    return text, expected


def load_fixture(name: str) -> Fixture:
    text, expected = _read_fixture(name)
    return Fixture(name, parse(text), expected)


def fixtures() -> list[Fixture]:
    return [load_fixture(n) for n in FIXTURE_NAMES]


def fixture_values(ap: ArrowPresentation) -> dict:
    """Computed counterparts of the ``# expect:`` keys."""
    inv = surface_invariants(ap)
    return {
        "V": inv.vertex_count,
        "E": inv.edge_count,
        "F": inv.boundary_count,
        "chi": inv.euler_characteristic,
        "orientable": inv.orientable,
        "genus": inv.genus,
        "t": straight_ahead_walks(ap)[0],
        "N_CT": len(enumerate_crossing_total(ap)),
    }


# ---------------------------------------------------------------------------
# instance generation

def _from_cycles(cycles: list[list[tuple[int, int]]], flags: dict[tuple[int, int], int]) -> ArrowPresentation:
    circles = []
    for k, cyc in enumerate(cycles, start=1):
        circles.append(Circle(f"C{k}", tuple(Arrow(str(lab), flags[lab, c]) for lab, c in cyc)))
    return ArrowPresentation(tuple(circles))


def _cycles(perm: tuple[int, ...]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x]
        out.append(cyc)
    return out


def _copy_swaps(n: int) -> list[tuple[int, ...]]:
    """Involutions exchanging the two copies of each label in a subset."""
    out = []
    for bits in product((0, 1), repeat=n):
        if any(bits):
            tau = list(range(2 * n))
            for i, b in enumerate(bits):
                if b:
                    tau[2 * i], tau[2 * i + 1] = 2 * i + 1, 2 * i
            out.append(tuple(tau))
    return out


def _least_under_swaps(perm: tuple[int, ...], swaps: list[tuple[int, ...]]) -> bool:
    # relabelling copies conjugates the cycle permutation; with flags
    # stored as per-label products the flag choices are unaffected
    for tau in swaps:
        if tuple(tau[perm[tau[x]]] for x in range(len(perm))) < perm:
            return False
    return True


def generate_all(n: int, vertices: int | None = None) -> Iterator[ArrowPresentation]:
    """Every arrow presentation with ``n`` edges labelled ``1..n``, one
    per normal form.

    ``vertices`` fixes the number of circles (all non-empty when
    ``n > 0``); by default every count from 1 to ``2n`` is produced.
    With ``n == 0`` the result is ``vertices`` (default 1) empty circles.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        k = 1 if vertices is None else vertices
        yield ArrowPresentation(tuple(Circle(f"C{i + 1}") for i in range(k)))
        return
    items = [(lab, c) for lab in range(1, n + 1) for c in (0, 1)]
    seen: set[str] = set()
    # flag of the first copy of every label is fixed by the pair-flip move
    flag_choices = list(product((1, -1), repeat=n))
    swaps = _copy_swaps(n)
    for perm in permutations(range(2 * n)):
        if not _least_under_swaps(perm, swaps):
            continue
        cycles = _cycles(perm)
        if vertices is not None and len(cycles) != vertices:
            continue
        named = [[items[x] for x in cyc] for cyc in cycles]
        for second in flag_choices:
            flags = {}
            for lab in range(1, n + 1):
                flags[lab, 0] = 1
                flags[lab, 1] = second[lab - 1]
            ap = _from_cycles(named, flags)
            key = normal_form(ap)
            if key not in seen:
                seen.add(key)
                yield ap


def generate_catalog(max_edges: int, *, connected_only: bool = False) -> list[ArrowPresentation]:
    """All graphs with 0..max_edges edges (no isolated vertices when there
    are edges), sorted by edge count then normal form."""
    out = []
    for n in range(max_edges + 1):
        batch = list(generate_all(n))
        if connected_only:
            batch = [ap for ap in batch if surface_invariants(ap).components == 1]
        out.extend(sorted(batch, key=normal_form))
    return out


def random_presentation(rng: random.Random, edges: int, vertices: int | None = None) -> ArrowPresentation:
    """Uniform circle assignment, random cyclic order and random flags."""
    if vertices is None:
        vertices = rng.randint(1, max(1, edges + 1))
    tokens = [str(lab) for lab in range(1, edges + 1) for _ in (0, 1)]
    rng.shuffle(tokens)
    circles: list[list[Arrow]] = [[] for _ in range(vertices)]
    for tok in tokens:
        circles[rng.randrange(vertices)].append(Arrow(tok, rng.choice((1, -1))))
    return ArrowPresentation(tuple(Circle(f"C{i + 1}", tuple(c)) for i, c in enumerate(circles)))


def random_corpus(count: int, max_edges: int, seed: int = 0) -> list[ArrowPresentation]:
    rng = random.Random(seed)
    return [random_presentation(rng, rng.randint(1, max_edges)) for _ in range(count)]


# ---------------------------------------------------------------------------
# theorem checks

def fmt_family(family) -> str:
    items = sorted(family, key=lambda s: (len(s), sorted(s)))
    return ", ".join(format_subset(s) for s in items)


def _name(ap: ArrowPresentation, instance: str | None) -> str:
    return instance if instance is not None else serialize(ap)


def _check_size(ap: ArrowPresentation) -> None:
    if ap.edge_count > MAX_EDGES:
        raise ValueError(f"{ap.edge_count} edges exceeds the limit of {MAX_EDGES}")


def verify_main_theorem(ap: ArrowPresentation, instance: str | None = None) -> VerificationReport:
    """For every A: G^A even-face iff G^(E-A) Eulerian."""
    _check_size(ap)
    name = _name(ap, instance)
    report = VerificationReport()
    E = ap.edge_set
    for A in edge_subsets(ap):
        lhs = is_even_face(partial_dual(ap, A))
        rhs = is_eulerian(partial_dual(ap, E - A))
        report.add("main_theorem", name, lhs == rhs,
                   None if lhs == rhs else f"A={format_subset(A)}",
                   f"even-face={lhs} eulerian(complement)={rhs}")
    return report


def bipartite_duals(ap: ArrowPresentation) -> set[frozenset[str]]:
    return {A for A in edge_subsets(ap) if is_bipartite(partial_dual(ap, A))}


def verify_bipartite_characterization(ap: ArrowPresentation, instance: str | None = None) -> VerificationReport:
    """{A : G^A bipartite} equals the c-edge sets of all-crossing
    directions, and there are exactly 2**t such directions."""
    _check_size(ap)
    if not is_orientable(ap):
        raise NonOrientableInput("graph is non-orientable; see counterexample_search")
    name = _name(ap, instance)
    report = VerificationReport()
    t = straight_ahead_walks(ap)[0]
    directions = enumerate_all_crossing(ap)
    ok = len(directions) == 2 ** t and len(set(d for d, _ in directions)) == len(directions)
    report.add("all_crossing_count", name, ok, None if ok else f"{len(directions)} != 2^{t}")
    csets = {cls.C for _, cls in directions}
    bip = bipartite_duals(ap)
    ok = csets == bip
    witness = None
    if not ok:
        witness = f"only c-sets: {fmt_family(csets - bip)}; only bipartite: {fmt_family(bip - csets)}"
    report.add("bipartite_characterization", name, ok, witness)
    return report


def verify_eulerian_characterization(ap: ArrowPresentation, instance: str | None = None,
                                     directions=None) -> VerificationReport:
    """Eulerian and even-face partial duals against crossing-total
    directions, and Eulerian duals against even states."""
    _check_size(ap)
    name = _name(ap, instance)
    report = VerificationReport()
    E = ap.edge_set
    directions = enumerate_crossing_total(ap) if directions is None else directions
    subsets = list(edge_subsets(ap))
    duals = {A: partial_dual(ap, A) for A in subsets}

    def compare(claim, got, want):
        ok = got == want
        witness = None
        if not ok:
            witness = f"directions only: {fmt_family(got - want)}; duals only: {fmt_family(want - got)}"
        report.add(claim, name, ok, witness)

    eul = {A for A in subsets if is_eulerian(duals[A])}
    even = {A for A in subsets if is_even_face(duals[A])}
    compare("eulerian_characterization", eulerian_sets(ap, directions), eul)
    compare("even_face_corollary", even_face_sets(ap, directions), even)
    compare("even_face_by_complement", {E - A for A in eulerian_sets(ap, directions)}, even)
    compare("eulerian_iff_even_state", {A for A in subsets if is_even_state(state_circles(ap, A))}, eul)
    for d, cls in directions:
        # white at d-edges, black at c-edges, either at t-edges
        for A in (cls.D, cls.D | cls.T):
            ok = is_even_state(state_circles(ap, A))
            report.add("direction_gives_even_state", name, ok, None if ok else f"direction {d}")
    return report


def verify_bounds(ap: ArrowPresentation, instance: str | None = None) -> VerificationReport:
    """2**t <= N_CT <= sum over even states of 2**c(S)."""
    _check_size(ap)
    name = _name(ap, instance)
    report = VerificationReport()
    t = straight_ahead_walks(ap)[0]
    n_ct = len(enumerate_crossing_total(ap))
    upper = even_state_bound(ap)
    ok = 2 ** t <= n_ct <= upper
    report.add("ct_bounds", name, ok, None if ok else f"{2 ** t} <= {n_ct} <= {upper}",
               f"{2 ** t} <= {n_ct} <= {upper}")
    return report


def verify_degree_bijection(ap: ArrowPresentation, instance: str | None = None) -> VerificationReport:
    """State-circle lengths of S_A equal the vertex degrees of G^A; the
    number of boundary components of G equals the number of circles of
    S_(E-A) traced in G^A."""
    name = _name(ap, instance)
    report = VerificationReport()
    E = ap.edge_set
    F = surface_invariants(ap).boundary_count
    for A in edge_subsets(ap):
        dual = partial_dual(ap, A)
        lengths = sorted(state_circles(ap, A).lengths)
        degrees = sorted(c.degree for c in dual.circles)
        report.add("degree_bijection", name, lengths == degrees,
                   None if lengths == degrees else f"A={format_subset(A)}")
        k = len(state_circles(dual, E - A))
        report.add("boundary_bijection", name, k == F, None if k == F else f"A={format_subset(A)}")
    return report


def verify_cd_swap(ap: ArrowPresentation, instance: str | None = None, directions=None) -> VerificationReport:
    name = _name(ap, instance)
    report = VerificationReport()
    directions = enumerate_crossing_total(ap) if directions is None else directions
    for d, _ in directions:
        ok = lemma_cd_swap(ap, d)
        report.add("cd_swap", name, ok, None if ok else f"direction {d}")
    return report


def verify_instance(ap: ArrowPresentation, instance: str | None = None, *,
                    dual_pairs: int | None = 256, seed: int = 0) -> VerificationReport:
    """Every applicable check on one graph."""
    name = _name(ap, instance)
    report = VerificationReport()
    directions = enumerate_crossing_total(ap)
    report.extend(verify_main_theorem(ap, name))
    report.extend(verify_eulerian_characterization(ap, name, directions))
    report.extend(verify_bounds(ap, name))
    report.extend(verify_degree_bijection(ap, name))
    report.extend(verify_cd_swap(ap, name, directions))
    report.extend(check_dual_identities(ap, max_pairs=dual_pairs, seed=seed, instance=name))
    if is_orientable(ap):
        report.extend(verify_bipartite_characterization(ap, name))
    bip, even = is_bipartite(ap), is_even_face(ap)
    report.add("bipartite_implies_even_face", name, even or not bip,
               None if even or not bip else "G itself")
    return report


def verify_fixture(fx: Fixture) -> VerificationReport:
    report = verify_instance(fx.ap, fx.name)
    got = fixture_values(fx.ap)
    for key, want in fx.expected.items():
        ok = got.get(key) == want
        report.add(f"fixture.{key}", fx.name, ok, None if ok else f"{key}={got.get(key)} expected {want}")
    return report


# ---------------------------------------------------------------------------
# non-orientable counterexamples

@dataclass(frozen=True)
class Counterexample:
    ap: ArrowPresentation
    kind: str  # "c-set not bipartite" or "bipartite not c-set"
    A: frozenset[str]
    direction: tuple[int, ...] | None
    t: int
    # all-crossing directions share one c/d partition, and the dual
    # with respect to its c-edges has a loop
    unique_partition_loop: bool

    def to_json(self) -> dict:
        return {
            "graph": serialize(self.ap),
            "kind": self.kind,
            "A": sorted(self.A),
            "direction": list(self.direction) if self.direction is not None else None,
            "t": self.t,
            "unique_partition_loop": self.unique_partition_loop,
        }


def _has_loop(ap: ArrowPresentation) -> bool:
    return any(u == v for _, u, v in underlying_graph(ap).edges)


def counterexample_search(max_edges: int, *, connected_only: bool = True) -> list[Counterexample]:
    """Non-orientable graphs with at most ``max_edges`` edges on which the
    bipartite characterization fails, one entry per failing set."""
    if max_edges > 4:
        raise ValueError("exhaustive search is limited to 4 edges")
    found = []
    for n in range(1, max_edges + 1):
        for ap in sorted(generate_all(n), key=normal_form):
            if is_orientable(ap):
                continue
            if connected_only and surface_invariants(ap).components != 1:
                continue
            found.extend(_mismatches(ap))
    return found


def _mismatches(ap: ArrowPresentation) -> list[Counterexample]:
    t = straight_ahead_walks(ap)[0]
    directions = enumerate_all_crossing(ap)
    by_cset: dict[frozenset[str], tuple[int, ...]] = {}
    for d, cls in directions:
        by_cset.setdefault(cls.C, d)
    bip = bipartite_duals(ap)
    partitions = {cls.C for _, cls in directions}
    unique_loop = len(partitions) == 1 and _has_loop(partial_dual(ap, next(iter(partitions))))
    out = []
    for A in sorted(set(by_cset) - bip, key=lambda s: (len(s), sorted(s))):
        out.append(Counterexample(ap, "c-set not bipartite", A, by_cset[A], t, unique_loop))
    for A in sorted(bip - set(by_cset), key=lambda s: (len(s), sorted(s))):
        out.append(Counterexample(ap, "bipartite not c-set", A, None, t, unique_loop))
    return out
