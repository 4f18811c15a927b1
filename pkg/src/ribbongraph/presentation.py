"""Arrow presentations of ribbon graphs.

A ribbon graph is stored as a list of circles (vertex boundaries), each
carrying a cyclic sequence of marking arrows.  Every edge label occurs
exactly twice.  The flag of an arrow records whether it points along (+)
or against (-) the stored traversal direction of its circle.

Text format (``.arp``)::

    # comment
    C1: 1+ 2+ 1- 2-
    C2:

EXAMPLES::

    >>> ap = parse("C1: 1+ 1+")
    >>> ap.vertex_count, ap.edge_count
    (1, 1)
    >>> serialize(ap)
    'C1: 1+ 1+'
"""

from __future__ import annotations

import re
from collections import Counter
from itertools import chain, combinations
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "Arrow",
    "Circle",
    "ArrowPresentation",
    "AbstractGraph",
    "ParseError",
    "ValidationError",
    "label_key",
    "parse",
    "serialize",
    "validate",
    "underlying_graph",
    "vertex_degrees",
    "is_eulerian",
    "is_bipartite",
    "edge_subsets",
    "format_subset",
]

_TOKEN = re.compile(r"([^\s:#+-]+)([+-])")
_NAME = re.compile(r"[^\s:#]+")


class ParseError(ValueError):
    """Malformed ``.arp`` text; carries the 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class ValidationError(ValueError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def label_key(label: str):
    """Sort key: numeric labels compare numerically and precede the others."""
    return (0, int(label), "") if label.isdigit() else (1, 0, label)


@dataclass(frozen=True)
class Arrow:
    label: str
    sign: int  # +1 or -1, relative to the circle's stored traversal

    def __str__(self) -> str:
        return f"{self.label}{'+' if self.sign > 0 else '-'}"

    def flipped(self) -> "Arrow":
        return Arrow(self.label, -self.sign)


@dataclass(frozen=True)
class Circle:
    name: str
    arrows: tuple[Arrow, ...] = ()

    @property
    def degree(self) -> int:
        return len(self.arrows)

    def rotated(self, k: int) -> "Circle":
        if not self.arrows:
            return self
        k %= len(self.arrows)
        return Circle(self.name, self.arrows[k:] + self.arrows[:k])

    def reversed(self) -> "Circle":
        """Same circle read in the opposite direction."""
        return Circle(self.name, tuple(a.flipped() for a in reversed(self.arrows)))


@dataclass(frozen=True)
class ArrowPresentation:
    circles: tuple[Circle, ...] = ()
    _labels: tuple[str, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        seen = dict.fromkeys(a.label for c in self.circles for a in c.arrows)
        object.__setattr__(self, "_labels", tuple(sorted(seen, key=label_key)))

    @classmethod
    def from_lists(cls, circles: Iterable[Sequence[str]], names: Sequence[str] | None = None):
        """Build from token lists, e.g. ``[["1+", "1+"]]``.  Validates."""
        circles = [list(c) for c in circles]
        if names is None:
            names = [f"C{i + 1}" for i in range(len(circles))]
        built = []
        for name, toks in zip(names, circles):
            arrows = []
            for tok in toks:
                m = _TOKEN.fullmatch(tok)
                if m is None:
                    raise ParseError(f"bad token {tok!r}")
                arrows.append(Arrow(m.group(1), 1 if m.group(2) == "+" else -1))
            built.append(Circle(name, tuple(arrows)))
        ap = cls(tuple(built))
        problems = validate(ap)
        if problems:
            raise ValidationError(problems)
        return ap

    @property
    def labels(self) -> tuple[str, ...]:
        """Edge labels in stable (numeric-aware) order."""
        return self._labels

    @property
    def edge_set(self) -> frozenset[str]:
        return frozenset(self._labels)

    @property
    def vertex_count(self) -> int:
        return len(self.circles)

    @property
    def edge_count(self) -> int:
        return len(self._labels)

    def occurrences(self, label: str) -> list[tuple[int, int]]:
        """Positions ``(circle, index)`` of ``label`` in circle order."""
        return [(i, j) for i, c in enumerate(self.circles)
                for j, a in enumerate(c.arrows) if a.label == label]

    def __str__(self) -> str:
        return serialize(self)


@dataclass(frozen=True)
class AbstractGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[str, int, int], ...]


def parse(text: str) -> ArrowPresentation:
    """Parse ``.arp`` text.

    Raises :class:`ParseError` on syntax errors or duplicate circle names
    and :class:`ValidationError` when a label does not occur exactly twice.

        >>> parse("C1: 1+\\nC2: 1-").vertex_count
        2
        >>> parse("C1: 1+ 2+ 1- 3+")
        Traceback (most recent call last):
        ...
        ribbongraph.presentation.ValidationError: label 2 occurs once; label 3 occurs once
    """
    circles: list[Circle] = []
    names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected '<name>:'", lineno, len(line) - len(line.lstrip()) + 1)
        name = head.strip()
        if not _NAME.fullmatch(name):
            raise ParseError(f"bad circle name {name!r}", lineno, len(head) - len(head.lstrip()) + 1)
        if name in names:
            raise ParseError(f"duplicate circle name {name!r}", lineno, 1)
        names.add(name)
        arrows = []
        offset = len(head) + 1
        for m in re.finditer(r"\S+", rest):
            tok = _TOKEN.fullmatch(m.group())
            if tok is None:
                raise ParseError(f"bad token {m.group()!r}", lineno, offset + m.start() + 1)
            arrows.append(Arrow(tok.group(1), 1 if tok.group(2) == "+" else -1))
        circles.append(Circle(name, tuple(arrows)))
    ap = ArrowPresentation(tuple(circles))
    problems = validate(ap)
    if problems:
        raise ValidationError(problems)
    return ap


def serialize(ap: ArrowPresentation) -> str:
    lines = []
    for c in ap.circles:
        toks = " ".join(str(a) for a in c.arrows)
        lines.append(f"{c.name}: {toks}" if toks else f"{c.name}:")
    return "\n".join(lines)


def validate(ap: ArrowPresentation) -> list[str]:
    """Every invariant violation of ``ap``; an empty list means valid."""
    problems = []
    counts = Counter(a.label for c in ap.circles for a in c.arrows)
    for label in sorted(counts, key=label_key):
        n = counts[label]
        if n == 1:
            problems.append(f"label {label} occurs once")
        elif n != 2:
            problems.append(f"label {label} has multiplicity {n}")
    names = Counter(c.name for c in ap.circles)
    for name, n in names.items():
        if n > 1:
            problems.append(f"duplicate circle name {name!r}")
    for c in ap.circles:
        for a in c.arrows:
            if a.sign not in (1, -1):
                problems.append(f"arrow {a.label} on {c.name} has sign {a.sign}")
    return problems


def underlying_graph(ap: ArrowPresentation) -> AbstractGraph:
    edges = []
    for label in ap.labels:
        (i, _), (j, _) = ap.occurrences(label)
        edges.append((label, i, j))
    return AbstractGraph(tuple(range(ap.vertex_count)), tuple(edges))


def vertex_degrees(ap: ArrowPresentation) -> dict[str, int]:
    return {c.name: c.degree for c in ap.circles}


def is_eulerian(ap: ArrowPresentation) -> bool:
    return all(c.degree % 2 == 0 for c in ap.circles)


def is_bipartite(ap: ArrowPresentation) -> bool:
    """Proper 2-colouring of the underlying graph exists (loops forbid one)."""
    g = underlying_graph(ap)
    adj: dict[int, list[int]] = {v: [] for v in g.vertices}
    for _, u, v in g.edges:
        if u == v:
            return False
        adj[u].append(v)
        adj[v].append(u)
    colour: dict[int, int] = {}
    for root in g.vertices:
        if root in colour:
            continue
        colour[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in colour:
                    colour[v] = 1 - colour[u]
                    stack.append(v)
                elif colour[v] == colour[u]:
                    return False
    return True


def edge_subsets(ap: ArrowPresentation):
    """Every subset of the edge set, smallest first, as frozensets."""
    labels = ap.labels
    return (frozenset(c) for c in chain.from_iterable(
        combinations(labels, r) for r in range(len(labels) + 1)))


def format_subset(A) -> str:
    return "{" + ",".join(sorted(A, key=label_key)) + "}" if A else "∅"
