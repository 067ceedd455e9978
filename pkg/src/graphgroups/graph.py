"""Commutation graphs and generator sets.

A commutation graph presents a graph group: vertices are generators and two
generators commute exactly when they are adjacent.  Subsets of the vertex set
are stored as integer bitmasks indexed by declaration order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "CAPACITY",
    "CapacityError",
    "CommutationGraph",
    "GeneratorSet",
    "GraphError",
    "GraphParseError",
    "center",
    "delete_vertex",
    "family",
    "join_free",
    "non_commutation_components",
    "orthogonal",
    "parse_graph",
]

CAPACITY = 64

_BAD_NAME = re.compile(r"[\s^\-#]")


class GraphError(ValueError):
    """Invalid graph data or a set used with the wrong graph."""


class GraphParseError(GraphError):
    pass


class CapacityError(GraphError):
    pass


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, eq=False)
class CommutationGraph:
    """A finite simple graph on named generators.

    ``stars[i]`` is the closed neighbourhood of vertex ``i`` as a bitmask:
    its neighbours plus ``i`` itself, since every generator commutes with
    itself.  ``stars[i]`` is therefore ``{x_i}^perp``.
    """

    vertices: tuple[str, ...]
    stars: tuple[int, ...]
    index: dict[str, int] = field(repr=False, compare=False, hash=False)

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()):
        names = tuple(vertices)
        if len(names) > CAPACITY:
            raise CapacityError(
                f"graph has {len(names)} vertices; capacity is {CAPACITY}"
            )
        index: dict[str, int] = {}
        for name in names:
            if not isinstance(name, str) or not name or _BAD_NAME.search(name):
                raise GraphError(f"invalid vertex name {name!r}")
            if name in index:
                raise GraphError(f"duplicate vertex {name!r}")
            index[name] = len(index)
        stars = [1 << i for i in range(len(names))]
        for u, v in edges:
            if u not in index or v not in index:
                missing = u if u not in index else v
                raise GraphError(f"unknown vertex {missing!r}")
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            i, j = index[u], index[v]
            stars[i] |= 1 << j
            stars[j] |= 1 << i
        object.__setattr__(self, "vertices", names)
        object.__setattr__(self, "stars", tuple(stars))
        object.__setattr__(self, "index", index)

    @classmethod
    def from_stars(cls, vertices: Sequence[str], stars: Sequence[int]) -> "CommutationGraph":
        """Build from closed-neighbourhood masks (must be symmetric, self bit set)."""
        n = len(vertices)
        edges = [
            (vertices[i], vertices[j])
            for i in range(n)
            for j in range(i + 1, n)
            if stars[i] >> j & 1
        ]
        g = cls(vertices, edges)
        if g.stars != tuple(stars):
            raise GraphError("star masks are not symmetric or lack self bits")
        return g

    # -- basic structure -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.vertices)) - 1

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CommutationGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.stars == other.stars

    def __hash__(self) -> int:
        return hash((self.vertices, self.stars))

    def __repr__(self) -> str:
        return f"CommutationGraph(vertices={list(self.vertices)}, edges={self.edges()})"

    def vertex_index(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise GraphError(f"unknown vertex {name!r}") from None

    def adjacent(self, u: str, v: str) -> bool:
        i, j = self.vertex_index(u), self.vertex_index(v)
        return i != j and bool(self.stars[i] >> j & 1)

    def commute(self, i: int, j: int) -> bool:
        """Whether generators ``i`` and ``j`` commute (indices; ``i == j`` allowed)."""
        return bool(self.stars[i] >> j & 1)

    def edges(self) -> list[tuple[str, str]]:
        n = self.n
        return [
            (self.vertices[i], self.vertices[j])
            for i in range(n)
            for j in range(i + 1, n)
            if self.stars[i] >> j & 1
        ]

    def neighbours(self, name: str) -> "GeneratorSet":
        i = self.vertex_index(name)
        return GeneratorSet(self, self.stars[i] & ~(1 << i))

    # -- sets -------------------------------------------------------------

    def set(self, names: Iterable[str] = ()) -> "GeneratorSet":
        mask = 0
        for name in names:
            mask |= 1 << self.vertex_index(name)
        return GeneratorSet(self, mask)

    def all(self) -> "GeneratorSet":
        return GeneratorSet(self, self.full_mask)

    def empty(self) -> "GeneratorSet":
        return GeneratorSet(self, 0)

    def orth_mask(self, mask: int) -> int:
        """Bitmask form of :func:`orthogonal`."""
        out = self.full_mask
        for i in _bits(mask):
            out &= self.stars[i]
        return out

    def induced(self, mask: int) -> "CommutationGraph":
        """Induced subgraph on ``mask``, keeping vertex order."""
        keep = [i for i in range(self.n) if mask >> i & 1]
        pos = {i: k for k, i in enumerate(keep)}
        stars = []
        for i in keep:
            s = 0
            for j in _bits(self.stars[i] & mask):
                s |= 1 << pos[j]
            stars.append(s)
        return CommutationGraph.from_stars([self.vertices[i] for i in keep], stars)

    def to_text(self) -> str:
        lines = ["vertices: " + " ".join(self.vertices)]
        lines += [f"edge {u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GeneratorSet:
    """A set of generators of one particular graph."""

    graph: CommutationGraph
    mask: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.graph.n:
            raise GraphError("generator set out of range for its graph")

    def _check(self, other: "GeneratorSet") -> None:
        if not isinstance(other, GeneratorSet):
            raise TypeError(f"expected GeneratorSet, got {type(other).__name__}")
        if other.graph != self.graph:
            raise GraphError("generator sets belong to different graphs")

    def __iter__(self) -> Iterator[str]:
        return (self.graph.vertices[i] for i in _bits(self.mask))

    def indices(self) -> list[int]:
        return list(_bits(self.mask))

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, name: object) -> bool:
        i = self.graph.index.get(name)  # type: ignore[arg-type]
        return i is not None and bool(self.mask >> i & 1)

    def __or__(self, other: "GeneratorSet") -> "GeneratorSet":
        self._check(other)
        return GeneratorSet(self.graph, self.mask | other.mask)

    def __and__(self, other: "GeneratorSet") -> "GeneratorSet":
        self._check(other)
        return GeneratorSet(self.graph, self.mask & other.mask)

    def __sub__(self, other: "GeneratorSet") -> "GeneratorSet":
        self._check(other)
        return GeneratorSet(self.graph, self.mask & ~other.mask)

    def __le__(self, other: "GeneratorSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "GeneratorSet") -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other: "GeneratorSet") -> bool:
        self._check(other)
        return other <= self

    def __gt__(self, other: "GeneratorSet") -> bool:
        return other < self

    def complement(self) -> "GeneratorSet":
        return GeneratorSet(self.graph, self.graph.full_mask & ~self.mask)

    def names(self) -> list[str]:
        return list(self)

    def __repr__(self) -> str:
        return "{" + ", ".join(self) + "}"


def _bound(g: CommutationGraph, s: GeneratorSet) -> None:
    if s.graph != g:
        raise GraphError("generator set is bound to a different graph")


# -- operations --------------------------------------------------------------


def orthogonal(g: CommutationGraph, Y: GeneratorSet) -> GeneratorSet:
    """Generators commuting with every member of ``Y``; ``orthogonal(g, {}) = X``."""
    _bound(g, Y)
    return GeneratorSet(g, g.orth_mask(Y.mask))


def center(g: CommutationGraph) -> GeneratorSet:
    return GeneratorSet(g, g.orth_mask(g.full_mask))


def non_commutation_components(g: CommutationGraph, S: GeneratorSet) -> list[GeneratorSet]:
    """Connected components of the complement graph restricted to ``S``.

    Components come out ordered by their least vertex index.
    """
    _bound(g, S)
    remaining = S.mask
    comps = []
    while remaining:
        seed = remaining & -remaining
        comp = frontier = seed
        while frontier:
            nxt = 0
            for i in _bits(frontier):
                nxt |= ~g.stars[i]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(GeneratorSet(g, comp))
        remaining &= ~comp
    return comps


def delete_vertex(g: CommutationGraph, x: str) -> CommutationGraph:
    i = g.vertex_index(x)
    return g.induced(g.full_mask & ~(1 << i))


def _fresh_names(taken: Iterable[str], k: int, stem: str = "f") -> list[str]:
    taken = set(taken)
    out, i = [], 1
    while len(out) < k:
        name = f"{stem}{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out


def join_free(g: CommutationGraph, k: int, names: Sequence[str] | None = None) -> CommutationGraph:
    """Graph of ``G x F_k``: ``k`` new pairwise non-adjacent vertices joined to all of X."""
    if k < 1:
        raise GraphError("join_free needs k >= 1")
    if names is None:
        names = _fresh_names(g.vertices, k)
    elif len(names) != k:
        raise GraphError("need exactly k new vertex names")
    edges = g.edges() + [(old, new) for new in names for old in g.vertices]
    return CommutationGraph(list(g.vertices) + list(names), edges)


def family(kind: str, n: int) -> CommutationGraph:
    """Named graph families on ``x1..xn``: ``semibraid``, ``complete``, ``empty``."""
    if n < 1:
        raise GraphError("family size must be positive")
    names = [f"x{i}" for i in range(1, n + 1)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if kind == "semibraid":
        edges = [(names[i], names[j]) for i, j in pairs if j - i >= 2]
    elif kind == "complete":
        edges = [(names[i], names[j]) for i, j in pairs]
    elif kind == "empty":
        edges = []
    else:
        raise GraphError(f"unknown family {kind!r}")
    return CommutationGraph(names, edges)


# -- parsing -----------------------------------------------------------------


def parse_graph(text: str, format: str = "edges") -> CommutationGraph:
    """Parse a graph file.

    ``edges`` format: optional ``vertices: a b c`` header, then ``edge u v``
    or bare ``u v`` lines; ``#`` starts a comment.  ``dot`` accepts the
    undirected ``graph { u -- v; w; }`` subset.
    """
    if format == "edges":
        return _parse_edges(text)
    if format == "dot":
        return _parse_dot(text)
    raise GraphParseError(f"unknown graph format {format!r}")


def _build(declared: list[str] | None, seen: list[str], edges: list[tuple[str, str]]) -> CommutationGraph:
    vertices = declared if declared is not None else seen
    if not vertices:
        raise GraphParseError("empty vertex list")
    for u, v in edges:
        if u == v:
            raise GraphParseError(f"self-loop at {u!r}")
    try:
        return CommutationGraph(vertices, edges)
    except CapacityError:
        raise
    except GraphError as exc:
        raise GraphParseError(str(exc)) from None


def _parse_edges(text: str) -> CommutationGraph:
    declared: list[str] | None = None
    seen: list[str] = []
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            if declared is not None:
                raise GraphParseError(f"line {lineno}: second vertices header")
            declared = line[len("vertices:"):].split()
            if len(set(declared)) != len(declared):
                dup = next(v for v in declared if declared.count(v) > 1)
                raise GraphParseError(f"line {lineno}: duplicate vertex {dup!r}")
            continue
        tokens = line.split()
        if tokens[0] == "edge":
            tokens = tokens[1:]
        if len(tokens) != 2:
            raise GraphParseError(f"line {lineno}: expected an edge, got {raw.strip()!r}")
        u, v = tokens
        if u == v:
            raise GraphParseError(f"line {lineno}: self-loop at {u!r}")
        for name in (u, v):
            if declared is not None and name not in declared:
                raise GraphParseError(f"line {lineno}: undeclared vertex {name!r}")
            if name not in seen:
                seen.append(name)
        edges.append((u, v))
    return _build(declared, seen, edges)


_DOT_HEADER = re.compile(r"^\s*(strict\s+)?graph\b[^{]*\{(?P<body>.*)\}\s*$", re.S)


def _dot_name(tok: str) -> str:
    tok = tok.strip()
    if tok.startswith('"') and tok.endswith('"'):
        tok = tok[1:-1]
    return tok


def _parse_dot(text: str) -> CommutationGraph:
    text = re.sub(r"//[^\n]*|/\*.*?\*/", "", text, flags=re.S)
    text = "\n".join(l for l in text.splitlines() if not l.lstrip().startswith("#"))
    if re.match(r"^\s*(strict\s+)?digraph\b", text):
        raise GraphParseError("directed graphs are not supported")
    m = _DOT_HEADER.match(text)
    if not m:
        raise GraphParseError("expected 'graph { ... }'")
    body = re.sub(r"\[[^\]]*\]", "", m.group("body"))
    seen: list[str] = []
    edges: list[tuple[str, str]] = []
    for stmt in re.split(r"[;\n]", body):
        stmt = stmt.strip()
        if not stmt or re.match(r"^(graph|node|edge)\b", stmt) or "=" in stmt:
            continue
        if "->" in stmt:
            raise GraphParseError("directed edge in undirected graph")
        parts = [_dot_name(p) for p in stmt.split("--")]
        for p in parts:
            if not p:
                raise GraphParseError(f"bad DOT statement {stmt!r}")
            if p not in seen:
                seen.append(p)
        for u, v in zip(parts, parts[1:]):
            if u == v:
                raise GraphParseError(f"self-loop at {u!r}")
            edges.append((u, v))
    return _build(None, seen, edges)
