"""The lattice of canonical centralisers.

For ``Y`` a set of generators, ``C(Y)`` is the parabolic subgroup generated
by ``Y^perp``, so canonical centralisers correspond one-to-one with the
orthogonally closed vertex sets.  Those sets are closed under intersection
and are exactly the intersections of vertex stars; their height equals the
centraliser dimension of the group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .graph import CommutationGraph, GeneratorSet, GraphError, _bits

__all__ = [
    "BRUTE_FORCE_LIMIT",
    "CanonicalLattice",
    "ClosedSet",
    "brute_force_cdim",
    "build_lattice",
    "cdim",
    "hasse_dot",
    "max_chain",
]

BRUTE_FORCE_LIMIT = 12


@dataclass(frozen=True)
class ClosedSet:
    """An orthogonally closed set together with one ``Y`` such that ``Y^perp == carrier``."""

    carrier: GeneratorSet
    one_witness: GeneratorSet

    @property
    def mask(self) -> int:
        return self.carrier.mask

    def __repr__(self) -> str:
        return f"ClosedSet({self.carrier!r})"


def closure_family(stars: tuple[int, ...], full: int) -> dict[int, int]:
    """All intersections of stars, mapped to a witness mask ``Y`` with ``Y^perp`` equal to them.

    The witness is built greedily, so it uses least vertex indices first.
    """
    family = {full: 0}
    frontier = [full]
    while frontier:
        nxt = []
        for s in frontier:
            wit = family[s]
            for i, star in enumerate(stars):
                t = s & star
                if t not in family:
                    family[t] = wit | (1 << i)
                    nxt.append(t)
        frontier = nxt
    return family


def _heights(masks: list[int]) -> list[int]:
    """Longest strictly descending chain from each mask to the least one, by inclusion."""
    order = sorted(range(len(masks)), key=lambda i: bin(masks[i]).count("1"))
    heights = [0] * len(masks)
    if len(masks) > 400:
        arr = np.array(masks, dtype=np.uint64)
        h = np.zeros(len(masks), dtype=np.int64)
        for i in order:
            m = np.uint64(masks[i])
            below = ((arr & ~m) == 0) & (arr != m)
            if below.any():
                h[i] = h[below].max() + 1
        return [int(v) for v in h]
    done: list[int] = []
    for i in order:
        m = masks[i]
        best = -1
        for j in done:
            if masks[j] & ~m == 0 and heights[j] > best:
                best = heights[j]
        heights[i] = best + 1
        done.append(i)
    return heights


def lattice_height(stars: tuple[int, ...], full: int) -> int:
    """Height of the canonical lattice, from raw star masks."""
    masks = list(closure_family(stars, full))
    return max(_heights(masks))


@dataclass(frozen=True, eq=False)
class CanonicalLattice:
    """Orthogonally closed vertex sets of a graph ordered by inclusion.

    ``elements`` are sorted by decreasing size, then by mask, so the top
    (all of X) comes first and the bottom (the centre) comes last.
    """

    graph: CommutationGraph
    elements: tuple[ClosedSet, ...]
    height_of: tuple[int, ...]
    _pos: dict[int, int] = field(repr=False)

    @property
    def top(self) -> int:
        return self._pos[self.graph.full_mask]

    @property
    def bottom(self) -> int:
        return self._pos[self.graph.orth_mask(self.graph.full_mask)]

    @property
    def height(self) -> int:
        return self.height_of[self.top]

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, s: ClosedSet | GeneratorSet | int) -> int:
        mask = s if isinstance(s, int) else s.mask
        if isinstance(s, (ClosedSet, GeneratorSet)):
            carrier = s.carrier if isinstance(s, ClosedSet) else s
            if carrier.graph != self.graph:
                raise GraphError("set belongs to a different graph")
        try:
            return self._pos[mask]
        except KeyError:
            raise GraphError(f"{s!r} is not an element of this lattice") from None

    def element(self, s: ClosedSet | GeneratorSet | int) -> ClosedSet:
        return self.elements[self.index_of(s)]

    def contains(self, s: GeneratorSet | int) -> bool:
        mask = s if isinstance(s, int) else s.mask
        return mask in self._pos

    @cached_property
    def hasse(self) -> tuple[tuple[int, int], ...]:
        """Covering pairs ``(upper, lower)`` as element indices.

        Every cover ``S > T`` has ``T = S & star(x)`` for some vertex ``x``,
        so candidates come from single stars and are then filtered.
        """
        stars = self.graph.stars
        pairs = []
        for i, e in enumerate(self.elements):
            s = e.mask
            cands = {s & st for st in stars if s & st != s}
            for t in cands:
                if not any(u != t and t & ~u == 0 for u in cands):
                    pairs.append((i, self._pos[t]))
        pairs.sort()
        return tuple(pairs)


def build_lattice(g: CommutationGraph) -> CanonicalLattice:
    family = closure_family(g.stars, g.full_mask)
    masks = sorted(family, key=lambda m: (-bin(m).count("1"), m))
    heights = _heights(masks)
    bottom = g.orth_mask(g.full_mask)
    base = heights[masks.index(bottom)]
    elements = tuple(ClosedSet(GeneratorSet(g, m), GeneratorSet(g, family[m])) for m in masks)
    return CanonicalLattice(
        graph=g,
        elements=elements,
        height_of=tuple(h - base for h in heights),
        _pos={m: i for i, m in enumerate(masks)},
    )


def meet(lat: CanonicalLattice, a: ClosedSet, b: ClosedSet) -> ClosedSet:
    lat.index_of(a), lat.index_of(b)
    return lat.element(a.mask & b.mask)


def join(lat: CanonicalLattice, a: ClosedSet, b: ClosedSet) -> ClosedSet:
    """Least closed set containing both; the double orthogonal of the union."""
    lat.index_of(a), lat.index_of(b)
    g = lat.graph
    return lat.element(g.orth_mask(g.orth_mask(a.mask | b.mask)))


def cdim(g: CommutationGraph) -> int:
    """Centraliser dimension: the height of the canonical lattice."""
    return lattice_height(g.stars, g.full_mask)


def max_chain(g: CommutationGraph) -> tuple[list[GeneratorSet], list[str]]:
    """A longest chain ``X = S_0 > ... > S_d = centre`` realised by generators.

    ``S_i = {x_1..x_i}^perp``; at each step the least vertex that keeps the
    remaining height maximal is chosen.
    """
    lat = build_lattice(g)
    pos, h = lat._pos, lat.height_of
    s = g.full_mask
    chain, witness = [s], []
    while h[pos[s]] > 0:
        for i, star in enumerate(g.stars):
            t = s & star
            if t != s and h[pos[t]] == h[pos[s]] - 1:
                chain.append(t)
                witness.append(g.vertices[i])
                s = t
                break
        else:  # pragma: no cover - covers are always single-star steps
            raise AssertionError("no generator realises a cover")
    return [GeneratorSet(g, m) for m in chain], witness


def _quote(s: str) -> str:
    return '"{}"'.format(s.replace('"', r'\"'))


def hasse_dot(lat: CanonicalLattice) -> str:
    """Hasse diagram as a DOT digraph, edges pointing from each set to the sets it covers."""
    lines = ["digraph lattice {", "  rankdir=TB;"]
    for i, e in enumerate(lat.elements):
        label = "{" + ", ".join(e.carrier.names()) + "}"
        lines.append(f"  n{i} [label={_quote(label)}];")
    for upper, lower in lat.hasse:
        lines.append(f"  n{upper} -> n{lower};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def brute_force_cdim(g: CommutationGraph) -> int:
    """Independent oracle: longest generator-driven descent, memoised on the current set."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise GraphError(f"brute force limited to {BRUTE_FORCE_LIMIT} vertices")
    stars = g.stars
    memo: dict[int, int] = {}

    def descend(s: int) -> int:
        if s in memo:
            return memo[s]
        best = 0
        for star in stars:
            t = s & star
            if t != s:
                best = max(best, 1 + descend(t))
        memo[s] = best
        return best

    return descend(g.full_mask)
