"""Exhaustive and sampled scans over small labelled graphs."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .graph import CommutationGraph, delete_vertex, join_free
from .lattice import brute_force_cdim, lattice_height

__all__ = ["CHECKS", "ScanResult", "all_graphs", "random_graphs", "run_scan", "fast_cdim"]

EXHAUSTIVE_LIMIT = 6


def _names(n: int) -> list[str]:
    return [f"x{i}" for i in range(1, n + 1)]


def graph_from_code(n: int, code: int) -> CommutationGraph:
    """Graph whose edge ``(i, j)``, in lexicographic pair order, is present iff bit ``b`` of ``code`` is."""
    names = _names(n)
    pairs = itertools.combinations(range(n), 2)
    return CommutationGraph(names, [(names[i], names[j]) for b, (i, j) in enumerate(pairs) if code >> b & 1])


def all_graphs(n: int) -> Iterator[CommutationGraph]:
    """Every labelled simple graph on ``x1..xn``, ``2^(n choose 2)`` of them."""
    for code in range(1 << (n * (n - 1) // 2)):
        yield graph_from_code(n, code)


def random_graphs(n: int, count: int, seed: int, p: float = 0.5) -> Iterator[CommutationGraph]:
    rng = random.Random(seed)
    m = n * (n - 1) // 2
    for _ in range(count):
        code = sum(1 << b for b in range(m) if rng.random() < p)
        yield graph_from_code(n, code)


_cache: dict[tuple[int, ...], int] = {}


def fast_cdim(g: CommutationGraph) -> int:
    """``cdim`` memoised on the star masks; scans revisit many small graphs."""
    key = g.stars
    val = _cache.get(key)
    if val is None:
        if len(_cache) > 200_000:
            _cache.clear()
        val = _cache[key] = lattice_height(g.stars, g.full_mask)
    return val


def _graph_code(g: CommutationGraph) -> str:
    return g.to_text().strip().replace("\n", "; ")


# Each check returns None when the property holds, else a short description.

def _check_forbidden(g: CommutationGraph) -> str | None:
    d = fast_cdim(g)
    return f"cdim = {d}" if d in (1, 3) else None


def _check_delta(g: CommutationGraph) -> str | None:
    d = fast_cdim(g)
    for x in g.vertices:
        delta = d - fast_cdim(delete_vertex(g, x))
        if not 0 <= delta <= 2:
            return f"vertex {x}: delta = {delta}"
    return None


def _check_oracle(g: CommutationGraph) -> str | None:
    d, b = fast_cdim(g), brute_force_cdim(g)
    return None if d == b else f"cdim = {d}, brute force = {b}"


def _check_joinf2(g: CommutationGraph) -> str | None:
    d, e = fast_cdim(g), fast_cdim(join_free(g, 2))
    return None if e == d + 2 else f"cdim = {d}, cdim(G x F2) = {e}"


CHECKS: dict[str, Callable[[CommutationGraph], str | None]] = {
    "forbidden-dims": _check_forbidden,
    "delta-bound": _check_delta,
    "oracle": _check_oracle,
    "joinf2": _check_joinf2,
}


@dataclass
class ScanResult:
    check: str
    max_n: int
    seed: int
    graphs: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    histogram: Counter = field(default_factory=Counter)
    sampled_sizes: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "max_n": self.max_n,
            "seed": self.seed,
            "graphs": self.graphs,
            "exhaustive_up_to": min(self.max_n, EXHAUSTIVE_LIMIT),
            "sampled_sizes": self.sampled_sizes,
            "counterexample_count": len(self.counterexamples),
            "counterexamples": self.counterexamples[:20],
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def run_scan(max_n: int, check: str, samples: int = 500, seed: int = 0, min_n: int = 1) -> ScanResult:
    """Run ``check`` on every graph with ``min_n <= n <= max_n`` vertices.

    Sizes up to six are exhaustive; larger sizes use ``samples`` random graphs
    drawn with the given seed (offset by the size).
    """
    try:
        fn = CHECKS[check]
    except KeyError:
        raise ValueError(f"unknown check {check!r}; choose from {sorted(CHECKS)}") from None
    res = ScanResult(check, max_n, seed)
    for n in range(min_n, max_n + 1):
        if n <= EXHAUSTIVE_LIMIT:
            graphs = all_graphs(n)
        else:
            res.sampled_sizes.append(n)
            graphs = random_graphs(n, samples, seed + n)
        for g in graphs:
            res.graphs += 1
            res.histogram[fast_cdim(g)] += 1
            problem = fn(g)
            if problem is not None:
                res.counterexamples.append({"graph": _graph_code(g), "problem": problem})
    return res
