"""How centraliser dimension changes when a vertex is added to the graph.

Throughout, ``g`` is the full graph, ``x`` one of its vertices and ``gx`` the
graph with ``x`` deleted.  ``Y`` is the set of neighbours of ``x`` (as a set
of ``gx``), ``W`` the remaining vertices of ``gx``, and ``A = G(Y)``.
Parameter systems examined for locks and ties live in ``gx``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .graph import CommutationGraph, GeneratorSet, GraphError, _bits, delete_vertex
from .lattice import build_lattice, cdim

__all__ = [
    "ExtensionReport",
    "LockTieReport",
    "ParameterSystem",
    "ParameterSystemSearch",
    "build_S",
    "classify_extension",
    "enumerate_maximal_parameter_systems",
    "enumerate_parameter_systems",
    "expected_S_length",
    "is_parameter_system",
    "lock_status",
    "lock_tie_report",
    "partition_yw",
    "quick_checks",
    "tie_status",
]

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class ParameterSystem:
    """Generators ``x_1..x_n`` whose centralisers ``C_i = C(x_1..x_i)`` strictly descend.

    ``chain[i]`` is the closed set ``{x_1..x_i}^perp`` generating ``C_i``.
    """

    graph: CommutationGraph
    sequence: tuple[str, ...]
    chain: tuple[int, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.sequence)

    @property
    def closed_sets(self) -> list[GeneratorSet]:
        return [GeneratorSet(self.graph, m) for m in self.chain]

    @property
    def ends_in_center(self) -> bool:
        g = self.graph
        return self.chain[-1] == g.orth_mask(g.full_mask)

    @property
    def extendable(self) -> bool:
        last = self.chain[-1]
        return any(last & s != last for s in self.graph.stars)

    @property
    def maximal(self) -> bool:
        """Whether the chain has maximum possible length, ``cdim`` of the graph."""
        return len(self.sequence) == _cdim_cached(self.graph)


@lru_cache(maxsize=4096)
def _cdim_cached(g: CommutationGraph) -> int:
    return cdim(g)


def is_parameter_system(g: CommutationGraph, seq: Sequence[str]) -> ParameterSystem | None:
    idx = [g.vertex_index(v) for v in seq]
    if len(set(idx)) != len(idx):
        raise GraphError("parameter system has a repeated vertex")
    chain = [g.full_mask]
    for i in idx:
        nxt = chain[-1] & g.stars[i]
        if nxt == chain[-1]:
            return None
        chain.append(nxt)
    return ParameterSystem(g, tuple(seq), tuple(chain))


def partition_yw(g: CommutationGraph, x: str) -> tuple[GeneratorSet, GeneratorSet]:
    """Neighbours ``Y`` of ``x`` and non-neighbours ``W``, both as sets of ``g`` minus ``x``."""
    gx = delete_vertex(g, x)
    Y = gx.set(v for v in g.neighbours(x))
    return Y, Y.complement()


# -- enumeration ---------------------------------------------------------------


class ParameterSystemSearch:
    """Depth-first stream of parameter systems, least vertex first.

    ``length`` fixes the number of generators (``None`` means the maximum,
    ``cdim``).  With ``ends_in_center`` only chains reaching the centre are
    produced.  Branches that cannot reach the target length are pruned using
    lattice heights.  After iteration ``truncated`` tells whether ``cap``
    search nodes were exhausted first.
    """

    def __init__(
        self,
        g: CommutationGraph,
        length: int | None = None,
        ends_in_center: bool = False,
        cap: int = DEFAULT_CAP,
    ):
        if cap <= 0:
            raise ValueError("cap must be positive")
        self.graph = g
        self.length = _cdim_cached(g) if length is None else length
        self.ends_in_center = ends_in_center
        self.cap = cap
        self.truncated = False
        self.nodes = 0
        lat = build_lattice(g)
        self._height = {e.mask: h for e, h in zip(lat.elements, lat.height_of)}

    def __iter__(self) -> Iterator[ParameterSystem]:
        g = self.graph
        target = self.length
        bottom = g.orth_mask(g.full_mask)
        names = g.vertices
        seq: list[int] = []
        chain = [g.full_mask]
        self.nodes = 0
        self.truncated = False

        def dfs() -> Iterator[ParameterSystem]:
            self.nodes += 1
            if self.nodes > self.cap:
                self.truncated = True
                return
            s = chain[-1]
            if len(seq) == target:
                if not self.ends_in_center or s == bottom:
                    yield ParameterSystem(g, tuple(names[i] for i in seq), tuple(chain))
                return
            for i, star in enumerate(g.stars):
                t = s & star
                if t == s or len(seq) + 1 + self._height[t] < target:
                    continue
                seq.append(i)
                chain.append(t)
                yield from dfs()
                seq.pop()
                chain.pop()
                if self.truncated:
                    return

        if target <= self._height[g.full_mask]:
            yield from dfs()


def enumerate_parameter_systems(g, length=None, ends_in_center=False, cap=DEFAULT_CAP):
    return ParameterSystemSearch(g, length, ends_in_center, cap)


def enumerate_maximal_parameter_systems(g: CommutationGraph, cap: int = DEFAULT_CAP) -> ParameterSystemSearch:
    """Parameter systems of maximum length ``cdim(g)``."""
    return ParameterSystemSearch(g, None, False, cap)


# -- locks and ties ------------------------------------------------------------


@dataclass(frozen=True)
class _Context:
    g: CommutationGraph
    x: str
    gx: CommutationGraph
    Y: int
    W: int


def _context(P: ParameterSystem, g: CommutationGraph, x: str) -> _Context:
    gx = delete_vertex(g, x)
    if P.graph != gx:
        raise GraphError(f"parameter system does not live in the graph with {x!r} deleted")
    Y, W = partition_yw(g, x)
    return _Context(g, x, gx, Y.mask, W.mask)


def _right_lock_position(P: ParameterSystem, Y: int) -> int:
    l = 0
    for name in P.sequence:
        if not Y >> P.graph.index[name] & 1:
            break
        l += 1
    return l


def lock_status(P: ParameterSystem, g: CommutationGraph, x: str) -> tuple[int, GeneratorSet] | None:
    """Right-locked position ``l`` and every key ``w`` in ``W`` with ``C_l <= C(w)``.

    ``l`` is the longest prefix of the sequence lying in ``Y`` (possibly 0).
    """
    ctx = _context(P, g, x)
    l = _right_lock_position(P, ctx.Y)
    cl = P.chain[l]
    keys = 0
    for w in _bits(ctx.W):
        if cl & ~ctx.gx.stars[w] == 0:
            keys |= 1 << w
    if not keys:
        return None
    return l, GeneratorSet(ctx.gx, keys)


def tie_status(P: ParameterSystem, g: CommutationGraph, x: str) -> tuple[int, frozenset[str]] | None:
    """Position ``k`` (largest with ``C_k`` not inside ``A``) and the tie types that hold."""
    ctx = _context(P, g, x)
    Y, W = ctx.Y, ctx.W
    chain = P.chain
    n = len(P)
    outside = [i for i, c in enumerate(chain) if c & ~Y]
    if not outside:
        return None
    k = outside[-1]
    types = set()
    if k < n and chain[k] & ~chain[k + 1] & Y:
        types.add("T1a")
    if k == n and chain[n] & W:
        types.add("T1b")
    idx = [P.graph.index[v] for v in P.sequence]
    if k < n and all(Y >> i & 1 for i in idx[:k]) and W >> idx[k] & 1:
        types.add("T2")
    if not types:
        return None
    return k, frozenset(types)


@dataclass(frozen=True)
class LockTieReport:
    vertex: str
    Y: GeneratorSet
    W: GeneratorSet
    locked_at: tuple[int, GeneratorSet] | None
    tied_at: tuple[int, frozenset[str]] | None

    @property
    def locked(self) -> bool:
        return self.locked_at is not None

    @property
    def right_locked(self) -> bool:
        # lock positions are always reported at the longest Y-prefix
        return self.locked

    @property
    def tied(self) -> bool:
        return self.tied_at is not None

    @property
    def t1_exclusive(self) -> bool:
        if self.tied_at is None:
            return False
        types = self.tied_at[1]
        return bool(types & {"T1a", "T1b"}) and "T2" not in types

    @property
    def locked_and_t1_exclusive(self) -> bool:
        return self.locked and self.t1_exclusive

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "Y": self.Y.names(),
            "W": self.W.names(),
            "locked_at": None
            if self.locked_at is None
            else {"l": self.locked_at[0], "keys": self.locked_at[1].names()},
            "right_locked": self.right_locked,
            "tied_at": None
            if self.tied_at is None
            else {"k": self.tied_at[0], "types": sorted(self.tied_at[1])},
        }


def lock_tie_report(P: ParameterSystem, g: CommutationGraph, x: str) -> LockTieReport:
    Y, W = partition_yw(g, x)
    return LockTieReport(x, Y, W, lock_status(P, g, x), tie_status(P, g, x))


def build_S(
    Q: ParameterSystem,
    g: CommutationGraph,
    x: str,
    report: LockTieReport | None = None,
    amended: bool = False,
) -> ParameterSystem:
    """Lift a parameter system of ``gx`` to one of ``g``.

    A lock at ``l`` with key ``w`` inserts ``w`` after position ``l``; a tie at
    ``k`` inserts ``x`` after position ``k``.  Both happen when the system is
    locked and tied of type T1 with ``k != l``, or with ``k = l = n`` and type
    T1b.  The least key is used.

    With ``amended`` a system locked and tied of types T1a and T2 at
    ``k = l < n`` gets both insertions, ``x`` then ``w``, instead of ``x`` alone.
    """
    if report is None:
        report = lock_tie_report(Q, g, x)
    seq = list(Q.sequence)
    n = len(seq)
    lock, tie = report.locked_at, report.tied_at
    t1 = tie is not None and bool(tie[1] & {"T1a", "T1b"})
    t2 = tie is not None and "T2" in tie[1]
    if lock is not None:
        l, keys = lock
        w = next(iter(keys))
    if amended and lock is not None and t1 and t2 and tie[0] == l < n:
        new = seq[:l] + [x, w] + seq[l:]
    elif lock is not None and t1 and (tie[0] < l or (tie[0] == l == n and "T1b" in tie[1])):
        k = tie[0]
        new = seq[:k] + [x] + seq[k:l] + [w] + seq[l:]
    elif lock is not None and t1 and tie[0] > l:
        k = tie[0]
        new = seq[:l] + [w] + seq[l:k] + [x] + seq[k:]
    elif lock is not None and tie is None:
        new = seq[:l] + [w] + seq[l:]
    elif (tie is not None and lock is None and t1) or t2:
        k = tie[0]
        new = seq[:k] + [x] + seq[k:]
    elif lock is None and tie is None:
        new = seq
    else:  # pragma: no cover - the case table is exhaustive
        raise GraphError("no construction case applies")
    S = is_parameter_system(g, new)
    if S is None:
        raise GraphError(f"lifted sequence {new} is not a parameter system")
    return S


def expected_S_length(Q: ParameterSystem, report: LockTieReport, amended: bool = False) -> int:
    """Length of :func:`build_S` prescribed by the case table."""
    n = len(Q)
    lock, tie = report.locked_at, report.tied_at
    if lock is not None and tie is not None and report.t1_exclusive:
        return n + 2
    if amended and _locked_t1(report):
        return n + 2
    if lock is not None or tie is not None:
        return n + 1
    return n


# -- corollary checks and classification ----------------------------------------


def quick_checks(g: CommutationGraph, x: str) -> set[str]:
    """Sufficient graph-level conditions for the size of the dimension jump.

    ``1a``/``1b`` predict a jump of two, ``2a``/``2b`` no jump.  ``1b`` is
    only tested when ``x`` is not central, the standing assumption under
    which it holds.  ``2b`` searches ``S`` among subsets of ``X - {x}``.
    """
    xi = g.vertex_index(x)
    gx = delete_vertex(g, x)
    Y, W = partition_yw(g, x)
    hits = set()
    zg = {g.vertices[i] for i in _bits(g.orth_mask(g.full_mask))}
    zgx = {gx.vertices[i] for i in _bits(gx.orth_mask(gx.full_mask))}
    if zg < zgx:
        hits.add("1a")
    x_central = g.stars[xi] == g.full_mask
    if not x_central and _cdim_cached(gx.induced(Y.mask)) == _cdim_cached(gx):
        hits.add("1b")
    product = all(gx.stars[y] & W.mask == W.mask for y in _bits(Y.mask))
    if product:
        B = gx.induced(W.mask)
        if B.orth_mask(B.full_mask) == 0:
            hits.add("2a")
    target = g.stars[xi]
    S = 0
    for i in range(g.n):
        if i != xi and target & ~g.stars[i] == 0:
            S |= 1 << i
    if g.orth_mask(S) == target:
        hits.add("2b")
    return hits


@dataclass
class ExtensionReport:
    """Dimension jump for restoring ``vertex`` and the parameter systems explaining it.

    ``predicted_delta`` applies the locked/tied characterisation with the
    T1-exclusive condition; ``amended_predicted_delta`` counts a system that
    is locked and tied of type T1 as a double jump even when it is also tied
    of type T2.  Either prediction is ``None`` when a capped search ran out
    before it could be decided.
    """

    vertex: str
    cdim_G: int
    cdim_Gx: int
    delta: int
    theorem_clause: str
    witnesses: list[tuple[str, ParameterSystem, LockTieReport]]
    corollary_hits: set[str]
    predicted_delta: int | None
    amended_predicted_delta: int | None
    witnesses_complete: bool

    @property
    def consistent(self) -> bool | None:
        return None if self.predicted_delta is None else self.predicted_delta == self.delta

    @property
    def amended_consistent(self) -> bool | None:
        if self.amended_predicted_delta is None:
            return None
        return self.amended_predicted_delta == self.delta

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "cdim_G": self.cdim_G,
            "cdim_Gx": self.cdim_Gx,
            "delta": self.delta,
            "theorem_clause": self.theorem_clause,
            "corollary_hits": sorted(self.corollary_hits),
            "witnesses": [
                {"kind": kind, "sequence": list(P.sequence), "report": r.to_dict()}
                for kind, P, r in self.witnesses
            ],
            "predicted_delta": self.predicted_delta,
            "amended_predicted_delta": self.amended_predicted_delta,
            "witnesses_complete": self.witnesses_complete,
        }


def _locked_t1(r: LockTieReport) -> bool:
    return r.locked and r.tied and bool(r.tied_at[1] & {"T1a", "T1b"})


def _predict(found: set[str], complete: bool, double: str, single: tuple[str, ...]) -> int | None:
    if double in found:
        return 2
    if not complete:
        return None
    return 1 if any(k in found for k in single) else 0


def classify_extension(g: CommutationGraph, x: str, cap: int = DEFAULT_CAP) -> ExtensionReport:
    """Exact dimension jump for restoring ``x`` plus witnesses explaining it.

    The jump always comes from the two lattices.  Witnesses are searched
    among maximum-length parameter systems of ``gx`` and among centre-ending
    systems one shorter, each search limited to ``cap`` nodes.  Witness kinds:

    ``clause1``      maximal, locked and tied T1-exclusive
    ``t1_and_t2``    maximal, locked and tied of types T1 and T2 together
    ``clause2a``     maximal, locked or tied, but not locked-and-T1-exclusive
    ``clause2a_amended``  maximal, locked or tied, but not locked-and-T1
    ``clause2b`` / ``clause2b_amended``  the short centre-ending variants
    """
    g.vertex_index(x)
    gx = delete_vertex(g, x)
    d_g, d_gx = _cdim_cached(g), _cdim_cached(gx)
    delta = d_g - d_gx

    found: dict[str, tuple[ParameterSystem, LockTieReport]] = {}
    complete = True
    search = enumerate_parameter_systems(gx, d_gx, cap=cap)
    for P in search:
        r = lock_tie_report(P, g, x)
        if r.locked_and_t1_exclusive:
            found.setdefault("clause1", (P, r))
        elif _locked_t1(r):
            found.setdefault("t1_and_t2", (P, r))
        if (r.locked or r.tied) and not r.locked_and_t1_exclusive:
            found.setdefault("clause2a", (P, r))
        if (r.locked or r.tied) and not _locked_t1(r):
            found.setdefault("clause2a_amended", (P, r))
    complete &= not search.truncated
    if d_gx >= 1:
        search = enumerate_parameter_systems(gx, d_gx - 1, ends_in_center=True, cap=cap)
        for P in search:
            r = lock_tie_report(P, g, x)
            if r.locked_and_t1_exclusive:
                found.setdefault("clause2b", (P, r))
            if _locked_t1(r):
                found.setdefault("clause2b_amended", (P, r))
            if "clause2b" in found:
                break
        else:
            complete &= not search.truncated

    predicted = _predict(set(found), complete, "clause1", ("clause2a", "clause2b"))
    amended_double = "clause1" if "clause1" in found else "t1_and_t2"
    amended = _predict(set(found), complete, amended_double, ("clause2a_amended", "clause2b_amended"))

    if delta == 2:
        clause = "clause1"
    elif delta == 1:
        clause = "clause2b" if "clause2a" not in found and "clause2b" in found else "clause2a"
    else:
        clause = "clause3"
    witnesses = [(kind, P, r) for kind, (P, r) in sorted(found.items())]
    return ExtensionReport(
        vertex=x,
        cdim_G=d_g,
        cdim_Gx=d_gx,
        delta=delta,
        theorem_clause=clause,
        witnesses=witnesses,
        corollary_hits=quick_checks(g, x),
        predicted_delta=predicted,
        amended_predicted_delta=amended,
        witnesses_complete=complete,
    )
