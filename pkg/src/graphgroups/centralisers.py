"""Block decompositions, roots and centralisers of single elements.

For a cyclically minimal ``w`` with blocks ``w_1 .. w_k`` and block roots
``v_i``, the centraliser is ``<v_1> x ... x <v_k> x G(A(w))``; for an
arbitrary element it is the conjugate of that by the cyclic-reduction
conjugator.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .graph import CommutationGraph, GeneratorSet, GraphError, non_commutation_components
from .words import (
    NormalForm,
    WordError,
    conjugate,
    cyclic_reduce,
    identity,
    invert,
    is_cyclically_minimal,
    left_divisors,
    multiply,
    normalize,
    power,
    retract,
)

__all__ = [
    "BlockDecomposition",
    "CentraliserDescription",
    "A_of",
    "block_decomposition",
    "block_root_exponent",
    "centraliser_of_element",
    "commutes",
    "root",
]


@dataclass(frozen=True)
class BlockDecomposition:
    """``g = conjugator^-1 (blocks[0] ... blocks[-1]) conjugator``."""

    conjugator: NormalForm
    blocks: tuple[NormalForm, ...]

    @property
    def core(self) -> NormalForm:
        g = self.conjugator.graph
        out = identity(g)
        for b in self.blocks:
            out = multiply(out, b)
        return out

    def element(self) -> NormalForm:
        return conjugate(self.core, self.conjugator)


@dataclass(frozen=True)
class CentraliserDescription:
    """The subgroup ``[<v_1> x ... x <v_k> x G(abelianizing_set)]^conjugator``.

    ``cyclic_parts`` pairs each block root ``v_i`` with the exponent ``m_i``
    such that ``v_i^m_i`` is the corresponding block.
    """

    conjugator: NormalForm
    cyclic_parts: tuple[tuple[NormalForm, int], ...]
    abelianizing_set: GeneratorSet

    @property
    def whole_group(self) -> bool:
        return not self.cyclic_parts and self.abelianizing_set.mask == self.abelianizing_set.graph.full_mask

    @property
    def roots(self) -> list[NormalForm]:
        return [v for v, _ in self.cyclic_parts]

    def element(self, exponents: Iterable[int], tail: NormalForm) -> NormalForm:
        """``z^-1 (prod v_i^a_i * tail) z`` for ``tail`` in ``G(A)``."""
        exponents = list(exponents)
        if len(exponents) != len(self.cyclic_parts):
            raise ValueError("one exponent per cyclic part")
        if tail.alpha_mask & ~self.abelianizing_set.mask:
            raise ValueError("tail must be a word in the abelianizing set")
        out = identity(self.conjugator.graph)
        for (v, _), a in zip(self.cyclic_parts, exponents):
            out = multiply(out, power(v, a))
        return conjugate(multiply(out, tail), self.conjugator)

    def decompose(self, h: NormalForm) -> tuple[list[int], NormalForm] | None:
        """Exponents and tail writing ``h`` in the structural form, or None.

        The blocks live on disjoint, pairwise commuting generator sets, so
        the retraction onto ``alpha(v_i)`` isolates the ``<v_i>`` factor.
        Exponents are searched in ``|a| <= l(projection) / l(v_i)``.
        """
        g = h.graph
        core = conjugate(h, invert(self.conjugator))
        exps = []
        rebuilt = identity(g)
        for v, _ in self.cyclic_parts:
            proj = retract(core, GeneratorSet(g, v.alpha_mask))
            bound = len(proj) // len(v)
            found = None
            for a in range(-bound, bound + 1):
                if power(v, a) == proj:
                    found = a
                    break
            if found is None:
                return None
            exps.append(found)
            rebuilt = multiply(rebuilt, power(v, found))
        tail = multiply(invert(rebuilt), core)
        if tail.alpha_mask & ~self.abelianizing_set.mask:
            return None
        return exps, tail

    def __contains__(self, h: NormalForm) -> bool:
        return self.decompose(h) is not None


def A_of(g: CommutationGraph, S: Iterable[NormalForm]) -> GeneratorSet:
    """Generators outside ``alpha(S)`` commuting with every generator in it."""
    support = 0
    for w in S:
        if w.graph != g:
            raise GraphError("word belongs to a different graph")
        support |= w.alpha_mask
    return GeneratorSet(g, g.orth_mask(support) & ~support)


def block_decomposition(w: NormalForm) -> BlockDecomposition:
    g = w.graph
    u, core = cyclic_reduce(w)
    blocks = []
    for comp in non_commutation_components(g, GeneratorSet(g, core.alpha_mask)):
        blocks.append(normalize(g, [l for l in core.letters if comp.mask >> l[0] & 1]))
    return BlockDecomposition(u, tuple(blocks))


def _divisors_desc(n: int) -> list[int]:
    return [m for m in range(n, 0, -1) if n % m == 0]


def block_root_exponent(w: NormalForm) -> tuple[NormalForm, int]:
    """Root ``v`` and exponent ``m`` with ``v^m = w`` for a cyclically minimal block."""
    g = w.graph
    if w.is_identity or not is_cyclically_minimal(w):
        raise WordError(f"{w} is not a non-trivial cyclically minimal element")
    if len(non_commutation_components(g, GeneratorSet(g, w.alpha_mask))) != 1:
        raise WordError(f"{w} is not a block")
    n = len(w)
    divs = left_divisors(w)
    for m in _divisors_desc(n):
        for v in divs:
            if len(v) == n // m and power(v, m) == w:
                return v, m
    raise AssertionError("unreachable: m = 1 always succeeds")  # pragma: no cover


def root(w: NormalForm) -> tuple[NormalForm, int]:
    """``(r, m)`` with ``r^m = w`` and ``m`` maximal."""
    if w.is_identity:
        raise WordError("the identity has no root")
    dec = block_decomposition(w)
    parts = [block_root_exponent(b) for b in dec.blocks]
    m = 0
    for _, mi in parts:
        m = gcd(m, mi)
    r = identity(w.graph)
    for v, mi in parts:
        r = multiply(r, power(v, mi // m))
    return conjugate(r, dec.conjugator), m


def centraliser_of_element(w: NormalForm) -> CentraliserDescription:
    """Structural description of ``C(w)``; the identity gives the whole group."""
    g = w.graph
    if w.is_identity:
        return CentraliserDescription(identity(g), (), g.all())
    dec = block_decomposition(w)
    parts = tuple(block_root_exponent(b) for b in dec.blocks)
    return CentraliserDescription(dec.conjugator, parts, A_of(g, [dec.core]))


def commutes(u: NormalForm, v: NormalForm) -> bool:
    if u.graph != v.graph:
        raise GraphError("words belong to different graphs")
    return multiply(multiply(invert(u), invert(v)), multiply(u, v)).is_identity
