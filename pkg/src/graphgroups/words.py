"""Group elements as canonical minimal words.

A raw word is a sequence of letters ``(generator_index, sign)``.  It is
first freely reduced modulo commutation (a letter cancels against an earlier
inverse when every letter in between commutes with it), then linearised by
repeatedly emitting the least letter that can be moved to the front.  Two
raw words give the same :class:`NormalForm` exactly when they represent the
same group element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .graph import CommutationGraph, GeneratorSet, GraphError

__all__ = [
    "Letter",
    "NormalForm",
    "WordError",
    "alpha",
    "conjugate",
    "cyclic_permutations",
    "cyclic_reduce",
    "factor_split",
    "gcd_left",
    "gcd_left_parabolic",
    "gcd_right",
    "gcd_right_parabolic",
    "identity",
    "invert",
    "is_cyclically_minimal",
    "is_left_divisor",
    "is_right_divisor",
    "left_divisor_letters",
    "left_divisors",
    "length",
    "multiply",
    "normalize",
    "parse_word",
    "power",
    "retract",
    "right_divisor_letters",
]

Letter = tuple[int, int]


class WordError(ValueError):
    pass


def _key(letter: Letter) -> tuple[int, int]:
    # vertex index first, then + before -
    return (letter[0], 0 if letter[1] > 0 else 1)


def _reduce(g: CommutationGraph, word: Iterable[Letter]) -> list[Letter]:
    stars = g.stars
    out: list[Letter] = []
    for gen, sign in word:
        star = stars[gen]
        cancelled = False
        for q in range(len(out) - 1, -1, -1):
            h, s = out[q]
            if h == gen:
                if s == -sign:
                    del out[q]
                    cancelled = True
                break
            if not star >> h & 1:
                break
        if not cancelled:
            out.append((gen, sign))
    return out


def _available(g: CommutationGraph, word: Sequence[Letter]) -> list[int]:
    """Positions whose letter can be moved to the front (first occurrence of its generator)."""
    stars = g.stars
    before = 0
    pos = []
    for p, (gen, _) in enumerate(word):
        bit = 1 << gen
        if not before & bit and before & ~stars[gen] == 0:
            pos.append(p)
        before |= bit
    return pos


def _available_right(g: CommutationGraph, word: Sequence[Letter]) -> list[int]:
    stars = g.stars
    after = 0
    pos = []
    for p in range(len(word) - 1, -1, -1):
        gen = word[p][0]
        bit = 1 << gen
        if not after & bit and after & ~stars[gen] == 0:
            pos.append(p)
        after |= bit
    return pos


def _linearise(g: CommutationGraph, word: list[Letter]) -> tuple[Letter, ...]:
    rest = list(word)
    out = []
    while rest:
        p = min(_available(g, rest), key=lambda q: _key(rest[q]))
        out.append(rest.pop(p))
    return tuple(out)


@dataclass(frozen=True)
class NormalForm:
    """A group element, stored as its canonical minimal word."""

    graph: CommutationGraph
    letters: tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __str__(self) -> str:
        return format_letters(self.graph, self.letters)

    def __repr__(self) -> str:
        return f"NormalForm({str(self) or '1'!r})"

    def __mul__(self, other: "NormalForm") -> "NormalForm":
        return multiply(self, other)

    def __pow__(self, n: int) -> "NormalForm":
        return power(self, n)

    def inverse(self) -> "NormalForm":
        return invert(self)

    @cached_property
    def alpha_mask(self) -> int:
        m = 0
        for gen, _ in self.letters:
            m |= 1 << gen
        return m

    @property
    def is_identity(self) -> bool:
        return not self.letters


def _same_graph(*words: NormalForm) -> CommutationGraph:
    g = words[0].graph
    for w in words[1:]:
        if w.graph != g:
            raise GraphError("words belong to different graphs")
    return g


def format_letters(g: CommutationGraph, letters: Iterable[Letter]) -> str:
    return " ".join(g.vertices[i] + ("" if s > 0 else "^-1") for i, s in letters)


def parse_word(g: CommutationGraph, text: str) -> list[Letter]:
    """Parse ``x1 x3^-1 x1`` into raw letters; ``1`` or empty text is the identity."""
    out = []
    for tok in text.split():
        if tok == "1":
            continue
        sign = 1
        if tok.endswith("^-1"):
            tok, sign = tok[:-3], -1
        elif tok.endswith("^1"):
            tok = tok[:-2]
        if tok not in g.index:
            raise WordError(f"unknown generator {tok!r}")
        out.append((g.index[tok], sign))
    return out


def normalize(g: CommutationGraph, word: Iterable[Letter] | str) -> NormalForm:
    if isinstance(word, str):
        word = parse_word(g, word)
    word = list(word)
    for gen, sign in word:
        if not 0 <= gen < g.n or sign not in (1, -1):
            raise WordError(f"invalid letter {(gen, sign)!r}")
    return NormalForm(g, _linearise(g, _reduce(g, word)))


def identity(g: CommutationGraph) -> NormalForm:
    return NormalForm(g, ())


def multiply(u: NormalForm, v: NormalForm) -> NormalForm:
    g = _same_graph(u, v)
    return normalize(g, u.letters + v.letters)


def _inv_letters(letters: Sequence[Letter]) -> list[Letter]:
    return [(gen, -s) for gen, s in reversed(letters)]


def invert(u: NormalForm) -> NormalForm:
    return normalize(u.graph, _inv_letters(u.letters))


def conjugate(w: NormalForm, g: NormalForm) -> NormalForm:
    """``g^-1 w g``."""
    graph = _same_graph(w, g)
    return normalize(graph, _inv_letters(g.letters) + list(w.letters) + list(g.letters))


def power(u: NormalForm, n: int) -> NormalForm:
    base = u.letters if n >= 0 else tuple(_inv_letters(u.letters))
    return normalize(u.graph, base * abs(n))


def alpha(u: NormalForm) -> GeneratorSet:
    return GeneratorSet(u.graph, u.alpha_mask)


def length(u: NormalForm) -> int:
    return len(u.letters)


def retract(u: NormalForm, Y: GeneratorSet) -> NormalForm:
    """Image under the retraction ``G -> G(Y)`` that kills generators outside ``Y``."""
    if Y.graph != u.graph:
        raise GraphError("generator set belongs to a different graph")
    return normalize(u.graph, [l for l in u.letters if Y.mask >> l[0] & 1])


# -- divisors ----------------------------------------------------------------


def left_divisor_letters(u: NormalForm) -> set[Letter]:
    return {u.letters[p] for p in _available(u.graph, u.letters)}


def right_divisor_letters(u: NormalForm) -> set[Letter]:
    return {u.letters[p] for p in _available_right(u.graph, u.letters)}


def _strip_left(g: CommutationGraph, letters: Sequence[Letter], letter: Letter) -> list[Letter]:
    for p in _available(g, letters):
        if letters[p] == letter:
            return list(letters[:p]) + list(letters[p + 1:])
    raise WordError("letter is not a left divisor")


def _strip_right(g: CommutationGraph, letters: Sequence[Letter], letter: Letter) -> list[Letter]:
    for p in _available_right(g, letters):
        if letters[p] == letter:
            return list(letters[:p]) + list(letters[p + 1:])
    raise WordError("letter is not a right divisor")


def is_left_divisor(a: NormalForm, k: NormalForm) -> bool:
    """Whether ``k = a o h`` for some ``h`` (lengths add)."""
    _same_graph(a, k)
    return len(multiply(invert(a), k)) == len(k) - len(a)


def is_right_divisor(a: NormalForm, k: NormalForm) -> bool:
    _same_graph(a, k)
    return len(multiply(k, invert(a))) == len(k) - len(a)


def gcd_left(u: NormalForm, v: NormalForm) -> NormalForm:
    """Greatest common left divisor, accumulated one least common letter at a time."""
    g = _same_graph(u, v)
    a, b = list(u.letters), list(v.letters)
    acc = []
    while True:
        common = ({a[p] for p in _available(g, a)} & {b[p] for p in _available(g, b)})
        if not common:
            return normalize(g, acc)
        y = min(common, key=_key)
        acc.append(y)
        a, b = _strip_left(g, a, y), _strip_left(g, b, y)


def gcd_right(u: NormalForm, v: NormalForm) -> NormalForm:
    return invert(gcd_left(invert(u), invert(v)))


def gcd_left_parabolic(u: NormalForm, Y: GeneratorSet) -> NormalForm:
    """Greatest left divisor of ``u`` lying in the parabolic subgroup ``G(Y)``."""
    if Y.graph != u.graph:
        raise GraphError("generator set belongs to a different graph")
    g = u.graph
    a = list(u.letters)
    acc = []
    while True:
        cands = [a[p] for p in _available(g, a) if Y.mask >> a[p][0] & 1]
        if not cands:
            return normalize(g, acc)
        y = min(cands, key=_key)
        acc.append(y)
        a = _strip_left(g, a, y)


def gcd_right_parabolic(u: NormalForm, Y: GeneratorSet) -> NormalForm:
    return invert(gcd_left_parabolic(invert(u), Y))


def left_divisors(u: NormalForm) -> list[NormalForm]:
    """Every left divisor of ``u``, ordered by length then letters."""
    g = u.graph
    seen: dict[tuple[Letter, ...], NormalForm] = {}
    stack = [((), tuple(u.letters))]
    visited = set()
    while stack:
        prefix, rest = stack.pop()
        d = normalize(g, prefix)
        if d.letters in visited:
            continue
        visited.add(d.letters)
        seen[d.letters] = d
        for p in _available(g, rest):
            stack.append((prefix + (rest[p],), rest[:p] + rest[p + 1:]))
    return sorted(seen.values(), key=lambda d: (len(d), [_key(l) for l in d.letters]))


# -- cyclic structure --------------------------------------------------------


def _cyclic_blocker(u: NormalForm) -> Letter | None:
    left = left_divisor_letters(u)
    right = right_divisor_letters(u)
    cands = [y for y in left if (y[0], -y[1]) in right]
    return min(cands, key=_key) if cands else None


def is_cyclically_minimal(u: NormalForm) -> bool:
    """No left divisor letter ``y`` has ``y^-1`` as a right divisor."""
    return _cyclic_blocker(u) is None


def cyclic_reduce(w: NormalForm) -> tuple[NormalForm, NormalForm]:
    """Return ``(u, v)`` with ``w = u^-1 o v o u`` and ``v`` cyclically minimal."""
    g = w.graph
    v = w
    conj: list[Letter] = []
    while True:
        y = _cyclic_blocker(v)
        if y is None:
            return normalize(g, conj), v
        inner = _strip_right(g, _strip_left(g, v.letters, y), (y[0], -y[1]))
        v = normalize(g, inner)
        conj.insert(0, (y[0], -y[1]))


def cyclic_permutations(v: NormalForm) -> frozenset[NormalForm]:
    """``{t s : v = s o t}`` over all left divisors ``s``; the class ``[v]``."""
    if not is_cyclically_minimal(v):
        raise WordError(f"{v} is not cyclically minimal")
    g = v.graph
    out = set()
    for s in left_divisors(v):
        t = multiply(invert(s), v)
        out.add(normalize(g, t.letters + s.letters))
    return frozenset(out)


def factor_split(a: NormalForm, b: NormalForm, c: NormalForm, d: NormalForm):
    """Given ``a o b = c o d`` return ``(c1, c2, d1, d2)`` with
    ``a = c1 o d1``, ``b = c2 o d2``, ``c = c1 o c2``, ``d = d1 o d2`` and
    ``alpha(c2)`` commuting elementwise with ``alpha(d1)``.
    """
    g = _same_graph(a, b, c, d)
    ab, cd = multiply(a, b), multiply(c, d)
    if len(ab) != len(a) + len(b) or len(cd) != len(c) + len(d) or ab != cd:
        raise WordError("factor_split needs two reduced factorisations of one element")
    for c1 in reversed(left_divisors(c)):
        if not is_left_divisor(c1, a):
            continue
        c2 = multiply(invert(c1), c)
        d1 = multiply(invert(c1), a)
        if not is_left_divisor(d1, d):
            continue
        d2 = multiply(invert(d1), d)
        if multiply(c2, d2) != b or len(c2) + len(d2) != len(b):
            continue
        if all(g.stars[i] & d1.alpha_mask == d1.alpha_mask for i in alpha(c2).indices()):
            return c1, c2, d1, d2
    raise WordError("no factor split found")  # pragma: no cover - unreachable for valid inputs


def iter_letters(g: CommutationGraph) -> Iterator[Letter]:
    for i in range(g.n):
        yield (i, 1)
        yield (i, -1)
