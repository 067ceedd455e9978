import random
from math import gcd

import pytest

from graphgroups.centralisers import (
    A_of,
    block_decomposition,
    block_root_exponent,
    centraliser_of_element,
    commutes,
    root,
)
from graphgroups.graph import CommutationGraph, GraphError, family, non_commutation_components
from graphgroups.scan import graph_from_code
from graphgroups.words import (
    WordError,
    alpha,
    conjugate,
    cyclic_permutations,
    cyclic_reduce,
    identity,
    multiply,
    normalize,
    power,
)

from oracles import random_raw_word


def W(g, text):
    return normalize(g, text)


def random_tail(rng, A, max_len=4):
    letters = A.indices()
    if not letters:
        return identity(A.graph)
    return normalize(A.graph, [(rng.choice(letters), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))])


def random_element(rng, max_n=5, max_len=6):
    n = rng.randint(1, max_n)
    g = graph_from_code(n, rng.randrange(1 << (n * (n - 1) // 2)))
    return g, normalize(g, random_raw_word(rng, n, max_len))


class TestBlocks:
    def test_examples(self, sb4, free2):
        d = block_decomposition(W(sb4, "x1 x3"))
        assert [str(b) for b in d.blocks] == ["x1", "x3"] and d.conjugator.is_identity
        d = block_decomposition(W(sb4, "x1 x2"))
        assert [str(b) for b in d.blocks] == ["x1 x2"]
        d = block_decomposition(W(free2, "a b a^-1"))
        assert [str(b) for b in d.blocks] == ["b"] and str(d.conjugator) == "a^-1"

    def test_invariants_random(self):
        rng = random.Random(11)
        for _ in range(300):
            g, w = random_element(rng, max_len=8)
            d = block_decomposition(w)
            assert d.element() == w
            for i, b in enumerate(d.blocks):
                assert len(non_commutation_components(g, alpha(b))) == 1
                for c in d.blocks[i + 1:]:
                    assert commutes(b, c)
            firsts = [min(j for j in range(g.n) if b.alpha_mask >> j & 1) for b in d.blocks]
            assert firsts == sorted(firsts)

    def test_conjugate_blocks_are_cyclic_permutations(self):
        rng = random.Random(12)
        checked = 0
        while checked < 150:
            g, v = random_element(rng, max_len=6)
            _, v = cyclic_reduce(v)
            h = normalize(g, random_raw_word(rng, g.n, 4))
            _, u = cyclic_reduce(conjugate(v, h))
            if v.is_identity:
                continue
            bu, bv = block_decomposition(u).blocks, block_decomposition(v).blocks
            assert len(bu) == len(bv)
            for b in bu:
                assert any(b in cyclic_permutations(c) for c in bv)
            checked += 1


class TestRoots:
    def test_examples(self, sb4):
        r, m = root(W(sb4, "x1 x3 x1 x3"))
        assert (str(r), m) == ("x1 x3", 2)
        assert power(r, m) == W(sb4, "x1 x3 x1 x3")
        r, m = root(W(sb4, "x2"))
        assert (str(r), m) == ("x2", 1)
        w = W(sb4, "x1 x1 x3 x3 x3")
        assert root(w) == (w, 1)

    def test_block_examples(self, sb4):
        v, m = block_root_exponent(W(sb4, "x1 x2 x1 x2"))
        assert (str(v), m) == ("x1 x2", 2)
        v, m = block_root_exponent(W(sb4, "x1 x2"))
        assert (str(v), m) == ("x1 x2", 1)
        g1 = CommutationGraph(["a"])
        v, m = block_root_exponent(W(g1, "a a a"))
        assert (str(v), m) == ("a", 3)

    def test_errors(self, sb4, free2):
        with pytest.raises(WordError):
            root(identity(sb4))
        with pytest.raises(WordError):
            block_root_exponent(W(sb4, "x1 x3"))
        with pytest.raises(WordError):
            block_root_exponent(W(free2, "a b a^-1"))

    def test_maximal_exponent(self):
        rng = random.Random(5)
        for _ in range(200):
            g, b = random_element(rng, max_n=4, max_len=3)
            if b.is_identity:
                continue
            n = rng.randint(1, 4)
            w = power(b, n)
            r, m = root(w)
            assert power(r, m) == w
            assert m % n == 0
            # the root is primitive, so its powers have it as root
            for k in range(2, 5):
                assert root(power(r, k)) == (r, k)

    def test_torsion_free(self):
        rng = random.Random(6)
        for _ in range(200):
            _, w = random_element(rng)
            if not w.is_identity:
                assert all(not power(w, k).is_identity for k in range(1, 7))


class TestA:
    def test_examples(self, sb4):
        assert A_of(sb4, [W(sb4, "x1")]).names() == ["x3", "x4"]
        assert A_of(sb4, [W(sb4, "x1 x2")]).names() == ["x4"]
        k3 = family("complete", 3)
        assert A_of(k3, [W(k3, "x1")]).names() == ["x2", "x3"]
        assert A_of(sb4, []) == sb4.all()

    def test_graph_mismatch(self, sb4, k2):
        with pytest.raises(GraphError):
            A_of(sb4, [W(k2, "a")])


class TestCentraliser:
    def test_examples(self, sb4, free2):
        c = centraliser_of_element(W(sb4, "x1 x2"))
        assert [(str(v), m) for v, m in c.cyclic_parts] == [("x1 x2", 1)]
        assert c.abelianizing_set.names() == ["x4"] and c.conjugator.is_identity
        c = centraliser_of_element(W(sb4, "x1"))
        assert [(str(v), m) for v, m in c.cyclic_parts] == [("x1", 1)]
        assert c.abelianizing_set.names() == ["x3", "x4"]
        c = centraliser_of_element(W(free2, "a b a^-1"))
        assert str(c.conjugator) == "a^-1" and [str(v) for v in c.roots] == ["b"]
        assert not c.abelianizing_set

    def test_identity_is_whole_group(self, sb4):
        c = centraliser_of_element(identity(sb4))
        assert c.whole_group and W(sb4, "x1 x2 x3") in c

    def test_commutes_examples(self, sb4):
        assert commutes(W(sb4, "x1"), W(sb4, "x3"))
        assert not commutes(W(sb4, "x1"), W(sb4, "x2"))
        u = W(sb4, "x1 x2^-1 x4")
        assert commutes(u, power(u, 3))

    def test_element_round_trip(self, sb4):
        c = centraliser_of_element(W(sb4, "x2 x1 x2^-1"))
        h = c.element([2], identity(sb4))
        assert c.decompose(h) == ([2], identity(sb4))
        with pytest.raises(ValueError):
            c.element([1, 1], identity(sb4))
        with pytest.raises(ValueError):
            c.element([1], W(sb4, "x2"))

    def test_membership_matches_commutation(self):
        rng = random.Random(8)
        for _ in range(300):
            g, w = random_element(rng)
            if w.is_identity:
                continue
            c = centraliser_of_element(w)
            for _ in range(4):
                h = normalize(g, random_raw_word(rng, g.n, 6))
                assert (h in c) == commutes(h, w)
                if c.cyclic_parts:
                    exps = [rng.randint(-3, 3) for _ in c.cyclic_parts]
                    tail = random_tail(rng, c.abelianizing_set)
                    s = c.element(exps, tail)
                    assert commutes(s, w) and s in c

    def test_intersection_form(self):
        rng = random.Random(9)
        for _ in range(150):
            g, w = random_element(rng)
            _, w = cyclic_reduce(w)
            if w.is_identity:
                continue
            c = centraliser_of_element(w)
            parts = [centraliser_of_element(v) for v in c.roots]
            for _ in range(5):
                h = normalize(g, random_raw_word(rng, g.n, 6))
                assert (h in c) == all(h in p for p in parts)

    def test_root_gcd(self, sb4):
        w = W(sb4, "x1 x2 x1 x2 x4 x4 x4 x4")
        c = centraliser_of_element(w)
        r, m = root(w)
        assert m == gcd(*[mi for _, mi in c.cyclic_parts]) == 2
