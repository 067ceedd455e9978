import itertools
import random

import pytest

from graphgroups.graph import CommutationGraph, GeneratorSet, GraphError, center, family, orthogonal
from graphgroups.lattice import (
    brute_force_cdim,
    build_lattice,
    cdim,
    hasse_dot,
    join,
    max_chain,
    meet,
)
from graphgroups.scan import all_graphs, random_graphs


def all_perps(g):
    return {orthogonal(g, GeneratorSet(g, m)).mask for m in range(1 << g.n)}


def check_chain(g, chain, witness):
    assert chain[0] == g.all() and chain[-1] == center(g)
    assert len(chain) == len(witness) + 1
    for i in range(1, len(chain)):
        assert chain[i] < chain[i - 1]
        assert orthogonal(g, g.set(witness[:i])) == chain[i]


class TestBuild:
    def test_complete(self):
        lat = build_lattice(family("complete", 3))
        assert len(lat) == 1 and lat.top == lat.bottom and lat.height == 0

    def test_free2(self, free2):
        lat = build_lattice(free2)
        assert {tuple(e.carrier.names()) for e in lat.elements} == {("a", "b"), ("a",), ("b",), ()}
        assert lat.height == 2 and len(lat.hasse) == 4

    def test_semibraid4(self, sb4):
        lat = build_lattice(sb4)
        assert len(lat) == 9
        for names in (["x1", "x3", "x4"], ["x1", "x4"], ["x4"], []):
            assert lat.contains(sb4.set(names))

    def test_elements_are_all_orthogonals(self):
        for n in range(1, 6):
            for g in all_graphs(n):
                lat = build_lattice(g)
                assert {e.mask for e in lat.elements} == all_perps(g)
                for e in lat.elements:
                    assert orthogonal(g, e.one_witness) == e.carrier
                assert lat.elements[lat.bottom].carrier == center(g)

    def test_foreign_set(self, sb4, free2):
        lat = build_lattice(sb4)
        with pytest.raises(GraphError):
            lat.index_of(free2.set(["a"]))
        with pytest.raises(GraphError):
            lat.index_of(sb4.set(["x2", "x3"]))

    def test_capacity(self):
        with pytest.raises(GraphError):
            build_lattice(CommutationGraph([f"v{i}" for i in range(70)]))


class TestMeetJoin:
    def test_examples(self, sb4):
        lat = build_lattice(sb4)
        top, bottom = lat.elements[lat.top], lat.elements[lat.bottom]
        for b in lat.elements:
            assert meet(lat, top, b) == b
            assert join(lat, bottom, b) == b
        a, b = lat.element(sb4.set(["x1", "x3"])), lat.element(sb4.set(["x1", "x4"]))
        assert join(lat, a, b).carrier.names() == ["x1", "x3", "x4"]

    def test_lattice_axioms(self):
        graphs = [g for n in range(1, 5) for g in all_graphs(n)] + list(random_graphs(5, 80, seed=1))
        for g in graphs:
            lat = build_lattice(g)
            els = lat.elements
            for a, b in itertools.product(els, repeat=2):
                j, m = join(lat, a, b), meet(lat, a, b)
                assert meet(lat, a, j) == a and join(lat, a, m) == a
                # join is the least closed superset
                ups = [e.mask for e in els if (a.mask | b.mask) & ~e.mask == 0]
                assert all(j.mask & ~u == 0 for u in ups) and j.mask in ups
            for a, b, c in itertools.islice(itertools.product(els, repeat=3), 300):
                assert join(lat, join(lat, a, b), c) == join(lat, a, join(lat, b, c))
                assert meet(lat, meet(lat, a, b), c) == meet(lat, a, meet(lat, b, c))


class TestHasse:
    def test_covers_exhaustive(self):
        for g in all_graphs(5):
            lat = build_lattice(g)
            masks = [e.mask for e in lat.elements]
            expected = set()
            for i, s in enumerate(masks):
                for j, t in enumerate(masks):
                    if t != s and t & ~s == 0:
                        if not any(u not in (s, t) and t & ~u == 0 and u & ~s == 0 for u in masks):
                            expected.add((i, j))
            assert set(lat.hasse) == expected

    def test_dot(self, free2):
        dot = hasse_dot(build_lattice(free2))
        assert dot.startswith("digraph lattice {")
        assert dot.count("->") == 4 and '"{a, b}"' in dot and '"{}"' in dot


class TestCdim:
    def test_examples(self, sb4, free2):
        assert cdim(sb4) == 4
        assert cdim(free2) == 2
        for n in range(1, 7):
            assert cdim(family("complete", n)) == 0

    def test_brute_force_examples(self):
        assert brute_force_cdim(family("semibraid", 5)) == 4
        assert brute_force_cdim(family("semibraid", 6)) == 6
        assert brute_force_cdim(family("semibraid", 1)) == 0
        with pytest.raises(GraphError):
            brute_force_cdim(family("empty", 13))

    def test_oracle_small_exhaustive(self):
        for n in range(1, 6):
            for g in all_graphs(n):
                assert cdim(g) == brute_force_cdim(g)

    def test_oracle_random(self):
        for n in (7, 8):
            for g in random_graphs(n, 40, seed=n):
                assert cdim(g) == brute_force_cdim(g)

    def test_lower_bounds(self):
        for n in range(2, 6):
            for g in all_graphs(n):
                d = cdim(g)
                assert d != 1
                if len(g.edges()) < n * (n - 1) // 2:
                    assert d >= 2

    def test_large_sparse(self):
        assert cdim(family("semibraid", 17)) == 16


class TestChain:
    def test_semibraid4(self, sb4):
        chain, witness = max_chain(sb4)
        check_chain(sb4, chain, witness)
        assert len(witness) == 4
        # least-index tie-breaking at every step
        assert witness == ["x1", "x3", "x4", "x2"]
        # the alternative longest witness is also valid
        alt = ["x1", "x4", "x2", "x3"]
        check_chain(sb4, [orthogonal(sb4, sb4.set(alt[:i])) for i in range(5)], alt)

    def test_trivial_and_free(self):
        k3 = family("complete", 3)
        chain, witness = max_chain(k3)
        assert chain == [k3.all()] and witness == []
        e3 = family("empty", 3)
        chain, witness = max_chain(e3)
        assert len(witness) == 2
        check_chain(e3, chain, witness)

    def test_valid_everywhere(self):
        rng = random.Random(2)
        graphs = list(all_graphs(4)) + list(random_graphs(7, 60, seed=rng.randrange(1000)))
        for g in graphs:
            chain, witness = max_chain(g)
            assert len(witness) == cdim(g)
            check_chain(g, chain, witness)
