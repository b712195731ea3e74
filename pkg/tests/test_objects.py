import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from decomp_species.objects import (
    BasePoint,
    LabeledSet,
    OrderedBipartition,
    SortedBijection,
    adjacent_transpositions,
    bipartitions,
    morphism_sample,
    set_partitions,
    standard_object,
    subobjects,
)


def test_standard_object():
    assert standard_object((0, 0)) == LabeledSet([[], []])
    assert standard_object((2, 1)).text() == "({1,2},{1})"
    assert standard_object((2, 3)).norm() == 5


def test_bipartitions_small():
    assert len(bipartitions(LabeledSet([[1], []]))) == 2
    proper = bipartitions(LabeledSet([[1], [1]]), proper_only=True)
    assert {bp.text() for bp in proper} == {"({1},{})|({},{1})", "({},{1})|({1},{})"}


def test_bipartition_count_norm_three():
    omega = standard_object((2, 1))
    subsets = [s for k in range(4) for s in itertools.combinations(omega.points(), k)]
    assert len(bipartitions(omega)) == len(subsets) == 8


def test_overlapping_parts_rejected():
    with pytest.raises(ValueError):
        OrderedBipartition(LabeledSet([[1]]), LabeledSet([[1, 2]]))


def test_base_point_membership():
    omega = standard_object((1, 2))
    assert omega.contains(BasePoint(2, 1))
    assert not omega.contains(BasePoint(2, 0))


def test_bijection_laws():
    omega = standard_object((3, 2))
    rng = random.Random(3)
    for f in morphism_sample(omega, rng):
        assert f.source == omega
        assert f.inverse().compose(f) == SortedBijection.identity(omega)
    assert len(adjacent_transpositions(omega)) == 3


# Bell numbers for one sort
@pytest.mark.parametrize("n, bell", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
def test_set_partition_counts(n, bell):
    assert len(list(set_partitions(standard_object((n,))))) == bell


def test_set_partitions_by_block_count():
    # Stirling numbers S(4, k)
    omega = standard_object((4,))
    assert [len(list(set_partitions(omega, k))) for k in range(1, 5)] == [1, 7, 6, 1]


@given(st.lists(st.integers(0, 3), min_size=1, max_size=3))
def test_bipartitions_are_complementary(sizes):
    omega = standard_object(sizes)
    bps = bipartitions(omega)
    assert len(bps) == 2 ** omega.norm()
    for bp in bps:
        assert bp.whole == omega and bp.first.isdisjoint(bp.second)
    proper = bipartitions(omega, proper_only=True)
    assert len(proper) == max(2 ** omega.norm() - 2, 0)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=2))
def test_set_partitions_cover(sizes):
    omega = standard_object(sizes)
    for blocks in set_partitions(omega):
        total = LabeledSet.empty(omega.arity)
        for b in blocks:
            assert not b.is_empty() and total.isdisjoint(b)
            total = total.union(b)
        assert total == omega
    assert len(list(subobjects(omega))) == 2 ** omega.norm()
