from math import factorial

import pytest

from oracles import block_splits, magic_by_rows, symmetric_matrix_connected

from decomp_species import BudgetExceeded, indecomposables, species_egf
from decomp_species.objects import bipartitions, standard_object
from decomp_species.species import engine_for
from decomp_species.zoo import enumerate_2magic_birkhoff, enumerate_magic, indecomposable_2magic_count, magic_species
from decomp_species.zoo.magic import (
    birkhoff_decompositions,
    encode,
    from_dense,
    is_magic,
    symmetric_magic_matrices,
    to_dense,
    verify_magic_relations,
)


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 3), (3, 21), (4, 282)])
def test_2magic_counts(n, count):
    got = enumerate_magic(2, n)
    assert len(got) == count
    assert got == magic_by_rows(2, n)


@pytest.mark.parametrize("n", range(1, 6))
def test_permutation_matrices(n):
    assert len(enumerate_magic(1, n)) == factorial(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_birkhoff_matches_backtracking(n):
    birk = enumerate_2magic_birkhoff(n)
    assert birk == enumerate_magic(2, n)
    assert all(is_magic(m, range(1, n + 1), range(1, n + 1), 2) for m in birk)


def test_birkhoff_pair_counts():
    pairs = birkhoff_decompositions(2)
    assert sum(pairs.values()) == 4 and len(pairs) == 3
    assert sum(birkhoff_decompositions(3).values()) == 36


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_magic(2, 4, budget=100)


def test_small_examples():
    S = magic_species(2)
    assert engine_for(S).F(standard_object((1, 1))) == {(((1, 1), 2),)}
    assert len(engine_for(S).F(standard_object((2, 2)))) == 3
    assert encode(from_dense([[1, 1], [1, 1]])) == "CM{2 x 2; (1,1)=1,(1,2)=1,(2,1)=1,(2,2)=1}"
    assert to_dense(from_dense([[0, 2], [2, 0]]), 2) == [[0, 2], [2, 0]]


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 6), (4, 72), (5, 1440)])
def test_indecomposable_counts(n, count):
    assert indecomposable_2magic_count(n) == count
    if n <= 4:
        assert len(indecomposables(magic_species(2), standard_object((n, n)))) == count


def test_indecomposable_count_n5_by_block_split():
    omega = standard_object((5, 5))
    ind = [m for m in enumerate_magic(2, 5) if not block_splits(omega, m, False)]
    assert len(ind) == 1440


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 15), (5, 72)])
def test_symmetric_indecomposable_counts(n, count):
    assert indecomposable_2magic_count(n, symmetric=True) == count
    omega = standard_object((n,))
    got = indecomposables(magic_species(2, "symmetric"), omega)
    assert len(got) == count
    oracle = {m for m in symmetric_magic_matrices(range(1, n + 1), 2) if not block_splits(omega, m, True)}
    assert got == oracle


def test_symmetric_n2_indecomposables_are_the_displayed_pair():
    got = indecomposables(magic_species(2, "symmetric"), standard_object((2,)))
    assert got == {from_dense([[0, 2], [2, 0]]), from_dense([[1, 1], [1, 1]])}


@pytest.mark.parametrize("n", range(1, 5))
def test_magic_indecomposables_match_block_split(n):
    omega = standard_object((n, n))
    got = indecomposables(magic_species(2), omega)
    assert got == {m for m in enumerate_magic(2, n) if not block_splits(omega, m, False)}


def test_symmetric_enumeration_matches_filter():
    for n in range(5):
        sym = {m for m in enumerate_magic(2, n) if all((j, i) in dict(m) and dict(m)[(j, i)] == v for (i, j), v in m)}
        assert set(symmetric_magic_matrices(range(1, n + 1), 2)) == sym


def test_barred_excludes_s():
    S = magic_species(1, "barred")
    assert engine_for(S).F(standard_object((1, 1))) == frozenset()
    series = species_egf(S, (2, 2), refined=True)
    assert series[(1, 1)].is_zero()


def test_relations_and_closed_forms():
    rep = verify_magic_relations(cap_n=3, cap_sym=4)
    assert rep.passed, rep.witness
    assert "CombMat7" in rep.stats["identities"]


def test_bad_arguments():
    with pytest.raises(ValueError):
        magic_species(0)
    with pytest.raises(ValueError):
        magic_species(2, "diagonal")
    with pytest.raises(ValueError):
        indecomposable_2magic_count(0)


@pytest.mark.parametrize("n", range(1, 6))
def test_symmetric_indecomposables_are_connected_degree_two_graphs(n):
    labels = range(1, n + 1)
    got = indecomposables(magic_species(2, "symmetric"), standard_object((n,)))
    assert got == {m for m in symmetric_magic_matrices(labels, 2) if symmetric_matrix_connected(labels, m)}
