import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from decomp_species.checks import (
    CheckReport,
    bracketings,
    check_base_point,
    check_composition_operator,
    check_d1,
    check_functoriality,
    check_injective,
    check_naturality,
    check_partition_properties,
    check_permutability,
    check_pointwise,
    check_weight,
    d1_sides,
    verify_exponential_formula,
    verify_refined_formula,
)
from decomp_species.egf import egf_pow_y
from decomp_species.mutations import (
    MUTATIONS,
    d1_violating_bipartite,
    edge_dropping_bipartite,
    label_dependent_binary,
    zeroing_binary,
)
from decomp_species.objects import standard_object
from decomp_species.species import engine_for, species_egf
from decomp_species.zoo import binary_function_species, bipartite_species, magic_species, twisted_binary_species

BUNDLES = {
    "bipartite-union": (lambda: bipartite_species("union"), (2, 2)),
    "bipartite-completion": (lambda: bipartite_species("completion"), (2, 2)),
    "binary": (binary_function_species, (4,)),
    "twist": (twisted_binary_species, (4,)),
    "magic-2": (lambda: magic_species(2), (2, 2)),
    "magic-2-sym": (lambda: magic_species(2, "symmetric"), (4,)),
}


def test_bracketing_counts():
    # (2m-2)!/(m-1)! ordered binary trees on m leaves
    assert [len(list(bracketings(tuple(range(m))))) for m in (1, 2, 3, 4)] == [1, 2, 12, 120]


def test_report_json_schema():
    rep = check_d1(bipartite_species(), (1, 1))
    doc = json.loads(rep.to_json())
    assert set(doc) >= {"name", "verdict", "cases_checked", "elapsed_ms"}
    assert doc["verdict"] == "pass" and "witness" not in doc
    assert rep.to_dict(timings=False)["elapsed_ms"] == 0


def test_edge_dropping_caught_with_recheckable_witness():
    S = edge_dropping_bipartite()
    rep = check_injective(S, (2, 2))
    assert not rep.passed and rep.witness["problem"] == "two pairs share an image"
    omega, bp, p1, p2, z = rep.raw
    assert p1 != p2 and S.eta(bp, *p1) == S.eta(bp, *p2) == z


def test_zeroing_caught():
    rep = check_composition_operator(zeroing_binary(), (3,))
    assert not rep.passed and rep.witness["check"] == "inject"


def test_naturality_mutation_caught_by_transposition():
    S = label_dependent_binary()
    assert check_injective(S, (4,)).passed
    rep = check_naturality(S, (4,))
    assert not rep.passed
    omega, bp, f, a, b = rep.raw
    assert f.source == f.target  # a transposition, not a shifted copy
    f1, f2 = f.restrict(bp.first), f.restrict(bp.second)
    from decomp_species.objects import OrderedBipartition
    tbp = OrderedBipartition(f.image(bp.first), f.image(bp.second))
    assert S.eta(tbp, S.transport(f1, a), S.transport(f2, b)) != S.transport(f, S.eta(bp, a, b))


def test_d1_mutation_caught():
    S = d1_violating_bipartite()
    assert check_injective(S, (2, 2)).passed
    assert check_naturality(S, (2, 2)).passed
    rep = check_d1(S, (2, 2))
    assert not rep.passed
    omega, bp, bq, x = rep.raw
    lhs, rhs = d1_sides(S, bp, bq)
    assert (x in lhs) != (x in rhs)
    part = check_partition_properties(S, (3, 3))
    assert not part.passed and part.witness["problem"] == "levels overlap"


def test_mutation_registry():
    assert set(MUTATIONS) == {"edge-dropping", "non-injective", "non-natural", "d1-violating"}
    for make in MUTATIONS.values():
        S = make()
        cap = (2, 2) if S.arity == 2 else (3,)
        assert not check_composition_operator(S, cap).passed


def test_w2_cross_pairing_fails():
    rep = check_weight(bipartite_species("completion", "edges"), (2, 2))
    assert not rep.passed and rep.witness["axiom"] == "W2"
    omega, bp, y1, x2 = rep.raw
    S = bipartite_species("completion", "edges")
    z = S.eta(bp, y1, x2)
    assert S.weight(omega, z) != S.weight(bp.first, y1) * S.weight(bp.second, x2)


def test_weight_subselection():
    S = bipartite_species("completion", "edges")
    assert check_weight(S, (2, 2), axioms=("W0", "W1")).passed
    assert check_weight(S, (2, 2), axioms=("W2",)).name == "w2"


def test_binary_permutability_without_pointwise_laws():
    S = binary_function_species()
    assert check_permutability(S, (4,)).passed
    rep = check_pointwise(S, (3,))
    assert not rep.passed
    assert set(rep.witness) == {"commutativity", "associativity"}


def test_requires_operator():
    S = bipartite_species().with_eta(None)
    with pytest.raises(ValueError):
        check_d1(S, (1, 1))
    with pytest.raises(ValueError):
        check_permutability(bipartite_species(), (1, 1), max_m=1)


def test_refined_formula_reports_component_failures():
    rep = verify_refined_formula(d1_violating_bipartite(), (3, 3))
    assert not rep.passed


@pytest.mark.parametrize("name", sorted(BUNDLES))
def test_full_suite_small(name):
    make, cap = BUNDLES[name]
    S = make()
    for fn in (check_composition_operator, check_partition_properties, check_permutability, check_base_point,
               check_functoriality, check_weight, verify_exponential_formula, verify_refined_formula):
        rep = fn(S, cap)
        assert rep.passed, (fn.__name__, rep.witness)


@pytest.mark.parametrize("name", sorted(BUNDLES))
def test_exponential_formula_implies_power_identity(name):
    make, cap = BUNDLES[name]
    S = make()
    if verify_exponential_formula(S, cap).passed:
        assert species_egf(S, cap, refined=True) == egf_pow_y(species_egf(S, cap))


@given(st.sampled_from(sorted(BUNDLES)), st.data())
def test_levels_partition_every_object(name, data):
    make, cap = BUNDLES[name]
    S = make()
    sizes = tuple(data.draw(st.integers(0, c)) for c in cap)
    omega = standard_object(sizes)
    eng = engine_for(S)
    assert len(eng.F(standard_object((0,) * S.arity))) == 1
    assert sum(len(eng.filtration(omega, k)) for k in range(omega.norm() + 1)) == len(eng.F(omega))


@given(st.sampled_from(sorted(BUNDLES)))
def test_specialisation_gives_counts(name):
    make, cap = BUNDLES[name]
    S = make()
    series = species_egf(S, cap, refined=True).eval_at_one("y").eval_at_one("t")
    eng = engine_for(S)
    for idx in series.indices():
        assert series.weighted_count(idx) == len(eng.F(standard_object(idx)))


@given(st.integers(0, 2 ** 16))
def test_naturality_independent_of_seed(seed):
    assert check_naturality(bipartite_species("completion"), (2, 1), seed=seed).passed
    assert not check_naturality(label_dependent_binary(), (3,), seed=seed).passed


def test_report_defaults():
    rep = CheckReport("x")
    assert rep.passed and rep.cases_checked == 0
