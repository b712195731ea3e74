"""Deliberately broken operators used to confirm the checks catch violations.

Each mutation keeps the species and weight of a working bundle and swaps in
a faulty operator.
"""

from __future__ import annotations

from .objects import OrderedBipartition
from .species import SpeciesBundle
from .zoo.binary import binary_function_species
from .zoo.bipartite import bipartite_species


def _edge_dropping(bp: OrderedBipartition, b1, b2):
    # forgets the smallest edge of the first graph, so two inputs collide
    return tuple(sorted(b1[1:] + b2))


def _zeroing(bp: OrderedBipartition, f1, f2):
    return tuple(sorted(f1 + tuple((a, 0) for a, _ in f2)))


def _smallest_label_kept(bp: OrderedBipartition, f1, f2):
    # flips the second factor except at its smallest label; order-preserving
    # relabellings commute with this, transpositions do not
    low = min((a for a, _ in f2), default=None)
    return tuple(sorted(f1 + tuple((a, v if a == low else 1 - v) for a, v in f2)))


def _cross_edges_when_both_nonempty(bp: OrderedBipartition, b1, b2):
    (w1, k1), (w2, k2) = bp.first, bp.second
    if b1 and b2:
        cross = [(a, c) for a in w1 for c in k2] + [(a, c) for a in w2 for c in k1]
        return tuple(sorted(b1 + b2 + tuple(cross)))
    return tuple(sorted(b1 + b2))


def edge_dropping_bipartite() -> SpeciesBundle:
    """Union operator that drops an edge: not injective."""
    return bipartite_species("union").with_eta(_edge_dropping, name="bipartite[edge-dropping]")


def zeroing_binary() -> SpeciesBundle:
    """Binary functions with the second factor overwritten by 0: not injective."""
    return binary_function_species().with_eta(_zeroing, name="binary[zeroing]")


def label_dependent_binary() -> SpeciesBundle:
    """Injective but not natural: depends on the order of the labels."""
    return binary_function_species().with_eta(_smallest_label_kept, name="binary[label-dependent]")


def d1_violating_bipartite() -> SpeciesBundle:
    """Injective and natural, but breaks the decomposition axiom; the
    filtration levels overlap on ({1,2,3},{1,2,3})."""
    return bipartite_species("union").with_eta(_cross_edges_when_both_nonempty, name="bipartite[d1-violating]")


MUTATIONS = {
    "edge-dropping": edge_dropping_bipartite,
    "non-injective": zeroing_binary,
    "non-natural": label_dependent_binary,
    "d1-violating": d1_violating_bipartite,
}
