"""One-sort species of {0,1}-valued functions with the flipping operator."""

from __future__ import annotations

import itertools
from typing import Tuple

from ..objects import LabeledSet, OrderedBipartition, SortedBijection
from ..species import SpeciesBundle

BinaryFunction = Tuple[Tuple[int, int], ...]


def all_functions(omega: LabeledSet):
    labels = sorted(omega[0])
    for values in itertools.product((0, 1), repeat=len(labels)):
        yield tuple(zip(labels, values))


def relabel(f: SortedBijection, fn: BinaryFunction) -> BinaryFunction:
    m = f.maps[0]
    return tuple(sorted((m[a], v) for a, v in fn))


def flip_eta(bp: OrderedBipartition, f1: BinaryFunction, f2: BinaryFunction) -> BinaryFunction:
    """f1 on the first part, 1 - f2 on the second."""
    return tuple(sorted(f1 + tuple((a, 1 - v) for a, v in f2)))


def encode(fn: BinaryFunction) -> str:
    return "BF{" + ",".join(f"{a}:{v}" for a, v in fn) + "}"


def binary_function_species() -> SpeciesBundle:
    return SpeciesBundle(
        name="binary",
        arity=1,
        enumerate=all_functions,
        transport=relabel,
        eta=flip_eta,
        weight=None,
        encode=encode,
    )
