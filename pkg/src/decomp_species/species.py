"""Species bundles and the decomposition engine.

A :class:`SpeciesBundle` packages an r-sort species (enumerator plus
transport) with an optional composition operator and weight.  The
:class:`Decomposer` derives everything else from those callables: images of
the operator, indecomposables, the component filtration, component counts
and the (refined) exponential generating functions.
"""

from __future__ import annotations

import dataclasses
import weakref
from dataclasses import dataclass
from math import factorial
from typing import Any, Callable, Dict, FrozenSet, Hashable, Iterable, Optional, Sequence, Tuple

from .egf import Egf, indices_upto
from .objects import (
    BasePoint,
    LabeledSet,
    OrderedBipartition,
    SortedBijection,
    bipartitions,
    standard_object,
    subobjects,
)
from .poly import ONE, Poly, Y

Structure = Hashable
StructureSet = FrozenSet[Structure]

Enumerator = Callable[[LabeledSet], Iterable[Structure]]
Transport = Callable[[SortedBijection, Structure], Structure]
Eta = Callable[[OrderedBipartition, Structure, Structure], Structure]
Weight = Callable[[LabeledSet, Structure], Poly]


class BudgetExceeded(RuntimeError):
    """More structures were enumerated than the configured budget allows."""


class ComponentError(RuntimeError):
    """A structure lies in no filtration level, or in more than one."""

    def __init__(self, message, omega=None, structure=None, levels=()):
        super().__init__(message)
        self.omega = omega
        self.structure = structure
        self.levels = tuple(levels)


def unit_weight(omega: LabeledSet, x: Structure) -> Poly:
    return ONE


@dataclass(eq=False)
class SpeciesBundle:
    """A species F with optional composition operator and Lambda-weight."""

    name: str
    arity: int
    enumerate: Enumerator
    transport: Transport
    eta: Optional[Eta] = None
    weight: Optional[Weight] = None
    encode: Callable[[Structure], str] = repr

    def with_eta(self, eta: Optional[Eta], name: Optional[str] = None) -> "SpeciesBundle":
        return dataclasses.replace(self, eta=eta, name=name or self.name)

    def with_weight(self, weight: Optional[Weight], name: Optional[str] = None) -> "SpeciesBundle":
        return dataclasses.replace(self, weight=weight, name=name or self.name)

    def weight_or_unit(self) -> Weight:
        return self.weight or unit_weight

    def require_eta(self) -> Eta:
        if self.eta is None:
            raise ValueError(f"species {self.name!r} has no composition operator")
        return self.eta


class Decomposer:
    """Memoised set-level computations for one bundle.

    Every cache is keyed by the actual object (not its standard form), so
    results on relabelled objects are computed independently; the
    functoriality checks rely on this.
    """

    def __init__(self, bundle: SpeciesBundle, budget: Optional[int] = None):
        self.bundle = bundle
        self.budget = budget
        self.enumerated = 0
        self._F: Dict[LabeledSet, StructureSet] = {}
        self._images: Dict[Tuple[LabeledSet, LabeledSet], StructureSet] = {}
        self._indec: Dict[LabeledSet, StructureSet] = {}
        self._filt: Dict[Tuple[LabeledSet, int], StructureSet] = {}
        self._levels: Dict[LabeledSet, Dict[Structure, int]] = {}

    # -- F[omega] -----------------------------------------------------
    def F(self, omega: LabeledSet) -> StructureSet:
        s = self._F.get(omega)
        if s is None:
            s = frozenset(self.bundle.enumerate(omega))
            self.enumerated += len(s)
            if self.budget is not None and self.enumerated > self.budget:
                raise BudgetExceeded(
                    f"enumerated {self.enumerated} structures (budget {self.budget}) at {omega.text()}"
                )
            self._F[omega] = s
        return s

    # -- operator images ----------------------------------------------
    def apply(self, bp: OrderedBipartition, xs: Iterable[Structure], ys: Iterable[Structure]) -> StructureSet:
        eta = self.bundle.require_eta()
        ys = list(ys)
        return frozenset(eta(bp, a, b) for a in xs for b in ys)

    def image(self, first: LabeledSet, second: LabeledSet) -> StructureSet:
        """eta(F[first] x F[second])."""
        key = (first, second)
        s = self._images.get(key)
        if s is None:
            bp = OrderedBipartition(first, second)
            s = self.apply(bp, self.F(first), self.F(second))
            self._images[key] = s
        return s

    # -- indecomposables and filtration -------------------------------
    def indecomposables(self, omega: LabeledSet) -> StructureSet:
        s = self._indec.get(omega)
        if s is None:
            if omega.is_empty():
                s = frozenset()
            else:
                composite = set()
                for bp in bipartitions(omega, proper_only=True):
                    composite |= self.image(bp.first, bp.second)
                s = self.F(omega) - composite
            self._indec[omega] = s
        return s

    def filtration(self, omega: LabeledSet, k: int) -> StructureSet:
        key = (omega, k)
        s = self._filt.get(key)
        if s is not None:
            return s
        if k == 0:
            s = self.F(omega) if omega.is_empty() else frozenset()
        elif k > omega.norm():
            s = frozenset()
        else:
            out = set()
            for first in subobjects(omega):
                ind = self.indecomposables(first)
                if not ind:
                    continue
                rest = omega.minus(first)
                lower = self.filtration(rest, k - 1)
                if lower:
                    out |= self.apply(OrderedBipartition(first, rest), ind, lower)
            s = frozenset(out)
        self._filt[key] = s
        return s

    def levels(self, omega: LabeledSet) -> Dict[Structure, int]:
        """Map each x in F[omega] to its unique filtration level."""
        lv = self._levels.get(omega)
        if lv is not None:
            return lv
        lv = {}
        for k in range(omega.norm() + 1):
            for x in self.filtration(omega, k):
                if x in lv:
                    raise ComponentError(
                        f"structure lies in levels {lv[x]} and {k}", omega, x, (lv[x], k)
                    )
                lv[x] = k
        missing = self.F(omega) - lv.keys()
        if missing:
            x = min(missing, key=repr)
            raise ComponentError("structure lies in no filtration level", omega, x)
        self._levels[omega] = lv
        return lv

    def component_count(self, omega: LabeledSet, x: Structure) -> int:
        if x not in self.F(omega):
            raise ValueError(f"{self.bundle.encode(x)} is not a structure on {omega.text()}")
        return self.levels(omega)[x]

    def decomposition_table(self, omega: LabeledSet, point: BasePoint) -> Dict[Structure, Tuple[LabeledSet, Structure, Structure]]:
        """x -> (Omega_1, y_1, x_1) with x = eta(y_1, x_1), y_1 indecomposable on
        Omega_1 containing the base point.  Raises if the union is not disjoint."""
        table = {}
        for first in subobjects(omega):
            if not first.contains(point):
                continue
            rest = omega.minus(first)
            bp = OrderedBipartition(first, rest)
            eta = self.bundle.require_eta()
            for y1 in self.indecomposables(first):
                for x1 in self.F(rest):
                    x = eta(bp, y1, x1)
                    if x in table:
                        raise ComponentError("base-point decomposition is not disjoint", omega, x)
                    table[x] = (first, y1, x1)
        return table


_ENGINES: "weakref.WeakKeyDictionary[SpeciesBundle, Decomposer]" = weakref.WeakKeyDictionary()


def engine_for(bundle: SpeciesBundle, budget: Optional[int] = None) -> Decomposer:
    """Shared memoising engine for ``bundle``."""
    eng = _ENGINES.get(bundle)
    if eng is None:
        eng = Decomposer(bundle, budget)
        _ENGINES[bundle] = eng
    elif budget is not None:
        eng.budget = budget
    return eng


# -- functional surface ----------------------------------------------

def indecomposables(S: SpeciesBundle, omega: LabeledSet) -> StructureSet:
    return engine_for(S).indecomposables(omega)


def filtration(S: SpeciesBundle, omega: LabeledSet, k: int) -> StructureSet:
    return engine_for(S).filtration(omega, k)


def component_count(S: SpeciesBundle, omega: LabeledSet, x: Structure) -> int:
    return engine_for(S).component_count(omega, x)


def _collect(S: SpeciesBundle, cap: Sequence[int], pick, budget: Optional[int]) -> Egf:
    eng = engine_for(S, budget)
    w = S.weight_or_unit()
    coeffs = {}
    for n in indices_upto(cap):
        omega = standard_object(n)
        total = Poly()
        for x, extra in pick(eng, omega):
            total = total + w(omega, x) * extra
        if total:
            denom = 1
            for k in n:
                denom *= factorial(k)
            coeffs[n] = total / denom
    return Egf(S.arity, cap, coeffs)


def species_egf(S: SpeciesBundle, cap: Sequence[int], refined: bool = False, budget: Optional[int] = None) -> Egf:
    """Sum over x in F[[n]] of w(x) (times y^components when refined) / n!."""
    cap = tuple(cap)
    if refined:
        S.require_eta()

        def pick(eng, omega):
            for x, k in eng.levels(omega).items():
                yield x, Y ** k
    else:
        def pick(eng, omega):
            for x in eng.F(omega):
                yield x, ONE
    return _collect(S, cap, pick, budget)


def indecomposables_egf(S: SpeciesBundle, cap: Sequence[int], budget: Optional[int] = None) -> Egf:
    S.require_eta()

    def pick(eng, omega):
        for x in eng.indecomposables(omega):
            yield x, ONE
    return _collect(S, tuple(cap), pick, budget)


def filtration_egf(S: SpeciesBundle, cap: Sequence[int], k: int, budget: Optional[int] = None) -> Egf:
    S.require_eta()

    def pick(eng, omega):
        for x in eng.filtration(omega, k):
            yield x, ONE
    return _collect(S, tuple(cap), pick, budget)


def indecomposable_species(S: SpeciesBundle) -> SpeciesBundle:
    """F_eta as a species in its own right (operator dropped)."""
    eng = engine_for(S)
    return SpeciesBundle(
        name=f"{S.name}:indecomposables",
        arity=S.arity,
        enumerate=eng.indecomposables,
        transport=S.transport,
        weight=S.weight,
        encode=S.encode,
    )
