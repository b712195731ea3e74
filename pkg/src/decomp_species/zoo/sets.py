"""Set-of-components species E(G), twisted operators, species isomorphisms,
the component isomorphism psi: F -> E(F_eta), and operator transport."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

from ..objects import (
    BasePoint,
    LabeledSet,
    OrderedBipartition,
    SortedBijection,
    morphism_sample,
    objects_upto,
    subobjects,
)
from ..poly import ONE, Poly
from ..species import SpeciesBundle, engine_for, indecomposable_species

Part = Tuple[tuple, object]  # (support key, G-structure)
ComponentSet = Tuple[Part, ...]


class IsoError(ValueError):
    """A proposed species isomorphism is not bijective, natural or weight-preserving."""


class PsiError(ValueError):
    """The component isomorphism could not be built or validated."""


@dataclass(frozen=True, eq=False)
class SpeciesIso:
    """Per-object bijections F1[omega] -> F2[omega]."""

    source: SpeciesBundle
    target: SpeciesBundle
    forward: Callable[[LabeledSet, object], object]
    backward: Callable[[LabeledSet, object], object]

    def inverted(self) -> "SpeciesIso":
        return SpeciesIso(self.target, self.source, self.backward, self.forward)

    def problems(self, cap: Sequence[int], seed: int = 0, weights: bool = True) -> Optional[str]:
        """First failure of bijectivity, naturality or weight preservation up
        to cap, or None."""
        src, dst = engine_for(self.source), engine_for(self.target)
        rng = random.Random(seed)
        w1, w2 = self.source.weight_or_unit(), self.target.weight_or_unit()
        for omega in objects_upto(cap):
            xs, ys = src.F(omega), dst.F(omega)
            image = {}
            for x in xs:
                y = self.forward(omega, x)
                if y not in ys:
                    return f"{self.source.encode(x)} on {omega.text()} maps outside the target"
                if y in image:
                    return f"two structures on {omega.text()} map to {self.target.encode(y)}"
                image[y] = x
                if self.backward(omega, y) != x:
                    return f"backward map does not invert forward at {self.source.encode(x)}"
                if weights and w1(omega, x) != w2(omega, y):
                    return f"weight not preserved at {self.source.encode(x)} on {omega.text()}"
            if len(image) != len(ys):
                return f"not surjective on {omega.text()}"
            for f in morphism_sample(omega, rng)[1:]:
                moved = f.image(omega)
                for x in xs:
                    a = self.forward(moved, self.source.transport(f, x))
                    b = self.target.transport(f, self.forward(omega, x))
                    if a != b:
                        return f"not natural at {self.source.encode(x)} under {f.text()}"
        return None

    def validate(self, cap: Sequence[int], seed: int = 0, weights: bool = True) -> "SpeciesIso":
        msg = self.problems(cap, seed, weights)
        if msg:
            raise IsoError(msg)
        return self


def identity_iso(S: SpeciesBundle) -> SpeciesIso:
    same = lambda omega, x: x
    return SpeciesIso(S, S, same, same)


# -- E(G) ---------------------------------------------------------------

def _move_parts(G: SpeciesBundle, f: SortedBijection, x: ComponentSet) -> ComponentSet:
    out = []
    for key, g in x:
        support = LabeledSet.from_key(key)
        out.append((f.image(support).key(), G.transport(f.restrict(support), g)))
    return tuple(sorted(out))


def _lowest_point(omega: LabeledSet) -> Optional[BasePoint]:
    for sort, labels in enumerate(omega):
        if labels:
            return BasePoint(min(labels), sort)
    return None


def default_base_point(omega: LabeledSet) -> BasePoint:
    """Smallest label of the first nonempty sort."""
    p = _lowest_point(omega)
    if p is None:
        raise ValueError("the empty object has no base point")
    return p


def _component_sets(G: SpeciesBundle):
    cache: Dict[LabeledSet, frozenset] = {}

    def g_on(block):
        if block not in cache:
            cache[block] = frozenset(G.enumerate(block))
        return cache[block]

    def enumerate_(omega: LabeledSet):
        p = _lowest_point(omega)
        if p is None:
            yield ()
            return
        for block in subobjects(omega):
            if not block.contains(p):
                continue
            here = g_on(block)
            if not here:
                continue
            key = block.key()
            tails = list(enumerate_(omega.minus(block)))
            for g in here:
                for tail in tails:
                    yield tuple(sorted(((key, g),) + tail))

    return enumerate_


def _encode_parts(G: SpeciesBundle):
    def encode(x: ComponentSet) -> str:
        return "E{" + ",".join(f"{G.encode(g)}@{LabeledSet.from_key(k).text()}" for k, g in x) + "}"
    return encode


def _product_weight(G: SpeciesBundle):
    wg = G.weight_or_unit()

    def weight(omega: LabeledSet, x: ComponentSet) -> Poly:
        out = ONE
        for key, g in x:
            out = out * wg(LabeledSet.from_key(key), g)
        return out
    return weight


def union_of_parts(bp: OrderedBipartition, x1: ComponentSet, x2: ComponentSet) -> ComponentSet:
    return tuple(sorted(x1 + x2))


def sets_of(G: SpeciesBundle) -> SpeciesBundle:
    """E(G): sets of G-structures on the blocks of a partition of the object,
    composed by union of the component sets."""
    return SpeciesBundle(
        name=f"E({G.name})",
        arity=G.arity,
        enumerate=_component_sets(G),
        transport=lambda f, x: _move_parts(G, f, x),
        eta=union_of_parts,
        weight=_product_weight(G) if G.weight else None,
        encode=_encode_parts(G),
    )


def twist(G: SpeciesBundle, g: SpeciesIso, cap: Optional[Sequence[int]] = None, seed: int = 0) -> SpeciesBundle:
    """E(G) with x1, x2 -> x1 united with g applied to every component of x2.

    ``g`` is validated as a weight-preserving automorphism of G up to ``cap``
    (default: norm 4 in the first sort, 1 elsewhere).
    """
    if g.source is not G or g.target is not G:
        raise IsoError("the twist must be an automorphism of G")
    if cap is None:
        cap = (4,) + (1,) * (G.arity - 1)
    g.validate(cap, seed)
    base = sets_of(G)

    def eta(bp: OrderedBipartition, x1: ComponentSet, x2: ComponentSet) -> ComponentSet:
        moved = tuple((k, g.forward(LabeledSet.from_key(k), y)) for k, y in x2)
        return tuple(sorted(x1 + moved))

    return base.with_eta(eta, name=f"E({G.name})[twisted]")


# -- the two-point species and Example-style twist -----------------------

def _two_point_enumerate(omega: LabeledSet):
    if omega.norm() == 1:
        yield 0
        yield 1


def two_point_species() -> SpeciesBundle:
    """Two structures (0 and 1) on every one-point object, none elsewhere."""
    return SpeciesBundle(
        name="two-point",
        arity=1,
        enumerate=_two_point_enumerate,
        transport=lambda f, v: v,
        encode=str,
    )


def swap_iso(G: SpeciesBundle) -> SpeciesIso:
    flip = lambda omega, v: 1 - v
    return SpeciesIso(G, G, flip, flip)


def twisted_binary_species(seed: int = 0) -> SpeciesBundle:
    G = two_point_species()
    return twist(G, swap_iso(G), seed=seed)


def component_set_to_function(x: ComponentSet):
    """Read a component set over the two-point species as a binary function."""
    return tuple(sorted((key[0][0], v) for key, v in x))


# -- psi ----------------------------------------------------------------

def build_psi(S: SpeciesBundle, cap: Sequence[int], seed: int = 0) -> SpeciesIso:
    """The isomorphism F -> E(F_eta) by base-point peeling, validated up to cap.

    Requires pointwise associativity and commutativity up to cap; checks
    that every base point yields the same map, and that the result is a
    natural weight-preserving bijection.
    """
    from ..checks import check_pointwise

    pw = check_pointwise(S, cap)
    if not pw.passed:
        raise PsiError(f"operator is not pointwise associative and commutative: {pw.witness}")
    eng = engine_for(S)
    E = sets_of(indecomposable_species(S))
    tables: Dict[Tuple[LabeledSet, BasePoint], dict] = {}

    def table(omega, point):
        key = (omega, point)
        if key not in tables:
            tables[key] = eng.decomposition_table(omega, point)
        return tables[key]

    def peel(omega: LabeledSet, x, point_of) -> ComponentSet:
        if omega.is_empty():
            return ()
        first, y1, x1 = table(omega, point_of(omega))[x]
        return tuple(sorted(((first.key(), y1),) + peel(omega.minus(first), x1, point_of)))

    memo: Dict[Tuple[LabeledSet, object], ComponentSet] = {}

    def forward(omega: LabeledSet, x) -> ComponentSet:
        k = (omega, x)
        if k not in memo:
            memo[k] = peel(omega, x, default_base_point)
        return memo[k]

    inverse: Dict[LabeledSet, dict] = {}

    def backward(omega: LabeledSet, e: ComponentSet):
        if omega not in inverse:
            inverse[omega] = {forward(omega, x): x for x in eng.F(omega)}
        return inverse[omega][e]

    # base-point independence: peel with each point first, default afterwards
    for omega in objects_upto(cap):
        for point in omega.points():
            for x in eng.F(omega):
                first, y1, x1 = table(omega, point)[x]
                alt = tuple(sorted(((first.key(), y1),) + forward(omega.minus(first), x1)))
                if alt != forward(omega, x):
                    raise PsiError(
                        f"base point ({point.label},{point.sort}) changes psi at {S.encode(x)} on {omega.text()}"
                    )
    iso = SpeciesIso(S, E, forward, backward)
    msg = iso.problems(cap, seed)
    if msg:
        raise PsiError(msg)
    return iso


# -- operator transport -------------------------------------------------

def transport_operator(iso: SpeciesIso, source: SpeciesBundle, cap: Optional[Sequence[int]] = None,
                       seed: int = 0) -> SpeciesBundle:
    """Target species with eta2(x1, x2) = iso(eta1(iso^-1 x1, iso^-1 x2)).

    With ``cap`` the isomorphism is validated and the conjugated operator is
    run through the composition-operator checks.
    """
    eta1 = source.require_eta()
    if iso.source is not source and iso.source.enumerate is not source.enumerate:
        raise IsoError("isomorphism does not start at the source species")

    def eta(bp: OrderedBipartition, x1, x2):
        y1 = iso.backward(bp.first, x1)
        y2 = iso.backward(bp.second, x2)
        return iso.forward(bp.whole, eta1(bp, y1, y2))

    out = iso.target.with_eta(eta, name=f"{iso.target.name}[transported]")
    if cap is not None:
        msg = iso.problems(cap, seed, weights=False)
        if msg:
            raise IsoError(msg)
        from ..checks import check_composition_operator

        rep = check_composition_operator(out, cap, seed)
        if not rep.passed:
            raise IsoError(f"transported operator fails {rep.witness}")
    return out


def complement_iso(source: SpeciesBundle, target: SpeciesBundle) -> SpeciesIso:
    """Complementation b -> b^c between two bipartite-graph bundles."""
    from .bipartite import complement

    return SpeciesIso(source, target, complement, complement)


def check_psi(S: SpeciesBundle, cap: Sequence[int], seed: int = 0):
    """Build psi and confirm eta(x1, x2) = psi^-1(psi(x1) united with psi(x2))
    for every pair, both directly and via :func:`transport_operator`."""
    import time

    from ..checks import FAIL, CheckReport
    from ..objects import bipartitions

    t0 = time.perf_counter()
    rep = CheckReport("psi")
    try:
        psi = build_psi(S, cap, seed)
    except PsiError as exc:
        rep.verdict = FAIL
        rep.witness = {"problem": str(exc)}
        rep.elapsed_ms = (time.perf_counter() - t0) * 1000
        return rep
    eta = S.require_eta()
    E = psi.target
    recovered = transport_operator(psi.inverted(), E).require_eta()
    eng = engine_for(S)
    cases = 0
    for omega in objects_upto(cap):
        for bp in bipartitions(omega):
            for x1 in eng.F(bp.first):
                p1 = psi.forward(bp.first, x1)
                for x2 in eng.F(bp.second):
                    cases += 1
                    want = eta(bp, x1, x2)
                    via_union = psi.backward(omega, union_of_parts(bp, p1, psi.forward(bp.second, x2)))
                    via_transport = recovered(bp, x1, x2)
                    if want != via_union or want != via_transport:
                        rep.verdict = FAIL
                        rep.witness = {"object": omega.text(), "partition": bp.text(),
                                       "pair": [S.encode(x1), S.encode(x2)], "eta": S.encode(want),
                                       "via_components": S.encode(via_union),
                                       "via_transport": S.encode(via_transport)}
                        rep.stats = {"cases_checked": cases}
                        rep.elapsed_ms = (time.perf_counter() - t0) * 1000
                        return rep
    rep.stats = {"cases_checked": cases, "base_point_independent": True}
    rep.notes.append(f"psi validated (bijective, natural, weight-preserving) up to cap {list(cap)}")
    rep.elapsed_ms = (time.perf_counter() - t0) * 1000
    return rep
