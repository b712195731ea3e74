"""Exhaustive checkers for composition operators and the exponential
formulae they imply.

Every checker walks the standard objects up to a cap and returns a
:class:`CheckReport`.  A failing report always carries a witness: the
object, partitions and structures involved, in the species' text encoding,
plus the raw Python values under ``raw`` for re-checking.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from math import factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .egf import Egf, egf_exp, egf_pow_y
from .objects import (
    LabeledSet,
    OrderedBipartition,
    SortedBijection,
    bipartitions,
    morphism_sample,
    objects_upto,
    set_partitions,
    subobjects,
)
from .poly import ONE, Y
from .species import (
    ComponentError,
    SpeciesBundle,
    engine_for,
    filtration_egf,
    indecomposables_egf,
    species_egf,
)

PASS, FAIL = "pass", "fail"


@dataclass
class CheckReport:
    name: str
    verdict: str = PASS
    witness: Optional[Dict[str, Any]] = None
    stats: Dict[str, Any] = field(default_factory=dict)
    elapsed_ms: float = 0.0
    notes: List[str] = field(default_factory=list)
    raw: Any = field(default=None, repr=False, compare=False)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def cases_checked(self) -> int:
        return int(self.stats.get("cases_checked", 0))

    def to_dict(self, timings: bool = True) -> dict:
        out = {"name": self.name, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        out["cases_checked"] = self.cases_checked
        out["elapsed_ms"] = round(self.elapsed_ms, 3) if timings else 0
        extra = {k: v for k, v in self.stats.items() if k != "cases_checked"}
        if extra:
            out["stats"] = extra
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


class _Recorder:
    def __init__(self, name: str):
        self.report = CheckReport(name)
        self.cases = 0
        self._t0 = time.perf_counter()

    def _finish(self) -> CheckReport:
        self.report.stats["cases_checked"] = self.cases
        self.report.elapsed_ms = (time.perf_counter() - self._t0) * 1000
        return self.report

    def fail(self, witness: Dict[str, Any], raw: Any = None) -> CheckReport:
        self.report.verdict = FAIL
        self.report.witness = witness
        self.report.raw = raw
        return self._finish()

    def ok(self) -> CheckReport:
        return self._finish()


def _enc(S: SpeciesBundle, xs):
    if isinstance(xs, (set, frozenset, list, tuple)) and not _is_structure(S, xs):
        return sorted(S.encode(x) for x in xs)
    return S.encode(xs)


def _is_structure(S, x) -> bool:
    try:
        S.encode(x)
        return True
    except Exception:
        return False


def _first(xs):
    return min(xs, key=repr)


def _cap_note(cap) -> str:
    return f"verified exhaustively for standard objects up to cap {list(cap)} only"


# -- composition-operator axioms --------------------------------------

def check_injective(S: SpeciesBundle, cap: Sequence[int]) -> CheckReport:
    rec = _Recorder("inject")
    eta = S.require_eta()
    eng = engine_for(S)
    for omega in objects_upto(cap):
        whole = eng.F(omega)
        for bp in bipartitions(omega):
            seen = {}
            for a in eng.F(bp.first):
                for b in eng.F(bp.second):
                    rec.cases += 1
                    z = eta(bp, a, b)
                    if z not in whole:
                        return rec.fail(
                            {"object": omega.text(), "partition": bp.text(), "pair": [S.encode(a), S.encode(b)],
                             "image": S.encode(z), "problem": "image is not a structure on the union"},
                            (omega, bp, a, b, z),
                        )
                    if z in seen:
                        a0, b0 = seen[z]
                        return rec.fail(
                            {"object": omega.text(), "partition": bp.text(),
                             "pairs": [[S.encode(a0), S.encode(b0)], [S.encode(a), S.encode(b)]],
                             "image": S.encode(z), "problem": "two pairs share an image"},
                            (omega, bp, (a0, b0), (a, b), z),
                        )
                    seen[z] = (a, b)
    rec.report.notes.append(_cap_note(cap))
    return rec.ok()


def check_naturality(S: SpeciesBundle, cap: Sequence[int], seed: int = 0) -> CheckReport:
    """Naturality square on adjacent transpositions and shifted relabellings."""
    rec = _Recorder("natural")
    eta = S.require_eta()
    eng = engine_for(S)
    rng = random.Random(seed)
    for omega in objects_upto(cap):
        morphs = morphism_sample(omega, rng)[1:]
        if not morphs:
            continue
        for bp in bipartitions(omega):
            xs, ys = eng.F(bp.first), eng.F(bp.second)
            for f in morphs:
                f1, f2 = f.restrict(bp.first), f.restrict(bp.second)
                tbp = OrderedBipartition(f.image(bp.first), f.image(bp.second))
                for a in xs:
                    ta = S.transport(f1, a)
                    for b in ys:
                        rec.cases += 1
                        lhs = eta(tbp, ta, S.transport(f2, b))
                        rhs = S.transport(f, eta(bp, a, b))
                        if lhs != rhs:
                            return rec.fail(
                                {"object": omega.text(), "partition": bp.text(), "morphism": f.text(),
                                 "pair": [S.encode(a), S.encode(b)],
                                 "eta_after_transport": S.encode(lhs), "transport_after_eta": S.encode(rhs)},
                                (omega, bp, f, a, b),
                            )
    rec.report.notes.append(_cap_note(cap))
    return rec.ok()


def d1_sides(S: SpeciesBundle, bp: OrderedBipartition, bq: OrderedBipartition):
    """Both sides of the decomposition axiom for two partitions of one object."""
    eng = engine_for(S)
    lhs = eng.image(bp.first, bp.second) & eng.image(bq.first, bq.second)
    o11, o12 = bp.first.intersect(bq.first), bp.first.intersect(bq.second)
    o21, o22 = bp.second.intersect(bq.first), bp.second.intersect(bq.second)
    rhs = eng.apply(bp, eng.image(o11, o12), eng.image(o21, o22))
    return lhs, rhs


def check_d1(S: SpeciesBundle, cap: Sequence[int]) -> CheckReport:
    rec = _Recorder("d1")
    S.require_eta()
    for omega in objects_upto(cap):
        bps = bipartitions(omega)
        for bp in bps:
            for bq in bps:
                rec.cases += 1
                lhs, rhs = d1_sides(S, bp, bq)
                if lhs != rhs:
                    x = _first(lhs ^ rhs)
                    return rec.fail(
                        {"object": omega.text(), "partitions": [bp.text(), bq.text()],
                         "structure": S.encode(x), "in_intersection": x in lhs, "in_refinement": x in rhs},
                        (omega, bp, bq, x),
                    )
    rec.report.notes.append(_cap_note(cap))
    return rec.ok()


def check_composition_operator(S: SpeciesBundle, cap: Sequence[int], seed: int = 0) -> CheckReport:
    """Injectivity, naturality and the decomposition axiom together."""
    t0 = time.perf_counter()
    parts = []
    for sub in (check_injective(S, cap), check_naturality(S, cap, seed), check_d1(S, cap)):
        parts.append(sub)
        if not sub.passed:
            break
    rep = CheckReport("composition-operator")
    rep.stats = {"cases_checked": sum(p.cases_checked for p in parts),
                 "parts": {p.name: p.verdict for p in parts}}
    failed = [p for p in parts if not p.passed]
    if failed:
        rep.verdict = FAIL
        rep.witness = dict(failed[0].witness, check=failed[0].name)
        rep.raw = failed[0].raw
    rep.notes.append(_cap_note(cap))
    rep.elapsed_ms = (time.perf_counter() - t0) * 1000
    return rep


# -- filtration --------------------------------------------------------

def check_partition_properties(S: SpeciesBundle, cap: Sequence[int]) -> CheckReport:
    """Levels F^(k) cover F, are disjoint, F^(1) = F_eta, and vanish past the norm."""
    rec = _Recorder("partition")
    eng = engine_for(S)
    empty = LabeledSet.empty(S.arity)
    rec.cases += 1
    if len(eng.F(empty)) != 1:
        return rec.fail({"object": empty.text(), "problem": f"|F[empty]| = {len(eng.F(empty))}, expected 1"})
    for omega in objects_upto(cap):
        whole = eng.F(omega)
        norm = omega.norm()
        levels = [eng.filtration(omega, k) for k in range(norm + 3)]
        rec.cases += 1
        covered = frozenset().union(*levels)
        if covered != whole:
            x = _first(covered ^ whole)
            return rec.fail({"object": omega.text(), "structure": S.encode(x),
                             "problem": "levels do not cover F" if x in whole else "level outside F"},
                            (omega, x))
        for k, l in itertools.combinations(range(norm + 1), 2):
            rec.cases += 1
            common = levels[k] & levels[l]
            if common:
                x = _first(common)
                return rec.fail({"object": omega.text(), "structure": S.encode(x), "levels": [k, l],
                                 "problem": "levels overlap"}, (omega, x, k, l))
        rec.cases += 1
        if levels[1] != eng.indecomposables(omega):
            x = _first(levels[1] ^ eng.indecomposables(omega))
            return rec.fail({"object": omega.text(), "structure": S.encode(x),
                             "problem": "level 1 differs from the indecomposables"}, (omega, x))
        for k in (norm + 1, norm + 2):
            rec.cases += 1
            if levels[k]:
                x = _first(levels[k])
                return rec.fail({"object": omega.text(), "structure": S.encode(x), "levels": [k],
                                 "problem": "level above the norm is nonempty"}, (omega, x, k))
    rec.report.notes.append(_cap_note(cap))
    return rec.ok()


# -- permutability -----------------------------------------------------

def bracketings(leaves: Tuple[int, ...]):
    """Every binary bracketing of the leaves, in every leaf order."""
    if len(leaves) == 1:
        yield leaves[0]
        return
    rest = leaves
    for r in range(1, len(rest)):
        for left in itertools.combinations(rest, r):
            right = tuple(x for x in rest if x not in left)
            for lt in bracketings(left):
                for rt in bracketings(right):
                    yield (lt, rt)


def _tree_text(tree) -> str:
    if isinstance(tree, int):
        return f"P{tree + 1}"
    return f"eta({_tree_text(tree[0])} x {_tree_text(tree[1])})"


def _tree_support(tree, parts) -> LabeledSet:
    if isinstance(tree, int):
        return parts[tree]
    return _tree_support(tree[0], parts).union(_tree_support(tree[1], parts))


def _evaluator(S: SpeciesBundle, parts, leaf_sets):
    eng = engine_for(S)
    memo = {}

    def ev(tree):
        if isinstance(tree, int):
            return leaf_sets[tree]
        if tree not in memo:
            left, right = tree
            bp = OrderedBipartition(_tree_support(left, parts), _tree_support(right, parts))
            memo[tree] = eng.apply(bp, ev(left), ev(right))
        return memo[tree]

    return ev


def _union_of(parts, idx) -> LabeledSet:
    out = LabeledSet.empty(parts[0].arity)
    for i in idx:
        out = out.union(parts[i])
    return out


def intersection_formula(S: SpeciesBundle, parts: Sequence[LabeledSet], pairs) -> frozenset:
    """Intersection of eta(F[P_I] x F[P_J]) over the given (I, J) index pairs."""
    eng = engine_for(S)
    out = None
    for I, J in pairs:
        img = eng.image(_union_of(parts, I), _union_of(parts, J))
        out = img if out is None else out & img
    return out


def _all_splits(m):
    idx = range(m)
    for r in range(1, m):
        for I in itertools.combinations(idx, r):
            yield I, tuple(i for i in idx if i not in I)


ETA3_PAIRS = [((0, 1), (2,)), ((0, 2), (1,)), ((1, 2), (0,))]
ETA4_PAIRS = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((1, 2), (0, 3)),
              ((0,), (1, 2, 3)), ((1,), (0, 2, 3)), ((2,), (0, 1, 3)), ((3,), (0, 1, 2))]


def check_permutability(S: SpeciesBundle, cap: Sequence[int], max_m: int = 4) -> CheckReport:
    """All bracketings of F-sets (and of F_eta-sets) over a set partition agree,
    and equal the intersection formulas for m parts."""
    if max_m < 2:
        raise ValueError("max_m must be at least 2")
    rec = _Recorder("permute")
    eng = engine_for(S)
    S.require_eta()
    per_m = {}
    for omega in objects_upto(cap):
        for m in range(2, max_m + 1):
            trees = list(bracketings(tuple(range(m))))
            for parts in set_partitions(omega, m):
                for label, leaf_fn in (("F", eng.F), ("F_eta", eng.indecomposables)):
                    ev = _evaluator(S, parts, [leaf_fn(p) for p in parts])
                    ref_tree, ref = trees[0], ev(trees[0])
                    for tree in trees[1:]:
                        rec.cases += 1
                        per_m[m] = per_m.get(m, 0) + 1
                        got = ev(tree)
                        if got != ref:
                            x = _first(got ^ ref)
                            return rec.fail(
                                {"object": omega.text(), "parts": [p.text() for p in parts], "sets": label,
                                 "bracketings": [_tree_text(ref_tree), _tree_text(tree)], "structure": S.encode(x)},
                                (omega, parts, ref_tree, tree, x),
                            )
                    if label != "F":
                        continue
                    formulas = [("all-splits", list(_all_splits(m)))]
                    if m == 3:
                        formulas.append(("eta3", ETA3_PAIRS))
                    if m == 4:
                        formulas.append(("eta4", ETA4_PAIRS))
                    for fname, pairs in formulas:
                        rec.cases += 1
                        got = intersection_formula(S, parts, pairs)
                        if got != ref:
                            x = _first(got ^ ref)
                            return rec.fail(
                                {"object": omega.text(), "parts": [p.text() for p in parts], "sets": label,
                                 "bracketings": [_tree_text(ref_tree), f"intersection formula {fname}"],
                                 "structure": S.encode(x)},
                                (omega, parts, ref_tree, fname, x),
                            )
    rec.report.stats["by_m"] = {str(k): v for k, v in sorted(per_m.items())}
    rec.report.notes.append(_cap_note(cap))
    return rec.ok()


# -- base-point decomposition -----------------------------------------

def check_base_point(S: SpeciesBundle, cap: Sequence[int]) -> CheckReport:
    rec = _Recorder("basepoint")
    eng = engine_for(S)
    S.require_eta()
    for omega in objects_upto(cap):
        if omega.is_empty():
            continue
        norm = omega.norm()
        for point in omega.points():
            firsts = [o for o in subobjects(omega) if o.contains(point)]
            for k in [None] + list(range(1, norm + 1)):
                rec.cases += 1
                target = eng.F(omega) if k is None else eng.filtration(omega, k)
                union, total = set(), 0
                for first in firsts:
                    rest = omega.minus(first)
                    tail = eng.F(rest) if k is None else eng.filtration(rest, k - 1)
                    piece = eng.apply(OrderedBipartition(first, rest), eng.indecomposables(first), tail)
                    total += len(piece)
                    union |= piece
                label = "F" if k is None else f"F^({k})"
                if total != len(union):
                    return rec.fail({"object": omega.text(), "base_point": [point.label, point.sort],
                                     "sets": label, "problem": "decomposition pieces overlap"},
                                    (omega, point, k))
                if union != target:
                    x = _first(union ^ target)
                    return rec.fail({"object": omega.text(), "base_point": [point.label, point.sort],
                                     "sets": label, "structure": S.encode(x),
                                     "problem": "decomposition does not reproduce the set"},
                                    (omega, point, k, x))
    rec.report.notes.append(_cap_note(cap))
    return rec.ok()


# -- functoriality ------------------------------------------------------

def check_transport(S: SpeciesBundle, cap: Sequence[int], seed: int = 0) -> CheckReport:
    """Transport is a functor: identity, composition, and bijective images."""
    rec = _Recorder("transport")
    eng = engine_for(S)
    rng = random.Random(seed)
    for omega in objects_upto(cap):
        xs = eng.F(omega)
        morphs = morphism_sample(omega, rng)
        ident = morphs[0]
        for x in xs:
            rec.cases += 1
            if S.transport(ident, x) != x:
                return rec.fail({"object": omega.text(), "structure": S.encode(x),
                                 "problem": "identity transport moved the structure"}, (omega, x))
        for f in morphs[1:]:
            target = eng.F(f.image(omega))
            moved = {S.transport(f, x) for x in xs}
            rec.cases += 1
            if moved != target:
                return rec.fail({"object": omega.text(), "morphism": f.text(),
                                 "problem": "transport is not a bijection onto F of the image"}, (omega, f))
            back = f.inverse()
            for x in xs:
                rec.cases += 1
                if S.transport(back, S.transport(f, x)) != x:
                    return rec.fail({"object": omega.text(), "morphism": f.text(), "structure": S.encode(x),
                                     "problem": "transport does not compose"}, (omega, f, x))
    return rec.ok()


def check_functoriality(S: SpeciesBundle, cap: Sequence[int], seed: int = 0) -> CheckReport:
    """Transport maps F_eta and each F^(k) on an object onto the same sets on the image."""
    base = check_transport(S, cap, seed)
    rec = _Recorder("functorial")
    rec.cases = base.cases_checked
    if not base.passed:
        return rec.fail(dict(base.witness), base.raw)
    eng = engine_for(S)
    S.require_eta()
    rng = random.Random(seed)
    for omega in objects_upto(cap):
        for f in morphism_sample(omega, rng):
            image = f.image(omega)
            sets = [("F_eta", eng.indecomposables(omega), eng.indecomposables(image))]
            sets += [(f"F^({k})", eng.filtration(omega, k), eng.filtration(image, k))
                     for k in range(omega.norm() + 1)]
            for label, src, dst in sets:
                rec.cases += 1
                moved = frozenset(S.transport(f, x) for x in src)
                if moved != dst:
                    x = _first(moved ^ dst)
                    return rec.fail({"object": omega.text(), "morphism": f.text(), "sets": label,
                                     "structure": S.encode(x)}, (omega, f, label, x))
    rec.report.notes.append(_cap_note(cap))
    return rec.ok()


# -- weights ------------------------------------------------------------

def check_weight(S: SpeciesBundle, cap: Sequence[int], seed: int = 0, axioms=("W0", "W1", "W2")) -> CheckReport:
    name = "weights" if len(axioms) == 3 else "+".join(a.lower() for a in axioms)
    rec = _Recorder(name)
    eng = engine_for(S)
    w = S.weight_or_unit()
    if "W0" in axioms:
        empty = LabeledSet.empty(S.arity)
        for x in eng.F(empty):
            rec.cases += 1
            if w(empty, x) != ONE:
                return rec.fail({"axiom": "W0", "structure": S.encode(x), "weight": str(w(empty, x))}, (empty, x))
    if "W1" in axioms:
        rng = random.Random(seed)
        for omega in objects_upto(cap):
            for f in morphism_sample(omega, rng)[1:]:
                image = f.image(omega)
                for x in eng.F(omega):
                    rec.cases += 1
                    a, b = w(omega, x), w(image, S.transport(f, x))
                    if a != b:
                        return rec.fail({"axiom": "W1", "object": omega.text(), "morphism": f.text(),
                                         "structure": S.encode(x), "weights": [str(a), str(b)]}, (omega, f, x))
    if "W2" in axioms:
        eta = S.require_eta()
        for omega in objects_upto(cap):
            for bp in bipartitions(omega):
                for y1 in eng.indecomposables(bp.first):
                    wy = w(bp.first, y1)
                    for x2 in eng.F(bp.second):
                        rec.cases += 1
                        z = eta(bp, y1, x2)
                        lhs, rhs = w(omega, z), wy * w(bp.second, x2)
                        if lhs != rhs:
                            return rec.fail(
                                {"axiom": "W2", "object": omega.text(), "partition": bp.text(),
                                 "pair": [S.encode(y1), S.encode(x2)], "image": S.encode(z),
                                 "weight_of_image": str(lhs), "product_of_weights": str(rhs)},
                                (omega, bp, y1, x2),
                            )
    rec.report.notes.append(_cap_note(cap))
    return rec.ok()


# -- pointwise laws -----------------------------------------------------

def _ordered_triples(omega: LabeledSet):
    pts = omega.points()
    for labels in itertools.product(range(3), repeat=len(pts)):
        parts = [[[] for _ in range(omega.arity)] for _ in range(3)]
        for p, which in zip(pts, labels):
            parts[which][p.sort].append(p.label)
        yield tuple(LabeledSet(p) for p in parts)


def _commutativity_witness(S, eng, eta, cap, rec, proper: bool):
    for omega in objects_upto(cap):
        for bp in bipartitions(omega):
            if bp.is_proper() != proper:
                continue
            sw = bp.swapped()
            for a in eng.F(bp.first):
                for b in eng.F(bp.second):
                    rec.cases += 1
                    u, v = eta(bp, a, b), eta(sw, b, a)
                    if u != v:
                        return ({"object": omega.text(), "partition": bp.text(), "pair": [S.encode(a), S.encode(b)],
                                 "eta(x1,x2)": S.encode(u), "eta(x2,x1)": S.encode(v)}, (bp, a, b))
    return None


def _associativity_witness(S, eng, eta, cap, rec, proper: bool):
    for omega in objects_upto(cap):
        for o1, o2, o3 in _ordered_triples(omega):
            if (not (o1.is_empty() or o2.is_empty() or o3.is_empty())) != proper:
                continue
            bp12, bp12_3 = OrderedBipartition(o1, o2), OrderedBipartition(o1.union(o2), o3)
            bp23, bp1_23 = OrderedBipartition(o2, o3), OrderedBipartition(o1, o2.union(o3))
            for a in eng.F(o1):
                for b in eng.F(o2):
                    ab = eta(bp12, a, b)
                    for c in eng.F(o3):
                        rec.cases += 1
                        u = eta(bp12_3, ab, c)
                        v = eta(bp1_23, a, eta(bp23, b, c))
                        if u != v:
                            return ({"object": omega.text(), "parts": [o1.text(), o2.text(), o3.text()],
                                     "triple": [S.encode(a), S.encode(b), S.encode(c)],
                                     "left_nested": S.encode(u), "right_nested": S.encode(v)},
                                    (o1, o2, o3, a, b, c))
    return None


def check_pointwise(S: SpeciesBundle, cap: Sequence[int]) -> CheckReport:
    """Element-level commutativity and associativity of the operator.

    Splits with every part nonempty are searched first so that witnesses
    avoid the empty object when possible.
    """
    rec = _Recorder("pointwise")
    eta = S.require_eta()
    eng = engine_for(S)
    comm_w = assoc_w = None
    for proper in (True, False):
        comm_w = comm_w or _commutativity_witness(S, eng, eta, cap, rec, proper)
        assoc_w = assoc_w or _associativity_witness(S, eng, eta, cap, rec, proper)
    rec.report.stats["commutative"] = comm_w is None
    rec.report.stats["associative"] = assoc_w is None
    if comm_w or assoc_w:
        witness, raw = {}, {}
        if comm_w:
            witness["commutativity"], raw["commutativity"] = comm_w
        if assoc_w:
            witness["associativity"], raw["associativity"] = assoc_w
        return rec.fail(witness, raw)
    rec.report.notes.append(_cap_note(cap))
    return rec.ok()


# -- generating-function identities -------------------------------------

def _series_fail(rec, identity, diff):
    idx, a, b = diff
    return rec.fail({"identity": identity, "index": list(idx), "lhs": str(a), "rhs": str(b)}, diff)


def verify_exponential_formula(S: SpeciesBundle, cap: Sequence[int], budget: Optional[int] = None) -> CheckReport:
    """GF_F = exp(GF_{F_eta}) exactly up to cap."""
    rec = _Recorder("exp-formula")
    cap = tuple(cap)
    lhs = species_egf(S, cap, budget=budget)
    rhs = egf_exp(indecomposables_egf(S, cap, budget=budget))
    rec.cases = len(list(lhs.indices()))
    diff = lhs.first_difference(rhs)
    if diff:
        return _series_fail(rec, "GF_F = exp(GF_indecomposables)", diff)
    rec.report.raw = {"GF_F": lhs, "exp_of_indecomposables": rhs}
    return rec.ok()


def verify_refined_formula(S: SpeciesBundle, cap: Sequence[int], budget: Optional[int] = None) -> CheckReport:
    """Refined series equals exp(y GF_{F_eta}) and (GF_F)^y; each level
    F^(k) has series GF_{F_eta}^k / k!; y = 1 recovers GF_F."""
    rec = _Recorder("refined-formula")
    cap = tuple(cap)
    try:
        refined = species_egf(S, cap, refined=True, budget=budget)
    except ComponentError as exc:
        return rec.fail({"identity": "component counts", "object": exc.omega.text() if exc.omega else None,
                         "problem": str(exc)}, exc)
    plain = species_egf(S, cap, budget=budget)
    ind = indecomposables_egf(S, cap, budget=budget)
    n_idx = len(list(refined.indices()))
    checks = [
        ("refined = exp(y GF_indecomposables)", refined, egf_exp(ind.scale(Y))),
        ("refined = GF_F^y", refined, egf_pow_y(plain)),
        ("refined at y=1 = GF_F", refined.eval_at_one("y"), plain),
    ]
    for name, a, b in checks:
        rec.cases += n_idx
        diff = a.first_difference(b)
        if diff:
            return _series_fail(rec, name, diff)
    power = Egf.one(S.arity, cap)
    for k in range(sum(cap) + 2):
        rec.cases += n_idx
        level = filtration_egf(S, cap, k, budget=budget)
        diff = level.first_difference(power.scale(ONE / factorial(k)))
        if diff:
            return _series_fail(rec, f"GF_level{k} = GF_indecomposables^{k}/{k}!", diff)
        power = power * ind
    return rec.ok()
