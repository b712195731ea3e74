"""Truncated multivariate power series in z_1..z_r over Q[t, y].

Coefficients are stored *ordinary*: the entry at ``(n_1, ..., n_r)`` is the
coefficient of ``z_1^{n_1} ... z_r^{n_r}``, with the factorials of an
exponential generating function already divided out.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from math import factorial, prod
from typing import Callable, Dict, Iterator, Optional, Sequence, Tuple, Union

from .poly import ONE, Poly, Y

MultiIndex = Tuple[int, ...]
Coeff = Union[Poly, int, Fraction]


class SeriesError(ValueError):
    """Raised for arity/cap mismatches and out-of-domain exp/log/pow."""


def _as_poly(c: Coeff) -> Poly:
    return c if isinstance(c, Poly) else Poly.const(c)


def indices_upto(cap: Sequence[int]) -> Iterator[MultiIndex]:
    """All multi-indices <= cap, in lexicographic order."""
    return itertools.product(*(range(c + 1) for c in cap))


def factorial_weight(idx: Sequence[int]) -> int:
    return prod(factorial(n) for n in idx)


class Egf:
    """Immutable truncated series with a per-sort inclusive cap."""

    __slots__ = ("arity", "cap", "_coeffs")

    def __init__(self, arity: int, cap: Sequence[int], coeffs: Optional[Dict[MultiIndex, Coeff]] = None):
        cap = tuple(int(c) for c in cap)
        if len(cap) != arity:
            raise SeriesError(f"cap {cap} does not have arity {arity}")
        if any(c < 0 for c in cap):
            raise SeriesError("negative cap")
        self.arity = arity
        self.cap = cap
        clean: Dict[MultiIndex, Poly] = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != arity:
                raise SeriesError(f"index {idx} has wrong arity")
            if any(i < 0 for i in idx):
                raise SeriesError(f"negative index {idx}")
            if any(i > c for i, c in zip(idx, cap)):
                continue
            p = _as_poly(c)
            if idx in clean:
                p = clean[idx] + p
            if p.is_zero():
                clean.pop(idx, None)
            else:
                clean[idx] = p
        self._coeffs = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, arity: int, cap: Sequence[int]) -> "Egf":
        return cls(arity, cap)

    @classmethod
    def one(cls, arity: int, cap: Sequence[int]) -> "Egf":
        return cls(arity, cap, {(0,) * arity: ONE})

    @classmethod
    def monomial(cls, arity: int, cap: Sequence[int], idx: Sequence[int], c: Coeff = 1) -> "Egf":
        return cls(arity, cap, {tuple(idx): c})

    @classmethod
    def from_function(cls, arity: int, cap: Sequence[int], fn: Callable[[MultiIndex], Coeff]) -> "Egf":
        return cls(arity, cap, {idx: fn(idx) for idx in indices_upto(cap)})

    @classmethod
    def from_weighted_counts(cls, arity: int, cap: Sequence[int], counts: Dict[MultiIndex, Coeff]) -> "Egf":
        """Build from ``sum_x w(x)`` per index (factorials divided out here)."""
        return cls(arity, cap, {idx: _as_poly(c) / factorial_weight(idx) for idx, c in counts.items()})

    # -- access -------------------------------------------------------
    def __getitem__(self, idx: Sequence[int]) -> Poly:
        idx = tuple(idx)
        if len(idx) != self.arity:
            raise SeriesError(f"index {idx} has wrong arity")
        if any(i > c for i, c in zip(idx, self.cap)):
            raise SeriesError(f"index {idx} exceeds cap {self.cap}")
        return self._coeffs.get(idx, Poly())

    coefficient = __getitem__

    def weighted_count(self, idx: Sequence[int]) -> Poly:
        """Coefficient times n_1!...n_r!, i.e. the weighted structure count."""
        return self[idx] * factorial_weight(idx)

    def items(self):
        return sorted(self._coeffs.items())

    def support(self):
        return sorted(self._coeffs)

    def constant_term(self) -> Poly:
        return self._coeffs.get((0,) * self.arity, Poly())

    def indices(self) -> Iterator[MultiIndex]:
        return indices_upto(self.cap)

    def first_difference(self, other: "Egf") -> Optional[Tuple[MultiIndex, Poly, Poly]]:
        """First multi-index (lexicographic) where the two series differ."""
        self._check_compatible(other)
        for idx in sorted(set(self._coeffs) | set(other._coeffs)):
            a, b = self[idx], other[idx]
            if a != b:
                return idx, a, b
        return None

    # -- structural helpers -------------------------------------------
    def _check_compatible(self, other: "Egf") -> None:
        if not isinstance(other, Egf):
            raise TypeError(f"expected Egf, got {type(other).__name__}")
        if other.arity != self.arity or other.cap != self.cap:
            raise SeriesError(
                f"incompatible series: arity/cap {self.arity}/{self.cap} vs {other.arity}/{other.cap}"
            )

    def truncate(self, cap: Sequence[int]) -> "Egf":
        cap = tuple(cap)
        if any(c > s for c, s in zip(cap, self.cap)):
            raise SeriesError(f"cannot raise cap {self.cap} to {cap}")
        return Egf(self.arity, cap, self._coeffs)

    def map_coeffs(self, fn: Callable[[Poly], Poly]) -> "Egf":
        return Egf(self.arity, self.cap, {k: fn(v) for k, v in self._coeffs.items()})

    def specialize(self, var: str, value) -> "Egf":
        return self.map_coeffs(lambda p: p.eval_at(var, value))

    def eval_at_one(self, var: str) -> "Egf":
        return self.map_coeffs(lambda p: p.eval_at_one(var))

    def scale_var(self, var: str, factor) -> "Egf":
        return self.map_coeffs(lambda p: p.scale_var(var, factor))

    # -- ring operations ----------------------------------------------
    def __add__(self, other: "Egf") -> "Egf":
        self._check_compatible(other)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out[k] + v if k in out else v
        return Egf(self.arity, self.cap, out)

    def __neg__(self) -> "Egf":
        return self.map_coeffs(lambda p: -p)

    def __sub__(self, other: "Egf") -> "Egf":
        return self + (-other)

    def scale(self, c: Coeff) -> "Egf":
        c = _as_poly(c)
        return self.map_coeffs(lambda p: p * c)

    def __mul__(self, other):
        if isinstance(other, (Poly, int, Fraction)):
            return self.scale(other)
        self._check_compatible(other)
        cap = self.cap
        out: Dict[MultiIndex, Poly] = {}
        b_items = list(other._coeffs.items())
        for ia, pa in self._coeffs.items():
            for ib, pb in b_items:
                idx = tuple(x + y for x, y in zip(ia, ib))
                if any(i > c for i, c in zip(idx, cap)):
                    continue
                prodp = pa * pb
                out[idx] = out[idx] + prodp if idx in out else prodp
        return Egf(self.arity, cap, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Egf":
        if not isinstance(k, int) or k < 0:
            raise SeriesError("power must be a non-negative int")
        result = Egf.one(self.arity, self.cap)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, Egf):
            return NotImplemented
        return self.arity == other.arity and self.cap == other.cap and self._coeffs == other._coeffs

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join(f"{list(k)}: {v}" for k, v in self.items())
        return f"Egf(arity={self.arity}, cap={list(self.cap)}, {{{body}}})"

    # -- analytic operations ------------------------------------------
    def exp(self) -> "Egf":
        return egf_exp(self)

    def log(self) -> "Egf":
        return egf_log(self)

    def pow_y(self) -> "Egf":
        return egf_pow_y(self)

    def partial(self, sort: int) -> "Egf":
        return egf_partial(self, sort)

    # -- serialization ------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "arity": self.arity,
            "cap": list(self.cap),
            "entries": [{"index": list(k), "poly": str(v)} for k, v in self.items()],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict) -> "Egf":
        return cls(
            int(data["arity"]),
            data["cap"],
            {tuple(e["index"]): Poly.parse(e["poly"]) for e in data["entries"]},
        )

    @classmethod
    def from_json(cls, text: str) -> "Egf":
        return cls.from_dict(json.loads(text))


def _by_total_degree(cap: Sequence[int]):
    return sorted(indices_upto(cap), key=lambda idx: (sum(idx), idx))


def egf_mul(a: Egf, b: Egf) -> Egf:
    return a * b


def egf_exp(a: Egf) -> Egf:
    """exp(a) for a series with zero constant term.

    Uses the Euler-operator recurrence  |n| b_n = sum_{0<m<=n} |m| a_m b_{n-m},
    where |n| is the total degree; this follows from E(exp a) = E(a) exp(a).
    """
    if not a.constant_term().is_zero():
        raise SeriesError("exp requires a zero constant term")
    zero = (0,) * a.arity
    b: Dict[MultiIndex, Poly] = {zero: ONE}
    a_items = [(m, sum(m), p) for m, p in a._coeffs.items()]
    for n in _by_total_degree(a.cap):
        if n == zero:
            continue
        acc = Poly()
        for m, deg_m, pm in a_items:
            rest = tuple(x - y for x, y in zip(n, m))
            if min(rest) < 0:
                continue
            br = b.get(rest)
            if br is not None:
                acc = acc + pm * br * deg_m
        if not acc.is_zero():
            b[n] = acc / sum(n)
    return Egf(a.arity, a.cap, b)


def egf_log(a: Egf) -> Egf:
    """log(a) for a series with constant term 1.

    From E(a) = a E(log a):  |n| c_n = |n| a_n - sum_{0<m<n} |m| c_m a_{n-m}.
    """
    if a.constant_term() != ONE:
        raise SeriesError("log requires constant term 1")
    zero = (0,) * a.arity
    c: Dict[MultiIndex, Poly] = {}
    for n in _by_total_degree(a.cap):
        if n == zero:
            continue
        deg_n = sum(n)
        acc = a[n] * deg_n
        for m, cm in c.items():
            if m == n:
                continue
            rest = tuple(x - y for x, y in zip(n, m))
            if min(rest) < 0 or rest == zero:
                continue
            ar = a._coeffs.get(rest)
            if ar is not None:
                acc = acc - cm * ar * sum(m)
        if not acc.is_zero():
            c[n] = acc / deg_n
    return Egf(a.arity, a.cap, c)


def egf_pow_y(a: Egf) -> Egf:
    """a^y = exp(y log a); coefficients of ``a`` must be free of y."""
    if a.constant_term() != ONE:
        raise SeriesError("pow_y requires constant term 1")
    if any(p.degree_in("y") > 0 for _, p in a.items()):
        raise SeriesError("pow_y input must not involve y")
    return egf_exp(egf_log(a).scale(Y))


def egf_partial(a: Egf, sort: int) -> Egf:
    """Formal partial derivative in z_sort; the cap in that sort drops by one."""
    if not 0 <= sort < a.arity:
        raise SeriesError(f"sort {sort} out of range for arity {a.arity}")
    if a.cap[sort] == 0:
        raise SeriesError("cannot differentiate a series capped at degree 0 in that sort")
    cap = list(a.cap)
    cap[sort] -= 1
    out = {}
    for idx, p in a._coeffs.items():
        if idx[sort] == 0:
            continue
        new = list(idx)
        new[sort] -= 1
        out[tuple(new)] = p * idx[sort]
    return Egf(a.arity, cap, out)


# -- closed forms -----------------------------------------------------

CLOSED_FORMS = ("CombMat5", "CombMat6", "CombMat7", "CombMat8", "CombMat9", "CombMat10", "bip", "bip2")
_ARITY = {
    "CombMat5": 2, "CombMat7": 2, "CombMat8": 2,
    "CombMat6": 1, "CombMat9": 1, "CombMat10": 1,
    "bip": 2, "bip2": 2,
}


def _diag_series(arity: int, cap: Sequence[int], coeff: Callable[[int], Coeff]) -> Egf:
    """sum_n coeff(n) x^n with x = z_1 ... z_r (x = z for one sort)."""
    top = min(cap)
    return Egf(arity, cap, {(n,) * arity: coeff(n) for n in range(top + 1)})


def _geometric(arity, cap):
    return _diag_series(arity, cap, lambda n: 1)


def _neg_half_power(arity, cap):
    # (1 - x)^{-y/2}: pow_y of the geometric series, then y -> y/2
    return egf_pow_y(_geometric(arity, cap)).scale_var("y", Fraction(1, 2))


def _bipartite_series(cap):
    one_plus_t = Poly.const(1) + Poly.t()
    return Egf.from_weighted_counts(2, cap, {(a, b): one_plus_t ** (a * b) for a, b in indices_upto(cap)})


def closed_form(form_id: str, cap: Sequence[int], base: Optional[Egf] = None) -> Egf:
    """Build one of the closed-form refined generating functions.

    ``CombMat5``/``CombMat6`` are relations: they multiply ``base`` (default:
    the s = 2 closed form ``CombMat7``/``CombMat9``) by e^{-z_1 z_2 y} or
    e^{-y(z + z^2/2)}.
    """
    if form_id not in _ARITY:
        raise SeriesError(f"unknown closed form {form_id!r}; known: {', '.join(CLOSED_FORMS)}")
    arity = _ARITY[form_id]
    cap = tuple(cap)
    if len(cap) != arity:
        raise SeriesError(f"{form_id} needs a cap of arity {arity}, got {cap}")
    y = Y
    half_y = y * Fraction(1, 2)
    x = _diag_series(arity, cap, lambda n: 1 if n == 1 else 0)

    if form_id == "bip":
        return _bipartite_series(cap)
    if form_id == "bip2":
        return egf_pow_y(_bipartite_series(cap))
    if form_id == "CombMat7":
        return _neg_half_power(arity, cap) * egf_exp(x.scale(half_y))
    if form_id == "CombMat8":
        return _neg_half_power(arity, cap) * egf_exp(x.scale(-half_y))
    if form_id == "CombMat5":
        base = closed_form("CombMat7", cap) if base is None else base
        return egf_exp(x.scale(-y)) * base
    # one-sort forms
    z = x
    z2 = _diag_series(1, cap, lambda n: 1 if n == 2 else 0)
    z_over_1mz = _diag_series(1, cap, lambda n: 1 if n >= 1 else 0)
    if form_id == "CombMat9":
        inner = z2.scale(y * Fraction(1, 4)) + z_over_1mz.scale(half_y)
        return _neg_half_power(1, cap) * egf_exp(inner)
    if form_id == "CombMat10":
        inner = z2.scale(-y * Fraction(1, 4)) - z.scale(y) + z_over_1mz.scale(half_y)
        return _neg_half_power(1, cap) * egf_exp(inner)
    # CombMat6
    base = closed_form("CombMat9", cap) if base is None else base
    return egf_exp((z + z2.scale(Fraction(1, 2))).scale(-y)) * base
