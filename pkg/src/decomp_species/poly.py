"""Exact polynomials in the two formal variables ``t`` (weight) and ``y``
(component marker) with rational coefficients.

Coefficients are :class:`fractions.Fraction`, so every operation is exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

Rational = Fraction
Exponent = Tuple[int, int]
Scalar = Union[int, Fraction]

VARS = ("t", "y")


def _var_index(var: str) -> int:
    try:
        return VARS.index(var)
    except ValueError:
        raise ValueError(f"unknown variable {var!r}; expected 't' or 'y'") from None


class Poly:
    """Immutable element of Q[t, y].

    Terms are kept in a dict keyed by ``(deg_t, deg_y)``; zero coefficients
    are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Dict[Exponent, Scalar], Iterable, None] = None):
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for (dt, dy), c in items:
                if dt < 0 or dy < 0:
                    raise ValueError("negative exponent")
                c = Fraction(c)
                if c:
                    key = (int(dt), int(dy))
                    s = clean.get(key, 0) + c
                    if s:
                        clean[key] = s
                    else:
                        clean.pop(key, None)
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c: Scalar = 1, deg_t: int = 0, deg_y: int = 0) -> "Poly":
        return cls({(deg_t, deg_y): c})

    @classmethod
    def t(cls) -> "Poly":
        return cls.monomial(1, 1, 0)

    @classmethod
    def y(cls) -> "Poly":
        return cls.monomial(1, 0, 1)

    @classmethod
    def _raw(cls, terms: Dict[Exponent, Fraction]) -> "Poly":
        # caller guarantees no zero coefficients
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, deg_t: int = 0, deg_y: int = 0) -> Fraction:
        return self._terms.get((deg_t, deg_y), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((a + b for a, b in self._terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = _var_index(var)
        return max((k[i] for k in self._terms), default=-1)

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly()
            return Poly._raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out: Dict[Exponent, Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return Poly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of Poly by zero")
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative int")
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- substitution -------------------------------------------------
    def eval_at(self, var: str, value: Union[Scalar, "Poly"]) -> "Poly":
        """Substitute ``value`` (a number or polynomial) for ``var``."""
        i = _var_index(var)
        value = self._coerce(value)
        out = Poly()
        powers = {0: Poly.const(1)}
        for k, c in self._terms.items():
            e = k[i]
            if e not in powers:
                powers[e] = value ** e
            rest = (0, k[1]) if i == 0 else (k[0], 0)
            out = out + Poly.monomial(c, *rest) * powers[e]
        return out

    def eval_at_one(self, var: str) -> "Poly":
        i = _var_index(var)
        out: Dict[Exponent, Fraction] = {}
        for k, c in self._terms.items():
            key = (0, k[1]) if i == 0 else (k[0], 0)
            out[key] = out.get(key, 0) + c
        return Poly._raw({k: c for k, c in out.items() if c})

    def scale_var(self, var: str, factor: Scalar) -> "Poly":
        """Substitute ``var -> factor * var`` (e.g. y -> y/2)."""
        i = _var_index(var)
        factor = Fraction(factor)
        if not factor:
            return self.eval_at(var, 0)
        return Poly._raw({k: c * factor ** k[i] for k, c in self._terms.items()})

    # -- comparisons / hashing ----------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- text form ----------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Poly":
        return parse_poly(text)


def _monomial_text(dt: int, dy: int) -> str:
    parts = []
    for name, e in (("t", dt), ("y", dy)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Render as ``c0 + c1*t + c2*y + c3*t*y + ...`` in (deg_t, deg_y) order."""
    if p.is_zero():
        return "0"
    out = []
    for (dt, dy), c in p.items():
        mono = _monomial_text(dt, dy)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TERM_RE = re.compile(r"^(?:(\d+(?:/\d+)?)\*?)?((?:[ty](?:\^\d+)?\*?)*)$")


def parse_poly(text: str) -> Poly:
    """Inverse of :func:`format_poly`."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    # split into signed chunks
    chunks = re.findall(r"[+-]?[^+-]+", s)
    if "".join(chunks) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    terms: Dict[Exponent, Fraction] = {}
    for chunk in chunks:
        sign = -1 if chunk.startswith("-") else 1
        body = chunk.lstrip("+-")
        m = _TERM_RE.match(body)
        if not m or not body:
            raise ValueError(f"bad term {chunk!r} in {text!r}")
        coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        dt = dy = 0
        for var, exp in re.findall(r"([ty])(?:\^(\d+))?", m.group(2) or ""):
            e = int(exp) if exp else 1
            if var == "t":
                dt += e
            else:
                dy += e
        key = (dt, dy)
        terms[key] = terms.get(key, 0) + sign * coeff
    return Poly(terms)


# Functional aliases used across the package.

def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_eval_at_one(a: Poly, var: str) -> Poly:
    return a.eval_at_one(var)


ZERO = Poly()
ONE = Poly.const(1)
T = Poly.t()
Y = Poly.y()
