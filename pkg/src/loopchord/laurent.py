"""Exact bivariate polynomials, Laurent in x and polynomial in y.

Terms map exponent pairs (x power, y power) to exact coefficients; x powers
may be negative (only the extra-circle factor 1 - y/x introduces them), y
powers never are.  Division is exact or reported as inexact, which downstream
code uses both as an extraction tool and as a divisibility test.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping


class InexactDivision(ArithmeticError):
    """The divisor does not divide the dividend in the Laurent ring."""


def _coerce(c):
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    return c


class LaurentPoly:
    """A polynomial in y and Laurent polynomial in x with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean: dict[tuple[int, int], object] = {}
        for (a, b), c in (terms or {}).items():
            if b < 0:
                raise ValueError("negative y power %d" % b)
            c = _coerce(c)
            if c:
                clean[(a, b)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({(0, 0): 1})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls, power: int = 1) -> "LaurentPoly":
        return cls({(power, 0): 1})

    @classmethod
    def y(cls, power: int = 1) -> "LaurentPoly":
        return cls({(0, power): 1})

    @classmethod
    def monomial(cls, coeff, xp: int, yp: int) -> "LaurentPoly":
        return cls({(xp, yp): coeff})

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return LaurentPoly(terms)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) - c
        return LaurentPoly(terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        terms: dict[tuple[int, int], object] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                terms[k] = terms.get(k, 0) + c1 * c2
        return LaurentPoly(terms)

    def scale(self, c) -> "LaurentPoly":
        return LaurentPoly({k: v * c for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((k, Fraction(v)) for k, v in self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def min_x_power(self) -> int:
        if not self.terms:
            return 0
        return min(a for a, _ in self.terms)

    # -- division and substitution ------------------------------------

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division in the Laurent ring; raises InexactDivision."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero()
        rem = dict(self.terms)
        bx = max(a for a, _ in other.terms)
        blead = {b: c for (a, b), c in other.terms.items() if a == bx}
        # any exact quotient has x powers at least this low (integral domain)
        lo = self.min_x_power() - other.min_x_power()
        out: dict[tuple[int, int], object] = {}
        while rem:
            rx = max(a for a, _ in rem)
            rlead = {b: c for (a, b), c in rem.items() if a == rx}
            q = _div_ypoly(rlead, blead)
            shift = rx - bx
            if shift < lo:
                raise InexactDivision("quotient descends below the exact range")
            for b, c in q.items():
                out[(shift, b)] = out.get((shift, b), 0) + c
            for (a2, b2), c2 in other.terms.items():
                for bq, cq in q.items():
                    k = (a2 + shift, b2 + bq)
                    nv = rem.get(k, 0) - c2 * cq
                    if nv:
                        rem[k] = nv
                    else:
                        rem.pop(k, None)
            if rem and max(a for a, _ in rem) >= rx:
                raise InexactDivision("remainder does not shrink")
        return LaurentPoly(out)

    def divisible_by(self, other: "LaurentPoly") -> bool:
        try:
            self.exact_div(other)
            return True
        except InexactDivision:
            return False

    def substitute_x_neg_y(self) -> "LaurentPoly":
        """Evaluate at x = -y; requires a genuine polynomial (no x^-k)."""
        if self.min_x_power() < 0:
            raise ValueError("cannot substitute into a proper Laurent polynomial")
        terms: dict[tuple[int, int], object] = {}
        for (a, b), c in self.terms.items():
            k = (0, a + b)
            terms[k] = terms.get(k, 0) + ((-1) ** a) * c
        return LaurentPoly(terms)

    # -- presentation ---------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (a, b), c in self.sorted_terms():
            body = str(abs(c))
            if a:
                body += "*x^%d" % a
            if b:
                body += "*y^%d" % b
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += " %s %s" % (sign, body)
        return text

    def __repr__(self) -> str:
        return "LaurentPoly(%s)" % str(self)

    def to_json(self) -> list[dict]:
        return [
            {"cx": a, "cy": b, "coeff": str(c)} for (a, b), c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        terms: dict[tuple[int, int], object] = {}
        for t in data:
            k = (int(t["cx"]), int(t["cy"]))
            terms[k] = terms.get(k, 0) + Fraction(t["coeff"])
        return cls(terms)


def _div_ypoly(a: dict[int, object], b: dict[int, object]) -> dict[int, object]:
    """Exact division of univariate polynomials in y given as {power: coeff}."""
    rem = dict(a)
    bd = max(b)
    blead = b[bd]
    out: dict[int, object] = {}
    while rem:
        rd = max(rem)
        if rd < bd:
            raise InexactDivision("y-degree remainder")
        q = _coerce(Fraction(rem[rd]) / Fraction(blead))
        out[rd - bd] = q
        for p, c in b.items():
            k = rd - bd + p
            nv = rem.get(k, 0) - q * c
            if nv:
                rem[k] = nv
            else:
                rem.pop(k, None)
    return out


# convenience values used across the weight-system code
X = LaurentPoly.x()
Y = LaurentPoly.y()
X_PLUS_Y = X + Y
Y_TIMES_X_PLUS_Y = Y * X_PLUS_Y
CIRCLE_FACTOR = LaurentPoly.one() - LaurentPoly({(-1, 1): 1})  # 1 - y/x
