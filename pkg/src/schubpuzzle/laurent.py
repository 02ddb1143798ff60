"""
Sparse exact Laurent polynomials over Z in named variables (x1, y2, z3, q, ...)
and unreduced rational functions built from them.

A monomial is a sorted tuple of (variable, exponent) pairs with nonzero
exponents.  Coefficients are Python ints, so there is no overflow.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Monomial = tuple  # tuple[tuple[str, int], ...]
Number = Union[int, Fraction]

_VAR_RE = re.compile(r"^([a-z]+)(\d*)$")
_LETTER_RANK = {"x": 0, "y": 1, "z": 2, "q": 3}


def var_key(v: str):
    m = _VAR_RE.match(v)
    if not m:
        raise ValueError(f"bad variable name {v!r}")
    letters, idx = m.groups()
    return (_LETTER_RANK.get(letters, 9), letters, int(idx) if idx else 0)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        s = d.get(v, 0) + e
        if s:
            d[v] = s
        else:
            del d[v]
    return tuple(sorted(d.items(), key=lambda t: var_key(t[0])))


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients.

    >>> x1, y1 = LaurentPoly.var("x1"), LaurentPoly.var("y1")
    >>> str(1 - x1 * y1**-1)
    '1 - x1*y1^-1'
    >>> (x1 + 1) * (x1 - 1) == x1**2 - 1
    True
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({(): c})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> LaurentPoly:
        var_key(name)
        return cls({((name, exp),): 1}) if exp else cls.const(1)

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: int = 1) -> LaurentPoly:
        mono = tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda t: var_key(t[0])))
        return cls({mono: coeff})

    @staticmethod
    def coerce(other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> LaurentPoly:
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return LaurentPoly(t)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly({m: c * other for m, c in self.terms.items()})
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return other
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return LaurentPoly(t)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> LaurentPoly:
        if e < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (m, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly({tuple((v, -x * -e) for v, x in m): c ** (-e)})
        out = LaurentPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- inspection -------------------------------------------------------
    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def constant_term(self) -> int:
        return self.terms.get((), 0)

    def degree(self, names: Iterable[str] | None = None) -> int:
        """Max total degree in the given variables (all variables by default)."""
        names = None if names is None else set(names)
        return max((sum(e for v, e in m if names is None or v in names) for m in self.terms), default=0)

    def min_degree(self, names: Iterable[str] | None = None) -> int:
        names = None if names is None else set(names)
        return min((sum(e for v, e in m if names is None or v in names) for m in self.terms), default=0)

    def homogeneous_part(self, deg: int, names: Iterable[str]) -> LaurentPoly:
        names = set(names)
        return LaurentPoly({m: c for m, c in self.terms.items()
                            if sum(e for v, e in m if v in names) == deg})

    # -- substitution -----------------------------------------------------
    def subs(self, values: Mapping[str, object]) -> object:
        """Substitute numbers or LaurentPolys for variables.

        Unmentioned variables stay symbolic; the result is a LaurentPoly if
        anything symbolic remains, otherwise a number.
        """
        total: object = 0
        for m, c in self.terms.items():
            term: object = c
            rest = []
            for v, e in m:
                if v in values:
                    val = values[v]
                    if e < 0:
                        val = (Fraction(1) / val) if not isinstance(val, LaurentPoly) else val ** -1
                        e = -e
                    term = term * val ** e
                else:
                    rest.append((v, e))
            if rest:
                term = LaurentPoly({tuple(rest): 1}) * term if isinstance(term, int) else term * LaurentPoly({tuple(rest): 1})
            total = total + term
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        out = Fraction(0)
        for m, c in self.terms.items():
            t = Fraction(c)
            for v, e in m:
                t *= Fraction(values[v]) ** e
            out += t
        return out

    def evaluate_mod(self, values: Mapping[str, int], p: int) -> int:
        out = 0
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t = t * pow(values[v], e, p) % p
            out += t
        return out % p

    # -- text -------------------------------------------------------------
    def _sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda mc: (sum(abs(e) for _, e in mc[0]), [(var_key(v), -e) for v, e in mc[0]]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self._sorted_terms():
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not body:
                s = str(abs(c))
            elif abs(c) == 1:
                s = body
            else:
                s = f"{abs(c)}*{body}"
            parts.append(("-" if c < 0 else "+", s))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Inverse of str().

        >>> str(LaurentPoly.parse("1 - x1*y1^-1 + 3*q^2"))
        '1 - x1*y1^-1 + 3*q^2'
        """
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        tokens = re.findall(r"[+-]?[^+-]+(?:\^-?\d+[^+-]*)*", _protect_neg_exp(s))
        out = cls()
        for tok in tokens:
            tok = tok.replace("~", "-")
            sign = -1 if tok.startswith("-") else 1
            tok = tok.lstrip("+-")
            coeff, exps = 1, {}
            for f in tok.split("*"):
                if f.isdigit():
                    coeff *= int(f)
                else:
                    v, _, e = f.partition("^")
                    exps[v] = exps.get(v, 0) + (int(e) if e else 1)
            out = out + cls.monomial(exps, sign * coeff)
        return out


def _protect_neg_exp(s: str) -> str:
    # hide the minus sign of negative exponents from the term splitter
    return re.sub(r"\^-", "^~", s)


def lp(text: str | int) -> LaurentPoly:
    """Shorthand parser used in tests and docs."""
    if isinstance(text, int):
        return LaurentPoly.const(text)
    return LaurentPoly.parse(text)


class RationalFunction:
    """num/den, kept unreduced; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = LaurentPoly.coerce(num), LaurentPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = num, den

    @staticmethod
    def coerce(x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            return x
        return RationalFunction(x, 1)

    def __add__(self, other) -> RationalFunction:
        o = RationalFunction.coerce(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> RationalFunction:
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other) -> RationalFunction:
        return RationalFunction.coerce(other) - self

    def __mul__(self, other) -> RationalFunction:
        o = RationalFunction.coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        o = RationalFunction.coerce(other)
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __eq__(self, other) -> bool:
        o = RationalFunction.coerce(other)
        return self.num * o.den == o.num * self.den

    __hash__ = None  # equality is not structural

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        d = self.den.evaluate(values)
        if d == 0:
            raise ZeroDivisionError("pole at the evaluation point")
        return self.num.evaluate(values) / d

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"
