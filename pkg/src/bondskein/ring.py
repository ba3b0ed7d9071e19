"""Exact Laurent polynomials in ``l``, ``m`` over the integers and their fractions.

Polynomials are stored as ``{(e_l, e_m): coeff}`` maps with no zero entries.
Multivariate gcds are delegated to sympy's dense polynomial code after
shifting exponents to be nonnegative; monomials are units and are pulled
into the numerator of a :class:`RatFunc`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

import sympy as sp

__all__ = [
    "LaurentPoly",
    "RatFunc",
    "L",
    "M",
    "ONE",
    "ZERO",
    "DELTA",
    "D_POLY",
    "lp_gcd",
    "rf_normalize",
    "rf_eval",
]

_l, _m = sp.symbols("l m")

Exponent = tuple[int, int]


class LaurentPoly:
    """Immutable integer Laurent polynomial in two variables."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, int] = {}
        for exp, c in items:
            c = int(c)
            if c:
                key = (int(exp[0]), int(exp[1]))
                acc[key] = acc.get(key, 0) + c
        self._terms = {k: v for k, v in acc.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, int]) -> "LaurentPoly":
        # trusted constructor: no zero coefficients present
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls._raw({(0, 0): int(c)} if c else {})

    @classmethod
    def monomial(cls, e_l: int, e_m: int, c: int = 1) -> "LaurentPoly":
        return cls._raw({(e_l, e_m): int(c)} if c else {})

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -v for k, v in self._terms.items()})

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({k: v * other for k, v in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[Exponent, int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            ((a, b), c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly._raw({(a * n, b * n): c ** (-n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def min_exponents(self) -> Exponent:
        if not self._terms:
            return (0, 0)
        return (min(k[0] for k in self._terms), min(k[1] for k in self._terms))

    def shift(self, d_l: int, d_m: int) -> "LaurentPoly":
        return LaurentPoly._raw({(a + d_l, b + d_m): c for (a, b), c in self._terms.items()})

    def substitute(self, l0, m0) -> Fraction:
        """Evaluate exactly at rational ``l0``, ``m0``."""
        l0, m0 = Fraction(l0), Fraction(m0)
        total = Fraction(0)
        for (a, b), c in self._terms.items():
            if (a < 0 and l0 == 0) or (b < 0 and m0 == 0):
                raise ZeroDivisionError("negative power of a variable evaluated at 0")
            total += c * l0**a * m0**b
        return total

    def to_sympy(self) -> sp.Expr:
        return sum((c * _l**a * _m**b for (a, b), c in self._terms.items()), sp.Integer(0))

    def _poly(self) -> tuple[sp.Poly, Exponent]:
        # polynomial part with exponents shifted nonnegative, plus the shift used
        el, em = self.min_exponents()
        rep = {(a - el, b - em): c for (a, b), c in self._terms.items()}
        return sp.Poly.from_dict(rep or {(0, 0): 0}, _l, _m, domain=sp.ZZ), (el, em)

    @classmethod
    def _from_poly(cls, p: sp.Poly, shift: Exponent = (0, 0)) -> "LaurentPoly":
        return cls._raw({(a + shift[0], b + shift[1]): int(c) for (a, b), c in p.as_dict().items() if c})

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0], reverse=True)

    def __str__(self) -> str:
        return _render(self.sorted_terms(), _text_monomial, "*")

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def latex(self) -> str:
        return _render(self.sorted_terms(), _latex_monomial, " ")

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        expr = sp.sympify(text.replace("^", "**"), locals={"l": _l, "m": _m})
        return cls.from_sympy(expr)

    @classmethod
    def from_sympy(cls, expr) -> "LaurentPoly":
        expr = sp.expand(sp.sympify(expr))
        out: dict[Exponent, int] = {}
        for term in sp.Add.make_args(expr):
            if term == 0:
                continue
            coeff, rest = term.as_coeff_Mul()
            if not coeff.is_Integer:
                raise ValueError(f"non-integer coefficient in {term}")
            powers = rest.as_powers_dict() if rest != 1 else {}
            a = b = 0
            for base, e in powers.items():
                if base == _l:
                    a += int(e)
                elif base == _m:
                    b += int(e)
                elif base != 1:
                    raise ValueError(f"not a Laurent monomial: {term}")
            out[(a, b)] = out.get((a, b), 0) + int(coeff)
        return cls(out)


def _text_monomial(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("l" if a == 1 else f"l^{a}")
    if b:
        parts.append("m" if b == 1 else f"m^{b}")
    return "*".join(parts)


def _latex_monomial(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("l" if a == 1 else f"l^{{{a}}}")
    if b:
        parts.append("m" if b == 1 else f"m^{{{b}}}")
    return " ".join(parts)


def _render(terms, monomial, joiner: str) -> str:
    if not terms:
        return "0"
    out = []
    for i, ((a, b), c) in enumerate(terms):
        mono = monomial(a, b)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}{joiner}{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({(0, 0): 1})
L = LaurentPoly._raw({(1, 0): 1})
M = LaurentPoly._raw({(0, 1): 1})
# value of a split unknotted component
DELTA = LaurentPoly._raw({(1, -1): -1, (-1, -1): -1})
# l^4 + 2l^2 + 1 - l^2 m^2
D_POLY = LaurentPoly._raw({(4, 0): 1, (2, 0): 2, (0, 0): 1, (2, 2): -1})


def _grlex_key(exp: Exponent) -> tuple[int, int, int]:
    return (exp[0] + exp[1], exp[0], exp[1])


def _leading_coeff(p: LaurentPoly) -> int:
    return p._terms[max(p._terms, key=_grlex_key)]


def lp_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor up to monomial units, with positive leading coefficient.

    The result is a genuine polynomial (nonnegative exponents, no monomial
    factor) dividing both inputs in the Laurent ring.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.is_zero():
        a, b = b, a
    pa, _ = a._poly()
    if b.is_zero():
        g = pa
    else:
        pb, _ = b._poly()
        g = pa.gcd(pb)
    res = _strip_monomial(LaurentPoly._from_poly(g))
    if _leading_coeff(res) < 0:
        res = -res
    return res


def _strip_monomial(p: LaurentPoly) -> LaurentPoly:
    el, em = p.min_exponents()
    return p.shift(-el, -em)


def _exquo(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    pa, sa = a._poly()
    pb, sb = b._poly()
    q = pa.exquo(pb)
    return LaurentPoly._from_poly(q, (sa[0] - sb[0], sa[1] - sb[1]))


class RatFunc:
    """Canonical fraction ``num / den`` of Laurent polynomials.

    ``den`` is a polynomial with no monomial factor and positive grlex leading
    coefficient, coprime to ``num``. Equality is structural on that form.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _canonical: bool = False):
        if isinstance(num, int):
            num = LaurentPoly.constant(num)
        if den is None:
            den = ONE
        elif isinstance(den, int):
            den = LaurentPoly.constant(den)
        if _canonical:
            self.num, self.den = num, den
        else:
            self.num, self.den = _canonicalize(num, den)

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RatFunc":
        return cls(p, ONE, _canonical=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, LaurentPoly)):
            other = _coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _canonical=True)

    def __add__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == ONE and other.den == ONE:
            return RatFunc(self.num * other.num, ONE, _canonical=True)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return _coerce(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return RatFunc(self.den ** (-n), self.num ** (-n))
        return RatFunc(self.num**n, self.den**n)

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def evaluate(self, l0, m0) -> Fraction:
        return rf_eval(self, l0, m0)

    def to_sympy(self) -> sp.Expr:
        return self.num.to_sympy() / self.den.to_sympy()

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def latex(self) -> str:
        if self.den == ONE:
            return self.num.latex()
        return rf"\frac{{{self.num.latex()}}}{{{self.den.latex()}}}"

    @classmethod
    def parse(cls, text: str) -> "RatFunc":
        expr = sp.sympify(text.replace("^", "**"), locals={"l": _l, "m": _m})
        n, d = sp.fraction(sp.together(expr))
        return cls(LaurentPoly.from_sympy(n), LaurentPoly.from_sympy(d))


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc.from_poly(x)
    if isinstance(x, int):
        return RatFunc.from_poly(LaurentPoly.constant(x))
    return NotImplemented


def _canonicalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return ZERO, ONE
    if den.is_monomial():
        ((a, b), c), = den._terms.items()
        if c in (1, -1):
            return num.shift(-a, -b) * c, ONE
    g = lp_gcd(num, den)
    if g != ONE:
        num, den = _exquo(num, g), _exquo(den, g)
    # move the monomial content of den into num
    el, em = den.min_exponents()
    den = den.shift(-el, -em)
    num = num.shift(-el, -em)
    if _leading_coeff(den) < 0:
        num, den = -num, -den
    return num, den


def rf_normalize(num: LaurentPoly, den: LaurentPoly) -> RatFunc:
    return RatFunc(num, den)


def rf_eval(f: RatFunc | LaurentPoly, l0, m0) -> Fraction:
    """Exact value at a rational point; raises ZeroDivisionError at a pole."""
    if isinstance(f, LaurentPoly):
        return f.substitute(l0, m0)
    d = f.den.substitute(l0, m0)
    if d == 0:
        raise ZeroDivisionError(f"denominator vanishes at l={l0}, m={m0}")
    return f.num.substitute(l0, m0) / d
