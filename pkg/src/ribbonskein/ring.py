"""Exact arithmetic in Z[A, A^-1] and its localization R = Z[A^{+-1}, d^-1].

Here d = -A^2 - A^-2.  Elements of R are stored as ``numerator / d**k`` with
the numerator a Laurent polynomial in A that is not divisible by d whenever
k > 0.  Since d = -A^-2 (A^4 + 1) and A^4 + 1 is irreducible over Z, this
representation is unique.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

__all__ = [
    "LaurentPolynomial",
    "RingElement",
    "A",
    "D",
    "D_INV",
    "ONE",
    "ZERO",
    "ring_add",
    "ring_mul",
    "ring_normalize",
    "coerce",
]


class LaurentPolynomial:
    """Sparse Laurent polynomial in A with integer coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = int(v)
        self._c: Dict[int, int] = c
        self._hash = None

    @classmethod
    def _raw(cls, c: Dict[int, int]) -> "LaurentPolynomial":
        # c must already be free of zeros
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, value: int) -> "LaurentPolynomial":
        return cls({0: value})

    # -- inspection ---------------------------------------------------------
    @property
    def coefficients(self) -> Dict[int, int]:
        return dict(self._c)

    def items(self) -> Iterable[Tuple[int, int]]:
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def degree(self) -> int:
        if not self._c:
            raise ValueError("degree of zero polynomial")
        return max(self._c)

    def valuation(self) -> int:
        if not self._c:
            raise ValueError("valuation of zero polynomial")
        return min(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPolynomial):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- arithmetic ---------------------------------------------------------
    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial._raw({e: -v for e, v in self._c.items()})

    def __add__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPolynomial._raw(c)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            if not other:
                return LaurentPolynomial._raw({})
            return LaurentPolynomial._raw({e: v * other for e, v in self._c.items()})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        c: Dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPolynomial._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomial":
        if k < 0:
            if len(self._c) == 1:
                (e, v), = self._c.items()
                if v in (1, -1):
                    return LaurentPolynomial._raw({e * k: v ** (-k)})
            raise ValueError("negative power of a non-unit")
        result = LaurentPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by A**k."""
        return LaurentPolynomial._raw({e + k: v for e, v in self._c.items()})

    def exact_div(self, other: "LaurentPolynomial") -> Optional["LaurentPolynomial"]:
        """Return q with q*other == self, or None if no such q exists in Z[A^{+-1}]."""
        if not other._c:
            raise ZeroDivisionError("division by zero polynomial")
        if not self._c:
            return self
        hb = max(other._c)
        lb = min(other._c)
        lcb = other._c[hb]
        floor = min(self._c) - lb
        r = dict(self._c)
        q: Dict[int, int] = {}
        bitems = list(other._c.items())
        while r:
            hr = max(r)
            c = r[hr]
            if c % lcb:
                return None
            e = hr - hb
            if e < floor:
                return None
            t = c // lcb
            q[e] = t
            for eb, vb in bitems:
                k = eb + e
                s = r.get(k, 0) - t * vb
                if s:
                    r[k] = s
                else:
                    r.pop(k, None)
        return LaurentPolynomial._raw(q)

    def evaluate(self, a) -> Fraction:
        a = Fraction(a)
        return sum((Fraction(v) * a ** e for e, v in self._c.items()), Fraction(0))

    def evaluate_mod(self, a: int, p: int) -> int:
        ainv = pow(a, -1, p)
        total = 0
        for e, v in self._c.items():
            total += v * (pow(a, e, p) if e >= 0 else pow(ainv, -e, p))
        return total % p

    # -- rendering ----------------------------------------------------------
    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for i, (e, v) in enumerate(sorted(self._c.items())):
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            if e == 0:
                body = str(mag)
            else:
                mono = "A" if e == 1 else f"A^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({str(self)!r})"


_D_POLY = LaurentPolynomial({2: -1, -2: -1})


def _strip_d(num: LaurentPolynomial, k: int) -> Tuple[LaurentPolynomial, int]:
    if not num:
        return num, 0
    while k > 0:
        q = num.exact_div(_D_POLY)
        if q is None:
            break
        num, k = q, k - 1
    return num, k


class RingElement:
    """An element ``numerator * d**(-dpow)`` of R, kept in canonical form."""

    __slots__ = ("num", "dpow", "_hash")

    def __init__(self, num: Union[LaurentPolynomial, int] = 0, dpow: int = 0):
        if isinstance(num, int):
            num = LaurentPolynomial.constant(num)
        if dpow < 0:
            num = num * _D_POLY ** (-dpow)
            dpow = 0
        self.num, self.dpow = _strip_d(num, dpow)
        self._hash = None

    @classmethod
    def _canonical(cls, num: LaurentPolynomial, dpow: int) -> "RingElement":
        x = cls.__new__(cls)
        x.num = num
        x.dpow = dpow
        x._hash = None
        return x

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RingElement(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.dpow == other.dpow and self.num == other.num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.dpow))
        return self._hash

    def __neg__(self) -> "RingElement":
        return RingElement._canonical(-self.num, self.dpow)

    def __add__(self, other) -> "RingElement":
        other = coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        k = max(self.dpow, other.dpow)
        num = self.num * _D_POLY ** (k - self.dpow) + other.num * _D_POLY ** (k - other.dpow)
        if self.dpow == other.dpow:
            return RingElement(num, k)
        # exactly one side carries the top d-power, so num is not divisible by d
        return RingElement._canonical(num, k) if num else RingElement(0)

    __radd__ = __add__

    def __sub__(self, other) -> "RingElement":
        other = coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RingElement":
        return (-self) + other

    def __mul__(self, other) -> "RingElement":
        other = coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        num = self.num * other.num
        k = self.dpow + other.dpow
        if k == 0 or (self.dpow and other.dpow):
            # numerators of d-carrying factors are prime to d, and so is their product
            return RingElement._canonical(num, k)
        return RingElement(num, k)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RingElement":
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "RingElement":
        """Inverse in R; only units (+-A^k d^j) are invertible."""
        return ONE.exact_div(self)

    def exact_div(self, other) -> "RingElement":
        """Exact quotient in R; raises ArithmeticError if it does not exist."""
        other = coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by zero in R")
        w, j = other.num, 0
        while True:
            q = w.exact_div(_D_POLY)
            if q is None:
                break
            w, j = q, j + 1
        q = self.num.exact_div(w)
        if q is None:
            raise ArithmeticError(f"{self} is not divisible by {other} in R")
        return RingElement(q * _D_POLY ** other.dpow, self.dpow + j)

    def evaluate(self, a) -> Fraction:
        """Value at A = a (a rational number with a**4 != -1)."""
        a = Fraction(a)
        dval = -(a * a) - 1 / (a * a)
        return self.num.evaluate(a) / dval ** self.dpow

    def evaluate_mod(self, a: int, p: int) -> int:
        dval = (-(a * a) - pow(a * a, -1, p)) % p
        return self.num.evaluate_mod(a, p) * pow(dval, -self.dpow, p) % p

    def d_expansion(self) -> Optional[Dict[int, int]]:
        """Coefficients {j: c} with self = sum c d^j, or None if self is not in Z[d, d^-1]."""
        num = self.num
        out: Dict[int, int] = {}
        while num:
            top = num.degree()
            if top % 2 or top < 0:
                return None
            m = top // 2
            c = num._c[top] * (-1) ** m
            out[m - self.dpow] = c
            num = num - _D_POLY ** m * c
        return out

    def __str__(self) -> str:
        body = str(self.num)
        if len(self.num._c) > 1:
            body = f"({body})"
        if self.dpow:
            return f"{body}/d^{self.dpow}"
        return body

    def __repr__(self) -> str:
        return f"RingElement({str(self)!r})"

    def d_str(self) -> str:
        """Render as a Laurent polynomial in d when possible, else as in str()."""
        exp = self.d_expansion()
        if exp is None:
            return str(self)
        return render_d_poly(exp)


def render_d_poly(exp: Mapping[int, int]) -> str:
    if not exp:
        return "0"
    parts = []
    for i, (j, c) in enumerate(sorted(exp.items(), key=lambda t: -t[0])):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = "" if j == 0 else ("d" if j == 1 else f"d^{j}")
        if not mono:
            body = str(mag)
        else:
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((f"-{body}" if sign == "-" else body) if i == 0 else f"{sign} {body}")
    return " ".join(parts)


def coerce(x) -> RingElement:
    if isinstance(x, RingElement):
        return x
    if isinstance(x, int):
        return RingElement(x)
    if isinstance(x, LaurentPolynomial):
        return RingElement(x)
    return NotImplemented


def ring_normalize(num: LaurentPolynomial, k: int) -> RingElement:
    if k < 0:
        raise ValueError("d-power must be nonnegative")
    return RingElement(num, k)


def ring_add(x: RingElement, y: RingElement) -> RingElement:
    return coerce(x) + coerce(y)


def ring_mul(x: RingElement, y: RingElement) -> RingElement:
    return coerce(x) * coerce(y)


ZERO = RingElement._canonical(LaurentPolynomial(), 0)
ONE = RingElement._canonical(LaurentPolynomial({0: 1}), 0)
A = RingElement._canonical(LaurentPolynomial({1: 1}), 0)
D = RingElement._canonical(_D_POLY, 0)
D_INV = RingElement._canonical(LaurentPolynomial({0: 1}), 1)
