"""Exact coefficient fields equipped with a non-trivial valuation.

Two concrete fields are provided: the rationals with a p-adic valuation,
and rational functions in one variable with the order-at-zero (t-adic)
valuation.  All arithmetic is exact; valuation values are rationals, with
a single infinity object reserved for the zero element.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union


class _Infinity:
    """Valuation of zero.  Compares strictly above every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("tropbase-infinity")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


INFINITY = _Infinity()

ValuationValue = Union[Fraction, _Infinity]


def _check_prime(p: int) -> int:
    if p < 2:
        raise ValueError(f"not a prime: {p}")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"not a prime: {p}")
        d += 1
    return p


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, used as building blocks for RatFunc

def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _uadd(a, b):
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                 for i in range(n))


def _uneg(a):
    return tuple(-c for c in a)


def _umul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _trim(out)


def _udivmod(a, b):
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    rem = list(a)
    quo = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] / lead
        if c:
            quo[k] = c
            for i, cb in enumerate(b):
                rem[k + i] -= c * cb
    return _trim(quo), _trim(rem)


def _ugcd(a, b):
    while b:
        a, b = b, _udivmod(a, b)[1]
    if a:
        lead = a[-1]
        a = tuple(c / lead for c in a)  # monic gcd
    return a


def _ustr(cs, var: str) -> str:
    if not cs:
        return "0"
    parts = []
    for k in range(len(cs) - 1, -1, -1):
        c = cs[k]
        if not c:
            continue
        if k == 0:
            mono = None
        elif k == 1:
            mono = var
        else:
            mono = f"{var}^{k}"
        if mono is None:
            piece = str(c)
        elif c == 1:
            piece = mono
        elif c == -1:
            piece = f"-{mono}"
        else:
            piece = f"{c}*{mono}"
        parts.append(piece)
    out = parts[0]
    for piece in parts[1:]:
        if piece.startswith("-"):
            out += "-" + piece[1:]
        else:
            out += "+" + piece
    return out


class RatFunc:
    """A reduced ratio of univariate polynomials over Q.

    Canonical form: numerator and denominator coprime, denominator monic.
    Zero is represented as 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(Fraction(1),)):
        num = _trim(Fraction(c) for c in num)
        den = _trim(Fraction(c) for c in den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if num:
            g = _ugcd(num, den)
            if len(g) > 1:
                num = _udivmod(num, g)[0]
                den = _udivmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                num = tuple(c / lead for c in num)
                den = tuple(c / lead for c in den)
        else:
            den = (Fraction(1),)
        self.num = num
        self.den = den

    @classmethod
    def from_fraction(cls, q) -> "RatFunc":
        q = Fraction(q)
        return cls((q,)) if q else cls(())

    @classmethod
    def variable(cls) -> "RatFunc":
        return cls((Fraction(0), Fraction(1)))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc.from_fraction(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.from_fraction(other)
        return RatFunc(_uadd(_umul(self.num, other.den),
                             _umul(other.num, self.den)),
                       _umul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_uneg(self.num), self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.from_fraction(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.from_fraction(other)
        return RatFunc(_umul(self.num, other.num), _umul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.from_fraction(other)
        if not other:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(_umul(self.num, other.den), _umul(self.den, other.num))

    def __pow__(self, k: int):
        if k < 0:
            if not self:
                raise ZeroDivisionError("inverse of zero rational function")
            return RatFunc(self.den, self.num) ** (-k)
        out = RatFunc((Fraction(1),))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def t_order(self) -> ValuationValue:
        """Order at t = 0: lowest exponent of numerator minus denominator's."""
        if not self.num:
            return INFINITY
        lo_n = next(i for i, c in enumerate(self.num) if c)
        lo_d = next(i for i, c in enumerate(self.den) if c)
        return Fraction(lo_n - lo_d)

    def to_str(self, var: str = "t") -> str:
        num = _ustr(self.num, var)
        if self.den == (Fraction(1),):
            if sum(1 for c in self.num if c) > 1 or num.startswith("-"):
                return f"({num})"
            return num
        return f"({num})/({_ustr(self.den, var)})"

    def __repr__(self):
        return f"RatFunc({self.to_str()})"


# ---------------------------------------------------------------------------
# valued fields

class ValuedField:
    """A computable field together with a valuation `ord`."""

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, q: Fraction):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def ord(self, a) -> ValuationValue:
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    # name of the reserved scalar symbol inside polynomial text, if any
    scalar_symbol: str = ""

    def scalar_symbol_value(self):
        raise ValueError("field has no scalar symbol")


class PAdicField(ValuedField):
    """Q with the p-adic valuation.  Elements are `fractions.Fraction`."""

    def __init__(self, p: int):
        self.p = _check_prime(p)

    def __eq__(self, other):
        return isinstance(other, PAdicField) and other.p == self.p

    def __hash__(self):
        return hash(("padic", self.p))

    def __repr__(self):
        return f"PAdicField({self.p})"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def ord(self, a) -> ValuationValue:
        a = Fraction(a)
        if not a:
            return INFINITY
        v = 0
        num, den = a.numerator, a.denominator
        while num % self.p == 0:
            num //= self.p
            v += 1
        while den % self.p == 0:
            den //= self.p
            v -= 1
        return Fraction(v)

    def format(self, a) -> str:
        return str(Fraction(a))


class RationalFunctionField(ValuedField):
    """Q(t) with the t-adic valuation.  Elements are `RatFunc`."""

    scalar_symbol = "t"

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField)

    def __hash__(self):
        return hash("ratfunc-t")

    def __repr__(self):
        return "RationalFunctionField()"

    def zero(self):
        return RatFunc(())

    def one(self):
        return RatFunc((Fraction(1),))

    def from_int(self, n):
        return RatFunc.from_fraction(n)

    def from_fraction(self, q):
        return RatFunc.from_fraction(q)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc((Fraction(1),)) / a

    def ord(self, a) -> ValuationValue:
        return a.t_order()

    def format(self, a) -> str:
        return a.to_str(self.scalar_symbol)

    def scalar_symbol_value(self):
        return RatFunc.variable()
