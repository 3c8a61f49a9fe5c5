"""Sparse multivariate polynomials over a valued field.

Exponents are integer tuples; negative exponents are permitted only on
polynomials explicitly flagged as Laurent (they arise from the kernel
substitution and are cleared before any Groebner work).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .arith import RatFunc, ValuedField

Exponent = tuple


class RingMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomial orders

class MonomialOrder:
    """Total order on exponent vectors; larger key means larger monomial."""

    def key(self, exp: Exponent):
        raise NotImplementedError

    def signature(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder)
                and other.signature() == self.signature())

    def __hash__(self):
        return hash(self.signature())


class Lex(MonomialOrder):
    def key(self, exp):
        return exp

    def signature(self):
        return ("lex",)


def _grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


class Grevlex(MonomialOrder):
    def key(self, exp):
        return _grevlex_key(exp)

    def signature(self):
        return ("grevlex",)


class Block(MonomialOrder):
    """Elimination order: the front block dominates, grevlex within blocks."""

    def __init__(self, front: Iterable[int]):
        self.front = tuple(sorted(front))

    def key(self, exp):
        front = tuple(exp[i] for i in self.front)
        rest = tuple(e for i, e in enumerate(exp) if i not in self.front)
        return (_grevlex_key(front), _grevlex_key(rest))

    def signature(self):
        return ("block", self.front)


LEX = Lex()
GREVLEX = Grevlex()


# ---------------------------------------------------------------------------
# rings and polynomials

@dataclass(frozen=True)
class PolyRing:
    variables: tuple
    field: ValuedField

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")

    @property
    def arity(self) -> int:
        return len(self.variables)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(self.field.one())

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.arity: c})

    def variable(self, i: int) -> "Polynomial":
        exp = tuple(1 if j == i else 0 for j in range(self.arity))
        return Polynomial(self, {exp: self.field.one()})

    def monomial(self, exp: Exponent, c=None) -> "Polynomial":
        if c is None:
            c = self.field.one()
        return Polynomial(self, {tuple(exp): c},
                          laurent=any(e < 0 for e in exp))

    def from_terms(self, terms: dict, laurent: bool = False) -> "Polynomial":
        return Polynomial(self, dict(terms), laurent=laurent)

    def extend(self, names: Sequence[str]) -> "PolyRing":
        return PolyRing(self.variables + tuple(names), self.field)

    def restrict(self, indices: Sequence[int]) -> "PolyRing":
        return PolyRing(tuple(self.variables[i] for i in indices), self.field)

    def index(self, name: str) -> int:
        return self.variables.index(name)


class Polynomial:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero
    field elements."""

    __slots__ = ("ring", "terms", "laurent")

    def __init__(self, ring: PolyRing, terms: dict, laurent: bool = False):
        clean = {}
        n = ring.arity
        for exp, c in terms.items():
            if not c:
                continue
            exp = tuple(exp)
            if len(exp) != n:
                raise ValueError(f"exponent arity {len(exp)} != ring arity {n}")
            if not laurent and any(e < 0 for e in exp):
                raise ValueError("negative exponent on a non-Laurent polynomial")
            clean[exp] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "laurent", laurent)

    def __setattr__(self, *args):
        raise AttributeError("Polynomial is immutable")

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def support(self) -> frozenset:
        return frozenset(self.terms)

    def canonical_terms(self) -> tuple:
        return tuple(sorted(self.terms.items(), key=lambda t: t[0]))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.variables, self.canonical_terms()))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: int) -> int:
        if not self.terms:
            return -1
        return max(e[var] for e in self.terms)

    def leading(self, order: MonomialOrder) -> tuple:
        """(exponent, coefficient) of the largest term under `order`."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def coefficient(self, exp: Exponent):
        return self.terms.get(tuple(exp), self.ring.field.zero())

    def coefficients_in(self, var: int) -> dict:
        """Map degree-in-`var` -> polynomial with that variable zeroed out."""
        out = {}
        for exp, c in self.terms.items():
            k = exp[var]
            stripped = exp[:var] + (0,) + exp[var + 1:]
            out.setdefault(k, {})
            cur = out[k].get(stripped)
            out[k][stripped] = c if cur is None else cur + c
        return {k: Polynomial(self.ring, terms, laurent=self.laurent)
                for k, terms in out.items()}

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials from different rings")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            cur = terms.get(exp)
            s = c if cur is None else cur + c
            if s:
                terms[exp] = s
            elif cur is not None:
                del terms[exp]
        return Polynomial(self.ring, terms,
                          laurent=self.laurent or other.laurent)

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()},
                          laurent=self.laurent)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                cur = terms.get(exp)
                s = c1 * c2 if cur is None else cur + c1 * c2
                if s:
                    terms[exp] = s
                elif cur is not None:
                    del terms[exp]
        return Polynomial(self.ring, terms,
                          laurent=self.laurent or other.laurent)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Polynomial":
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: x * c for e, x in self.terms.items()},
                          laurent=self.laurent)

    def mul_monomial(self, exp: Exponent, c=None) -> "Polynomial":
        if c is None:
            c = self.ring.field.one()
        exp = tuple(exp)
        terms = {tuple(a + b for a, b in zip(e, exp)): x * c
                 for e, x in self.terms.items()}
        return Polynomial(self.ring, terms,
                          laurent=self.laurent or any(e < 0 for e in exp))

    def evaluate(self, point: Sequence):
        """Evaluate at a point of field elements (exact)."""
        total = self.ring.field.zero()
        for exp, c in self.terms.items():
            v = c
            for x, e in zip(point, exp):
                if e:
                    v = v * x ** e
            total = total + v
        return total

    def __repr__(self):
        return f"Polynomial({to_str(self)})"


# ---------------------------------------------------------------------------
# the substitution that threads kernel exponents through extra variables

def extend_exponents(f: Polynomial, kernel: Sequence[Sequence[int]],
                     names: Optional[Sequence[str]] = None) -> Polynomial:
    """Substitute x_i -> x_i * prod_j u_j^(row_j[i]) for fresh variables u_j,
    one per kernel row.  The result is Laurent whenever a dot product goes
    negative."""
    n = f.ring.arity
    rows = [tuple(int(x) for x in row) for row in kernel]
    for row in rows:
        if len(row) != n:
            raise ValueError("kernel row arity mismatch")
    if names is None:
        names = fresh_names(f.ring.variables, len(rows))
    ring = f.ring.extend(names)
    terms = {}
    for exp, c in f.terms.items():
        extra = tuple(sum(u * e for u, e in zip(row, exp)) for row in rows)
        terms[exp + extra] = c
    laurent = any(any(e < 0 for e in exp) for exp in terms)
    return Polynomial(ring, terms, laurent=laurent)


def fresh_names(existing: Sequence[str], count: int, base: str = "l") -> tuple:
    prefix = base
    while any(f"{prefix}{i + 1}" in existing for i in range(count)):
        prefix = "_" + prefix
    return tuple(f"{prefix}{i + 1}" for i in range(count))


def clear_laurent(f: Polynomial) -> Polynomial:
    """Multiply by the minimal monomial making every exponent nonnegative."""
    if not f.terms:
        return Polynomial(f.ring, {})
    n = f.ring.arity
    shift = tuple(max(0, -min(e[i] for e in f.terms)) for i in range(n))
    terms = {tuple(a + b for a, b in zip(e, shift)): c
             for e, c in f.terms.items()}
    return Polynomial(f.ring, terms)


def support(f: Polynomial) -> frozenset:
    return f.support()


def strip_monomial_content(f: Polynomial) -> Polynomial:
    """Divide out the largest common monomial and normalize coefficients.

    Over Q the result has integer coefficients with content 1 and a
    positive lex-leading coefficient; over Q(t) it is made monic.
    """
    if not f.terms:
        raise ValueError("cannot strip the zero polynomial")
    n = f.ring.arity
    shift = tuple(-min(e[i] for e in f.terms) for i in range(n))
    terms = {tuple(a + b for a, b in zip(e, shift)): c
             for e, c in f.terms.items()}
    g = Polynomial(f.ring, terms)
    coeffs = list(g.terms.values())
    if isinstance(coeffs[0], Fraction):
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in coeffs:
            num = gcd(num, abs(c.numerator * (den // c.denominator)))
        factor = Fraction(den, num)
        lead = g.terms[max(g.terms, key=LEX.key)]
        if lead < 0:
            factor = -factor
        return g.scale(factor)
    lead = g.terms[max(g.terms, key=LEX.key)]
    return g.scale(f.ring.field.inv(lead))


# ---------------------------------------------------------------------------
# text format

def _coeff_str(field: ValuedField, c) -> str:
    s = field.format(c)
    if isinstance(c, RatFunc):
        return s
    return s


def to_str(f: Polynomial) -> str:
    """Canonical text; terms in descending lex order, `*` and `^` explicit."""
    if not f.terms:
        return "0"
    names = f.ring.variables
    field = f.ring.field
    rational = not isinstance(field.zero(), RatFunc)
    parts = []
    for exp in sorted(f.terms, key=LEX.key, reverse=True):
        c = f.terms[exp]
        factors = []
        for name, e in zip(names, exp):
            if e == 0:
                continue
            factors.append(name if e == 1 else f"{name}^{e}")
        mono = "*".join(factors)
        if rational:
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        else:
            s = _coeff_str(field, c)
            needs_paren = (("+" in s[1:] or "-" in s[1:] or s.startswith("-"))
                           and not (s.startswith("(") and s.endswith(")")))
            if needs_paren:
                s = f"({s})"
            if not mono:
                body = s
            elif s == "1":
                body = mono
            else:
                body = f"{s}*{mono}"
            parts.append(("+", body))
    sign, body = parts[0]
    out = body if sign == "+" else f"-{body}"
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# parser

class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_SYMBOLS = "+-*/^(),"


class _Tokenizer:
    def __init__(self, text: str, line_offset: int = 1):
        self.tokens = []
        line = line_offset
        col = 1
        i = 0
        while i < len(text):
            ch = text[i]
            if ch == "\n":
                line += 1
                col = 1
                i += 1
                continue
            if ch.isspace():
                col += 1
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("num", text[i:j], line, col))
                col += j - i
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.tokens.append(("name", text[i:j], line, col))
                col += j - i
                i = j
                continue
            if ch in _SYMBOLS:
                self.tokens.append(("sym", ch, line, col))
                col += 1
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", line, col)
        self.tokens.append(("end", "", line, col))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_sym(self, sym: str):
        kind, val, line, col = self.next()
        if kind != "sym" or val != sym:
            raise ParseError(f"expected {sym!r}", line, col)


class _Parser:
    """Recursive descent over ring polynomials; scalars are constant
    polynomials, so fraction syntax like (t^2+1)/(2*t) composes freely."""

    def __init__(self, ring: PolyRing, tok: _Tokenizer):
        self.ring = ring
        self.tok = tok

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val, line, col = self.tok.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", line, col)
        return p

    def expr(self) -> Polynomial:
        sign = 1
        kind, val, _, _ = self.tok.peek()
        if kind == "sym" and val in "+-":
            self.tok.next()
            sign = -1 if val == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while True:
            kind, val, _, _ = self.tok.peek()
            if kind == "sym" and val in "+-":
                self.tok.next()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self) -> Polynomial:
        p = self.factor()
        while True:
            kind, val, line, col = self.tok.peek()
            if kind == "sym" and val == "*":
                self.tok.next()
                p = p * self.factor()
            elif kind == "sym" and val == "/":
                self.tok.next()
                q = self.factor()
                p = self._divide(p, q, line, col)
            else:
                return p

    def _divide(self, p, q, line, col):
        const = self._as_scalar(q)
        if const is None:
            raise ParseError("division is only allowed by scalars", line, col)
        if not const:
            raise ParseError("division by zero", line, col)
        return p.scale(self.ring.field.inv(const))

    @staticmethod
    def _as_scalar(p: Polynomial):
        if not p.terms:
            return p.ring.field.zero()
        if len(p.terms) == 1:
            exp, c = next(iter(p.terms.items()))
            if not any(exp):
                return c
        return None

    def factor(self) -> Polynomial:
        base, line, col = self.base()
        kind, val, _, _ = self.tok.peek()
        if kind == "sym" and val == "^":
            self.tok.next()
            k = self.exponent()
            if k < 0:
                const = self._as_scalar(base)
                if const is None:
                    raise ParseError("negative exponent on a variable",
                                     line, col)
                if not const:
                    raise ParseError("zero to a negative power", line, col)
                return self.ring.constant(self.ring.field.inv(const)) ** (-k)
            return base ** k
        return base

    def exponent(self) -> int:
        sign = 1
        kind, val, line, col = self.tok.peek()
        if kind == "sym" and val == "-":
            self.tok.next()
            sign = -1
        kind, val, line, col = self.tok.next()
        if kind != "num":
            raise ParseError("expected an integer exponent", line, col)
        return sign * int(val)

    def base(self):
        kind, val, line, col = self.tok.next()
        if kind == "num":
            return self.ring.constant(self.ring.field.from_int(int(val))), line, col
        if kind == "name":
            if val in self.ring.variables:
                return self.ring.variable(self.ring.index(val)), line, col
            if val == self.ring.field.scalar_symbol:
                return self.ring.constant(
                    self.ring.field.scalar_symbol_value()), line, col
            raise ParseError(f"undeclared variable {val!r}", line, col)
        if kind == "sym" and val == "(":
            p = self.expr()
            self.tok.expect_sym(")")
            return p, line, col
        raise ParseError(f"unexpected {val!r}", line, col)


def parse_polynomial(ring: PolyRing, text: str, line_offset: int = 1) -> Polynomial:
    """Parse canonical polynomial text in the given ring."""
    return _Parser(ring, _Tokenizer(text, line_offset)).parse()


def parse_scalar(field: ValuedField, text: str):
    """Parse a scalar literal: integers, a/b fractions, and for Q(t)
    polynomial fractions such as (t^2+1)/(2*t)."""
    ring = PolyRing((), field)
    p = parse_polynomial(ring, text)
    if not p.terms:
        return field.zero()
    return p.terms[()]
