"""Exact scalars: rationals and multivariate rational functions.

The ground field is the rationals extended by named indeterminates,
represented as quotients of integer-coefficient sparse polynomials.
Every value is immutable and kept in a canonical form, so ``==`` is exact
equality of rational functions and ``is_zero`` is a decision procedure,
not a tolerance check.

Canonical form of a quotient num/den:

* num and den have integer coefficients and no common polynomial factor,
* the gcd of their integer contents is 1,
* the graded-lex leading coefficient of den is positive,
* zero is always 0/1.

Monomials are ordered graded-lexicographically over alphabetically sorted
indeterminate names, which makes string output reproducible bit for bit.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Mapping, Union

# The concrete rational type of the ground field.
Ratio = Fraction

ScalarLike = Union["ParamScalar", int, Fraction, str]


class MalformedScalarError(ValueError):
    """Raised when a scalar would have an identically zero denominator."""


class IncompleteAssignmentError(ValueError):
    """Raised by evaluate() when indeterminates are left unassigned."""

    def __init__(self, missing):
        self.missing = tuple(sorted(missing))
        super().__init__("no value assigned for: " + ", ".join(self.missing))


class PoleError(ZeroDivisionError):
    """Raised by evaluate() when the denominator vanishes at the point."""


class ScalarParseError(ValueError):
    """Raised when a scalar expression string does not parse."""


# ---------------------------------------------------------------------------
# monomials: sorted tuples of (name, exponent) pairs, exponents >= 1
# ---------------------------------------------------------------------------

Mono = tuple  # tuple[tuple[str, int], ...]

_EMPTY_MONO: Mono = ()


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for name, e in b:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


def _mono_div(a: Mono, b: Mono):
    """a / b, or None when b does not divide a."""
    exps = dict(a)
    for name, e in b:
        r = exps.get(name, 0) - e
        if r < 0:
            return None
        if r == 0:
            del exps[name]
        else:
            exps[name] = r
    return tuple(sorted(exps.items()))


def _mono_gcd(a: Mono, b: Mono) -> Mono:
    if not a or not b:
        return _EMPTY_MONO
    bexps = dict(b)
    out = []
    for name, e in a:
        eb = bexps.get(name, 0)
        if eb:
            out.append((name, min(e, eb)))
    return tuple(out)


def _mono_degree(a: Mono) -> int:
    return sum(e for _, e in a)


def _mono_cmp(a: Mono, b: Mono) -> int:
    """Graded lex: higher total degree wins, ties broken lexicographically
    with alphabetically earlier names more significant."""
    da, db = _mono_degree(a), _mono_degree(b)
    if da != db:
        return -1 if da < db else 1
    ea, eb = dict(a), dict(b)
    for name in sorted(set(ea) | set(eb)):
        xa, xb = ea.get(name, 0), eb.get(name, 0)
        if xa != xb:
            # a higher power of an earlier variable sorts above
            return 1 if xa > xb else -1
    return 0


_MONO_KEY = cmp_to_key(_mono_cmp)


# ---------------------------------------------------------------------------
# sparse integer-coefficient polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Sparse multivariate polynomial with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms maps monomial -> nonzero int coefficient
        self.terms = {} if terms is None else terms

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls({} if c == 0 else {_EMPTY_MONO: int(c)})

    @classmethod
    def variable(cls, name: str) -> "Poly":
        return cls({((name, 1),): 1})

    @classmethod
    def from_terms(cls, items: Iterable) -> "Poly":
        terms: dict = {}
        for mono, c in items:
            mono = tuple(sorted((n, e) for n, e in mono if e))
            c = terms.get(mono, 0) + int(c)
            if c:
                terms[mono] = c
            elif mono in terms:
                del terms[mono]
        return cls(terms)

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def names(self) -> frozenset:
        out = set()
        for mono in self.terms:
            for name, _ in mono:
                out.add(name)
        return frozenset(out)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(_mono_degree(m) for m in self.terms)

    def leading(self):
        """(monomial, coefficient) of the graded-lex leading term."""
        mono = max(self.terms, key=_MONO_KEY)
        return mono, self.terms[mono]

    def int_content(self) -> int:
        """gcd of the coefficients (0 for the zero polynomial)."""
        c = 0
        for v in self.terms.values():
            c = math.gcd(c, v)
            if c == 1:
                break
        return c

    def mono_content(self) -> Mono:
        """The largest monomial dividing every term."""
        it = iter(self.terms)
        try:
            common = next(it)
        except StopIteration:
            return _EMPTY_MONO
        for mono in it:
            common = _mono_gcd(common, mono)
            if not common:
                break
        return common

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not self.terms:
            return other
        if not other.terms:
            return self
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            s = terms.get(mono, 0) + c
            if s:
                terms[mono] = s
            elif mono in terms:
                del terms[mono]
        return Poly(terms)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.terms or not other.terms:
            return _P_ZERO
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                elif m in terms:
                    del terms[m]
        return Poly(terms)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = _P_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c: int) -> "Poly":
        if c == 0:
            return _P_ZERO
        if c == 1:
            return self
        return Poly({m: v * c for m, v in self.terms.items()})

    def mul_mono(self, mono: Mono) -> "Poly":
        if not mono:
            return self
        return Poly({_mono_mul(m, mono): c for m, c in self.terms.items()})

    def divexact(self, g: "Poly") -> "Poly":
        """Exact multivariate division; raises ArithmeticError if not exact."""
        if g.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero:
            return _P_ZERO
        q: dict = {}
        r = self
        gmono, gc = g.leading()
        while not r.is_zero:
            rmono, rc = r.leading()
            m = _mono_div(rmono, gmono)
            if m is None:
                raise ArithmeticError("inexact polynomial division")
            c, rem = divmod(rc, gc)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            q[m] = q.get(m, 0) + c
            r = r - g.scale(c).mul_mono(m)
        return Poly(q)

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for mono, c in self.terms.items():
            term = Fraction(c)
            for name, e in mono:
                term *= Fraction(assignment[name]) ** e
            total += term
        return total

    # -- comparisons / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- output -------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_MONO_KEY, reverse=True):
            c = self.terms[mono]
            factors = []
            if abs(c) != 1 or not mono:
                factors.append(str(abs(c)))
            for name, e in mono:
                factors.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


_P_ZERO = Poly()
_P_ONE = Poly.const(1)


# ---------------------------------------------------------------------------
# multivariate gcd (primitive polynomial remainder sequence)
# ---------------------------------------------------------------------------

def _univar(p: Poly, v: str) -> dict:
    """View p as a univariate polynomial in v with Poly coefficients."""
    coeffs: dict = {}
    for mono, c in p.terms.items():
        deg = 0
        rest = []
        for name, e in mono:
            if name == v:
                deg = e
            else:
                rest.append((name, e))
        rest = tuple(rest)
        cur = coeffs.setdefault(deg, {})
        s = cur.get(rest, 0) + c
        if s:
            cur[rest] = s
        elif rest in cur:
            del cur[rest]
    return {d: Poly(t) for d, t in coeffs.items() if t}


def _from_univar(coeffs: dict, v: str) -> Poly:
    terms: dict = {}
    for deg, poly in coeffs.items():
        for mono, c in poly.terms.items():
            m = _mono_mul(mono, ((v, deg),)) if deg else mono
            terms[m] = terms.get(m, 0) + c
    return Poly({m: c for m, c in terms.items() if c})


def _coeff_content(coeffs: dict) -> Poly:
    g = _P_ZERO
    for poly in coeffs.values():
        g = poly_gcd(g, poly)
        if g == _P_ONE:
            break
    return g


def _coeff_divexact(coeffs: dict, g: Poly) -> dict:
    if g == _P_ONE:
        return coeffs
    return {d: p.divexact(g) for d, p in coeffs.items()}


def _prem(f: dict, g: dict) -> dict:
    """Pseudo-remainder of univariate polynomials with Poly coefficients."""
    dg = max(g)
    lg = g[dg]
    r = dict(f)
    while r and max(r) >= dg:
        dr = max(r)
        lr = r[dr]
        k = dr - dg
        nr: dict = {}
        for d, p in r.items():
            nr[d] = p * lg
        for d, p in g.items():
            q = nr.get(d + k, _P_ZERO) - p * lr
            nr[d + k] = q
        r = {d: p for d, p in nr.items() if not p.is_zero and d != dr}
    return r


def _normalize_sign(p: Poly) -> Poly:
    if p.is_zero:
        return p
    _, c = p.leading()
    return p.scale(-1) if c < 0 else p


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Full gcd over the integers (content times primitive part), with a
    positive graded-lex leading coefficient."""
    if f.is_zero:
        return _normalize_sign(g)
    if g.is_zero:
        return _normalize_sign(f)
    cf = f.int_content()
    cg = g.int_content()
    c = math.gcd(cf, cg)
    pf = f.divexact(Poly.const(cf))
    pg = g.divexact(Poly.const(cg))
    mf = pf.mono_content()
    mg = pg.mono_content()
    mc = _mono_gcd(mf, mg)
    if mf:
        pf = Poly({_mono_div(m, mf): v for m, v in pf.terms.items()})
    if mg:
        pg = Poly({_mono_div(m, mg): v for m, v in pg.terms.items()})
    h = _gcd_primitive(pf, pg)
    return _normalize_sign(h.scale(c).mul_mono(mc))


def _gcd_primitive(f: Poly, g: Poly) -> Poly:
    names = sorted(f.names | g.names)
    if not names:
        return _P_ONE
    v = names[0]
    F = _univar(f, v)
    G = _univar(g, v)
    contF = _coeff_content(F)
    contG = _coeff_content(G)
    d = poly_gcd(contF, contG)
    F = _coeff_divexact(F, contF)
    G = _coeff_divexact(G, contG)
    if max(F) < max(G):
        F, G = G, F
    while True:
        r = _prem(F, G)
        if not r:
            result = _from_univar(G, v)
            break
        if max(r) == 0:
            # nontrivial constant (in v) remainder: the pp-gcd is trivial
            result = _P_ONE
            break
        rc = _coeff_content(r)
        F, G = G, _coeff_divexact(r, rc)
    # drop any residual content picked up by the remainder sequence
    if result != _P_ONE:
        rcont = _coeff_content(_univar(result, v))
        if rcont != _P_ONE:
            result = _from_univar(_coeff_divexact(_univar(result, v), rcont), v)
        c = result.int_content()
        if c > 1:
            result = result.divexact(Poly.const(c))
    return result * d


# ---------------------------------------------------------------------------
# the field: quotients of polynomials
# ---------------------------------------------------------------------------

class ParamScalar:
    """An exact multivariate rational function over the rationals.

    Instances are immutable and always canonical; use ``var``, ``const``,
    ``parse_scalar`` or arithmetic to build them.

    >>> p, u, v = var("p"), var("u"), var("v")
    >>> str(p * (u - v))
    'p*u - p*v'
    >>> (u - v) / (u - v) == const(1)
    True
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = _P_ONE):
        num, den = _canonical(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("ParamScalar is immutable")

    # -- basic structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num == _P_ONE and self.den == _P_ONE

    @property
    def names(self) -> frozenset:
        return self.num.names | self.den.names

    def is_constant(self) -> bool:
        return not self.names

    def as_ratio(self) -> Fraction:
        """The value as a rational number; only for constant scalars."""
        if self.names:
            raise IncompleteAssignmentError(self.names)
        return self.evaluate({})

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: ScalarLike) -> "ParamScalar":
        other = as_scalar(other)
        if self.den == _P_ONE and other.den == _P_ONE:
            return ParamScalar(self.num + other.num)
        return ParamScalar(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> "ParamScalar":
        out = object.__new__(ParamScalar)
        object.__setattr__(out, "num", -self.num)
        object.__setattr__(out, "den", self.den)
        return out

    def __sub__(self, other: ScalarLike) -> "ParamScalar":
        return self + (-as_scalar(other))

    def __rsub__(self, other: ScalarLike) -> "ParamScalar":
        return as_scalar(other) + (-self)

    def __mul__(self, other: ScalarLike) -> "ParamScalar":
        other = as_scalar(other)
        if self.num.is_zero or other.num.is_zero:
            return ZERO
        if self.den == _P_ONE and other.den == _P_ONE:
            return ParamScalar(self.num * other.num)
        # canonical inputs: cross-cancel, then only content/sign work remains
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num.divexact(g1) if g1 != _P_ONE else self.num
        d2 = other.den.divexact(g1) if g1 != _P_ONE else other.den
        n2 = other.num.divexact(g2) if g2 != _P_ONE else other.num
        d1 = self.den.divexact(g2) if g2 != _P_ONE else self.den
        return ParamScalar(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def reciprocal(self) -> "ParamScalar":
        if self.num.is_zero:
            raise ZeroDivisionError("reciprocal of zero")
        return ParamScalar(self.den, self.num)

    def __truediv__(self, other: ScalarLike) -> "ParamScalar":
        return self * as_scalar(other).reciprocal()

    def __rtruediv__(self, other: ScalarLike) -> "ParamScalar":
        return as_scalar(other) * self.reciprocal()

    def __pow__(self, n: int) -> "ParamScalar":
        if n < 0:
            return self.reciprocal() ** (-n)
        out = object.__new__(ParamScalar)
        object.__setattr__(out, "num", self.num ** n)
        object.__setattr__(out, "den", self.den ** n)
        return out

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, assignment: Mapping[str, Union[int, Fraction]]) -> Fraction:
        """Exact value at a point; every indeterminate must be assigned."""
        missing = self.names - set(assignment)
        if missing:
            raise IncompleteAssignmentError(missing)
        den = self.den.evaluate(assignment)
        if den == 0:
            raise PoleError(f"denominator {self.den} vanishes at the point")
        return self.num.evaluate(assignment) / den

    def substitute(self, mapping: Mapping[str, ScalarLike]) -> "ParamScalar":
        """Replace some indeterminates by scalars, leaving the rest free."""
        values = {k: as_scalar(v) for k, v in mapping.items()}

        def sub_poly(p: Poly) -> "ParamScalar":
            total = ZERO
            for mono, c in p.terms.items():
                term = const(c)
                for name, e in mono:
                    base = values.get(name)
                    if base is None:
                        base = var(name)
                    term = term * base ** e
                total = total + term
            return total

        den = sub_poly(self.den)
        if den.is_zero:
            raise PoleError(f"denominator {self.den} vanishes under substitution")
        return sub_poly(self.num) / den

    # -- comparisons, hashing, output ---------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, str)):
            other = as_scalar(other)
        if not isinstance(other, ParamScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return not self.num.is_zero

    def __str__(self) -> str:
        if self.den == _P_ONE:
            return str(self.num)
        num_s = str(self.num)
        if len(self.num.terms) > 1:
            num_s = f"({num_s})"
        den_s = str(self.den)
        if len(self.den.terms) > 1 or "*" in den_s:
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def __repr__(self) -> str:
        return f"<scalar {self}>"


def _canonical(num: Poly, den: Poly):
    if den.is_zero:
        raise MalformedScalarError("zero denominator")
    if num.is_zero:
        return _P_ZERO, _P_ONE
    if den != _P_ONE:
        g = poly_gcd(num, den)
        if g != _P_ONE:
            num = num.divexact(g)
            den = den.divexact(g)
    c = math.gcd(num.int_content(), den.int_content())
    if c > 1:
        num = num.divexact(Poly.const(c))
        den = den.divexact(Poly.const(c))
    if den.leading()[1] < 0:
        num = num.scale(-1)
        den = den.scale(-1)
    return num, den


def normalize(s: ParamScalar) -> ParamScalar:
    """Return the canonical form of s (the identity on this representation:
    every ParamScalar is canonicalized at construction)."""
    return ParamScalar(s.num, s.den)


# -- public constructors ----------------------------------------------------

def var(name: str) -> ParamScalar:
    """The indeterminate with the given name, as a scalar."""
    if not _NAME_RE.fullmatch(name):
        raise ScalarParseError(f"bad indeterminate name: {name!r}")
    return ParamScalar(Poly.variable(name))


def const(value: Union[int, Fraction]) -> ParamScalar:
    """Embed a rational constant into the scalar field."""
    f = Fraction(value)
    return ParamScalar(Poly.const(f.numerator), Poly.const(f.denominator))


def as_scalar(value: ScalarLike) -> ParamScalar:
    if isinstance(value, ParamScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return const(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot interpret {value!r} as a scalar")


ZERO = const(0)
ONE = const(1)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------
#
# expr   := term (('+' | '-') term)*
# term   := unary (('*' | '/') unary)*
# unary  := ('-' | '+') unary | power
# power  := atom (('^' | '**') INT)?
# atom   := INT | NAME | '(' expr ')'

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ScalarParseError(
                    f"unexpected character {text[pos:].strip()[0]!r} in {text!r}"
                )
            break
        if m.group("int") is not None:
            out.append(("int", m.group("int")))
        elif m.group("name") is not None:
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, text):
        self.tokens = tokens
        self.pos = 0
        self.text = text

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ScalarParseError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> ParamScalar:
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ScalarParseError(f"trailing input in {self.text!r}")
        return value

    def expr(self) -> ParamScalar:
        value = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self) -> ParamScalar:
        value = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in ("*", "/"):
                self.take()
                rhs = self.unary()
                if val == "/":
                    if rhs.is_zero:
                        raise MalformedScalarError("division by zero in expression")
                    value = value / rhs
                else:
                    value = value * rhs
            else:
                return value

    def unary(self) -> ParamScalar:
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return inner if val == "+" else -inner
        return self.power()

    def power(self) -> ParamScalar:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val in ("^", "**"):
            self.take()
            k, v = self.take()
            neg = False
            if k == "op" and v == "-":
                neg = True
                k, v = self.take()
            if k != "int":
                raise ScalarParseError(f"expected integer exponent in {self.text!r}")
            e = int(v)
            if neg and base.is_zero:
                raise MalformedScalarError("zero to a negative power")
            return base ** (-e if neg else e)
        return base

    def atom(self) -> ParamScalar:
        kind, val = self.take()
        if kind == "int":
            return const(int(val))
        if kind == "name":
            return ParamScalar(Poly.variable(val))
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ScalarParseError(f"unexpected end of expression in {self.text!r}")


def parse_scalar(text: str) -> ParamScalar:
    """Parse the textual scalar grammar (the same one ``str`` emits)."""
    tokens = _tokenize(text)
    if not tokens:
        raise ScalarParseError("empty scalar expression")
    return _Parser(tokens, text).parse()


def format_scalar(s: ParamScalar) -> str:
    return str(s)


def fresh_name(base: str, taken) -> str:
    """base, or base_1, base_2, ... -- the first not in taken."""
    if base not in taken:
        return base
    i = 1
    while f"{base}_{i}" in taken:
        i += 1
    return f"{base}_{i}"
