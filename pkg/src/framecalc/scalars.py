"""Exact scalar arithmetic: rationals, sparse polynomials in named parameters,
and linear forms in a single unknown.

Rationals are stdlib fractions.Fraction (arbitrary precision, auto-normalized
to lowest terms with positive denominator). Polynomials are sparse maps from
monomials to rational coefficients; no floats anywhere.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

# Monomial: sorted tuple of (symbol, exponent) pairs, exponents >= 1.
# The empty tuple is the constant monomial.
Monomial = tuple


class ScalarError(ValueError):
    pass


class EvaluationError(ScalarError):
    pass


class SolveError(ScalarError):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def format_rational(q: Fraction) -> str:
    """Render as "a/b", omitting the denominator when it is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "a" or "a/b" with integer a, b. Zero denominator is an error."""
    s = text.strip()
    m = re.fullmatch(r"([+-]?\d+)\s*(?:/\s*([+-]?\d+))?", s)
    if not m:
        raise ScalarError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ScalarError(f"zero denominator in rational: {text!r}")
    return Fraction(num, den)


def _mono_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def _mono_str(mono: Monomial) -> str:
    parts = []
    for sym, exp in mono:
        parts.append(sym if exp == 1 else f"{sym}^{exp}")
    return "*".join(parts)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps: dict[str, int] = {}
    for sym, e in a:
        exps[sym] = exps.get(sym, 0) + e
    for sym, e in b:
        exps[sym] = exps.get(sym, 0) + e
    return tuple(sorted(exps.items()))


def _coerce(value) -> "ParamScalar | None":
    if isinstance(value, ParamScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return ParamScalar.rational(value)
    return None


class ParamScalar:
    """Sparse multivariate polynomial over declared parameters with Fraction
    coefficients. Immutable; arithmetic never loses exactness."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                c = Fraction(coeff)
                if c != 0:
                    clean[tuple(mono)] = c
        self._terms = clean

    @classmethod
    def rational(cls, q) -> "ParamScalar":
        return cls({(): Fraction(q)})

    @classmethod
    def param(cls, name: str) -> "ParamScalar":
        if not _IDENT_RE.fullmatch(name):
            raise ScalarError(f"bad parameter name: {name!r}")
        return cls({((name, 1),): Fraction(1)})

    # -- queries ---------------------------------------------------------

    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(mono == () for mono in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ScalarError(f"not a constant scalar: {self}")
        return self._terms.get((), Fraction(0))

    def symbols(self) -> frozenset:
        return frozenset(sym for mono in self._terms for sym, _ in mono)

    def degree(self) -> int:
        if not self._terms:
            return 0
        return max(_mono_degree(m) for m in self._terms)

    def affine_in(self, sym: str) -> tuple:
        """Return (a, b) with self == a*sym + b, both Fractions.

        Raises if self has degree > 1 or involves any other symbol.
        """
        a = Fraction(0)
        b = Fraction(0)
        for mono, coeff in self._terms.items():
            if mono == ():
                b = coeff
            elif mono == ((sym, 1),):
                a = coeff
            else:
                raise ScalarError(f"not affine in {sym}: {self}")
        return a, b

    def evaluate(self, bindings: dict) -> Fraction:
        """Substitute rationals for every parameter; missing ones are errors."""
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            val = coeff
            for sym, exp in mono:
                if sym not in bindings:
                    raise EvaluationError(f"unbound parameter: {sym}")
                val *= Fraction(bindings[sym]) ** exp
            total += val
        return total

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self._terms)
        for mono, coeff in o._terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + coeff
        return ParamScalar(terms)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        terms: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                m = _mono_mul(m1, m2)
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return ParamScalar(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o.is_constant():
            raise ScalarError(f"division by non-constant scalar: {o}")
        q = o.constant_value()
        if q == 0:
            raise ScalarError("division by zero")
        return ParamScalar({m: c / q for m, c in self._terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ScalarError("only non-negative integer powers")
        out = ParamScalar.rational(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- rendering -------------------------------------------------------

    def render(self) -> str:
        """Canonical text form: terms in degree-then-lexicographic order,
        e.g. "1/2*p + 9/5"; negative coefficients stay inside their term."""
        if not self._terms:
            return "0"
        keyed = sorted(self._terms.items(),
                       key=lambda kv: (-_mono_degree(kv[0]), _mono_str(kv[0])))
        parts = []
        for mono, coeff in keyed:
            if mono == ():
                parts.append(format_rational(coeff))
            elif coeff == 1:
                parts.append(_mono_str(mono))
            elif coeff == -1:
                parts.append("-" + _mono_str(mono))
            else:
                parts.append(format_rational(coeff) + "*" + _mono_str(mono))
        return " + ".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"ParamScalar({self.render()!r})"


ZERO = ParamScalar()
ONE = ParamScalar.rational(1)


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([+\-*/^()]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ScalarError(f"unexpected character {rest[0]!r} in scalar {text!r}")
        if m.group(1):
            tokens.append(("int", int(m.group(1))))
        elif m.group(2):
            tokens.append(("name", m.group(2)))
        else:
            tokens.append(("op", m.group(3)))
        pos = m.end()
    return tokens


class _ScalarParser:
    """Recursive-descent parser for the sum-of-terms grammar:

        expr  := [sign] term { sign term }
        term  := coeff [ '*' mono ] | mono
        coeff := INT [ '/' INT ]
        mono  := NAME [ '^' INT ] { '*' NAME [ '^' INT ] }
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg: str):
        raise ScalarError(f"{msg} in scalar {self.text!r}")

    def parse(self) -> ParamScalar:
        if not self.tokens:
            self.fail("empty expression")
        total = ZERO
        first = True
        while self.i < len(self.tokens):
            sign = Fraction(1)
            saw_sign = False
            while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
                if self.take()[1] == "-":
                    sign = -sign
                saw_sign = True
            if not first and not saw_sign:
                self.fail("expected '+' or '-' between terms")
            total = total + sign * self.parse_term()
            first = False
        return total

    def parse_term(self) -> ParamScalar:
        kind, val = self.peek()
        if kind == "int":
            coeff = self.parse_coeff()
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                return ParamScalar.rational(coeff) * self.parse_mono()
            if kind == "name":  # juxtaposition, e.g. "2p"
                return ParamScalar.rational(coeff) * self.parse_mono()
            return ParamScalar.rational(coeff)
        if kind == "name":
            return self.parse_mono()
        self.fail(f"expected a term, found {val!r}")

    def parse_coeff(self) -> Fraction:
        kind, num = self.take()
        if kind != "int":
            self.fail("expected an integer")
        if self.peek() == ("op", "/"):
            self.take()
            kind, den = self.take()
            if kind != "int":
                self.fail("expected an integer denominator")
            if den == 0:
                self.fail("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def parse_mono(self) -> ParamScalar:
        out = self.parse_power()
        while self.peek() == ("op", "*"):
            # only continue when a name follows; otherwise it is malformed
            if self.i + 1 < len(self.tokens) and self.tokens[self.i + 1][0] == "name":
                self.take()
                out = out * self.parse_power()
            else:
                self.fail("coefficient must precede the monomial")
        return out

    def parse_power(self) -> ParamScalar:
        kind, name = self.take()
        if kind != "name":
            self.fail("expected a parameter name")
        base = ParamScalar.param(name)
        if self.peek() == ("op", "^"):
            self.take()
            kind, exp = self.take()
            if kind != "int":
                self.fail("expected an integer exponent")
            return base ** exp
        return base


def parse_scalar(text: str) -> ParamScalar:
    """Parse the canonical scalar grammar, e.g. "1/2*p + 9/5" or "p^2 + -1"."""
    return _ScalarParser(text).parse()


# -- linear forms ------------------------------------------------------------

@dataclass(frozen=True)
class LinearForm:
    """coefficient * unknown + remainder == 0; the unknown is implicit."""

    coefficient: Fraction
    remainder: ParamScalar

    def equation_str(self, unknown: str = "lambda") -> str:
        return f"{format_rational(self.coefficient)}*{unknown} = {(-self.remainder).render()}"


def solve_linear(form: LinearForm) -> ParamScalar:
    """Solve coefficient * x + remainder == 0 for x.

    Zero coefficient with nonzero remainder is inconsistent; zero coefficient
    with zero remainder is underdetermined.
    """
    if form.coefficient == 0:
        if form.remainder.is_zero():
            raise SolveError("underdetermined", "underdetermined: 0 = 0")
        raise SolveError("inconsistent",
                         f"inconsistent: {form.remainder} = 0 has no solution")
    return (-form.remainder) / ParamScalar.rational(form.coefficient)
