"""Multivariate and Laurent polynomials over an exact coefficient field.

Polynomials are sparse maps from exponent tuples to nonzero field elements;
the exponent tuple length always equals the number of ring variables.  A
Laurent polynomial is a plain polynomial divided by a single monomial, kept
canonical: for every variable either the denominator exponent is zero or
the numerator is not divisible by that variable.

Monomial orders are value objects usable as dict-free comparison keys.
``lex`` and ``grevlex`` are standard; ``block_elimination(k)`` compares the
first k variables by grevlex before the rest, so any monomial containing
an eliminated variable exceeds every monomial in the remaining ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DescriptorMismatch,
    DivisionByZero,
    InvalidInput,
    ParseError,
    UnknownVariable,
    ZeroPolynomial,
)
from .exactfield import FieldDescriptor, FieldElem

LEX = "lex"
GREVLEX = "grevlex"
BLOCK = "block_elimination"


@dataclass(frozen=True)
class MonomialOrder:
    kind: str
    block_split: int = 0

    @staticmethod
    def lex():
        return MonomialOrder(LEX)

    @staticmethod
    def grevlex():
        return MonomialOrder(GREVLEX)

    @staticmethod
    def block_elimination(split):
        if split < 1:
            raise InvalidInput("block split must be >= 1")
        return MonomialOrder(BLOCK, split)

    def key(self, exps):
        """Sort key; larger key means larger monomial."""
        if self.kind == LEX:
            return exps
        if self.kind == GREVLEX:
            return _grevlex_key(exps)
        k = self.block_split
        return (_grevlex_key(exps[:k]), _grevlex_key(exps[k:]))


def _grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


def monomial_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class MultiPoly:
    """Sparse multivariate polynomial with exact coefficients."""

    __slots__ = ("descriptor", "variables", "terms")

    def __init__(self, descriptor, variables, terms):
        self.descriptor = descriptor
        self.variables = tuple(variables)
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(descriptor, variables):
        return MultiPoly(descriptor, variables, {})

    @staticmethod
    def constant(value, descriptor, variables):
        value = value if isinstance(value, FieldElem) else FieldElem.from_rational(value, descriptor)
        n = len(variables)
        return MultiPoly(descriptor, variables, {(0,) * n: value})

    @staticmethod
    def one(descriptor, variables):
        return MultiPoly.constant(1, descriptor, variables)

    @staticmethod
    def variable(name, descriptor, variables):
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariable(f"{name!r} is not one of {variables}")
        e = tuple(1 if v == name else 0 for v in variables)
        return MultiPoly(descriptor, variables, {e: FieldElem.one(descriptor)})

    @staticmethod
    def from_terms(pairs, descriptor, variables):
        terms = {}
        for e, c in pairs:
            c = c if isinstance(c, FieldElem) else FieldElem.from_rational(c, descriptor)
            if e in terms:
                c = terms[e] + c
            if c.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = c
        return MultiPoly(descriptor, tuple(variables), terms)

    # -- structure -------------------------------------------------------

    def _check(self, other):
        if (
            not isinstance(other, MultiPoly)
            or other.descriptor != self.descriptor
            or other.variables != self.variables
        ):
            raise DescriptorMismatch("polynomials live in different rings")

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.descriptor == other.descriptor
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(
            (self.descriptor, self.variables, frozenset(self.terms.items()))
        )

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def degree_in(self, name):
        i = self._index(name)
        return max((e[i] for e in self.terms), default=-1)

    def _index(self, name):
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariable(f"{name!r} is not one of {self.variables}") from None

    def leading(self, order):
        """(exponent, coefficient) of the leading term under the order."""
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), FieldElem.zero(self.descriptor))

    def constant_coefficient(self):
        return self.coefficient((0,) * len(self.variables))

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return MultiPoly(self.descriptor, self.variables, terms)

    def __neg__(self):
        return MultiPoly(
            self.descriptor, self.variables, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            return self.scale(other)
        self._check(other)
        if len(self.terms) > len(other.terms):
            self, other = other, self
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = monomial_mul(e1, e2)
                c = c1 * c2
                s = terms.get(e)
                s = c if s is None else s + c
                if s.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return MultiPoly(self.descriptor, self.variables, terms)

    def scale(self, c):
        if c.is_zero():
            return MultiPoly.zero(self.descriptor, self.variables)
        return MultiPoly(
            self.descriptor, self.variables, {e: k * c for e, k in self.terms.items()}
        )

    def mul_term(self, exps, coeff):
        """Multiply by a single term coeff * x^exps."""
        if coeff.is_zero():
            return MultiPoly.zero(self.descriptor, self.variables)
        return MultiPoly(
            self.descriptor,
            self.variables,
            {monomial_mul(e, exps): c * coeff for e, c in self.terms.items()},
        )

    def __pow__(self, n):
        if n < 0:
            raise InvalidInput("negative power of a plain polynomial")
        out = MultiPoly.one(self.descriptor, self.variables)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def monic(self, order):
        _, c = self.leading(order)
        return self.scale(c.inv())

    def derivative(self, name):
        i = self._index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            terms[tuple(ne)] = c * FieldElem.from_rational(e[i], self.descriptor)
        return MultiPoly(self.descriptor, self.variables, terms)

    def substitute(self, assignment):
        """Substitute values for variables.

        ``assignment`` maps variable names to FieldElem constants or to
        polynomials in some common target ring; unmentioned variables must
        exist in the target ring.
        """
        targets = [v for v in self.variables if v not in assignment]
        sample = next(
            (p for p in assignment.values() if isinstance(p, MultiPoly)), None
        )
        if sample is not None:
            ring_vars = sample.variables
            desc = sample.descriptor
        else:
            ring_vars = tuple(targets)
            desc = self.descriptor
        for v in targets:
            if v not in ring_vars:
                raise UnknownVariable(f"no value supplied for {v!r}")
        out = MultiPoly.zero(desc, ring_vars)
        for e, c in self.terms.items():
            part = MultiPoly.constant(
                c if isinstance(c, FieldElem) else FieldElem.from_rational(c, desc),
                desc,
                ring_vars,
            )
            for v, exp in zip(self.variables, e):
                if exp == 0:
                    continue
                val = assignment.get(v)
                if val is None:
                    val = MultiPoly.variable(v, desc, ring_vars)
                elif isinstance(val, FieldElem):
                    val = MultiPoly.constant(val, desc, ring_vars)
                part = part * val**exp
            out = out + part
        return out

    def rename_ring(self, variables):
        """Reinterpret in a ring with more variables (superset by name)."""
        variables = tuple(variables)
        idx = [variables.index(v) for v in self.variables]
        n = len(variables)
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for pos, exp in zip(idx, e):
                ne[pos] = exp
            terms[tuple(ne)] = c
        return MultiPoly(self.descriptor, variables, terms)

    # -- printing --------------------------------------------------------

    def sorted_terms(self, order=None):
        order = order or MonomialOrder.grevlex()
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def __str__(self):
        return format_terms(self.sorted_terms(), self.variables)

    def __repr__(self):
        return f"MultiPoly({self})"


def format_terms(pairs, variables):
    if not pairs:
        return "0"
    chunks = []
    for e, c in pairs:
        mono = "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in zip(variables, e) if k != 0
        )
        ctxt = str(c)
        if mono:
            if ctxt == "1":
                body = mono
            elif ctxt == "-1":
                body = f"-{mono}"
            else:
                if any(op in ctxt[1:] for op in "+-") or "/" in ctxt:
                    ctxt = f"({ctxt})"
                body = f"{ctxt}*{mono}"
        else:
            if any(op in ctxt[1:] for op in "+-") and not ctxt.startswith("("):
                ctxt = f"({ctxt})" if "/" in ctxt else ctxt
            body = ctxt
        chunks.append(body)
    out = chunks[0]
    for ch in chunks[1:]:
        out += ch if ch.startswith("-") else "+" + ch
    return out


class LaurentPoly:
    """A polynomial divided by a monomial, in canonical reduced form."""

    __slots__ = ("numerator", "denominator_exponents")

    def __init__(self, numerator, denominator_exponents=None):
        den = tuple(denominator_exponents or (0,) * len(numerator.variables))
        if len(den) != len(numerator.variables):
            raise InvalidInput("denominator exponent length mismatch")
        if any(d < 0 for d in den):
            raise InvalidInput("denominator exponents must be >= 0")
        if numerator.terms:
            mins = [
                min(e[i] for e in numerator.terms)
                for i in range(len(numerator.variables))
            ]
            shift = tuple(min(m, d) for m, d in zip(mins, den))
            if any(shift):
                numerator = MultiPoly(
                    numerator.descriptor,
                    numerator.variables,
                    {monomial_div(e, shift): c for e, c in numerator.terms.items()},
                )
                den = monomial_div(den, shift)
        else:
            den = (0,) * len(den)
        self.numerator = numerator
        self.denominator_exponents = den

    @staticmethod
    def from_poly(p):
        return LaurentPoly(p)

    @staticmethod
    def from_int_terms(pairs, descriptor, variables):
        """Build from terms whose exponents may be negative."""
        variables = tuple(variables)
        n = len(variables)
        pairs = list(pairs)
        den = tuple(
            max((max(0, -e[i]) for e, _ in pairs), default=0) for i in range(n)
        )
        num = MultiPoly.from_terms(
            ((monomial_mul(e, den), c) for e, c in pairs), descriptor, variables
        )
        return LaurentPoly(num, den)

    @property
    def descriptor(self):
        return self.numerator.descriptor

    @property
    def variables(self):
        return self.numerator.variables

    def is_zero(self):
        return self.numerator.is_zero()

    def is_polynomial(self):
        return not any(self.denominator_exponents)

    def int_terms(self):
        """Terms as (signed exponent tuple, coefficient) pairs."""
        d = self.denominator_exponents
        return [
            (tuple(x - y for x, y in zip(e, d)), c)
            for e, c in self.numerator.terms.items()
        ]

    def _align(self, other):
        if (
            self.descriptor != other.descriptor
            or self.variables != other.variables
        ):
            raise DescriptorMismatch("laurent polynomials live in different rings")
        den = monomial_lcm(self.denominator_exponents, other.denominator_exponents)
        a = self.numerator.mul_term(
            monomial_div(den, self.denominator_exponents),
            FieldElem.one(self.descriptor),
        )
        b = other.numerator.mul_term(
            monomial_div(den, other.denominator_exponents),
            FieldElem.one(self.descriptor),
        )
        return a, b, den

    def __add__(self, other):
        other = _coerce_laurent(other, self)
        a, b, den = self._align(other)
        return LaurentPoly(a + b, den)

    def __sub__(self, other):
        other = _coerce_laurent(other, self)
        a, b, den = self._align(other)
        return LaurentPoly(a - b, den)

    def __neg__(self):
        return LaurentPoly(-self.numerator, self.denominator_exponents)

    def __mul__(self, other):
        other = _coerce_laurent(other, self)
        return LaurentPoly(
            self.numerator * other.numerator,
            monomial_mul(self.denominator_exponents, other.denominator_exponents),
        )

    def __pow__(self, n):
        if n < 0:
            if len(self.numerator.terms) != 1:
                raise DivisionByZero("only monomials can be inverted as Laurent polynomials")
            return self.inv_monomial() ** (-n)
        out = LaurentPoly(MultiPoly.one(self.descriptor, self.variables))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def inv_monomial(self):
        """Inverse, defined for single-term Laurent polynomials."""
        if len(self.numerator.terms) != 1:
            raise DivisionByZero("not a monomial")
        (e, c), = self.numerator.terms.items()
        shifted = monomial_div(e, self.denominator_exponents)
        return LaurentPoly.from_int_terms(
            [(tuple(-x for x in shifted), c.inv())], self.descriptor, self.variables
        )

    def scale(self, c):
        return LaurentPoly(self.numerator.scale(c), self.denominator_exponents)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (
            self.numerator == other.numerator
            and self.denominator_exponents == other.denominator_exponents
        )

    def __hash__(self):
        return hash((self.numerator, self.denominator_exponents))

    def __str__(self):
        order = MonomialOrder.grevlex()
        pairs = sorted(
            self.int_terms(), key=lambda t: (sum(t[0]), t[0]), reverse=True
        )
        return format_terms(pairs, self.variables)

    def __repr__(self):
        return f"LaurentPoly({self})"


def _coerce_laurent(value, like):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, MultiPoly):
        return LaurentPoly(value)
    raise DescriptorMismatch(f"cannot combine LaurentPoly with {type(value)}")


# -- homogenization -----------------------------------------------------------

def homogenize(f, new_variable):
    """x0^(deg f) * f(x_i / x0), with the new variable appended to the ring."""
    if f.is_zero():
        raise ZeroPolynomial("cannot homogenize the zero polynomial")
    if new_variable in f.variables:
        raise InvalidInput(f"{new_variable!r} already belongs to the ring")
    d = f.total_degree()
    variables = f.variables + (new_variable,)
    terms = {e + (d - sum(e),): c for e, c in f.terms.items()}
    return MultiPoly(f.descriptor, variables, terms)


def dehomogenize(F, variable):
    """Evaluate at variable = 1 and drop the variable from the ring."""
    i = F._index(variable)
    variables = tuple(v for v in F.variables if v != variable)
    out = MultiPoly.zero(F.descriptor, variables)
    terms = {}
    for e, c in F.terms.items():
        ne = e[:i] + e[i + 1 :]
        s = terms.get(ne)
        s = c if s is None else s + c
        if s.is_zero():
            terms.pop(ne, None)
        else:
            terms[ne] = s
    return MultiPoly(F.descriptor, variables, terms)


def laurent_to_presentation(h, aux_variable):
    """Image of a Laurent polynomial in k[x_1..x_n, t]/(t*x_1*...*x_n - 1).

    Term by term, a monomial denominator x^e becomes t^m * x^(m*1 - e) with
    m = max(e), realizing each inverse variable x_i^(-1) as t times the
    product of the other variables; substituting t = (x_1...x_n)^(-1)
    recovers h.
    """
    if aux_variable in h.variables:
        raise InvalidInput(f"{aux_variable!r} already belongs to the ring")
    variables = h.variables + (aux_variable,)
    terms = {}
    for a, c in h.int_terms():
        m = max((-x for x in a if x < 0), default=0)
        terms[tuple(x + m for x in a) + (m,)] = c
    return MultiPoly(h.descriptor, variables, terms)


def presentation_to_laurent(p, aux_variable):
    """Inverse direction: substitute t = (x_1...x_n)^(-1)."""
    i = p._index(aux_variable)
    variables = tuple(v for v in p.variables if v != aux_variable)
    pairs = []
    for e, c in p.terms.items():
        t = e[i]
        rest = e[:i] + e[i + 1 :]
        pairs.append((tuple(x - t for x in rest), c))
    return LaurentPoly.from_int_terms(pairs, p.descriptor, variables)


# -- parsing ------------------------------------------------------------------

_TOKEN_CHARS = set("+-*/^() \t")


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append(ch)
            i += 1
            continue
        j = i
        while j < len(text) and text[j] not in _TOKEN_CHARS:
            j += 1
        tokens.append(text[i:j])
        i = j
    return tokens


class _Parser:
    """Recursive-descent parser producing a LaurentPoly.

    Identifiers resolve to ring variables or, for the field variable of
    Q(t) / a number field generator, to coefficient constants.  Division is
    restricted to invertible constants and monomials; ``^`` accepts negative
    exponents (Laurent context only).
    """

    def __init__(self, tokens, descriptor, variables, allow_negative):
        self.tokens = tokens
        self.pos = 0
        self.descriptor = descriptor
        self.variables = tuple(variables)
        self.allow_negative = allow_negative

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, tok):
        got = self.take()
        if got != tok:
            raise ParseError(f"expected {tok!r}, found {got!r}")

    def parse(self):
        value = self.expr()
        if self.peek() is not None:
            raise ParseError(f"unexpected trailing token {self.peek()!r}")
        return value

    def expr(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                value = value * _laurent_inverse(rhs)
        return value

    def factor(self):
        if self.peek() == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        while self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise ParseError(f"expected an integer exponent, found {tok!r}")
            n = sign * int(tok)
            if n < 0 and not self.allow_negative:
                raise ParseError("negative exponents are not allowed here")
            base = base**n
        return base

    def atom(self):
        tok = self.take()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok == "(":
            value = self.expr()
            self.expect(")")
            return value
        if tok in ("+", "*", "/", "^", ")"):
            raise ParseError(f"unexpected token {tok!r}")
        lift = lambda p: LaurentPoly(p)
        if tok in self.variables:
            return lift(MultiPoly.variable(tok, self.descriptor, self.variables))
        if tok == self.descriptor.variable:
            return lift(
                MultiPoly.constant(
                    FieldElem.generator(self.descriptor), self.descriptor, self.variables
                )
            )
        try:
            q = Fraction(tok)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"unknown symbol {tok!r}") from None
        return lift(MultiPoly.constant(q, self.descriptor, self.variables))


def _laurent_inverse(value):
    if len(value.numerator.terms) == 1:
        return value.inv_monomial()
    raise ParseError("division is only allowed by constants and monomials")


def parse_polynomial(text, descriptor, variables, laurent=False):
    """Parse text into a MultiPoly (or LaurentPoly when laurent=True)."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text")
    value = _Parser(tokens, descriptor, variables, laurent).parse()
    if laurent:
        return value
    if not value.is_polynomial():
        raise ParseError("negative exponents in a plain polynomial context")
    return value.numerator


def parse_field_element(text, descriptor):
    """Parse a field-element string such as ``-3/2`` or ``t^2+1``."""
    p = parse_polynomial(text, descriptor, (), laurent=False)
    return p.constant_coefficient()
