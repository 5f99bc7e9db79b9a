"""Exact arithmetic in the supported coefficient fields.

Three kinds of field are available: the rationals Q, simple extensions
Q[t]/(m(t)) with m monic of degree >= 1, and the rational function field
Q(t).  Values are immutable and kept in canonical reduced form, so equality
is plain payload comparison:

* rationals reduce to lowest terms with positive denominator (``Fraction``),
* extension elements are polynomials of degree < deg(m) in the generator,
* rational functions are coprime fractions with monic denominator.

Irreducibility of the extension modulus is deliberately not verified; a
reducible modulus surfaces as :class:`~unitgroup.errors.DivisionByZero`
when a zero divisor gets inverted.

Univariate polynomials over Q are represented throughout as tuples of
``Fraction`` coefficients, lowest degree first, with no trailing zeros
(the zero polynomial is the empty tuple).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import DivisionByZero, DescriptorMismatch, InvalidInput

RATIONALS = "rationals"
NUMBER_FIELD = "number_field"
RATIONAL_FUNCTIONS = "rational_functions"


# -- univariate polynomial helpers (dense tuples, low degree first) -----------

def poly_trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_add(a, b):
    n = max(len(a), len(b))
    return poly_trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def poly_neg(a):
    return tuple(-c for c in a)


def poly_sub(a, b):
    return poly_add(a, poly_neg(b))


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return poly_trim(out)


def poly_scale(a, c):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def poly_divmod(a, b):
    """Quotient and remainder of a by b; b must be nonzero."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    inv_lead = 1 / Fraction(b[-1])
    while len(r) >= len(b):
        if r[-1] == 0:
            r.pop()
            continue
        c = r[-1] * inv_lead
        d = len(r) - len(b)
        q[d] = c
        for i, cb in enumerate(b):
            r[d + i] -= c * cb
        r.pop()
    return poly_trim(q), poly_trim(r)


def poly_gcd(a, b):
    """Monic gcd, or () when both arguments are zero."""
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return ()
    return poly_scale(a, 1 / a[-1])


def poly_xgcd(a, b):
    """Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = a, b
    u0, u1 = (Fraction(1),), ()
    v0, v1 = (), (Fraction(1),)
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, poly_sub(u0, poly_mul(q, u1))
        v0, v1 = v1, poly_sub(v0, poly_mul(q, v1))
    if not r0:
        return (), u0, v0
    lead = r0[-1]
    return poly_scale(r0, 1 / lead), poly_scale(u0, 1 / lead), poly_scale(v0, 1 / lead)


def poly_eval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _rational_sqrt(q):
    """Exact square root of a Fraction, or None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def poly_sqrt(a):
    """Exact square root of a univariate polynomial over Q, or None.

    Sign convention: the returned root has positive leading coefficient.
    """
    if not a:
        return ()
    if (len(a) - 1) % 2 != 0:
        return None
    lead = _rational_sqrt(a[-1])
    if lead is None:
        return None
    half = (len(a) - 1) // 2
    root = [Fraction(0)] * (half + 1)
    root[half] = lead
    # match coefficients from the top down
    for k in range(half - 1, -1, -1):
        # coefficient of x^(k + half) in root^2 must equal a[k + half]
        s = sum(root[i] * root[k + half - i] for i in range(k + 1, half))
        root[k] = (a[k + half] - s) / (2 * lead)
    return poly_trim(root) if poly_mul(tuple(root), tuple(root)) == a else None


def poly_text(a, var):
    """Human-readable form of a univariate polynomial, highest degree first."""
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        if i == 0:
            mono = ""
        elif i == 1:
            mono = var
        else:
            mono = f"{var}^{i}"
        if mono:
            if c == 1:
                txt = mono
            elif c == -1:
                txt = f"-{mono}"
            else:
                txt = f"{c}*{mono}"
        else:
            txt = str(c)
        parts.append(txt)
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


# -- field descriptors ---------------------------------------------------------

@dataclass(frozen=True)
class FieldDescriptor:
    """Identifies one of the supported coefficient fields.

    ``modulus`` is present exactly for number fields (monic, coefficients
    low degree first); ``variable`` names the generator of a number field
    or the variable of Q(t).
    """

    kind: str
    modulus: tuple = None
    variable: str = None

    def __post_init__(self):
        if self.kind not in (RATIONALS, NUMBER_FIELD, RATIONAL_FUNCTIONS):
            raise InvalidInput(f"unknown field kind {self.kind!r}")
        if self.kind == NUMBER_FIELD:
            if not self.modulus or len(self.modulus) < 2:
                raise InvalidInput("number field modulus must have degree >= 1")
            if self.modulus[-1] != 1:
                raise InvalidInput("number field modulus must be monic")
            if self.variable is None:
                raise InvalidInput("number field needs a generator name")
        elif self.kind == RATIONAL_FUNCTIONS:
            if self.variable is None:
                raise InvalidInput("rational function field needs a variable name")
            if self.modulus is not None:
                raise InvalidInput("rational function field takes no modulus")
        elif self.modulus is not None or self.variable is not None:
            raise InvalidInput("the rationals take no modulus or variable")

    @staticmethod
    def rationals():
        return FieldDescriptor(RATIONALS)

    @staticmethod
    def number_field(modulus, variable="t"):
        return FieldDescriptor(NUMBER_FIELD, poly_trim(Fraction(c) for c in modulus), variable)

    @staticmethod
    def rational_functions(variable="t"):
        return FieldDescriptor(RATIONAL_FUNCTIONS, None, variable)

    @property
    def degree(self):
        return len(self.modulus) - 1 if self.kind == NUMBER_FIELD else None

    def to_json(self):
        out = {"kind": self.kind}
        if self.modulus is not None:
            out["modulus"] = [str(c) for c in self.modulus]
        if self.variable is not None:
            out["variable"] = self.variable
        return out

    @staticmethod
    def from_json(obj):
        kind = obj.get("kind")
        if kind == RATIONALS:
            return FieldDescriptor.rationals()
        if kind == NUMBER_FIELD:
            return FieldDescriptor.number_field(
                [Fraction(c) for c in obj["modulus"]], obj.get("variable", "t")
            )
        if kind == RATIONAL_FUNCTIONS:
            return FieldDescriptor.rational_functions(obj.get("variable", "t"))
        raise InvalidInput(f"unknown field kind {kind!r}")

    def __repr__(self):
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == RATIONAL_FUNCTIONS:
            return f"Q({self.variable})"
        return f"Q[{self.variable}]/({poly_text(self.modulus, self.variable)})"


class FieldElem:
    """An element of one of the supported fields, in canonical form."""

    __slots__ = ("descriptor", "payload")

    def __init__(self, descriptor, payload):
        self.descriptor = descriptor
        self.payload = payload

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_rational(q, descriptor):
        """Image of a rational number under the canonical inclusion Q <= K."""
        q = Fraction(q)
        if descriptor.kind == RATIONALS:
            return FieldElem(descriptor, q)
        if descriptor.kind == NUMBER_FIELD:
            return FieldElem(descriptor, poly_trim((q,)))
        return FieldElem(descriptor, (poly_trim((q,)), (Fraction(1),)))

    @staticmethod
    def zero(descriptor):
        return FieldElem.from_rational(0, descriptor)

    @staticmethod
    def one(descriptor):
        return FieldElem.from_rational(1, descriptor)

    @staticmethod
    def generator(descriptor):
        """The class of t in Q[t]/(m), or t itself in Q(t)."""
        t = (Fraction(0), Fraction(1))
        if descriptor.kind == NUMBER_FIELD:
            if descriptor.degree == 1:
                # t is congruent to the negated constant term
                return FieldElem(descriptor, poly_trim((-descriptor.modulus[0],)))
            return FieldElem(descriptor, t)
        if descriptor.kind == RATIONAL_FUNCTIONS:
            return FieldElem(descriptor, (t, (Fraction(1),)))
        raise InvalidInput("the rationals have no generator")

    @staticmethod
    def from_poly_pair(num, den, descriptor):
        """Canonical element of Q(t) from a numerator/denominator pair."""
        if descriptor.kind != RATIONAL_FUNCTIONS:
            raise InvalidInput("from_poly_pair needs a rational function field")
        num, den = poly_trim(num), poly_trim(den)
        if not den:
            raise DivisionByZero("zero denominator in Q(t)")
        if not num:
            return FieldElem(descriptor, ((), (Fraction(1),)))
        g = poly_gcd(num, den)
        num, den = poly_divmod(num, g)[0], poly_divmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = poly_scale(num, 1 / lead)
            den = poly_scale(den, 1 / lead)
        return FieldElem(descriptor, (num, den))

    # -- basic structure -------------------------------------------------

    def _check(self, other):
        if not isinstance(other, FieldElem) or other.descriptor != self.descriptor:
            raise DescriptorMismatch(
                f"cannot combine elements of {self.descriptor!r} and "
                f"{getattr(other, 'descriptor', type(other))!r}"
            )

    def is_zero(self):
        k = self.descriptor.kind
        if k == RATIONALS:
            return self.payload == 0
        if k == NUMBER_FIELD:
            return self.payload == ()
        return self.payload[0] == ()

    def is_one(self):
        return self == FieldElem.one(self.descriptor)

    def is_rational(self):
        """True when the element lies in the image of Q."""
        k = self.descriptor.kind
        if k == RATIONALS:
            return True
        if k == NUMBER_FIELD:
            return len(self.payload) <= 1
        return len(self.payload[0]) <= 1 and self.payload[1] == (Fraction(1),)

    def as_rational(self):
        """The element as a Fraction; caller must ensure is_rational()."""
        k = self.descriptor.kind
        if k == RATIONALS:
            return self.payload
        if k == NUMBER_FIELD:
            return self.payload[0] if self.payload else Fraction(0)
        return self.payload[0][0] if self.payload[0] else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.descriptor == other.descriptor and self.payload == other.payload

    def __hash__(self):
        return hash((self.descriptor, self.payload))

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        k = self.descriptor.kind
        if k == RATIONALS:
            return FieldElem(self.descriptor, self.payload + other.payload)
        if k == NUMBER_FIELD:
            return FieldElem(self.descriptor, poly_add(self.payload, other.payload))
        (a, b), (c, d) = self.payload, other.payload
        return FieldElem.from_poly_pair(
            poly_add(poly_mul(a, d), poly_mul(c, b)), poly_mul(b, d), self.descriptor
        )

    def __neg__(self):
        k = self.descriptor.kind
        if k == RATIONALS:
            return FieldElem(self.descriptor, -self.payload)
        if k == NUMBER_FIELD:
            return FieldElem(self.descriptor, poly_neg(self.payload))
        return FieldElem(self.descriptor, (poly_neg(self.payload[0]), self.payload[1]))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        k = self.descriptor.kind
        if k == RATIONALS:
            return FieldElem(self.descriptor, self.payload * other.payload)
        if k == NUMBER_FIELD:
            prod = poly_mul(self.payload, other.payload)
            return FieldElem(self.descriptor, poly_divmod(prod, self.descriptor.modulus)[1])
        (a, b), (c, d) = self.payload, other.payload
        return FieldElem.from_poly_pair(poly_mul(a, c), poly_mul(b, d), self.descriptor)

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        k = self.descriptor.kind
        if k == RATIONALS:
            return FieldElem(self.descriptor, 1 / self.payload)
        if k == NUMBER_FIELD:
            g, u, _ = poly_xgcd(self.payload, self.descriptor.modulus)
            if len(g) != 1:
                # modulus not irreducible: the payload is a zero divisor
                raise DivisionByZero(
                    "zero divisor in Q[t]/(m); the modulus is reducible"
                )
            return FieldElem(
                self.descriptor, poly_divmod(u, self.descriptor.modulus)[1]
            )
        num, den = self.payload
        return FieldElem.from_poly_pair(den, num, self.descriptor)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = FieldElem.one(self.descriptor)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sqrt(self):
        """An exact square root in the same field, or None.

        Over Q the root is the nonnegative one; over Q(t) the numerator of
        the root has positive leading coefficient; over a quadratic number
        field the root with rational part first/positive generator part is
        preferred.  Number fields of degree > 2 are only searched for
        rational square roots.
        """
        k = self.descriptor.kind
        if self.is_zero():
            return FieldElem.zero(self.descriptor)
        if k == RATIONALS:
            r = _rational_sqrt(self.payload)
            return None if r is None else FieldElem(self.descriptor, r)
        if self.is_rational():
            r = _rational_sqrt(self.as_rational())
            if r is not None:
                return FieldElem.from_rational(r, self.descriptor)
            if k != NUMBER_FIELD or self.descriptor.degree != 2:
                return None
        if k == RATIONAL_FUNCTIONS:
            num, den = self.payload
            rn, rd = poly_sqrt(num), poly_sqrt(den)
            if rn is None or rd is None:
                return None
            if rn and rn[-1] < 0:
                rn = poly_neg(rn)
            return FieldElem.from_poly_pair(rn, rd, self.descriptor)
        if self.descriptor.degree != 2:
            return None
        # quadratic extension: modulus t^2 - alpha*t - beta, element d0 + d1*t,
        # root u + v*t with u^2 + beta*v^2 = d0 and 2uv + alpha*v^2 = d1
        m = self.descriptor.modulus
        alpha, beta = -m[1], -m[0]
        pl = self.payload + (Fraction(0),) * (2 - len(self.payload))
        d0, d1 = pl[0], pl[1]
        if d1 == 0:
            # try purely t-proportional roots: (v*t)^2 = beta*v^2 + alpha*v^2*t
            if alpha == 0 and beta != 0:
                vv = d0 / beta
                v = _rational_sqrt(vv)
                if v is not None:
                    return FieldElem(self.descriptor, poly_trim((Fraction(0), v)))
        # general case: eliminate u, solve the quadratic in w = v^2:
        # (d1 - alpha*w)^2 + 4*beta*w^2 = 4*d0*w
        A = alpha * alpha + 4 * beta
        B = -2 * alpha * d1 - 4 * d0
        C = d1 * d1
        for w in _rational_quadratic_roots(A, B, C):
            if w <= 0:
                continue
            v = _rational_sqrt(w)
            if v is None:
                continue
            for v_signed in (v, -v):
                if v_signed == 0:
                    continue
                u = (d1 - alpha * v_signed * v_signed) / (2 * v_signed)
                cand = FieldElem(self.descriptor, poly_trim((u, v_signed)))
                if cand * cand == self:
                    # canonical sign: positive generator coefficient
                    if v_signed < 0:
                        cand = -cand
                    return cand
        return None

    # -- printing --------------------------------------------------------

    def __str__(self):
        k = self.descriptor.kind
        if k == RATIONALS:
            return str(self.payload)
        var = self.descriptor.variable
        if k == NUMBER_FIELD:
            return poly_text(self.payload, var)
        num, den = self.payload
        if den == (Fraction(1),):
            return poly_text(num, var)
        ntxt, dtxt = poly_text(num, var), poly_text(den, var)
        if len(num) > 1 or (num and num[0] < 0):
            ntxt = f"({ntxt})"
        if len(den) > 1:
            dtxt = f"({dtxt})"
        return f"{ntxt}/{dtxt}"

    def __repr__(self):
        return f"FieldElem({self})"


def _rational_quadratic_roots(A, B, C):
    """Rational roots of A*w^2 + B*w + C over Q (A may be zero)."""
    if A == 0:
        if B == 0:
            return []
        return [-C / B]
    disc = B * B - 4 * A * C
    r = _rational_sqrt(disc)
    if r is None:
        return []
    return [(-B + r) / (2 * A), (-B - r) / (2 * A)]


# -- cyclotomic fields ---------------------------------------------------------

def cyclotomic_polynomial(d):
    """The d-th cyclotomic polynomial via t^d - 1 = prod_{e | d} Phi_e(t)."""
    if d < 1:
        raise InvalidInput("cyclotomic index must be >= 1")
    num = [Fraction(-1)] + [Fraction(0)] * (d - 1) + [Fraction(1)]  # t^d - 1
    phi = poly_trim(num)
    for e in range(1, d):
        if d % e == 0:
            phi = poly_divmod(phi, cyclotomic_polynomial(e))[0]
    return phi


def cyclotomic_field(d, variable=None):
    """Number field descriptor for Q(zeta_d); the generator is zeta_d."""
    if d < 1:
        raise InvalidInput("cyclotomic index must be >= 1")
    if variable is None:
        variable = f"z{d}"
    return FieldDescriptor.number_field(cyclotomic_polynomial(d), variable)
