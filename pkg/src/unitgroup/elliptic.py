"""The elliptic pipeline over the rationals: exact Weierstrass group law,
canonical heights, relation lattices among boundary points, chord-and-tangent
divisor interpolation, and the unit-basis computation they combine into.

Curves are short cubics y^2 = x^3 + a*x^2 + b*x + c with rational
coefficients and base point O = [0:1:0].  Everything group-theoretic is
exact; floating point enters only through canonical heights, whose sole job
is to predict candidate relations that are then certified exactly.  Torsion
is certified with the uniform bound for rational points (order <= 12), so
no height value is ever trusted for a yes/no answer.

Canonical heights use the doubling limit (1/2) * lim 4^(-N) h(x(2^N P)).
Running that limit on exact coordinates is hopeless at tight tolerances
(the integers square every step), so the engine tracks three synchronized
views of the doubling orbit:

* high-precision floating logs of numerator/denominator (for the height),
* their exact residues modulo a power of the duplication resultant, which
  is enough to recover each step's gcd cancellation exactly, because the
  gcd of the two duplication forms always divides the resultant,
* nothing else: coordinates themselves are never materialized.

The values computed agree with the exact-rational iteration (which is kept,
and cross-checked in the tests, as ``canonical_height_exact``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, log
from itertools import product

import mpmath

from .divisors import Divisor
from .errors import (
    GNotClosed,
    InternalError,
    InvalidInput,
    IrrationalIntersection,
    PointNotOnCurve,
    PrecisionExhausted,
    RankUndecidable,
)
from .exactfield import FieldDescriptor, FieldElem
from .groebner import LaurentIdeal, test_unit, unit_preimage
from .intlattice import IntLattice, IntMatrix, enumerate_ball, kernel_Z
from .polyring import LaurentPoly, MultiPoly, dehomogenize

_SCALAR_CAP = 1 << 16  # multiplication bound; keeps coordinates sane
_TORSION_BOUND = 12  # uniform bound on rational torsion orders
_Q = FieldDescriptor.rationals()


@dataclass(frozen=True)
class ECPoint:
    """A rational point: affine coordinates or the base point at infinity."""

    x: Fraction = None
    y: Fraction = None
    infinity: bool = False

    @staticmethod
    def at_infinity():
        return ECPoint(infinity=True)

    @staticmethod
    def affine(x, y):
        return ECPoint(Fraction(x), Fraction(y))

    def sort_key(self):
        if self.infinity:
            return (0, 0, 0)
        return (1, self.x, self.y)

    def __repr__(self):
        if self.infinity:
            return "[0:1:0]"
        return f"({self.x}, {self.y})"


INFINITY = ECPoint.at_infinity()


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 = x^3 + a*x^2 + b*x + c with a nonsingular right-hand side."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "c", Fraction(self.c))
        if self.cubic_discriminant() == 0:
            raise InvalidInput("the cubic has a repeated root; curve is singular")

    def cubic_discriminant(self):
        a, b, c = self.a, self.b, self.c
        return (
            18 * a * b * c - 4 * a**3 * c + a * a * b * b - 4 * b**3 - 27 * c * c
        )

    def rhs(self, x):
        return x**3 + self.a * x * x + self.b * x + self.c

    def contains(self, point):
        if point.infinity:
            return True
        return point.y * point.y == self.rhs(point.x)

    def _require(self, point):
        if not self.contains(point):
            raise PointNotOnCurve(f"{point!r} does not satisfy the curve equation")

    # -- group law -----------------------------------------------------

    def add(self, p, q):
        self._require(p)
        self._require(q)
        if p.infinity:
            return q
        if q.infinity:
            return p
        if p.x == q.x:
            if p.y == -q.y:
                return INFINITY
            lam = (3 * p.x * p.x + 2 * self.a * p.x + self.b) / (2 * p.y)
        else:
            lam = (q.y - p.y) / (q.x - p.x)
        x3 = lam * lam - self.a - p.x - q.x
        y3 = lam * (p.x - x3) - p.y
        return ECPoint.affine(x3, y3)

    def neg(self, p):
        self._require(p)
        if p.infinity:
            return p
        return ECPoint.affine(p.x, -p.y)

    def mul(self, k, p):
        if abs(k) > _SCALAR_CAP:
            raise InvalidInput(f"scalar multiplication capped at {_SCALAR_CAP}")
        self._require(p)
        if k < 0:
            return self.mul(-k, self.neg(p))
        acc = INFINITY
        base = p
        while k:
            if k & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            k >>= 1
        return acc

    def homogeneous_poly(self, variables=("x", "y", "z")):
        """y^2 z - (x^3 + a x^2 z + b x z^2 + c z^3) as an exact polynomial."""
        a, b, c = self.a, self.b, self.c
        terms = {
            (0, 2, 1): Fraction(1),
            (3, 0, 0): Fraction(-1),
            (2, 0, 1): -a,
            (1, 0, 2): -b,
            (0, 0, 3): -c,
        }
        return MultiPoly.from_terms(
            [(e, FieldElem.from_rational(v, _Q)) for e, v in terms.items()],
            _Q,
            variables,
        )


def is_torsion(curve, point):
    """(True, order) when the point is torsion, else (False, None).

    Exact certificate: multiples up to the uniform rational torsion bound.
    """
    curve._require(point)
    acc = INFINITY
    for k in range(1, _TORSION_BOUND + 1):
        acc = curve.add(acc, point)
        if acc.infinity:
            return True, k
    return False, None


def naive_height(x):
    """log max(|p|, |q|) of a rational number in lowest terms."""
    x = Fraction(x)
    return log(max(abs(x.numerator), abs(x.denominator), 1))


@dataclass
class HeightValue:
    """A height estimate with a (heuristic) error radius."""

    estimate: float
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise InvalidInput("radius must be >= 0")


# -- duplication data ------------------------------------------------------


@lru_cache(maxsize=None)
def _duplication_data(a, b, c):
    """Integer duplication forms A, B with x(2P) = A(p,q)/B(p,q) and the
    (nonzero) resultant bounding every gcd(A(p,q), B(p,q))."""
    A = [b * b - 4 * a * c, -8 * c, -2 * b, Fraction(0), Fraction(1)]
    B = [4 * c, 4 * b, 4 * a, Fraction(4), Fraction(0)]
    denominators = [x.denominator for x in A + B]
    m = 1
    for d in denominators:
        m = m * d // gcd(m, d)
    A = [int(x * m) for x in A]
    B = [int(x * m) for x in B]
    res = _binary_form_resultant(A, B)
    if res == 0:
        raise InternalError("vanishing duplication resultant on a smooth curve")
    return tuple(A), tuple(B), abs(res)


def _binary_form_resultant(A, B):
    """Resultant of two degree-4 binary forms via an exact 8x8 determinant."""
    size = 8
    rows = []
    ra = list(reversed(A))  # highest degree first
    rb = list(reversed(B))
    for shift in range(4):
        rows.append([0] * shift + ra + [0] * (3 - shift))
    for shift in range(4):
        rows.append([0] * shift + rb + [0] * (3 - shift))
    # fraction-free Bareiss elimination
    m = [row[:] for row in rows]
    denom = 1
    sign = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, size) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // denom
            m[i][k] = 0
        denom = m[k][k]
    return sign * m[size - 1][size - 1]


def _eval_form(coeffs, p, q):
    """Evaluate sum coeffs[k] * p^k * q^(4-k)."""
    pk = [1]
    qk = [1]
    for _ in range(4):
        pk.append(pk[-1] * p)
        qk.append(qk[-1] * q)
    return sum(c * pk[k] * qk[4 - k] for k, c in enumerate(coeffs) if c)


def canonical_height(curve, point, tolerance, max_doubling=8):
    """Canonical height (1/2) lim 4^(-N) h(x(2^N P)) with a tail estimate.

    The doubling iteration stops when the geometric-tail estimate (last
    increment times 1/3, the ratio-1/4 series) sits below the tolerance for
    two consecutive steps; the radius is that estimate.  Raises
    PrecisionExhausted when the doubling cap is hit first.
    """
    if tolerance <= 0:
        raise InvalidInput("tolerance must be positive")
    curve._require(point)
    if point.infinity:
        return HeightValue(0.0, 0.0)
    torsion, _ = is_torsion(curve, point)
    if torsion:
        return HeightValue(0.0, 0.0)
    A, B, res = _duplication_data(curve.a, curve.b, curve.c)
    modulus = res ** (max_doubling + 2)
    p_exact, q_exact = point.x.numerator, point.x.denominator
    pm, qm = p_exact % modulus, q_exact % modulus
    with mpmath.workprec(700):
        pf, qf = mpmath.mpf(p_exact), mpmath.mpf(q_exact)
        s_prev = 0.5 * naive_height(point.x)
        prev_est = None
        for n in range(1, max_doubling + 1):
            af = _eval_form(A, pf, qf)
            bf = _eval_form(B, pf, qf)
            am = _eval_form(A, pm, qm) % modulus
            bm = _eval_form(B, pm, qm) % modulus
            g = gcd(gcd(am, res), gcd(bm, res))
            if bm == 0 and bf == 0:
                raise InternalError("hit a torsion point on a nontorsion orbit")
            # guard against catastrophic float cancellation
            scale = max(abs(pf), abs(qf)) ** 4
            for formed in (af, bf):
                if formed != 0 and abs(formed) < scale * mpmath.mpf(2) ** -560:
                    raise PrecisionExhausted(
                        "floating cancellation exceeded the working precision"
                    )
            modulus //= res
            pf, qf = af / g, bf / g
            pm, qm = (am // g) % modulus, (bm // g) % modulus
            h = mpmath.log(max(abs(pf), abs(qf)))
            s = float(h) / (2 * 4**n)
            delta = abs(s - s_prev)
            est = delta / 3.0
            if est <= tolerance and prev_est is not None and prev_est <= 4 * tolerance:
                return HeightValue(s, est)
            s_prev, prev_est = s, est
    raise PrecisionExhausted(
        f"no convergence to {tolerance} within {max_doubling} doublings"
    )


def canonical_height_exact(curve, point, tolerance, max_doubling=8):
    """Reference implementation of the same limit on exact rationals.

    Useful only at loose tolerances: coordinate sizes grow like 4^N.
    """
    if tolerance <= 0:
        raise InvalidInput("tolerance must be positive")
    curve._require(point)
    if point.infinity:
        return HeightValue(0.0, 0.0)
    torsion, _ = is_torsion(curve, point)
    if torsion:
        return HeightValue(0.0, 0.0)
    current = point
    s_prev = 0.5 * naive_height(current.x)
    prev_est = None
    for n in range(1, max_doubling + 1):
        current = curve.add(current, current)
        s = 0.5 * naive_height(current.x) / 4**n
        delta = abs(s - s_prev)
        est = delta / 3.0
        if est <= tolerance and prev_est is not None and prev_est <= 4 * tolerance:
            return HeightValue(s, est)
        s_prev, prev_est = s, est
    raise PrecisionExhausted(
        f"no convergence to {tolerance} within {max_doubling} doublings"
    )


def height_pairing_matrix(curve, points, tolerance, max_doubling=8):
    """Gram matrix of the height pairing <P,Q> = h(P+Q) - h(P) - h(Q)."""
    heights = [
        canonical_height(curve, p, tolerance, max_doubling) for p in points
    ]
    n = len(points)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            hij = canonical_height(
                curve, curve.add(points[i], points[j]), tolerance, max_doubling
            )
            est = hij.estimate - heights[i].estimate - heights[j].estimate
            rad = hij.radius + heights[i].radius + heights[j].radius
            out[i][j] = out[j][i] = HeightValue(est, rad)
    return out


# -- relation lattices -----------------------------------------------------


def torsion_relations(curve, torsion_points, orders):
    """The lattice of all integer relations among the given torsion points,
    by exhaustive search over the coefficient box 0 <= n_i <= order_i."""
    if len(torsion_points) != len(orders):
        raise InvalidInput("one order per point, please")
    r = len(torsion_points)
    hits = []
    for combo in product(*[range(m + 1) for m in orders]):
        acc = INFINITY
        for k, point in zip(combo, torsion_points):
            if k:
                acc = curve.add(acc, curve.mul(k, point))
        if acc.infinity:
            hits.append(combo)
    return IntLattice(r, [list(h) for h in hits])


def _eigen_decomposition(matrix):
    import numpy

    arr = numpy.array(matrix, dtype=float)
    values, vectors = numpy.linalg.eigh(arr)
    return values, vectors


def nontorsion_relations(curve, points, tolerance=1e-8, max_doubling=8, radius_cap=16):
    """The lattice of integer vectors m with sum m_i Q_i torsion.

    Heights only nominate candidates and certify completeness through the
    numerical rank of the Gram matrix; every relation in the returned
    lattice is certified exactly through the group law.
    """
    n = len(points)
    if n == 0:
        return IntLattice.zero(0)
    for p in points:
        torsion, _ = is_torsion(curve, p)
        if torsion:
            raise InvalidInput("nontorsion_relations received a torsion point")
    gram = height_pairing_matrix(curve, points, tolerance, max_doubling)
    total_radius = sum(entry.radius for row in gram for entry in row)
    threshold = max(total_radius, 1e-12) * 4
    values, vectors = _eigen_decomposition(
        [[entry.estimate for entry in row] for row in gram]
    )
    small = [i for i, v in enumerate(values) if abs(v) <= threshold]
    big = [i for i, v in enumerate(values) if abs(v) > threshold]
    if any(threshold < abs(values[i]) <= 10 * threshold for i in range(n)):
        raise RankUndecidable(
            "no spectral gap above the height error radius; tighten tolerance"
        )
    numerical_rank = len(big)
    expected_kernel_rank = n - numerical_rank

    candidates = set()
    if n <= 3:
        for vec in enumerate_ball(IntLattice.standard(n), radius_cap):
            if any(vec):
                candidates.add(vec)
    for i in small:
        direction = [float(vectors[j][i]) for j in range(n)]
        for k in range(1, 4 * radius_cap + 1):
            rounded = tuple(round(k * x) for x in direction)
            if any(rounded):
                candidates.add(rounded)

    # prune with the quadratic form first: a true relation's form value is
    # bounded by the accumulated radii, so dropping larger values is safe
    def plausible(vec):
        est = 0.0
        bound = 1e-12
        for i in range(n):
            for j in range(n):
                est += vec[i] * vec[j] * gram[i][j].estimate
                bound += abs(vec[i] * vec[j]) * gram[i][j].radius
        return abs(est) <= 2 * bound

    certified = []
    for vec in sorted(candidates):
        if not plausible(vec):
            continue
        acc = INFINITY
        for m, q in zip(vec, points):
            if m:
                acc = curve.add(acc, curve.mul(m, q))
        torsion, _ = is_torsion(curve, acc)
        if torsion:
            certified.append(vec)
    lattice = IntLattice(n, certified)
    if lattice.rank != expected_kernel_rank:
        raise RankUndecidable(
            "certified relations do not span the numerical kernel; "
            "raise the search radius or tighten tolerance"
        )
    return lattice


def _torsion_subgroup(curve, torsion_points):
    """All points of the subgroup generated by the given torsion points."""
    elements = {INFINITY}
    frontier = [INFINITY]
    steps = 0
    while frontier:
        current = frontier.pop()
        for t in torsion_points:
            nxt = curve.add(current, t)
            if nxt not in elements:
                elements.add(nxt)
                frontier.append(nxt)
            steps += 1
            if steps > 4096:
                raise GNotClosed("torsion subgroup enumeration did not close")
    return elements


@dataclass
class BoundaryRelations:
    """Relation data for an ordered boundary, torsion points first."""

    points: list  # ECPoint, torsion first
    torsion_orders: list  # order for torsion points, None for the rest
    torsion_count: int
    lattice: IntLattice  # ker(Div^0_S -> Cl^0) in the `points` coordinates


def boundary_relation_lattice(
    curve, boundary, tolerance=1e-8, max_doubling=8, radius_cap=16
):
    """Minimal generators of the relations among boundary points that are
    trivial in the degree-zero class group.

    Coordinates are torsion-first: the returned lattice lives in the order
    (T_1..T_r, Q_1..Q_n) induced from the input order.  Combines exhaustive
    torsion relations with a growing-radius search over the height-predicted
    relation lattice of the nontorsion points, every vector completed by an
    exact torsion part and certified by the group law.
    """
    classified = []
    for p in boundary:
        torsion, order = is_torsion(curve, p)
        classified.append((p, order if torsion else None))
    torsion_pts = [(p, o) for p, o in classified if o is not None]
    free_pts = [p for p, o in classified if o is None]
    points = [p for p, _ in torsion_pts] + free_pts
    orders = [o for _, o in torsion_pts] + [None] * len(free_pts)
    r, n = len(torsion_pts), len(free_pts)

    vectors = []
    if r:
        t_lattice = torsion_relations(
            curve, [p for p, _ in torsion_pts], [o for _, o in torsion_pts]
        )
        for col in t_lattice.basis.columns():
            vectors.append(tuple(col) + (0,) * n)

    if n:
        group = sorted(
            _torsion_subgroup(curve, [p for p, _ in torsion_pts]),
            key=ECPoint.sort_key,
        )
        dq = nontorsion_relations(
            curve, free_pts, tolerance, max_doubling, radius_cap
        )
        ell = dq.rank
        if ell:
            lam = 0
            found = IntLattice.zero(n)
            while found.rank != ell:
                lam += 1
                if lam > 64 * radius_cap:
                    raise InternalError("relation search radius runaway")
                in_ball = [
                    v
                    for v in enumerate_ball(dq, lam)
                    if any(v) and _point_sum(curve, v, free_pts) in group
                ]
                found = IntLattice(n, in_ball)
            # Minkowski-style bound: a basis exists within (3/2)^(l-1) lambda
            bound = Fraction(3, 2) ** (ell - 1) * lam
            final = [
                v
                for v in enumerate_ball(dq, bound)
                if any(v) and _point_sum(curve, v, free_pts) in group
            ]
            for m_vec in final:
                target = curve.neg(_point_sum(curve, m_vec, free_pts))
                completion = _complete_with_torsion(
                    curve, target, [p for p, _ in torsion_pts], [o for _, o in torsion_pts]
                )
                vectors.append(tuple(completion) + tuple(m_vec))

    # intersect the span with the degree-zero hyperplane
    total = r + n
    if not vectors:
        return BoundaryRelations(points, orders, r, IntLattice.zero(total))
    span = IntMatrix.from_columns(vectors, nrows=total)
    ones = IntMatrix([[1] * total])
    sums = ones * span  # 1 x k matrix of coordinate sums
    coeff_kernel = kernel_Z(sums)
    degree_zero = []
    for coeffs in coeff_kernel.basis.columns():
        vec = [0] * total
        for coeff, col in zip(coeffs, span.columns()):
            if coeff:
                vec = [v + coeff * x for v, x in zip(vec, col)]
        degree_zero.append(vec)
    lattice = IntLattice(total, degree_zero)

    # every generator must be an exact relation of degree zero
    for col in lattice.basis.columns():
        if sum(col) != 0:
            raise InternalError("a relation escaped the degree-zero hyperplane")
        acc = INFINITY
        for m, p in zip(col, points):
            if m:
                acc = curve.add(acc, curve.mul(m, p))
        if not acc.infinity:
            raise InternalError("an uncertified relation reached the output")
    return BoundaryRelations(points, orders, r, lattice)


def _point_sum(curve, coefficients, points):
    acc = INFINITY
    for m, p in zip(coefficients, points):
        if m:
            acc = curve.add(acc, curve.mul(m, p))
    return acc


def _complete_with_torsion(curve, target, torsion_points, orders):
    """Exhaustive (n_1..n_r) with sum n_j T_j = target."""
    for combo in product(*[range(m + 1) for m in orders]):
        acc = INFINITY
        for k, point in zip(combo, torsion_points):
            if k:
                acc = curve.add(acc, curve.mul(k, point))
        if acc == target:
            return combo
    raise GNotClosed("no torsion completion for a predicted relation")


# -- divisor interpolation --------------------------------------------------


@dataclass
class MillerFunction:
    """A rational function as formal products of projective lines."""

    numerator: list  # MultiPoly linear forms
    denominator: list

    def as_forms(self, curve, variables=("x", "y", "z")):
        """(F, G) homogeneous of equal degree, padding with powers of z."""
        desc = _Q
        F = MultiPoly.one(desc, variables)
        for form in self.numerator:
            F = F * form
        G = MultiPoly.one(desc, variables)
        for form in self.denominator:
            G = G * form
        z = MultiPoly.variable(variables[2], desc, variables)
        diff = len(self.numerator) - len(self.denominator)
        if diff > 0:
            G = G * z**diff
        elif diff < 0:
            F = F * z ** (-diff)
        return F, G


def _line_form(coeffs, variables=("x", "y", "z")):
    terms = {}
    for i, c in enumerate(coeffs):
        if c:
            e = [0, 0, 0]
            e[i] = 1
            terms[tuple(e)] = FieldElem.from_rational(c, _Q)
    if not terms:
        raise InternalError("degenerate line")
    return MultiPoly(_Q, variables, terms)


def line_through(curve, p, q):
    """The projective line through two (not necessarily distinct) points;
    for p == q this is the tangent line."""
    if p.infinity and q.infinity:
        raise InvalidInput("no unique line through O twice")
    if p.infinity or q.infinity:
        affine = q if p.infinity else p
        return _line_form([1, 0, -affine.x])  # vertical through the point
    if p == q:
        if p.y == 0:
            return _line_form([1, 0, -p.x])
        lam = (3 * p.x * p.x + 2 * curve.a * p.x + curve.b) / (2 * p.y)
        return _line_form([-lam, 1, lam * p.x - p.y])
    if p.x == q.x:
        return _line_form([1, 0, -p.x])
    lam = (q.y - p.y) / (q.x - p.x)
    return _line_form([-lam, 1, lam * p.x - p.y])


def line_divisor(curve, form):
    """div(form / z) on the curve: the exact intersection divisor of the
    line with the cubic, with O receiving the balancing multiplicity."""
    coeff = {
        name: form.coefficient(tuple(1 if v == name else 0 for v in form.variables))
        for name in form.variables
    }
    names = form.variables
    alpha = coeff[names[0]].as_rational() if coeff[names[0]].is_rational() else None
    beta = coeff[names[1]].as_rational() if coeff[names[1]].is_rational() else None
    gamma = coeff[names[2]].as_rational() if coeff[names[2]].is_rational() else None
    if alpha is None or beta is None or gamma is None:
        raise InvalidInput("line coefficients must be rational")
    if form.total_degree() != 1 or not form.is_homogeneous():
        raise InvalidInput("line_divisor needs a homogeneous linear form")
    if beta == 0 and alpha == 0:
        return Divisor({})  # the line z = 0 meets the curve only at O
    if beta == 0:
        x0 = -gamma / alpha
        kappa = curve.rhs(x0)
        if kappa == 0:
            return Divisor({ECPoint.affine(x0, 0): 2, INFINITY: -2})
        root = _fraction_sqrt(kappa)
        if root is None:
            raise IrrationalIntersection(
                "vertical line meets the curve in irrational points"
            )
        return Divisor(
            {
                ECPoint.affine(x0, root): 1,
                ECPoint.affine(x0, -root): 1,
                INFINITY: -2,
            }
        )
    # substitute y = -(alpha x + gamma z)/beta into the curve
    # (alpha x + gamma z)^2 z - beta^2 (x^3 + a x^2 z + b x z^2 + c z^3) = 0
    b2 = beta * beta
    cubic = [
        gamma * gamma - b2 * curve.c,  # z^3
        2 * alpha * gamma - b2 * curve.b,  # x z^2
        alpha * alpha - b2 * curve.a,  # x^2 z
        -b2,  # x^3
    ]
    roots = _rational_cubic_roots(cubic)
    if roots is None:
        raise IrrationalIntersection("line meets the curve in irrational points")
    support = {INFINITY: -3}
    for x0, mult in roots:
        y0 = -(alpha * x0 + gamma) / beta
        pt = ECPoint.affine(x0, y0)
        support[pt] = support.get(pt, 0) + mult
    return Divisor(support)


def _fraction_sqrt(q):
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _rational_cubic_roots(coeffs):
    """All roots (with multiplicity) of a cubic with rational coefficients,
    or None unless it splits completely over Q."""
    from .ratcurves import _univariate_rational_roots

    roots, split = _univariate_rational_roots([Fraction(c) for c in coeffs])
    if not split:
        return None
    return roots


def miller_interpolate(curve, divisor):
    """Chord-and-tangent reduction of a degree-zero divisor to a function.

    Returns a MillerFunction whose line divisors sum exactly to the input,
    or None when the divisor is not principal (its class is a nontrivial
    point).  The base point O may appear in the divisor; its multiplicity
    is carried by the slack the chords leave at infinity.
    """
    if divisor.degree() != 0:
        raise InvalidInput("only degree-zero divisors can be principal")
    for p in divisor.points():
        curve._require(p)
    work = dict(divisor.support)
    numerator, denominator = [], []

    def weight():
        return sum(abs(m) for p, m in work.items() if not p.infinity)

    def apply(delta, form, to_numerator):
        for p, m in delta.support.items():
            work[p] = work.get(p, 0) + (-m if to_numerator else m)
            if work[p] == 0:
                del work[p]
        (numerator if to_numerator else denominator).append(form)

    guard = 16 * (weight() + 4)
    while weight() != 0:
        guard -= 1
        if guard < 0:
            raise InternalError("interpolation failed to terminate")
        finite = [(p, m) for p, m in work.items() if not p.infinity and m != 0]
        finite.sort(key=lambda t: t[0].sort_key())
        pos = [p for p, m in finite if m > 0]
        neg = [p for p, m in finite if m < 0]
        if len(pos) >= 2:
            p, q = _pick_pair(curve, pos)
            form = line_through(curve, p, q)
            third = curve.neg(curve.add(p, q))
            delta = Divisor({p: 1}) + Divisor({q: 1})
            if third.infinity:
                delta = delta + Divisor({INFINITY: -2})
            else:
                delta = delta + Divisor({third: 1, INFINITY: -3})
            apply(delta, form, True)
            continue
        if len(neg) >= 2:
            p, q = _pick_pair(curve, neg)
            form = line_through(curve, p, q)
            third = curve.neg(curve.add(p, q))
            delta = Divisor({p: 1}) + Divisor({q: 1})
            if third.infinity:
                delta = delta + Divisor({INFINITY: -2})
            else:
                delta = delta + Divisor({third: 1, INFINITY: -3})
            apply(delta, form, False)
            continue
        m = work.get(pos[0], 0) if pos else 0
        n = -work.get(neg[0], 0) if neg else 0
        if m >= 2:
            p = pos[0]
            _, order = is_torsion(curve, p)
            form = line_through(curve, p, p)
            apply(_tangent_divisor(curve, p, order), form, True)
            continue
        if n >= 2:
            q = neg[0]
            _, order = is_torsion(curve, q)
            form = line_through(curve, q, q)
            apply(_tangent_divisor(curve, q, order), form, False)
            continue
        if m == 1 and n == 1:
            q = neg[0]
            form = line_through(curve, q, curve.neg(q))
            delta = (
                Divisor.of_point(q)
                + Divisor.of_point(curve.neg(q))
                + Divisor({INFINITY: -2})
            )
            apply(delta, form, False)
            continue
        # a single leftover point is never linearly equivalent to O
        return None
    if work:
        raise InternalError("interpolation left a nonzero multiple of O")
    return MillerFunction(numerator, denominator)


def _pick_pair(curve, points):
    """Two distinct points, preferring a pair that is not opposite."""
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if curve.neg(points[i]) != points[j]:
                return points[i], points[j]
    return points[0], points[1]


def _tangent_divisor(curve, p, order):
    """div(tangent/z) at a point of multiplicity >= 2 in the reduction."""
    if order == 2:
        return Divisor({p: 2, INFINITY: -2})
    if order == 3:
        return Divisor({p: 3, INFINITY: -3})
    opposite = curve.neg(curve.mul(2, p))
    return Divisor({p: 2}) + Divisor({opposite: 1, INFINITY: -3})


# -- boundary and the full pipeline -----------------------------------------


def compute_boundary(curve):
    """The boundary of the very affine curve: intersections with the three
    coordinate lines; O first, then the y = 0 points, then the x = 0 ones."""
    points = [INFINITY]
    y_line = line_divisor(curve, _line_form([0, 1, 0]))
    for p in sorted(y_line.support, key=ECPoint.sort_key):
        if not p.infinity:
            points.append(p)
    x_line = line_divisor(curve, _line_form([1, 0, 0]))
    for p in sorted(x_line.support, key=ECPoint.sort_key, reverse=True):
        if not p.infinity:
            points.append(p)
    return points


@dataclass
class EllipticUnits:
    boundary: list  # ECPoint, torsion first
    relations: BoundaryRelations
    units: list  # LaurentPoly in (x, y)
    divisor_vectors: list  # exact divisor vector of each unit
    ideal: LaurentIdeal


def elliptic_unit_basis(
    curve, boundary=None, tolerance=1e-8, max_doubling=8, radius_cap=16
):
    """A unit-group basis for the very affine elliptic curve.

    Pipelines the relation lattice, divisor interpolation, and Laurent
    preimages; every output is certified to be a unit and its exact divisor
    vector is recomputed from line divisors, so the lattice equality
    between outputs and relations is checked, not assumed.
    """
    if boundary is None:
        boundary = compute_boundary(curve)
    relations = boundary_relation_lattice(
        curve, boundary, tolerance, max_doubling, radius_cap
    )
    affine = dehomogenize(curve.homogeneous_poly(), "z")
    ideal = LaurentIdeal([LaurentPoly(affine)])
    units = []
    vectors = []
    index = {p: i for i, p in enumerate(relations.points)}
    for column in relations.lattice.basis.columns():
        divisor = Divisor(
            {p: m for p, m in zip(relations.points, column)}
        )
        interpolated = miller_interpolate(curve, divisor)
        if interpolated is None:
            raise InternalError("a lattice relation failed to interpolate")
        F, G = interpolated.as_forms(curve)
        h = unit_preimage(F, G, ideal, homogenizing_variable="z")
        if not test_unit(h, ideal):
            raise InternalError("an interpolated unit failed the unit test")
        # independent divisor recomputation from the line factors
        check = Divisor({})
        for form in interpolated.numerator:
            check = check + line_divisor(curve, form)
        for form in interpolated.denominator:
            check = check - line_divisor(curve, form)
        vec = [0] * len(relations.points)
        for p, m in check.support.items():
            if p not in index:
                raise InternalError("an output divisor left the boundary")
            vec[index[p]] = m
        if tuple(vec) != tuple(column):
            raise InternalError("output divisor disagrees with its relation")
        units.append(h)
        vectors.append(tuple(vec))
    out_lattice = IntLattice(len(relations.points), vectors)
    if vectors and out_lattice != relations.lattice:
        raise InternalError("output lattice differs from the relation lattice")
    return EllipticUnits(relations.points, relations, units, vectors, ideal)
