"""Unit bases for the genus-0 pipelines: plane conics cut by the coordinate
triangle, and rational normal curves given parametrically.

Both pipelines exploit that the degree-zero class group of a rational curve
vanishes, so units correspond exactly to degree-zero boundary divisors.  On
a conic the units are ratios of chords through boundary points; on a
parametric curve they are pushed forward from the line through subalgebra
membership.  Every output is verified to be a unit, and the parametric
outputs carry an independent pullback identity check that needs no Groebner
step.
"""

from __future__ import annotations

from dataclasses import dataclass

from .divisors import Divisor, ProjPoint
from .errors import (
    AuxiliaryPointNotFound,
    BoundaryNotInField,
    DegenerateConic,
    InternalError,
    InvalidInput,
    InvalidParametrization,
)
from .exactfield import FieldElem, RATIONALS, poly_trim
from .groebner import (
    LaurentIdeal,
    _forms_independent,
    subalgebra_membership,
    unit_preimage,
)
from .polyring import LaurentPoly, MonomialOrder, MultiPoly, dehomogenize
from fractions import Fraction


# -- plane conics ---------------------------------------------------------------


@dataclass
class ConicProblem:
    """A smooth plane conic, given by a homogeneous quadric in three
    variables; the very affine curve lives in the chart of the last one."""

    quadric: MultiPoly

    def __post_init__(self):
        q = self.quadric
        if len(q.variables) != 3:
            raise InvalidInput("a conic needs exactly three variables")
        if q.is_zero() or not q.is_homogeneous() or q.total_degree() != 2:
            raise InvalidInput("the quadric must be homogeneous of degree 2")
        if _conic_det(q).is_zero():
            raise DegenerateConic("the symmetric matrix of the quadric is singular")

    @property
    def descriptor(self):
        return self.quadric.descriptor

    @property
    def variables(self):
        return self.quadric.variables


def _conic_det(q):
    """Determinant of the symmetric matrix (column scaling irrelevant)."""
    d = q.descriptor

    def c(i, j):
        e = [0, 0, 0]
        e[i] += 1
        e[j] += 1
        coeff = q.coefficient(tuple(e))
        if i != j:
            return coeff
        return coeff + coeff  # doubled diagonal

    m = [[c(i, j) for j in range(3)] for i in range(3)]
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _binary_quadratic_roots(A, B, C, descriptor):
    """Roots of A*u^2 + B*u*w + C*w^2 in P^1 as ((u, w), multiplicity).

    Raises BoundaryNotInField when the discriminant is not a square in the
    field.  Roots are ordered with the (-B - sqrt)/2A branch first.
    """
    zero, one = FieldElem.zero(descriptor), FieldElem.one(descriptor)
    two = FieldElem.from_rational(2, descriptor)
    if A.is_zero() and B.is_zero() and C.is_zero():
        raise DegenerateConic("a coordinate line lies on the conic")
    if A.is_zero():
        if B.is_zero():
            return [((one, zero), 2)]
        # w * (B*u + C*w): the line at infinity plus one affine root
        return [((one, zero), 1), ((-C * B.inv(), one), 1)]
    disc = B * B - two * two * A * C
    root = disc.sqrt()
    if root is None:
        raise BoundaryNotInField(
            "restricted quadratic has a non-square discriminant"
        )
    inv2a = (two * A).inv()
    if root.is_zero():
        return [(((-B) * inv2a, one), 2)]
    return [
        (((-B - root) * inv2a, one), 1),
        (((-B + root) * inv2a, one), 1),
    ]


def conic_boundary(problem):
    """Boundary points of the conic on the three coordinate lines.

    Returns (point, multiplicity) pairs in line order x, y, z, deduplicated
    across lines; multiplicity 2 marks a tangency.
    """
    q = problem.quadric
    desc = problem.descriptor
    vs = q.variables
    found = []
    index = {}
    for line in range(3):
        others = [k for k in range(3) if k != line]
        restricted = q.substitute({vs[line]: FieldElem.zero(desc)})
        u, w = restricted.variables  # the two remaining variables, in order
        A = restricted.coefficient((2, 0))
        B = restricted.coefficient((1, 1))
        C = restricted.coefficient((0, 2))
        for (cu, cw), mult in _binary_quadratic_roots(A, B, C, desc):
            coords = [None, None, None]
            coords[line] = FieldElem.zero(desc)
            coords[others[0]] = cu
            coords[others[1]] = cw
            point = ProjPoint(coords)
            if point in index:
                k = index[point]
                found[k] = (point, max(found[k][1], mult))
            else:
                index[point] = len(found)
                found.append((point, mult))
    return found


def _line_through(p1, p2, descriptor, variables):
    """The linear form through two distinct projective points."""
    a, b = p1.coordinates, p2.coordinates
    coeffs = (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
    return _linear_form(coeffs, descriptor, variables)


def _tangent_line(q, p):
    """The tangent line to the conic at a point of it (gradient form)."""
    coeffs = []
    for v in q.variables:
        partial = q.derivative(v)
        coeffs.append(
            partial.substitute(
                {name: c for name, c in zip(q.variables, p.coordinates)}
            ).constant_coefficient()
        )
    return _linear_form(coeffs, q.descriptor, q.variables)


def _linear_form(coeffs, descriptor, variables):
    terms = {}
    for i, c in enumerate(coeffs):
        e = [0, 0, 0]
        e[i] = 1
        terms[tuple(e)] = c
    form = MultiPoly(descriptor, variables, terms)
    if form.is_zero():
        raise InternalError("degenerate line")
    return form.monic(MonomialOrder.grevlex())


@dataclass
class ConicUnits:
    boundary: list  # (ProjPoint, multiplicity)
    edges: list  # (a, b, aux) index triples
    units: list  # LaurentPoly in the first two variables
    divisors: list  # Divisor over the boundary points
    ideal: LaurentIdeal


def conic_unit_basis(problem, tree=None):
    """A unit-group basis for the very affine conic.

    ``tree`` lists spanning-tree edges as (a, b) or (a, b, aux) index triples
    over the boundary points: each edge contributes the divisor P_a - P_b,
    realized as the ratio of the chords joining P_a and P_b to the shared
    auxiliary point (the tangent at the point when aux coincides with it).
    The default is the consecutive-differences path tree.
    """
    boundary = conic_boundary(problem)
    points = [p for p, _ in boundary]
    r = len(points)
    if r < 2:
        raise AuxiliaryPointNotFound("fewer than two boundary points")
    if tree is None:
        tree = [(i, i + 1) for i in range(r - 1)]
    edges = []
    for edge in tree:
        if len(edge) == 2:
            a, b = edge
            aux = next((k for k in range(r) if k not in (a, b)), a)
        else:
            a, b, aux = edge
        if not (0 <= a < r and 0 <= b < r and 0 <= aux < r):
            raise AuxiliaryPointNotFound(f"edge {edge} indexes outside the boundary")
        if a == b:
            raise InvalidInput("an edge needs two distinct boundary points")
        edges.append((a, b, aux))

    q = problem.quadric
    zvar = q.variables[2]
    affine = dehomogenize(q, zvar)
    ideal = LaurentIdeal([LaurentPoly(affine)])

    def chord(i, j):
        if i == j:
            return _tangent_line(q, points[i])
        return _line_through(points[i], points[j], problem.descriptor, q.variables)

    units, divisors = [], []
    for a, b, aux in edges:
        numerator = chord(a, aux)
        denominator = chord(b, aux)
        h = unit_preimage(numerator, denominator, ideal, homogenizing_variable=zvar)
        units.append(h)
        divisors.append(Divisor({points[a]: 1}) - Divisor({points[b]: 1}))
    return ConicUnits(boundary, edges, units, divisors, ideal)


# -- rational normal curves -----------------------------------------------------


@dataclass
class RNCProblem:
    """A rational normal curve of degree n in P^n, parametrized by n+1
    independent binary forms of degree n."""

    params: list

    def __post_init__(self):
        params = list(self.params)
        if len(params) < 2:
            raise InvalidParametrization("need at least two parametrizing forms")
        n = len(params) - 1
        first = params[0]
        if len(first.variables) != 2:
            raise InvalidParametrization("parametrizing forms must be binary forms")
        for p in params:
            if p.descriptor != first.descriptor or p.variables != first.variables:
                raise InvalidParametrization("forms live in different rings")
            if p.is_zero() or not p.is_homogeneous() or p.total_degree() != n:
                raise InvalidParametrization(
                    f"forms must be nonzero homogeneous of degree {n}"
                )
        if not _forms_independent(params, n, first.descriptor):
            raise InvalidParametrization("parametrizing forms are linearly dependent")
        self.params = params

    @property
    def descriptor(self):
        return self.params[0].descriptor

    @property
    def degree(self):
        return len(self.params) - 1

    @property
    def parameters(self):
        return self.params[0].variables


def _univariate_rational_roots(coeffs):
    """Roots with multiplicity of a univariate rational polynomial,
    by rational-root candidates and linear-factor peeling.

    Returns (roots, fully_split) where roots is a list of (Fraction, mult).
    """
    coeffs = poly_trim(coeffs)
    roots = []
    # roots at zero
    v = 0
    while v < len(coeffs) and coeffs[v] == 0:
        v += 1
    if v:
        roots.append((Fraction(0), v))
        coeffs = coeffs[v:]
    while len(coeffs) > 1:
        den_lcm = 1
        for c in coeffs:
            den_lcm = den_lcm * c.denominator // _gcd(den_lcm, c.denominator)
        ints = [int(c * den_lcm) for c in coeffs]
        a0, am = abs(ints[0]), abs(ints[-1])
        found = None
        for p in _divisors_of(a0):
            for qd in _divisors_of(am):
                for cand in (Fraction(p, qd), Fraction(-p, qd)):
                    if _poly_eval_fraction(coeffs, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return roots, False
        mult = 0
        while _poly_eval_fraction(coeffs, found) == 0 and len(coeffs) > 1:
            coeffs = _synthetic_division(coeffs, found)
            mult += 1
        roots.append((found, mult))
    return roots, True


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors_of(n):
    if n == 0:
        return [1]
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _poly_eval_fraction(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _synthetic_division(coeffs, root):
    """coeffs / (s - root), exact when root is a root."""
    out = [Fraction(0)] * (len(coeffs) - 1)
    carry = Fraction(0)
    for k in range(len(coeffs) - 1, 0, -1):
        carry = coeffs[k] + carry * root
        out[k - 1] = carry
    return poly_trim(out)


def _binary_form_roots(form):
    """Roots of a binary form in P^1 over its field, with multiplicity.

    Only rational root extraction is performed; coefficients that do not
    embed from Q, or irreducible factors of degree >= 2, raise
    BoundaryNotInField.
    """
    desc = form.descriptor
    n = form.total_degree()
    coeffs = []
    for k in range(n + 1):
        c = form.coefficient((k, n - k))
        if not c.is_rational():
            raise BoundaryNotInField(
                "root extraction needs rational coefficients"
            )
        coeffs.append(c.as_rational())
    coeffs = poly_trim(coeffs)
    m = len(coeffs) - 1
    out = []
    if n - m > 0:
        one, zero = FieldElem.one(desc), FieldElem.zero(desc)
        out.append((ProjPoint([one, zero]), n - m))
    roots, split = _univariate_rational_roots(coeffs)
    if not split:
        raise BoundaryNotInField(
            "a parametrizing form has an irrational or irreducible factor"
        )
    for r, mult in roots:
        out.append(
            (
                ProjPoint(
                    [
                        FieldElem.from_rational(r, desc),
                        FieldElem.one(desc),
                    ]
                ),
                mult,
            )
        )
    return out


def rnc_boundary_preimages(problem):
    """All preimages in P^1 of the curve's boundary: the roots of every
    parametrizing form, merged across forms, in deterministic order."""
    seen = {}
    ordered = []
    for p in problem.params:
        for point, _ in _binary_form_roots(p):
            if point not in seen:
                seen[point] = True
                ordered.append(point)
    return ordered


def rnc_boundary_divisors(problem):
    """div(f_i) on P^1 for each parametrizing form, multiplicities kept."""
    out = []
    for p in problem.params:
        out.append(Divisor({pt: m for pt, m in _binary_form_roots(p)}))
    return out


@dataclass
class RNCUnits:
    preimages: list  # ProjPoint in P^1
    basis_divisors: list  # Divisor over the preimages
    units: list  # LaurentPoly in the chart coordinates
    out_variables: tuple


def _divisor_to_forms(divisor, problem):
    """(f, g) = products of linear forms over the positive/negative part."""
    desc = problem.descriptor
    S, T = problem.parameters
    vs = problem.parameters
    f = MultiPoly.one(desc, vs)
    g = MultiPoly.one(desc, vs)
    for point, mult in divisor.support.items():
        a, b = point.coordinates
        factor = MultiPoly(
            desc,
            vs,
            {(1, 0): b, (0, 1): -a},
        )
        if factor.is_zero():
            raise InternalError("zero linear factor")
        factor = factor.monic(MonomialOrder.grevlex())
        if mult > 0:
            f = f * factor**mult
        else:
            g = g * factor ** (-mult)
    return f, g


def rnc_unit_basis(problem, basis=None, out_variables=None):
    """A unit-group basis for the very affine rational normal curve.

    ``basis`` may list degree-zero divisors over the boundary preimages
    (or integer vectors in the preimage order); the default is the
    spanning-tree star basis on the distinct preimages.  Each divisor is
    realized by pushing the matching ratio of binary linear forms through
    subalgebra membership.
    """
    preimages = rnc_boundary_preimages(problem)
    if basis is None:
        from .intlattice import spanning_tree_basis

        vectors = spanning_tree_basis(list(range(len(preimages))))
        basis = [
            Divisor({p: v for p, v in zip(preimages, vec)}) for vec in vectors
        ]
    else:
        normalized = []
        for item in basis:
            if isinstance(item, Divisor):
                normalized.append(item)
            else:
                normalized.append(
                    Divisor({p: v for p, v in zip(preimages, item)})
                )
        basis = normalized
    n = problem.degree
    if out_variables is None:
        out_variables = tuple(f"x{i}" for i in range(1, n + 1))
    units = []
    for divisor in basis:
        if divisor.degree() != 0:
            raise InvalidInput("basis divisors must have degree zero")
        f, g = _divisor_to_forms(divisor, problem)
        gamma = subalgebra_membership(f, g, problem.params, out_variables)
        if gamma is None:
            raise InternalError(
                "a degree-zero boundary divisor failed subalgebra membership"
            )
        if not pullback_check(gamma, problem.params, f, g):
            raise InternalError("pullback identity failed on an output unit")
        units.append(gamma)
    return RNCUnits(preimages, basis, units, tuple(out_variables))


def pullback_check(gamma, params, f, g):
    """Exact check that gamma(f_1/f_0, ..., f_n/f_0) = c * f/g for a scalar c.

    Pure binary-form arithmetic with cross multiplication at the end; this
    verifies the divisor of the output with no Groebner step involved.
    """
    desc = f.descriptor
    vs = f.variables
    one = MultiPoly.one(desc, vs)
    num, den = MultiPoly.zero(desc, vs), one
    for e, c in gamma.int_terms():
        tn = MultiPoly.constant(c, desc, vs)
        td = one
        for i, a in enumerate(e):
            if a > 0:
                tn = tn * params[i + 1] ** a
                td = td * params[0] ** a
            elif a < 0:
                tn = tn * params[0] ** (-a)
                td = td * params[i + 1] ** (-a)
        num, den = num * td + tn * den, den * td
    if num.is_zero():
        return f.is_zero()
    lhs, rhs = num * g, den * f
    _, cl = lhs.leading(MonomialOrder.grevlex())
    _, cr = rhs.leading(MonomialOrder.grevlex())
    return lhs.scale(cl.inv()) == rhs.scale(cr.inv())
