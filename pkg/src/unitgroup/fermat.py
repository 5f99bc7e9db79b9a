"""Unit candidates on the degree-d Fermat curve x^d + y^d = 1.

Factoring the defining equation three ways produces 3d - 1 candidate units
whose boundary divisors are pure integer data; the resulting 3d x (3d-1)
divisor matrix certifies independence by its rank alone.  Whether the
candidates actually generate the unit group is a separate question: already
for d = 2 their divisor lattice sits with index 4 inside the full
degree-zero lattice, so they are independent but not generators.

The divisor matrix needs no field arithmetic at all; cyclotomic Groebner
computations enter only when the candidates are certified to be units.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput
from .exactfield import FieldElem, cyclotomic_field
from .groebner import LaurentIdeal, test_unit
from .intlattice import IntLattice, IntMatrix, hnf, kernel_Z, lattice_index, rank
from .polyring import MultiPoly


@dataclass
class FermatUnitSet:
    """Divisor data for the candidate units of one Fermat curve.

    Rows of the matrix are ordered (P_0..P_{d-1}, Q_0..Q_{d-1}, T_0..T_{d-1});
    columns follow ``unit_descriptions``: x, y, then y - z_d^j, x - z_d^j,
    x - z_2d^(2j+1)*y for 0 <= j <= d-2.
    """

    degree: int
    unit_descriptions: list
    divisor_matrix: IntMatrix


def fermat_divisor_matrix(d):
    """The 3d x (3d-1) matrix whose columns are the candidate divisors."""
    if d < 2:
        raise InvalidInput("the construction needs degree >= 2")
    P = list(range(0, d))
    Q = list(range(d, 2 * d))
    T = list(range(2 * d, 3 * d))
    n = 3 * d
    columns = []
    descriptions = []

    def col():
        return [0] * n

    c = col()
    for i in T:
        c[i] = 1
    for i in P:
        c[i] = -1
    columns.append(c)
    descriptions.append("x")

    c = col()
    for i in Q:
        c[i] = 1
    for i in P:
        c[i] = -1
    columns.append(c)
    descriptions.append("y")

    for j in range(d - 1):
        c = col()
        c[T[j]] = d
        for i in P:
            c[i] -= 1
        columns.append(c)
        descriptions.append(f"y - z{d}^{j}" if j else "y - 1")

    for j in range(d - 1):
        c = col()
        c[Q[j]] = d
        for i in P:
            c[i] -= 1
        columns.append(c)
        descriptions.append(f"x - z{d}^{j}" if j else "x - 1")

    for j in range(d - 1):
        c = col()
        for i in P:
            c[i] = -1
        c[P[j]] = d - 1
        columns.append(c)
        descriptions.append(f"x - z{2*d}^{2*j+1}*y")

    return FermatUnitSet(d, descriptions, IntMatrix.from_columns(columns))


def fermat_rank_check(d):
    """True iff the divisor matrix has full rank 3d - 1."""
    unit_set = fermat_divisor_matrix(d)
    return rank(unit_set.divisor_matrix) == 3 * d - 1


def fermat_index_in_degree_zero(d):
    """Index of the candidate divisor lattice inside the full degree-zero
    lattice on the 3d boundary points (4 for d = 2)."""
    unit_set = fermat_divisor_matrix(d)
    candidate = IntLattice.from_matrix(unit_set.divisor_matrix)
    degree_zero = kernel_Z(IntMatrix([[1] * (3 * d)]))
    return lattice_index(candidate, degree_zero)


def fermat_unit_candidates(d):
    """(descriptor, ideal, candidate polynomials) over Q(zeta_2d)."""
    descriptor = cyclotomic_field(2 * d)
    zeta2d = FieldElem.generator(descriptor)
    zetad = zeta2d * zeta2d
    variables = ("x", "y")
    one = FieldElem.one(descriptor)

    def var(name):
        return MultiPoly.variable(name, descriptor, variables)

    def const(c):
        return MultiPoly.constant(c, descriptor, variables)

    x, y = var("x"), var("y")
    curve = x**d + y**d - const(one)
    ideal = LaurentIdeal([curve])
    candidates = [x, y]
    for j in range(d - 1):
        candidates.append(y - const(zetad**j))
    for j in range(d - 1):
        candidates.append(x - const(zetad**j))
    for j in range(d - 1):
        candidates.append(x - const(zeta2d ** (2 * j + 1)) * y)
    return descriptor, ideal, candidates


def fermat_unit_verify(d):
    """Groebner certificates that all 3d - 1 candidates are units.

    Supported for 2 <= d <= 6; larger degrees make the cyclotomic Groebner
    computation too expensive for a verification pass.
    """
    if d < 2 or d > 6:
        raise InvalidInput("unit verification is supported for 2 <= d <= 6")
    _, ideal, candidates = fermat_unit_candidates(d)
    return all(test_unit(h, ideal) for h in candidates)
