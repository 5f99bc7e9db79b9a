import pytest
from fractions import Fraction

from unitgroup.divisors import Divisor, ProjPoint, divisor_to_vector
from unitgroup.errors import (
    BoundaryNotInField,
    DegenerateConic,
    InvalidParametrization,
)
from unitgroup.exactfield import FieldDescriptor, FieldElem, cyclotomic_field
from unitgroup.groebner import test_unit as is_unit, unit_scalar_ratio
from unitgroup.intlattice import IntLattice, IntMatrix, kernel_Z
from unitgroup.polyring import parse_polynomial
from unitgroup.ratcurves import (
    ConicProblem,
    RNCProblem,
    conic_boundary,
    conic_unit_basis,
    pullback_check,
    rnc_boundary_preimages,
    rnc_unit_basis,
)

Q = FieldDescriptor.rationals()
QT = FieldDescriptor.rational_functions("t")
XYZ = ("x", "y", "z")

# the conic over Q(t) whose boundary is six nice points
CONIC_QT = (
    "(1+t)*x^2 + (1+t)*y^2 + (1+t)*z^2"
    " - (2+2*t+t^2)*x*y - (2+2*t+t^2)*y*z - (2+2*t+t^2)*x*z"
)


def qt_point(*texts):
    from unitgroup.polyring import parse_field_element

    return ProjPoint([parse_field_element(s, QT) for s in texts])


def qt_conic():
    return ConicProblem(parse_polynomial(CONIC_QT, QT, XYZ))


def test_conic_boundary_qt_six_points():
    boundary = conic_boundary(qt_conic())
    points = [p for p, m in boundary]
    mults = [m for _, m in boundary]
    expected = [
        qt_point("0", "1", "t+1"),
        qt_point("0", "t+1", "1"),
        qt_point("1", "0", "t+1"),
        qt_point("t+1", "0", "1"),
        qt_point("1", "t+1", "0"),
        qt_point("t+1", "1", "0"),
    ]
    assert points == expected
    assert mults == [1] * 6


def test_conic_boundary_specialized_at_zero_is_tangent():
    # setting t = 0 degenerates each coordinate line to a tangency
    text = CONIC_QT.replace("t", "0")
    problem = ConicProblem(parse_polynomial(text, Q, XYZ))
    boundary = conic_boundary(problem)
    points = [p for p, _ in boundary]
    assert [m for _, m in boundary] == [2, 2, 2]
    def qpt(*cs):
        return ProjPoint([FieldElem.from_rational(Fraction(c), Q) for c in cs])
    assert set(points) == {qpt(0, 1, 1), qpt(1, 0, 1), qpt(1, 1, 0)}


def test_conic_boundary_gaussian():
    QI = cyclotomic_field(4, "i")
    problem = ConicProblem(parse_polynomial("x^2+y^2-z^2", QI, XYZ))
    boundary = conic_boundary(problem)
    points = {p for p, _ in boundary}
    i = FieldElem.generator(QI)
    one, zero = FieldElem.one(QI), FieldElem.zero(QI)
    assert len(points) == 6
    assert ProjPoint([i, one, zero]) in points
    assert ProjPoint([one, zero, one]) in points


def test_conic_boundary_not_in_field():
    problem = ConicProblem(parse_polynomial("x^2+y^2-z^2", Q, XYZ))
    with pytest.raises(BoundaryNotInField):
        conic_boundary(problem)


def test_degenerate_conic_rejected():
    with pytest.raises(DegenerateConic):
        ConicProblem(parse_polynomial("x^2+2*x*y+y^2", Q, XYZ))


# the chord choices that reproduce the published degree-2 generators:
# edges (a, b, aux) meaning divisor P_a - P_b realized through P_aux
QT_TREE = [(2, 0, 1), (2, 1, 0), (4, 2, 3), (4, 3, 2), (5, 0, 1)]

QT_EXPECTED_UNITS = [
    "(t+1)^2 + y*x^-1 - (t+1)*x^-1",
    "(t+1) + (t+1)*y*x^-1 - x^-1",
    "(t+1)*x*y^-1 - 1 - (t+1)^2*y^-1",
    "(t+1)*x*y^-1 - 1 - y^-1",
    "1 - (t+1)*y*x^-1 + (t+1)^2*x^-1",
]


def test_conic_units_qt_match_published_generators():
    result = conic_unit_basis(qt_conic(), tree=QT_TREE)
    assert len(result.units) == 5
    for h, expected_text, (a, b, _) in zip(
        result.units, QT_EXPECTED_UNITS, QT_TREE
    ):
        expected = parse_polynomial(expected_text, QT, ("x", "y"), laurent=True)
        ratio = unit_scalar_ratio(h, expected, result.ideal)
        assert ratio is not None, f"unit for edge ({a},{b}) is off"
        assert is_unit(h, result.ideal)


def test_conic_units_divisor_lattice_is_full():
    result = conic_unit_basis(qt_conic(), tree=QT_TREE)
    points = [p for p, _ in result.boundary]
    vectors = [divisor_to_vector(d, points) for d in result.divisors]
    output = IntLattice(6, vectors)
    full = kernel_Z(IntMatrix([[1] * 6]))
    assert output == full


def test_conic_units_default_tree_two_point_count():
    # default path tree gives #points - 1 units
    result = conic_unit_basis(qt_conic())
    assert len(result.units) == len(result.boundary) - 1
    for h in result.units:
        assert is_unit(h, result.ideal)


def test_conic_units_tangent_chords():
    # the fully tangent specialization still yields #points - 1 = 2 units
    text = CONIC_QT.replace("t", "0")
    problem = ConicProblem(parse_polynomial(text, Q, XYZ))
    result = conic_unit_basis(problem)
    assert len(result.units) == 2
    for h in result.units:
        assert is_unit(h, result.ideal)


# -- rational normal curve --------------------------------------------------

RNC_PARAMS = ["S^3-4*S*T^2", "S^2*T-9*T^3", "(S-3*T)*T^2", "(S+3*T)*T^2"]


def rnc_problem():
    return RNCProblem([parse_polynomial(p, Q, ("S", "T")) for p in RNC_PARAMS])


def p1(a, b):
    return ProjPoint(
        [FieldElem.from_rational(Fraction(a), Q), FieldElem.from_rational(Fraction(b), Q)]
    )


def test_rnc_preimages():
    points = rnc_boundary_preimages(rnc_problem())
    expected = {p1(0, 1), p1(1, 0), p1(3, 1), p1(-3, 1), p1(2, 1), p1(-2, 1)}
    assert set(points) == expected
    assert len(points) == 6


def test_rnc_preimage_multiplicity():
    problem = RNCProblem(
        [
            parse_polynomial(t, Q, ("S", "T"))
            for t in ("S^2", "S*T", "T^2")
        ]
    )
    points = rnc_boundary_preimages(problem)
    assert set(points) == {p1(0, 1), p1(1, 0)}


def test_rnc_irrational_roots_rejected():
    with pytest.raises(BoundaryNotInField):
        rnc_boundary_preimages(
            RNCProblem(
                [
                    parse_polynomial(t, Q, ("S", "T"))
                    for t in ("S^2+T^2", "S*T", "T^2")
                ]
            )
        )


def test_rnc_paper_basis_items():
    problem = rnc_problem()
    # divisor [-3:1] - [2:1] and divisor [2:1] - [-2:1]
    basis = [
        Divisor({p1(-3, 1): 1, p1(2, 1): -1}),
        Divisor({p1(2, 1): 1, p1(-2, 1): -1}),
    ]
    result = rnc_unit_basis(problem, basis=basis)
    gamma4, gamma5 = result.units
    X = ("x1", "x2", "x3")
    assert gamma5 == parse_polynomial("1-4*x1+10*x2-2*x3", Q, X, laurent=True)
    assert gamma4 == parse_polynomial(
        "1+5*x1-5/2*x2+25/2*x3", Q, X, laurent=True
    )
    # independent pullback identities
    f4 = parse_polynomial("S+3*T", Q, ("S", "T"))
    g4 = parse_polynomial("S-2*T", Q, ("S", "T"))
    assert pullback_check(gamma4, problem.params, f4, g4)
    f5 = parse_polynomial("S-2*T", Q, ("S", "T"))
    g5 = parse_polynomial("S+2*T", Q, ("S", "T"))
    assert pullback_check(gamma5, problem.params, f5, g5)


def test_rnc_coordinate_unit():
    problem = rnc_problem()
    # div(f_1) - div(f_0) is the first chart coordinate
    basis = [
        Divisor(
            {
                p1(1, 0): 1,
                p1(3, 1): 1,
                p1(-3, 1): 1,
                p1(0, 1): -1,
                p1(2, 1): -1,
                p1(-2, 1): -1,
            }
        )
    ]
    result = rnc_unit_basis(problem, basis=basis)
    assert result.units[0] == parse_polynomial(
        "x1", Q, ("x1", "x2", "x3"), laurent=True
    )


def test_rnc_default_basis_size_and_pullbacks():
    problem = rnc_problem()
    result = rnc_unit_basis(problem)
    assert len(result.units) == len(result.preimages) - 1


def test_rnc_rejects_dependent_forms():
    with pytest.raises(InvalidParametrization):
        RNCProblem(
            [
                parse_polynomial(t, Q, ("S", "T"))
                for t in ("S^2", "T^2", "S^2+T^2")
            ]
        )
