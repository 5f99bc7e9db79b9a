"""Buchberger's algorithm with cofactor tracking, plus the unit-group
manipulation routines built on top of it: clearing denominators, testing
units, computing unit preimages, and subalgebra membership for parametrized
rational curves.

Laurent-ring questions are translated into polynomial questions through the
presentation k[x_1..x_n, t]/(t*x_1*...*x_n - 1); every ideal built here
carries that torus relation along.

The implementation is plain Buchberger with the normal (smallest-lcm pair
first) selection strategy and both of Buchberger's criteria.  Cofactor
tracking is optional; when enabled, every basis element knows an exact
expression of itself in the input generators, which is what lets
``clear_denominators`` read off the quotient h with f - g*h in I.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DescriptorMismatch,
    InternalError,
    InvalidParametrization,
    NotAUnit,
)
from .exactfield import FieldElem
from .polyring import (
    LaurentPoly,
    MonomialOrder,
    MultiPoly,
    dehomogenize,
    laurent_to_presentation,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    presentation_to_laurent,
)


@dataclass
class GroebnerBasis:
    """A reduced Groebner basis, optionally with a cofactor matrix.

    When present, ``cofactors[i][j]`` is the coefficient of ``inputs[j]``
    in an exact expression of ``generators[i]``.
    """

    generators: list
    order: MonomialOrder
    inputs: list
    cofactors: list = None

    def __iter__(self):
        return iter(self.generators)


class _Work:
    """Mutable polynomial with cached lead and optional cofactor row."""

    __slots__ = ("terms", "lead", "cofs")

    def __init__(self, terms, lead, cofs):
        self.terms = terms
        self.lead = lead
        self.cofs = cofs


def _axpy(target, source, coeff, shift):
    """target += coeff * x^shift * source, in place on a terms dict."""
    for e, c in source.items():
        key = monomial_mul(e, shift)
        s = target.get(key)
        s = c * coeff if s is None else s + c * coeff
        if s.is_zero():
            target.pop(key, None)
        else:
            target[key] = s


def _normal_form(terms, basis, order, ncofs):
    """Full normal form of a terms dict against a list of _Work items.

    Returns (remainder terms, cofactor rows over the basis inputs) where
    the rows are accumulated directly against the basis items' own rows,
    so the identity  input = remainder + sum(rows)  holds over the original
    generators whenever every basis item satisfies it.
    """
    p = dict(terms)
    rem = {}
    rows = [{} for _ in range(ncofs)] if ncofs else None
    key = order.key
    while p:
        le = max(p, key=key)
        lc = p[le]
        for item in basis:
            gl = item.lead
            if monomial_divides(gl, le):
                q = monomial_div(le, gl)
                c = lc / item.terms[gl]
                _axpy(p, item.terms, -c, q)
                p.pop(le, None)
                if rows is not None and item.cofs is not None:
                    for j, src in enumerate(item.cofs):
                        _axpy(rows[j], src, c, q)
                break
        else:
            rem[le] = lc
            del p[le]
    return rem, rows


def groebner_basis(gens, order=None, track_cofactors=True):
    """Reduced Groebner basis of the given generators.

    All generators must share one ring.  With ``track_cofactors`` every
    output element carries an exact expression in the inputs.
    """
    order = order or MonomialOrder.grevlex()
    gens = list(gens)
    if not gens:
        raise DescriptorMismatch("no generators supplied")
    desc, variables = gens[0].descriptor, gens[0].variables
    for g in gens:
        if g.descriptor != desc or g.variables != variables:
            raise DescriptorMismatch("generators live in different rings")
    m = len(gens)
    one = FieldElem.one(desc)
    key = order.key

    basis = []
    for j, g in enumerate(gens):
        if g.is_zero():
            continue
        cofs = None
        if track_cofactors:
            cofs = [{} for _ in range(m)]
            cofs[j] = {(0,) * len(variables): one}
        basis.append(_Work(dict(g.terms), max(g.terms, key=key), cofs))

    if not basis:
        return GroebnerBasis([], order, gens, [] if track_cofactors else None)

    # pair queue under the normal strategy; done-set feeds the chain criterion
    pairs = {}
    done = set()

    def push_pairs(new_index):
        gl = basis[new_index].lead
        for i in range(new_index):
            L = monomial_lcm(basis[i].lead, gl)
            pairs[(i, new_index)] = L

    for i in range(len(basis)):
        push_pairs(i)

    while pairs:
        (i, j) = min(pairs, key=lambda p: key(pairs[p]))
        L = pairs.pop((i, j))
        done.add((i, j))
        fi, fj = basis[i], basis[j]
        # first criterion: coprime leading monomials
        if L == monomial_mul(fi.lead, fj.lead):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if monomial_divides(basis[k].lead, L):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik in done and pjk in done:
                    skip = True
                    break
        if skip:
            continue
        # s-polynomial
        ci = one / fi.terms[fi.lead]
        cj = one / fj.terms[fj.lead]
        s = {}
        _axpy(s, fi.terms, ci, monomial_div(L, fi.lead))
        _axpy(s, fj.terms, -cj, monomial_div(L, fj.lead))
        rows = None
        if track_cofactors:
            rows = [{} for _ in range(m)]
            for t, src in enumerate(fi.cofs):
                _axpy(rows[t], src, ci, monomial_div(L, fi.lead))
            for t, src in enumerate(fj.cofs):
                _axpy(rows[t], src, -cj, monomial_div(L, fj.lead))
        rem, red_rows = _normal_form(s, basis, order, m if track_cofactors else 0)
        if not rem:
            continue
        if track_cofactors:
            for t in range(m):
                for e, c in red_rows[t].items():
                    cur = rows[t].get(e)
                    cur = -c if cur is None else cur - c
                    if cur.is_zero():
                        rows[t].pop(e, None)
                    else:
                        rows[t][e] = cur
        idx = len(basis)
        basis.append(_Work(rem, max(rem, key=key), rows))
        push_pairs(idx)

    return _reduce_basis(basis, order, desc, variables, gens, track_cofactors)


def _reduce_basis(basis, order, desc, variables, gens, track):
    """Inter-reduce, drop redundant elements, normalize to monic."""
    key = order.key
    m = len(gens)
    # drop elements whose lead is divisible by another surviving lead
    keep = []
    for i, item in enumerate(basis):
        redundant = False
        for j, other in enumerate(basis):
            if i == j:
                continue
            if monomial_divides(other.lead, item.lead) and (
                other.lead != item.lead or j < i
            ):
                redundant = True
                break
        if not redundant:
            keep.append(item)
    # tail-reduce each survivor against the others
    reduced = []
    for i, item in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        rem, rows = _normal_form(item.terms, others, order, m if track else 0)
        if track:
            new_rows = []
            for t in range(m):
                row = dict(item.cofs[t])
                for e, c in rows[t].items():
                    cur = row.get(e)
                    cur = -c if cur is None else cur - c
                    if cur.is_zero():
                        row.pop(e, None)
                    else:
                        row[e] = cur
                new_rows.append(row)
        else:
            new_rows = None
        reduced.append(_Work(rem, max(rem, key=key), new_rows))
    # monic normalization, deterministic order by leading monomial
    reduced.sort(key=lambda w: key(w.lead))
    out, cof_out = [], []
    for item in reduced:
        inv = item.terms[item.lead].inv()
        poly = MultiPoly(desc, variables, {e: c * inv for e, c in item.terms.items()})
        out.append(poly)
        if track:
            cof_out.append(
                [
                    MultiPoly(desc, variables, {e: c * inv for e, c in row.items()})
                    for row in item.cofs
                ]
            )
    return GroebnerBasis(out, order, gens, cof_out if track else None)


def reduce_poly(f, gb):
    """Normal form of f against a Groebner basis.

    Returns (remainder, cofactors) with f = sum(cofactors[i] * gb[i]) +
    remainder and no remainder term divisible by any basis leading term.
    """
    order = gb.order
    key = order.key
    items = [
        _Work(dict(g.terms), max(g.terms, key=key), None) for g in gb.generators
    ]
    # track cofactors over the basis elements themselves
    p = dict(f.terms)
    rem = {}
    rows = [{} for _ in items]
    while p:
        le = max(p, key=key)
        lc = p[le]
        for i, item in enumerate(items):
            if monomial_divides(item.lead, le):
                q = monomial_div(le, item.lead)
                c = lc / item.terms[item.lead]
                _axpy(p, item.terms, -c, q)
                p.pop(le, None)
                cur = rows[i].get(q)
                cur = c if cur is None else cur + c
                if cur.is_zero():
                    rows[i].pop(q, None)
                else:
                    rows[i][q] = cur
                break
        else:
            rem[le] = lc
            del p[le]
    desc, variables = f.descriptor, f.variables
    return (
        MultiPoly(desc, variables, rem),
        [MultiPoly(desc, variables, row) for row in rows],
    )


def ideal_contains_one(gb):
    gens = gb.generators
    return len(gens) == 1 and len(gens[0].terms) == 1 and set(gens[0].terms) == {
        (0,) * len(gens[0].variables)
    }


# -- Laurent ideals ------------------------------------------------------------

_AUX_CANDIDATES = ("t", "u", "v", "w", "tt", "uu", "_t")


class LaurentIdeal:
    """An ideal of the Laurent polynomial ring, held via its presentation.

    The presentation lives in k[variables..., aux]/(aux * prod(variables) - 1)
    and always contains the torus relation generator.
    """

    def __init__(self, generators, descriptor=None, variables=None, order=None):
        gens = [
            g if isinstance(g, LaurentPoly) else LaurentPoly(g) for g in generators
        ]
        if gens:
            descriptor = gens[0].descriptor
            variables = gens[0].variables
        if descriptor is None or variables is None:
            raise DescriptorMismatch("an empty ideal needs an explicit ring")
        for g in gens:
            if g.descriptor != descriptor or g.variables != variables:
                raise DescriptorMismatch("generators live in different rings")
        self.descriptor = descriptor
        self.variables = tuple(variables)
        self.generators = gens
        self.order = order or MonomialOrder.grevlex()
        self.aux_variable = _pick_aux_variable(self.variables, descriptor)
        self.presentation_variables = self.variables + (self.aux_variable,)
        self.presentation_gens = [
            laurent_to_presentation(g, self.aux_variable) for g in gens
        ] + [self._torus_relation()]
        self._gb = None

    def _torus_relation(self):
        n = len(self.variables)
        one = FieldElem.one(self.descriptor)
        return MultiPoly(
            self.descriptor,
            self.presentation_variables,
            {
                (1,) * (n + 1): one,
                (0,) * (n + 1): -one,
            },
        )

    def present(self, h):
        """Presentation of a Laurent polynomial in the ideal's ring."""
        if isinstance(h, MultiPoly):
            h = LaurentPoly(h)
        return laurent_to_presentation(h, self.aux_variable)

    def groebner(self):
        if self._gb is None:
            self._gb = groebner_basis(
                self.presentation_gens, self.order, track_cofactors=False
            )
        return self._gb

    def contains(self, h):
        rem, _ = reduce_poly(self.present(h), self.groebner())
        return rem.is_zero()

    def reduce(self, h):
        """Normal form of a Laurent polynomial modulo the ideal."""
        rem, _ = reduce_poly(self.present(h), self.groebner())
        return presentation_to_laurent(rem, self.aux_variable)


def _pick_aux_variable(variables, descriptor):
    for name in _AUX_CANDIDATES:
        if name not in variables and name != descriptor.variable:
            return name
    raise InternalError("no free auxiliary variable name")


def clear_denominators(f, g, ideal):
    """Some Laurent polynomial h with f - g*h in the ideal, or None.

    h is read off as the cofactor of g in an expression of f over the
    ideal extended by g; it is a coset representative, not unique.
    """
    f = f if isinstance(f, LaurentPoly) else LaurentPoly(f)
    g = g if isinstance(g, LaurentPoly) else LaurentPoly(g)
    gens = [ideal.present(g)] + ideal.presentation_gens
    gb = groebner_basis(gens, ideal.order, track_cofactors=True)
    rem, cofs = reduce_poly(ideal.present(f), gb)
    if not rem.is_zero():
        return None
    n = len(ideal.presentation_variables)
    c0 = MultiPoly.zero(ideal.descriptor, ideal.presentation_variables)
    for i, c in enumerate(cofs):
        if c.is_zero():
            continue
        c0 = c0 + c * gb.cofactors[i][0]
    return presentation_to_laurent(c0, ideal.aux_variable)


def test_unit(h, ideal):
    """True iff h is invertible modulo the ideal in the Laurent ring."""
    h = h if isinstance(h, LaurentPoly) else LaurentPoly(h)
    if h.is_zero():
        return ideal.contains(LaurentPoly(MultiPoly.one(ideal.descriptor, ideal.variables)))
    gens = ideal.presentation_gens + [ideal.present(h)]
    gb = groebner_basis(gens, ideal.order, track_cofactors=False)
    return ideal_contains_one(gb)


def unit_preimage(F, G, ideal, homogenizing_variable=None):
    """Laurent representative of F/G on the very affine curve.

    F and G are homogeneous of equal degree in the ideal's variables plus
    one extra (the homogenizing variable, inferred when not given).  Raises
    NotAUnit when F/G does not restrict to a unit.
    """
    if F.variables != G.variables or F.descriptor != G.descriptor:
        raise DescriptorMismatch("F and G live in different rings")
    if not F.is_homogeneous() or not G.is_homogeneous():
        raise InvalidParametrization("F and G must be homogeneous")
    if F.total_degree() != G.total_degree():
        raise InvalidParametrization("F and G must have equal degree")
    if homogenizing_variable is None:
        extra = [v for v in F.variables if v not in ideal.variables]
        if len(extra) != 1:
            raise InvalidParametrization(
                f"cannot infer the homogenizing variable from {F.variables}"
            )
        homogenizing_variable = extra[0]
    f = dehomogenize(F, homogenizing_variable)
    g = dehomogenize(G, homogenizing_variable)
    if f.variables != ideal.variables:
        f = f.rename_ring(ideal.variables)
        g = g.rename_ring(ideal.variables)
    if ideal.contains(LaurentPoly(g)):
        raise NotAUnit("the denominator vanishes on the curve")
    h = clear_denominators(LaurentPoly(f), LaurentPoly(g), ideal)
    if h is None:
        raise NotAUnit("the fraction is not regular on the curve")
    if not test_unit(h, ideal):
        raise NotAUnit("the fraction is regular but not invertible")
    return h


def unit_scalar_ratio(h1, h2, ideal):
    """The scalar c with h1 = c * h2 modulo the ideal, or None.

    Divides h1 by h2 in the quotient ring and checks that the normal form
    of the quotient is a nonzero constant.
    """
    u = clear_denominators(h1, h2, ideal)
    if u is None:
        return None
    nf = ideal.reduce(u)
    terms = nf.int_terms()
    if len(terms) != 1:
        return None
    exps, c = terms[0]
    if any(exps) or c.is_zero():
        return None
    return c


# -- subalgebra membership -----------------------------------------------------

def subalgebra_membership(f, g, params, out_variables=None, order_hint=None):
    """Push a rational function f/g in the curve parameters through a
    rational normal curve parametrization.

    ``params`` lists the n+1 parametrizing forms f_0..f_n (homogeneous of
    degree n, linearly independent, in two variables).  The result is a
    Laurent polynomial gamma in the affine chart coordinates x_1..x_n with
    gamma(f_1/f_0, ..., f_n/f_0) = f/g as functions on the curve, or None
    when f/g is not a Laurent polynomial in those coordinates.
    """
    params = list(params)
    n = len(params) - 1
    if n < 1:
        raise InvalidParametrization("need at least two parametrizing forms")
    desc = params[0].descriptor
    base_vars = params[0].variables
    if len(base_vars) != 2:
        raise InvalidParametrization("parametrizing forms must be binary forms")
    for p in params:
        if p.descriptor != desc or p.variables != base_vars:
            raise DescriptorMismatch("parametrizing forms live in different rings")
        if p.is_zero() or not p.is_homogeneous() or p.total_degree() != n:
            raise InvalidParametrization(
                "parametrizing forms must be nonzero, homogeneous, of degree n"
            )
    if not _forms_independent(params, n, desc):
        raise InvalidParametrization("parametrizing forms are linearly dependent")
    if g.is_zero():
        raise InvalidParametrization("the denominator form is zero")

    S, T = base_vars
    y = [f"y{i}" for i in range(n + 1)]
    z = [f"z{i}" for i in range(n + 1)]
    s = [f"s{i}" for i in range(n + 1)]
    big_vars = (S, T, "s", *s, *y, *z)
    if len(set(big_vars)) != len(big_vars):
        raise InvalidParametrization("parameter variable names clash with s/y/z")
    split = 3 + (n + 1)
    order = order_hint or MonomialOrder.block_elimination(split)

    def lift(p):
        return p.rename_ring(big_vars)

    one = MultiPoly.one(desc, big_vars)
    var = lambda name: MultiPoly.variable(name, desc, big_vars)
    gens = []
    for i in range(n + 1):
        gens.append(var(y[i]) - lift(params[i]))
    for i in range(n + 1):
        gens.append(var(z[i]) - var(s[i]))
    for i in range(n + 1):
        gens.append(lift(params[i]) * var(s[i]) - one)
    gens.append(lift(g) * var("s") - one)

    gb = groebner_basis(gens, order, track_cofactors=False)
    h, _ = reduce_poly(lift(f) * var("s"), gb)

    yz_index = {name: k for k, name in enumerate(big_vars)}
    allowed = {yz_index[v] for v in (*y, *z)}
    for e in h.terms:
        if any(x != 0 for k, x in enumerate(e) if k not in allowed):
            return None

    if out_variables is None:
        out_variables = tuple(f"x{i}" for i in range(1, n + 1))
    out_variables = tuple(out_variables)
    pairs = []
    for e, c in h.terms.items():
        signed = [0] * n
        for i in range(1, n + 1):
            signed[i - 1] = e[yz_index[y[i]]] - e[yz_index[z[i]]]
        pairs.append((tuple(signed), c))
    return LaurentPoly.from_int_terms(pairs, desc, out_variables)


def _forms_independent(params, n, desc):
    """Exact rank test on the (n+1) x (n+1) coefficient matrix."""
    rows = []
    for p in params:
        rows.append([p.coefficient((i, n - i)) for i in range(n + 1)])
    size = len(rows)
    zero = FieldElem.zero(desc)
    r = 0
    for col in range(size):
        pivot = next((i for i in range(r, size) if not rows[i][col].is_zero()), None)
        if pivot is None:
            return False
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col].inv()
        for i in range(r + 1, size):
            if rows[i][col].is_zero():
                continue
            factor = rows[i][col] * inv
            rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return True
