"""Projective points, divisors with finite support, and the coordinate
system identifying boundary divisors with integer vectors.

A projective point is normalized so that its first nonzero coordinate is 1;
equality is exact coordinate equality after that normalization, with no
algebraic-closure identification.  Divisors are finite integer combinations
of hashable points; addition and negation are total, and the degree-zero
restriction is enforced only where a pipeline requires it.
"""

from __future__ import annotations

from .errors import InvalidInput, UnsupportedPoint
from .polyring import parse_field_element


class ProjPoint:
    """A point of projective space over an exact field, normalized."""

    __slots__ = ("coordinates",)

    def __init__(self, coordinates):
        coords = tuple(coordinates)
        if not coords:
            raise InvalidInput("a projective point needs coordinates")
        lead = next((c for c in coords if not c.is_zero()), None)
        if lead is None:
            raise InvalidInput("projective coordinates cannot all vanish")
        if not lead.is_one():
            inv = lead.inv()
            coords = tuple(c * inv for c in coords)
        self.coordinates = coords

    @property
    def descriptor(self):
        return self.coordinates[0].descriptor

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.coordinates == other.coordinates

    def __hash__(self):
        return hash(self.coordinates)

    def __len__(self):
        return len(self.coordinates)

    def __getitem__(self, i):
        return self.coordinates[i]

    def to_json(self):
        return [str(c) for c in self.coordinates]

    @staticmethod
    def from_json(obj, descriptor):
        return ProjPoint([parse_field_element(s, descriptor) for s in obj])

    def __repr__(self):
        return "[" + ":".join(str(c) for c in self.coordinates) + "]"


class Divisor:
    """A finite integer combination of points; zero multiplicities vanish."""

    __slots__ = ("support",)

    def __init__(self, support=None):
        self.support = {p: int(m) for p, m in (support or {}).items() if m != 0}

    @staticmethod
    def of_point(point, multiplicity=1):
        return Divisor({point: multiplicity})

    def degree(self):
        return sum(self.support.values())

    def is_zero(self):
        return not self.support

    def points(self):
        return list(self.support)

    def multiplicity(self, point):
        return self.support.get(point, 0)

    def __add__(self, other):
        out = dict(self.support)
        for p, m in other.support.items():
            out[p] = out.get(p, 0) + m
        return Divisor(out)

    def __neg__(self):
        return Divisor({p: -m for p, m in self.support.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return Divisor({p: k * m for p, m in self.support.items()})

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.support == other.support

    def __hash__(self):
        return hash(frozenset(self.support.items()))

    def __repr__(self):
        if not self.support:
            return "Divisor(0)"
        parts = [f"{m}*{p!r}" for p, m in self.support.items()]
        return "Divisor(" + " + ".join(parts) + ")"


def divisor_degree(divisor):
    return divisor.degree()


def divisor_to_vector(divisor, boundary):
    """Coordinate vector of a divisor over an ordered boundary list."""
    index = {}
    for i, p in enumerate(boundary):
        index[p] = i
    vec = [0] * len(boundary)
    for p, m in divisor.support.items():
        if p not in index:
            raise UnsupportedPoint(f"{p!r} is outside the declared boundary")
        vec[index[p]] += m
    return tuple(vec)


def vector_to_divisor(vector, boundary):
    if len(vector) != len(boundary):
        raise InvalidInput("vector length does not match the boundary")
    return Divisor({p: m for p, m in zip(boundary, vector)})


def unit_rank_bound(ambient_dimension, curve_degree):
    """Upper bound (n+1)d - 1 for the unit-group rank of a degree-d curve
    in n-space: the boundary has at most (n+1)d points."""
    if ambient_dimension < 1 or curve_degree < 1:
        raise InvalidInput("dimension and degree must be >= 1")
    return (ambient_dimension + 1) * curve_degree - 1
