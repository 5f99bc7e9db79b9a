"""Exact integer linear algebra: Hermite normal form, kernels, sublattice
indices, lattice points in balls, and spanning-tree bases of degree-zero
divisor groups.

The canonical form used everywhere is a column-style Hermite normal form:
columns are ordered by strictly increasing pivot row, pivots are positive,
entries left of a pivot in its row are reduced into [0, pivot), and entries
right of it are zero.  Two sublattices of Z^n are equal iff their forms are
identical, which is how every lattice comparison in the pipelines is
certified.
"""

from __future__ import annotations

from fractions import Fraction
from math import inf, isqrt

from .errors import InvalidInput, NotASpanningTree, NotASublattice


class IntMatrix:
    """Immutable rectangular matrix of arbitrary-precision integers."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise InvalidInput("ragged matrix")
        self.rows = rows

    @staticmethod
    def from_columns(cols, nrows=None):
        cols = [tuple(c) for c in cols]
        if not cols:
            if nrows is None:
                raise InvalidInput("cannot infer the row count of an empty matrix")
            return IntMatrix([() for _ in range(nrows)])
        return IntMatrix(list(zip(*cols)))

    @staticmethod
    def identity(n):
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def columns(self):
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def transpose(self):
        return IntMatrix.from_columns(self.rows, nrows=self.ncols)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise InvalidInput("matrix shape mismatch")
            cols = other.columns()
            return IntMatrix(
                [
                    [sum(a * b for a, b in zip(row, col)) for col in cols]
                    for row in self.rows
                ]
            )
        raise TypeError(f"cannot multiply IntMatrix by {type(other)}")

    def to_json(self):
        return [[str(x) for x in row] for row in self.rows]

    @staticmethod
    def from_json(obj):
        return IntMatrix([[int(x) for x in row] for row in obj])

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"


def _row_hnf(rows, width):
    """Row Hermite form of a list of integer row vectors (destructive)."""
    rows = [list(r) for r in rows]
    m = len(rows)
    r = 0
    for col in range(width):
        while True:
            nz = [i for i in range(r, m) if rows[i][col] != 0]
            if len(nz) <= 1:
                pivot = nz[0] if nz else None
                break
            i0 = min(nz, key=lambda i: abs(rows[i][col]))
            for i in nz:
                if i == i0:
                    continue
                q = rows[i][col] // rows[i0][col]
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[i0])]
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        if rows[r][col] < 0:
            rows[r] = [-a for a in rows[r]]
        p = rows[r][col]
        for i in range(r):
            q = rows[i][col] // p
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return [tuple(row) for row in rows[:r]]


def hnf(matrix):
    """Column Hermite normal form; redundant (zero) columns are dropped."""
    rows = _row_hnf(matrix.columns(), matrix.nrows)
    return IntMatrix.from_columns(rows, nrows=matrix.nrows)


def rank(matrix):
    return hnf(matrix).ncols


class IntLattice:
    """A sublattice of Z^n held by a basis matrix in column Hermite form."""

    __slots__ = ("ambient_rank", "basis")

    def __init__(self, ambient_rank, basis_columns):
        self.ambient_rank = int(ambient_rank)
        m = IntMatrix.from_columns(
            [tuple(c) for c in basis_columns], nrows=self.ambient_rank
        )
        if m.nrows != self.ambient_rank:
            raise InvalidInput("basis vectors have the wrong length")
        self.basis = hnf(m)

    @staticmethod
    def from_matrix(matrix):
        return IntLattice(matrix.nrows, matrix.columns())

    @staticmethod
    def zero(ambient_rank):
        return IntLattice(ambient_rank, [])

    @staticmethod
    def standard(ambient_rank):
        return IntLattice.from_matrix(IntMatrix.identity(ambient_rank))

    @property
    def rank(self):
        return self.basis.ncols

    def __eq__(self, other):
        if not isinstance(other, IntLattice):
            return NotImplemented
        return self.ambient_rank == other.ambient_rank and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_rank, self.basis))

    def _pivots(self):
        """(row, value) of each basis column's pivot."""
        out = []
        for col in self.basis.columns():
            row = next(i for i, x in enumerate(col) if x != 0)
            out.append((row, col[row]))
        return out

    def contains(self, vector):
        """Exact membership by forward substitution along the echelon."""
        v = [int(x) for x in vector]
        if len(v) != self.ambient_rank:
            raise InvalidInput("vector has the wrong length")
        cols = self.basis.columns()
        for col, (row, pivot) in zip(cols, self._pivots()):
            if v[row] % pivot != 0:
                return False
            q = v[row] // pivot
            if q:
                v = [a - q * b for a, b in zip(v, col)]
        return all(x == 0 for x in v)

    def __repr__(self):
        return f"IntLattice(rank {self.rank} in Z^{self.ambient_rank})"


def kernel_Z(matrix):
    """The lattice of integer vectors v with matrix * v = 0 (saturated)."""
    n = matrix.ncols
    cols = matrix.columns()
    augmented = [
        tuple(cols[j]) + tuple(1 if k == j else 0 for k in range(n))
        for j in range(n)
    ]
    m = matrix.nrows
    reduced = _row_hnf(augmented, m + n)
    kernel_rows = [r[m:] for r in reduced if all(x == 0 for x in r[:m])]
    return IntLattice(n, kernel_rows)


def lattice_index(sub, ambient):
    """The index [ambient : sub], or math.inf when the ranks differ.

    Requires sub to be contained in ambient; equal ranks give the finite
    index as the ratio of Hermite pivot products.
    """
    if sub.ambient_rank != ambient.ambient_rank:
        raise NotASublattice("lattices live in different ambient spaces")
    for col in sub.basis.columns():
        if not ambient.contains(col):
            raise NotASublattice("the first lattice is not inside the second")
    if sub.rank != ambient.rank:
        return inf
    num = 1
    for _, p in sub._pivots():
        num *= p
    den = 1
    for _, p in ambient._pivots():
        den *= p
    if num % den != 0:
        raise NotASublattice("pivot products are not divisible; not a sublattice")
    return num // den


def _fraction_inverse(matrix):
    """Inverse of a small nonsingular matrix over the rationals."""
    n = len(matrix)
    aug = [
        [Fraction(matrix[i][j]) for j in range(n)]
        + [Fraction(1 if j == i else 0) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            raise InvalidInput("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def enumerate_ball(lattice, radius):
    """All lattice vectors of Euclidean norm <= radius, 0 included.

    Exhaustive search over an exact coefficient box derived from the basis;
    every candidate is checked with an exact norm comparison.
    """
    radius = Fraction(radius)
    if radius < 0:
        raise InvalidInput("radius must be >= 0")
    n = lattice.ambient_rank
    zero = tuple([0] * n)
    r = lattice.rank
    if r == 0:
        return [zero]
    cols = lattice.basis.columns()
    gram = [[sum(a * b for a, b in zip(ci, cj)) for cj in cols] for ci in cols]
    ginv = _fraction_inverse(gram)
    # rows of G^-1 * B^T bound the coefficients: |x_i| <= ||row_i|| * radius
    bt = [list(c) for c in cols]
    w = [
        [sum(ginv[i][k] * bt[k][j] for k in range(r)) for j in range(n)]
        for i in range(r)
    ]
    boxes = []
    rho2 = radius * radius
    for i in range(r):
        bound2 = sum(x * x for x in w[i]) * rho2
        boxes.append(isqrt(int(bound2)))  # floor is exact for integer coefficients
    out = []
    picks = [0] * r

    def rec(i, partial):
        if i == r:
            norm2 = sum(x * x for x in partial)
            if norm2 <= rho2:
                out.append(tuple(partial))
            return
        for c in range(-boxes[i], boxes[i] + 1):
            nxt = [p + c * b for p, b in zip(partial, cols[i])]
            rec(i + 1, nxt)

    rec(0, [0] * n)
    out.sort()
    return out


def spanning_tree_basis(point_labels, tree_edges=None):
    """Basis of {v in Z^r : sum v_i = 0} from a spanning tree on the labels.

    A directed edge P -> Q contributes the vector e_P - e_Q.  The default
    tree is the star rooted at the first label, with edges root -> other.
    """
    labels = list(point_labels)
    r = len(labels)
    if r == 0:
        raise InvalidInput("need at least one label")
    index = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise InvalidInput(f"duplicate label {lab!r}")
        index[lab] = i
    if tree_edges is None:
        tree_edges = [(labels[0], other) for other in labels[1:]]
    edges = list(tree_edges)
    if len(edges) != r - 1:
        raise NotASpanningTree(f"a spanning tree on {r} labels has {r - 1} edges")
    parent = list(range(r))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    vectors = []
    for p, q in edges:
        if p not in index or q not in index:
            raise NotASpanningTree(f"edge ({p!r}, {q!r}) uses an unknown label")
        i, j = index[p], index[q]
        ri, rj = find(i), find(j)
        if ri == rj:
            raise NotASpanningTree("the edges contain a cycle")
        parent[ri] = rj
        v = [0] * r
        v[i], v[j] = 1, -1
        vectors.append(tuple(v))
    return vectors
