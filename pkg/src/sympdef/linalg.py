"""Exact matrices and vectors over a Galois ring, plus F_p fast paths.

Two layers:

* ``Mat`` / vector helpers over ``GRElement`` — used for all structural
  computation (precision >= 1; Gaussian elimination picks unit pivots,
  which is valid over the local ring W(F_q)/p^m).
* plain-int routines mod p (``fp_rref`` etc.) — used where restriction
  of scalars to F_p produces larger systems (Hom spaces, span closures)
  and object overhead would dominate.
"""

from __future__ import annotations

from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .galois_rings import FieldSpec, GRElement, multiplication_matrix

Vector = Tuple[GRElement, ...]


class Mat:
    """Immutable matrix over a single Galois ring and precision."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence[GRElement]]):
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0

    @staticmethod
    def identity(n: int, spec: FieldSpec, m: int = 1) -> "Mat":
        one, zero = spec.one(m), spec.zero(m)
        return Mat([[one if i == j else zero for j in range(n)]
                    for i in range(n)])

    @staticmethod
    def zeros(nr: int, nc: int, spec: FieldSpec, m: int = 1) -> "Mat":
        zero = spec.zero(m)
        return Mat([[zero] * nc for _ in range(nr)])

    @staticmethod
    def from_ints(rows: Sequence[Sequence[int]], spec: FieldSpec,
                  m: int = 1) -> "Mat":
        return Mat([[spec.from_int(c, m) for c in r] for r in rows])

    @property
    def spec(self) -> FieldSpec:
        return self.rows[0][0].spec

    @property
    def precision(self) -> int:
        return self.rows[0][0].m

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        if self.spec.M == 1:
            return "Mat(" + "; ".join(
                " ".join(str(e.coeffs[0]) for e in r) for r in self.rows) + ")"
        return f"Mat({self.nrows}x{self.ncols})"

    def __add__(self, other: "Mat") -> "Mat":
        return Mat([[a + b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        return Mat([[a - b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Mat):
            bt = other.transpose().rows
            return Mat([[_dot(r, c) for c in bt] for r in self.rows])
        return Mat([[a * other for a in r] for r in self.rows])

    __rmul__ = __mul__
    __matmul__ = __mul__

    def __pow__(self, e: int) -> "Mat":
        if e < 0:
            return self.inverse() ** (-e)
        result = Mat.identity(self.nrows, self.spec, self.precision)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: GRElement) -> "Mat":
        return Mat([[a * c for a in r] for r in self.rows])

    def transpose(self) -> "Mat":
        return Mat(list(zip(*self.rows)))

    def trace(self) -> GRElement:
        t = self.rows[0][0]
        for i in range(1, self.nrows):
            t = t + self.rows[i][i]
        return t

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def is_diagonal(self) -> bool:
        return all(self.rows[i][j].is_zero()
                   for i in range(self.nrows)
                   for j in range(self.ncols) if i != j)

    def apply(self, v: Vector) -> Vector:
        return tuple(_dot(r, v) for r in self.rows)

    def map(self, fn: Callable[[GRElement], GRElement]) -> "Mat":
        return Mat([[fn(a) for a in r] for r in self.rows])

    def reduce(self, m2: int) -> "Mat":
        return self.map(lambda a: a.reduce(m2))

    def lift(self, m2: int) -> "Mat":
        return self.map(lambda a: a.lift(m2))

    def inverse(self) -> "Mat":
        """Gauss-Jordan inverse; pivots must be units of the local ring."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        spec, m = self.spec, self.precision
        a = [list(r) for r in self.rows]
        inv = [list(r) for r in Mat.identity(n, spec, m).rows]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col].is_unit()), None)
            if piv is None:
                raise ZeroDivisionError("matrix is not invertible")
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            c = a[col][col].inverse()
            a[col] = [x * c for x in a[col]]
            inv[col] = [x * c for x in inv[col]]
            for r in range(n):
                if r != col and not a[r][col].is_zero():
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return Mat(inv)

    def to_ints(self) -> List[List[int]]:
        return [[e.to_int() for e in r] for r in self.rows]


def _dot(u: Sequence[GRElement], v: Sequence[GRElement]) -> GRElement:
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


# -- vector helpers ----------------------------------------------------------


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(u: Vector, c: GRElement) -> Vector:
    return tuple(a * c for a in u)


def vec_is_zero(u: Vector) -> bool:
    return all(a.is_zero() for a in u)


def vec_dot(u: Vector, v: Vector) -> GRElement:
    return _dot(u, v)


def zero_vector(n: int, spec: FieldSpec, m: int = 1) -> Vector:
    z = spec.zero(m)
    return (z,) * n


# -- echelon subspaces over the residue field --------------------------------


class Subspace:
    """Row-echelon subspace of F_q^n with normalised pivots.

    Mutable accumulator: ``add`` inserts a vector and reports whether the
    subspace grew.  Iteration order of ``basis`` is by pivot position, so
    downstream computations are deterministic.
    """

    def __init__(self, ambient_dim: int, spec: FieldSpec):
        self.ambient_dim = ambient_dim
        self.spec = spec
        self._rows: dict[int, Vector] = {}

    @classmethod
    def spanned_by(cls, vectors: Iterable[Vector], ambient_dim: int,
                   spec: FieldSpec) -> "Subspace":
        s = cls(ambient_dim, spec)
        for v in vectors:
            s.add(v)
        return s

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def basis(self) -> List[Vector]:
        return [self._rows[k] for k in sorted(self._rows)]

    def reduce(self, v: Vector) -> Vector:
        for piv in sorted(self._rows):
            if not v[piv].is_zero():
                v = vec_sub(v, vec_scale(self._rows[piv], v[piv]))
        return v

    def contains(self, v: Vector) -> bool:
        return vec_is_zero(self.reduce(v))

    def contains_all(self, vectors: Iterable[Vector]) -> bool:
        return all(self.contains(v) for v in vectors)

    def add(self, v: Vector) -> bool:
        v = self.reduce(v)
        piv = next((i for i, a in enumerate(v) if not a.is_zero()), None)
        if piv is None:
            return False
        v = vec_scale(v, v[piv].inverse())
        # keep fully reduced: eliminate the new pivot from older rows
        for k, row in list(self._rows.items()):
            if not row[piv].is_zero():
                self._rows[k] = vec_sub(row, vec_scale(v, row[piv]))
        self._rows[piv] = v
        return True

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def equals(self, other: "Subspace") -> bool:
        return self.dim == other.dim and all(
            other.contains(v) for v in self.basis)

    def intersect_coordinates(self, coords: Sequence[int]) -> "Subspace":
        """Intersection with the span of the given coordinate axes."""
        keep = set(coords)
        drop = [i for i in range(self.ambient_dim) if i not in keep]
        sub = Subspace(self.ambient_dim, self.spec)
        if self.dim == 0:
            return sub
        if not drop:
            for b in self.basis:
                sub.add(b)
            return sub
        # coefficient vectors c with sum_k c_k * basis_k vanishing off `keep`
        rows = [[row[i] for row in self.basis] for i in drop]
        for c in kernel_vectors(rows, self.spec):
            w = zero_vector(self.ambient_dim, self.spec)
            for coeff, b in zip(c, self.basis):
                w = vec_add(w, vec_scale(b, coeff))
            sub.add(w)
        return sub


def rref(rows: List[List[GRElement]], spec: FieldSpec):
    """Reduced row echelon form over F_q; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()),
                   None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows: List[List[GRElement]], spec: FieldSpec) -> int:
    if not rows:
        return 0
    return len(rref(rows, spec)[0])


def kernel_vectors(rows: List[List[GRElement]], spec: FieldSpec) -> List[Vector]:
    """Basis of the right kernel of the matrix with the given rows."""
    if not rows or not rows[0]:
        n = len(rows[0]) if rows else 0
        return [tuple(spec.one() if i == j else spec.zero() for i in range(n))
                for j in range(n)]
    red, pivots = rref(rows, spec)
    n = len(rows[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [spec.zero()] * n
        v[f] = spec.one()
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        basis.append(tuple(v))
    return basis


def solve(rows: List[List[GRElement]], rhs: List[GRElement],
          spec: FieldSpec) -> Optional[Vector]:
    """One solution of rows * x = rhs over F_q, or None."""
    if not rows:
        return ()
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, spec)
    x = [spec.zero()] * n
    for r, pc in enumerate(pivots):
        if pc == n:
            return None            # pivot in the constant column
        x[pc] = red[r][n]
    return tuple(x)


# -- restriction of scalars and mod-p integer linear algebra -----------------


def fq_vector_to_fp(v: Vector) -> List[int]:
    """Flatten an F_q-vector to an F_p-coordinate list (length M*len)."""
    out: List[int] = []
    for a in v:
        out.extend(a.coeffs)
    return out


def fp_vector_to_fq(coords: Sequence[int], spec: FieldSpec) -> Vector:
    M = spec.M
    return tuple(spec.element(coords[i:i + M], 1)
                 for i in range(0, len(coords), M))


def fq_matrix_to_fp(A: Mat) -> List[List[int]]:
    """The F_p-matrix of the F_q-linear map A under restriction of scalars."""
    spec = A.spec
    M = spec.M
    n, m = A.nrows, A.ncols
    out = [[0] * (m * M) for _ in range(n * M)]
    for i in range(n):
        for j in range(m):
            if not A.rows[i][j].is_zero():
                block = multiplication_matrix(A.rows[i][j])
                for a in range(M):
                    for b in range(M):
                        out[i * M + a][j * M + b] = block[a][b]
    return out


def fp_rref(rows: List[List[int]], p: int):
    rows = [[c % p for c in r] for r in rows]
    pivots: List[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def fp_rank(rows: List[List[int]], p: int) -> int:
    if not rows:
        return 0
    return len(fp_rref(rows, p)[0])


def fp_kernel(rows: List[List[int]], p: int) -> List[List[int]]:
    if not rows or not rows[0]:
        n = len(rows[0]) if rows else 0
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    red, pivots = fp_rref(rows, p)
    n = len(rows[0])
    free = [c for c in range(n) if c not in pivots]
    out = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r][f]) % p
        out.append(v)
    return out


class FpSpan:
    """Echelonised F_p-span accumulator over int vectors mod p."""

    def __init__(self, ambient_dim: int, p: int):
        self.ambient_dim = ambient_dim
        self.p = p
        self._rows: dict[int, List[int]] = {}

    @property
    def dim(self) -> int:
        return len(self._rows)

    def add(self, v: Sequence[int]) -> bool:
        p = self.p
        v = [c % p for c in v]
        for piv in sorted(self._rows):
            if v[piv]:
                f = v[piv]
                row = self._rows[piv]
                v = [(a - f * b) % p for a, b in zip(v, row)]
        piv = next((i for i, c in enumerate(v) if c), None)
        if piv is None:
            return False
        inv = pow(v[piv], p - 2, p)
        v = [(c * inv) % p for c in v]
        for k, row in list(self._rows.items()):
            if row[piv]:
                f = row[piv]
                self._rows[k] = [(a - f * b) % p for a, b in zip(row, v)]
        self._rows[piv] = v
        return True

    def contains(self, v: Sequence[int]) -> bool:
        p = self.p
        v = [c % p for c in v]
        for piv in sorted(self._rows):
            if v[piv]:
                f = v[piv]
                row = self._rows[piv]
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return not any(v)
