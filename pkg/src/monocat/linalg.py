"""Exact linear algebra over Q and small prime fields.

Scalars are arbitrary-precision rationals (characteristic 0) or canonical
residues (characteristic p, p prime, p <= 97).  All arithmetic is exact;
"the diagram commutes" always means entrywise equality of matrices, never
closeness up to a tolerance.

Matrix convention: a LinearMap f has ``matrix[r][c]`` = coefficient of the
r-th target basis vector in the image of the c-th source basis vector, so
``compose(f, g)`` multiplies ``f.matrix @ g.matrix``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

_SMALL_PRIMES = frozenset(
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
     53, 59, 61, 67, 71, 73, 79, 83, 89, 97])


class LinAlgError(Exception):
    pass


class NotInvertible(LinAlgError):
    """Raised by solve_iso when no two-sided inverse exists."""


@dataclass(frozen=True)
class Field:
    """Base field: Q (char 0) or F_p for a prime p <= 97."""

    char: int = 0

    def __post_init__(self):
        if self.char != 0 and self.char not in _SMALL_PRIMES:
            raise ValueError(f"unsupported characteristic {self.char}")

    def __call__(self, value) -> "FieldScalar":
        return FieldScalar(self, self._coerce(value))

    def _coerce(self, value):
        if isinstance(value, FieldScalar):
            if value.field != self:
                raise ValueError("scalar from a different field")
            return value.value
        if isinstance(value, str):
            if "/" in value:
                num, den = value.split("/")
                value = Fraction(int(num), int(den))
            else:
                value = int(value)
        if self.char == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            den = pow(value.denominator % self.char, self.char - 2, self.char)
            return (value.numerator * den) % self.char
        return int(value) % self.char

    @property
    def zero(self) -> "FieldScalar":
        return self(0)

    @property
    def one(self) -> "FieldScalar":
        return self(1)


QQ = Field(0)


@dataclass(frozen=True)
class FieldScalar:
    """An exact field element; arithmetic never leaves the field."""

    field: Field
    value: Union[Fraction, int]

    def _check(self, other: "FieldScalar"):
        if not isinstance(other, FieldScalar) or other.field != self.field:
            raise ValueError("mixed-field arithmetic")

    def __add__(self, other):
        self._check(other)
        ch = self.field.char
        v = self.value + other.value
        return FieldScalar(self.field, v % ch if ch else v)

    def __sub__(self, other):
        self._check(other)
        ch = self.field.char
        v = self.value - other.value
        return FieldScalar(self.field, v % ch if ch else v)

    def __mul__(self, other):
        self._check(other)
        ch = self.field.char
        v = self.value * other.value
        return FieldScalar(self.field, v % ch if ch else v)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __neg__(self):
        return self.field(-self.value)

    def inverse(self) -> "FieldScalar":
        if not self:
            raise ZeroDivisionError("division by zero in exact field")
        if self.field.char == 0:
            return self.field(Fraction(1, 1) / self.value)
        return self.field(pow(self.value, self.field.char - 2, self.field.char))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return str(self.value)

    def serialize(self):
        if isinstance(self.value, Fraction):
            if self.value.denominator == 1:
                return int(self.value)
            return f"{self.value.numerator}/{self.value.denominator}"
        return int(self.value)


@dataclass(frozen=True)
class VectorSpace:
    """Finite-dimensional space with a fixed ordered basis of opaque labels."""

    field: Field
    labels: tuple

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be distinct")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @staticmethod
    def make(field: Field, dim: int, prefix: str = "e") -> "VectorSpace":
        return VectorSpace(field, tuple(f"{prefix}{i}" for i in range(dim)))

    def zero_vector(self) -> tuple:
        return (self.field.zero,) * self.dim

    def basis_vector(self, i: int) -> tuple:
        z = self.field.zero
        o = self.field.one
        return tuple(o if j == i else z for j in range(self.dim))


Matrix = tuple  # tuple of tuples of FieldScalar


@dataclass(frozen=True)
class LinearMap:
    source: VectorSpace
    target: VectorSpace
    matrix: Matrix

    def __post_init__(self):
        if len(self.matrix) != self.target.dim:
            raise ValueError("matrix row count != target dimension")
        for row in self.matrix:
            if len(row) != self.source.dim:
                raise ValueError("matrix column count != source dimension")

    @property
    def field(self) -> Field:
        return self.source.field

    def __call__(self, vec: Sequence[FieldScalar]) -> tuple:
        if len(vec) != self.source.dim:
            raise ValueError("vector length mismatch")
        out = []
        for row in self.matrix:
            acc = self.field.zero
            for a, v in zip(row, vec):
                acc = acc + a * v
            out.append(acc)
        return tuple(out)

    def is_zero(self) -> bool:
        return all(not a for row in self.matrix for a in row)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        if other.source != self.source or other.target != self.target:
            raise ValueError("shape mismatch in map addition")
        field, ch = self.field, self.field.char
        rows = tuple(
            tuple(FieldScalar(field, (a.value + b.value) % ch if ch
                              else a.value + b.value)
                  for a, b in zip(r1, r2))
            for r1, r2 in zip(self.matrix, other.matrix))
        return LinearMap(self.source, self.target, rows)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + scale(self.field(-1), other)


def matrix_from_rows(field: Field, rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(field(x) for x in row) for row in rows)


def make_map(source: VectorSpace, target: VectorSpace, rows) -> LinearMap:
    return LinearMap(source, target, matrix_from_rows(source.field, rows))


def map_from_columns(source: VectorSpace, target: VectorSpace,
                     columns: Sequence[Sequence[FieldScalar]]) -> LinearMap:
    rows = tuple(tuple(columns[c][r] for c in range(source.dim))
                 for r in range(target.dim))
    return LinearMap(source, target, rows)


def map_from_function(source: VectorSpace, target: VectorSpace,
                      fn: Callable[[int], Sequence[FieldScalar]]) -> LinearMap:
    """Build a map from its values on basis vectors (fn(i) = image coords)."""
    return map_from_columns(source, target, [tuple(fn(i)) for i in range(source.dim)])


def identity(space: VectorSpace) -> LinearMap:
    z, o = space.field.zero, space.field.one
    rows = tuple(tuple(o if i == j else z for j in range(space.dim))
                 for i in range(space.dim))
    return LinearMap(space, space, rows)


def zero_map(source: VectorSpace, target: VectorSpace) -> LinearMap:
    row = (source.field.zero,) * source.dim
    return LinearMap(source, target, (row,) * target.dim)


def scale(a: FieldScalar, f: LinearMap) -> LinearMap:
    field, ch, av = f.field, f.field.char, a.value
    rows = tuple(tuple(FieldScalar(field, (av * x.value) % ch if ch
                                   else av * x.value)
                       for x in row) for row in f.matrix)
    return LinearMap(f.source, f.target, rows)


def compose(f: LinearMap, g: LinearMap) -> LinearMap:
    """f after g."""
    if g.target != f.source:
        raise ValueError("compose: inner dimensions do not match")
    field, ch = f.field, f.field.char
    fraw = [[a.value for a in row] for row in f.matrix]
    graw_t = list(zip(*[[b.value for b in row] for row in g.matrix])) \
        if g.matrix else []
    rows = []
    for frow in fraw:
        row = []
        for c in range(g.source.dim):
            col = graw_t[c] if graw_t else ()
            s = sum(a * b for a, b in zip(frow, col))
            row.append(FieldScalar(field, s % ch if ch else s))
        rows.append(tuple(row))
    return LinearMap(g.source, f.target, tuple(rows))


def compose_all(*maps: LinearMap) -> LinearMap:
    """Compose left to right in diagram order: compose_all(f, g) = g∘f."""
    out = maps[0]
    for m in maps[1:]:
        out = compose(m, out)
    return out


def tensor(f: LinearMap, g: LinearMap) -> LinearMap:
    """Kronecker product on the chosen bases, row-major pair ordering."""
    src = tensor_space(f.source, g.source)
    tgt = tensor_space(f.target, g.target)
    field, ch = f.field, f.field.char
    rows = []
    for fr in f.matrix:
        for gr in g.matrix:
            rows.append(tuple(
                FieldScalar(field, (a.value * b.value) % ch if ch
                            else a.value * b.value)
                for a in fr for b in gr))
    if not rows:
        return zero_map(src, tgt)
    return LinearMap(src, tgt, tuple(rows))


def tensor_space(V: VectorSpace, W: VectorSpace) -> VectorSpace:
    labels = tuple(f"{a}⊗{b}" for a in V.labels for b in W.labels)
    return VectorSpace(V.field, labels)


# ---------------------------------------------------------------------------
# Gaussian elimination core

def _rref(field: Field, rows):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    ch = field.char
    rows = [[x.value for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        v = rows[r][c]
        inv = pow(v, ch - 2, ch) if ch else 1 / Fraction(v)
        if ch:
            rows[r] = [(inv * x) % ch for x in rows[r]]
        else:
            rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                if ch:
                    rows[i] = [(x - factor * y) % ch
                               for x, y in zip(rows[i], rows[r])]
                else:
                    rows[i] = [x - factor * y
                               for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(FieldScalar(field, x) for x in row)
            for row in rows[:r]], pivots


def rank(f: LinearMap) -> int:
    _, pivots = _rref(f.field, f.matrix)
    return len(pivots)


def kernel(f: LinearMap):
    """Kernel with its inclusion map; inclusion columns form a kernel basis."""
    field = f.field
    rows, pivots = _rref(field, f.matrix)
    free = [c for c in range(f.source.dim) if c not in pivots]
    ker = VectorSpace(field, tuple(f"k{i}" for i in range(len(free))))
    columns = []
    for fc in free:
        col = [field.zero] * f.source.dim
        col[fc] = field.one
        for prow, pc in zip(rows, pivots):
            col[pc] = -prow[fc]
        columns.append(tuple(col))
    return ker, map_from_columns(ker, f.source, columns)


def solve_iso(f: LinearMap) -> LinearMap:
    """Two-sided inverse of f, or NotInvertible."""
    if f.source.dim != f.target.dim:
        raise NotInvertible("source and target dimensions differ")
    field = f.field
    n = f.source.dim
    ident = identity(f.target).matrix
    aug = [list(f.matrix[i]) + list(ident[i]) for i in range(n)]
    rows, pivots = _rref(field, aug) if n else ([], [])
    if len(pivots) != n or pivots != list(range(n)):
        raise NotInvertible("rank deficient")
    inv = tuple(tuple(rows[i][n:]) for i in range(n))
    return LinearMap(f.target, f.source, inv)


def solve(f: LinearMap, target_vec: Sequence[FieldScalar]):
    """One solution x with f(x) = target_vec, or None if inconsistent."""
    field = f.field
    aug = [list(row) + [b] for row, b in zip(f.matrix, target_vec)]
    if not aug:
        return f.source.zero_vector()
    rows, pivots = _rref(field, aug)
    n = f.source.dim
    x = [field.zero] * n
    for prow, pc in zip(rows, pivots):
        if pc == n:
            return None
        x[pc] = prow[-1]
    return tuple(x)


def right_inverse(f: LinearMap) -> LinearMap:
    """A section of a surjective map f (f ∘ section = id)."""
    cols = []
    for i in range(f.target.dim):
        sol = solve(f, f.target.basis_vector(i))
        if sol is None:
            raise NotInvertible("map is not surjective")
        cols.append(sol)
    return map_from_columns(f.target, f.source, cols)


def quotient_by_rows(space: VectorSpace, rows, prefix: str = "q"):
    """Quotient of `space` by the row span; returns (Q, projection, section).

    The section embeds Q back along the non-pivot coordinates, so
    projection ∘ section = id.
    """
    field = space.field
    rref_rows, pivots = (_rref(field, rows) if rows else ([], []))
    free = [c for c in range(space.dim) if c not in pivots]
    quot = VectorSpace(field, tuple(f"{prefix}{i}" for i in range(len(free))))
    proj_rows = []
    for fc in free:
        row = [field.zero] * space.dim
        row[fc] = field.one
        for prow, pc in zip(rref_rows, pivots):
            row[pc] = -prow[fc]
        proj_rows.append(tuple(row))
    proj = LinearMap(space, quot, tuple(proj_rows))
    sec_cols = [space.basis_vector(fc) for fc in free]
    section = map_from_columns(quot, space, sec_cols)
    return quot, proj, section


def cokernel(f: LinearMap):
    """Cokernel target/im(f) with the projection map."""
    columns = list(zip(*f.matrix)) if f.target.dim and f.source.dim else []
    return quotient_by_rows(f.target, [tuple(c) for c in columns])[:2]


def solve_through(surj: LinearMap, g: LinearMap) -> LinearMap:
    """The unique h with h ∘ surj = g, assuming g kills ker(surj).

    Raises LinAlgError when g does not factor through surj.
    """
    sec = right_inverse(surj)
    h = compose(g, sec)
    if compose(h, surj).matrix != g.matrix:
        raise LinAlgError("map does not factor through the quotient")
    return h
