"""Finite-dimensional algebras, their modules and bimodules.

An Algebra is given by structure constants over the base field; modules and
bimodules carry explicit action matrices per algebra basis element.  Tensor
products over the algebra are computed as explicit cokernels of the balancing
relations, so every quotient comes with a canonical basis, a projection from
the ambient Kronecker product, and a section.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .linalg import (Field, FieldScalar, LinearMap, VectorSpace, compose,
                     identity, kernel, LinAlgError, make_map,
                     map_from_columns, matrix_from_rows, quotient_by_rows,
                     rank, solve_through, tensor, tensor_space, zero_map)


class StructureError(Exception):
    """An algebra/module datum violates its defining axioms."""


@dataclass(frozen=True)
class Algebra:
    """Associative unital algebra via structure constants.

    mult[i][j] is the coordinate vector of e_i * e_j.
    """

    name: str
    space: VectorSpace
    mult: tuple
    unit: tuple

    @property
    def field(self) -> Field:
        return self.space.field

    @property
    def dim(self) -> int:
        return self.space.dim

    def mul_basis(self, i: int, j: int) -> tuple:
        return self.mult[i][j]

    def mul(self, a: Sequence[FieldScalar], b: Sequence[FieldScalar]) -> tuple:
        out = [self.field.zero] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                for k, c in enumerate(self.mult[i][j]):
                    out[k] = out[k] + ai * bj * c
        return tuple(out)

    def left_mult_matrix(self, i: int) -> LinearMap:
        """x ↦ e_i · x on the algebra itself."""
        cols = [self.mul_basis(i, j) for j in range(self.dim)]
        return map_from_columns(self.space, self.space, cols)

    def right_mult_matrix(self, j: int) -> LinearMap:
        """x ↦ x · e_j on the algebra itself."""
        cols = [self.mul_basis(i, j) for i in range(self.dim)]
        return map_from_columns(self.space, self.space, cols)

    def is_commutative(self) -> bool:
        return all(self.mul_basis(i, j) == self.mul_basis(j, i)
                   for i in range(self.dim) for j in range(self.dim))

    def check(self):
        """Associativity and unit laws on all basis triples/pairs."""
        d = self.dim
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    lhs = self.mul(self.mul_basis(i, j), self.space.basis_vector(k))
                    rhs = self.mul(self.space.basis_vector(i), self.mul_basis(j, k))
                    if lhs != rhs:
                        raise StructureError(
                            f"{self.name}: associativity fails at ({i},{j},{k})")
        for i in range(d):
            e = self.space.basis_vector(i)
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise StructureError(f"{self.name}: unit law fails at basis {i}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def group_algebra(field: Field, n: int, name: Optional[str] = None) -> "Algebra":
        """Group algebra K[Z/n], basis = group elements."""
        space = VectorSpace(field, tuple(f"g{i}" for i in range(n)))
        mult = tuple(tuple(space.basis_vector((i + j) % n) for j in range(n))
                     for i in range(n))
        return Algebra(name or f"K[Z/{n}]", space, mult, space.basis_vector(0))

    @staticmethod
    def truncated_polynomial(field: Field, name: Optional[str] = None) -> "Algebra":
        """K[x]/(x^2), basis (1, x)."""
        space = VectorSpace(field, ("1", "x"))
        z = space.zero_vector()
        mult = ((space.basis_vector(0), space.basis_vector(1)),
                (space.basis_vector(1), z))
        return Algebra(name or "K[x]/(x²)", space, mult, space.basis_vector(0))

    @staticmethod
    def split_pair(field: Field, name: Optional[str] = None) -> "Algebra":
        """K × K with the idempotent basis."""
        space = VectorSpace(field, ("p0", "p1"))
        z = space.zero_vector()
        mult = ((space.basis_vector(0), z), (z, space.basis_vector(1)))
        unit = tuple(field.one for _ in range(2))
        return Algebra(name or "K×K", space, mult, unit)


@dataclass(frozen=True)
class Module:
    """One-sided module with explicit action matrices.

    action[i] is the matrix of x ↦ x·e_i (right) or x ↦ e_i·x (left).
    """

    name: str
    algebra: Algebra
    space: VectorSpace
    side: str  # "left" | "right"
    action: tuple  # tuple[LinearMap, ...]

    @property
    def field(self) -> Field:
        return self.space.field

    @property
    def dim(self) -> int:
        return self.space.dim

    def act(self, v: Sequence[FieldScalar], r: Sequence[FieldScalar]) -> tuple:
        out = [self.field.zero] * self.dim
        for i, ri in enumerate(r):
            if not ri:
                continue
            img = self.action[i](v)
            out = [o + ri * x for o, x in zip(out, img)]
        return tuple(out)

    def check(self):
        alg = self.algebra
        unit_mat = _action_of(self, alg.unit)
        if unit_mat.matrix != identity(self.space).matrix:
            raise StructureError(f"{self.name}: unit does not act as identity")
        for i in range(alg.dim):
            for j in range(alg.dim):
                prod = _action_of(self, alg.mul_basis(i, j))
                if self.side == "right":
                    seq = compose(self.action[j], self.action[i])
                else:
                    seq = compose(self.action[i], self.action[j])
                if prod.matrix != seq.matrix:
                    raise StructureError(
                        f"{self.name}: action incompatible with product at ({i},{j})")

    @staticmethod
    def regular(algebra: Algebra, side: str = "right",
                name: Optional[str] = None) -> "Module":
        if side == "right":
            action = tuple(algebra.right_mult_matrix(j) for j in range(algebra.dim))
        else:
            action = tuple(algebra.left_mult_matrix(i) for i in range(algebra.dim))
        return Module(name or algebra.name, algebra, algebra.space, side, action)


def _action_of(mod: "Module", r: Sequence[FieldScalar]) -> LinearMap:
    acc = zero_map(mod.space, mod.space)
    for i, ri in enumerate(r):
        if ri:
            acc = acc + _scale_map(ri, mod.action[i])
    return acc


def _scale_map(a: FieldScalar, f: LinearMap) -> LinearMap:
    rows = tuple(tuple(a * x for x in row) for row in f.matrix)
    return LinearMap(f.source, f.target, rows)


@dataclass(frozen=True)
class Bimodule:
    """Two-sided module: commuting left and right actions of one algebra."""

    name: str
    algebra: Algebra
    space: VectorSpace
    left: tuple   # tuple[LinearMap, ...]
    right: tuple  # tuple[LinearMap, ...]

    @property
    def field(self) -> Field:
        return self.space.field

    @property
    def dim(self) -> int:
        return self.space.dim

    def left_module(self) -> Module:
        return Module(self.name, self.algebra, self.space, "left", self.left)

    def right_module(self) -> Module:
        return Module(self.name, self.algebra, self.space, "right", self.right)

    def check(self):
        self.left_module().check()
        self.right_module().check()
        for i, L in enumerate(self.left):
            for j, R in enumerate(self.right):
                if compose(L, R).matrix != compose(R, L).matrix:
                    raise StructureError(
                        f"{self.name}: left/right actions do not commute at ({i},{j})")

    @staticmethod
    def regular(algebra: Algebra, name: Optional[str] = None) -> "Bimodule":
        left = tuple(algebra.left_mult_matrix(i) for i in range(algebra.dim))
        right = tuple(algebra.right_mult_matrix(j) for j in range(algebra.dim))
        return Bimodule(name or algebra.name, algebra, algebra.space, left, right)


@dataclass(frozen=True)
class ModuleMap:
    """A linear map together with the module structures it must respect."""

    source: object  # Module | Bimodule
    target: object
    lin: LinearMap

    def is_equivariant(self) -> bool:
        pairs = []
        if isinstance(self.source, Bimodule):
            pairs += list(zip(self.source.left, self.target.left))
            pairs += list(zip(self.source.right, self.target.right))
        else:
            if self.source.side != self.target.side:
                return False
            pairs += list(zip(self.source.action, self.target.action))
        return all(compose(self.lin, a).matrix == compose(b, self.lin).matrix
                   for a, b in pairs)

    def check(self):
        if not self.is_equivariant():
            raise StructureError("module map is not equivariant")


def module_identity(M) -> ModuleMap:
    return ModuleMap(M, M, identity(M.space))


def is_zero(M) -> bool:
    """True iff the underlying space of a module/bimodule is zero."""
    return M.dim == 0


# ---------------------------------------------------------------------------
# Hom computation

def hom_basis(X, Y):
    """Basis of equivariant linear maps X -> Y as a list of LinearMaps.

    Works for one-sided modules with matching side and for bimodules.
    """
    if type(X) is not type(Y):
        raise StructureError("hom between different kinds of modules")
    if X.algebra.name != Y.algebra.name:
        raise StructureError("hom between modules over different algebras")
    constraints = []  # pairs (A on source, B on target)
    if isinstance(X, Bimodule):
        constraints += list(zip(X.left, Y.left)) + list(zip(X.right, Y.right))
    else:
        if X.side != Y.side:
            raise StructureError("hom between modules of different sides")
        constraints += list(zip(X.action, Y.action))
    m, n = Y.dim, X.dim
    field = X.field
    # unknowns: F[r][c], flattened row-major
    rows = []
    for A, B in constraints:
        # F·A − B·F = 0, entry (r, c)
        for r in range(m):
            for c in range(n):
                coeff = [field.zero] * (m * n)
                for k in range(n):
                    coeff[r * n + k] = coeff[r * n + k] + A.matrix[k][c]
                for k in range(m):
                    coeff[k * n + c] = coeff[k * n + c] - B.matrix[r][k]
                rows.append(tuple(coeff))
    unknowns = VectorSpace.make(field, m * n, "f")
    if not rows:
        rows = [unknowns.zero_vector()]
    sys_map = LinearMap(unknowns, VectorSpace.make(field, len(rows), "r"),
                        tuple(rows))
    ker, incl = kernel(sys_map)
    basis = []
    for b in range(ker.dim):
        flat = [incl.matrix[i][b] for i in range(m * n)]
        mat = tuple(tuple(flat[r * n + c] for c in range(n)) for r in range(m))
        basis.append(LinearMap(X.space, Y.space, mat))
    return basis


# ---------------------------------------------------------------------------
# Tensor over the algebra

@dataclass(frozen=True)
class TensorCell:
    """A balanced tensor product presented as an explicit quotient."""

    space: VectorSpace
    proj: LinearMap     # ambient X ⊗_K Y -> space
    section: LinearMap  # space -> ambient, proj ∘ section = id


def balanced_tensor(Xspace: VectorSpace, right_mats: Sequence[LinearMap],
                    Yspace: VectorSpace, left_mats: Sequence[LinearMap],
                    prefix: str = "t") -> TensorCell:
    """Quotient of X ⊗_K Y by (x·r)⊗y − x⊗(r·y) over algebra basis r."""
    field = Xspace.field
    ambient = tensor_space(Xspace, Yspace)
    rows = []
    for A, L in zip(right_mats, left_mats):
        for a in range(Xspace.dim):
            xa = A(Xspace.basis_vector(a))
            for b in range(Yspace.dim):
                yb = L(Yspace.basis_vector(b))
                row = [field.zero] * ambient.dim
                for i, xi in enumerate(xa):
                    if xi:
                        row[i * Yspace.dim + b] = row[i * Yspace.dim + b] + xi
                for j, yj in enumerate(yb):
                    if yj:
                        row[a * Yspace.dim + j] = row[a * Yspace.dim + j] - yj
                if any(row):
                    rows.append(tuple(row))
    quot, proj, section = quotient_by_rows(ambient, rows, prefix)
    return TensorCell(quot, proj, section)


def descend(cell_src: TensorCell, ambient_map: LinearMap,
            proj_tgt: LinearMap) -> LinearMap:
    """Induce a map on quotients from an ambient map; verifies well-definedness."""
    induced = compose(compose(proj_tgt, ambient_map), cell_src.section)
    if compose(induced, cell_src.proj).matrix != \
            compose(proj_tgt, ambient_map).matrix:
        raise LinAlgError("ambient map does not descend to the quotient")
    return induced


def descend_action(cell: TensorCell, ambient_action: LinearMap) -> LinearMap:
    """Residual action on a balanced tensor, verified well-defined."""
    return descend(cell, ambient_action, cell.proj)


def bimodule_tensor(M: Bimodule, N: Bimodule, name: Optional[str] = None):
    """M ⊗_R N with the outer actions; returns (Bimodule, TensorCell)."""
    if M.algebra.name != N.algebra.name:
        raise StructureError("bimodule tensor over different algebras")
    cell = balanced_tensor(M.space, M.right, N.space, N.left)
    d = M.algebra.dim
    left = tuple(descend_action(cell, tensor(M.left[i], identity(N.space)))
                 for i in range(d))
    right = tuple(descend_action(cell, tensor(identity(M.space), N.right[j]))
                  for j in range(d))
    result = Bimodule(name or f"({M.name}⊗{N.name})", M.algebra, cell.space,
                      left, right)
    result.check()
    return result, cell


def module_tensor_commutative(X: Module, Y: Module, name: Optional[str] = None):
    """X ⊗_R Y of right modules over a commutative algebra, as a right module."""
    if not X.algebra.is_commutative():
        raise StructureError("module tensor requires a commutative algebra")
    cell = balanced_tensor(X.space, X.action, Y.space, Y.action)
    d = X.algebra.dim
    action = tuple(descend_action(cell, tensor(identity(X.space), Y.action[j]))
                   for j in range(d))
    result = Module(name or f"({X.name}⊗{Y.name})", X.algebra, cell.space,
                    "right", action)
    result.check()
    return result, cell


# ---------------------------------------------------------------------------
# JSON serialization (bit-exact round trip)

def _matrix_json(m: LinearMap):
    return [[a.serialize() for a in row] for row in m.matrix]


def _matrix_from_json(field, source, target, rows) -> LinearMap:
    return make_map(source, target, rows)


def algebra_to_json(A: Algebra) -> dict:
    return {
        "name": A.name,
        "char": A.field.char,
        "dim": A.dim,
        "basis": list(A.space.labels),
        "mult": [[[c.serialize() for c in A.mult[i][j]]
                  for j in range(A.dim)] for i in range(A.dim)],
        "unit": [c.serialize() for c in A.unit],
    }


def algebra_from_json(data: dict) -> Algebra:
    field = Field(data["char"])
    space = VectorSpace(field, tuple(data["basis"]))
    mult = tuple(tuple(tuple(field(c) for c in data["mult"][i][j])
                       for j in range(data["dim"]))
                 for i in range(data["dim"]))
    unit = tuple(field(c) for c in data["unit"])
    alg = Algebra(data["name"], space, mult, unit)
    alg.check()
    return alg


def module_to_json(M: Module) -> dict:
    return {
        "name": M.name,
        "dim": M.dim,
        "basis": list(M.space.labels),
        "side": M.side,
        "action": [_matrix_json(a) for a in M.action],
    }


def module_from_json(algebra: Algebra, data: dict) -> Module:
    space = VectorSpace(algebra.field, tuple(data["basis"]))
    action = tuple(_matrix_from_json(algebra.field, space, space, rows)
                   for rows in data["action"])
    mod = Module(data["name"], algebra, space, data["side"], action)
    mod.check()
    return mod


def bimodule_to_json(M: Bimodule) -> dict:
    return {
        "name": M.name,
        "dim": M.dim,
        "basis": list(M.space.labels),
        "left": [_matrix_json(a) for a in M.left],
        "right": [_matrix_json(a) for a in M.right],
    }


def bimodule_from_json(algebra: Algebra, data: dict) -> Bimodule:
    space = VectorSpace(algebra.field, tuple(data["basis"]))
    left = tuple(_matrix_from_json(algebra.field, space, space, rows)
                 for rows in data["left"])
    right = tuple(_matrix_from_json(algebra.field, space, space, rows)
                  for rows in data["right"])
    mod = Bimodule(data["name"], algebra, space, left, right)
    mod.check()
    return mod
