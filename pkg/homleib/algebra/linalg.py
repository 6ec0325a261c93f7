"""
Vectors, linear maps, bilinear product tensors and elements of A⊗A over an
exact field.

All objects are immutable. Maps store rows (dim_out × dim_in) so that
column j is the image of the basis vector e_j.
"""

from functools import cached_property
from typing import Callable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from homleib.algebra import elimination
from homleib.algebra.scalar import FieldSpec, Scalar, specialize, specialized_field
from homleib.core.exceptions import DimensionError, SingularMatrixError


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise DimensionError(message)


class Vector:
    """Coordinates in a fixed basis."""

    __slots__ = ("field", "coords")
    __hash__ = None

    def __init__(self, field: FieldSpec, coords: Iterable):
        self.field = field
        self.coords: Tuple[Scalar, ...] = tuple(field.coerce(c) for c in coords)

    @classmethod
    def zero(cls, field: FieldSpec, dim: int) -> "Vector":
        return cls(field, [field.zero] * dim)

    @classmethod
    def basis(cls, field: FieldSpec, dim: int, index: int) -> "Vector":
        """The basis vector e_{index+1} (0-based index)."""
        return cls(field, [field.one if i == index else field.zero for i in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coords)

    def nonzero(self) -> Iterator[Tuple[int, Scalar]]:
        return ((i, c) for i, c in enumerate(self.coords) if not c.is_zero)

    def __getitem__(self, i: int) -> Scalar:
        return self.coords[i]

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __add__(self, other: "Vector") -> "Vector":
        _check(self.dim == other.dim, f"vector dimensions {self.dim} and {other.dim} differ")
        return Vector(self.field, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "Vector") -> "Vector":
        _check(self.dim == other.dim, f"vector dimensions {self.dim} and {other.dim} differ")
        return Vector(self.field, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "Vector":
        return Vector(self.field, [-a for a in self.coords])

    def scale(self, c) -> "Vector":
        c = self.field.coerce(c)
        return Vector(self.field, [c * a for a in self.coords])

    def __rmul__(self, c) -> "Vector":
        return self.scale(c)

    def concat(self, other: "Vector") -> "Vector":
        return Vector(self.field, self.coords + other.coords)

    def split(self, first: int) -> Tuple["Vector", "Vector"]:
        return Vector(self.field, self.coords[:first]), Vector(self.field, self.coords[first:])

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self.dim == other.dim and all(a == b for a, b in zip(self.coords, other.coords))

    def to_strings(self) -> List[str]:
        return [str(c) for c in self.coords]

    def __repr__(self):
        return f"Vector([{', '.join(self.to_strings())}])"


class LinearMap:
    """A dim_out × dim_in matrix; column j is the image of e_j."""

    __slots__ = ("field", "rows", "__dict__")
    __hash__ = None

    def __init__(self, field: FieldSpec, rows: Iterable[Iterable]):
        self.field = field
        self.rows: Tuple[Tuple[Scalar, ...], ...] = tuple(
            tuple(field.coerce(c) for c in row) for row in rows
        )
        widths = {len(row) for row in self.rows}
        _check(len(widths) <= 1, "ragged matrix")

    @classmethod
    def identity(cls, field: FieldSpec, dim: int) -> "LinearMap":
        return cls(field, [[field.one if i == j else field.zero for j in range(dim)] for i in range(dim)])

    @classmethod
    def zero(cls, field: FieldSpec, dim_out: int, dim_in: Optional[int] = None) -> "LinearMap":
        dim_in = dim_out if dim_in is None else dim_in
        return cls(field, [[field.zero] * dim_in for _ in range(dim_out)])

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Vector], dim_out: Optional[int] = None) -> "LinearMap":
        if not columns:
            return cls(field, [[] for _ in range(dim_out or 0)])
        return cls(field, [[col[i] for col in columns] for i in range(columns[0].dim)])

    @classmethod
    def diagonal(cls, field: FieldSpec, entries: Sequence) -> "LinearMap":
        n = len(entries)
        return cls(field, [[entries[i] if i == j else field.zero for j in range(n)] for i in range(n)])

    @property
    def dim_out(self) -> int:
        return len(self.rows)

    @property
    def dim_in(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def is_square(self) -> bool:
        return self.dim_out == self.dim_in

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return Vector(self.field, [row[j] for row in self.rows])

    @cached_property
    def _sparse_columns(self) -> Tuple[Tuple[Tuple[int, Scalar], ...], ...]:
        return tuple(
            tuple((i, row[j]) for i, row in enumerate(self.rows) if not row[j].is_zero)
            for j in range(self.dim_in)
        )

    def apply(self, v: Vector) -> Vector:
        _check(v.dim == self.dim_in, f"map expects dimension {self.dim_in}, got {v.dim}")
        out = [self.field.zero] * self.dim_out
        for j, vj in v.nonzero():
            for i, mij in self._sparse_columns[j]:
                out[i] = out[i] + mij * vj
        return Vector(self.field, out)

    def __call__(self, v: Vector) -> Vector:
        return self.apply(v)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self ∘ other."""
        _check(self.dim_in == other.dim_out, f"cannot compose {self.shape} after {other.shape}")
        cols = [self.apply(other.column(j)) for j in range(other.dim_in)]
        return LinearMap.from_columns(self.field, cols, self.dim_out)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return self.compose(other)

    def power(self, n: int) -> "LinearMap":
        _check(self.is_square, "only square maps have powers")
        if n < 0:
            raise ValueError("map powers are defined for n ≥ 0")
        result, base = LinearMap.identity(self.field, self.dim_in), self
        while n:
            if n & 1:
                result = result.compose(base)
            base = base.compose(base)
            n >>= 1
        return result

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.dim_out, self.dim_in)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        _check(self.shape == other.shape, f"shapes {self.shape} and {other.shape} differ")
        return LinearMap(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + (-other)

    def __neg__(self) -> "LinearMap":
        return LinearMap(self.field, [[-a for a in r] for r in self.rows])

    def scale(self, c) -> "LinearMap":
        c = self.field.coerce(c)
        return LinearMap(self.field, [[c * a for a in r] for r in self.rows])

    def _transpose(self) -> "LinearMap":
        return LinearMap(self.field, [[self.rows[i][j] for i in range(self.dim_out)] for j in range(self.dim_in)])

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for row in self.rows for c in row)

    @property
    def is_identity(self) -> bool:
        return self.is_square and self == LinearMap.identity(self.field, self.dim_in)

    def direct_sum(self, other: "LinearMap") -> "LinearMap":
        """Block-diagonal self ⊕ other."""
        zero = self.field.zero
        top = [list(r) + [zero] * other.dim_in for r in self.rows]
        bottom = [[zero] * self.dim_in + list(r) for r in other.rows]
        return LinearMap(self.field, top + bottom)

    def commutes_with(self, other: "LinearMap") -> bool:
        return self.compose(other) == other.compose(self)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    def specialize(self, values: Mapping[str, object]) -> "LinearMap":
        """Substitute rational values for parameters in every entry."""
        target = specialized_field(self.field, values)
        return LinearMap(target, [[specialize(c, values) for c in row] for row in self.rows])

    def to_strings(self) -> List[List[str]]:
        return [[str(c) for c in row] for row in self.rows]

    def __repr__(self):
        return f"LinearMap({self.to_strings()})"


class Product:
    """
    A bilinear product e_i ∘ e_j = Σ_k c[i][j][k] e_k.

    ``c`` is stored densely; a sparse (k, coeff) view per basis pair drives
    evaluation.
    """

    __slots__ = ("field", "dim", "c", "__dict__")
    __hash__ = None

    def __init__(self, field: FieldSpec, dim: int, c: Sequence[Sequence[Sequence]]):
        self.field = field
        self.dim = dim
        self.c = tuple(tuple(tuple(field.coerce(x) for x in cij) for cij in ci) for ci in c)
        _check(
            len(self.c) == dim and all(len(ci) == dim and all(len(cij) == dim for cij in ci) for ci in self.c),
            f"product tensor is not {dim}×{dim}×{dim}",
        )

    @classmethod
    def zero(cls, field: FieldSpec, dim: int) -> "Product":
        z = field.zero
        return cls(field, dim, [[[z] * dim for _ in range(dim)] for _ in range(dim)])

    @classmethod
    def from_entries(cls, field: FieldSpec, dim: int, entries: Iterable[Tuple[int, int, int, object]]) -> "Product":
        """Build from 0-based sparse (i, j, k, coeff) entries; repeated entries add."""
        c = [[[field.zero] * dim for _ in range(dim)] for _ in range(dim)]
        for i, j, k, coeff in entries:
            _check(all(0 <= x < dim for x in (i, j, k)), f"index ({i}, {j}, {k}) out of range for dim {dim}")
            c[i][j][k] = c[i][j][k] + field.coerce(coeff)
        return cls(field, dim, c)

    @classmethod
    def from_bilinear(cls, field: FieldSpec, dim: int, fn: Callable[[int, int], Vector]) -> "Product":
        """Tabulate fn(i, j) = e_i ∘ e_j."""
        return cls(field, dim, [[list(fn(i, j).coords) for j in range(dim)] for i in range(dim)])

    @cached_property
    def _sparse(self) -> Tuple[Tuple[Tuple[Tuple[int, Scalar], ...], ...], ...]:
        return tuple(
            tuple(tuple((k, x) for k, x in enumerate(cij) if not x.is_zero) for cij in ci) for ci in self.c
        )

    def apply(self, u: Vector, v: Vector) -> Vector:
        _check(u.dim == self.dim and v.dim == self.dim, f"product expects dimension {self.dim}")
        out = [self.field.zero] * self.dim
        v_nonzero = list(v.nonzero())
        for i, ui in u.nonzero():
            row = self._sparse[i]
            for j, vj in v_nonzero:
                cell = row[j]
                if not cell:
                    continue
                w = ui * vj
                for k, x in cell:
                    out[k] = out[k] + w * x
        return Vector(self.field, out)

    def __call__(self, u: Vector, v: Vector) -> Vector:
        return self.apply(u, v)

    def basis_product(self, i: int, j: int) -> Vector:
        return Vector(self.field, self.c[i][j])

    def entries(self) -> Iterator[Tuple[int, int, int, Scalar]]:
        """Nonzero (i, j, k, coeff) in index order, 0-based."""
        for i in range(self.dim):
            for j in range(self.dim):
                for k, x in self._sparse[i][j]:
                    yield i, j, k, x

    @property
    def is_zero(self) -> bool:
        return not any(True for _ in self.entries())

    def left_multiplication(self, i: int) -> LinearMap:
        """L(e_i): column j is e_i ∘ e_j."""
        return LinearMap.from_columns(self.field, [self.basis_product(i, j) for j in range(self.dim)], self.dim)

    def right_multiplication(self, j: int) -> LinearMap:
        """R(e_j): column i is e_i ∘ e_j."""
        return LinearMap.from_columns(self.field, [self.basis_product(i, j) for i in range(self.dim)], self.dim)

    def __add__(self, other: "Product") -> "Product":
        _check(self.dim == other.dim, "product dimensions differ")
        return Product.from_bilinear(
            self.field, self.dim, lambda i, j: self.basis_product(i, j) + other.basis_product(i, j)
        )

    def __neg__(self) -> "Product":
        return self.scale(-1)

    def __sub__(self, other: "Product") -> "Product":
        return self + (-other)

    def scale(self, c) -> "Product":
        return Product.from_bilinear(self.field, self.dim, lambda i, j: self.basis_product(i, j).scale(c))

    def precompose(self, f: LinearMap, g: LinearMap) -> "Product":
        """x ∘' y = f(x) ∘ g(y)."""
        return Product.from_bilinear(self.field, self.dim, lambda i, j: self.apply(f.column(i), g.column(j)))

    def postcompose(self, f: LinearMap) -> "Product":
        """x ∘' y = f(x ∘ y)."""
        return Product.from_bilinear(self.field, self.dim, lambda i, j: f.apply(self.basis_product(i, j)))

    def opposite(self) -> "Product":
        """x ∘' y = y ∘ x."""
        return Product.from_bilinear(self.field, self.dim, lambda i, j: self.basis_product(j, i))

    def is_preserved_by(self, f: LinearMap) -> bool:
        """f(x ∘ y) = f(x) ∘ f(y) on all basis pairs."""
        return self.postcompose(f) == self.precompose(f, f)

    def specialize(self, values: Mapping[str, object]) -> "Product":
        target = specialized_field(self.field, values)
        return Product(target, self.dim, [[[specialize(x, values) for x in cij] for cij in ci] for ci in self.c])

    def __eq__(self, other):
        if not isinstance(other, Product):
            return NotImplemented
        return self.dim == other.dim and all(
            a == b for ci, di in zip(self.c, other.c) for cij, dij in zip(ci, di) for a, b in zip(cij, dij)
        )

    def __repr__(self):
        return f"Product(dim={self.dim}, entries={[(i, j, k, str(x)) for i, j, k, x in self.entries()]})"


class Tensor2:
    """An element Σ t[i][j] e_i⊗e_j of A⊗A."""

    __slots__ = ("field", "coeffs")
    __hash__ = None

    def __init__(self, field: FieldSpec, coeffs: Iterable[Iterable]):
        self.field = field
        self.coeffs = tuple(tuple(field.coerce(c) for c in row) for row in coeffs)
        _check(all(len(row) == len(self.coeffs) for row in self.coeffs), "tensor coefficients must be square")

    @classmethod
    def zero(cls, field: FieldSpec, dim: int) -> "Tensor2":
        return cls(field, [[field.zero] * dim for _ in range(dim)])

    @classmethod
    def elementary(cls, field: FieldSpec, dim: int, i: int, j: int) -> "Tensor2":
        """e_i ⊗ e_j (0-based)."""
        return cls(field, [[field.one if (a, b) == (i, j) else field.zero for b in range(dim)] for a in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def as_map(self) -> LinearMap:
        return LinearMap(self.field, self.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for row in self.coeffs for c in row)

    def __add__(self, other: "Tensor2") -> "Tensor2":
        _check(self.dim == other.dim, "tensor dimensions differ")
        return Tensor2(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "Tensor2":
        return Tensor2(self.field, [[-a for a in r] for r in self.coeffs])

    def __sub__(self, other: "Tensor2") -> "Tensor2":
        return self + (-other)

    def scale(self, c) -> "Tensor2":
        c = self.field.coerce(c)
        return Tensor2(self.field, [[c * a for a in r] for r in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, Tensor2):
            return NotImplemented
        return self.dim == other.dim and all(
            a == b for r, s in zip(self.coeffs, other.coeffs) for a, b in zip(r, s)
        )

    def flat(self) -> List[Scalar]:
        """Row-major coefficients, index i*dim + j for e_i⊗e_j."""
        return [c for row in self.coeffs for c in row]

    def to_strings(self) -> List[str]:
        return [str(c) for c in self.flat()]

    def __repr__(self):
        return f"Tensor2({[[str(c) for c in r] for r in self.coeffs]})"


# ---- operation-level API ----


def map_apply(M: LinearMap, v: Vector) -> Vector:
    return M.apply(v)


def map_compose(M: LinearMap, N: LinearMap) -> LinearMap:
    return M.compose(N)


def map_power(M: LinearMap, n: int) -> LinearMap:
    return M.power(n)


def product_apply(P: Product, u: Vector, v: Vector) -> Vector:
    return P.apply(u, v)


def map_determinant(A: LinearMap):
    _check(A.is_square, f"determinant of non-square {A.shape} map")
    return elimination.determinant(A.rows, A.field)


def map_rank(A: LinearMap) -> int:
    return elimination.rank(A.rows, A.field)


def map_kernel(A: LinearMap) -> List[Vector]:
    return [Vector(A.field, v) for v in elimination.kernel_basis(A.rows, A.dim_in, A.field)]


def _singular(A: LinearMap) -> SingularMatrixError:
    witness = map_kernel(A)[0]
    return SingularMatrixError(f"singular matrix; kernel contains {witness.to_strings()}", witness)


def solve_linear(A: LinearMap, b: Vector) -> Vector:
    """The unique x with A x = b; raises SingularMatrixError with a kernel witness."""
    _check(A.is_square, f"solve needs a square map, got {A.shape}")
    _check(b.dim == A.dim_out, f"right-hand side has dimension {b.dim}, expected {A.dim_out}")
    n = A.dim_in
    augmented = [list(row) + [b[i]] for i, row in enumerate(A.rows)]
    upper, _, pivots = elimination.bareiss_forward(augmented, A.field)
    if pivots[:n] != list(range(n)):
        raise _singular(A)
    return Vector(A.field, elimination.back_substitute(upper, n, n))


def map_inverse(A: LinearMap) -> LinearMap:
    _check(A.is_square, f"inverse needs a square map, got {A.shape}")
    n = A.dim_in
    field = A.field
    augmented = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(A.rows)]
    upper, _, pivots = elimination.bareiss_forward(augmented, field)
    if pivots[:n] != list(range(n)):
        raise _singular(A)
    columns = [Vector(field, elimination.back_substitute(upper, n, n + j)) for j in range(n)]
    return LinearMap.from_columns(field, columns, n)


def dual_map(M: LinearMap) -> LinearMap:
    """The signed dual: ⟨v, M*(u*)⟩ = −⟨M v, u*⟩, i.e. −Mᵀ."""
    _check(M.is_square, f"dual of non-square {M.shape} map")
    return -M._transpose()


def tensor_ops(e: Tensor2, lhs: LinearMap, rhs: LinearMap) -> Tensor2:
    """(lhs ⊗ rhs)(e), whose coefficient matrix is lhs · e · rhsᵀ."""
    _check(lhs.dim_in == e.dim and rhs.dim_in == e.dim, "tensor and map dimensions differ")
    return Tensor2(e.field, lhs.compose(e.as_map).compose(rhs._transpose()).rows)


def tensor_swap(e: Tensor2) -> Tensor2:
    """σ(x⊗y) = y⊗x."""
    return Tensor2(e.field, e.as_map._transpose().rows)
