"""Finite-dimensional coalgebras by structure constants, and their dual algebras."""

from __future__ import annotations

from dataclasses import dataclass

from .base import AxiomError, DimensionError, FieldMismatchError, Verdict
from .linalg import Field, Mat, kron, vstack


def first_bad_column(lhs: Mat, rhs: Mat) -> int | None:
    for j in range(lhs.cols):
        if lhs.col(j) != rhs.col(j):
            return j
    return None


@dataclass(frozen=True, eq=False)
class Coalgebra:
    """Coalgebra with ``delta`` (dim^2 x dim) and ``eps`` (1 x dim).

    Column ``k`` of ``delta`` holds the coefficients of ``Delta(e_k)`` in the
    ``e_i (x) e_j`` basis.
    """

    field: Field
    dim: int
    delta: Mat
    eps: Mat
    name: str = ""

    def __post_init__(self):
        if self.delta.shape != (self.dim * self.dim, self.dim):
            raise DimensionError(f"delta has shape {self.delta.shape}, expected {(self.dim ** 2, self.dim)}")
        if self.eps.shape != (1, self.dim):
            raise DimensionError(f"eps has shape {self.eps.shape}, expected {(1, self.dim)}")
        if self.delta.field != self.field or self.eps.field != self.field:
            raise FieldMismatchError("structure constants over a different field")

    @property
    def id(self) -> Mat:
        return Mat.identity(self.field, self.dim)

    def same_as(self, other: "Coalgebra") -> bool:
        return (self.field == other.field and self.dim == other.dim
                and self.delta == other.delta and self.eps == other.eps)

    def with_name(self, name: str) -> "Coalgebra":
        return Coalgebra(self.field, self.dim, self.delta, self.eps, name)

    def comultiply(self, k: int) -> dict[tuple[int, int], object]:
        """Sparse ``Delta(e_k)`` as ``{(i, j): coeff}``."""
        d = self.dim
        return {(r // d, r % d): x for r, x in enumerate(self.delta.col(k)) if x}

    def is_trivial(self) -> bool:
        """The one-dimensional coalgebra K with e -> e (x) e, eps(e) = 1."""
        one = self.field.one()
        return self.dim == 1 and self.delta[0, 0] == one and self.eps[0, 0] == one

    def __repr__(self) -> str:
        return f"Coalgebra({self.name or '?'}, dim={self.dim}, {self.field})"


def check_coalgebra(c: Coalgebra) -> Verdict:
    """Verify counit and coassociativity laws exactly.

    Failures are reported as ``(axiom, basis index)`` with axioms
    ``counit-left``, ``counit-right`` and ``coassociativity``.
    """
    I = c.id
    fails = []
    left = kron(c.eps, I) @ c.delta
    j = first_bad_column(left, I)
    if j is not None:
        fails.append(("counit-left", j))
    right = kron(I, c.eps) @ c.delta
    j = first_bad_column(right, I)
    if j is not None:
        fails.append(("counit-right", j))
    lhs = kron(c.delta, I) @ c.delta
    rhs = kron(I, c.delta) @ c.delta
    j = first_bad_column(lhs, rhs)
    if j is not None:
        fails.append(("coassociativity", j))
    return Verdict.collect(fails)


def require_coalgebra(c: Coalgebra) -> None:
    v = check_coalgebra(c)
    if not v:
        raise AxiomError(f"{c!r} fails {v.axiom} at basis index {v.witness}", v)


def trivial_coalgebra(field: Field, name: str = "K") -> Coalgebra:
    one = Mat.identity(field, 1)
    return Coalgebra(field, 1, one, one, name)


def zero_coalgebra(field: Field) -> Coalgebra:
    return Coalgebra(field, 0, Mat.zeros(field, 0, 0), Mat.zeros(field, 1, 0), "0")


def direct_sum(c1: Coalgebra, c2: Coalgebra, name: str = "") -> Coalgebra:
    """Block-diagonal direct sum; basis of ``c1`` first."""
    if c1.field != c2.field:
        raise FieldMismatchError(f"{c1.field} vs {c2.field}")
    f = c1.field
    n1, n2 = c1.dim, c2.dim
    n = n1 + n2
    entries = {}
    for k in range(n1):
        for (i, j), x in c1.comultiply(k).items():
            entries[(i * n + j, k)] = x
    for k in range(n2):
        for (i, j), x in c2.comultiply(k).items():
            entries[((n1 + i) * n + n1 + j, n1 + k)] = x
    delta = Mat.from_sparse(f, n * n, n, entries)
    eps = Mat.from_sparse(f, 1, n, {**{(0, k): x for (_, k), x in c1.eps.sparse().items()},
                                    **{(0, n1 + k): x for (_, k), x in c2.eps.sparse().items()}})
    return Coalgebra(f, n, delta, eps, name or f"{c1.name}+{c2.name}")


# ---------------------------------------------------------------------------
# algebras


@dataclass(frozen=True, eq=False)
class Algebra:
    """Finite-dimensional associative algebra.

    ``mul`` is ``dim x dim^2``: column ``i * dim + j`` holds ``e_i * e_j``.
    ``unit`` is the ``dim x 1`` coordinate vector of 1.
    """

    field: Field
    dim: int
    mul: Mat
    unit: Mat

    def __post_init__(self):
        if self.mul.shape != (self.dim, self.dim * self.dim) or self.unit.shape != (self.dim, 1):
            raise DimensionError("algebra structure constants have the wrong shape")

    def product(self, x: Mat, y: Mat) -> Mat:
        """Product of two coordinate columns."""
        return self.mul @ kron(x, y)

    def left_mult(self, a: int) -> Mat:
        """Matrix of ``x -> e_a x``."""
        d = self.dim
        return self.mul.columns([a * d + b for b in range(d)])

    def left_mult_by(self, x: Mat) -> Mat:
        return self.mul @ kron(x, Mat.identity(self.field, self.dim))

    def right_mult(self, a: int) -> Mat:
        d = self.dim
        return self.mul.columns([b * d + a for b in range(d)])

    def basis_vector(self, a: int) -> Mat:
        return Mat.from_sparse(self.field, self.dim, 1, {(a, 0): 1})

    def is_associative(self) -> bool:
        I = Mat.identity(self.field, self.dim)
        return self.mul @ kron(self.mul, I) == self.mul @ kron(I, self.mul)

    def is_unital(self) -> bool:
        I = Mat.identity(self.field, self.dim)
        return self.mul @ kron(self.unit, I) == I and self.mul @ kron(I, self.unit) == I

    def opposite(self) -> "Algebra":
        d = self.dim
        return Algebra(self.field, d, self.mul.columns([j * d + i for i in range(d) for j in range(d)]), self.unit)

    def same_as(self, other: "Algebra") -> bool:
        return self.field == other.field and self.mul == other.mul and self.unit == other.unit


def dual_algebra(c: Coalgebra) -> Algebra:
    """Convolution algebra on the dual basis: ``e^i * e^j = sum_k Delta_{ij}^k e^k``."""
    require_coalgebra(c)
    return Algebra(c.field, c.dim, c.delta.T, c.eps.T)


def product_algebra(a: Algebra, b: Algebra) -> Algebra:
    n1, n = a.dim, a.dim + b.dim
    f = a.field
    entries = {}
    for (k, col), x in a.mul.sparse().items():
        i, j = divmod(col, n1)
        entries[(k, i * n + j)] = x
    for (k, col), x in b.mul.sparse().items():
        i, j = divmod(col, b.dim)
        entries[(n1 + k, (n1 + i) * n + n1 + j)] = x
    return Algebra(f, n, Mat.from_sparse(f, n, n * n, entries), vstack([a.unit, b.unit]))
