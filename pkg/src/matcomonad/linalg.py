"""Exact scalars over Q or F_p and dense row-major matrices over them.

Tensor convention (used everywhere in the package): the basis vector
``e_i (x) f_j`` of ``V (x) W`` has flat index ``i * dim(W) + j``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .base import DimensionError, FieldMismatchError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """The rationals (``Field()``) or the prime field ``Field(p)``."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def kind(self) -> str:
        return "rational" if self.p is None else "prime"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    def __repr__(self) -> str:
        return "Field()" if self.p is None else f"Field({self.p})"

    def __str__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"

    # scalar arithmetic -------------------------------------------------

    def __call__(self, x) -> int | Fraction:
        """Canonical representative of ``x``."""
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def parse(self, text: str):
        """Parse ``"3/7"`` or ``"-2"``; prime fields accept integers only."""
        text = text.strip()
        if self.p is None:
            if "/" in text:
                num, den = text.split("/")
                if int(den) <= 0:
                    raise ValueError(f"denominator must be positive: {text!r}")
                return Fraction(int(num), int(den))
            return Fraction(int(text))
        if "/" in text:
            raise ValueError(f"prime-field scalars must be integers: {text!r}")
        return int(text) % self.p

    def format(self, x) -> str:
        return str(x)

    def elements(self) -> list:
        """All elements (prime fields only)."""
        if self.p is None:
            raise ValueError("the rationals are infinite")
        return list(range(self.p))

    def random(self, rng, bound: int = 3):
        """A random scalar: uniform in F_p, or a small fraction over Q."""
        if self.p is None:
            num = rng.randint(-bound, bound)
            den = rng.randint(1, bound)
            return Fraction(num, den)
        return rng.randrange(self.p)

    def random_nonzero(self, rng, bound: int = 3):
        while True:
            x = self.random(rng, bound)
            if x:
                return x


QQ = Field()


class Mat:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("field", "rows", "cols", "data", "_hash")

    def __init__(self, field: Field, rows: int, cols: int, data: Iterable[Iterable] | None = None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            z = field.zero()
            self.data = tuple(tuple(z for _ in range(cols)) for _ in range(rows))
        else:
            self.data = tuple(tuple(field(x) for x in row) for row in data)
            if len(self.data) != rows or any(len(r) != cols for r in self.data):
                raise DimensionError(f"data does not have shape {rows}x{cols}")
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, rows: int, cols: int, data: tuple) -> "Mat":
        m = cls.__new__(cls)
        m.field, m.rows, m.cols, m.data, m._hash = field, rows, cols, data, None
        return m

    # constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        z, o = field.zero(), field.one()
        return cls._raw(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Mat":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, rows)

    @classmethod
    def from_sparse(cls, field: Field, rows: int, cols: int, entries: Mapping[tuple[int, int], object]) -> "Mat":
        grid = [[field.zero()] * cols for _ in range(rows)]
        for (i, j), x in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionError(f"entry ({i}, {j}) outside {rows}x{cols}")
            grid[i][j] = field(grid[i][j] + field(x))
        return cls._raw(field, rows, cols, tuple(tuple(r) for r in grid))

    @classmethod
    def column(cls, field: Field, values: Sequence) -> "Mat":
        return cls(field, len(values), 1, [[v] for v in values])

    @classmethod
    def row(cls, field: Field, values: Sequence) -> "Mat":
        return cls(field, 1, len(values), [list(values)])

    # basic protocol ------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.shape == other.shape
            and self.data == other.data
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"Mat({self.rows}x{self.cols} over {self.field}: [{body}])"

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.data]

    def sparse(self) -> dict[tuple[int, int], object]:
        return {(i, j): x for i, r in enumerate(self.data) for j, x in enumerate(r) if x}

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self, idx: Sequence[int]) -> "Mat":
        return Mat._raw(self.field, self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.data))

    def select_rows(self, idx: Sequence[int]) -> "Mat":
        return Mat._raw(self.field, len(idx), self.cols, tuple(self.data[i] for i in idx))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        return Mat._raw(self.field, r1 - r0, c1 - c0, tuple(r[c0:c1] for r in self.data[r0:r1]))

    # arithmetic ----------------------------------------------------------

    def _check_field(self, other: "Mat") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        f = self.field
        return Mat._raw(f, self.rows, self.cols,
                        tuple(tuple(f(a + b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "Mat":
        f = self.field
        return Mat._raw(f, self.rows, self.cols, tuple(tuple(f(-a) for a in r) for r in self.data))

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def scale(self, c) -> "Mat":
        f = self.field
        c = f(c)
        return Mat._raw(f, self.rows, self.cols, tuple(tuple(f(c * a) for a in r) for r in self.data))

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        ncols = other.cols
        odata = other.data
        # sparse rows of the right factor, computed once
        osparse = [[(j, b) for j, b in enumerate(r) if b] for r in odata]
        out = []
        zero = f.zero()
        for row in self.data:
            acc: dict[int, object] = {}
            for k, a in enumerate(row):
                if a:
                    for j, b in osparse[k]:
                        acc[j] = acc.get(j, 0) + a * b
            if acc:
                line = [zero] * ncols
                for j, x in acc.items():
                    line[j] = f(x)
                out.append(tuple(line))
            else:
                out.append((zero,) * ncols)
        return Mat._raw(f, self.rows, ncols, tuple(out))

    @property
    def T(self) -> "Mat":
        return Mat._raw(self.field, self.cols, self.rows, tuple(zip(*self.data)) if self.rows else
                        tuple(() for _ in range(self.cols)))

    # elimination -----------------------------------------------------------

    def rref(self) -> tuple["Mat", list[int]]:
        """Reduced row echelon form and pivot columns (first nonzero pivot)."""
        f = self.field
        m = [list(r) for r in self.data]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            piv = next((i for i in range(r, self.rows) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = f.inv(m[r][c])
            if inv != 1:
                m[r] = [f(x * inv) for x in m[r]]
            prow = m[r]
            nz = [(j, x) for j, x in enumerate(prow) if x and j >= c]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    fac = m[i][c]
                    row = m[i]
                    for j, x in nz:
                        row[j] = f(row[j] - fac * x)
            pivots.append(c)
            r += 1
        return Mat._raw(f, self.rows, self.cols, tuple(tuple(x) for x in m)), pivots

    def rank(self) -> int:
        return len(self.rref()[1])


def kernel(m: Mat) -> Mat:
    """Basis of the null space of ``m`` as the columns of a ``cols x k`` matrix."""
    f = m.field
    red, pivots = m.rref()
    free = [j for j in range(m.cols) if j not in set(pivots)]
    basis = []
    for fj in free:
        v = [f.zero()] * m.cols
        v[fj] = f.one()
        for r, pc in enumerate(pivots):
            v[pc] = f(-red.data[r][fj])
        basis.append(v)
    return Mat._raw(f, m.cols, len(basis), tuple(tuple(basis[k][i] for k in range(len(basis)))
                                                 for i in range(m.cols)))


def rank(m: Mat) -> int:
    return m.rank()


def solve_linear(a: Mat, b: Mat) -> Mat | None:
    """Some ``X`` with ``a @ X == b``, or ``None`` if inconsistent.

    Free variables are set to zero, so the choice is deterministic.
    """
    if a.rows != b.rows:
        raise DimensionError(f"solve: {a.shape} vs right-hand side {b.shape}")
    a._check_field(b)
    f = a.field
    aug = hstack([a, b])
    red, pivots = aug.rref()
    if any(p >= a.cols for p in pivots):
        return None
    x = [[f.zero()] * b.cols for _ in range(a.cols)]
    for r, pc in enumerate(pivots):
        x[pc] = list(red.data[r][a.cols:])
    return Mat._raw(f, a.cols, b.cols, tuple(tuple(r) for r in x))


def inverse(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise DimensionError("inverse of a non-square matrix")
    x = solve_linear(m, Mat.identity(m.field, m.rows))
    if x is None:
        raise ZeroDivisionError("matrix is singular")
    return x


def column_basis(m: Mat) -> Mat:
    """Linearly independent columns of ``m`` spanning its column space."""
    _, pivots = m.rref()
    return m.columns(pivots)


def extend_to_basis(m: Mat) -> Mat:
    """Extra standard basis columns completing the (independent) columns of ``m``."""
    f = m.field
    n = m.rows
    current = m
    extra = []
    r = current.rank()
    for i in range(n):
        if r == n:
            break
        e = Mat.from_sparse(f, n, 1, {(i, 0): 1})
        trial = hstack([current, e])
        rt = trial.rank()
        if rt > r:
            current, r = trial, rt
            extra.append(i)
    return Mat.from_sparse(f, n, len(extra), {(i, k): 1 for k, i in enumerate(extra)})


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product; row ``(i, k)`` is ``i * b.rows + k``, column ``(j, l)`` is ``j * b.cols + l``."""
    a._check_field(b)
    f = a.field
    zero = f.zero()
    rows = []
    bsp = [[(l, y) for l, y in enumerate(r) if y] for r in b.data]
    ncols = a.cols * b.cols
    for arow in a.data:
        anz = [(j, x) for j, x in enumerate(arow) if x]
        for k in range(b.rows):
            line = [zero] * ncols
            for j, x in anz:
                base = j * b.cols
                for l, y in bsp[k]:
                    line[base + l] = f(x * y)
            rows.append(tuple(line))
    return Mat._raw(f, a.rows * b.rows, ncols, tuple(rows))


def hstack(mats: Sequence[Mat]) -> Mat:
    if not mats:
        raise DimensionError("hstack of nothing")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise DimensionError("hstack: row counts differ")
    f = mats[0].field
    for m in mats:
        mats[0]._check_field(m)
    data = tuple(tuple(x for m in mats for x in m.data[i]) for i in range(rows))
    return Mat._raw(f, rows, sum(m.cols for m in mats), data)


def vstack(mats: Sequence[Mat]) -> Mat:
    if not mats:
        raise DimensionError("vstack of nothing")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise DimensionError("vstack: column counts differ")
    for m in mats:
        mats[0]._check_field(m)
    return Mat._raw(mats[0].field, sum(m.rows for m in mats), cols, tuple(r for m in mats for r in m.data))


def block_diag(mats: Sequence[Mat]) -> Mat:
    f = mats[0].field
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    entries = {}
    r0 = c0 = 0
    for m in mats:
        for (i, j), x in m.sparse().items():
            entries[(r0 + i, c0 + j)] = x
        r0 += m.rows
        c0 += m.cols
    return Mat.from_sparse(f, rows, cols, entries)


def permutation(field: Field, perm: Sequence[int]) -> Mat:
    """Matrix sending basis vector ``j`` to basis vector ``perm[j]``."""
    n = len(perm)
    return Mat.from_sparse(field, n, n, {(perm[j], j): 1 for j in range(n)})


def vec(m: Mat) -> Mat:
    """Row-major vectorisation as a column."""
    return Mat._raw(m.field, m.rows * m.cols, 1, tuple((x,) for r in m.data for x in r))


def unvec(v: Mat, rows: int, cols: int) -> Mat:
    flat = [r[0] for r in v.data]
    return Mat._raw(v.field, rows, cols, tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows)))


def random_mat(field: Field, rows: int, cols: int, rng, density: float = 1.0, bound: int = 3) -> Mat:
    data = [[field.random(rng, bound) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)]
    return Mat(field, rows, cols, data)
