"""Homological dimensions of comodule categories via left modules over the dual algebra.

For a finite-dimensional coalgebra ``C`` the right ``C``-comodules are the
left ``C*``-modules, with ``a . v = (I (x) a) rho(v)``.  Every test here is
exact: projectivity is vanishing of ``Ext^1(-, A/rad A)``, injectivity is
vanishing of ``Ext^1(A/rad A, -)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

from .base import AxiomError, DimensionError, RadicalRefusal
from .coalgebra import Algebra, Coalgebra, dual_algebra
from .comodule import Comodule
from .linalg import (Mat, column_basis, extend_to_basis, hstack, inverse, kernel, kron,
                     solve_linear, vec)

DEFAULT_CAP = 16


@dataclass(frozen=True, eq=False)
class AlgebraModule:
    """Left module; column ``a * dim + x`` of ``action`` is ``e_a . e_x``."""

    over: Algebra
    dim: int
    action: Mat
    name: str = ""

    def __post_init__(self):
        if self.action.shape != (self.dim, self.over.dim * self.dim):
            raise DimensionError(f"action has shape {self.action.shape}")

    @property
    def field(self):
        return self.over.field

    def act(self, a: int) -> Mat:
        d = self.dim
        return self.action.columns([a * d + x for x in range(d)])

    def act_by(self, r: Mat) -> Mat:
        """Matrix of the action of the algebra element with coordinates ``r``."""
        return self.action @ kron(r, Mat.identity(self.field, self.dim))

    def __repr__(self) -> str:
        return f"AlgebraModule({self.name or '?'}, dim={self.dim})"


def check_module(x: AlgebraModule) -> bool:
    A = x.over
    I = Mat.identity(x.field, x.dim)
    if x.act_by(A.unit) != I:
        return False
    return x.action @ kron(A.mul, I) == x.action @ kron(Mat.identity(x.field, A.dim), x.action)


@dataclass(frozen=True)
class AtLeast:
    """Lower bound reported when no syzygy up to the cap was projective."""

    bound: int

    def __str__(self) -> str:
        return f">={self.bound}"


@dataclass
class HomReport:
    """Result of a dimension computation with its resolution data.

    ``stages[k]`` describes the k-th syzygy: its dimension, the number of
    generators of the free module mapping onto it, and whether it was found
    projective.  ``presentations[k]`` is ``(pi, incl)`` with
    ``pi: A^g -> Omega_k`` and ``incl: Omega_{k+1} -> A^g``.
    """

    quantity: str
    value: int | AtLeast
    stages: list = dc_field(default_factory=list)
    presentations: list = dc_field(default_factory=list)

    @property
    def finite(self) -> bool:
        return isinstance(self.value, int)

    def at_most(self, n: int) -> bool:
        return self.finite and self.value <= n

    def verify(self) -> bool:
        """Re-check exactness ``Omega_{k+1} -> A^g -> Omega_k -> 0`` at each stage."""
        for (pi, incl), stage in zip(self.presentations, self.stages):
            if not (pi @ incl).is_zero():
                return False
            if pi.rank() != stage["dim"] or incl.rank() != incl.cols:
                return False
            if incl.cols != pi.cols - pi.rows:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "value": self.value if self.finite else {"at_least": self.value.bound},
            "stages": self.stages,
        }


# ---------------------------------------------------------------------------
# conversions


@lru_cache(maxsize=512)
def cached_dual(c: Coalgebra) -> Algebra:
    return dual_algebra(c)


def comodule_to_module(v: Comodule) -> AlgebraModule:
    A = cached_dual(v.over)
    d, dc = v.dim, v.over.dim
    entries = {}
    for (r, k), x in v.rho.sparse().items():
        j, c = divmod(r, dc)
        entries[(j, c * d + k)] = x
    return AlgebraModule(A, d, Mat.from_sparse(v.field, d, dc * d, entries), v.name)


def module_to_comodule(x: AlgebraModule, c: Coalgebra) -> Comodule:
    if x.over.dim != c.dim:
        raise DimensionError("module is not over the dual of this coalgebra")
    d, dc = x.dim, c.dim
    entries = {}
    for (j, col), val in x.action.sparse().items():
        cc, k = divmod(col, d)
        entries[(j * dc + cc, k)] = val
    return Comodule(c, d, Mat.from_sparse(x.field, d * dc, d, entries), x.name)


# ---------------------------------------------------------------------------
# standard modules


def regular_module(A: Algebra) -> AlgebraModule:
    return AlgebraModule(A, A.dim, A.mul, "A")


def free_module(A: Algebra, g: int) -> AlgebraModule:
    d = A.dim
    n = g * d
    entries = {}
    for (k, col), x in A.mul.sparse().items():
        b, a = divmod(col, d)
        for i in range(g):
            entries[(i * d + k, b * n + i * d + a)] = x
    return AlgebraModule(A, n, Mat.from_sparse(A.field, n, d * n, entries), f"A^{g}")


def submodule(x: AlgebraModule, basis: Mat, name: str = "") -> AlgebraModule:
    """Module on the span of the independent columns of ``basis``."""
    A = x.over
    k = basis.cols
    blocks = []
    for a in range(A.dim):
        r = solve_linear(basis, x.act(a) @ basis)
        if r is None:
            raise AxiomError("subspace is not a submodule")
        blocks.append(r)
    action = hstack(blocks) if blocks else Mat.zeros(x.field, k, 0)
    return AlgebraModule(A, k, action, name)


def quotient_module(x: AlgebraModule, basis: Mat, name: str = "") -> tuple[AlgebraModule, Mat]:
    """Quotient by the submodule spanned by ``basis`` and the projection matrix."""
    A = x.over
    comp = extend_to_basis(basis)
    full = hstack([basis, comp]) if basis.cols else comp
    q = inverse(full).select_rows(list(range(basis.cols, x.dim)))
    blocks = [q @ x.act(a) @ comp for a in range(A.dim)]
    action = hstack(blocks) if blocks else Mat.zeros(x.field, comp.cols, 0)
    return AlgebraModule(A, comp.cols, action, name), q


def direct_sum_modules(parts: Sequence[AlgebraModule]) -> AlgebraModule:
    A = parts[0].over
    n = sum(p.dim for p in parts)
    entries = {}
    off = 0
    for p in parts:
        for (j, col), val in p.action.sparse().items():
            a, k = divmod(col, p.dim)
            entries[(off + j, a * n + off + k)] = val
        off += p.dim
    return AlgebraModule(A, n, Mat.from_sparse(A.field, n, A.dim * n, entries))


def dual_module(x: AlgebraModule) -> AlgebraModule:
    """Linear dual of a left ``A``-module as a left ``A^op``-module."""
    Aop = opposite_algebra(x.over)
    blocks = [x.act(a).T for a in range(x.over.dim)]
    action = hstack(blocks) if blocks else Mat.zeros(x.field, x.dim, 0)
    return AlgebraModule(Aop, x.dim, action, f"{x.name}*")


@lru_cache(maxsize=512)
def opposite_algebra(A: Algebra) -> Algebra:
    return A.opposite()


# ---------------------------------------------------------------------------
# hom spaces


def module_hom_constraints(x: AlgebraModule, y: AlgebraModule) -> Mat:
    """Conditions on ``vec(f)`` (row-major, ``f: x -> y``) for ``f`` to be ``A``-linear."""
    A = x.over
    dX, dY = x.dim, y.dim
    entries: dict[tuple[int, int], object] = {}
    for a in range(A.dim):
        base = a * dY * dX
        for (q, xx), val in x.act(a).sparse().items():
            for yy in range(dY):
                key = (base + yy * dX + xx, yy * dX + q)
                entries[key] = entries.get(key, 0) + val
        for (yy, p), val in y.act(a).sparse().items():
            for xx in range(dX):
                key = (base + yy * dX + xx, p * dX + xx)
                entries[key] = entries.get(key, 0) - val
    return Mat.from_sparse(x.field, A.dim * dY * dX, dY * dX, entries)


def hom_dimension(x: AlgebraModule, y: AlgebraModule) -> int:
    return x.dim * y.dim - module_hom_constraints(x, y).rank()


# ---------------------------------------------------------------------------
# radical


@dataclass(frozen=True, eq=False)
class Radical:
    algebra: Algebra
    basis: Mat

    @property
    def dim(self) -> int:
        return self.basis.cols


def _span_contains(span: Mat, vectors: Mat) -> bool:
    if vectors.cols == 0:
        return True
    if span.cols == 0:
        return vectors.is_zero()
    return hstack([span, vectors]).rank() == span.rank()


def trace_form(A: Algebra) -> Mat:
    Ls = [A.left_mult(a) for a in range(A.dim)]
    f = A.field
    rows = []
    for a in range(A.dim):
        row = []
        for b in range(A.dim):
            p = Ls[a] @ Ls[b]
            row.append(sum((p[i, i] for i in range(A.dim)), f.zero()))
        rows.append(row)
    return Mat(f, A.dim, A.dim, rows)


@lru_cache(maxsize=512)
def radical(A: Algebra) -> Radical:
    """Kernel of the trace form, certified to be the Jacobson radical.

    Certification: the kernel is a two-sided ideal, it is nilpotent, and the
    quotient algebra has a nondegenerate trace form (so it is semisimple).
    Raises :class:`RadicalRefusal` if any step fails.
    """
    f = A.field
    d = A.dim
    basis = kernel(trace_form(A))
    r = basis.cols
    for a in range(d):
        if not _span_contains(basis, A.left_mult(a) @ basis) or \
                not _span_contains(basis, A.right_mult(a) @ basis):
            raise RadicalRefusal(f"trace-form kernel is not an ideal over {f}")
    power = basis
    for _ in range(d + 1):
        if power.cols == 0:
            break
        prods = [A.mul @ kron(power.columns([i]), basis.columns([j]))
                 for i in range(power.cols) for j in range(r)]
        power = column_basis(hstack(prods))
    else:
        raise RadicalRefusal(f"trace-form kernel is not nilpotent over {f}")
    if power.cols:
        raise RadicalRefusal(f"trace-form kernel is not nilpotent over {f}")
    if r < d:
        quo = _quotient_algebra(A, basis)
        if trace_form(quo).rank() != quo.dim:
            raise RadicalRefusal(f"quotient trace form degenerate over {f}")
    return Radical(A, basis)


def _quotient_algebra(A: Algebra, ideal: Mat) -> Algebra:
    comp = extend_to_basis(ideal)
    full = hstack([ideal, comp]) if ideal.cols else comp
    q = inverse(full).select_rows(list(range(ideal.cols, A.dim)))
    n = comp.cols
    cols = []
    for i in range(n):
        for j in range(n):
            cols.append(q @ A.mul @ kron(comp.columns([i]), comp.columns([j])))
    mul = hstack(cols)
    return Algebra(A.field, n, mul, q @ A.unit)


def top_module(A: Algebra) -> AlgebraModule:
    """The semisimple module ``A / rad A``."""
    rad = radical(A)
    mod, _ = quotient_module(regular_module(A), rad.basis, "A/radA")
    return mod


def radical_of_module(x: AlgebraModule) -> Mat:
    """Basis of ``rad(A) . x``."""
    rad = radical(x.over)
    cols = [x.act_by(rad.basis.columns([i])) for i in range(rad.dim)]
    if not cols:
        return Mat.zeros(x.field, x.dim, 0)
    return column_basis(hstack(cols))


def minimal_generators(x: AlgebraModule) -> Mat:
    """Standard vectors whose images span ``x / rad(A) x`` (hence generate ``x``)."""
    return extend_to_basis(radical_of_module(x))


# ---------------------------------------------------------------------------
# presentations and Ext^1


@dataclass(frozen=True, eq=False)
class Presentation:
    """``0 -> syzygy -> A^g -> x -> 0`` with ``pi`` and the kernel inclusion."""

    module: AlgebraModule
    generators: Mat
    pi: Mat
    inclusion: Mat
    syzygy: AlgebraModule

    @property
    def g(self) -> int:
        return self.generators.cols


def present(x: AlgebraModule, generators: Mat | None = None) -> Presentation:
    A = x.over
    if generators is None:
        generators = Mat.identity(x.field, x.dim)
    g = generators.cols
    da = A.dim
    cols = []
    for i in range(g):
        gi = generators.columns([i])
        for a in range(da):
            cols.append(x.act(a) @ gi)
    pi = hstack(cols) if cols else Mat.zeros(x.field, x.dim, 0)
    if pi.rank() != x.dim:
        raise ValueError("generators do not generate the module")
    incl = kernel(pi)
    syz = submodule(free_module(A, g), incl, f"Omega({x.name})")
    return Presentation(x, generators, pi, incl, syz)


def _ext1_from_presentation(pres: Presentation, y: AlgebraModule) -> int:
    A = pres.module.over
    K = pres.syzygy
    if K.dim == 0:
        return 0
    hom_k = K.dim * y.dim - module_hom_constraints(K, y).rank()
    if hom_k == 0:
        return 0
    da = A.dim
    g = pres.g
    restricted = []
    for i in range(g):
        for j in range(y.dim):
            entries = {}
            for a in range(da):
                for (row, _), val in y.act(a).columns([j]).sparse().items():
                    entries[(row, i * da + a)] = val
            F = Mat.from_sparse(y.field, y.dim, g * da, entries)
            restricted.append(vec(F @ pres.inclusion))
    r = hstack(restricted).rank() if restricted else 0
    return hom_k - r


def ext1(x: AlgebraModule, y: AlgebraModule, generators: Mat | None = None) -> int:
    """``dim Ext^1_A(x, y)`` from a free presentation of ``x``.

    The default presentation uses the basis of ``x`` as generators.
    """
    if x.over is not y.over and not x.over.same_as(y.over):
        raise ValueError("modules over different algebras")
    return _ext1_from_presentation(present(x, generators), y)


def is_projective(x: AlgebraModule) -> bool:
    return _ext1_from_presentation(present(x, minimal_generators(x)), top_module(x.over)) == 0


def is_injective_module(x: AlgebraModule) -> bool:
    S = top_module(x.over)
    return _ext1_from_presentation(present(S, minimal_generators(S)), x) == 0


def is_injective_comodule(v: Comodule) -> bool:
    return is_injective_module(comodule_to_module(v))


def is_injective_via_dual(v: Comodule) -> bool:
    """Injectivity of ``v`` as projectivity of its dual over the opposite algebra."""
    return is_projective(dual_module(comodule_to_module(v)))


def proj_dim(x: AlgebraModule, cap: int = DEFAULT_CAP, quantity: str = "PdModule") -> HomReport:
    """Projective dimension by iterated syzygies of minimal-top presentations."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    S = top_module(x.over)
    report = HomReport(quantity, AtLeast(cap + 1))
    omega = x
    for k in range(cap + 1):
        if omega.dim == 0:
            report.stages.append({"k": k, "dim": 0, "generators": 0, "projective": True})
            report.value = k
            return report
        pres = present(omega, minimal_generators(omega))
        projective = _ext1_from_presentation(pres, S) == 0
        report.stages.append({"k": k, "dim": omega.dim, "generators": pres.g, "projective": projective})
        report.presentations.append((pres.pi, pres.inclusion))
        if projective:
            report.value = k
            return report
        omega = pres.syzygy
    return report


def inj_dim_comodule(v: Comodule, cap: int = DEFAULT_CAP) -> HomReport:
    """Injective dimension of ``v``: projective dimension of its dual over ``C*^op``."""
    return proj_dim(dual_module(comodule_to_module(v)), cap, "InjDimComodule")


def gl_dim(c: Coalgebra, cap: int = DEFAULT_CAP) -> HomReport:
    """Global dimension of right ``c``-comodules as ``pd`` of ``C*/rad C*``."""
    A = cached_dual(c)
    if c.dim == 0:
        return HomReport("GlDim", 0)
    return proj_dim(top_module(A), cap, "GlDim")
