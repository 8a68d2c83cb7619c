"""Frobenius base change from coalgebras over ``R = K^n`` to coalgebras over ``K``.

An ``R``-coalgebra over ``K^n`` is stored componentwise: every basis vector
``x`` lies in ``u_l E u_r`` for a left index ``l`` and a right index ``r``,
where the ``u_a`` are the primitive idempotents of ``K^n``.  The tensor
product over ``R`` is then spanned by the pairs ``y (x) z`` with
``right(y) == left(z)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .base import AxiomError, DimensionError, FieldMismatchError, Verdict
from .coalgebra import Coalgebra, first_bad_column
from .comodule import Bicomodule, check_bicomodule
from .linalg import Field, Mat, inverse, kron, solve_linear


@dataclass(frozen=True, eq=False)
class FrobeniusData:
    """Commutative Frobenius algebra ``R`` with functional ``psi`` and Casimir element.

    ``casimir`` is ``rdim^2 x 1``; its entry at ``a * rdim + b`` is the
    coefficient of ``e_a (x) e_b``.
    """

    field: Field
    rdim: int
    mul: Mat
    unit: Mat
    psi: Mat
    casimir: Mat

    def gram(self) -> Mat:
        return gram_matrix(self.mul, self.psi)


def gram_matrix(mul: Mat, psi: Mat) -> Mat:
    r = psi.cols
    return Mat(mul.field, r, r, [[(psi @ mul.columns([a * r + b]))[0, 0] for b in range(r)]
                                  for a in range(r)])


def _unit_of(mul: Mat) -> Mat:
    """Solve for the unit: ``mul (u (x) e_b) = e_b`` for every ``b``."""
    f = mul.field
    r = mul.rows
    # mul (u (x) e_b) = sum_a u_a mul[:, a*r+b]; stack the conditions over b
    lhs = Mat.from_sparse(f, r * r, r, {(b * r + row, a): val
                                        for (row, col), val in mul.sparse().items()
                                        for a, b in [divmod(col, r)]})
    rhs = Mat.from_sparse(f, r * r, 1, {(b * r + b, 0): 1 for b in range(r)})
    u = solve_linear(lhs, rhs)
    if u is None:
        raise AxiomError("algebra has no unit")
    return u


def casimir_from_psi(mul: Mat, psi: Mat) -> Mat:
    """Casimir element ``sum_a e_a (x) g_a`` with ``{g_a}`` the ``psi``-dual basis."""
    r = psi.cols
    G = gram_matrix(mul, psi)
    if G.rank() != r:
        raise AxiomError("not Frobenius for this psi: Gram matrix is singular")
    Gi = inverse(G)
    return Mat.from_sparse(mul.field, r * r, 1, {(a * r + b, 0): Gi[b, a] for a in range(r) for b in range(r)})


def check_casimir(mul: Mat, unit: Mat, psi: Mat, casimir: Mat) -> Verdict:
    f = mul.field
    r = psi.cols
    I = Mat.identity(f, r)
    fails = []
    if kron(psi, I) @ casimir != unit:
        fails.append(("casimir-counit", None))
    for x in range(r):
        ex = Mat.from_sparse(f, r, 1, {(x, 0): 1})
        Lx = mul @ kron(ex, I)
        if kron(Lx, I) @ casimir != kron(I, Lx) @ casimir:
            fails.append(("casimir-symmetry", x))
            break
    return Verdict.collect(fails)


def frobenius(field: Field, mul: Mat, psi: Mat, casimir: Mat | None = None) -> FrobeniusData:
    """Validate ``(R, psi)`` and compute the Casimir element.

    A user-supplied ``casimir`` must agree with the recomputed one.
    """
    r = psi.cols
    if mul.shape != (r, r * r) or psi.shape != (1, r):
        raise DimensionError("Frobenius data has inconsistent shapes")
    I = Mat.identity(field, r)
    if mul @ kron(mul, I) != mul @ kron(I, mul):
        raise AxiomError("R is not associative")
    swap = mul.columns([j * r + i for i in range(r) for j in range(r)])
    if swap != mul:
        raise AxiomError("R is not commutative")
    unit = _unit_of(mul)
    if mul @ kron(I, unit) != I:
        raise AxiomError("R is not unital")
    c = casimir_from_psi(mul, psi)
    if casimir is not None and casimir != c:
        raise AxiomError("supplied Casimir element does not match the one computed from psi")
    v = check_casimir(mul, unit, psi, c)
    if not v:
        raise AxiomError(f"Casimir check failed: {v.axiom}", v)
    return FrobeniusData(field, r, mul, unit, psi, c)


def product_ring(field: Field, n: int, weights=None) -> FrobeniusData:
    """``K^n`` with ``psi(x) = sum_a w_a x_a`` (all weights 1 by default)."""
    weights = [1] * n if weights is None else list(weights)
    mul = Mat.from_sparse(field, n, n * n, {(a, a * n + a): 1 for a in range(n)})
    psi = Mat.from_sparse(field, 1, n, {(0, a): w for a, w in enumerate(weights)})
    return frobenius(field, mul, psi)


# ---------------------------------------------------------------------------
# coalgebras over K^n


@dataclass(frozen=True, eq=False)
class RCoalgebra:
    """Coalgebra over ``K^n`` stored componentwise.

    ``delta`` uses the ``K``-basis pair index ``y * dim + z`` and must be
    supported on pairs with ``right[y] == left[z]``.  ``eps`` is ``n x dim``
    with ``eps[a, x]`` the ``u_a``-coefficient of ``eps(x)``.
    """

    field: Field
    n: int
    dim: int
    left: tuple
    right: tuple
    delta: Mat
    eps: Mat
    name: str = ""

    def __post_init__(self):
        if len(self.left) != self.dim or len(self.right) != self.dim:
            raise DimensionError("component labels must cover the basis")
        if self.delta.shape != (self.dim ** 2, self.dim) or self.eps.shape != (self.n, self.dim):
            raise DimensionError("R-coalgebra structure constants have the wrong shape")


def check_rcoalgebra(e: RCoalgebra) -> Verdict:
    d = e.dim
    fails = []
    for (row, x), _ in e.delta.sparse().items():
        y, z = divmod(row, d)
        if e.right[y] != e.left[z] or e.left[y] != e.left[x] or e.right[z] != e.right[x]:
            fails.append(("R-bilinearity", x))
            break
    for (a, x), _ in e.eps.sparse().items():
        if not (a == e.left[x] == e.right[x]):
            fails.append(("R-bilinearity", x))
            break
    f = e.field
    # (eps (x)_R I) delta: u_a . z keeps z when left(z) = a
    cl = {}
    cr = {}
    for (row, x), val in e.delta.sparse().items():
        y, z = divmod(row, d)
        s = e.eps[e.left[z], y]
        if s:
            cl[(z, x)] = cl.get((z, x), 0) + val * s
        s = e.eps[e.right[y], z]
        if s:
            cr[(y, x)] = cr.get((y, x), 0) + val * s
    I = Mat.identity(f, d)
    j = first_bad_column(Mat.from_sparse(f, d, d, cl), I)
    if j is not None:
        fails.append(("counit-left", j))
    j = first_bad_column(Mat.from_sparse(f, d, d, cr), I)
    if j is not None:
        fails.append(("counit-right", j))
    j = first_bad_column(kron(e.delta, I) @ e.delta, kron(I, e.delta) @ e.delta)
    if j is not None:
        fails.append(("coassociativity", j))
    return Verdict.collect(fails)


def base_change_coalgebra(e: RCoalgebra, frob: FrobeniusData, check: bool = True) -> Coalgebra:
    """``Delta~(x) = sum x_(1) e_i (x) f_i x_(2)`` and ``eps~ = psi o eps``."""
    if e.field != frob.field:
        raise FieldMismatchError("R-coalgebra and Frobenius data over different fields")
    if frob.rdim != e.n or frob.mul != product_ring(e.field, e.n).mul:
        raise DimensionError("base change is implemented for R = K^n in its idempotent basis")
    if check:
        v = check_rcoalgebra(e)
        if not v:
            raise AxiomError(f"not an R-coalgebra: {v.axiom} at {v.witness}", v)
    d, n = e.dim, e.n
    c = frob.casimir
    entries = {}
    for (row, x), val in e.delta.sparse().items():
        y, z = divmod(row, d)
        # y . e_a is y when right(y) = a, and f_b . z is z when left(z) = b
        w = c[e.right[y] * n + e.left[z], 0]
        if w:
            entries[(row, x)] = val * w
    delta = Mat.from_sparse(e.field, d * d, d, entries)
    eps = frob.psi @ e.eps
    return Coalgebra(e.field, d, delta, eps, e.name)


# ---------------------------------------------------------------------------
# bipartite coalgebras


def bipartite_rcoalgebra(C: Coalgebra, D: Coalgebra, M: Bicomodule, name: str = "") -> RCoalgebra:
    """The ``K x K``-coalgebra ``[[C, 0], [M, D]]`` with basis order ``C, D, M``."""
    if M.left is not C and not M.left.same_as(C) or M.right is not D and not M.right.same_as(D):
        raise AxiomError("bicomodule is not over (C, D)")
    f = C.field
    nc, nd, nm = C.dim, D.dim, M.dim
    d = nc + nd + nm
    oc, od, om = 0, nc, nc + nd
    entries = {}
    for (row, k), val in C.delta.sparse().items():
        i, j = divmod(row, nc)
        entries[((oc + i) * d + oc + j, oc + k)] = val
    for (row, k), val in D.delta.sparse().items():
        i, j = divmod(row, nd)
        entries[((od + i) * d + od + j, od + k)] = val
    for (row, k), val in M.lam.sparse().items():
        c, m = divmod(row, nm)
        key = ((oc + c) * d + om + m, om + k)
        entries[key] = entries.get(key, 0) + val
    for (row, k), val in M.rho.sparse().items():
        m, dd = divmod(row, nd)
        key = ((om + m) * d + od + dd, om + k)
        entries[key] = entries.get(key, 0) + val
    eps = {}
    for (_, k), val in C.eps.sparse().items():
        eps[(0, oc + k)] = val
    for (_, k), val in D.eps.sparse().items():
        eps[(1, od + k)] = val
    left = (0,) * nc + (1,) * nd + (0,) * nm
    right = (0,) * nc + (1,) * nd + (1,) * nm
    return RCoalgebra(f, 2, d, left, right, Mat.from_sparse(f, d * d, d, entries),
                      Mat.from_sparse(f, 2, d, eps), name)


def bipartite_coalgebra(C: Coalgebra, D: Coalgebra, M: Bicomodule, name: str = "") -> Coalgebra:
    """Direct assembly of the bipartite ``K``-coalgebra, basis order ``C, D, M``.

    ``Delta(c) = c1 (x) c2``, ``Delta(d) = d1 (x) d2``,
    ``Delta(m) = m(-1) (x) m(0) + m(0) (x) m(1)``, ``eps = eps_C + eps_D``.
    """
    f = C.field
    nc, nd, nm = C.dim, D.dim, M.dim
    d = nc + nd + nm
    rows = [[f.zero()] * d for _ in range(d * d)]

    def put(y, z, x, val):
        rows[y * d + z][x] += val

    for k in range(nc):
        for (i, j), val in C.comultiply(k).items():
            put(i, j, k, val)
    for k in range(nd):
        for (i, j), val in D.comultiply(k).items():
            put(nc + i, nc + j, nc + k, val)
    for k in range(nm):
        for r, val in enumerate(M.lam.col(k)):
            if val:
                c, m = divmod(r, nm)
                put(c, nc + nd + m, nc + nd + k, val)
        for r, val in enumerate(M.rho.col(k)):
            if val:
                m, dd = divmod(r, nd)
                put(nc + nd + m, nc + dd, nc + nd + k, val)
    eps = [list(C.eps.to_lists()[0]) + list(D.eps.to_lists()[0]) + [f.zero()] * nm]
    return Coalgebra(f, d, Mat(f, d * d, d, rows), Mat(f, 1, d, eps), name)


@dataclass(frozen=True, eq=False)
class Bipartite:
    """Bipartite data ``(C, D, M)`` together with its total coalgebra ``E``."""

    C: Coalgebra
    D: Coalgebra
    M: Bicomodule
    E: Coalgebra
    name: str = ""

    @property
    def offsets(self) -> tuple[int, int, int]:
        return 0, self.C.dim, self.C.dim + self.D.dim

    def eps_block(self, which: str) -> Mat:
        """Counit of ``E`` restricted to the ``C`` or ``D`` block, as a ``1 x dim E`` row."""
        f = self.E.field
        nc = self.C.dim
        if which == "C":
            ent = {(0, k): v for (_, k), v in self.C.eps.sparse().items()}
        else:
            ent = {(0, nc + k): v for (_, k), v in self.D.eps.sparse().items()}
        return Mat.from_sparse(f, 1, self.E.dim, ent)


def build_bipartite(C: Coalgebra, D: Coalgebra, M: Bicomodule, name: str = "",
                    route: str = "direct") -> Bipartite:
    if C.field != D.field or C.field != M.left.field:
        raise FieldMismatchError("bipartite data over different fields")
    v = check_bicomodule(M)
    if not v:
        raise AxiomError(f"bicomodule fails {v.axiom} at {v.witness}", v)
    if route == "direct":
        E = bipartite_coalgebra(C, D, M, name)
    else:
        E = base_change_coalgebra(bipartite_rcoalgebra(C, D, M, name), product_ring(C.field, 2))
    return Bipartite(C, D, M, E, name)
