"""Matrix comonads of tensor type: families ``{M_ij, phi_ikj, eps_i}``.

Conventions (0-based indices throughout):

* ``phi[(i, k, j)]`` is the map ``M_ij -> M_ik (x) M_kj`` (path order), stored
  as a ``(dim_ik * dim_kj) x dim_ij`` matrix.  Missing keys are zero maps.
* ``M_ii`` is a coalgebra with ``Delta = phi_iii`` and counit ``eps[i]``.
* ``M_ij`` is an ``M_ii``-``M_jj`` bicomodule with ``lam = phi_iij`` and
  ``rho = phi_ijj``.
* Triangular means ``M_ij = 0`` whenever ``j < i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .base import DimensionError, Verdict
from .base_change import Bipartite, RCoalgebra, base_change_coalgebra, product_ring
from .coalgebra import Coalgebra
from .comodule import Bicomodule
from .linalg import Field, Mat, kron, permutation


@dataclass(frozen=True, eq=False)
class MatrixComonadData:
    field: Field
    n: int
    dims: tuple
    phi: Mapping
    eps: tuple
    name: str = ""

    def __post_init__(self):
        n = self.n
        if len(self.dims) != n or any(len(r) != n for r in self.dims):
            raise DimensionError("dims must be n x n")
        for (i, k, j), m in self.phi.items():
            want = (self.dims[i][k] * self.dims[k][j], self.dims[i][j])
            if m.shape != want:
                raise DimensionError(f"phi{(i, k, j)} has shape {m.shape}, expected {want}")
        for i in range(n):
            if self.eps[i].shape != (1, self.dims[i][i]):
                raise DimensionError(f"eps[{i}] has shape {self.eps[i].shape}")

    def dim(self, i: int, j: int) -> int:
        return self.dims[i][j]

    def get_phi(self, i: int, k: int, j: int) -> Mat:
        m = self.phi.get((i, k, j))
        if m is None:
            m = Mat.zeros(self.field, self.dims[i][k] * self.dims[k][j], self.dims[i][j])
        return m

    def diag(self, i: int) -> Coalgebra:
        return Coalgebra(self.field, self.dims[i][i], self.get_phi(i, i, i), self.eps[i], f"{self.name}[{i}{i}]")

    def off(self, i: int, j: int) -> Bicomodule:
        return Bicomodule(self.diag(i), self.diag(j), self.dims[i][j],
                          self.get_phi(i, i, j), self.get_phi(i, j, j), f"{self.name}[{i}{j}]")

    def with_phi(self, key, mat: Mat) -> "MatrixComonadData":
        phi = dict(self.phi)
        phi[key] = mat
        return MatrixComonadData(self.field, self.n, self.dims, phi, self.eps, self.name)

    def with_eps(self, i: int, mat: Mat) -> "MatrixComonadData":
        eps = list(self.eps)
        eps[i] = mat
        return MatrixComonadData(self.field, self.n, self.dims, self.phi, tuple(eps), self.name)


def check_comonad(d: MatrixComonadData) -> Verdict:
    """Coassociativity squares at every ``(i, k, l, j)`` and both counit triangles.

    Square: ``(I_{M_ik} (x) phi_klj) phi_ikj = (phi_ikl (x) I_{M_lj}) phi_ilj``.
    Counits: ``(I (x) eps_j) phi_ijj = id = (eps_i (x) I) phi_iij``.
    """
    f = d.field
    n = d.n
    fails = []
    for i, k, l, j in product(range(n), repeat=4):
        if d.dims[i][j] == 0:
            continue
        lhs = kron(Mat.identity(f, d.dims[i][k]), d.get_phi(k, l, j)) @ d.get_phi(i, k, j)
        rhs = kron(d.get_phi(i, k, l), Mat.identity(f, d.dims[l][j])) @ d.get_phi(i, l, j)
        if lhs != rhs:
            fails.append(("coassociativity", (i, k, l, j)))
    for i, j in product(range(n), repeat=2):
        dij = d.dims[i][j]
        if dij == 0:
            continue
        I = Mat.identity(f, dij)
        if kron(I, d.eps[j]) @ d.get_phi(i, j, j) != I:
            fails.append(("counit-right", (i, j)))
        if kron(d.eps[i], I) @ d.get_phi(i, i, j) != I:
            fails.append(("counit-left", (i, j)))
    return Verdict.collect(fails)


def check_cotensor_factorization(d: MatrixComonadData) -> Verdict:
    """``phi_ikj`` lands in ``M_ik []_{M_kk} M_kj``."""
    f = d.field
    fails = []
    for i, k, j in product(range(d.n), repeat=3):
        if d.dims[i][j] == 0 or d.dims[i][k] * d.dims[k][j] == 0:
            continue
        eq = kron(d.get_phi(i, k, k), Mat.identity(f, d.dims[k][j])) - \
            kron(Mat.identity(f, d.dims[i][k]), d.get_phi(k, k, j))
        if not (eq @ d.get_phi(i, k, j)).is_zero():
            fails.append(("cotensor-factorization", (i, k, j)))
    return Verdict.collect(fails)


def is_triangular(d: MatrixComonadData) -> bool:
    return all(d.dims[i][j] == 0 for i in range(d.n) for j in range(i))


def is_normal(d: MatrixComonadData) -> bool:
    return all(d.diag(i).is_trivial() for i in range(d.n))


# ---------------------------------------------------------------------------
# constructors


def from_blocks(field: Field, diag, off: Mapping, extra_phi: Mapping | None = None,
                name: str = "") -> MatrixComonadData:
    """Assemble data from diagonal coalgebras, off-diagonal bicomodules and the remaining phi."""
    n = len(diag)
    dims = [[0] * n for _ in range(n)]
    phi = {}
    eps = []
    for i, c in enumerate(diag):
        dims[i][i] = c.dim
        phi[(i, i, i)] = c.delta
        eps.append(c.eps)
    for (i, j), m in off.items():
        dims[i][j] = m.dim
        phi[(i, i, j)] = m.lam
        phi[(i, j, j)] = m.rho
    for key, mat in (extra_phi or {}).items():
        phi[key] = mat
    return MatrixComonadData(field, n, tuple(tuple(r) for r in dims), phi, tuple(eps), name)


def bipartite_data(C: Coalgebra, D: Coalgebra, M: Bicomodule, name: str = "") -> MatrixComonadData:
    return from_blocks(C.field, [C, D], {(0, 1): M}, name=name)


# ---------------------------------------------------------------------------
# total coalgebra


def block_order(d: MatrixComonadData) -> list[tuple[int, int]]:
    """Diagonal blocks first, then off-diagonal blocks in lexicographic order."""
    n = d.n
    return [(i, i) for i in range(n)] + [(i, j) for i in range(n) for j in range(n) if i != j]


def block_offsets(d: MatrixComonadData) -> dict[tuple[int, int], int]:
    off = {}
    pos = 0
    for b in block_order(d):
        off[b] = pos
        pos += d.dims[b[0]][b[1]]
    return off


def total_labels(d: MatrixComonadData) -> list[tuple[int, int, int]]:
    """``(i, j, t)`` for the ``t``-th basis vector of ``M_ij``, in total-basis order."""
    return [(i, j, t) for (i, j) in block_order(d) for t in range(d.dims[i][j])]


def total_rcoalgebra(d: MatrixComonadData) -> RCoalgebra:
    """The ``K^n``-coalgebra ``E = (+) M_ij`` with ``Delta = sum_k phi_ikj``."""
    f = d.field
    off = block_offsets(d)
    labels = total_labels(d)
    dim = len(labels)
    entries = {}
    for (i, k, j), mat in d.phi.items():
        if d.dims[i][j] == 0:
            continue
        dkj = d.dims[k][j]
        for (row, x), val in mat.sparse().items():
            y, z = divmod(row, dkj)
            key = ((off[(i, k)] + y) * dim + off[(k, j)] + z, off[(i, j)] + x)
            entries[key] = entries.get(key, 0) + val
    eps = {}
    for i in range(d.n):
        for (_, x), val in d.eps[i].sparse().items():
            eps[(i, off[(i, i)] + x)] = val
    left = tuple(i for i, _, _ in labels)
    right = tuple(j for _, j, _ in labels)
    return RCoalgebra(f, d.n, dim, left, right, Mat.from_sparse(f, dim * dim, dim, entries),
                      Mat.from_sparse(f, d.n, dim, eps), d.name)


def total_coalgebra(d: MatrixComonadData, check: bool = False) -> Coalgebra:
    """Base change of the ``K^n``-coalgebra along ``psi = sum`` (Casimir ``sum u_a (x) u_a``).

    With ``check=False`` the result is assembled even for data failing the
    comonad axioms, so that the two sides of the correspondence can be compared.
    """
    return base_change_coalgebra(total_rcoalgebra(d), product_ring(d.field, d.n), check=check)


def relabel(c: Coalgebra, perm, name: str = "") -> Coalgebra:
    """Coalgebra transported along ``e_x -> e_perm[x]``."""
    P = permutation(c.field, perm)
    Pi = P.T
    return Coalgebra(c.field, c.dim, kron(P, P) @ c.delta @ Pi, c.eps @ Pi, name or c.name)


# ---------------------------------------------------------------------------
# corners


@dataclass(frozen=True, eq=False)
class Corners:
    """Re-partition of triangular data at ``m``.

    ``connecting`` is the bicomodule ``(+)_{i < m <= j} M_ij`` over the total
    coalgebras of ``lower`` (left) and ``upper`` (right); ``blocks`` lists
    its blocks in basis order.
    """

    source: MatrixComonadData
    m: int
    lower: MatrixComonadData
    upper: MatrixComonadData
    connecting: Bicomodule
    blocks: tuple

    def bipartite(self) -> Bipartite:
        from .base_change import build_bipartite
        C, D = self.connecting.left, self.connecting.right
        return build_bipartite(C, D, self.connecting, f"{self.source.name}@{self.m}")

    def total_permutation(self) -> list[int]:
        """Position in ``bipartite().E`` of each basis vector of ``total_coalgebra(source)``."""
        pos = {}
        base = 0
        for part, shift in ((self.lower, 0), (self.upper, self.m)):
            for (i, j, t) in total_labels(part):
                pos[(i + shift, j + shift, t)] = base
                base += 1
        for (i, j) in self.blocks:
            for t in range(self.source.dims[i][j]):
                pos[(i, j, t)] = base
                base += 1
        return [pos[lab] for lab in total_labels(self.source)]


def _sub(d: MatrixComonadData, idx: list[int], name: str) -> MatrixComonadData:
    r = len(idx)
    dims = tuple(tuple(d.dims[a][b] for b in idx) for a in idx)
    phi = {}
    for (i, k, j), mat in d.phi.items():
        if i in idx and k in idx and j in idx:
            phi[(idx.index(i), idx.index(k), idx.index(j))] = mat
    eps = tuple(d.eps[a] for a in idx)
    return MatrixComonadData(d.field, r, dims, phi, eps, name)


def corners(d: MatrixComonadData, m: int) -> Corners:
    if not 1 <= m < d.n:
        raise ValueError(f"corner index {m} out of range for n={d.n}")
    if not is_triangular(d):
        raise ValueError("corners requires triangular data")
    f = d.field
    lower = _sub(d, list(range(m)), f"{d.name}<{m}")
    upper = _sub(d, list(range(m, d.n)), f"{d.name}>={m}")
    Cl = total_coalgebra(lower)
    Cu = total_coalgebra(upper)
    offl = block_offsets(lower)
    offu = block_offsets(upper)
    blocks = tuple((i, j) for i in range(m) for j in range(m, d.n) if d.dims[i][j])
    offc = {}
    pos = 0
    for b in blocks:
        offc[b] = pos
        pos += d.dims[b[0]][b[1]]
    dim = pos
    lam = {}
    rho = {}
    for (i, j) in blocks:
        for k in range(d.n):
            mat = d.phi.get((i, k, j))
            if mat is None:
                continue
            dkj = d.dims[k][j]
            for (row, x), val in mat.sparse().items():
                y, z = divmod(row, dkj)
                col = offc[(i, j)] + x
                if k < m:
                    # y in M_ik (lower), z in M_kj (connecting)
                    key = ((offl[(i, k)] + y) * dim + offc[(k, j)] + z, col)
                    lam[key] = lam.get(key, 0) + val
                else:
                    key = ((offc[(i, k)] + y) * Cu.dim + offu[(k - m, j - m)] + z, col)
                    rho[key] = rho.get(key, 0) + val
    conn = Bicomodule(Cl, Cu, dim, Mat.from_sparse(f, Cl.dim * dim, dim, lam),
                      Mat.from_sparse(f, dim * Cu.dim, dim, rho), f"{d.name}^{m}")
    return Corners(d, m, lower, upper, conn, blocks)


def reassemble(c: Corners) -> MatrixComonadData:
    """Recover the original family from the corner decomposition."""
    d, m = c.source, c.m
    n = d.n
    f = d.field
    dims = [[0] * n for _ in range(n)]
    phi = {}
    for part, shift in ((c.lower, 0), (c.upper, m)):
        for a in range(part.n):
            for b in range(part.n):
                dims[a + shift][b + shift] = part.dims[a][b]
        for (i, k, j), mat in part.phi.items():
            phi[(i + shift, k + shift, j + shift)] = mat
    for (i, j) in c.blocks:
        dims[i][j] = d.dims[i][j]
    offl = block_offsets(c.lower)
    offu = block_offsets(c.upper)
    offc = {}
    pos = 0
    for b in c.blocks:
        offc[b] = pos
        pos += dims[b[0]][b[1]]
    conn = c.connecting
    Cu_dim = conn.right.dim
    for (i, j) in c.blocks:
        for k in range(i, j + 1):
            if dims[i][k] == 0 or dims[k][j] == 0:
                continue
            ent = {}
            for x in range(dims[i][j]):
                col = offc[(i, j)] + x
                for y in range(dims[i][k]):
                    for z in range(dims[k][j]):
                        if k < m:
                            val = conn.lam[(offl[(i, k)] + y) * conn.dim + offc[(k, j)] + z, col]
                        else:
                            val = conn.rho[(offc[(i, k)] + y) * Cu_dim + offu[(k - m, j - m)] + z, col]
                        if val:
                            ent[(y * dims[k][j] + z, x)] = val
            phi[(i, k, j)] = Mat.from_sparse(f, dims[i][k] * dims[k][j], dims[i][j], ent)
    eps = tuple(list(c.lower.eps) + list(c.upper.eps))
    return MatrixComonadData(f, n, tuple(tuple(r) for r in dims), phi, eps, d.name)


def same_data(a: MatrixComonadData, b: MatrixComonadData) -> bool:
    """Equality of families, treating missing phi keys as zero maps."""
    if a.field != b.field or a.n != b.n or a.dims != b.dims or a.eps != b.eps:
        return False
    return all(a.get_phi(*key) == b.get_phi(*key) for key in product(range(a.n), repeat=3))
