"""Comodules over a bipartite coalgebra ``E`` versus triples ``(V_C, V_D, d')``.

A right ``E``-comodule ``W`` splits as ``W_C (+) W_D`` along the counit
idempotents of ``E``.  Its coaction then consists of a ``C``-coaction on
``W_C``, a ``D``-coaction on ``W_D`` and a map ``d: W_D -> W_C (x) M`` which
factors through the cotensor ``W_C []_C M``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .base import CoalgebraMismatchError, InternalAssertion, Verdict
from .base_change import Bipartite
from .comodule import (Comodule, ComoduleMorphism, check_comodule, check_morphism, cotensor,
                       cotensor_morphism)
from .linalg import Mat, column_basis, hstack, inverse, kron, permutation, solve_linear
from .matrix_comonad import Corners


@dataclass(frozen=True, eq=False)
class Triple:
    """``(vc, vd, dprime)`` with ``dprime: vd -> vc []_C M`` a ``D``-comodule map.

    ``frame`` (optional) records the basis of the original ``E``-comodule in
    which the ``C`` part comes first; ``from_triple`` uses it to return to the
    original coordinates.
    """

    bip: Bipartite
    vc: Comodule
    vd: Comodule
    dprime: ComoduleMorphism
    frame: Mat | None = None

    @property
    def dim(self) -> int:
        return self.vc.dim + self.vd.dim


def check_triple(t: Triple) -> Verdict:
    fails = []
    for name, v in (("vc", t.vc), ("vd", t.vd)):
        if not check_comodule(v):
            fails.append((f"{name}-comodule", None))
    if not check_morphism(t.dprime):
        fails.append(("dprime-morphism", None))
    return Verdict.collect(fails)


def _projector(bip: Bipartite, w: Comodule, which: str) -> Mat:
    return kron(w.id, bip.eps_block(which)) @ w.rho


def _is_coordinate_split(pc: Mat) -> bool:
    """``pc`` is diagonal with 0/1 entries, i.e. the basis is already adapted."""
    n = pc.rows
    return all(pc[i, j] == 0 for i in range(n) for j in range(n) if i != j) and \
        all(pc[i, i] in (0, 1) for i in range(n))


def to_triple(w: Comodule, bip: Bipartite) -> Triple:
    E = bip.E
    if w.over is not E and not w.over.same_as(E):
        raise CoalgebraMismatchError("comodule is not over the bipartite coalgebra")
    f = w.field
    nc, nd, nm = bip.C.dim, bip.D.dim, bip.M.dim
    dE = E.dim
    pc = _projector(bip, w, "C")
    pd = _projector(bip, w, "D")
    if _is_coordinate_split(pc):
        idx_c = [i for i in range(w.dim) if pc[i, i]]
        idx_d = [i for i in range(w.dim) if not pc[i, i]]
        frame = Mat.from_sparse(f, w.dim, w.dim, {(x, k): 1 for k, x in enumerate(idx_c + idx_d)})
    else:
        frame = hstack([column_basis(pc), column_basis(pd)])
    a = column_basis(pc).cols
    b = w.dim - a
    rho = kron(inverse(frame), E.id) @ w.rho @ frame
    # rows (x, e) with e in the C, D, M blocks
    rc = Mat.from_sparse(f, a * nc, a, {(x * nc + e, k): rho[x * dE + e, k]
                                         for x in range(a) for e in range(nc) for k in range(a)})
    rd = Mat.from_sparse(f, b * nd, b, {(y * nd + e, k): rho[(a + y) * dE + nc + e, a + k]
                                         for y in range(b) for e in range(nd) for k in range(b)})
    dmap = Mat.from_sparse(f, a * nm, b, {(x * nm + e, k): rho[x * dE + nc + nd + e, a + k]
                                           for x in range(a) for e in range(nm) for k in range(b)})
    vc = Comodule(bip.C, a, rc, f"{w.name}_C")
    vd = Comodule(bip.D, b, rd, f"{w.name}_D")
    cot = cotensor(vc, bip.M)
    dp = solve_linear(cot.inclusion, dmap)
    if dp is None:
        raise InternalAssertion("coaction block does not factor through the cotensor")
    identity = frame == Mat.identity(f, w.dim)
    return Triple(bip, vc, vd, ComoduleMorphism(vd, cot.comodule, dp), None if identity else frame)


def from_triple(t: Triple) -> Comodule:
    bip = t.bip
    if t.vc.over is not bip.C and not t.vc.over.same_as(bip.C) or \
            t.vd.over is not bip.D and not t.vd.over.same_as(bip.D):
        raise CoalgebraMismatchError("triple is not over the bipartite data")
    f = bip.E.field
    nc, nd, nm = bip.C.dim, bip.D.dim, bip.M.dim
    dE = bip.E.dim
    a, b = t.vc.dim, t.vd.dim
    n = a + b
    cot = cotensor(t.vc, bip.M)
    dmap = cot.inclusion @ t.dprime.mat
    ent = {}
    for (row, k), val in t.vc.rho.sparse().items():
        x, e = divmod(row, nc)
        ent[(x * dE + e, k)] = val
    for (row, k), val in t.vd.rho.sparse().items():
        y, e = divmod(row, nd)
        ent[((a + y) * dE + nc + e, a + k)] = val
    for (row, k), val in dmap.sparse().items():
        x, e = divmod(row, nm)
        ent[(x * dE + nc + nd + e, a + k)] = val
    rho = Mat.from_sparse(f, n * dE, n, ent)
    if t.frame is not None:
        rho = kron(t.frame, bip.E.id) @ rho @ inverse(t.frame)
    return Comodule(bip.E, n, rho, f"E({t.vc.name},{t.vd.name})")


def same_triple(s: Triple, t: Triple) -> bool:
    return (s.vc.rho == t.vc.rho and s.vd.rho == t.vd.rho and s.dprime.mat == t.dprime.mat
            and s.vc.dim == t.vc.dim and s.vd.dim == t.vd.dim)


# ---------------------------------------------------------------------------
# morphisms


def triple_morphism(f: ComoduleMorphism, src: Triple, dst: Triple):
    """Blockwise components ``(f_C, f_D, (dc, cd))`` of an ``E``-comodule map in the triples' frames.

    ``dc`` and ``cd`` are the off-diagonal blocks, which vanish for comodule maps.
    """
    fr_s = src.frame if src.frame is not None else Mat.identity(f.src.field, f.src.dim)
    fr_d = dst.frame if dst.frame is not None else Mat.identity(f.dst.field, f.dst.dim)
    g = inverse(fr_d) @ f.mat @ fr_s
    a, a2 = src.vc.dim, dst.vc.dim
    fc = g.block(0, a2, 0, a)
    fd = g.block(a2, g.rows, a, g.cols)
    off = (g.block(a2, g.rows, 0, a), g.block(0, a2, a, g.cols))
    return ComoduleMorphism(src.vc, dst.vc, fc), ComoduleMorphism(src.vd, dst.vd, fd), off


def check_triple_morphism(f: ComoduleMorphism, src: Triple, dst: Triple) -> Verdict:
    """Both squares: ``f_C``, ``f_D`` are comodule maps and ``d'_dst f_D = (f_C [] M) d'_src``."""
    fc, fd, off = triple_morphism(f, src, dst)
    fails = []
    if not all(m.is_zero() for m in off):
        fails.append(("block-structure", None))
    if not check_morphism(fc):
        fails.append(("C-square", None))
    if not check_morphism(fd):
        fails.append(("D-square", None))
    if not fails:
        fm = cotensor_morphism(fc, src.bip.M)
        if dst.dprime.mat @ fd.mat != fm.mat @ src.dprime.mat:
            fails.append(("connecting-square", None))
    return Verdict.collect(fails)


# ---------------------------------------------------------------------------
# n >= 3 through corners


def to_corner_comodule(w: Comodule, c: Corners, bip: Bipartite | None = None) -> Comodule:
    """Transport a comodule over ``total_coalgebra(c.source)`` to the bipartite corner coalgebra."""
    bip = bip or c.bipartite()
    perm = c.total_permutation()
    P = permutation(w.field, perm)
    return Comodule(bip.E, w.dim, kron(w.id, P) @ w.rho, w.name)


def from_corner_comodule(w: Comodule, c: Corners, total) -> Comodule:
    perm = c.total_permutation()
    P = permutation(w.field, perm)
    return Comodule(total, w.dim, kron(w.id, P.T) @ w.rho, w.name)
