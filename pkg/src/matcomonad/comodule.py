"""Right comodules, bicomodules, morphisms, the cotensor product and split epis."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .base import (AxiomError, CoalgebraMismatchError, DimensionError, InternalAssertion,
                   Verdict)
from .coalgebra import Coalgebra, first_bad_column
from .linalg import (Mat, column_basis, extend_to_basis, hstack, inverse, kernel, kron,
                     solve_linear, unvec, vstack)


def _same_coalgebra(a: Coalgebra, b: Coalgebra) -> bool:
    return a is b or a.same_as(b)


def _require_same(a: Coalgebra, b: Coalgebra) -> None:
    if not _same_coalgebra(a, b):
        raise CoalgebraMismatchError(f"{a!r} vs {b!r}")


@dataclass(frozen=True, eq=False)
class Comodule:
    """Right comodule; ``rho`` is ``(dim * C.dim) x dim`` in the ``V (x) C`` basis."""

    over: Coalgebra
    dim: int
    rho: Mat
    name: str = ""

    def __post_init__(self):
        if self.rho.shape != (self.dim * self.over.dim, self.dim):
            raise DimensionError(f"rho has shape {self.rho.shape}, expected "
                                 f"{(self.dim * self.over.dim, self.dim)}")

    @property
    def field(self):
        return self.over.field

    @property
    def id(self) -> Mat:
        return Mat.identity(self.field, self.dim)

    def same_as(self, other: "Comodule") -> bool:
        return _same_coalgebra(self.over, other.over) and self.dim == other.dim and self.rho == other.rho

    def with_name(self, name: str) -> "Comodule":
        return Comodule(self.over, self.dim, self.rho, name)

    def __repr__(self) -> str:
        return f"Comodule({self.name or '?'}, dim={self.dim}, over={self.over.name or '?'})"


@dataclass(frozen=True, eq=False)
class Bicomodule:
    """``C``-``D`` bicomodule: ``lam: M -> C (x) M`` and ``rho: M -> M (x) D``."""

    left: Coalgebra
    right: Coalgebra
    dim: int
    lam: Mat
    rho: Mat
    name: str = ""

    def __post_init__(self):
        if self.lam.shape != (self.left.dim * self.dim, self.dim):
            raise DimensionError(f"lam has shape {self.lam.shape}")
        if self.rho.shape != (self.dim * self.right.dim, self.dim):
            raise DimensionError(f"rho has shape {self.rho.shape}")

    @property
    def field(self):
        return self.left.field

    def right_comodule(self) -> Comodule:
        return Comodule(self.right, self.dim, self.rho, self.name)

    def same_as(self, other: "Bicomodule") -> bool:
        return (_same_coalgebra(self.left, other.left) and _same_coalgebra(self.right, other.right)
                and self.lam == other.lam and self.rho == other.rho)

    def __repr__(self) -> str:
        return f"Bicomodule({self.name or '?'}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class ComoduleMorphism:
    src: Comodule
    dst: Comodule
    mat: Mat

    def __post_init__(self):
        if self.mat.shape != (self.dst.dim, self.src.dim):
            raise DimensionError(f"morphism matrix {self.mat.shape} does not match "
                                 f"{self.src.dim} -> {self.dst.dim}")

    def __matmul__(self, other: "ComoduleMorphism") -> "ComoduleMorphism":
        return ComoduleMorphism(other.src, self.dst, self.mat @ other.mat)


# ---------------------------------------------------------------------------
# checkers


def check_comodule(v: Comodule) -> Verdict:
    C = v.over
    I = v.id
    fails = []
    j = first_bad_column(kron(I, C.eps) @ v.rho, I)
    if j is not None:
        fails.append(("counit", j))
    lhs = kron(v.rho, C.id) @ v.rho
    rhs = kron(I, C.delta) @ v.rho
    j = first_bad_column(lhs, rhs)
    if j is not None:
        fails.append(("coassociativity", j))
    return Verdict.collect(fails)


def check_bicomodule(m: Bicomodule) -> Verdict:
    C, D = m.left, m.right
    I = Mat.identity(m.field, m.dim)
    fails = []
    j = first_bad_column(kron(C.eps, I) @ m.lam, I)
    if j is not None:
        fails.append(("left-counit", j))
    j = first_bad_column(kron(C.delta, I) @ m.lam, kron(C.id, m.lam) @ m.lam)
    if j is not None:
        fails.append(("left-coassociativity", j))
    j = first_bad_column(kron(I, D.eps) @ m.rho, I)
    if j is not None:
        fails.append(("right-counit", j))
    j = first_bad_column(kron(m.rho, D.id) @ m.rho, kron(I, D.delta) @ m.rho)
    if j is not None:
        fails.append(("right-coassociativity", j))
    j = first_bad_column(kron(C.id, m.rho) @ m.lam, kron(m.lam, D.id) @ m.rho)
    if j is not None:
        fails.append(("compatibility", j))
    return Verdict.collect(fails)


def check_morphism(f: ComoduleMorphism) -> Verdict:
    _require_same(f.src.over, f.dst.over)
    C = f.src.over
    lhs = kron(f.mat, C.id) @ f.src.rho
    rhs = f.dst.rho @ f.mat
    j = first_bad_column(lhs, rhs)
    return Verdict.passed() if j is None else Verdict(False, "commutes-with-coaction", j, (("commutes-with-coaction", j),))


def require(verdict: Verdict, what) -> None:
    if not verdict:
        raise AxiomError(f"{what!r} fails {verdict.axiom} at {verdict.witness}", verdict)


# ---------------------------------------------------------------------------
# standard objects


def regular_comodule(C: Coalgebra) -> Comodule:
    return Comodule(C, C.dim, C.delta, f"{C.name}_reg")


def cofree_comodule(C: Coalgebra, n: int) -> Comodule:
    """``K^n (x) C`` with coaction ``I (x) Delta``; isomorphic to ``C^n``."""
    return Comodule(C, n * C.dim, kron(Mat.identity(C.field, n), C.delta), f"{C.name}^{n}")


def zero_comodule(C: Coalgebra) -> Comodule:
    return Comodule(C, 0, Mat.zeros(C.field, 0, 0), "0")


def trivial_comodule(C: Coalgebra, g: int) -> Comodule:
    """One-dimensional comodule ``v -> v (x) g`` for a grouplike basis element ``g``."""
    return Comodule(C, 1, Mat.from_sparse(C.field, C.dim, 1, {(g, 0): 1}), f"S_{g}")


def regular_bicomodule(C: Coalgebra) -> Bicomodule:
    return Bicomodule(C, C, C.dim, C.delta, C.delta, f"{C.name}_bireg")


def bicomodule_from_right(K: Coalgebra, v: Comodule) -> Bicomodule:
    """A right ``D``-comodule viewed as a ``K``-``D`` bicomodule over the trivial coalgebra ``K``."""
    if not K.is_trivial():
        raise ValueError("left coalgebra must be the trivial coalgebra")
    return Bicomodule(K, v.over, v.dim, Mat.identity(v.field, v.dim), v.rho, v.name)


def bicomodule_from_left(lam: Mat, C: Coalgebra, K: Coalgebra, dim: int, name: str = "") -> Bicomodule:
    """A left ``C``-comodule viewed as a ``C``-``K`` bicomodule."""
    if not K.is_trivial():
        raise ValueError("right coalgebra must be the trivial coalgebra")
    return Bicomodule(C, K, dim, lam, Mat.identity(C.field, dim), name)


def identity_morphism(v: Comodule) -> ComoduleMorphism:
    return ComoduleMorphism(v, v, v.id)


def zero_morphism(v: Comodule, w: Comodule) -> ComoduleMorphism:
    return ComoduleMorphism(v, w, Mat.zeros(v.field, w.dim, v.dim))


def direct_sum(parts: Sequence[Comodule], name: str = "") -> Comodule:
    """Direct sum with the bases concatenated in order."""
    if not parts:
        raise ValueError("direct sum of nothing")
    C = parts[0].over
    for p in parts:
        _require_same(C, p.over)
    n = sum(p.dim for p in parts)
    dc = C.dim
    entries = {}
    off = 0
    for p in parts:
        for (r, k), x in p.rho.sparse().items():
            i, c = divmod(r, dc)
            entries[((off + i) * dc + c, off + k)] = x
        off += p.dim
    return Comodule(C, n, Mat.from_sparse(C.field, n * dc, n, entries),
                    name or "+".join(p.name or "?" for p in parts))


def sum_injections(parts: Sequence[Comodule], total: Comodule) -> list[ComoduleMorphism]:
    out, off = [], 0
    for p in parts:
        m = Mat.from_sparse(p.field, total.dim, p.dim, {(off + i, i): 1 for i in range(p.dim)})
        out.append(ComoduleMorphism(p, total, m))
        off += p.dim
    return out


def sum_projections(parts: Sequence[Comodule], total: Comodule) -> list[ComoduleMorphism]:
    return [ComoduleMorphism(total, inj.src, inj.mat.T) for inj in sum_injections(parts, total)]


# ---------------------------------------------------------------------------
# hom spaces


def morphism_constraints(src: Comodule, dst: Comodule) -> Mat:
    """Matrix of the linear conditions on ``vec(f)`` for ``f: src -> dst`` to be a morphism.

    ``vec`` is row-major: entry ``f[a, b]`` is variable ``a * src.dim + b``.
    """
    _require_same(src.over, dst.over)
    dX, dY, dC = src.dim, dst.dim, src.over.dim
    entries: dict[tuple[int, int], object] = {}

    def row(y, c, x):
        return (y * dC + c) * dX + x

    for (r, x), val in src.rho.sparse().items():
        b, c = divmod(r, dC)
        for y in range(dY):
            key = (row(y, c, x), y * dX + b)
            entries[key] = entries.get(key, 0) + val
    for (r, a), val in dst.rho.sparse().items():
        y, c = divmod(r, dC)
        for x in range(dX):
            key = (row(y, c, x), a * dX + x)
            entries[key] = entries.get(key, 0) - val
    return Mat.from_sparse(src.field, dY * dC * dX, dY * dX, entries)


def hom_space(src: Comodule, dst: Comodule) -> list[Mat]:
    """Basis of the space of comodule morphisms ``src -> dst``."""
    k = kernel(morphism_constraints(src, dst))
    return [unvec(k.columns([j]), dst.dim, src.dim) for j in range(k.cols)]


# ---------------------------------------------------------------------------
# cotensor


@dataclass(frozen=True, eq=False)
class CotensorProduct:
    """``V []_C M`` as a right ``D``-comodule with its inclusion into ``V (x) M``."""

    comodule: Comodule
    inclusion: Mat
    source: Comodule
    bimodule: Bicomodule

    @property
    def dim(self) -> int:
        return self.comodule.dim


def cotensor_equalizer_map(v: Comodule, m: Bicomodule) -> Mat:
    """``rho_V (x) I_M - I_V (x) lam_M : V (x) M -> V (x) C (x) M``."""
    _require_same(v.over, m.left)
    IM = Mat.identity(v.field, m.dim)
    return kron(v.rho, IM) - kron(v.id, m.lam)


def cotensor(v: Comodule, m: Bicomodule) -> CotensorProduct:
    """Cotensor product as the equalizer of ``rho_V (x) I`` and ``I (x) lam``."""
    iota = kernel(cotensor_equalizer_map(v, m))
    D = m.right
    target = kron(v.id, m.rho) @ iota
    coaction = solve_linear(kron(iota, D.id), target)
    if coaction is None:
        raise InternalAssertion("cotensor is not closed under the right coaction")
    name = f"{v.name or '?'}[]{m.name or '?'}"
    return CotensorProduct(Comodule(D, iota.cols, coaction, name), iota, v, m)


def cotensor_morphism(f: ComoduleMorphism, m: Bicomodule,
                      src: CotensorProduct | None = None,
                      dst: CotensorProduct | None = None) -> ComoduleMorphism:
    """``f []_C M`` between the cotensor products of source and target."""
    src = src or cotensor(f.src, m)
    dst = dst or cotensor(f.dst, m)
    image = kron(f.mat, Mat.identity(f.src.field, m.dim)) @ src.inclusion
    y = solve_linear(dst.inclusion, image)
    if y is None:
        raise InternalAssertion("f (x) M does not map the cotensor into the cotensor")
    return ComoduleMorphism(src.comodule, dst.comodule, y)


# ---------------------------------------------------------------------------
# split epimorphisms


@dataclass(frozen=True)
class SplitEpiResult:
    split: bool
    section: ComoduleMorphism | None = None

    def __bool__(self) -> bool:
        return self.split


def is_split_epi(p: ComoduleMorphism) -> SplitEpiResult:
    """Decide whether some comodule morphism ``s`` has ``p s = id``.

    Solves the morphism constraints on ``s`` together with ``p s = I``.
    """
    V, W = p.src, p.dst
    f = V.field
    cons = morphism_constraints(W, V)
    dW = W.dim
    entries = {}
    for (i, a), val in p.mat.sparse().items():
        for j in range(dW):
            entries[(i * dW + j, a * dW + j)] = val
    ps = Mat.from_sparse(f, dW * dW, V.dim * dW, entries)
    a = vstack([cons, ps])
    rhs = vstack([Mat.zeros(f, cons.rows, 1), Mat.from_sparse(f, dW * dW, 1, {(i * dW + i, 0): 1 for i in range(dW)})])
    x = solve_linear(a, rhs)
    if x is None:
        return SplitEpiResult(False)
    s = ComoduleMorphism(W, V, unvec(x, V.dim, dW))
    return SplitEpiResult(True, s)


def is_surjective(f: ComoduleMorphism) -> bool:
    return f.mat.rank() == f.dst.dim


# ---------------------------------------------------------------------------
# sub and quotient objects


def subcomodule(x: Comodule, basis: Mat, name: str = "") -> tuple[Comodule, ComoduleMorphism]:
    """Comodule on the span of the (independent) columns of ``basis``, with its inclusion."""
    C = x.over
    rho = solve_linear(kron(basis, C.id), x.rho @ basis)
    if rho is None:
        raise AxiomError("subspace is not a subcomodule")
    sub = Comodule(C, basis.cols, rho, name)
    return sub, ComoduleMorphism(sub, x, basis)


def quotient(x: Comodule, basis: Mat, name: str = "") -> tuple[Comodule, ComoduleMorphism]:
    """Quotient by the subcomodule spanned by ``basis``, with the projection."""
    C = x.over
    comp = extend_to_basis(basis)
    full = hstack([basis, comp]) if basis.cols else comp
    inv = inverse(full)
    q = inv.select_rows(list(range(basis.cols, x.dim)))
    rho = kron(q, C.id) @ x.rho @ comp
    if rho @ q != kron(q, C.id) @ x.rho:
        raise AxiomError("subspace is not a subcomodule")
    quo = Comodule(C, comp.cols, rho, name)
    return quo, ComoduleMorphism(x, quo, q)


def kernel_of_morphism(f: ComoduleMorphism) -> tuple[Comodule, ComoduleMorphism]:
    return subcomodule(f.src, kernel(f.mat), "ker")


def image_of_morphism(f: ComoduleMorphism) -> tuple[Comodule, ComoduleMorphism]:
    return subcomodule(f.dst, column_basis(f.mat), "im")


def cokernel_of_morphism(f: ComoduleMorphism) -> tuple[Comodule, ComoduleMorphism]:
    return quotient(f.dst, column_basis(f.mat), "coker")


def corestrict(f: ComoduleMorphism) -> ComoduleMorphism:
    """``f`` viewed as an epimorphism onto its image."""
    im, inc = image_of_morphism(f)
    m = solve_linear(inc.mat, f.mat)
    return ComoduleMorphism(f.src, im, m)


def generated_subcomodule(x: Comodule, vectors: Mat) -> tuple[Comodule, ComoduleMorphism]:
    """Smallest subcomodule containing the columns of ``vectors``.

    It is spanned by the components ``(I (x) c*) rho(v)``.
    """
    dc = x.over.dim
    images = x.rho @ vectors
    cols = []
    for c in range(dc):
        cols.append(images.select_rows([i * dc + c for i in range(x.dim)]))
    span = hstack(cols) if cols else Mat.zeros(x.field, x.dim, 0)
    return subcomodule(x, column_basis(span), "gen")


def is_isomorphism(f: ComoduleMorphism) -> bool:
    return f.src.dim == f.dst.dim and f.mat.rank() == f.src.dim and bool(check_morphism(f))
