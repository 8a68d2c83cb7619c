"""Curated example corpus and seeded random generators.

``build_corpus(field)`` returns every fixture as a :class:`SpecFile`; the
bundled ``data/*.coalg`` files are a dump of the rational corpus split by
topic (``bundled_files``).
"""

from __future__ import annotations

import random
from importlib import resources
from pathlib import Path

from .base_change import frobenius
from .coalgebra import Coalgebra, trivial_coalgebra
from .comodule import (Bicomodule, Comodule, ComoduleMorphism, cofree_comodule, direct_sum,
                       generated_subcomodule, quotient, regular_comodule, subcomodule, trivial_comodule)
from .linalg import QQ, Field, Mat, column_basis, hstack, inverse, kron, random_mat, solve_linear
from .matrix_comonad import MatrixComonadData, bipartite_data
from .specfile import BipartiteEntry, SpecFile, dump_spec, parse_spec

# ---------------------------------------------------------------------------
# coalgebra families


def coalgebra_from_terms(field: Field, dim: int, comul: dict, eps: dict, name: str = "") -> Coalgebra:
    """``comul[k] = {(i, j): coeff}`` gives ``Delta(e_k)``; ``eps[k]`` the counit."""
    ent = {(i * dim + j, k): x for k, terms in comul.items() for (i, j), x in terms.items()}
    return Coalgebra(field, dim, Mat.from_sparse(field, dim * dim, dim, ent),
                     Mat.from_sparse(field, 1, dim, {(0, k): x for k, x in eps.items()}), name)


def grouplike_coalgebra(field: Field, g: int, name: str = "") -> Coalgebra:
    return coalgebra_from_terms(field, g, {k: {(k, k): 1} for k in range(g)}, {k: 1 for k in range(g)},
                                name or f"K^{g}")


def quiver_paths(n: int, arrows) -> list[tuple]:
    """All nontrivial paths of an acyclic quiver as arrow-index tuples, sorted by (source, target, arrows)."""
    paths = [(a,) for a in range(len(arrows))]
    frontier = list(paths)
    while frontier:
        nxt = []
        for p in frontier:
            end = arrows[p[-1]][1]
            for a, (s, _) in enumerate(arrows):
                if s == end:
                    nxt.append(p + (a,))
        if len(paths) > 1000:
            raise ValueError("quiver must be acyclic")
        paths.extend(nxt)
        frontier = nxt
    return sorted(paths, key=lambda p: (arrows[p[0]][0], arrows[p[-1]][1], p))


def path_coalgebra(field: Field, n: int, arrows, name: str = "") -> Coalgebra:
    """Path coalgebra: vertices first, then paths; ``Delta(p) = sum p' (x) p''`` over splittings."""
    paths = quiver_paths(n, arrows)
    index = {}
    for t, p in enumerate(paths):
        index[p] = n + t
    dim = n + len(paths)
    comul = {v: {(v, v): 1} for v in range(n)}
    for t, p in enumerate(paths):
        k = n + t
        s, e = arrows[p[0]][0], arrows[p[-1]][1]
        terms = {(s, k): 1, (k, e): 1}
        for cut in range(1, len(p)):
            terms[(index[p[:cut]], index[p[cut:]])] = 1
        comul[k] = terms
    return coalgebra_from_terms(field, dim, comul, {v: 1 for v in range(n)}, name)


def type_a_coalgebra(field: Field, n: int, name: str = "") -> Coalgebra:
    return path_coalgebra(field, n, [(i, i + 1) for i in range(n - 1)], name or f"A{n}")


def dual_numbers(field: Field, name: str = "dualnum") -> Coalgebra:
    """Basis ``{g, x}``: ``g`` grouplike, ``x`` primitive (``Delta x = g (x) x + x (x) g``)."""
    return coalgebra_from_terms(field, 2, {0: {(0, 0): 1}, 1: {(0, 1): 1, (1, 0): 1}}, {0: 1}, name)


def matrix_coalgebra(field: Field, n: int, name: str = "") -> Coalgebra:
    """Dual of the matrix algebra: ``Delta(e_ij) = sum_k e_ik (x) e_kj``, ``eps(e_ij) = delta_ij``."""
    comul = {i * n + j: {(i * n + k, k * n + j): 1 for k in range(n)} for i in range(n) for j in range(n)}
    return coalgebra_from_terms(field, n * n, comul, {i * n + i: 1 for i in range(n)}, name or f"M{n}c")


# ---------------------------------------------------------------------------
# comonad families


def a3_family(field: Field, broken: bool = False, name: str = "") -> MatrixComonadData:
    """Normal triangular 3x3 family with every ``M_ij = K`` and ``phi`` the identity scalars.

    With ``broken=True`` the map ``phi_(0,1,2)`` is zero instead.
    """
    one = Mat.identity(field, 1)
    dims = tuple(tuple(1 if i <= j else 0 for j in range(3)) for i in range(3))
    phi = {(i, k, j): one for i in range(3) for j in range(i, 3) for k in range(i, j + 1)}
    if broken:
        phi[(0, 1, 2)] = Mat.zeros(field, 1, 1)
    return MatrixComonadData(field, 3, dims, phi, (one, one, one), name)


# ---------------------------------------------------------------------------
# the curated corpus


def build_corpus(field: Field = QQ) -> SpecFile:
    f = field
    s = SpecFile(field=f)
    K = trivial_coalgebra(f, "triv")
    k2 = grouplike_coalgebra(f, 2, "k2")
    k3 = grouplike_coalgebra(f, 3, "k3")
    a2 = type_a_coalgebra(f, 2, "a2")
    a3 = type_a_coalgebra(f, 3, "a3")
    a4 = type_a_coalgebra(f, 4, "a4")
    bq = path_coalgebra(f, 4, [(0, 2), (0, 3), (1, 2)], "bq")
    kron_q = path_coalgebra(f, 2, [(0, 1), (0, 1)], "kron")
    dn = dual_numbers(f, "dualnum")
    m2 = matrix_coalgebra(f, 2, "mat2")
    for c in (K, k2, k3, a2, a3, a4, bq, kron_q, dn, m2):
        s.coalgebras[c.name] = c

    def add(v: Comodule, name: str) -> Comodule:
        v = v.with_name(name)
        s.comodules[name] = v
        return v

    for c in (K, k2, k3, a2, a3, bq, kron_q, dn, m2):
        add(regular_comodule(c), f"{c.name}_reg")
    for c, gs in ((k2, 2), (a2, 2), (a3, 3), (dn, 1), (kron_q, 2)):
        for g in range(gs):
            add(trivial_comodule(c, g), f"{c.name}_s{g}")
    a2_reg = s.comodules["a2_reg"]
    inj0, _ = subcomodule(a2_reg, Mat.from_sparse(f, 3, 2, {(0, 0): 1, (2, 1): 1}))
    add(inj0, "a2_inj0")
    q1, proj = quotient(a2_reg, Mat.from_sparse(f, 3, 1, {(0, 0): 1}))
    a2_q1 = add(q1, "a2_q1")
    a2_sum = add(direct_sum([a2_reg, s.comodules["a2_s1"]]), "a2_reg_s1")
    dn_reg, dn_s0 = s.comodules["dualnum_reg"], s.comodules["dualnum_s0"]
    k2_reg, k2_s0 = s.comodules["k2_reg"], s.comodules["k2_s0"]
    a2_s0 = s.comodules["a2_s0"]

    s.morphisms["a2_id"] = ComoduleMorphism(a2_reg, a2_reg, a2_reg.id)
    s.morphisms["a2_proj_g1"] = ComoduleMorphism(a2_reg, a2_q1, proj.mat)
    s.morphisms["a2_inc_s0"] = ComoduleMorphism(a2_s0, a2_reg, Mat.from_sparse(f, 3, 1, {(0, 0): 1}))
    s.morphisms["a2_sum_proj"] = ComoduleMorphism(a2_sum, s.comodules["a2_s1"],
                                                  Mat.from_sparse(f, 1, 4, {(0, 3): 1}))
    s.morphisms["a2_inj0_inc"] = ComoduleMorphism(s.comodules["a2_inj0"], a2_reg,
                                                  Mat.from_sparse(f, 3, 2, {(0, 0): 1, (2, 1): 1}))
    s.morphisms["dn_quot"] = ComoduleMorphism(dn_reg, dn_s0, Mat.from_sparse(f, 1, 2, {(0, 1): 1}))
    s.morphisms["dn_id"] = ComoduleMorphism(dn_reg, dn_reg, dn_reg.id)
    s.morphisms["k2_proj"] = ComoduleMorphism(k2_reg, k2_s0, Mat.from_sparse(f, 1, 2, {(0, 0): 1}))
    s.morphisms["triv_zero"] = ComoduleMorphism(s.comodules["triv_reg"], s.comodules["triv_reg"],
                                                Mat.zeros(f, 1, 1))

    def bic(name, C, D, dim, lam, rho):
        m = Bicomodule(C, D, dim, Mat.from_sparse(f, C.dim * dim, dim, lam),
                       Mat.from_sparse(f, dim * D.dim, dim, rho), name)
        s.bicomodules[name] = m
        return m

    bic("kkk", K, K, 1, {(0, 0): 1}, {(0, 0): 1})
    bic("a2_sg2", a2, K, 1, {(1, 0): 1}, {(0, 0): 1})
    bic("dn_coreg", K, dn, 2, {(0, 0): 1, (1, 1): 1}, dict(dn.delta.sparse()))
    bic("dn_simple", K, dn, 1, {(0, 0): 1}, {(0, 0): 1})
    bic("k2_arrow", k2, k2, 1, {(0, 0): 1}, {(1, 0): 1})
    # arrows 0->0', 0->1', 1->0' of a bipartite quiver
    bic("k2_quiver", k2, k2, 3, {(0, 0): 1, (0 * 3 + 1, 1): 1, (1 * 3 + 2, 2): 1},
        {(0 * 2 + 0, 0): 1, (1 * 2 + 1, 1): 1, (2 * 2 + 0, 2): 1})
    bic("k_a2reg", K, a2, 3, {(i, i): 1 for i in range(3)}, dict(a2.delta.sparse()))
    bic("a2_bireg", a2, a2, 3, dict(a2.delta.sparse()), dict(a2.delta.sparse()))

    s.bipartites["bip_kkk"] = BipartiteEntry("triv", "triv", "kkk")
    s.bipartites["bip_a2_sg2"] = BipartiteEntry("a2", "triv", "a2_sg2", ["a2_proj_g1"])
    s.bipartites["bip_dn_coreg"] = BipartiteEntry("triv", "dualnum", "dn_coreg")
    s.bipartites["bip_dn_simple"] = BipartiteEntry("triv", "dualnum", "dn_simple")
    s.bipartites["bip_k2_arrow"] = BipartiteEntry("k2", "k2", "k2_arrow")
    s.bipartites["bip_k2_quiver"] = BipartiteEntry("k2", "k2", "k2_quiver")
    s.bipartites["bip_k_a2reg"] = BipartiteEntry("triv", "a2", "k_a2reg")
    s.bipartites["bip_a2_bireg"] = BipartiteEntry("a2", "a2", "a2_bireg")

    s.comonads["n2_kkk"] = bipartite_data(K, K, s.bicomodules["kkk"], "n2_kkk")
    s.comonads["n3_a3"] = a3_family(f, False, "n3_a3")
    s.comonads["n3_broken"] = a3_family(f, True, "n3_broken")

    kk_mul = Mat.from_sparse(f, 2, 4, {(0, 0): 1, (1, 3): 1})
    s.frobenius["kk"] = frobenius(f, kk_mul, Mat.row(f, [1, 1]),
                                  Mat.column(f, [1, 0, 0, 1]))
    s.frobenius["kfield"] = frobenius(f, Mat.identity(f, 1), Mat.identity(f, 1))
    if f.characteristic not in (2, 3):
        k3_mul = Mat.from_sparse(f, 3, 9, {(a, a * 3 + a): 1 for a in range(3)})
        s.frobenius["k3w"] = frobenius(f, k3_mul, Mat.row(f, [1, 2, 3]))
    return s


# which names go to which bundled file
BUNDLE_LAYOUT = {
    "trivial.coalg": ["triv", "triv_reg", "triv_zero"],
    "grouplike.coalg": ["k2", "k3", "k2_reg", "k3_reg", "k2_s0", "k2_s1", "k2_proj"],
    "a2_path.coalg": ["a2", "a2_reg", "a2_s0", "a2_s1", "a2_inj0", "a2_q1", "a2_reg_s1", "a2_id",
                      "a2_proj_g1", "a2_inc_s0", "a2_sum_proj", "a2_inj0_inc"],
    "paths.coalg": ["a3", "a4", "bq", "kron", "a3_reg", "a3_s0", "a3_s1", "a3_s2", "bq_reg", "kron_reg",
                    "kron_s0", "kron_s1"],
    "dual_numbers.coalg": ["dualnum", "dualnum_reg", "dualnum_s0", "dn_quot", "dn_id"],
    "matrix.coalg": ["mat2", "mat2_reg"],
    "bipartite.coalg": ["bip_kkk", "bip_a2_sg2", "bip_dn_coreg", "bip_dn_simple", "bip_k2_arrow",
                        "bip_k2_quiver", "bip_k_a2reg", "bip_a2_bireg"],
    "comonads.coalg": ["n2_kkk", "n3_a3", "n3_broken"],
    "frobenius.coalg": ["kk", "kfield", "k3w"],
}


def subset(spec: SpecFile, names) -> SpecFile:
    """The named objects together with everything they reference."""
    out = SpecFile(field=spec.field)
    want = list(names)
    seen = set()
    while want:
        n = want.pop()
        if n in seen:
            continue
        seen.add(n)
        kind, obj = spec.lookup(n)
        if kind == "comodules":
            want.append(obj.over.name)
        elif kind == "bicomodules":
            want += [obj.left.name, obj.right.name]
        elif kind == "morphisms":
            want += [_name_of(spec.comodules, obj.src), _name_of(spec.comodules, obj.dst)]
        elif kind == "bipartites":
            want += [obj.C, obj.D, obj.M] + list(obj.witnesses)
        elif kind == "comonads" or kind == "frobenius" or kind == "coalgebras":
            pass
    for kind in ("coalgebras", "comodules", "bicomodules", "morphisms", "comonads", "frobenius", "bipartites"):
        for n, obj in getattr(spec, kind).items():
            if n in seen:
                getattr(out, kind)[n] = obj
    return out


def _name_of(d: dict, obj) -> str:
    for n, o in d.items():
        if o is obj:
            return n
    raise KeyError("object not registered")


def bundled_files(field: Field = QQ) -> dict[str, str]:
    spec = build_corpus(field)
    return {fname: dump_spec(subset(spec, names)) for fname, names in BUNDLE_LAYOUT.items()}


def data_dir() -> Path:
    return Path(str(resources.files("matcomonad") / "data"))


def load_bundled(check: bool = True) -> SpecFile:
    """Merge every bundled corpus file."""
    from .specfile import require_valid
    out = None
    for p in sorted(data_dir().glob("*.coalg")):
        spec = parse_spec(p.read_text(encoding="utf-8"), str(p))
        if out is None:
            out = spec
        else:
            out.merge(spec)
    out = out or SpecFile()
    if check:
        require_valid(out)
    return out


def write_bundle(directory: Path | None = None) -> None:
    directory = directory or data_dir()
    directory.mkdir(parents=True, exist_ok=True)
    for fname, text in bundled_files().items():
        (directory / fname).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# random generators


def random_invertible(field: Field, n: int, rng: random.Random) -> Mat:
    while True:
        g = random_mat(field, n, n, rng)
        if g.rank() == n:
            return g


def change_basis(v: Comodule, g: Mat) -> Comodule:
    """The comodule transported along ``g`` (new basis = columns of ``g``)."""
    return Comodule(v.over, v.dim, kron(inverse(g), v.over.id) @ v.rho @ g, v.name)


def random_comodule(C: Coalgebra, rng: random.Random, max_dim: int = 5, rebase: bool = True) -> Comodule:
    """Subcomodules, quotients and sums of cofree comodules, optionally in a random basis."""
    f = C.field
    for _ in range(200):
        kind = rng.randrange(4)
        a = 1 if C.dim > 3 else rng.randint(1, 2)
        base = cofree_comodule(C, a)
        if kind == 0:
            v, _ = generated_subcomodule(base, random_mat(f, base.dim, rng.randint(1, 2), rng))
        elif kind == 1:
            sub, inc = generated_subcomodule(base, random_mat(f, base.dim, 1, rng))
            v, _ = quotient(base, inc.mat)
        elif kind == 2:
            v = base
        else:
            x, _ = generated_subcomodule(base, random_mat(f, base.dim, 1, rng))
            sub, inc = generated_subcomodule(regular_comodule(C), random_mat(f, C.dim, 1, rng))
            y, _ = quotient(regular_comodule(C), inc.mat)
            v = direct_sum([x, y])
        if 0 < v.dim <= max_dim:
            if rebase:
                v = change_basis(v, random_invertible(f, v.dim, rng))
            return v
    raise RuntimeError("could not generate a small comodule")


def tensor_bicomodule(C: Coalgebra, D: Coalgebra) -> Bicomodule:
    """``C (x) D`` with ``lam = Delta_C (x) I`` and ``rho = I (x) Delta_D``."""
    n = C.dim * D.dim
    lam = kron(C.delta, D.id)
    rho = kron(C.id, D.delta)
    return Bicomodule(C, D, n, lam, rho, f"{C.name}(x){D.name}")


def generated_subbicomodule(m: Bicomodule, vectors: Mat) -> Bicomodule:
    span = column_basis(vectors)
    while True:
        cols = [span]
        lam_img = m.lam @ span
        for c in range(m.left.dim):
            cols.append(lam_img.select_rows([c * m.dim + i for i in range(m.dim)]))
        rho_img = m.rho @ span
        for d in range(m.right.dim):
            cols.append(rho_img.select_rows([i * m.right.dim + d for i in range(m.dim)]))
        new = column_basis(hstack(cols))
        if new.cols == span.cols:
            break
        span = new
    lam = solve_linear(kron(m.left.id, span), m.lam @ span)
    rho = solve_linear(kron(span, m.right.id), m.rho @ span)
    return Bicomodule(m.left, m.right, span.cols, lam, rho, m.name)


def small_coalgebras(field: Field) -> list[Coalgebra]:
    """Library of coalgebras of dimension at most 3."""
    return [trivial_coalgebra(field, "triv"), grouplike_coalgebra(field, 2, "k2"),
            grouplike_coalgebra(field, 3, "k3"), type_a_coalgebra(field, 2, "a2"),
            dual_numbers(field, "dualnum")]


def random_bipartite_input(field: Field, rng: random.Random, max_dim: int = 3):
    """Random ``(C, D, M)`` with every dimension at most ``max_dim``."""
    lib = small_coalgebras(field)
    for _ in range(200):
        C = lib[rng.randrange(len(lib))]
        D = lib[rng.randrange(len(lib))]
        T = tensor_bicomodule(C, D)
        M = generated_subbicomodule(T, random_mat(field, T.dim, 1, rng))
        if 0 < M.dim <= max_dim:
            g = random_invertible(field, M.dim, rng)
            gi = inverse(g)
            M = Bicomodule(C, D, M.dim, kron(C.id, gi) @ M.lam @ g, kron(gi, D.id) @ M.rho @ g, "M")
            return C, D, M
    raise RuntimeError("could not generate small bicomodule data")
