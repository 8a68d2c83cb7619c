"""Line-oriented spec files describing coalgebras, comodules and related data.

Format (``#`` starts a comment, indices are 0-based)::

    field rational                      # or: field prime 5
    coalgebra NAME dim N
      delta i j k s                     # coefficient of e_i (x) e_j in Delta(e_k)
      eps k s
    comodule NAME over C dim N
      rho i c k s                       # coefficient of e_i (x) c in rho(e_k)
    bicomodule NAME left C right D dim N
      lam c i k s
      rho i d k s
    morphism NAME from V to W
      map i j s                         # entry (i, j) of the dim W x dim V matrix
    comonad NAME n N
      space i j dim
      phi i k j : row col s
      eps i : col s
    frobenius NAME dim r
      mul a b c s                       # coefficient of e_c in e_a e_b
      psi a s
      casimir a b s                     # optional, cross-checked
    bipartite NAME C D M
      witness MORPH                     # optional stored counterexample
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .base import AxiomError, MatcomonadError, Verdict
from .base_change import FrobeniusData, frobenius
from .coalgebra import Coalgebra, check_coalgebra
from .comodule import (Bicomodule, Comodule, ComoduleMorphism, check_bicomodule, check_comodule,
                       check_morphism)
from .linalg import QQ, Field, Mat
from .matrix_comonad import MatrixComonadData, check_comonad


class SpecParseError(MatcomonadError, ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0, path: str = ""):
        loc = f"{path}:{line}:{column}" if path else f"line {line}, column {column}"
        super().__init__(f"{loc}: {message}")
        self.line = line
        self.column = column


class UnresolvedReference(MatcomonadError, KeyError):
    def __init__(self, name: str, kind: str, line: int = 0):
        super().__init__(f"line {line}: unresolved {kind} reference '{name}'")
        self.name = name

    def __str__(self) -> str:
        return self.args[0]


@dataclass
class BipartiteEntry:
    C: str
    D: str
    M: str
    witnesses: list = dc_field(default_factory=list)


@dataclass
class SpecFile:
    field: Field = dc_field(default_factory=lambda: QQ)
    coalgebras: dict = dc_field(default_factory=dict)
    comodules: dict = dc_field(default_factory=dict)
    bicomodules: dict = dc_field(default_factory=dict)
    morphisms: dict = dc_field(default_factory=dict)
    comonads: dict = dc_field(default_factory=dict)
    frobenius: dict = dc_field(default_factory=dict)
    bipartites: dict = dc_field(default_factory=dict)

    def names(self) -> dict:
        return {k: sorted(getattr(self, k)) for k in
                ("coalgebras", "comodules", "bicomodules", "morphisms", "comonads", "frobenius", "bipartites")}

    def lookup(self, name: str):
        for kind in ("coalgebras", "comodules", "bicomodules", "morphisms", "comonads", "frobenius",
                     "bipartites"):
            d = getattr(self, kind)
            if name in d:
                return kind, d[name]
        raise UnresolvedReference(name, "object")

    def merge(self, other: "SpecFile") -> None:
        """Add ``other``'s objects; a repeated name must carry identical data."""
        if other.field != self.field:
            raise SpecParseError(f"cannot merge spec over {other.field} into one over {self.field}")
        for kind in ("coalgebras", "comodules", "bicomodules", "morphisms", "comonads", "frobenius",
                     "bipartites"):
            mine, theirs = getattr(self, kind), getattr(other, kind)
            for name, obj in theirs.items():
                if name in mine and not _same(mine[name], obj):
                    raise SpecParseError(f"conflicting definitions of {name}")
                mine.setdefault(name, obj)


def _same(a, b) -> bool:
    if hasattr(a, "same_as"):
        return a.same_as(b)
    if isinstance(a, ComoduleMorphism):
        return a.src.same_as(b.src) and a.dst.same_as(b.dst) and a.mat == b.mat
    if isinstance(a, MatrixComonadData):
        from .matrix_comonad import same_data
        return same_data(a, b)
    if isinstance(a, FrobeniusData):
        return a.mul == b.mul and a.psi == b.psi
    return a == b


# ---------------------------------------------------------------------------
# parsing


class _Block:
    def __init__(self, kind: str, header: list, line: int):
        self.kind = kind
        self.header = header
        self.line = line
        self.entries: list = []


def _tokens(raw: str) -> list[tuple[str, int]]:
    text = raw.split("#", 1)[0]
    out = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        out.append((text[i:j], i + 1))
        i = j
    return out


_HEADERS = {
    "coalgebra": ["name", "dim", "int"],
    "comodule": ["name", "over", "name", "dim", "int"],
    "bicomodule": ["name", "left", "name", "right", "name", "dim", "int"],
    "morphism": ["name", "from", "name", "to", "name"],
    "comonad": ["name", "n", "int"],
    "frobenius": ["name", "dim", "int"],
    "bipartite": ["name", "name", "name", "name"],
}

_ENTRIES = {
    "coalgebra": {"delta": "iiis", "eps": "is"},
    "comodule": {"rho": "iiis"},
    "bicomodule": {"lam": "iiis", "rho": "iiis"},
    "morphism": {"map": "iis"},
    "comonad": {"space": "iii", "phi": "iii:iis", "eps": "i:is"},
    "frobenius": {"mul": "iiis", "psi": "is", "casimir": "iis"},
    "bipartite": {"witness": "n"},
}


def _parse_int(tok: str, line: int, col: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise SpecParseError(f"expected an integer, got '{tok}'", line, col) from None
    if v < 0:
        raise SpecParseError(f"expected a non-negative integer, got '{tok}'", line, col)
    return v


def parse_spec(text: str, path: str = "") -> SpecFile:
    spec = SpecFile()
    blocks: list[_Block] = []
    field_seen = False
    current: _Block | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        head, col = toks[0]
        if head == "field":
            if field_seen or blocks:
                raise SpecParseError("field must be declared once, before any object", lineno, col, path)
            field_seen = True
            if len(toks) == 2 and toks[1][0] == "rational":
                spec.field = QQ
            elif len(toks) == 3 and toks[1][0] == "prime":
                p = _parse_int(toks[2][0], lineno, toks[2][1])
                try:
                    spec.field = Field.prime(p)
                except ValueError as e:
                    raise SpecParseError(str(e), lineno, toks[2][1], path) from None
            else:
                raise SpecParseError("expected 'field rational' or 'field prime P'", lineno, col, path)
            continue
        if head in _HEADERS:
            shape = _HEADERS[head]
            args = toks[1:]
            if len(args) != len(shape):
                raise SpecParseError(f"malformed {head} header", lineno, col, path)
            vals = []
            for (tok, c), kind in zip(args, shape):
                if kind == "name":
                    vals.append(tok)
                elif kind == "int":
                    vals.append(_parse_int(tok, lineno, c))
                elif tok != kind:
                    raise SpecParseError(f"expected '{kind}', got '{tok}'", lineno, c, path)
            current = _Block(head, vals, lineno)
            blocks.append(current)
            continue
        if current is None:
            raise SpecParseError(f"entry '{head}' outside of any block", lineno, col, path)
        shape = _ENTRIES[current.kind].get(head)
        if shape is None:
            raise SpecParseError(f"unknown entry '{head}' in {current.kind} block", lineno, col, path)
        args = toks[1:]
        if len(args) != len(shape):
            raise SpecParseError(f"'{head}' expects {len(shape)} fields", lineno, col, path)
        vals = []
        for (tok, c), kind in zip(args, shape):
            if kind == "i":
                vals.append(_parse_int(tok, lineno, c))
            elif kind == "s":
                try:
                    vals.append(spec.field.parse(tok))
                except ValueError as e:
                    raise SpecParseError(str(e), lineno, c, path) from None
            elif kind == "n":
                vals.append(tok)
            elif tok != kind:
                raise SpecParseError(f"expected '{kind}', got '{tok}'", lineno, c, path)
        current.entries.append((head, vals, lineno, col))
    for b in blocks:
        _build(spec, b, path)
    return spec


def _need(d: dict, name: str, kind: str, line: int):
    if name not in d:
        raise UnresolvedReference(name, kind, line)
    return d[name]


def _put(entries: dict, key, val, bound, line, col, path):
    for k, b in zip(key, bound):
        if k >= b:
            raise SpecParseError(f"index {k} out of range (< {b})", line, col, path)
    entries[key] = entries.get(key, 0) + val


def _build(spec: SpecFile, b: _Block, path: str) -> None:
    f = spec.field
    name = b.header[0]
    if any(name in getattr(spec, k) for k in ("coalgebras", "comodules", "bicomodules", "morphisms",
                                               "comonads", "frobenius", "bipartites")):
        raise SpecParseError(f"duplicate name '{name}'", b.line, 1, path)
    if b.kind == "coalgebra":
        n = b.header[1]
        de, ee = {}, {}
        for head, v, line, col in b.entries:
            if head == "delta":
                if max(v[0], v[1]) >= n:
                    raise SpecParseError("index out of range", line, col, path)
                _put(de, (v[0] * n + v[1], v[2]), v[3], (n * n, n), line, col, path)
            else:
                _put(ee, (0, v[0]), v[1], (1, n), line, col, path)
        spec.coalgebras[name] = Coalgebra(f, n, Mat.from_sparse(f, n * n, n, de),
                                          Mat.from_sparse(f, 1, n, ee), name)
    elif b.kind == "comodule":
        C = _need(spec.coalgebras, b.header[1], "coalgebra", b.line)
        n = b.header[2]
        ent = {}
        for _, v, line, col in b.entries:
            if v[0] >= n or v[1] >= C.dim:
                raise SpecParseError("index out of range", line, col, path)
            _put(ent, (v[0] * C.dim + v[1], v[2]), v[3], (n * C.dim, n), line, col, path)
        spec.comodules[name] = Comodule(C, n, Mat.from_sparse(f, n * C.dim, n, ent), name)
    elif b.kind == "bicomodule":
        C = _need(spec.coalgebras, b.header[1], "coalgebra", b.line)
        D = _need(spec.coalgebras, b.header[2], "coalgebra", b.line)
        n = b.header[3]
        lam, rho = {}, {}
        for head, v, line, col in b.entries:
            if head == "lam":
                if v[0] >= C.dim or v[1] >= n:
                    raise SpecParseError("index out of range", line, col, path)
                _put(lam, (v[0] * n + v[1], v[2]), v[3], (C.dim * n, n), line, col, path)
            else:
                if v[0] >= n or v[1] >= D.dim:
                    raise SpecParseError("index out of range", line, col, path)
                _put(rho, (v[0] * D.dim + v[1], v[2]), v[3], (n * D.dim, n), line, col, path)
        spec.bicomodules[name] = Bicomodule(C, D, n, Mat.from_sparse(f, C.dim * n, n, lam),
                                            Mat.from_sparse(f, n * D.dim, n, rho), name)
    elif b.kind == "morphism":
        V = _need(spec.comodules, b.header[1], "comodule", b.line)
        W = _need(spec.comodules, b.header[2], "comodule", b.line)
        ent = {}
        for _, v, line, col in b.entries:
            _put(ent, (v[0], v[1]), v[2], (W.dim, V.dim), line, col, path)
        spec.morphisms[name] = ComoduleMorphism(V, W, Mat.from_sparse(f, W.dim, V.dim, ent))
    elif b.kind == "comonad":
        n = b.header[1]
        dims = [[0] * n for _ in range(n)]
        for head, v, line, col in b.entries:
            if head == "space":
                if v[0] >= n or v[1] >= n:
                    raise SpecParseError("block index out of range", line, col, path)
                dims[v[0]][v[1]] = v[2]
        phi, eps = {}, [dict() for _ in range(n)]
        for head, v, line, col in b.entries:
            if head == "phi":
                i, k, j, r, c, s = v
                if max(i, k, j) >= n:
                    raise SpecParseError("block index out of range", line, col, path)
                _put(phi.setdefault((i, k, j), {}), (r, c), s,
                     (dims[i][k] * dims[k][j], dims[i][j]), line, col, path)
            elif head == "eps":
                i, c, s = v
                if i >= n:
                    raise SpecParseError("block index out of range", line, col, path)
                _put(eps[i], (0, c), s, (1, dims[i][i]), line, col, path)
        phim = {key: Mat.from_sparse(f, dims[key[0]][key[1]] * dims[key[1]][key[2]], dims[key[0]][key[2]], e)
                for key, e in phi.items()}
        epsm = tuple(Mat.from_sparse(f, 1, dims[i][i], eps[i]) for i in range(n))
        spec.comonads[name] = MatrixComonadData(f, n, tuple(tuple(r) for r in dims), phim, epsm, name)
    elif b.kind == "frobenius":
        r = b.header[1]
        mul, psi, cas = {}, {}, {}
        for head, v, line, col in b.entries:
            if head == "mul":
                if max(v[0], v[1]) >= r:
                    raise SpecParseError("index out of range", line, col, path)
                _put(mul, (v[2], v[0] * r + v[1]), v[3], (r, r * r), line, col, path)
            elif head == "psi":
                _put(psi, (0, v[0]), v[1], (1, r), line, col, path)
            else:
                if max(v[0], v[1]) >= r:
                    raise SpecParseError("index out of range", line, col, path)
                _put(cas, (v[0] * r + v[1], 0), v[2], (r * r, 1), line, col, path)
        supplied = Mat.from_sparse(f, r * r, 1, cas) if cas else None
        try:
            spec.frobenius[name] = frobenius(f, Mat.from_sparse(f, r, r * r, mul),
                                             Mat.from_sparse(f, 1, r, psi), supplied)
        except AxiomError as e:
            raise AxiomError(f"line {b.line}: frobenius {name}: {e}", e.verdict) from None
    elif b.kind == "bipartite":
        C, D, M = b.header[1:4]
        _need(spec.coalgebras, C, "coalgebra", b.line)
        _need(spec.coalgebras, D, "coalgebra", b.line)
        bm = _need(spec.bicomodules, M, "bicomodule", b.line)
        if bm.left is not spec.coalgebras[C] or bm.right is not spec.coalgebras[D]:
            raise SpecParseError(f"bicomodule {M} is not over ({C}, {D})", b.line, 1, path)
        wits = []
        for _, v, line, _ in b.entries:
            _need(spec.morphisms, v[0], "morphism", line)
            wits.append(v[0])
        spec.bipartites[name] = BipartiteEntry(C, D, M, wits)


def validate_spec(spec: SpecFile) -> dict:
    """Run every checker; returns ``{name: Verdict}``."""
    out = {}
    for name, c in spec.coalgebras.items():
        out[name] = check_coalgebra(c)
    for name, v in spec.comodules.items():
        out[name] = check_comodule(v)
    for name, m in spec.bicomodules.items():
        out[name] = check_bicomodule(m)
    for name, p in spec.morphisms.items():
        out[name] = check_morphism(p)
    for name, d in spec.comonads.items():
        out[name] = check_comonad(d)
    for name in spec.frobenius:
        out[name] = Verdict.passed()
    return out


def require_valid(spec: SpecFile) -> None:
    for name, v in validate_spec(spec).items():
        if not v:
            raise AxiomError(f"{name} fails {v.axiom} at {v.witness}", v)


def load_spec(path, check: bool = True) -> SpecFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise SpecParseError(f"not UTF-8: {e}", 0, 0, str(p)) from None
    spec = parse_spec(text, str(p))
    if check:
        require_valid(spec)
    return spec


# ---------------------------------------------------------------------------
# writing


def dump_spec(spec: SpecFile) -> str:
    f = spec.field
    fmt = f.format
    out = ["field rational" if f.characteristic == 0 else f"field prime {f.characteristic}"]
    for name, c in spec.coalgebras.items():
        out.append(f"coalgebra {name} dim {c.dim}")
        for (row, k), x in sorted(c.delta.sparse().items()):
            i, j = divmod(row, c.dim)
            out.append(f"  delta {i} {j} {k} {fmt(x)}")
        for (_, k), x in sorted(c.eps.sparse().items()):
            out.append(f"  eps {k} {fmt(x)}")
    cnames = {id(c): n for n, c in spec.coalgebras.items()}
    for name, v in spec.comodules.items():
        out.append(f"comodule {name} over {cnames[id(v.over)]} dim {v.dim}")
        for (row, k), x in sorted(v.rho.sparse().items()):
            i, c = divmod(row, v.over.dim)
            out.append(f"  rho {i} {c} {k} {fmt(x)}")
    for name, m in spec.bicomodules.items():
        out.append(f"bicomodule {name} left {cnames[id(m.left)]} right {cnames[id(m.right)]} dim {m.dim}")
        for (row, k), x in sorted(m.lam.sparse().items()):
            c, i = divmod(row, m.dim)
            out.append(f"  lam {c} {i} {k} {fmt(x)}")
        for (row, k), x in sorted(m.rho.sparse().items()):
            i, d = divmod(row, m.right.dim)
            out.append(f"  rho {i} {d} {k} {fmt(x)}")
    vnames = {id(v): n for n, v in spec.comodules.items()}
    for name, p in spec.morphisms.items():
        out.append(f"morphism {name} from {vnames[id(p.src)]} to {vnames[id(p.dst)]}")
        for (i, j), x in sorted(p.mat.sparse().items()):
            out.append(f"  map {i} {j} {fmt(x)}")
    for name, d in spec.comonads.items():
        out.append(f"comonad {name} n {d.n}")
        for i in range(d.n):
            for j in range(d.n):
                if d.dims[i][j]:
                    out.append(f"  space {i} {j} {d.dims[i][j]}")
        for key in sorted(d.phi):
            for (r, c), x in sorted(d.phi[key].sparse().items()):
                out.append(f"  phi {key[0]} {key[1]} {key[2]} : {r} {c} {fmt(x)}")
        for i in range(d.n):
            for (_, c), x in sorted(d.eps[i].sparse().items()):
                out.append(f"  eps {i} : {c} {fmt(x)}")
    for name, fr in spec.frobenius.items():
        r = fr.rdim
        out.append(f"frobenius {name} dim {r}")
        for (c, col), x in sorted(fr.mul.sparse().items(), key=lambda t: (t[0][1], t[0][0])):
            a, b = divmod(col, r)
            out.append(f"  mul {a} {b} {c} {fmt(x)}")
        for (_, a), x in sorted(fr.psi.sparse().items()):
            out.append(f"  psi {a} {fmt(x)}")
        for (row, _), x in sorted(fr.casimir.sparse().items()):
            a, b = divmod(row, r)
            out.append(f"  casimir {a} {b} {fmt(x)}")
    for name, e in spec.bipartites.items():
        out.append(f"bipartite {name} {e.C} {e.D} {e.M}")
        for w in e.witnesses:
            out.append(f"  witness {w}")
    return "\n".join(out) + "\n"
