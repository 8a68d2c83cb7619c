"""Command-line interface: ``matcomonad <command> [options]``.

Exit status: 0 computed, 2 input or parse error, 3 radical refused over the
chosen field, 4 internal assertion.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import __version__
from .base import AxiomError, InternalAssertion, MatcomonadError, RadicalRefusal
from .base_change import build_bipartite
from .coalgebra import check_coalgebra, dual_algebra
from .comodule import check_morphism, cotensor, is_split_epi, regular_comodule
from .corpus import build_corpus, load_bundled, random_comodule
from .equivalence import from_triple, same_triple, to_triple
from .hereditary import check_thm_bipartite, check_thm_n
from .homological import (comodule_to_module, gl_dim, inj_dim_comodule, is_injective_comodule,
                          is_injective_via_dual, radical)
from .linalg import QQ, Field, Mat
from .matrix_comonad import check_comonad, is_normal, is_triangular, total_coalgebra
from .specfile import SpecFile, SpecParseError, UnresolvedReference, load_spec, validate_spec

EXIT_OK, EXIT_INPUT, EXIT_REFUSED, EXIT_INTERNAL = 0, 2, 3, 4


class InputError(MatcomonadError):
    pass


def mat_json(m: Mat) -> dict:
    return {"rows": m.rows, "cols": m.cols,
            "entries": [[i, j, m.field.format(x)] for (i, j), x in sorted(m.sparse().items())]}


def parse_field(text: str) -> Field:
    t = text.strip().lower()
    if t in ("rational", "q", "qq"):
        return QQ
    if t.startswith("prime:"):
        t = t[6:]
    try:
        return Field.prime(int(t))
    except ValueError:
        raise InputError(f"unknown field '{text}' (use 'rational' or a prime)") from None


# ---------------------------------------------------------------------------
# spec access


def load(args) -> SpecFile:
    if args.spec:
        spec = load_spec(args.spec)
        if args.field and parse_field(args.field) != spec.field:
            raise InputError(f"--field {args.field} conflicts with the spec file's field {spec.field}")
        return spec
    if args.field and parse_field(args.field) != QQ:
        return build_corpus(parse_field(args.field))
    return load_bundled()


def get(spec: SpecFile, kind: str, name: str | None):
    if not name:
        raise InputError(f"missing {kind[:-1]} name")
    d = getattr(spec, kind)
    if name not in d:
        raise UnresolvedReference(name, kind[:-1])
    return d[name]


def resolve_bipartite(spec: SpecFile, tokens):
    """``NAME`` or ``C=.. D=.. M=..``; returns (label, C, D, M, witnesses)."""
    if not tokens:
        raise InputError("--bipartite is required")
    if len(tokens) == 1 and "=" not in tokens[0]:
        e = get(spec, "bipartites", tokens[0])
        wits = [spec.morphisms[w] for w in e.witnesses]
        return tokens[0], spec.coalgebras[e.C], spec.coalgebras[e.D], spec.bicomodules[e.M], wits
    kv = {}
    for t in tokens:
        if "=" not in t:
            raise InputError(f"expected KEY=NAME, got '{t}'")
        k, v = t.split("=", 1)
        kv[k.upper()] = v
    if set(kv) != {"C", "D", "M"}:
        raise InputError("--bipartite needs C=, D= and M=")
    C = get(spec, "coalgebras", kv["C"])
    D = get(spec, "coalgebras", kv["D"])
    M = get(spec, "bicomodules", kv["M"])
    wits = []
    for name, e in spec.bipartites.items():
        if (e.C, e.D, e.M) == (kv["C"], kv["D"], kv["M"]):
            wits = [spec.morphisms[w] for w in e.witnesses]
    return f"C={kv['C']} D={kv['D']} M={kv['M']}", C, D, M, wits


# ---------------------------------------------------------------------------
# commands


def cmd_validate(spec, args) -> dict:
    verdicts = validate_spec(spec)
    names = sorted(verdicts) if args.all or not args.name else [args.name]
    out = {}
    for n in names:
        if n not in verdicts and n not in spec.bipartites:
            raise UnresolvedReference(n, "object")
        if n in verdicts:
            out[n] = verdicts[n].to_dict()
    if args.all or (args.name in spec.bipartites):
        for n, e in sorted(spec.bipartites.items()):
            if not args.all and n != args.name:
                continue
            bip = build_bipartite(spec.coalgebras[e.C], spec.coalgebras[e.D], spec.bicomodules[e.M], n)
            rec = check_coalgebra(bip.E).to_dict()
            from .hereditary import verify_split_witness
            rec["witnesses"] = {w: verify_split_witness(bip.M, spec.morphisms[w]) for w in e.witnesses}
            out[n] = rec
    ok = all(r["ok"] for r in out.values()) and \
        all(all(r.get("witnesses", {}).values()) for r in out.values())
    return {"all_ok": ok, "objects": out}


def cmd_cotensor(spec, args) -> dict:
    v = get(spec, "comodules", args.comodule)
    m = get(spec, "bicomodules", args.bicomodule)
    cot = cotensor(v, m)
    return {"dim": cot.dim, "coaction": mat_json(cot.comodule.rho), "inclusion": mat_json(cot.inclusion)}


def cmd_dual_algebra(spec, args) -> dict:
    c = get(spec, "coalgebras", args.coalg)
    A = dual_algebra(c)
    rad = radical(A)
    return {"dim": A.dim, "mul": mat_json(A.mul), "unit": mat_json(A.unit),
            "associative": A.is_associative(), "unital": A.is_unital(), "radical": mat_json(rad.basis)}


def cmd_injective(spec, args) -> dict:
    v = get(spec, "comodules", args.comodule)
    rep = inj_dim_comodule(v, args.cap)
    return {"injective": is_injective_comodule(v), "injective_via_dual": is_injective_via_dual(v),
            "inj_dim": rep.to_dict(), "module_dim": comodule_to_module(v).dim}


def cmd_split_epi(spec, args) -> dict:
    p = get(spec, "morphisms", args.morphism)
    if not check_morphism(p):
        raise AxiomError(f"{args.morphism} is not a comodule morphism")
    r = is_split_epi(p)
    return {"split": r.split, "section": mat_json(r.section.mat) if r.section else None}


def cmd_gldim(spec, args) -> dict:
    c = get(spec, "coalgebras", args.coalg)
    rep = gl_dim(c, args.cap)
    return {"coalgebra": args.coalg, **rep.to_dict(), "certificate_ok": rep.verify()}


def cmd_bipartite_build(spec, args) -> dict:
    label, C, D, M, _ = resolve_bipartite(spec, args.bipartite)
    direct = build_bipartite(C, D, M, route="direct")
    via = build_bipartite(C, D, M, route="base-change")
    return {"bipartite": label, "dim": direct.E.dim, "delta": mat_json(direct.E.delta),
            "eps": mat_json(direct.E.eps), "coalgebra_check": check_coalgebra(direct.E).to_dict(),
            "routes_agree": direct.E.same_as(via.E)}


def cmd_npartite_build(spec, args) -> dict:
    d = get(spec, "comonads", args.comonad)
    E = total_coalgebra(d)
    return {"comonad": args.comonad, "n": d.n, "comonad_check": check_comonad(d).to_dict(),
            "triangular": is_triangular(d), "normal": is_normal(d), "dim": E.dim,
            "delta": mat_json(E.delta), "eps": mat_json(E.eps),
            "coalgebra_check": check_coalgebra(E).to_dict()}


def cmd_hereditary(spec, args) -> dict:
    if args.comonad:
        d = get(spec, "comonads", args.comonad)
        v = check_thm_n(d, samples=args.samples, seed=args.seed, budget=args.budget)
        return {"comonad": args.comonad, **v.to_dict()}
    label, C, D, M, wits = resolve_bipartite(spec, args.bipartite)
    v = check_thm_bipartite(C, D, M, samples=args.samples, seed=args.seed, budget=args.budget,
                            witnesses=wits)
    return {"bipartite": label, **v.to_dict()}


def cmd_equiv_roundtrip(spec, args) -> dict:
    label, C, D, M, _ = resolve_bipartite(spec, args.bipartite)
    bip = build_bipartite(C, D, M)
    rng = random.Random(args.seed)
    family = [regular_comodule(bip.E)]
    family += [random_comodule(bip.E, rng, 5) for _ in range(args.count)]
    ok1 = ok2 = 0
    for w in family:
        t = to_triple(w, bip)
        if from_triple(t).rho == w.rho:
            ok1 += 1
        t0 = to_triple(from_triple(t), bip)
        if same_triple(t0, t):
            ok2 += 1
    return {"bipartite": label, "tested": len(family), "from_to_identity": ok1, "to_from_identity": ok2,
            "all_ok": ok1 == ok2 == len(family)}


COMMANDS = {
    "validate": cmd_validate,
    "cotensor": cmd_cotensor,
    "dual-algebra": cmd_dual_algebra,
    "injective": cmd_injective,
    "split-epi": cmd_split_epi,
    "gldim": cmd_gldim,
    "bipartite-build": cmd_bipartite_build,
    "npartite-build": cmd_npartite_build,
    "hereditary": cmd_hereditary,
    "equiv-roundtrip": cmd_equiv_roundtrip,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="spec file (default: bundled corpus)")
    common.add_argument("--field", help="'rational' or a prime; rebuilds the bundled corpus over it")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=200)
    common.add_argument("--samples", type=int, default=20)
    common.add_argument("--cap", type=int, default=16)
    common.add_argument("--out", help="write the report to this path")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    p = argparse.ArgumentParser(prog="matcomonad", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("validate", parents=[common])
    s.add_argument("--all", action="store_true")
    s.add_argument("--name")
    s = sub.add_parser("cotensor", parents=[common])
    s.add_argument("--comodule", required=True)
    s.add_argument("--bicomodule", required=True)
    s = sub.add_parser("dual-algebra", parents=[common])
    s.add_argument("--coalg", required=True)
    s = sub.add_parser("injective", parents=[common])
    s.add_argument("--comodule", required=True)
    s = sub.add_parser("split-epi", parents=[common])
    s.add_argument("--morphism", required=True)
    s = sub.add_parser("gldim", parents=[common])
    s.add_argument("--coalg", required=True)
    for name in ("bipartite-build", "equiv-roundtrip"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--bipartite", nargs="+", required=True)
        if name == "equiv-roundtrip":
            s.add_argument("--count", type=int, default=20)
    s = sub.add_parser("npartite-build", parents=[common])
    s.add_argument("--comonad", required=True)
    s = sub.add_parser("hereditary", parents=[common])
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--bipartite", nargs="+")
    g.add_argument("--comonad")
    return p


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        if set(obj) == {"rows", "cols", "entries"}:
            return [f"{pad}{obj['rows']}x{obj['cols']} matrix, {len(obj['entries'])} nonzero entries"]
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines += _text(v, indent)
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    return "\n".join(_text(report)) + "\n"


def run(argv=None) -> tuple[int, str]:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        spec = load(args)
        result = COMMANDS[args.command](spec, args)
        code = EXIT_OK
    except (SpecParseError, UnresolvedReference, InputError, AxiomError, FileNotFoundError,
            IsADirectoryError, ValueError) as e:
        return EXIT_INPUT, f"error: {e}\n"
    except RadicalRefusal as e:
        return EXIT_REFUSED, f"radical uncertified for this field: {e}\n"
    except (InternalAssertion, AssertionError) as e:
        return EXIT_INTERNAL, f"internal assertion: {e}\n"
    report = {"command": args.command, "version": __version__, "seed": args.seed, "result": result}
    if args.timing:
        report["seconds"] = round(time.perf_counter() - t0, 6)
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code, text


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code == EXIT_OK else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
