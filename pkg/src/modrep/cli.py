"""Command-line front end.  Every successful command prints one JSON document."""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import bgg, homalg, kmodule, rankvariety, suppcomm
from .ideals import Ideal, PresentedModule
from .io import SchemaError, dumps_module, read_module
from .kmodule import ElemAbGroupAlg, ModuleError
from .poly import PolyRing

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE = 0, 1, 2


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_group(s: str):
    m = re.fullmatch(r"\s*(\d+)\s*\^\s*(\d+)\s*", s or "")
    if not m:
        raise UsageError(f"bad group {s!r}; expected p^r such as 2^2")
    p, r = int(m.group(1)), int(m.group(2))
    if r < 1:
        raise UsageError("group rank must be positive")
    return ElemAbGroupAlg(p, r)


def load_module(spec: str, group: str | None):
    """A module file path or one of: trivial, regular, omega:k:n, L:c1,..,cr:n."""
    if spec == "trivial" or spec == "regular" or spec.startswith("omega:"):
        alg = parse_group(group or "2^2")
        if spec == "trivial":
            return kmodule.trivial(alg)
        if spec == "regular":
            return kmodule.regular(alg)
        parts = spec.split(":")
        if len(parts) != 3 or parts[1] != "k":
            raise UsageError(f"bad built-in {spec!r}; expected omega:k:n")
        return homalg.omega_power(kmodule.trivial(alg), _int(parts[2], "omega power"))
    if spec.startswith("L:"):
        parts = spec.split(":")
        if len(parts) != 3:
            raise UsageError(f"bad built-in {spec!r}; expected L:c1,...,cr:n")
        c = [_int(x, "class coefficient") for x in parts[1].split(",")]
        p = parse_group(group).p if group else 2
        return homalg.carlson_L(c, _int(parts[2], "L degree"), p)
    return read_module(spec)


def _int(s, what):
    try:
        return int(s)
    except (TypeError, ValueError):
        raise UsageError(f"{what}: expected an integer, got {s!r}") from None


def split_top_level(s: str):
    return [x.strip() for x in s.split(",") if x.strip()]


def _module_doc(m):
    return json.loads(dumps_module(m))


def _presented(ring: PolyRing, text: str | None) -> PresentedModule:
    """A/I where I is given by comma-separated generators; empty means A."""
    gens = [ring.parse(g) for g in split_top_level(text or "")]
    return PresentedModule.cyclic(Ideal(ring, gens))


def _support_doc(s: suppcomm.SupportSet):
    return sorted(s.generator_strings())


def _subset(text: str, r_max: int):
    idx = [_int(x, "subset index") for x in split_top_level(text)]
    if not idx or any(i < 1 or i > r_max for i in idx):
        raise UsageError(f"subset indices must lie in 1..{r_max}")
    return [i - 1 for i in idx]


# -- commands -------------------------------------------------------------------

def cmd_validate(a):
    m = _main_module(a)
    m.validate()
    return {"valid": True, "p": m.p, "r": m.r, "dim": m.dim}


def cmd_tensor(a):
    return _module_doc(kmodule.tensor_diag(_main_module(a), _other_module(a)))


def cmd_dual(a):
    return _module_doc(kmodule.dual(_main_module(a)))


def cmd_hom(a):
    return _module_doc(kmodule.hom_module(_main_module(a), _other_module(a)))


def cmd_restrict(a):
    m = _main_module(a)
    return _module_doc(kmodule.restrict_subset(m, _subset(a.subset, m.r)))


def cmd_induce(a):
    m = _main_module(a)
    if not a.target:
        raise UsageError("induce needs --to p^r")
    alg = parse_group(a.target).with_field(m.field)
    return _module_doc(kmodule.induce_subset(m, alg, _subset(a.subset, alg.r)))


def cmd_omega(a):
    return _module_doc(homalg.omega_power(_main_module(a), a.n))


def cmd_ext_dims(a):
    m = _main_module(a)
    other = _other_module(a) if a.other else kmodule.trivial(m.algebra)
    return {"dims": homalg.ext_dims(m, other, a.max)}


def cmd_tate_dim(a):
    m = _main_module(a)
    other = _other_module(a) if a.other else kmodule.trivial(m.algebra)
    return {"degree": a.n, "dim": homalg.tate_dim(m, other, a.n)}


def cmd_is_projective(a):
    return {"projective": kmodule.is_projective(_main_module(a))}


def cmd_free_rank(a):
    return {"free_rank": kmodule.free_rank(_main_module(a))}


def cmd_rank_variety(a):
    v = rankvariety.rank_variety_ideal(_main_module(a))
    return {
        "required_rank": v.required_rank,
        "generators": v.generator_strings(),
        "origin_only": rankvariety.is_origin_only(v),
    }


def cmd_carlson(a):
    c = [_int(x, "class coefficient") for x in split_top_level(a.cls)]
    p = parse_group(a.group).p if a.group else 2
    return _module_doc(homalg.carlson_L(c, a.n, p))


def cmd_koszul(a):
    ring = PolyRing.from_string(a.ring)
    elems = [ring.parse(e) for e in split_top_level(a.elems)]
    if a.module is None:
        cx = suppcomm.koszul_complex(ring, elems)
    else:
        cx = suppcomm.koszul_on_module(_presented(ring, a.module), elems)
    coh = suppcomm.complex_cohomology(cx)
    h = {}
    for n, mod in sorted(coh.items()):
        h[str(n)] = {"support": _support_doc(suppcomm.supp_module(mod))}
    return {
        "ranks": {str(n): cx.rank(n) for n in cx.degrees()},
        "cohomology": h,
        "support": _support_doc(suppcomm.supp_complex(cx)),
    }


def cmd_supp(a):
    ring = PolyRing.from_string(a.ring)
    return {"support": _support_doc(suppcomm.supp_module(_presented(ring, a.module)))}


def cmd_bgg_check(a):
    r = parse_group(a.group or "2^2").r
    return {"window": a.max, "eta_ok": bgg.eta_check(r, a.max), "zeta_ok": bgg.zeta_check(r, a.max)}


def cmd_bgg(a):
    m = _main_module(a)
    win = bgg.bgg_transform(m, a.max)
    return {
        "window": win.window,
        "dims": win.dims,
        "certified": win.certified,
        "zeta_ok": bgg.zeta_check(m.r, a.max),
        "eta_ok": bgg.eta_check(m.r, a.max),
    }


def _main_module(a):
    return load_module(a.inp or "trivial", a.group)


def _other_module(a):
    if not a.other:
        raise UsageError("this command needs --other")
    return load_module(a.other, a.group)


COMMANDS = {
    "validate": cmd_validate,
    "tensor": cmd_tensor,
    "dual": cmd_dual,
    "hom": cmd_hom,
    "restrict": cmd_restrict,
    "induce": cmd_induce,
    "omega": cmd_omega,
    "ext-dims": cmd_ext_dims,
    "tate-dim": cmd_tate_dim,
    "is-projective": cmd_is_projective,
    "free-rank": cmd_free_rank,
    "rank-variety": cmd_rank_variety,
    "carlson": cmd_carlson,
    "koszul": cmd_koszul,
    "supp": cmd_supp,
    "bgg-check": cmd_bgg_check,
    "bgg": cmd_bgg,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="modrep", description="Modules over elementary abelian p-groups.")
    sub = parser.add_subparsers(dest="verb", parser_class=_Parser)
    sub.required = True
    common = _Parser(add_help=False)
    common.add_argument("--in", dest="inp", metavar="FILE", help="module file or built-in name")
    common.add_argument("--out", metavar="FILE", help="write the JSON result here")
    common.add_argument("--group", metavar="p^r", help="group for built-in modules")
    common.add_argument("--threads", type=int, default=1, help="accepted; output never depends on it")
    specs = {
        "validate": [], "dual": [], "is-projective": [], "free-rank": [], "rank-variety": [],
        "tensor": [("--other", {"required": True})],
        "hom": [("--other", {"required": True})],
        "restrict": [("--subset", {"required": True, "help": "1-based generator indices"})],
        "induce": [("--subset", {"required": True}), ("--to", {"dest": "target", "required": True})],
        "omega": [("-n", {"type": int, "required": True})],
        "ext-dims": [("--max", {"type": int, "required": True}), ("--other", {})],
        "tate-dim": [("-n", {"type": int, "required": True}), ("--other", {})],
        "carlson": [("--class", {"dest": "cls", "required": True}), ("-n", {"type": int, "required": True})],
        "koszul": [("--ring", {"required": True}), ("--elems", {"required": True}), ("--module", {})],
        "supp": [("--ring", {"required": True}), ("--module", {"required": True})],
        "bgg-check": [("--max", {"type": int, "required": True})],
        "bgg": [("--max", {"type": int, "required": True})],
    }
    for verb in COMMANDS:
        sp = sub.add_parser(verb, parents=[common])
        for flag, kw in specs[verb]:
            sp.add_argument(flag, **kw)
        if "--other" not in dict(specs[verb]):
            sp.set_defaults(other=None)
        sp.set_defaults(func=COMMANDS[verb])
    return parser


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
    except (UsageError, SchemaError, ModuleError, ValueError, KeyError, OSError) as exc:
        print(f"modrep: error: {_oneline(exc)}", file=stderr)
        return EXIT_INPUT
    except (rankvariety.SizeLimitError, NotImplementedError, RuntimeError, ArithmeticError, MemoryError) as exc:
        print(f"modrep: computation failed: {_oneline(exc)}", file=stderr)
        return EXIT_COMPUTE
    text = json.dumps(result, separators=(",", ":"))
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"modrep: error: {_oneline(exc)}", file=stderr)
            return EXIT_INPUT
    else:
        print(text, file=stdout)
    return EXIT_OK


def _oneline(exc) -> str:
    msg = str(exc) or type(exc).__name__
    return " ".join(msg.split())


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
