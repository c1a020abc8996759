"""wmult command line: every operation prints one JSON document.

Exit codes: 0 success, 2 invalid input, 3 oracle refusal (resource limit),
4 unstable window or non-module character, 1 anything else.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import branching, chars, classify, inductive, oracle
from .errors import InvalidInput, NotAModuleCharacter, OracleRefusal, UnstableWindow
from .rootsys import GroupId, build_root_system
from .weights import format_weight, omega, parse_weight

EXIT_INVALID, EXIT_REFUSAL, EXIT_UNSTABLE = 2, 3, 4
CACHE_ENV = "WMULT_CACHE_DIR"
CACHE_VERSION = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


def _limits(args) -> oracle.OracleLimits:
    cfg = {}
    if getattr(args, "config", None):
        try:
            cfg = json.loads(Path(args.config).read_text())
        except (OSError, ValueError) as e:
            raise InvalidInput(f"cannot read config {args.config}: {e}")
    base = oracle.DEFAULT_LIMITS
    return oracle.OracleLimits(
        max_weyl_dim=args.max_weyl_dim or cfg.get("max_weyl_dim", base.max_weyl_dim),
        max_weight_space=args.max_weight_space or cfg.get("max_weight_space", base.max_weight_space),
        max_lattice_points=cfg.get("max_lattice_points", base.max_lattice_points))


def _group(text: str, p: int) -> GroupId:
    return GroupId.parse(text, p)


def _weight(g: GroupId, text: str):
    w = parse_weight(text)
    if len(w) != g.rank:
        raise InvalidInput(f"weight {text} has {len(w)} coordinates, {g} needs {g.rank}")
    return w


# -- optional on-disk memo for oracle results ------------------------------------------

def _cache_path(g: GroupId, lam):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    key = f"v{CACHE_VERSION}-{g.family}{g.rank}-p{g.p}-{format_weight(lam)}"
    return Path(root) / (hashlib.sha1(key.encode()).hexdigest() + ".json"), key


def _simple_dominant_cached(g, lam, limits) -> dict:
    hit = _cache_path(g, lam)
    if hit:
        path, key = hit
        if path.exists():
            data = json.loads(path.read_text())
            if data.get("key") == key:
                return {tuple(e["weight"]): e["mult"] for e in data["entries"]}
    dom = oracle.simple_dominant(g, lam, limits)
    if hit:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps({"key": key, "entries": [
            {"weight": list(w), "mult": m} for w, m in sorted(dom.items())]}))
    return dom


# -- commands ---------------------------------------------------------------------------

def cmd_rootsys(args):
    g = _group(args.group, args.p)
    return build_root_system(g).to_dict()


def cmd_classify(args):
    g = _group(args.group, args.p)
    lam = _weight(g, args.weight)
    return classify.wdeg_verdict(g, lam).to_json()


def cmd_wdeg(args):
    g = _group(args.group, args.p)
    lam = _weight(g, args.weight)
    if args.oracle:
        dom = _simple_dominant_cached(g, lam, _limits(args))
        return {"group": str(g), "weight": list(lam), "wdeg": max(dom.values()),
                "dim": sum(m * oracle.orbit_size(g, w) for w, m in dom.items()), "source": "oracle"}
    v = classify.wdeg_verdict(g, lam)
    return {"group": str(g), "weight": list(lam), "interval": [v.lo, v.hi], "source": "bounds"}


def _char_operand(g: GroupId, text: str, source: str, limits):
    if text.strip().startswith("["):
        return branching.simple_char_from(g, _weight(g, text), source, limits)
    try:
        data = json.loads(Path(text).read_text())
    except (OSError, ValueError) as e:
        raise InvalidInput(f"operand {text!r} is neither a weight nor a character file: {e}")
    if data.get("mode") != "full":
        raise InvalidInput("character files must be in full mode")
    return chars.FormalCharacter(g, {tuple(e["weight"]): e["mult"] for e in data["entries"]})


def cmd_char(args):
    g = _group(args.group, args.p)
    limits = _limits(args)
    if args.char_cmd == "build":
        arg = args.arg
        if arg is not None and args.name != "spin":
            arg = int(arg)
        chi = chars.build(args.name, g, arg)
    elif args.char_cmd == "simple":
        chi = branching.simple_char_from(g, _weight(g, args.weight), args.source, limits)
    elif args.char_cmd == "freudenthal":
        chi = oracle.freudenthal_char(g, _weight(g, args.weight), limits)
    else:
        a = _char_operand(g, args.left, args.source, limits)
        if args.op == "tensor":
            if not args.right:
                raise InvalidInput("tensor needs --right")
            chi = chars.tensor(a, _char_operand(g, args.right, args.source, limits))
        elif args.op == "twist":
            chi = chars.frobenius_twist(a, args.k)
        else:
            chi = chars.dual(a)
    return chi.to_json(dominant_only=args.dominant)


def cmd_branch(args):
    g = _group(args.group, args.p)
    lam = _weight(g, args.weight)
    limits = _limits(args)
    chi = branching.restrict_char(branching.simple_char_from(g, lam, args.source, limits), args.to)
    factors = branching.decompose(chi, args.source, limits)
    return {"group": str(g), "weight": list(lam), "to": args.to,
            "factors": [{"weight": list(w), "mult": m} for w, m in factors],
            "smith": list(branching.smith_highest_weight(g, lam, range(g.rank - args.to + 1, g.rank + 1)))}


def cmd_verify(args):
    try:
        params = json.loads(args.params)
    except ValueError as e:
        raise InvalidInput(f"--params must be JSON: {e}")
    return branching.verify_lemma(args.lemma, params, args.source, _limits(args)).to_json()


def _named_generators(name: str, p: int):
    if name == "F":
        return lambda t: [omega(t, (t + 1) // 2)]
    if name == "T":
        return lambda t: [omega(t, (t + 1) // 2, p - 1)]
    raise InvalidInput("named generators are F or T")


def cmd_system(args):
    limits = _limits(args)
    if args.sys_cmd == "enumerate":
        return inductive.enumerate_bwm(args.family, args.p, args.s, args.budget).to_json()
    if args.sys_cmd == "generate":
        if args.named:
            gens = _named_generators(args.named, args.p)
        elif args.gens:
            try:
                raw = json.loads(args.gens)
                gens = {int(t): [tuple(w) for w in ws] for t, ws in raw.items()}
            except (ValueError, TypeError, AttributeError) as e:
                raise InvalidInput(f"--gens must map ranks to weight lists: {e}")
        else:
            raise InvalidInput("give --named or --gens")
        win = inductive.generate(gens, args.family, args.p, args.n_min, args.top, args.w,
                                 args.source, limits)
        return win.to_json()
    d = inductive.parse_descriptor(args.descriptor, args.family, args.p)
    if args.sys_cmd == "realize":
        win = inductive.realize(d, args.n_max, args.n_min, args.w, args.source, limits)
        if args.check:
            inductive.check_closure(win, args.source, limits)
            inductive.delta_system(win)
        return win.to_json()
    # check
    win = inductive.realize(d, args.n_max, args.n_min, args.w, args.source, limits)
    inductive.check_closure(win, args.source, limits)
    dl = inductive.delta_system(win)
    out = {"descriptor": inductive.format_descriptor(d), "window": win.to_json(), "delta": dl,
           "in_catalog": inductive.in_catalog(d),
           "bwm": inductive.bwm_check(d, args.n_max, args.n_min, args.w, args.source, limits).to_json()}
    return out


# -- parser --------------------------------------------------------------------------------

def _common(sp, weight=True, group=True):
    if group:
        sp.add_argument("group", help="family and rank, e.g. A4")
    sp.add_argument("-p", type=int, required=True, help="characteristic")
    if weight:
        sp.add_argument("-w", "--weight", required=True, help='fundamental coordinates "[a1,...,an]"')


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="wmult", description="Weight multiplicities of simple modules of classical groups.")
    ap.add_argument("--max-weyl-dim", type=int, default=None)
    ap.add_argument("--max-weight-space", type=int, default=None)
    ap.add_argument("--config", help="JSON file with resource limits")
    ap.add_argument("--table", action="store_true", help="key: value lines instead of JSON")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    r = sub.add_parser("rootsys", help="root system data")
    r.add_argument("what", choices=["info"])
    _common(r, weight=False)
    r.set_defaults(fn=cmd_rootsys)

    c = sub.add_parser("classify", help="Omega membership and wdeg bounds")
    _common(c)
    c.set_defaults(fn=cmd_classify)

    w = sub.add_parser("wdeg", help="wdeg from bounds, or exactly with --oracle")
    w.add_argument("--oracle", action="store_true")
    _common(w)
    w.set_defaults(fn=cmd_wdeg)

    ch = sub.add_parser("char", help="characters")
    csub = ch.add_subparsers(dest="char_cmd", required=True, parser_class=_Parser)
    b = csub.add_parser("build")
    b.add_argument("name", choices=chars.BUILDERS)
    _common(b, weight=False)
    b.add_argument("--arg", default=None, help="wedge index, degree, or spin half (even/odd)")
    s = csub.add_parser("simple")
    _common(s)
    fr = csub.add_parser("freudenthal")
    _common(fr)
    op = csub.add_parser("op")
    op.add_argument("op", choices=["tensor", "twist", "dual"])
    _common(op, weight=False)
    op.add_argument("--left", required=True, help="weight [..] (simple module) or character JSON file")
    op.add_argument("--right")
    op.add_argument("-k", type=int, default=1, help="twist power")
    for x in (b, s, fr, op):
        x.add_argument("--dominant", action="store_true", help="dominant weights only")
        x.add_argument("--source", choices=branching.SOURCES, default="oracle")
    ch.set_defaults(fn=cmd_char)

    br = sub.add_parser("branch", help="composition factors of the restriction to G_k")
    _common(br)
    br.add_argument("--to", type=int, required=True)
    br.add_argument("--source", choices=branching.SOURCES, default="oracle")
    br.set_defaults(fn=cmd_branch)

    v = sub.add_parser("verify-lemma", help="check a branching statement")
    v.add_argument("lemma", choices=sorted(branching.LEMMAS))
    v.add_argument("--params", required=True, help="JSON object")
    v.add_argument("--source", choices=branching.SOURCES, default="oracle")
    v.set_defaults(fn=cmd_verify)

    sy = sub.add_parser("system", help="inductive systems")
    ssub = sy.add_subparsers(dest="sys_cmd", required=True, parser_class=_Parser)
    en = ssub.add_parser("enumerate")
    en.add_argument("family", choices=["A", "B", "C", "D"])
    en.add_argument("-p", type=int, required=True)
    en.add_argument("-s", type=int, default=1)
    en.add_argument("--budget", type=int, default=2, help="pdeg budget for C_L/C_R atoms")
    for name in ("realize", "check"):
        x = ssub.add_parser(name)
        x.add_argument("descriptor", help="e.g. \"L * Fr(S)\"")
        x.add_argument("-f", "--family", required=True, choices=["A", "B", "C", "D"])
        x.add_argument("-p", type=int, required=True)
        x.add_argument("--n-max", type=int, default=8)
        x.add_argument("--n-min", type=int, default=None)
        x.add_argument("-W", "--w", type=int, default=2, help="stabilization window")
        x.add_argument("--source", choices=branching.SOURCES, default="auto")
        if name == "realize":
            x.add_argument("--check", action="store_true", help="also run closure and delta checks")
    ge = ssub.add_parser("generate")
    ge.add_argument("-f", "--family", required=True, choices=["A", "B", "C", "D"])
    ge.add_argument("-p", type=int, required=True)
    ge.add_argument("--named", choices=["F", "T"])
    ge.add_argument("--gens", help='JSON {"rank": [[weight], ...]}')
    ge.add_argument("--top", type=int, default=10)
    ge.add_argument("--n-min", type=int, default=None)
    ge.add_argument("-W", "--w", type=int, default=2)
    ge.add_argument("--source", choices=branching.SOURCES, default="auto")
    sy.set_defaults(fn=cmd_system)
    return ap


def _table(obj, prefix="") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            lines += _table(v, f"{prefix}{k}.")
    else:
        lines.append(f"{prefix.rstrip('.')}: {json.dumps(obj, sort_keys=True)}")
    return lines


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    table = False
    try:
        args = build_parser().parse_args(argv)
        table = args.table
        out = args.fn(args)
        code = 0
    except InvalidInput as e:
        out, code = {"error": "invalid_input", "reason": str(e)}, EXIT_INVALID
    except OracleRefusal as e:
        out, code = {"error": "oracle_refusal", "reason": str(e)}, EXIT_REFUSAL
    except (UnstableWindow, NotAModuleCharacter) as e:
        out, code = {"error": type(e).__name__, "reason": str(e)}, EXIT_UNSTABLE
    if table and code == 0:
        print("\n".join(_table(out)))
    else:
        print(json.dumps(out, sort_keys=True, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
