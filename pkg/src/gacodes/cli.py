"""``gacodes`` command line.

Every command prints a short text summary, or one JSON document with
``--json``.  Files are passed as ``@path`` (a bare path works too).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import kernels
from .codes import IdealSpec, LinearCode, code_dimension, code_from_ideal, count_group_codes, dihedral_dual_ideal
from .distance import BudgetExceeded, min_distance, verify_distance
from .galg import build_iso, left_ideal_from_element
from .groups import Dihedral
from .parse import ParseError, format_element, parse_element, parse_generator_names, parse_group
from .quantum import css_build, css_check, css_params_json
from .repro import TABLES, run_repro
from .wa import decompose_group

STRATEGIES = ("auto", "exhaustive", "lowweight", "estimate", "none")


class CLIError(Exception):
    pass


def load_schema(name: str) -> dict:
    """JSON schema of a command's ``--json`` output (``decompose``, ``code``, ``css``, ...)."""
    return json.loads((Path(__file__).parent / "schemas" / f"{name}.json").read_text())


def _read(arg: str) -> str:
    path = Path(arg[1:] if arg.startswith("@") else arg)
    try:
        return path.read_text()
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}") from None


def _read_json(arg: str) -> dict:
    try:
        return json.loads(_read(arg))
    except json.JSONDecodeError as exc:
        raise CLIError(f"{arg}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _group(args):
    return parse_group(args.group)


def _dihedral(args) -> Dihedral:
    spec = _group(args)
    if not isinstance(spec, Dihedral):
        raise CLIError("this command needs a dihedral group D<n>")
    return spec


def _ideal(arg: str, dec) -> IdealSpec:
    obj = _read_json(arg)
    return IdealSpec.from_json(obj, decomposition=dec)


def _distance_json(code: LinearCode, strategy: str, args) -> dict:
    if strategy == "none" or code.k == 0:
        return {"value": None, "status": "unknown"}
    r = min_distance(code, strategy, budget=args.budget, threads=args.threads)
    return r.to_json(code.field)


def _code_out(code: LinearCode, d: dict, extra: dict | None = None) -> dict:
    out = {"n": code.n, "k": code.k, "d": d, "q": code.q}
    if extra:
        out.update(extra)
    out["code"] = code.to_json()
    return out


def _fmt_d(d: dict) -> str:
    if d["value"] is None:
        return "?"
    return str(d["value"]) if d["status"] == "exact" else f"<={d['value']}"


# ---------------------------------------------------------------------------
# commands


def cmd_decompose(args):
    spec = _group(args)
    dec = decompose_group(args.q, spec)
    out = {"q": args.q, "group": str(spec), "order": spec.order, "decomposition": dec.to_json(), "text": str(dec)}
    return out, f"F_{args.q}[{spec}] = {dec}"


def cmd_count(args):
    spec = _group(args)
    dec = decompose_group(args.q, spec)
    n = count_group_codes(dec)
    return {"q": args.q, "group": str(spec), "count": n}, f"{n} left group codes in F_{args.q}[{spec}]"


def cmd_element_code(args):
    spec = _group(args)
    text = _read(args.elem) if args.elem.startswith("@") else args.elem
    names = parse_generator_names(args.gens, spec) if args.gens else None
    u = parse_element(text.strip(), spec, args.q, names)
    code = left_ideal_from_element(u)
    d = _distance_json(code, args.distance, args)
    out = _code_out(code, d, {"element": format_element(u, names)})
    return out, f"[{code.n}, {code.k}, {_fmt_d(d)}]_{code.q}"


def cmd_build_code(args):
    spec = _group(args)
    iso = build_iso(args.q, spec)
    ideal = _ideal(args.ideal, iso.decomposition)
    code = code_from_ideal(iso, ideal)
    d = _distance_json(code, args.distance, args)
    out = _code_out(code, d, {"ranks": ideal.ranks(), "dimension": code_dimension(ideal)})
    return out, f"[{code.n}, {code.k}, {_fmt_d(d)}]_{code.q}"


def cmd_dual(args):
    spec = _dihedral(args)
    iso = build_iso(args.q, spec)
    ideal = _ideal(args.ideal, iso.decomposition)
    dual = dihedral_dual_ideal(args.q, spec.n, ideal)
    out = {"q": args.q, "group": str(spec), "dimension": code_dimension(dual), "ideal": dual.to_json()}
    return out, f"dual ideal: ranks {dual.ranks()}, dimension {code_dimension(dual)}"


def cmd_distance(args):
    code = LinearCode.from_json(_read_json(args.code))
    if args.claim is not None:
        cert = verify_distance(code, args.claim, budget=args.budget, threads=args.threads)
        out = {"n": code.n, "k": code.k, "q": code.q, "claim": args.claim, "certified": cert.certified}
        out.update(cert.to_json(code.field))
        verdict = "certified" if cert.certified else "not certified"
        return out, f"d = {args.claim}: {verdict}", 0 if cert.certified else 1
    d = _distance_json(code, args.strategy, args)
    return {"n": code.n, "k": code.k, "d": d, "q": code.q}, f"[{code.n}, {code.k}, {_fmt_d(d)}]_{code.q}"


def cmd_css(args):
    spec = _dihedral(args)
    iso = build_iso(args.q, spec)
    c1 = code_from_ideal(iso, _ideal(args.ideal1, iso.decomposition))
    c2 = code_from_ideal(iso, _ideal(args.ideal2, iso.decomposition))
    if not css_check(c1, c2):
        raise CLIError("the dual of the second code is not contained in the first")
    p = css_build(c1, c2, budget=args.budget, threads=args.threads)
    out = css_params_json(p, c1.field)
    out["k1"], out["k2"] = c1.k, c2.k
    return out, str(p)


def cmd_repro(args):
    rep = run_repro(args.table, threads=args.threads, budget=args.budget)
    return rep.to_json(), str(rep), 0 if rep.ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print JSON")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker threads for searches")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="operation budget for exact searches")
    common.add_argument("--gens", default=argparse.SUPPRESS, help='generator names per factor, e.g. "x,y;z"')
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="gacodes", description="Group algebra codes over finite fields.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    def qg(sp):
        sp.add_argument("--q", type=int, required=True, help="field order")
        sp.add_argument("--group", required=True, help="e.g. C5, D4xC4, D7xD2")

    qg(add("decompose", cmd_decompose, "Wedderburn-Artin decomposition"))
    qg(add("count", cmd_count, "number of left group codes"))
    sp = add("element-code", cmd_element_code, "code generated by an algebra element")
    qg(sp)
    sp.add_argument("--elem", required=True, help="element text or @file")
    sp.add_argument("--distance", choices=STRATEGIES, default="auto")
    sp = add("build-code", cmd_build_code, "code of a block-wise ideal")
    qg(sp)
    sp.add_argument("--ideal", required=True, help="@file with the ideal JSON")
    sp.add_argument("--distance", choices=STRATEGIES, default="none")
    sp = add("dual", cmd_dual, "dual ideal of a dihedral code")
    qg(sp)
    sp.add_argument("--ideal", required=True)
    sp = add("distance", cmd_distance, "minimum distance of a code in JSON form")
    sp.add_argument("--code", required=True, help="@file with the code JSON")
    sp.add_argument("--strategy", choices=STRATEGIES[:-1], default="auto")
    sp.add_argument("--claim", type=int, help="certify this distance instead")
    sp = add("css", cmd_css, "CSS code from two dihedral ideals")
    qg(sp)
    sp.add_argument("--ideal1", required=True)
    sp.add_argument("--ideal2", required=True)
    sp = add("repro", cmd_repro, "recompute a reference table")
    sp.add_argument("table", choices=TABLES)
    return p


_GLOBAL_DEFAULTS = {"json": False, "threads": 1, "budget": None, "gens": None, "verbose": False}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for key, value in _GLOBAL_DEFAULTS.items():  # global flags may come before or after the command
        if not hasattr(args, key):
            setattr(args, key, value)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return 2
    try:
        res = args.fn(args)
    except (CLIError, ParseError, BudgetExceeded, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, (BudgetExceeded, KeyError)) and exc.args else exc
        if args.json:
            print(json.dumps({"error": str(msg)}))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return 2
    out, text, code = res if len(res) == 3 else (*res, 0)
    if args.json:
        out.setdefault("backend", kernels.BACKEND)
        print(json.dumps(out))
    else:
        print(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
