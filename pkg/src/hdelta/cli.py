"""Command line front-end.

Exit status: 0 verified or found, 1 not verified or nothing found, 2 input
error, 3 resource guard exceeded. Every report is a sequence of JSON lines.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Optional, TextIO

from . import cardinals, cohen, deltasys, formats, generators, miner
from .errors import InputError, ResourceGuardError
from .ordsets import ordset

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3

MODES = ("classical", "uniform1d", "strict", "ndim", "uniform", "moreover", "variation")
KINDS = (
    "product",
    "shift",
    "indicator",
    "pairing",
    "parity",
    "first-difference",
    "lift",
    "knaster-example",
    "product-conditions",
)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _int_list(text: str) -> list:
    text = text.strip()
    try:
        if text.startswith("["):
            vals = json.loads(text)
        else:
            vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected a list of integers, got {text!r}") from None
    if not isinstance(vals, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in vals):
        raise InputError(f"expected a list of integers, got {text!r}")
    return vals


class _Out:
    def __init__(self, stream: TextIO):
        self.stream = stream

    def rec(self, obj: dict) -> None:
        self.stream.write(formats.dumps_record(obj) + "\n")

    def lines(self, lines) -> None:
        for line in lines:
            self.stream.write(line + "\n")


def _verdict(out: _Out, mode: str, ok: bool, extra: Optional[dict] = None) -> int:
    rec = {"mode": mode, "verdict": "verified" if ok else "not verified"}
    if extra:
        rec.update(extra)
    out.rec(rec)
    return EXIT_OK if ok else EXIT_NO


def _violation(out: _Out, v: Optional[dict]) -> None:
    if v is not None:
        out.rec({"violation": v})


def cmd_verify(args: argparse.Namespace, out: _Out) -> int:
    f = formats.read_family(_read(args.family))
    mode = args.mode
    if mode == "classical":
        root = deltasys.verify_classical(f.values())
        return _verdict(out, mode, root is not None, {"root": list(root)} if root is not None else None)
    if mode == "uniform1d":
        res = deltasys.verify_uniform_1d(f.values())
        extra = {"root": list(res[0]), "mask": list(res[1])} if res is not None else None
        return _verdict(out, mode, res is not None, extra)
    if mode == "strict":
        v = deltasys.strict_violation(f)
        code = _verdict(out, mode, v is None)
        _violation(out, v)
        return code
    if mode == "ndim":
        if args.roots:
            rs = formats.read_roots(_read(args.roots))
            v = deltasys.ndim_violation(f, rs)
            code = _verdict(out, mode, v is None)
            _violation(out, v)
            return code
        rs = deltasys.find_roots(f)
        code = _verdict(out, mode, rs is not None)
        if rs is not None:
            out.lines(formats.roots_lines(rs))
        return code
    if mode == "uniform":
        if args.witness:
            w = formats.read_witness(_read(args.witness))
        else:
            w = deltasys.infer_witness(f)
        if w is None:
            code = _verdict(out, mode, False)
            _violation(out, {"clause": 1, "reason": "entries have different order types"})
            return code
        v = deltasys.uniform_violation(f, w)
        code = _verdict(out, mode, v is None, {"witness": formats.witness_record(w)})
        _violation(out, v)
        return code
    if mode == "moreover":
        v = deltasys.moreover_violation(f)
        code = _verdict(out, mode, v is None)
        _violation(out, v)
        return code
    if mode == "variation":
        if not args.ext:
            raise InputError("--mode variation needs --ext")
        n, ground, ext = formats.read_ext(_read(args.ext))
        if n != f.n or ground != f.ground:
            raise InputError("extension header does not match the family")
        v = deltasys.variation_violation(f, ext)
        code = _verdict(out, mode, v is None)
        _violation(out, v)
        return code
    raise InputError(f"unknown mode {mode!r}")


def _mine_record(res: miner.MineResult) -> dict:
    return {
        "H": list(res.H),
        "witness": formats.witness_record(res.witness),
        "color": formats.encode_color(res.color),
    }


def cmd_mine(args: argparse.Namespace, out: _Out) -> int:
    f = formats.read_family(_read(args.family))
    coloring = formats.read_coloring(_read(args.coloring), product=False) if args.coloring else None
    if args.max:
        hmax, H = miner.exhaustive_max(f, coloring, args.moreover)
        out.rec({"hmax": hmax, "H": list(H)})
        return EXIT_OK
    if args.size is None:
        raise InputError("mine needs --size (or --max)")
    req = miner.MineRequest(f, args.size, coloring, "greedy" if args.greedy else "exact", args.moreover)
    res = miner.mine(req)
    if res is None:
        out.rec({"found": False, "size": args.size})
        return EXIT_NO
    out.rec(_mine_record(res))
    return EXIT_OK


def cmd_gen(args: argparse.Namespace, out: _Out) -> int:
    kind = args.kind

    def need(name: str):
        v = getattr(args, name)
        if v is None:
            raise InputError(f"gen --kind {kind} needs --{name.replace('_', '-')}")
        return v

    if kind == "product":
        mu, n = need("mu"), need("n")
        offs = _int_list(args.offsets) if args.offsets else [mu * (m + 1) for m in range(n)]
        out.lines(formats.family_lines(generators.gen_product_family(mu, n, offs)))
    elif kind == "shift":
        out.lines(formats.family_lines(generators.gen_shift_family(need("mu"))))
    elif kind == "indicator":
        c = formats.read_coloring(_read(need("coloring")), product=False)
        mu = args.mu if args.mu is not None else len(c.ground)
        out.lines(formats.family_lines(generators.gen_indicator_family(mu, c.n, c)))
    elif kind == "pairing":
        c = formats.read_coloring(_read(need("coloring")), product=False)
        mu = args.mu if args.mu is not None else len(c.ground)
        out.lines(formats.family_lines(generators.gen_pairing_family(mu, c)))
    elif kind == "parity":
        c = generators.parity_coloring(need("mu"), need("n"), product=args.product)
        out.lines(formats.coloring_lines(c))
    elif kind == "first-difference":
        colors = None if args.colors == 0 else args.colors
        out.lines(formats.coloring_lines(generators.first_difference_coloring(need("bits"), colors)))
    elif kind == "lift":
        g = formats.read_coloring(_read(need("coloring")), product=True)
        out.lines(formats.coloring_lines(generators.lift_polarized(g, need("M"))))
    elif kind == "knaster-example":
        out.lines(formats.condition_family_lines(cohen.knaster_example_family(need("mu"))))
    elif kind == "product-conditions":
        mu, n = need("mu"), need("n")
        offs = _int_list(args.offsets) if args.offsets else [mu * (m + 1) for m in range(n)]
        bits = args.pattern if args.pattern is not None else "0" * n
        out.lines(formats.condition_family_lines(cohen.product_condition_family(mu, n, offs, bits)))
    else:
        raise InputError(f"unknown kind {kind!r}")
    return EXIT_OK


def cmd_sigma(args: argparse.Namespace, out: _Out) -> int:
    lam = cardinals.parse(args.lam)
    result = cardinals.sigma(lam, args.n)
    out.stream.write(cardinals.render(result) + "\n")
    if args.equals:
        verdict = cardinals.equals(result, cardinals.parse(args.equals))
        out.stream.write(verdict + "\n")
        return EXIT_OK if verdict == "yes" else EXIT_NO
    return EXIT_OK


def cmd_knaster(args: argparse.Namespace, out: _Out) -> int:
    cf = formats.read_condition_family(_read(args.family))
    H = cohen.knaster_refine(cf, args.size)
    if H is None:
        out.rec({"found": False, "size": args.size})
        return EXIT_NO
    out.rec({"H": list(H), "aligned_compatible": True})
    return EXIT_OK


def cmd_grid(args: argparse.Namespace, out: _Out) -> int:
    cf = formats.read_condition_family(_read(args.family))
    H = ordset(_int_list(args.H)) if args.H else cf.ground
    if args.witness:
        w = formats.read_witness(_read(args.witness))
    else:
        dom = cf.restrict(H).domain_family()
        infer = deltasys.infer_witness if len(H) >= 2 * cf.n else deltasys.complete_witness
        w = infer(dom)
        if w is None:
            raise InputError("domains over H admit no uniform witness")
    res = cohen.grid_build(cf, H, w, args.width)
    if res is None:
        out.rec({"found": False, "width": args.width})
        return EXIT_NO
    out.rec(formats.grid_record(*res))
    return EXIT_OK


def cmd_polarized(args: argparse.Namespace, out: _Out) -> int:
    f = formats.read_coloring(_read(args.coloring), product=True)
    grid = cohen.polarized_search(f, args.block, separated=args.separated)
    if grid is None:
        out.rec({"found": False, "block": args.block})
        return EXIT_NO
    out.rec(formats.grid_record(grid))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hdelta", description="Toolkit for n-dimensional Delta-systems over finite ordinal sets.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check a family against one Delta-system definition")
    v.add_argument("family", help="family file ('-' for stdin)")
    v.add_argument("--mode", choices=MODES, required=True)
    v.add_argument("--witness", help="witness file for --mode uniform (default: inferred)")
    v.add_argument("--roots", help="root system file for --mode ndim (default: search for one)")
    v.add_argument("--ext", help="extension file for --mode variation")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("mine", help="find a sub-ground carrying a uniform system")
    m.add_argument("family")
    m.add_argument("--size", type=int, help="target size of H")
    m.add_argument("--coloring", help="coloring file of [ground]^n")
    g = m.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="exhaustive search (default)")
    g.add_argument("--greedy", action="store_true", help="fast, incomplete search")
    m.add_argument("--moreover", action="store_true", help="also require the substitution check")
    m.add_argument("--max", action="store_true", help="report the largest good size instead")
    m.set_defaults(func=cmd_mine)

    gen = sub.add_parser("gen", help="emit an example family, coloring or condition family")
    gen.add_argument("--kind", choices=KINDS, required=True)
    gen.add_argument("--mu", type=int, help="ground size")
    gen.add_argument("--n", type=int, help="dimension")
    gen.add_argument("--offsets", help="comma separated block offsets (product kinds)")
    gen.add_argument("--coloring", help="input coloring (indicator, pairing, lift)")
    gen.add_argument("--bits", type=int, help="bit width (first-difference)")
    gen.add_argument("--colors", type=int, default=2, help="reduce colors mod this; 0 keeps them unreduced")
    gen.add_argument("--M", type=int, help="lifted ground size (lift)")
    gen.add_argument("--pattern", help="bit string shared by all conditions (product-conditions)")
    gen.add_argument("--product", action="store_true", help="color tuples rather than sorted index sets")
    gen.set_defaults(func=cmd_gen)

    s = sub.add_parser("sigma", help="normalized sigma(lambda, n)")
    s.add_argument("--lambda", dest="lam", required=True, help="cardinal expression, e.g. 'aleph(1)'")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--equals", help="also compare the result with this expression")
    s.set_defaults(func=cmd_sigma)

    k = sub.add_parser("knaster", help="refine a condition family to aligned-compatible indices")
    k.add_argument("family", help="condition family file")
    k.add_argument("--size", type=int, required=True)
    k.set_defaults(func=cmd_knaster)

    gr = sub.add_parser("grid", help="finite matrix construction over a condition family")
    gr.add_argument("family", help="condition family file")
    gr.add_argument("--H", help="sub-ground, e.g. '0,1,2,3' (default: whole ground)")
    gr.add_argument("--witness", help="witness file (default: inferred over H)")
    gr.add_argument("--width", type=int, default=1)
    gr.set_defaults(func=cmd_grid)

    pz = sub.add_parser("polarized", help="search for a monochromatic product of blocks")
    pz.add_argument("coloring", help="coloring file with tuple records")
    pz.add_argument("--block", type=int, required=True, help="block size")
    pz.add_argument("--separated", action="store_true", help="require A_0 < A_1 < ...")
    pz.set_defaults(func=cmd_polarized)
    return p


def main(argv: Optional[list] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    func: Callable = args.func
    try:
        return func(args, _Out(stdout))
    except InputError as exc:
        stderr.write(formats.dumps_record({"error": "input", "message": str(exc)}) + "\n")
        return EXIT_INPUT
    except ResourceGuardError as exc:
        stderr.write(formats.dumps_record({"error": "resource", "message": str(exc)}) + "\n")
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
