"""Command line: ``mgreg <command> INSTANCE [options]``.

Exit codes: 0 success, 2 uncertified data (unless --allow-uncertified),
64 usage or schema error, 70 a theorem check failed.
"""

import argparse
import json
import os
import sys

from .hilbert import NotPolynomial, UncertifiedEntry, grothendieck_serre_check
from .instance import SchemaError, build
from .koszul import betti_box, betti_table
from .local_cohomology import cohomology_table
from .regions import Box, minimal_generators
from .regularity import regularity_region
from .render import ascii_grid, betti_csv, region_cell, region_csv, support_cell, svg_grid, table_csv
from .verify import any_failed, corpus_documents, run_corpus, verify_instance

EX_OK, EX_UNCERTIFIED, EX_USAGE, EX_FAIL = 0, 2, 64, 70


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_box(text):
    """``"-4,-4:6,6"`` -> Box."""
    try:
        lo, hi = text.split(":")
        return Box(tuple(int(x) for x in lo.split(",")), tuple(int(x) for x in hi.split(",")))
    except ValueError:
        raise UsageError(f"bad --box {text!r}; expected lo1,lo2:hi1,hi2") from None


def _load(args):
    try:
        with open(args.instance) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    if getattr(args, "field", None):
        try:
            doc["field"] = "Q" if args.field.upper() == "Q" else {"Fp": int(args.field)}
        except ValueError:
            raise UsageError(f"bad --field {args.field!r}; expected Q or a prime") from None
    if getattr(args, "box", None):
        b = parse_box(args.box)
        doc.setdefault("box", {})
        doc["box"].update(lo=list(b.lo), hi=list(b.hi))
    if getattr(args, "padding", None) is not None:
        doc.setdefault("box", {})["padding"] = args.padding
    return build(doc)


def _emit(args, name, text):
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, name), "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _levels(text, s):
    if text is None:
        return list(range(s + 1))
    if ":" in text:
        a, b = text.split(":")
        return list(range(int(a), int(b) + 1))
    return [int(x) for x in text.split(",")]


# -- commands ----------------------------------------------------------------------------------------


def cmd_support(args):
    inst = _load(args)
    table = cohomology_table(inst.B, inst.module, inst.box, path=args.path, t_max=args.tmax, window=args.window)
    levels = _levels(args.i, table.s)
    _emit(args, "support.csv", table_csv(table, levels))
    if args.out or args.ascii:
        for i in levels:
            fn = support_cell(table, i)
            title = f"{inst.name}: Supp H^{i}_B(M)"
            if args.ascii:
                sys.stdout.write(ascii_grid(inst.box, fn, title))
            if args.out and inst.box.k <= 2:
                _emit(args, f"H{i}.svg", svg_grid(inst.box, fn, title))
    uncertified = [key for key in table.uncertified() if key[0] in levels]
    return EX_UNCERTIFIED if uncertified and not args.allow_uncertified else EX_OK


def _regularity(args, inst):
    return regularity_region(
        inst.B, inst.module, inst.box, args.level, args.flavor, inst.padding, args.tmax, args.window
    )


def cmd_regularity(args):
    inst = _load(args)
    reg = _regularity(args, inst)
    _emit(args, "regularity.csv", region_csv(reg))
    try:
        gens = minimal_generators(reg.region, inst.grading)
    except ValueError:
        gens = []
    title = f"{inst.name}: reg^{args.level}_B(M) ({args.flavor})"
    if args.ascii:
        sys.stdout.write(ascii_grid(inst.box, region_cell(reg, gens), title))
    if args.out and inst.box.k <= 2:
        _emit(args, "regularity.svg", svg_grid(inst.box, region_cell(reg, gens), title))
    return EX_UNCERTIFIED if reg.uncertified_points() and not args.allow_uncertified else EX_OK


def cmd_betti(args):
    inst = _load(args)
    box = betti_box(inst.module) if not args.box else inst.box
    _emit(args, "betti.csv", betti_csv(betti_table(inst.module, box)))
    return EX_OK


def cmd_hilbert(args):
    inst = _load(args)
    table = cohomology_table(inst.B, inst.module, inst.box, t_max=args.tmax, window=args.window)
    try:
        rep = grothendieck_serre_check(inst.module, table)
    except (UncertifiedEntry, NotPolynomial, ValueError) as exc:
        sys.stderr.write(f"hilbert: {exc}\n")
        return EX_UNCERTIFIED
    P = rep["polynomial"]
    names = [f"g{d + 1}" for d in range(inst.grading.k)]
    lines = [
        f"instance: {inst.name}",
        f"status: {rep['status']}",
        f"checked points: {rep['checked']}",
        f"uncertified points: {rep['uncertified']}",
    ]
    if P is not None:
        lines += [f"P (binomial basis): {P.format(names)}", f"P (monomial basis): {P.format(names, 'monomial')}"]
    if rep["witness"] is not None:
        lines.append(f"witness: {list(rep['witness'])}")
    _emit(args, "hilbert.txt", "\n".join(lines) + "\n")
    if rep["status"] == "FAIL":
        return EX_FAIL
    return EX_UNCERTIFIED if rep["uncertified"] and not args.allow_uncertified else EX_OK


def cmd_verify(args):
    if args.instance:
        inst = _load(args)
        rs, ctx = verify_instance(inst, args.tmax, args.window)
        reports = [r.as_dict() for r in rs]
    else:
        reports = run_corpus(args.out, corpus_documents(), args.tmax, args.window)
    text = json.dumps(reports, indent=2, sort_keys=True) + "\n"
    if args.instance or not args.out:
        _emit(args, "verify.json", text)
    for r in reports:
        sys.stderr.write(f"{r['status']:8s} {r['theorem_id']:14s} {r['instance_id']}\n")
    return EX_FAIL if any_failed(reports) else EX_OK


def cmd_plot(args):
    if args.what == "regularity":
        return cmd_regularity(args)
    return cmd_support(args)


def cmd_run(args):
    """Run the task list stored in the instance file."""
    inst = _load(args)
    code = EX_OK
    handlers = {
        "support": cmd_support,
        "regularity": cmd_regularity,
        "betti": cmd_betti,
        "hilbert": cmd_hilbert,
        "verify": cmd_verify,
        "plot": cmd_plot,
    }
    for task in inst.tasks:
        sub = argparse.Namespace(**vars(args))
        for key, value in task.get("parameters", {}).items():
            setattr(sub, key, value)
        code = max(code, handlers[task["kind"]](sub))
    return code


def build_parser():
    p = Parser(prog="mgreg", description="Multigraded local cohomology and regularity regions.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, instance_required=True):
        if instance_required:
            sp.add_argument("instance")
        else:
            sp.add_argument("instance", nargs="?")
        sp.add_argument("--box", help="lo1,lo2:hi1,hi2 (overrides the file)")
        sp.add_argument("--padding", type=int)
        sp.add_argument("--tmax", type=int, default=12)
        sp.add_argument("--window", type=int, default=2)
        sp.add_argument("--field", help="Q or a prime p")
        sp.add_argument("--flavor", choices=["weak", "very-weak"], default="weak")
        sp.add_argument("--level", type=int, default=0)
        sp.add_argument("--allow-uncertified", action="store_true")
        sp.add_argument("--ascii", action="store_true")
        sp.add_argument("--out", help="output directory (default: stdout)")
        sp.add_argument("--path", choices=["auto", "P1", "P2", "P3"], default="auto")
        sp.add_argument("--i", help="cohomological degrees, e.g. 0:4 or 1,2")

    for name, fn in (
        ("support", cmd_support),
        ("regularity", cmd_regularity),
        ("betti", cmd_betti),
        ("hilbert", cmd_hilbert),
        ("run", cmd_run),
    ):
        sp = sub.add_parser(name)
        common(sp)
        sp.set_defaults(func=fn)
    sp = sub.add_parser("verify", help="theorem checks; without INSTANCE runs the built-in corpus")
    common(sp, instance_required=False)
    sp.set_defaults(func=cmd_verify)
    sp = sub.add_parser("plot")
    common(sp)
    sp.add_argument("--what", choices=["support", "regularity"], default="support")
    sp.set_defaults(func=cmd_plot)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"mgreg: usage error: {exc}\n")
        return EX_USAGE
    except SchemaError as exc:
        sys.stderr.write(f"mgreg: invalid instance: {exc}\n")
        return EX_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
