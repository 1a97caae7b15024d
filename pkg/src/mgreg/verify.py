"""The built-in verification corpus and the driver that runs every check on it."""

import json
import os
import random

from . import checks
from .checks import Context, check_classical, run_checks
from .instance import build
from .render import region_csv, support_cell, svg_grid, table_csv

BIGRADED = {"variables": ["X0", "X1", "Y0", "Y1"], "degrees": [[1, 1, 0, 0], [0, 0, 1, 1]]}
HYPERSURFACE = {"variables": ["X1", "X2", "Y1", "Y2"], "degrees": [[1, 1, 0, 0], [0, 0, 1, 1]]}
B_MXY = [[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]]
B_RPLUS = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
FIELD = {"Fp": 32003}


def _doc(name, base, B, module, lo, hi, **extra):
    doc = {"name": name, "field": FIELD, **base, "ideal_B": B, "module": module, "box": {"lo": lo, "hi": hi, "padding": 2}}
    doc.update(extra)
    return doc


def random_monomials(rng, n, max_gens=4, max_deg=4):
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        e = [0] * n
        for _ in range(rng.randint(1, max_deg)):
            e[rng.randrange(n)] += 1
        gens.append(e)
    return gens


def _monomial_string(names, e):
    parts = [v if d == 1 else f"{v}**{d}" for v, d in zip(names, e) if d]
    return "*".join(parts) or "1"


def golden_documents():
    box = ([-2, -2], [3, 3])
    return [
        _doc("ex11_B", BIGRADED, B_MXY, {"quotient": ["X0*X1", "Y0*Y1"]}, *box),
        _doc("ex11_Rplus", BIGRADED, B_RPLUS, {"quotient": ["X0*X1", "Y0*Y1"]}, *box),
        _doc("hyp_F1", HYPERSURFACE, B_MXY, {"quotient": ["X1*Y1"]}, *box),
        _doc("hyp_F2", HYPERSURFACE, B_MXY, {"quotient": ["X1*Y1 + X2*Y2"]}, *box, ann_witness=[]),
        _doc("ring_B", BIGRADED, B_MXY, {"quotient": []}, *box),
        _doc("ring_Rplus", BIGRADED, B_RPLUS, {"quotient": []}, *box),
    ]


def random_bigraded_documents(count=10, seed=0):
    docs = []
    names = BIGRADED["variables"]
    for s in range(seed, seed + count):
        rng = random.Random(s)
        gens = random_monomials(rng, 4)
        polys = [_monomial_string(names, e) for e in gens]
        docs.append(_doc(f"rand{s:02d}", BIGRADED, B_MXY, {"quotient": polys}, [-2, -2], [3, 3]))
    return docs


def random_z_documents(count=5, seed=100):
    docs = []
    for s in range(seed, seed + count):
        rng = random.Random(s)
        n = rng.randint(2, 4)
        names = [f"x{i + 1}" for i in range(n)]
        gens = random_monomials(rng, n, max_gens=3, max_deg=3)
        polys = [_monomial_string(names, e) for e in gens]
        base = {"variables": names, "degrees": [[1] * n]}
        B = [[int(i == j) for i in range(n)] for j in range(n)]
        docs.append(_doc(f"zrand{s}", base, B, {"quotient": polys}, [-6], [8]))
    return docs


def corpus_documents():
    return golden_documents() + random_bigraded_documents() + random_z_documents()


def verify_instance(inst, t_max=12, window=2):
    ctx = Context(inst.name, inst.B, inst.module, inst.box, inst.witness, t_max, window, inst.padding)
    reports = []
    if inst.grading.k == 1 and inst.grading.is_standard:
        reports.append(check_classical(inst.name, inst.module, inst.box))
    reports.extend(run_checks(ctx))
    return reports, ctx


def write_outputs(ctx, out_dir):
    os.makedirs(out_dir, exist_ok=True)
    box = ctx.box
    with open(os.path.join(out_dir, "support.csv"), "w") as fh:
        fh.write(table_csv(ctx.table, box=box))
    with open(os.path.join(out_dir, "regularity.csv"), "w") as fh:
        fh.write(region_csv(ctx.regularity(0)))
    if box.k <= 2:
        for i in range(ctx.s + 1):
            with open(os.path.join(out_dir, f"H{i}.svg"), "w") as fh:
                fh.write(svg_grid(box, support_cell(ctx.table, i), f"{ctx.id}: Supp H^{i}_B(M)"))


def run_corpus(out_dir=None, documents=None, t_max=12, window=2):
    """Verify every corpus instance; returns the list of report dicts."""
    reports = []
    for doc in documents if documents is not None else corpus_documents():
        inst = build(doc)
        rs, ctx = verify_instance(inst, t_max, window)
        reports.extend(r.as_dict() for r in rs)
        if out_dir is not None:
            write_outputs(ctx, os.path.join(out_dir, inst.name))
    if out_dir is not None:
        with open(os.path.join(out_dir, "verify.json"), "w") as fh:
            json.dump(reports, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return reports


def any_failed(reports):
    return any(r["status"] == checks.FAIL for r in reports)
