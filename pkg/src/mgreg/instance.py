"""Instance files: JSON documents describing a ring, an ideal B, a module and a box."""

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources

import jsonschema

from .grading import Grading
from .linalg import Field
from .regions import Box
from .ring import MonomialIdeal, Presentation, quotient


class SchemaError(ValueError):
    pass


@dataclass
class Instance:
    name: str
    field: Field
    grading: Grading
    B: MonomialIdeal
    module: object
    box: Box
    padding: int = 2
    tasks: list = dc_field(default_factory=list)
    witness: MonomialIdeal = None
    document: dict = None


def schema():
    return json.loads(resources.files("mgreg").joinpath("schema.json").read_text())


def validate(doc):
    try:
        jsonschema.validate(doc, schema())
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{path}: {exc.message}") from None


def parse_polynomial(text, names):
    """``"X1*Y1 + 2*X2*Y2"`` -> ``{(0,1,0,1): 1, ...}`` with Fraction coefficients."""
    import sympy

    syms = sympy.symbols(names)
    local = dict(zip(names, syms))
    try:
        expr = sympy.parse_expr(text, local_dict=local)
        poly = sympy.Poly(expr, *syms)
    except (sympy.SympifyError, sympy.PolynomialError, SyntaxError, TypeError) as exc:
        raise SchemaError(f"cannot parse polynomial {text!r}: {exc}") from None
    out = {}
    for exps, c in poly.terms():
        if not c.is_Rational:
            raise SchemaError(f"non-rational coefficient {c} in {text!r}")
        out[tuple(int(e) for e in exps)] = Fraction(int(c.p), int(c.q))
    return out


def _field(spec):
    if spec is None:
        return Field()
    if spec == "Q":
        return Field.rationals()
    try:
        return Field(spec["Fp"])
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def build(doc, name=None):
    validate(doc)
    names = doc["variables"]
    n = len(names)
    D = doc["degrees"]
    if any(len(row) != n for row in D):
        raise SchemaError("degrees must be a k x n matrix, n = number of variables")
    k = len(D)
    F = _field(doc.get("field"))
    try:
        g = Grading(D, names=names)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    for key in ("ideal_B", "ann_witness"):
        if any(len(e) != n for e in doc.get(key, [])):
            raise SchemaError(f"{key}: exponent vectors must have length {n}")
    B = MonomialIdeal([tuple(e) for e in doc["ideal_B"]], n)
    witness = MonomialIdeal([tuple(e) for e in doc["ann_witness"]], n) if "ann_witness" in doc else None
    spec = doc["module"]
    try:
        if "quotient" in spec:
            polys = [parse_polynomial(s, names) for s in spec["quotient"]]
            module = quotient(g, F, polys, ann=witness)
        else:
            pres = spec["presentation"]
            rows = [tuple(r) for r in pres["row_shifts"]]
            cols = [tuple(c) for c in pres["col_shifts"]]
            if any(len(s) != k for s in rows + cols):
                raise SchemaError(f"shifts must have length {k}")
            entries = {}
            for e in pres["entries"]:
                if e["row"] >= len(rows) or e["col"] >= len(cols):
                    raise SchemaError(f"entry ({e['row']}, {e['col']}) out of range")
                entries[(e["row"], e["col"])] = parse_polynomial(e["poly"], names)
            module = Presentation(g, F, rows, cols, entries, ann=witness)
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    box = doc["box"]
    if len(box["lo"]) != k or len(box["hi"]) != k:
        raise SchemaError(f"box corners must have length {k}")
    if any(a > b for a, b in zip(box["lo"], box["hi"])):
        raise SchemaError("box lo must not exceed hi")
    return Instance(
        name=name or doc.get("name", "instance"),
        field=F,
        grading=g,
        B=B,
        module=module,
        box=Box(tuple(box["lo"]), tuple(box["hi"])),
        padding=box.get("padding", 2),
        tasks=doc.get("tasks", []),
        witness=witness,
        document=doc,
    )


def load(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None
    return build(doc)
