"""CSV, SVG and ASCII renderings of tables and regions (deterministic output)."""

import csv
import io
from xml.sax.saxutils import escape

from .local_cohomology import EXACT, STABILIZED
from .regularity import CERTIFIED

CELL = 22


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def table_csv(table, degrees=None, box=None):
    """Columns ``i, g1..gk, dim, status, path, t_stab``."""
    box = box or table.box
    k = box.k
    header = ["i"] + [f"g{d + 1}" for d in range(k)] + ["dim", "status", "path", "t_stab"]
    rows = []
    for i in degrees if degrees is not None else range(table.s + 1):
        for p in box.points():
            e = table.entry(i, p)
            rows.append([i, *p, e.dim, e.status, e.path, "" if e.t_stab is None else e.t_stab])
    return _csv(header, rows)


def region_csv(reg):
    k = reg.box.k
    header = [f"g{d + 1}" for d in range(k)] + ["regular", "weakly_regular", "status"]
    rows = [[*p, int(p in reg.region), int(p in reg.weak), reg.status[p]] for p in reg.box.points()]
    return _csv(header, rows)


def betti_csv(betti):
    rows = []
    for j in sorted(betti):
        for p in sorted(betti[j]):
            rows.append([j, *p, betti[j][p]])
    k = len(next(iter(p for j in betti for p in betti[j]), ()))
    return _csv(["j"] + [f"g{d + 1}" for d in range(k)] + ["dim"], rows)


# -- grids ----------------------------------------------------------------------------------------


def _cells(box, fn):
    """``[(col, row, point, kind, label)]`` with b growing upwards."""
    out = []
    if box.k == 1:
        for c, a in enumerate(range(box.lo[0], box.hi[0] + 1)):
            kind, label = fn((a,))
            out.append((c, 0, (a,), kind, label))
        return out, box.hi[0] - box.lo[0] + 1, 1
    if box.k != 2:
        raise ValueError("plots need a box of dimension 1 or 2")
    w = box.hi[0] - box.lo[0] + 1
    h = box.hi[1] - box.lo[1] + 1
    for a in range(box.lo[0], box.hi[0] + 1):
        for b in range(box.lo[1], box.hi[1] + 1):
            kind, label = fn((a, b))
            out.append((a - box.lo[0], box.hi[1] - b, (a, b), kind, label))
    return out, w, h


FILL = {
    "on": "#3b6ea5",
    "off": "#ffffff",
    "uncertified": "#f2c14e",
    "on-uncertified": "#d98c1f",
}


def svg_grid(box, fn, title=""):
    """One ``<rect>`` per lattice point; ``fn(point) -> (kind, label)``."""
    cells, w, h = _cells(box, fn)
    margin = 30
    W, H = w * CELL + 2 * margin, h * CELL + 2 * margin + 16
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<text x="{margin}" y="18" font-family="monospace" font-size="12">{escape(title)}</text>',
    ]
    top = margin + 16
    for c, r, p, kind, label in cells:
        x, y = margin + c * CELL, top + r * CELL
        coords = ",".join(str(v) for v in p)
        out.append(
            f'<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{FILL[kind]}" '
            f'stroke="#888" data-point="{coords}" data-kind="{kind}" data-label="{escape(label)}"/>'
        )
        if label:
            color = "#fff" if kind.startswith("on") else "#000"
            out.append(
                f'<text x="{x + CELL // 2}" y="{y + CELL // 2 + 4}" font-family="monospace" '
                f'font-size="9" text-anchor="middle" fill="{color}">{escape(label)}</text>'
            )
    # axis labels
    for c in range(w):
        a = box.lo[0] + c
        out.append(
            f'<text x="{margin + c * CELL + CELL // 2}" y="{top + h * CELL + 12}" font-family="monospace" '
            f'font-size="9" text-anchor="middle">{a}</text>'
        )
    if box.k == 2:
        for r in range(h):
            b = box.hi[1] - r
            out.append(
                f'<text x="{margin - 4}" y="{top + r * CELL + CELL // 2 + 4}" font-family="monospace" '
                f'font-size="9" text-anchor="end">{b}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


ASCII = {"on": "#", "off": ".", "uncertified": "?", "on-uncertified": "!"}


def ascii_grid(box, fn, title=""):
    cells, w, h = _cells(box, fn)
    grid = [[" "] * w for _ in range(h)]
    for c, r, _, kind, _ in cells:
        grid[r][c] = ASCII[kind]
    lines = [title] if title else []
    for r, row in enumerate(grid):
        b = box.hi[1] - r if box.k == 2 else ""
        lines.append(f"{b!s:>4} " + "".join(row))
    lines.append(f"     a = {box.lo[0]}..{box.hi[0]}")
    return "\n".join(lines) + "\n"


def support_cell(table, i):
    def fn(p):
        e = table.entry(i, p)
        certified = e.status in (STABILIZED, EXACT)
        if e.dim:
            return ("on" if certified else "on-uncertified"), str(e.dim)
        return ("off" if certified else "uncertified"), ""

    return fn


def region_cell(reg, generators=()):
    gens = {tuple(g) for g in generators}

    def fn(p):
        inside = p in reg.region
        ok = reg.status[p] == CERTIFIED
        kind = ("on" if ok else "on-uncertified") if inside else ("off" if ok else "uncertified")
        return kind, ("*" if p in gens else "")

    return fn
