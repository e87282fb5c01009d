"""Tagged JSON encodings for every object the command line passes around.

Each encodable object gets a dict with a "type" tag; decode dispatches
on the tag.  Rational breakpoints travel as "p/q" strings so nothing
is lost to floats, and integer index vectors stay integer lists.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .dilation import DilationSpec, make_dilation
from .errors import RepresentationMismatch
from .filters import Filter, FilterBank
from .fractal import TriadicFn
from .torus import LaurentPoly, StepCircleFn


def _c(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _uc(d) -> complex:
    return complex(d["re"], d["im"])


def encode(obj) -> dict:
    if isinstance(obj, LaurentPoly):
        return {
            "type": "laurent",
            "dim": obj.dim,
            "coeffs": [{"k": list(k), **_c(v)} for k, v in sorted(obj.coeffs.items())],
        }
    if isinstance(obj, StepCircleFn):
        return {
            "type": "step",
            "breakpoints": [str(b) for b in obj.breakpoints],
            "values": [_c(v) for v in obj.values],
        }
    if isinstance(obj, TriadicFn):
        return {
            "type": "triadic",
            "terms": [{"n": n, "k": k, **_c(v)}
                      for (n, k), v in sorted(obj.terms.items())],
        }
    if isinstance(obj, DilationSpec):
        return {"type": "dilation", "A": [list(row) for row in obj.A]}
    if isinstance(obj, Filter):
        return {
            "type": "filter",
            "A": [list(row) for row in obj.spec.A],
            "m": encode(obj.m),
            "multiplicity": None if obj.multiplicity is None
            else encode(obj.multiplicity),
        }
    if isinstance(obj, FilterBank):
        return {
            "type": "bank",
            "A": [list(row) for row in obj.spec.A],
            "filters": [encode(m) for m in obj.filters],
            "low_pass_index": obj.low_pass_index,
        }
    raise RepresentationMismatch(f"no JSON encoding for {type(obj).__name__}")


def decode(d: dict):
    tag = d.get("type")
    if tag == "laurent":
        return LaurentPoly(d["dim"],
                           {tuple(c["k"]): _uc(c) for c in d["coeffs"]})
    if tag == "step":
        return StepCircleFn(tuple(Fraction(b) for b in d["breakpoints"]),
                            tuple(_uc(v) for v in d["values"]))
    if tag == "triadic":
        return TriadicFn({(t["n"], t["k"]): _uc(t) for t in d["terms"]})
    if tag == "dilation":
        return make_dilation(d["A"])
    if tag == "filter":
        spec = make_dilation(d["A"])
        mult = d.get("multiplicity")
        return Filter(decode(d["m"]), spec,
                      multiplicity=None if mult is None else decode(mult))
    if tag == "bank":
        spec = make_dilation(d["A"])
        return FilterBank([decode(m) for m in d["filters"]], spec,
                          low_pass_index=d.get("low_pass_index"))
    raise RepresentationMismatch(f"unknown type tag {tag!r}")


def dump(obj, path: str) -> None:
    with open(path, "w") as fp:
        json.dump(encode(obj), fp, indent=2, sort_keys=True)
        fp.write("\n")


def load(path: str):
    with open(path) as fp:
        return decode(json.load(fp))


def gram_to_csv(G, labels=None) -> str:
    """Complex Gram matrix as CSV with re/im column pairs."""
    n = G.shape[0]
    if labels is None:
        labels = [str(i) for i in range(n)]
    head = "label," + ",".join(f"re[{l}],im[{l}]" for l in labels)
    rows = [head]
    for i in range(n):
        cells = [labels[i]]
        for j in range(n):
            z = complex(G[i, j])
            cells.append(f"{z.real:.17g}")
            cells.append(f"{z.imag:.17g}")
        rows.append(",".join(cells))
    return "\n".join(rows) + "\n"


def samples_to_csv(fn) -> str:
    """Sampled grid function as CSV: one row per grid point."""
    import numpy as np

    pts = fn.grid_points()
    vals = fn.values.reshape(-1)
    dim = pts.shape[1]
    head = ",".join(f"x{i}" for i in range(dim)) + ",re,im"
    rows = [head]
    for p, v in zip(pts, vals):
        coords = ",".join(f"{x:.17g}" for x in p)
        rows.append(f"{coords},{v.real:.17g},{v.imag:.17g}")
    return "\n".join(rows) + "\n"
