"""The worked examples as ready-made filters and banks.

Builders are the source of truth; the bundled JSON files under
presets/ are generated from them (python -m limitwave.presets <dir>)
and exist so the command line has real files to point at.  Loading by
name goes through the builders, so nothing depends on the fixtures
being present.  Set LIMITWAVE_PRESET_DIR to point file lookups at a
regenerated copy.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction
from importlib import resources

from .dilation import make_dilation
from .filters import Filter, FilterBank, bank_from_orthonormal_basis
from .fractal import cantor_bank
from .torus import LaurentPoly, sf_scale, step_indicator

_SQ2 = math.sqrt(2.0)
_SQ3 = math.sqrt(3.0)


def haar_bank() -> FilterBank:
    spec = make_dilation([[2]])
    # sqrt(0.5), not 1/sqrt(2): doubling this bit pattern gives sqrt(2)
    # exactly, so the normalized scaling product is exactly 1 at x = 0
    r = math.sqrt(0.5)
    return bank_from_orthonormal_basis([[r, r], [r, -r]], spec)


def d4_bank() -> FilterBank:
    """Four-tap orthogonal pair: low pass h, high pass g_k = (-1)^k h_{3-k}."""
    spec = make_dilation([[2]])
    h = [(1 + _SQ3) / (4 * _SQ2), (3 + _SQ3) / (4 * _SQ2),
         (3 - _SQ3) / (4 * _SQ2), (1 - _SQ3) / (4 * _SQ2)]
    g = [h[3], -h[2], h[1], -h[0]]
    low = LaurentPoly(1, {(k,): c for k, c in enumerate(h)})
    high = LaurentPoly(1, {(k,): c for k, c in enumerate(g)})
    return FilterBank([low, high], spec, low_pass_index=0)


def frame_filter() -> Filter:
    """sqrt(2) on the arc [-1/6, 1/6) with multiplicity arc [-1/3, 1/3):
    a generalized filter whose scaling function is a Parseval frame
    generator, not an orthonormal one."""
    spec = make_dilation([[2]])
    third, sixth = Fraction(1, 3), Fraction(1, 6)
    m = sf_scale(step_indicator([(-sixth, sixth)]), _SQ2)
    mult = step_indicator([(-third, third)])
    return Filter(m, spec, multiplicity=mult)


def cantor_r_bank() -> FilterBank:
    """The one-parameter deformation of the triadic bank, pinned at
    r = 0.3; other parameter values come from r_family directly."""
    from .fractal import r_family

    bank, _, _ = r_family(0.3)
    return bank


def quincunx_bank() -> FilterBank:
    """Plane rotation-and-stretch matrix with determinant 2; the bank
    comes from a rotated orthonormal basis over the two-point dual
    transversal."""
    spec = make_dilation([[1, -1], [1, 1]])
    r = math.sqrt(0.5)  # same bit-exactness constraint as the dyadic bank
    return bank_from_orthonormal_basis([[r, r], [-r, r]], spec)


_BUILDERS = {
    "haar": haar_bank,
    "d4": d4_bank,
    "cantor": cantor_bank,
    "cantor-r": cantor_r_bank,
    "frame": frame_filter,
    "quincunx": quincunx_bank,
}

PRESET_NAMES = tuple(sorted(_BUILDERS))


def preset(name: str):
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; have {', '.join(PRESET_NAMES)}")


def preset_spec(name: str):
    obj = preset(name)
    return obj.spec


def preset_path(name: str) -> str:
    """Filesystem path of the bundled (or overridden) JSON fixture."""
    override = os.environ.get("LIMITWAVE_PRESET_DIR")
    if override:
        return os.path.join(override, f"{name}.json")
    return str(resources.files("limitwave").joinpath("presets", f"{name}.json"))


def write_presets(directory: str) -> list[str]:
    """Regenerate every JSON fixture into directory; returns the paths."""
    from .serialize import dump

    os.makedirs(directory, exist_ok=True)
    out = []
    for name in PRESET_NAMES:
        path = os.path.join(directory, f"{name}.json")
        dump(preset(name), path)
        out.append(path)
    return out


if __name__ == "__main__":
    import sys

    target = sys.argv[1] if len(sys.argv) > 1 else "."
    for p in write_presets(target):
        print(p)
