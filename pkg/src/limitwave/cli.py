"""Command-line front end.

Every subcommand builds a Report (named checks, measured values,
tolerances) and exits 0 when all checks pass, 1 when any fails, 2 on
input or configuration problems.  ``--tol.<name> VALUE`` overrides the
tolerance of the check called <name>; the tokens are collected before
argparse sees the argument list.  ``--format json`` switches stdout
from the human summary to the report document; ``--out`` writes the
report (or CSV for sampled and matrix payloads) to a file.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from .dilation import make_dilation
from .errors import LimitWaveError
from .filters import (
    Filter,
    FilterBank,
    bank_from_orthonormal_basis,
    eval_at_one,
    filter_from_unit_vector,
    is_low_pass,
    purity_check,
    verify_filter,
    verify_filter_bank,
    verify_generalized_filter,
)
from .operators import FilterOperator, verify_cuntz
from .presets import PRESET_NAMES, preset, write_presets
from .report import Report, report_to_json, report_to_text
from .serialize import decode, dump, encode, gram_to_csv, samples_to_csv
from .torus import LaurentPoly, StepCircleFn, lp1


def _extract_tols(argv):
    """Pull --tol.<name> [=]VALUE pairs out of the raw argument list."""
    tols, rest, i = {}, [], 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--tol."):
            name, eq, val = tok[6:].partition("=")
            if not eq:
                i += 1
                if i >= len(argv):
                    raise LimitWaveError(f"--tol.{name} needs a value")
                val = argv[i]
            try:
                tols[name] = float(val)
            except ValueError:
                raise LimitWaveError(f"--tol.{name}: bad value {val!r}")
        else:
            rest.append(tok)
        i += 1
    return tols, rest


def _tol(tols, name, default):
    return float(tols.get(name, default)) if name in tols else default


def _load_source(src: str):
    """A preset name or a JSON file path, decoded to a package object."""
    if src in PRESET_NAMES:
        return preset(src)
    with open(src) as fp:
        return decode(json.load(fp))


def _load_raw(src: str) -> dict:
    """Like _load_source but without validating construction, so broken
    filters still produce a residual report instead of a stack trace."""
    if src in PRESET_NAMES:
        return encode(preset(src))
    with open(src) as fp:
        return json.load(fp)


def _filter_parts(args):
    """(m, spec, multiplicity) from --filter plus optional --matrix."""
    raw = _load_raw(args.filter)
    tag = raw.get("type")
    if tag == "filter":
        mult = raw.get("multiplicity")
        return (decode(raw["m"]), make_dilation(raw["A"]),
                None if mult is None else decode(mult))
    if tag == "bank":
        spec = make_dilation(raw["A"])
        return decode(raw["filters"][raw["low_pass_index"]]), spec, None
    if tag in ("laurent", "step"):
        if not args.matrix:
            raise LimitWaveError("a bare function needs --matrix for its dilation")
        return decode(raw), make_dilation(json.loads(args.matrix)), None
    raise LimitWaveError(f"--filter got unusable type {tag!r}")


def _bank_parts(args):
    raw = _load_raw(args.bank)
    if raw.get("type") != "bank":
        raise LimitWaveError("--bank needs a bank JSON or bank preset")
    spec = make_dilation(raw["A"])
    return [decode(m) for m in raw["filters"]], spec, raw.get("low_pass_index")


def _parse_complex_list(text: str) -> list[complex]:
    return [complex(tok.strip().replace(" ", "")) for tok in text.split(",")]


def _emit(rep: Report, args, csv_payload: str | None = None) -> int:
    rep.version = __version__
    out = getattr(args, "out", None)
    fmt = getattr(args, "format", "text")
    if out:
        if fmt == "csv":
            if csv_payload is None:
                raise LimitWaveError("this subcommand has no CSV payload")
            with open(out, "w") as fp:
                fp.write(csv_payload)
        else:
            with open(out, "w") as fp:
                fp.write(report_to_json(rep))
    if fmt == "json":
        sys.stdout.write(report_to_json(rep))
    else:
        sys.stdout.write(report_to_text(rep))
    return rep.exit_code()


# ---------------------------------------------------------------- commands

def cmd_verify_filter(args, tols) -> int:
    m, spec, mult = _filter_parts(args)
    rep = Report("verify-filter", inputs={"filter": args.filter, "N": spec.N})
    t0 = time.perf_counter()
    if mult is None:
        res = verify_filter(m, spec).max_abs()
        rep.add("filter-identity", res, _tol(tols, "filter-identity", 1e-12))
    else:
        res = verify_generalized_filter(m, mult, spec.N).max_abs()
        rep.add("generalized-filter", res,
                _tol(tols, "generalized-filter", 1e-12))
    rep.add("low-pass", abs(eval_at_one(m) - spec.N ** 0.5), tol=None,
            passed=True, detail="|m(1) - sqrt(N)|; informational")
    rep.wall_time_s = time.perf_counter() - t0
    return _emit(rep, args)


def cmd_verify_bank(args, tols) -> int:
    ms, spec, _ = _bank_parts(args)
    rep = Report("verify-bank", inputs={"bank": args.bank, "N": spec.N})
    t0 = time.perf_counter()
    rep.add("bank-unitarity", verify_filter_bank(ms, spec),
            _tol(tols, "bank-unitarity", 1e-12))
    rep.wall_time_s = time.perf_counter() - t0
    return _emit(rep, args)


def cmd_make_filter(args, tols) -> int:
    spec = make_dilation(json.loads(args.matrix))
    m = filter_from_unit_vector(_parse_complex_list(args.vector), spec)
    filt = Filter(m, spec)
    if args.out:
        dump(filt, args.out)
    else:
        json.dump(encode(filt), sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    return 0


def cmd_make_bank(args, tols) -> int:
    spec = make_dilation(json.loads(args.matrix))
    rows = [_parse_complex_list(row) for row in args.rows.split(";")]
    bank = bank_from_orthonormal_basis(rows, spec)
    if args.out:
        dump(bank, args.out)
    else:
        json.dump(encode(bank), sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    return 0


def cmd_purity(args, tols) -> int:
    m, spec, mult = _filter_parts(args)
    filt = Filter(m, spec, multiplicity=mult)
    got = purity_check(filt)
    rep = Report("purity", inputs={"filter": args.filter})
    ok = args.expect is None or got.value == args.expect
    rep.add("purity", 0.0 if ok else 1.0, passed=ok, detail=got.value)
    return _emit(rep, args)


def cmd_cuntz(args, tols) -> int:
    ms, spec, lpi = _bank_parts(args)
    bank = FilterBank(ms, spec, low_pass_index=lpi)
    rep = Report("cuntz-check", inputs={"bank": args.bank, "K": args.K})
    t0 = time.perf_counter()
    rep.add("cuntz", verify_cuntz(bank, K=args.K), _tol(tols, "cuntz", 1e-12))
    rep.wall_time_s = time.perf_counter() - t0
    return _emit(rep, args)


def cmd_wavelet_gram(args, tols) -> int:
    from . import direct_limit as dl

    ms, spec, lpi = _bank_parts(args)
    bank = FilterBank(ms, spec, low_pass_index=lpi)
    rep = Report("wavelet-gram",
                 inputs={"bank": args.bank, "J": args.J, "K": args.K})
    t0 = time.perf_counter()
    fam = dl.wavelet_family(dl.wavelet_generators(bank), J=args.J, K=args.K)
    G = dl.gram_matrix(fam)
    rep.add("limit-gram", float(np.max(np.abs(G - np.eye(len(G))))),
            _tol(tols, "limit-gram", 1e-12),
            detail=f"{len(G)} family members")
    rep.wall_time_s = time.perf_counter() - t0
    return _emit(rep, args, csv_payload=gram_to_csv(G))


def cmd_cascade(args, tols) -> int:
    from .cascade import (
        check_partition_of_unity,
        check_scaling_identity,
        cohen_probe,
        scaling_function,
    )

    m, spec, _ = _filter_parts(args)
    if not isinstance(m, LaurentPoly):
        raise LimitWaveError("cascade sampling needs a Laurent filter")
    rep = Report("cascade", inputs={"filter": args.filter, "depth": args.depth,
                                    "box": args.box, "step": args.step})
    t0 = time.perf_counter()
    phi = scaling_function(m, spec, depth=args.depth, box=args.box,
                           step=args.step)
    low = is_low_pass(m, spec)
    rep.add("phi-at-zero",
            abs(phi.evaluate(np.zeros((1, spec.dim)))[0] - 1.0),
            _tol(tols, "phi-at-zero", 1e-12) if low else None,
            passed=None if low else True,
            detail="" if low else "not low-pass; informational")
    rep.add("scaling-identity", check_scaling_identity(phi, m, spec),
            _tol(tols, "scaling-identity", 1e-3))
    if args.K:
        rep.add("partition-of-unity", check_partition_of_unity(phi, K=args.K),
                _tol(tols, "partition-of-unity", 2e-2))
    rep.add("cohen-probe", cohen_probe(m, spec), tol=None, passed=True,
            detail="sampled min |m| near 1; informational")
    rep.wall_time_s = time.perf_counter() - t0
    return _emit(rep, args, csv_payload=samples_to_csv(phi))


def cmd_cantor_wavelets(args, tols) -> int:
    from .fractal import cantor_wavelets, nu_norm

    psi1, psi2 = cantor_wavelets()
    rep = Report("cantor-wavelets")
    rep.add("psi1-norm", abs(nu_norm(psi1) - 1.0), _tol(tols, "psi1-norm", 1e-12))
    rep.add("psi2-norm", abs(nu_norm(psi2) - 1.0), _tol(tols, "psi2-norm", 1e-12))
    rep.data = {"psi1": encode(psi1), "psi2": encode(psi2)}
    return _emit(rep, args)


def cmd_cantor_gram(args, tols) -> int:
    from . import fractal

    psi1, psi2 = fractal.cantor_wavelets()
    rep = Report("cantor-gram", inputs={"J": args.J, "K": args.K})
    t0 = time.perf_counter()
    fam = [fractal.wavelet_system(p, j, k)
           for p in (psi1, psi2)
           for j in range(-args.J, args.J + 1)
           for k in range(-args.K, args.K + 1)]
    G = fractal.gram_matrix(fam)
    rep.add("fractal-gram", float(np.max(np.abs(G - np.eye(len(G))))),
            _tol(tols, "fractal-gram", 1e-12),
            detail=f"{len(G)} family members")
    rep.wall_time_s = time.perf_counter() - t0
    return _emit(rep, args, csv_payload=gram_to_csv(G))


def cmd_r_family(args, tols) -> int:
    from . import fractal

    bank, p1, p2 = fractal.r_family(args.r)
    rep = Report("r-family", inputs={"r": args.r, "J": args.J, "K": args.K})
    t0 = time.perf_counter()
    rep.add("bank-unitarity", verify_filter_bank(bank.filters, bank.spec),
            _tol(tols, "bank-unitarity", 1e-12))
    fam = [fractal.wavelet_system(p, j, k)
           for p in (p1, p2)
           for j in range(-args.J, args.J + 1)
           for k in range(-args.K, args.K + 1)]
    G = fractal.gram_matrix(fam)
    rep.add("r-family-gram", float(np.max(np.abs(G - np.eye(len(G))))),
            _tol(tols, "r-family-gram", 1e-12))
    rep.wall_time_s = time.perf_counter() - t0
    if args.bank_out:
        dump(bank, args.bank_out)
    return _emit(rep, args, csv_payload=gram_to_csv(G))


def _solenoid_ctx(args):
    m, spec, _ = _filter_parts(args)
    if not isinstance(m, LaurentPoly):
        raise LimitWaveError("solenoid contexts need a Laurent filter")
    return FilterOperator(Filter(m, spec))


def cmd_tau_int(args, tols) -> int:
    from .solenoid import CylinderFn, tau_integral

    ctx = _solenoid_ctx(args)
    if args.g:
        with open(args.g) as fp:
            g = decode(json.load(fp))
    else:
        g = lp1({args.k: 1.0})
    val = tau_integral(ctx, CylinderFn(args.level, g))
    rep = Report("tau-int", inputs={"filter": args.filter, "level": args.level})
    rep.add("tau", abs(val), tol=None, passed=True,
            detail=f"integral = {val.real:.17g} + {val.imag:.17g}j")
    rep.data = {"tau": val}
    return _emit(rep, args)


def cmd_tau_consistency(args, tols) -> int:
    from .solenoid import CylinderFn, check_consistency, check_dutkay_formula, tau_integral
    from .torus import random_laurent

    ctx = _solenoid_ctx(args)
    rng = np.random.default_rng(args.seed)
    rep = Report("tau-consistency",
                 inputs={"filter": args.filter, "level": args.level,
                         "seed": args.seed})
    t0 = time.perf_counter()
    worst_u = max(abs(tau_integral(ctx, CylinderFn(n, lp1({0: 1.0}))) - 1.0)
                  for n in range(args.level + 1))
    rep.add("tau-of-one", worst_u, _tol(tols, "tau-of-one", 1e-12))
    worst_c = max(check_consistency(ctx, random_laurent(rng, 1, n_terms=6, radius=12), n)
                  for n in range(args.level + 1))
    rep.add("tau-consistency", worst_c, _tol(tols, "tau-consistency", 1e-12))
    worst_d = max(check_dutkay_formula(ctx, random_laurent(rng, 1, n_terms=6, radius=12), n)
                  for n in range(min(args.level, 3) + 1))
    rep.add("dutkay-formula", worst_d, _tol(tols, "dutkay-formula", 1e-12))
    rep.wall_time_s = time.perf_counter() - t0
    return _emit(rep, args)


def cmd_winding(args, tols) -> int:
    from .cascade import scaling_function
    from .pipelines import winding_tail
    from .solenoid import CylinderFn, winding_check

    ctx = _solenoid_ctx(args)
    rep = Report("winding-check",
                 inputs={"filter": args.filter, "box": args.box,
                         "step": args.step, "depth": args.depth})
    t0 = time.perf_counter()
    phi = scaling_function(ctx.m, ctx.spec, depth=args.depth, box=args.box,
                           step=args.step)
    if args.sweep:
        dev0, devk = 0.0, 0.0
        for n in range(3):
            for k in range(-4, 5):
                d = winding_check(ctx, CylinderFn(n, lp1({k: 1.0})), phi,
                                  rule=args.rule)["deviation"]
                dev0, devk = (max(dev0, d), devk) if k == 0 else (dev0, max(devk, d))
        rep.add("winding-oscillating", devk,
                _tol(tols, "winding-oscillating", 1e-3))
        rep.add("winding-constant", dev0,
                _tol(tols, "winding-constant", winding_tail(args.box)),
                detail="constant cylinders pay the |phi|^2 tail ~ 2/(pi^2 T)")
    else:
        out = winding_check(ctx, CylinderFn(args.level, lp1({args.k: 1.0})),
                            phi, rule=args.rule)
        default = 1e-3 if args.k != 0 else winding_tail(args.box)
        rep.add(f"winding[{args.level},{args.k}]", out["deviation"],
                _tol(tols, "winding", default))
        rep.data = {"numeric": out["numeric"], "exact": out["exact"]}
    rep.wall_time_s = time.perf_counter() - t0
    return _emit(rep, args)


def cmd_pipeline(args, tols) -> int:
    from .pipelines import run_pipeline

    t0 = time.perf_counter()
    rep = run_pipeline(args.preset, tols)
    rep.wall_time_s = time.perf_counter() - t0
    return _emit(rep, args)


def cmd_presets(args, tols) -> int:
    if args.write:
        for p in write_presets(args.write):
            print(p)
        return 0
    for name in PRESET_NAMES:
        obj = preset(name)
        kind = type(obj).__name__
        print(f"{name:10s} {kind} (N = {obj.spec.N})")
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="limitwave",
        description="Construct and verify wavelet systems: filters, banks, "
                    "Cuntz isometries, scaling functions, fractal wavelets, "
                    "and solenoid measures.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(q):
        q.add_argument("--out", help="write the report (or CSV payload) here")
        q.add_argument("--format", choices=("text", "json", "csv"),
                       default="text")

    q = sub.add_parser("verify-filter", help="filter-equation residual")
    q.add_argument("--filter", required=True, help="preset name or JSON file")
    q.add_argument("--matrix", help="dilation matrix JSON for bare functions")
    common(q)
    q.set_defaults(func=cmd_verify_filter)

    q = sub.add_parser("verify-bank", help="bank unitarity residual")
    q.add_argument("--bank", required=True)
    common(q)
    q.set_defaults(func=cmd_verify_bank)

    q = sub.add_parser("make-filter", help="filter from a unit vector")
    q.add_argument("--matrix", required=True)
    q.add_argument("--vector", required=True,
                   help="comma-separated complex coefficients")
    q.add_argument("--out")
    q.set_defaults(func=cmd_make_filter)

    q = sub.add_parser("make-bank", help="bank from orthonormal rows")
    q.add_argument("--matrix", required=True)
    q.add_argument("--rows", required=True,
                   help="rows separated by ';', entries by ','")
    q.add_argument("--out")
    q.set_defaults(func=cmd_make_bank)

    q = sub.add_parser("purity", help="pure-isometry classification")
    q.add_argument("--filter", required=True)
    q.add_argument("--matrix")
    q.add_argument("--expect", choices=("PureByComplement",
                                        "PureByNonUnimodular", "Inconclusive"))
    common(q)
    q.set_defaults(func=cmd_purity)

    q = sub.add_parser("cuntz-check", help="sum S_a S_a* = 1 on a basis box")
    q.add_argument("--bank", required=True)
    q.add_argument("--K", type=int, default=8)
    common(q)
    q.set_defaults(func=cmd_cuntz)

    q = sub.add_parser("wavelet-gram", help="direct-limit wavelet family Gram")
    q.add_argument("--bank", required=True)
    q.add_argument("--J", type=int, default=2)
    q.add_argument("--K", type=int, default=4)
    common(q)
    q.set_defaults(func=cmd_wavelet_gram)

    q = sub.add_parser("cascade", help="sample the scaling product and check it")
    q.add_argument("--filter", required=True)
    q.add_argument("--matrix")
    q.add_argument("--depth", type=int, default=20)
    q.add_argument("--box", type=float, default=32.0)
    q.add_argument("--step", type=float, default=1 / 64)
    q.add_argument("--K", type=int, default=0,
                   help="partition-of-unity radius (0 skips the check)")
    common(q)
    q.set_defaults(func=cmd_cascade)

    q = sub.add_parser("cantor-wavelets", help="the flat wavelet pair")
    common(q)
    q.set_defaults(func=cmd_cantor_wavelets)

    q = sub.add_parser("cantor-gram", help="fractal wavelet family Gram")
    q.add_argument("--J", type=int, default=3)
    q.add_argument("--K", type=int, default=8)
    common(q)
    q.set_defaults(func=cmd_cantor_gram)

    q = sub.add_parser("r-family", help="one-parameter deformed bank")
    q.add_argument("--r", type=float, required=True)
    q.add_argument("--J", type=int, default=3)
    q.add_argument("--K", type=int, default=8)
    q.add_argument("--bank-out", help="also write the bank JSON here")
    common(q)
    q.set_defaults(func=cmd_r_family)

    q = sub.add_parser("tau-int", help="exact cylinder integral")
    q.add_argument("--filter", required=True)
    q.add_argument("--matrix")
    q.add_argument("--level", type=int, required=True)
    q.add_argument("--k", type=int, default=0, help="monomial exponent")
    q.add_argument("--g", help="Laurent JSON file instead of --k")
    common(q)
    q.set_defaults(func=cmd_tau_int)

    q = sub.add_parser("tau-consistency", help="measure-extension residuals")
    q.add_argument("--filter", required=True)
    q.add_argument("--matrix")
    q.add_argument("--level", type=int, default=6)
    q.add_argument("--seed", type=int, default=42)
    common(q)
    q.set_defaults(func=cmd_tau_consistency)

    q = sub.add_parser("winding-check", help="quadrature vs tau on the winding line")
    q.add_argument("--filter", required=True)
    q.add_argument("--matrix")
    q.add_argument("--level", type=int, default=0)
    q.add_argument("--k", type=int, default=0)
    q.add_argument("--sweep", action="store_true",
                   help="run the n <= 2, |k| <= 4 sweep")
    q.add_argument("--box", type=float, default=64.0)
    q.add_argument("--step", type=float, default=1 / 256)
    q.add_argument("--depth", type=int, default=20)
    q.add_argument("--rule", choices=("trapezoid", "simpson"), default="simpson")
    common(q)
    q.set_defaults(func=cmd_winding)

    q = sub.add_parser("pipeline", help="full reproduction suite for a preset")
    q.add_argument("--preset", required=True)
    common(q)
    q.set_defaults(func=cmd_pipeline)

    q = sub.add_parser("presets", help="list presets or regenerate fixtures")
    q.add_argument("--write", metavar="DIR")
    q.set_defaults(func=cmd_presets)

    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        tols, argv = _extract_tols(argv)
    except LimitWaveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, tols)
    except LimitWaveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
