"""Command-line entry point: ``python -m qcluster <command> ...``.

Exit codes: 0 when every check passes, 1 when an identity fails, 2 on usage,
parse or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import sympy

from .character import tilde_character
from .grassmann import NotPolynomialCount, count_gr, counting_polynomial
from .quiver import PRESETS, QuiverError, load_quiver
from .rep import (
    InternalConsistencyError,
    RepError,
    decompose_dims,
    ext_dim,
    hom_dim,
    iso_test,
    load_module,
    projective_dims,
    standard_modules,
    tau,
    tau_unchecked,
    zero_rep,
)
from . import verify as vf


class UsageError(Exception):
    pass


def parse_primes(text: str) -> list[int]:
    try:
        primes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot parse prime list {text!r}") from None
    if not primes or len(set(primes)) != len(primes):
        raise UsageError("primes must be a nonempty list of distinct values")
    for p in primes:
        if not sympy.isprime(p):
            raise UsageError(f"{p} is not prime")
    return primes


def parse_vector(text: str, n: int) -> tuple[int, ...]:
    try:
        v = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse dimension vector {text!r}") from None
    if len(v) != n:
        raise UsageError(f"dimension vector {text!r} needs {n} entries")
    return v


def parse_convention(text: str | None) -> vf.ConventionConfig | None:
    if not text:
        return None
    vals = dict(item.split("=", 1) for item in text.split(","))
    try:
        return vf.ConventionConfig(int(vals["sigma"]), vals["prefactor"], int(vals["pairing"]))
    except (KeyError, ValueError):
        raise UsageError("--convention expects sigma=±1,prefactor=t|q,pairing=±1") from None


def cache_path(quiver_spec: str) -> Path:
    """Calibration cache: a dotfile beside the quiver file (the working directory for presets)."""
    if quiver_spec.lower() in PRESETS:
        return Path.cwd() / ".qcluster-calibration.json"
    path = Path(quiver_spec)
    return path.with_name(f".{path.name}.calibration.json")


def load_convention(args) -> vf.ConventionConfig:
    override = parse_convention(getattr(args, "convention", None))
    if override:
        return override
    cache = cache_path(args.quiver)
    if cache.exists():
        try:
            return vf.ConventionConfig.from_json(json.loads(cache.read_text())["config"])
        except (KeyError, ValueError):
            pass
    result = vf.calibrate()
    _write_cache(cache, result)
    return result.config


def _write_cache(cache: Path, result: vf.CalibrationResult):
    try:
        cache.write_text(result.to_json() + "\n")
    except OSError:
        pass


# -- commands ------------------------------------------------------------------


def cmd_char(args) -> int:
    q = load_quiver(args.quiver)
    p = args.prime
    ctx = vf.context(q, load_convention(args).sigma)
    mod = load_module(args.module, q, p)
    zero = zero_rep(q, p)
    if args.shift == -1:
        mult = vf.injective_multiplicities(mod)
        x = vf.character(ctx, zero, mult)
    elif args.shift == 1:
        if not tau_unchecked(mod).is_zero():
            raise UsageError("--shift 1 needs a projective module")
        x = tilde_character(ctx, zero, decompose_dims(mod.dim_vector(), projective_dims(q)))
    else:
        mult = vf.injective_multiplicities(load_module(args.injective, q, p)) if args.injective else None
        if args.projective:
            if mult is not None:
                raise UsageError("give at most one of --injective and --projective")
            pm = load_module(args.projective, q, p)
            if not tau_unchecked(pm).is_zero():
                raise UsageError("--projective needs a projective module")
            x = tilde_character(ctx, mod, decompose_dims(pm.dim_vector(), projective_dims(q)))
        else:
            x = vf.character(ctx, mod, mult)
    print(x)
    return 0


def cmd_gr_count(args) -> int:
    q = load_quiver(args.quiver)
    mod = load_module(args.module, q, args.prime)
    print(count_gr(mod, parse_vector(args.e, q.n)))
    return 0


def default_corpus(q, p: int, max_dim: int = 6):
    """Indecomposables reachable as S_i, P_i, I_i and τ-iterates of injectives, up to ``max_dim``."""
    s, pr, inj = standard_modules(q, p)
    found = []

    def add(x):
        if x.total_dim == 0 or x.total_dim > max_dim:
            return False
        if any(y.dim == x.dim and iso_test(x, y) for y in found):
            return False
        found.append(x)
        return True

    for x in s + pr + inj:
        add(x)
    frontier = list(inj)
    while frontier:
        nxt = []
        for x in frontier:
            try:
                t = tau(x)
            except RepError:
                continue
            if add(t):
                nxt.append(t)
        frontier = nxt
    return sorted(found, key=lambda x: (x.total_dim, x.dim))


def _pairs(args, q, p, need_ext: bool):
    if args.M or args.N:
        if not (args.M and args.N):
            raise UsageError("give both --M and --N")
        return [(load_module(args.M, q, p), load_module(args.N, q, p))]
    corpus = default_corpus(q, p)
    return [(m, n) for m in corpus for n in corpus if not need_ext or ext_dim(m, n) >= 1]


def _run_suite(name: str, args, q, p: int, conv) -> list:
    ctx = vf.context(q, conv.sigma)
    out = []
    if name == "cdz":
        for m, n in _pairs(args, q, p, True):
            out.append(vf.verify_cdz(ctx, m, n, conv))
    elif name == "split":
        for m, n in _pairs(args, q, p, False):
            out.append(vf.verify_split_product(ctx, m, n))
    elif name == "fibers":
        for m, n in _pairs(args, q, p, False):
            out.append(vf.verify_fiber_law(m, n))
    elif name == "strata":
        for m, n in _pairs(args, q, p, True):
            out.append(vf.verify_strata_counts(m, n))
    elif name == "dim1":
        for m, n in _pairs(args, q, p, True):
            out.append(vf.verify_dim1_refined(ctx, m, n, args.eps_index))
    elif name == "bilinear":
        out.append(vf.verify_bilinear(ctx, args.samples))
    elif name == "initial":
        if args.M or args.I:
            if not (args.M and args.I):
                raise UsageError("give both --M and --I")
            cases = [(load_module(args.M, q, p), load_module(args.I, q, p))]
        else:
            _, _, inj = standard_modules(q, p)
            cases = [(m, i) for m in default_corpus(q, p) for i in inj if hom_dim(m, i) >= 1]
        sides = [args.side] if args.side else ["left", "right"]
        for m, i in cases:
            for side in sides:
                out.append(vf.verify_initial(ctx, m, i, side, conv))
    else:
        raise UsageError(f"unknown suite {name!r}")
    return out


SUITES = ["cdz", "initial", "fibers", "strata", "bilinear", "split", "dim1"]


def cmd_verify(args) -> int:
    q = load_quiver(args.quiver)
    conv = load_convention(args)
    primes = parse_primes(args.primes)
    names = SUITES if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        for p in primes if name != "bilinear" else primes[:1]:
            reports.extend(_run_suite(name, args, q, p, conv))
    if args.out:
        Path(args.out).write_text("".join(r.to_json() + "\n" for r in reports))
    failed = [r for r in reports if not r.equal]
    for r in reports:
        dims = " ".join(f"{k}={tuple(v['dim'])}" for k, v in sorted(r.inputs.items()) if isinstance(v, dict))
        primes_s = ",".join(map(str, r.primes)) or "-"
        print(f"{'PASS' if r.equal else 'FAIL'}  {r.identity:<14} p={primes_s:<4} {dims}")
    print(f"{len(reports) - len(failed)}/{len(reports)} checks passed")
    if failed:
        print("first failure:", json.dumps(failed[0].diagnostics[:3], sort_keys=True), file=sys.stderr)
        return 1
    return 0


def cmd_calibrate(args) -> int:
    primes = parse_primes(args.primes)
    try:
        result = vf.calibrate(primes)
    except vf.CalibrationError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    c = result.config
    rel = "ΛB = I" if c.sigma == 1 else "-ΛB = I"
    pref = "q^[M,I] - 1" if c.prefactor == "q" else "t^[M,I] - 1"
    print(f"sigma = {c.sigma:+d} ({rel}); prefactor {pref}; pairing sign {c.pairing_sign:+d}")
    if result.corrected:
        print("note: no combination passes with pairing sign +1; the sign was flipped")
    if args.quiver:
        _write_cache(cache_path(args.quiver), result)
    return 0


def cmd_interp(args) -> int:
    q = load_quiver(args.quiver)
    primes = parse_primes(args.primes)
    if args.target == "gr":
        if not (args.module and args.e):
            raise UsageError("interp gr needs --module and --e")
        e = parse_vector(args.e, q.n)
        try:
            poly = counting_polynomial(lambda p: load_module(args.module, q, p), e, primes, args.degree)
        except NotPolynomialCount as exc:
            print(str(exc), file=sys.stderr)
            return 1
        print(poly)
        return 0
    if not (args.M and args.N):
        raise UsageError("interp cdz needs --M and --N")
    conv = load_convention(args)
    ctx = vf.context(q, conv.sigma)

    def runner(p):
        lhs, rhs, _ = vf.cdz_sides(ctx, load_module(args.M, q, p), load_module(args.N, q, p))
        return lhs, rhs

    report = vf.interp_motivic(ctx, runner, primes, "cdz")
    print(report.to_json())
    return 0 if report.equal else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qcluster", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, module=False):
        p.add_argument("--quiver", default="a2", help="preset (a2, a3, a4, kronecker) or quiver file")
        p.add_argument("--convention", help="override, e.g. sigma=1,prefactor=q,pairing=-1")
        if module:
            p.add_argument("--module", required=True, help='module file or shorthand like "S 1" or "P 1 + S 2"')

    c = sub.add_parser("char", help="print a quantum cluster character")
    common(c, module=True)
    c.add_argument("--prime", type=int, default=2)
    c.add_argument("--shift", type=int, choices=(-1, 0, 1), default=0, help="-1: module is I and the object is I[-1]; 1: P[1]")
    c.add_argument("--injective", help="add I[-1] for this injective module")
    c.add_argument("--projective", help="add P[1] for this projective module")
    c.set_defaults(func=cmd_char)

    v = sub.add_parser("verify", help="run an identity suite")
    common(v)
    v.add_argument("suite", choices=SUITES + ["all"])
    v.add_argument("--M")
    v.add_argument("--N")
    v.add_argument("--I")
    v.add_argument("--side", choices=("left", "right"))
    v.add_argument("--primes", default="2,3")
    v.add_argument("--eps-index", type=int, default=0)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--out", help="write JSON reports, one per line")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("calibrate", help="fix the sign and prefactor conventions")
    k.add_argument("--primes", default="2,3,5")
    k.add_argument("--quiver", help="cache the result next to this quiver file")
    k.set_defaults(func=cmd_calibrate)

    g = sub.add_parser("gr-count", help="count points of a quiver Grassmannian")
    common(g, module=True)
    g.add_argument("--e", required=True)
    g.add_argument("--prime", type=int, default=2)
    g.set_defaults(func=cmd_gr_count)

    i = sub.add_parser("interp", help="interpolate counts or an identity across primes")
    common(i)
    i.add_argument("target", choices=("gr", "cdz"))
    i.add_argument("--module")
    i.add_argument("--e")
    i.add_argument("--M")
    i.add_argument("--N")
    i.add_argument("--degree", type=int)
    i.add_argument("--primes", default="2,3,5,7,11")
    i.set_defaults(func=cmd_interp)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if hasattr(args, "prime"):
            parse_primes(str(args.prime))
        return args.func(args)
    except (UsageError, QuiverError, RepError, vf.PreconditionError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
