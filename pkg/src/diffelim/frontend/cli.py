"""``diffelim`` command line.

Exit codes: 0 when a verdict was computed, 2 for malformed input, 3 when
a wall-clock or basis-size cap (or an out-of-reach bound) stopped the run.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from ..diffring import DiffSystem, flatten, prolong
from ..engine import (BoundReport, BoundTooLarge, EngineInputError, EngineOptions, check_consistency,
                      compute_bound, eliminate, probabilistic_eliminable, variety_stats)
from ..groebner import Limits, ResourceLimitExceeded, membership_certificate
from . import fixtures, report
from .parser import ParseError, parse, parse_expr

EXIT_OK, EXIT_INPUT, EXIT_LIMIT = 0, 2, 3
TEXT_WITNESS_TERMS = 200


class InputError(Exception):
    pass


def _common_flags() -> argparse.ArgumentParser:
    # SUPPRESS keeps flags given before the subcommand from being reset after it
    p = argparse.ArgumentParser(add_help=False)
    sup = argparse.SUPPRESS
    p.add_argument("--json", action="store_true", default=sup, help="print a JSON report")
    p.add_argument("--deg-mode", choices=("bezout", "hilbert", "user"), default=sup)
    p.add_argument("--d", type=int, default=sup, help="dimension for --deg-mode user")
    p.add_argument("--D", type=int, default=sup, help="degree for --deg-mode user")
    p.add_argument("--dim-mode", choices=("specialized", "exact_groebner"), default=sup)
    p.add_argument("--param-mode", choices=("exact", "specialize"), default=sup)
    p.add_argument("--strict-bound", action="store_true", default=sup,
                   help="prolong by the bound at once instead of probing lengths 1, 2, ...")
    p.add_argument("--seed", type=int, default=sup)
    p.add_argument("--timeout", type=float, default=sup, help="wall-clock cap in seconds")
    p.add_argument("--max-basis", type=int, default=sup, help="cap on Groebner basis size")
    p.add_argument("--certificate", action="store_true", default=sup,
                   help="include the full membership certificate in JSON output")
    p.add_argument("--keep", default=sup, help="comma-separated unknowns to keep (overrides the file)")
    p.add_argument("--full-witness", action="store_true", default=sup,
                   help="print long witnesses in full in text mode")
    return p


DEFAULTS = {"json": False, "deg_mode": "bezout", "d": None, "D": None, "dim_mode": "specialized",
            "param_mode": "exact", "strict_bound": False, "seed": 0, "timeout": None, "max_basis": None,
            "certificate": False, "keep": None, "full_witness": False}


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    top = argparse.ArgumentParser(prog="diffelim", parents=[common],
                                  description="Consistency and elimination for difference equations.")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    add("check", "decide whether the system has a solution").add_argument("file")
    add("eliminate", "find a consequence in the kept unknowns").add_argument("file")
    add("bound", "print B(d, D)")
    t = add("transform", "print the system prolonged to k copies")
    t.add_argument("file")
    t.add_argument("--B", dest="copies", type=int, required=True, help="number of copies s^0 .. s^(k-1)")
    add("stats", "print the dimension/degree statistics and the bound").add_argument("file")
    pe = add("prob-eliminate", "randomized elimination test")
    pe.add_argument("file")
    pe.add_argument("--p", type=float, default=0.99)
    pe.add_argument("--transforms", type=int, default=None, help="highest shift applied (default: the bound)")
    c = add("certify", "decide membership of a target in the prolonged ideal")
    c.add_argument("file")
    c.add_argument("--target", required=True)
    c.add_argument("--transforms", type=int, default=None,
                   help="highest shift applied to the equations (default: enough for the target)")
    cp = add("corpus", "run every packaged fixture")
    cp.add_argument("--jobs", type=int, default=1)
    cp.set_defaults(corpus_timeout=120.0)
    return top


def _options(args) -> EngineOptions:
    if args.deg_mode == "user" and args.d is None and args.D is None:
        raise InputError("--deg-mode user needs --d and/or --D")
    limits = Limits(seconds=args.timeout, max_basis=args.max_basis)
    return EngineOptions(deg_mode=args.deg_mode, dim_mode=args.dim_mode, param_mode=args.param_mode,
                         user_d=args.d, user_D=args.D, seed=args.seed, strict_bound=args.strict_bound,
                         certificate=True, limits=limits)


def load_system(name: str) -> DiffSystem:
    """Read a ``.dsys`` file; ``fixtures/NAME.dsys`` falls back to the packaged corpus."""
    p = Path(name)
    if p.exists():
        return parse(p.read_text(encoding="utf-8"))
    stem = p.stem
    if p.suffix in ("", ".dsys") and p.parent.name in ("fixtures", ""):
        if stem in fixtures.names():
            return fixtures.load(stem)
        if stem in fixtures.GENERATED:
            return fixtures.GENERATED[stem]()
    raise InputError(f"no such file: {name}")


def _with_keep(system: DiffSystem, keep: Optional[str]) -> DiffSystem:
    if keep is None:
        return system
    names = [k.strip() for k in keep.split(",") if k.strip()]
    stray = [k for k in names if k not in system.unknowns]
    if stray:
        raise InputError(f"--keep names unknowns not in the system: {', '.join(stray)}")
    return system.with_roles(names)


def _command(args, argv) -> dict:
    return {"name": args.command, "file": getattr(args, "file", None), "argv": list(argv)}


def _witness_text(r, full: bool) -> Optional[str]:
    if r.witness is None:
        return None
    if full or len(r.witness.terms) <= TEXT_WITNESS_TERMS:
        return str(r.witness)
    return f"<{len(r.witness.terms)} terms of total degree {r.witness.total_degree()}; " \
           f"use --full-witness or --json>"


def _run(args, argv, out) -> int:
    cmd = _command(args, argv)
    if args.command == "bound":
        if args.d is None or args.D is None:
            raise InputError("bound needs --d and --D")
        try:
            b = BoundReport.of(args.d, args.D)
        except ValueError as e:
            raise InputError(str(e)) from None
        if args.json:
            out.write(report.dumps(report.bound_json(b, cmd)) + "\n")
        elif b.value is None:
            raise BoundTooLarge(f"B({args.d}, {args.D}) has about 2^{b.log2} as its value")
        else:
            out.write(f"{compute_bound(args.d, args.D)}\n")
        return EXIT_OK
    if args.command == "corpus":
        return _corpus(args, out)

    system = _with_keep(load_system(args.file), args.keep)
    opts = _options(args)
    if args.command == "check":
        r = check_consistency(system.as_consistency(), opts)
        out.write((report.dumps(report.consistency_json(r, cmd)) if args.json
                   else report.consistency_text(r)) + "\n")
    elif args.command == "eliminate":
        r = eliminate(system, opts)
        if args.json:
            out.write(report.dumps(report.elimination_json(r, cmd, system, args.certificate)) + "\n")
        else:
            out.write(report.elimination_text(r, _witness_text(r, args.full_witness)) + "\n")
    elif args.command == "transform":
        if args.copies < 1:
            raise InputError("--B must be at least 1")
        eqs = prolong(system, args.copies)
        text = str(DiffSystem(eqs, system.keep_vars, system.elim_vars, system.params, system.field))
        if args.json:
            doc = report.transform_json(cmd, args.copies, text)
            out.write(report.dumps(doc) + "\n")
        else:
            out.write(text)
    elif args.command == "stats":
        role = "elimination" if system.keep_vars and system.elim_vars else "consistency"
        work = system if role == "elimination" else system.as_consistency()
        s = variety_stats(work, role, opts)
        b = BoundReport.of(s.d_hat, s.D_hat)
        out.write((report.dumps(report.stats_json(s, b, cmd)) if args.json
                   else report.stats_text(s, b)) + "\n")
    elif args.command == "prob-eliminate":
        if not 0 < args.p < 1:
            raise InputError("--p must lie strictly between 0 and 1")
        r = probabilistic_eliminable(system, args.p, args.seed, args.transforms, opts)
        out.write((report.dumps(report.probabilistic_json(r, cmd)) if args.json
                   else report.probabilistic_text(r)) + "\n")
    elif args.command == "certify":
        verdict, cert, target = _certify(system, args.target, args.transforms, opts)
        if args.json:
            out.write(report.dumps(report.certify_json(cmd, verdict, target, cert, system.field,
                                                       args.certificate)) + "\n")
        else:
            out.write(f"verdict: {verdict}\n")
            if cert is not None:
                out.write(f"certificate: verified={cert.verify()}\n")
    return EXIT_OK


def _certify(system: DiffSystem, text: str, transforms: Optional[int], opts: EngineOptions):
    target = parse_expr(text, system)
    if transforms is None:
        transforms = max(0, target.ord() - max(system.ord(), 0))
    if transforms < 0:
        raise InputError("--transforms must be non-negative")
    eqs = prolong(system.nonzero(), transforms + 1) if system.nonzero() else []
    emb = flatten(eqs + [target], (), system.unknowns, "consistency", system.field)
    gens, flat_target = emb.equations[:-1], emb.equations[-1]
    opts.limits.start()
    cert = membership_certificate(flat_target, gens, ring=emb.ring, limits=opts.limits)
    return ("member" if cert is not None else "not_member"), cert, target


def _corpus_one(name: str, timeout: Optional[float]) -> str:
    system = fixtures.load(name)
    opts = EngineOptions(deg_mode="hilbert", param_mode="specialize", limits=Limits(seconds=timeout))
    try:
        if system.keep_vars and system.elim_vars:
            r = eliminate(system, opts)
        else:
            r = check_consistency(system.as_consistency(), opts)
        return f"{name}: {r.verdict} after {r.transforms_used} transforms ({r.elapsed:.2f}s)"
    except (ResourceLimitExceeded, BoundTooLarge) as e:
        return f"{name}: resource limit ({e})"


def _corpus(args, out) -> int:
    names = fixtures.names()
    timeout = args.timeout if args.timeout is not None else args.corpus_timeout
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            lines = list(pool.map(_corpus_one, names, [timeout] * len(names)))
    else:
        lines = [_corpus_one(n, timeout) for n in names]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def run_cli(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    for k, v in DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    try:
        return _run(args, argv, out)
    except (ResourceLimitExceeded, BoundTooLarge) as e:
        err.write(f"diffelim: resource limit: {e}\n")
        return EXIT_LIMIT
    except (InputError, ParseError, EngineInputError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        err.write(f"diffelim: error: {msg}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
