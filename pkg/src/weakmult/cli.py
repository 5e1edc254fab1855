"""Command-line harness.

Subcommands: ``suite`` (run verification checks), ``norms`` (periodization
norm-ratio tables), ``coset`` (enumerate Z^N/AZ^N), ``transfer-check``
(transference identity for a symbol/kernel pair from files),
``lattice-verify`` (the intertwining battery), ``deleeuw`` (staircase
families).  Config files are JSON; command-line flags win over the file.
Reports are byte-identical across runs with the same seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .fourier import symbol_to_kernel
from .grids import build_line_model, build_torus_grid
from .kernels import load_kernel
from .lattice import coset_representatives, reduce_support_affine, verify_symbol_intertwining
from .multipliers import apply_kernel_symbol
from .staircase import convergence_monitor, staircase_extension
from .symbols import load_symbol, random_symbol, sample_kernel_symbol
from .transference import TransferCoupleConfig, periodize_to_kernel, transferred_operator_Hk
from .verification import CHECKS, SuiteConfig, build_norm_table, run_suite
from .weaklp import DEFAULT_SEED, CorpusSpec, build_corpus, sup_norm

from . import __version__


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _parse_matrix(text: str) -> np.ndarray:
    rows = [r for r in text.strip().split(";") if r.strip()]
    mat = [[int(x) for x in r.split(",")] for r in rows]
    return np.array(mat, dtype=int)


def cmd_suite(args) -> int:
    cfg_dict = {}
    if args.config:
        try:
            cfg_dict = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return 2
    if args.seed is not None:
        cfg_dict["seed"] = args.seed
    if args.check:
        cfg_dict["checks"] = args.check
    if args.module:
        cfg_dict["modules"] = args.module
    if args.jobs is not None:
        cfg_dict["jobs"] = args.jobs
    if args.tolerance:
        tols = dict(cfg_dict.get("tolerances", {}))
        for item in args.tolerance:
            name, _, value = item.partition("=")
            if not value:
                print(f"error: --tolerance wants NAME=VALUE, got {item!r}", file=sys.stderr)
                return 2
            tols[name] = float(value)
        cfg_dict["tolerances"] = tols
    try:
        config = SuiteConfig.from_dict(cfg_dict)
        report = run_suite(config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for chk in report["checks"]:
        status = "PASS" if chk["passed"] else "FAIL"
        print(
            f"{status}  {chk['name']:24s} max_error={chk['max_error']:.3e} "
            f"tolerance={chk['tolerance']:.3e} [{chk['kind']}]"
        )
    if args.out:
        Path(args.out).write_text(_json_dump(report))
    return 0 if report["all_passed"] else 1


def cmd_norms(args) -> int:
    rows = build_norm_table(seed=args.seed, p=args.p, n_symbols=args.count)
    if args.format == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(list(rows[0].keys()))
        for r in rows:
            wr.writerow([repr(v) if isinstance(v, float) else v for v in r.values()])
        wr.writerow(["seed", args.seed, "", "", "", ""])
        _write_out(buf.getvalue(), args.out)
    else:
        _write_out(_json_dump({"seed": args.seed, "p": args.p, "rows": rows}), args.out)
    return 0


def cmd_coset(args) -> int:
    try:
        mat = _parse_matrix(args.matrix)
        L = coset_representatives(mat)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = {"matrix": L.A.tolist(), "q": L.q, "cosets": L.cosets.tolist()}
    if args.format == "json":
        _write_out(_json_dump(payload), args.out)
    else:
        lines = [f"q = {L.q}"] + [" ".join(str(x) for x in row) for row in L.cosets]
        _write_out("\n".join(lines), args.out)
    return 0


def cmd_transfer_check(args) -> int:
    try:
        phi = load_symbol(args.phi)
        lam = load_kernel(args.kernel)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: cannot load inputs: {exc}", file=sys.stderr)
        return 2
    line = build_line_model(args.dim, args.period, args.grid)
    u_grid = build_torus_grid(args.dim, 4 * phi.max_abs_frequency + 4)
    try:
        cfg = TransferCoupleConfig(kernel=lam, line=line, u_grid=u_grid, p=args.p)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    k = symbol_to_kernel(phi, u_grid)
    w_kernel = periodize_to_kernel(phi, lam, line)
    corpus = build_corpus(
        line, CorpusSpec(families=("trig",), per_family=20, max_freq_index=8 * args.period, seed=args.seed)
    )
    worst = 0.0
    for _, f in corpus:
        lhs = transferred_operator_Hk(cfg, k, f)
        rhs = apply_kernel_symbol(w_kernel, f)
        worst = max(worst, float(np.max(np.abs(lhs.values - rhs.values)) / sup_norm(f)))
    passed = worst <= args.tol
    payload = {
        "max_error": worst,
        "tolerance": args.tol,
        "passed": passed,
        "functions": len(corpus),
        "seed": args.seed,
    }
    _write_out(_json_dump(payload), args.out)
    return 0 if passed else 1


def cmd_lattice_verify(args) -> int:
    try:
        mat = _parse_matrix(args.matrix)
        L = coset_representatives(mat)
        grid = build_torus_grid(mat.shape[0], args.grid)
        phi = random_symbol(mat.shape[0], args.radius, np.random.default_rng(args.seed))
        report = verify_symbol_intertwining(
            phi, L, grid, trials=args.trials, seed=args.seed
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_out(_json_dump(report.to_json()), args.out)
    return 0 if report.passed else 1


def cmd_deleeuw(args) -> int:
    try:
        spec = json.loads(Path(args.phi_family).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read family file: {exc}", file=sys.stderr)
        return 2
    eps_list = [float(x) for x in args.eps.split(",") if x]
    line = build_line_model(1, args.period, args.grid)
    fhw = float(line.freq_halfwidth)
    try:
        if "kernel" in spec:
            from .kernels import kernel_from_json

            base = kernel_from_json(spec["kernel"])
            symbols = [
                sample_kernel_symbol(base, eps, radius=int(np.ceil(fhw / eps)) + 1)
                for eps in eps_list
            ]
        elif "symbols" in spec:
            from .symbols import symbol_from_json

            symbols = [symbol_from_json(s) for s in spec["symbols"]]
            if len(symbols) != len(eps_list):
                raise ValueError("number of symbols and eps values differ")
        else:
            raise ValueError("family file needs a 'kernel' or a 'symbols' entry")
        staircases = [
            staircase_extension(s, eps, line) for s, eps in zip(symbols, eps_list)
        ]
        corpus = CorpusSpec(per_family=4, max_freq_index=4 * args.period, seed=args.seed)
        monitor = convergence_monitor(
            staircases, args.p, line, corpus, labels=[f"eps={e}" for e in eps_list]
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = {"eps": eps_list, "p": args.p, "monitor": monitor.to_json()}
    _write_out(_json_dump(payload), args.report)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakmult",
        description="verification harness for periodized weak-type multipliers",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("suite", help="run verification checks")
    p.add_argument("--config", help="JSON config file (flags win over it)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--check", action="append", choices=sorted(CHECKS), help="run one check (repeatable)")
    p.add_argument("--module", action="append", help="run only checks of this module (repeatable)")
    p.add_argument("--tolerance", action="append", metavar="NAME=VALUE")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("norms", help="periodization norm-ratio table")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_norms)

    p = sub.add_parser("coset", help="enumerate Z^N/AZ^N")
    p.add_argument("--matrix", required=True, help='integer matrix, e.g. "2,0;0,2"')
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_coset)

    p = sub.add_parser("transfer-check", help="transferred operator vs periodized multiplier")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--grid", type=int, default=1024, help="samples per period")
    p.add_argument("--period", type=int, default=16)
    p.add_argument("--phi", required=True, help="symbol JSON file")
    p.add_argument("--kernel", required=True, help="kernel JSON file")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out")
    p.set_defaults(func=cmd_transfer_check)

    p = sub.add_parser("lattice-verify", help="intertwining identity battery")
    p.add_argument("--matrix", required=True)
    p.add_argument("--grid", type=int, default=27)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--radius", type=int, default=3, help="window radius of the test symbol")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lattice_verify)

    p = sub.add_parser("deleeuw", help="staircase extension families")
    p.add_argument("--phi-family", required=True, help="JSON family file")
    p.add_argument("--eps", default="0.5,0.25,0.125")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--period", type=int, default=64)
    p.add_argument("--grid", type=int, default=256, help="samples per period")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(func=cmd_deleeuw)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
