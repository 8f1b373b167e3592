"""Command-line entry point.

Exit codes: 0 = Roberts certified / true, 1 = NotRoberts / false,
2 = Inconclusive, 3 = bad input, 4 = numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import dwshell, harness, ranges
from .example import EXAMPLE_MATRIX, EXAMPLE_NORM_MINUS, EXAMPLE_NORM_PLUS
from .linalg_core import (
    InvalidInputError,
    NumericalFailureError,
    load_matrix,
    matrix_to_json,
    operator_norm,
)
from .matrix_gen import CLASSES, GenSpec, generate
from .orthogonality import (
    DeciderConfig,
    Verdict,
    bj_pair,
    bj_to_identity,
    norm_pm,
    roberts_refute_pair,
    roberts_to_identity,
)

EXIT = {Verdict.ROBERTS: 0, Verdict.NOT_ROBERTS: 1, Verdict.INCONCLUSIVE: 2}
EXIT_INPUT, EXIT_NUMERIC = 3, 4


def _radii(text: str) -> tuple:
    """``lo:hi:count`` (log-spaced) or a comma list of radius multipliers."""
    try:
        if ":" in text:
            lo, hi, count = text.split(":")
            return (float(lo), float(hi), int(count))
        return tuple(float(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad --lambda-radii {text!r}") from exc


def _config(args) -> DeciderConfig:
    return DeciderConfig(
        n_theta=args.ntheta, n_phi=args.nphi, n_lon=args.nlon,
        tol_pass=args.tol_pass, tol_fail=args.tol_fail,
        force_shell=args.force_shell, lambda_radii=args.lambda_radii,
    )


def _emit(obj, args, text: str | None = None, name: str | None = None):
    payload = json.dumps(obj) if text is None or args.json else text
    if args.out and name:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(payload + ("" if payload.endswith("\n") else "\n"))
    else:
        print(payload.rstrip("\n"))


def cmd_check(args) -> int:
    cfg = _config(args)
    if args.relation == "identity":
        if len(args.files) != 1:
            raise InvalidInputError("check identity takes one matrix file")
        v = roberts_to_identity(load_matrix(args.files[0]), cfg)
        print(v.to_json())
        return EXIT[v.kind]
    if args.relation == "pair":
        if len(args.files) != 2:
            raise InvalidInputError("check pair takes two matrix files")
        A, B = (load_matrix(f) for f in args.files)
        lam = roberts_refute_pair(A, B, tol=cfg.tol_fail, angles=cfg.lambda_angles, radii=cfg.lambda_radii)
        report = {"kind": "NoWitness" if lam is None else "NotRoberts", "witness": None}
        if lam is not None:
            p, m = norm_pm(A, B, lam)
            report["witness"] = {"lambda": [lam.real, lam.imag], "norm_plus": p, "norm_minus": m}
        print(json.dumps(report))
        return 0 if lam is None else 1
    # bj
    if len(args.files) == 1:
        ok = bj_to_identity(load_matrix(args.files[0]))
    elif len(args.files) == 2:
        A, B = (load_matrix(f) for f in args.files)
        ok = bj_pair(A, B, tol=cfg.tol_fail, angles=cfg.lambda_angles, radii=cfg.lambda_radii)
    else:
        raise InvalidInputError("check bj takes one or two matrix files")
    print(json.dumps({"birkhoff_james": ok}))
    return 0 if ok else 1


def cmd_repro_example(args) -> int:
    cfg = _config(args)
    A = EXAMPLE_MATRIX
    plus, minus = norm_pm(A, np.eye(4), 1.0)
    defect = ranges.nr_symmetry_defect(A, cfg.n_theta)
    v = roberts_to_identity(A, cfg)
    ok = (round(plus, 4) == EXAMPLE_NORM_PLUS and round(minus, 4) == EXAMPLE_NORM_MINUS
          and v.kind is Verdict.NOT_ROBERTS)
    report = {
        "norm_plus": round(plus, 4), "norm_minus": round(minus, 4),
        "nr_symmetry_defect": defect, "verdict": v.to_dict(), "reproduced": ok,
    }
    lines = [
        f"||A + I|| = {plus:.4f}",
        f"||A - I|| = {minus:.4f}",
        f"numerical-range symmetry defect = {defect:.3e}",
        f"{plus:.4f} / {minus:.4f}, verdict {v.kind.value} (method {v.method})",
    ]
    if v.witness_lambda is not None:
        lines.append(f"witness lambda = {v.witness_lambda:.6g}: "
                     f"||A + lam I|| = {v.norm_plus:.6f}, ||A - lam I|| = {v.norm_minus:.6f}")
    lines.append("reproduced" if ok else "NOT reproduced")
    _emit(report, args, "\n".join(lines))
    return 0 if ok else 1


def cmd_export(args) -> int:
    cfg = _config(args)
    A = load_matrix(args.file)
    stem = Path(args.file).stem
    if args.kind == "nr":
        prof = ranges.nr_profile(A, cfg.n_theta)
        text = ranges.write_nr_csv(prof)
        name = f"{stem}_nr.csv"
    else:
        grid = dwshell.hemisphere_grid(cfg.n_phi, cfg.n_lon)
        cloud = dwshell.dv_upper_samples(A, grid)
        rep = dwshell.dv_ub_symmetry_defect(A, grid)
        summary = {"defect": rep.defect, "certified_bound": rep.certified_bound,
                   "witness": list(rep.witness), "scale": 1.0 + operator_norm(A) ** 2}
        print(json.dumps({"shell_defect": summary}), file=sys.stderr)
        if args.json:
            text = dwshell.shell_to_json(cloud, grid, defect=summary)
            name = f"{stem}_shell.json"
        else:
            text = dwshell.write_shell_csv(cloud)
            name = f"{stem}_shell.csv"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_proptest(args) -> int:
    res = harness.run_suite(args.suite, args.trials, args.seed, _config(args))
    _emit(res.as_dict(), args, "\n".join(res.lines()))
    return 0 if res.ok else 1


def _complex_list(text):
    return [complex(x.replace(" ", "")) for x in text.split(",") if x.strip()]


def cmd_gen(args) -> int:
    params = {}
    if args.spectrum:
        params["spectrum"] = _complex_list(args.spectrum)
    if args.half_spectrum:
        params["half_spectrum"] = _complex_list(args.half_spectrum)
    if args.k is not None:
        params["k"] = args.k
    spec = GenSpec(args.cls, args.n, args.seed, args.trial, params)
    out = generate(spec)
    if isinstance(out, tuple):
        doc = {"spec": spec.as_dict(), "pair": [matrix_to_json(M) for M in out]}
        if args.out:
            d = Path(args.out)
            d.mkdir(parents=True, exist_ok=True)
            for name, M in zip(("a.json", "b.json"), out):
                (d / name).write_text(json.dumps(matrix_to_json(M, spec=spec.as_dict())) + "\n")
            return 0
    else:
        doc = matrix_to_json(out, spec=spec.as_dict())
    _emit(doc, args, json.dumps(doc), name=f"{args.cls}_{args.n}_{args.seed}_{args.trial}.json")
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors must not collide with the Inconclusive exit code
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--ntheta", type=int, default=720, help="numerical-range angle grid size")
    common.add_argument("--nphi", type=int, default=91, help="hemisphere latitudes (pole to equator)")
    common.add_argument("--nlon", type=int, default=360, help="hemisphere longitudes")
    common.add_argument("--lambda-radii", type=_radii, default=(1e-2, 1e2, 20),
                        help="lo:hi:count log-spaced radii, or a comma list")
    common.add_argument("--tol-pass", type=float, default=1e-8)
    common.add_argument("--tol-fail", type=float, default=1e-6)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--force-shell", action="store_true", help="skip class fast paths")
    common.add_argument("--out", help="write output files into this directory")

    p = _Parser(prog="dwroberts", description="Numerical ranges, Davis-Wielandt shells and Roberts orthogonality.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="decide an orthogonality relation")
    c.add_argument("relation", choices=["identity", "pair", "bj"])
    c.add_argument("files", nargs="+")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("repro-example", parents=[common], help="reproduce the 4x4 example")
    r.set_defaults(func=cmd_repro_example)

    e = sub.add_parser("export", parents=[common], help="export range or shell samples")
    e.add_argument("kind", choices=["nr", "shell"])
    e.add_argument("file")
    e.set_defaults(func=cmd_export)

    t = sub.add_parser("proptest", parents=[common], help="run a property battery")
    t.add_argument("suite", choices=sorted(harness.SUITES))
    t.add_argument("--trials", type=int, default=100)
    t.set_defaults(func=cmd_proptest)

    g = sub.add_parser("gen", parents=[common], help="generate a random matrix as JSON")
    g.add_argument("cls", choices=CLASSES)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--trial", type=int, default=0)
    g.add_argument("--spectrum", help="comma-separated complex values, e.g. '1+1j,0.5,-0.5'")
    g.add_argument("--half-spectrum", help="S for symmetric_spectrum_normal")
    g.add_argument("--k", type=int, help="split index for orthogonal_pair")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInputError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalFailureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
