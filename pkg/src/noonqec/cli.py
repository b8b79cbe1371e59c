"""Command-line interface: ``noonqec <subcommand> [flags]``.

Exit status is 0 on success, 1 when a verified code fails the KL conditions
at the requested weight and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from collections.abc import Sequence

import numpy as np

from noonqec import analysis, comms, prep
from noonqec.codes import Code, catalog, noon_code, noon_code_alternative, reference_code
from noonqec.errors import InvalidInputError, NormalizationError, UnknownCodeError
from noonqec.fock import format_state
from noonqec.serialize import code_to_json, code_to_text, load_code_file

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _bounded(kind, lo=None, hi=None, lo_open=False, hi_open=False, name="value"):
    def parse(text: str):
        try:
            value = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be {kind.__name__}, got {text!r}") from None
        if isinstance(value, float) and not math.isfinite(value):
            raise argparse.ArgumentTypeError(f"{name} must be finite")
        if lo is not None and (value < lo or (lo_open and value == lo)):
            raise argparse.ArgumentTypeError(f"{name}={value} below allowed range")
        if hi is not None and (value > hi or (hi_open and value == hi)):
            raise argparse.ArgumentTypeError(f"{name}={value} above allowed range")
        return value

    return parse


gamma_open = _bounded(float, 0.0, 1.0, True, True, "gamma")
gamma_closed = _bounded(float, 0.0, 1.0, name="gamma")
positive_float = _bounded(float, 0.0, lo_open=True, name="distance")
positive_int = _bounded(int, 1, name="count")
non_negative_int = _bounded(int, 0, name="count")
dim_int = _bounded(int, 2, name="d")
unit_float = _bounded(float, 0.0, 1.0, name="t")


def _add_code_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--code", help="noon, noon_alt, multirail, or a reference label (see list-codes)")
    p.add_argument("--N", type=positive_int, help="photons per block for noon/noon_alt")
    p.add_argument("--d", type=dim_int, help="logical dimension for noon/noon_alt/multirail")
    p.add_argument("--code-file", help="custom code in the dump-code text or JSON format")


def _resolve_code(args: argparse.Namespace) -> Code:
    if args.code_file:
        if args.code:
            raise InvalidInputError("give either --code or --code-file, not both")
        return load_code_file(args.code_file)
    if not args.code:
        raise InvalidInputError("a code is required (--code or --code-file)")
    if args.code in ("noon", "noon_alt"):
        if args.N is None or args.d is None:
            raise InvalidInputError(f"--code {args.code} needs --N and --d")
        return noon_code(args.N, args.d) if args.code == "noon" else noon_code_alternative(args.N, args.d)
    return reference_code(args.code, args.d)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noonqec",
        description="NOON-state photon-loss codes: construction, KL verification, fidelity and repeater sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list-codes", help="catalog of built-in codes")

    p = sub.add_parser("verify", help="check the Knill-Laflamme conditions, print a JSON report")
    _add_code_args(p)
    p.add_argument("--max-loss", type=non_negative_int, default=1, help="largest loss weight checked (default 1)")
    p.add_argument("--gamma", type=gamma_open, default=analysis.DEFAULT_GAMMA, help="damping parameter (default 0.9)")
    p.add_argument("--tol", type=positive_float, default=analysis.DEFAULT_TOL, help="KL tolerance (default 1e-9)")

    p = sub.add_parser("dump-code", help="print codeword amplitude tables")
    _add_code_args(p)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("fidelity-sweep", help="CSV gamma,N,F of the N^2-photon codes")
    p.add_argument("--gamma-min", type=gamma_closed, default=0.6)
    p.add_argument("--gamma-max", type=gamma_closed, default=1.0)
    p.add_argument("--points", type=positive_int, default=81)
    p.add_argument("--N", type=positive_int, nargs="+", default=[2, 3, 4, 5])

    p = sub.add_parser("comm-sweep", help="CSV L0_km,N,P_succ of the one-way scheme")
    p.add_argument("--L", type=positive_float, default=1000.0, help="total distance in km (default 1000)")
    p.add_argument("--L-att", type=positive_float, default=comms.L_ATT_KM, help="attenuation length in km (default 22)")
    p.add_argument("--L0-min", type=positive_float, default=0.05)
    p.add_argument("--L0-max", type=positive_float, default=5.0)
    p.add_argument("--points", type=positive_int, default=100)
    p.add_argument("--N", type=positive_int, nargs="+", default=[2, 3, 4, 10])

    p = sub.add_parser("cost-table", help="CSV L0_km,N,d,cost of the one-way scheme")
    p.add_argument("--L", type=positive_float, default=1000.0)
    p.add_argument("--L-att", type=positive_float, default=comms.L_ATT_KM)
    p.add_argument("--L0-min", type=positive_float, default=0.05)
    p.add_argument("--L0-max", type=positive_float, default=5.0)
    p.add_argument("--points", type=positive_int, default=100)
    p.add_argument("--N", type=positive_int, nargs="+", default=[1, 3, 4, 5])
    p.add_argument("--d", type=dim_int, nargs="+", default=[2, 3, 4])

    p = sub.add_parser("prep-sim", help="simulate the heralded N=2 logical-qubit preparation")
    p.add_argument("--t", type=unit_float, required=True, help="beam-splitter transmittance in [0, 1]")
    p.add_argument("--dump-state", metavar="PATH", help="also write the output state in text form")
    return parser


def _grid(lo: float, hi: float, points: int) -> list[float]:
    if lo > hi:
        raise InvalidInputError(f"empty grid: min {lo} > max {hi}")
    return [float(x) for x in np.linspace(lo, hi, points)]


def _check_threads() -> None:
    value = os.environ.get("NOONQEC_THREADS")
    if value is None:
        return
    try:
        ok = int(value) >= 1
    except ValueError:
        ok = False
    if not ok:
        raise InvalidInputError(f"NOONQEC_THREADS must be a positive integer, got {value!r}")


def _list_codes(out) -> int:
    out.write(f"{'label':<16} {'d':>3} {'modes':>6} {'photons':>8}\n")
    for code in catalog():
        photons = code.fixed_photon_number()
        out.write(f"{code.label:<16} {code.d:>3} {code.mode_count:>6} {'-' if photons is None else photons:>8}\n")
    return EXIT_OK


def dispatch(args: argparse.Namespace, out=None) -> int:
    out = out or sys.stdout
    _check_threads()
    cmd = args.command
    if cmd == "list-codes":
        return _list_codes(out)
    if cmd == "verify":
        report = analysis.kl_verify(_resolve_code(args), args.max_loss, args.gamma, args.tol)
        out.write(json.dumps(report.to_dict(), indent=2) + "\n")
        return EXIT_OK if report.passed else EXIT_FAIL
    if cmd == "dump-code":
        code = _resolve_code(args)
        out.write(code_to_json(code) if args.format == "json" else code_to_text(code))
        return EXIT_OK
    if cmd == "fidelity-sweep":
        rows = comms.fidelity_table(_grid(args.gamma_min, args.gamma_max, args.points), args.N)
        out.write(comms.to_csv("fidelity", rows))
        return EXIT_OK
    if cmd == "comm-sweep":
        rows = comms.psucc_table(_grid(args.L0_min, args.L0_max, args.points), args.N, args.L, args.L_att)
        out.write(comms.to_csv("psucc", rows))
        return EXIT_OK
    if cmd == "cost-table":
        rows = comms.cost_table(_grid(args.L0_min, args.L0_max, args.points), args.N, args.d, args.L, args.L_att)
        out.write(comms.to_csv("cost", rows))
        return EXIT_OK
    if cmd == "prep-sim":
        result = prep.prep_logical_qubit(args.t)
        c0, c1 = result.target_coefficients
        payload = {
            "t": args.t,
            "c0": c0,
            "c1": c1,
            "success_probability": result.success_probability,
            "fidelity_to_target": result.fidelity_to_target(),
        }
        out.write(json.dumps(payload, indent=2) + "\n")
        if args.dump_state:
            with open(args.dump_state, "w", encoding="utf-8") as fh:
                fh.write(format_state(result.output_state))
        return EXIT_OK
    raise InvalidInputError(f"unknown command {cmd}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return dispatch(args)
    except UnknownCodeError as exc:
        parser.error(f"unknown code {exc.args[0]!r}; see list-codes")
    except (InvalidInputError, NormalizationError, OSError) as exc:
        parser.error(str(exc))
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
