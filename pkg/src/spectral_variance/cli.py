"""Command-line front end.

Usage::

    $ spectral-variance spectrum --weights 1/3,1/5
    $ spectral-variance join --weights 1/3 --spectrum 0:-1/2
    $ spectral-variance bp --exponents 2,3,5
    $ spectral-variance families --tpqr 3,3,3
    $ spectral-variance families --bimodal E3p --p 4
    $ spectral-variance scan --family tpqr --max 12 --csv
    $ spectral-variance frobenius --n 3 --m 2 --metric flat --check residue

Exact quantities are written as ``"p/q"`` strings.  Exit codes: 0 on
success, 1 on usage errors, 2 on domain errors (an ``{"error", "message"}``
object is written to stdout).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from .errors import BadParams, InvalidSpectrum, SpectralError
from .exact_arith import parse_rational
from .families import BimodalSeries, gamma_bimodal, gamma_tpqr, scan_conjecture
from .joins import brieskorn_pham, gamma_join_check, join
from .spectrum_core import (Spectrum, WeightSystem, gamma_from_spectrum, spectrum_from_weights,
                            spectrum_report, variance)

__all__ = ["main", "run", "build_parser", "replay_argv", "UsageError"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


class _Operand(argparse.Action):
    """Collect ``--weights`` and ``--spectrum`` in command-line order."""

    def __call__(self, parser, namespace, values, option_string=None):
        ops = list(getattr(namespace, "operands", None) or [])
        ops.append((self.dest, values))
        namespace.operands = ops


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _parse_spectrum(text: str) -> Spectrum:
    """``"N:v1,v2,..."`` with ``N`` the ambient dimension."""
    head, sep, body = text.replace(" ", "").partition(":")
    if not sep:
        raise InvalidSpectrum(f"spectrum must look like 'N:v1,v2,...', got {text!r}")
    try:
        n = int(head)
        vals = [parse_rational(v) for v in body.split(",") if v]
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidSpectrum(f"cannot parse spectrum {text!r}: {exc}") from exc
    return Spectrum(vals, n)


def _spectrum_fields(spec: Spectrum) -> dict:
    var = variance(spec)
    rhs = (spec.last - spec.first) / 12
    return {
        "mu": spec.mu,
        "n": spec.n,
        "spectrum": [str(v) for v in spec.values],
        "variance": str(var),
        "rhs": str(rhs),
        "gamma": str(gamma_from_spectrum(spec)),
        "theorem_1_1": var == rhs,
    }


# -- subcommands -------------------------------------------------------------


def _cmd_spectrum(args) -> dict:
    return spectrum_report(WeightSystem.parse(args.weights))


def _cmd_join(args) -> dict:
    ops = getattr(args, "operands", None) or []
    if len(ops) < 2:
        raise BadParams("join needs at least two operands (--weights or --spectrum)")
    specs, described = [], []
    for kind, text in ops:
        if kind == "weights":
            ws = WeightSystem.parse(text)
            specs.append(spectrum_from_weights(ws))
            described.append({"weights": [str(w) for w in ws.weights]})
        else:
            s = _parse_spectrum(text)
            specs.append(s)
            described.append({"n": s.n, "spectrum": [str(v) for v in s.values]})
    out = specs[0]
    bilinear = True
    for s in specs[1:]:
        bilinear = bilinear and gamma_join_check(out, s).equal
        out = join(out, s)
    return {"operands": described, **_spectrum_fields(out), "bilinear": bilinear}


def _cmd_bp(args) -> dict:
    return {"exponents": list(args.exponents), **_spectrum_fields(brieskorn_pham(args.exponents))}


def _cmd_families(args) -> dict:
    if (args.tpqr is None) == (args.bimodal is None):
        raise BadParams("give exactly one of --tpqr or --bimodal")
    if args.tpqr is not None:
        if len(args.tpqr) != 3:
            raise BadParams(f"--tpqr needs three integers, got {args.tpqr}")
        g = gamma_tpqr(*args.tpqr)
        family, params = "tpqr", [str(x) for x in args.tpqr]
    else:
        if args.p is None:
            raise BadParams("--bimodal needs --p")
        series = BimodalSeries.parse(args.bimodal)
        g = gamma_bimodal(series, args.p)
        family, params = series.label, [str(args.p)]
    return {"family": family, "parameters": params, "gamma": str(g), "nonneg": g >= 0}


def _cmd_scan(args) -> dict:
    bounds = [] if args.max is None else ([args.max] if args.min is None else [args.min, args.max])
    kwargs = {}
    if args.series:
        if args.family != "bimodal":
            raise BadParams("--series only applies to the bimodal family")
        kwargs["series"] = [BimodalSeries.parse(s) for s in args.series.split(",") if s]
    report = scan_conjecture(args.family, bounds, **kwargs)
    out = report.as_dict()
    out["bounds"] = {"min": args.min, "max": args.max, "series": args.series}
    out["_csv"] = report.to_csv()
    return out


def _cmd_frobenius(args) -> dict:
    # imported lazily: numpy and sympy are only needed here
    from .frobenius.checks import run_checks
    from .frobenius.model import build_model

    model = build_model(args.n, args.m, args.metric)
    report = run_checks(model, args.check, args.tol)
    return {"n": report["n"], "m": report["m"], "metric": report["metric"],
            "check": args.check, "tol": args.tol,
            "checks": report["checks"], "pass": report["pass"]}


# -- output ------------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


def to_csv(kind: str, report: dict) -> str:
    if kind == "scan":
        return report["_csv"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if kind == "frobenius":
        w.writerow(["name", "measured", "expected", "tolerance", "pass", "note"])
        for c in report["checks"]:
            w.writerow([_cell(c["name"]), _cell(c["measured"]), _cell(c["expected"]),
                        _cell(c["tolerance"]), _cell(c["pass"]), _cell(c.get("note", ""))])
        return buf.getvalue()
    w.writerow(["field", "value"])
    for key, value in report.items():
        w.writerow([key, _cell(value)])
    return buf.getvalue()


def to_json(report: dict) -> str:
    clean = {k: v for k, v in report.items() if not k.startswith("_")}
    return json.dumps(clean, indent=2) + "\n"


def replay_argv(kind: str, report: dict) -> list[str]:
    """Command line that recomputes ``report`` from the inputs it records."""
    if kind == "spectrum":
        return ["spectrum", "--weights", ",".join(report["weights"])]
    if kind == "bp":
        return ["bp", "--exponents", ",".join(str(a) for a in report["exponents"])]
    if kind == "join":
        argv = ["join"]
        for op in report["operands"]:
            if "weights" in op:
                argv += ["--weights", ",".join(op["weights"])]
            else:
                argv += ["--spectrum", f"{op['n']}:" + ",".join(op["spectrum"])]
        return argv
    if kind == "families":
        if report["family"] == "tpqr":
            return ["families", "--tpqr", ",".join(report["parameters"])]
        return ["families", "--bimodal", report["family"], "--p", report["parameters"][0]]
    if kind == "scan":
        argv = ["scan", "--family", report["family"]]
        b = report["bounds"]
        for flag in ("min", "max", "series"):
            if b[flag] is not None:
                argv += [f"--{flag}", str(b[flag])]
        return argv
    if kind == "frobenius":
        argv = ["frobenius", "--n", str(report["n"]), "--m", str(report["m"]),
                "--metric", report["metric"], "--check", report["check"]]
        if report["tol"] is not None:
            argv += ["--tol", repr(report["tol"])]
        return argv
    raise BadParams(f"unknown report kind {kind!r}")


# -- entry points ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spectral-variance",
                     description="Spectra of quasihomogeneous singularities, the gamma "
                                 "invariant and checks on I_2(n) x A_1^(m-2) Frobenius models.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--csv", action="store_true", help="write CSV instead of JSON")
        p.add_argument("--out", metavar="FILE", help="write to FILE instead of stdout")
        return p

    p = common(sub.add_parser("spectrum", help="spectrum and variance from weights"))
    p.add_argument("--weights", required=True, help="comma-separated weights in (0, 1/2]")
    p.set_defaults(func=_cmd_spectrum)

    p = common(sub.add_parser("join", help="Thom-Sebastiani join of two or more spectra"))
    p.add_argument("--weights", dest="weights", action=_Operand,
                   help="an operand given by weights (repeatable)")
    p.add_argument("--spectrum", dest="spectrum", action=_Operand,
                   help="an operand 'N:v1,v2,...' (repeatable)")
    p.set_defaults(func=_cmd_join)

    p = common(sub.add_parser("bp", help="Brieskorn-Pham spectrum"))
    p.add_argument("--exponents", required=True, type=_int_list,
                   help="comma-separated exponents a_i >= 2")
    p.set_defaults(func=_cmd_bp)

    p = common(sub.add_parser("families", help="closed-form gamma for one family member"))
    p.add_argument("--tpqr", type=_int_list, help="p,q,r")
    p.add_argument("--bimodal", help="series name, one of " +
                   ", ".join(s.name for s in BimodalSeries))
    p.add_argument("--p", type=int, help="index of the bimodal series member")
    p.set_defaults(func=_cmd_families)

    p = common(sub.add_parser("scan", help="sweep a family and report min and zeros"))
    p.add_argument("--family", required=True, choices=["tpqr", "bimodal"])
    p.add_argument("--max", type=int, help="upper bound on the parameters")
    p.add_argument("--min", type=int, help="lower bound on the parameters")
    p.add_argument("--series", help="bimodal series to include (comma-separated)")
    p.set_defaults(func=_cmd_scan)

    p = common(sub.add_parser("frobenius", help="numerical checks on the Frobenius model"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--metric", choices=["test", "flat", "test_metric", "flat_potential"],
                   default="flat", help="metric kind (short or full name)")
    p.add_argument("--check", choices=["axioms", "socle", "tau", "residue", "euler", "all"],
                   default="all")
    p.add_argument("--tol", type=float, default=None,
                   help="override every check tolerance")
    p.set_defaults(func=_cmd_frobenius)
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    try:
        report = args.func(args)
    except SpectralError as exc:
        _emit(json.dumps({"error": exc.code, "message": str(exc)}) + "\n", args.out)
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 2
    text = to_csv(args.command, report) if args.csv else to_json(report)
    _emit(text, args.out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
