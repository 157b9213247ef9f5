"""Command-line front end: analyze files, calibrate benchmarks, simulate.

Exit status is 0 whenever the requested computation completes; statistical
rejection is a result, not a failure.  I/O and configuration problems exit
nonzero with a diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass

from . import __version__
from .asymptotics import mad_moments
from .benford import benford_probs, chi_square_stat, proportions
from .digits import ColumnError, DigitSystem, ingest
from .mc import SimulationSpec, simulate
from .severity import (
    CalibrationConfig,
    SmallSampleWarning,
    chi_square_severity,
    default_delta_star,
    delta_star,
    n_min_for,
    run_test,
    severity_of_acceptance,
    severity_of_rejection,
)
from .specialfn import central_chi2_cdf


@dataclass
class AnalysisReport:
    label: str
    digits: int
    k: int
    n: int
    skipped: int
    skip_reasons: dict[str, int]
    small_sample: bool
    n_min: int
    mad: float
    expected_mad: float
    sd_mad: float
    excess_delta: float
    tilde_delta: float
    p_value: float
    delta_star: float
    severity_exceeds: float
    severity_at_most: float
    chi_square: float
    chi_square_p: float
    psi_star: float | None
    chi_square_severity: float | None
    digit_table: list[tuple[int, float, float]]  # (digit, observed, benford)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "digits": self.digits,
            "k": self.k,
            "n": self.n,
            "skipped": self.skipped,
            "skip_reasons": self.skip_reasons,
            "small_sample": self.small_sample,
            "n_min": self.n_min,
            "mad": self.mad,
            "expected_mad": self.expected_mad,
            "sd_mad": self.sd_mad,
            "excess_delta": self.excess_delta,
            "tilde_delta": self.tilde_delta,
            "p_value": self.p_value,
            "delta_star": self.delta_star,
            "severity_exceeds": self.severity_exceeds,
            "severity_at_most": self.severity_at_most,
            "chi_square": self.chi_square,
            "chi_square_p": self.chi_square_p,
            "psi_star": self.psi_star,
            "chi_square_severity": self.chi_square_severity,
            "digit_table": [list(row) for row in self.digit_table],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        def row(label, value):
            text = f"{value:.8g}" if isinstance(value, float) else str(value)
            return f"  {label:<19s}: {text}"

        scheme = "first digit" if self.digits == 1 else "first-two digits"
        lines = [
            f"Benford conformity analysis: {self.label}",
            row("digit scheme", f"{scheme} (k={self.k})"),
            row("records counted", self.n),
            row("records skipped", str(self.skipped)
                + (f"  ({_format_skips(self.skip_reasons)})" if self.skipped else "")),
        ]
        if self.small_sample:
            lines.append(
                f"  WARNING: n below recommended minimum {self.n_min}; "
                f"the normal approximation is rough"
            )
        lines += [
            "",
            row("MAD", self.mad),
            row("E(MAD) under law", self.expected_mad),
            row("SD(MAD) under law", self.sd_mad),
            row("excess delta", self.excess_delta),
            row("tilde delta", self.tilde_delta),
            row("p-value", self.p_value),
            "",
            row("delta* benchmark", self.delta_star),
            row("severity[δ > δ*]", self.severity_exceeds),
            row("severity[δ ≤ δ*]", self.severity_at_most),
            "",
            row(f"chi-square (df={self.k - 1})", self.chi_square),
            row("chi-square p-value", self.chi_square_p),
        ]
        if self.psi_star is not None:
            lines += [
                row("psi* benchmark", self.psi_star),
                row("severity[ψ > ψ*]", self.chi_square_severity),
            ]
        lines += ["", "  digit  observed      benford"]
        for digit, observed, expected in self.digit_table:
            lines.append(f"  {digit:<6d} {observed:<13.8g} {expected:.8g}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        rows = ["field,value"]
        for key, value in self.to_dict().items():
            if key in ("digit_table", "skip_reasons"):
                continue
            rows.append(f"{key},{_csv_cell(value)}")
        for reason, count in self.skip_reasons.items():
            rows.append(f"skip:{reason},{count}")
        rows.append("digit,observed,benford")
        for digit, observed, expected in self.digit_table:
            rows.append(f"{digit},{observed!r},{expected!r}")
        return "\n".join(rows) + "\n"


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def _format_skips(skip_reasons: dict[str, int]) -> str:
    return ", ".join(f"{reason}: {count}" for reason, count in sorted(skip_reasons.items()))


def _parse_column(value: str | None) -> int | str | None:
    if value is None:
        return None
    try:
        return int(value)
    except ValueError:
        return value


def _parse_grid(spec: str) -> list[float]:
    """Grid spec: either comma-separated values or start:stop:count."""
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must be start:stop:count, got {spec!r}")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 2:
            raise ValueError("grid count must be at least 2")
        step = (stop - start) / (count - 1)
        return [start + i * step for i in range(count)]
    return [float(v) for v in spec.split(",") if v.strip()]


def build_report(args, counts) -> AnalysisReport:
    system = counts.system
    b = benford_probs(system)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SmallSampleWarning)
        outcome = run_test(counts)
    ds = args.delta_star if args.delta_star is not None else default_delta_star(system)
    rejection = severity_of_rejection(outcome.tilde_delta, ds, counts.n, system)
    acceptance = severity_of_acceptance(outcome.tilde_delta, ds, counts.n, system)
    chi2 = chi_square_stat(counts, b)
    chi2_sev = None
    if args.psi_star is not None:
        chi2_sev = chi_square_severity(chi2, args.psi_star, system).severity
    moments = mad_moments(system, counts.n)
    floor = n_min_for(system, 5.0)
    p = proportions(counts)
    return AnalysisReport(
        label=args.label or args.file,
        digits=args.digits,
        k=system.k,
        n=counts.n,
        skipped=counts.skipped,
        skip_reasons=dict(counts.skip_reasons),
        small_sample=counts.n < floor,
        n_min=floor,
        mad=outcome.mad,
        expected_mad=moments.mean,
        sd_mad=moments.sd,
        excess_delta=outcome.excess_delta,
        tilde_delta=outcome.tilde_delta,
        p_value=outcome.p_value,
        delta_star=ds,
        severity_exceeds=rejection.severity,
        severity_at_most=acceptance.severity,
        chi_square=chi2,
        chi_square_p=1.0 - central_chi2_cdf(chi2, system.k - 1),
        psi_star=args.psi_star,
        chi_square_severity=chi2_sev,
        digit_table=[
            (int(d), float(obs), float(exp))
            for d, obs, exp in zip(system.digit_labels, p.p, b.b)
        ],
    )


def cmd_analyze(args) -> int:
    system = DigitSystem.from_digits(args.digits)
    with open(args.file, "r", encoding="utf-8", newline="") as fh:
        counts = ingest(
            fh,
            system,
            column=_parse_column(args.column),
            delimiter=args.delimiter,
            decimal_mark=args.decimal_mark,
        )
    if counts.n == 0:
        raise ValueError(f"no usable numeric records in {args.file!r}")
    report = build_report(args, counts)
    if args.format == "json":
        payload = report.to_json() + "\n"
    elif args.format == "csv":
        payload = report.to_csv()
    else:
        payload = report.to_text()
    _emit(payload, args.output)
    return 0


def cmd_calibrate(args) -> int:
    system = DigitSystem.from_digits(args.digits)
    n_min = args.nmin if args.nmin is not None else n_min_for(system, 5.0)
    n_max = args.nmax
    threshold = args.threshold
    config = CalibrationConfig(system=system, threshold=threshold, n_min=n_min, n_max=n_max)
    value = delta_star(config)
    fields = {
        "digits": args.digits,
        "k": system.k,
        "threshold": threshold,
        "n_min": n_min,
        "n_max": n_max,
        "delta_star": value,
    }
    if args.format == "json":
        payload = json.dumps(fields, indent=2) + "\n"
    elif args.format == "csv":
        payload = "field,value\n" + "\n".join(
            f"{key},{_csv_cell(val)}" for key, val in fields.items()
        ) + "\n"
    else:
        payload = (
            f"digit scheme : {args.digits} (k={system.k})\n"
            f"threshold t  : {threshold:.8g}\n"
            f"n range      : [{n_min}, {n_max}]\n"
            f"delta*       : {value:.8g}\n"
        )
    _emit(payload, args.output)
    return 0


def cmd_simulate(args) -> int:
    system = DigitSystem.from_digits(args.digits)
    spec = SimulationSpec(system=system, n=args.n, reps=args.reps, seed=args.seed)
    report = simulate(spec)
    if args.format == "json":
        payload = report.to_json() + "\n"
    elif args.format == "csv":
        data = report.to_dict()
        folded = data.pop("digit_folded_means")
        folded_se = data.pop("folded_mean_se")
        rows = ["field,value"]
        rows += [f"{key},{_csv_cell(val)}" for key, val in data.items()]
        rows.append("digit,folded_mean,folded_mean_se")
        for label, mean, se in zip(system.digit_labels, folded, folded_se):
            rows.append(f"{label},{mean!r},{se!r}")
        payload = "\n".join(rows) + "\n"
    else:
        data = report.to_dict()
        lines = [
            f"simulation: digits={args.digits} (k={system.k}), "
            f"n={args.n}, reps={args.reps}, seed={args.seed}",
            f"  MAD mean   empirical {data['empirical_mad_mean']:.8g}"
            f"  theoretical {data['theoretical_mad_mean']:.8g}"
            f"  (mc se {data['mad_mean_se']:.3g})",
            f"  MAD sd     empirical {data['empirical_mad_sd']:.8g}"
            f"  theoretical {data['theoretical_mad_sd']:.8g}",
            f"  tilde delta  mean {data['tilde_delta_mean']:.6g}"
            f"  sd {data['tilde_delta_sd']:.6g}"
            f"  (mc se of mean {data['tilde_delta_mean_se']:.3g})",
            f"  folded deviation means (expected {data['expected_folded_mean']:.8g}):",
        ]
        for label, mean in zip(system.digit_labels, data["digit_folded_means"]):
            lines.append(f"    digit {label:<3d} {mean:.6g}")
        payload = "\n".join(lines) + "\n"
    _emit(payload, args.output)
    return 0


def cmd_severity_curve(args) -> int:
    system = DigitSystem.from_digits(args.digits)
    grid = _parse_grid(args.grid)
    points = []
    for ds in grid:
        result = severity_of_rejection(args.tilde_delta, ds, args.n, system)
        points.append((ds, result.severity))
    if args.format == "json":
        payload = json.dumps(
            {
                "digits": args.digits,
                "k": system.k,
                "n": args.n,
                "tilde_delta": args.tilde_delta,
                "claim": "δ > δ*",
                "points": [{"delta_star": ds, "severity": sev} for ds, sev in points],
            },
            indent=2,
        ) + "\n"
    elif args.format == "csv":
        rows = ["delta_star,severity"]
        rows += [f"{ds!r},{sev!r}" for ds, sev in points]
        payload = "\n".join(rows) + "\n"
    else:
        lines = [
            f"severity of claim δ > δ* at tilde delta {args.tilde_delta:.8g}"
            f" (digits={args.digits}, n={args.n})",
            f"  {'delta*':<14s} severity",
        ]
        lines += [f"  {ds:<14.8g} {sev:.8g}" for ds, sev in points]
        payload = "\n".join(lines) + "\n"
    _emit(payload, args.output)
    return 0


def cmd_plotdata(args) -> int:
    system = DigitSystem.from_digits(args.digits)
    with open(args.file, "r", encoding="utf-8", newline="") as fh:
        counts = ingest(
            fh,
            system,
            column=_parse_column(args.column),
            delimiter=args.delimiter,
            decimal_mark=args.decimal_mark,
        )
    if counts.n == 0:
        raise ValueError(f"no usable numeric records in {args.file!r}")
    p = proportions(counts)
    b = benford_probs(system)
    rows = ["digit,observed,benford"]
    for digit, observed, expected in zip(system.digit_labels, p.p, b.b):
        rows.append(f"{digit},{float(observed)!r},{float(expected)!r}")
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(rows) + "\n")
    return 0


def _emit(payload: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _add_input_options(parser) -> None:
    parser.add_argument("file", help="CSV or whitespace-delimited text file")
    parser.add_argument("--column", default=None,
                        help="column to analyze: 0-based index or header name (default: first)")
    parser.add_argument("--delimiter", default=None,
                        help="field delimiter (default: sniff comma, else whitespace)")
    parser.add_argument("--decimal-mark", default=".",
                        help="decimal mark used in the input (default '.')")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="benfordsev",
        description="Benford conformity testing with severity analysis",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="test one file for conformity and grade severity")
    _add_input_options(p)
    p.add_argument("--digits", type=int, choices=(1, 2), default=1)
    p.add_argument("--delta-star", type=float, default=None,
                   help="substantive discrepancy benchmark (default: shipped value per scheme)")
    p.add_argument("--psi-star", type=float, default=None,
                   help="chi-square noncentrality benchmark (no default)")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--label", default=None, help="dataset label for the report")
    p.add_argument("--output", default=None, help="write the report here instead of stdout")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("calibrate", help="calibrate delta* from a MAD threshold")
    p.add_argument("--digits", type=int, choices=(1, 2), default=1)
    p.add_argument("--threshold", type=float, required=True,
                   help="close-conformity MAD bound t")
    p.add_argument("--nmin", type=int, default=None,
                   help="smallest sample size (default: expected count of 5 per digit)")
    p.add_argument("--nmax", type=int, default=25000)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("simulate", help="Monte Carlo check of the null distribution")
    p.add_argument("--digits", type=int, choices=(1, 2), default=1)
    p.add_argument("--n", type=int, required=True, help="sample size per replication")
    p.add_argument("--reps", type=int, required=True, help="number of replications")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("severity-curve", help="severity as a function of delta*")
    p.add_argument("--digits", type=int, choices=(1, 2), default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tilde-delta", type=float, required=True,
                   help="observed standardized excess MAD")
    p.add_argument("--grid", required=True,
                   help="delta* grid: comma-separated values or start:stop:count")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_severity_curve)

    p = sub.add_parser("plotdata", help="per-digit observed vs Benford frequencies as CSV")
    _add_input_options(p)
    p.add_argument("--digits", type=int, choices=(1, 2), default=1)
    p.add_argument("--out", required=True, help="path of the CSV file to write")
    p.set_defaults(func=cmd_plotdata)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ColumnError, ValueError) as exc:
        print(f"benfordsev: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
