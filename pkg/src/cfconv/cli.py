"""Command-line frontend: ``cfconv eval | check | certify``.

Exit codes: 0 completed, 2 a criterion was violated (check mode), 3 bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .criteria import CRITERIA, PARTIAL_CRITERIA, certificate_search, check, check_certificate
from .errors import CFError
from .numerics import DEFAULT_TOL, DEFAULT_WINDOW, ConvergenceReport, convergence_report
from .scalars import DEFAULT_PRECISION, INFINITY, MIN_PRECISION, digits_for, format_real, format_scalar, magnitude
from .speclang import parse_spec

EXIT_OK = 0
EXIT_VIOLATED = 2
EXIT_INPUT = 3

PARAM_FLAGS = ("c", "beta", "d", "rho", "a", "r", "variant")
SEARCH_TARGETS = {"theorem3": "theorem3-constant", "theorem3-constant": "theorem3-constant", "thron": "thron"}


@dataclass
class RunConfig:
    command: str
    sources: list            # (label, text) pairs, processed in order
    terms: int = 100
    precision: int = DEFAULT_PRECISION
    tol: float = DEFAULT_TOL
    window: int = DEFAULT_WINDOW
    backend: str = "auto"
    criterion: Optional[str] = None
    params: dict = field(default_factory=dict)
    report: Optional[str] = None
    trace: Optional[str] = None

    def validate(self):
        if self.terms < 1:
            raise ValueError("--terms must be at least 1")
        if self.precision < MIN_PRECISION:
            raise ValueError(f"--precision must be at least {MIN_PRECISION}")
        if not self.tol > 0:
            raise ValueError("--tol must be positive")
        if self.window < 2:
            raise ValueError("--window must be at least 2")
        if self.command == "check" and not self.criterion:
            raise ValueError("check needs --criterion")
        if self.command == "certify" and (self.criterion or "theorem3") not in SEARCH_TARGETS:
            raise ValueError("certify supports --criterion theorem3 or thron")


@dataclass
class RunResult:
    report: dict
    convergence: ConvergenceReport
    exit_code: int


def _real(x, digits):
    if x is None:
        return None
    if x is INFINITY:
        return "inf"
    return format_real(x, digits)


def _scalar(v, digits):
    return None if v is None else format_scalar(v, digits)


def _gap_summary(conv: ConvergenceReport, digits: int) -> dict:
    finite = [g for _, g in conv.gap_trace if g is not INFINITY]
    return {
        "points": len(conv.gap_trace),
        "last_even_gap": _real(conv.gap_trace[-1][1], digits) if conv.gap_trace else None,
        "last_odd_gap": _real(conv.odd_gap_trace[-1][1], digits) if conv.odd_gap_trace else None,
        "min_even_gap": _real(min(finite), digits) if finite else None,
        "log10_gap_slope": None if conv.rate is None else f"{conv.rate:.6e}",
        "even_limit": _scalar(conv.even_limit, digits),
        "odd_limit": _scalar(conv.odd_limit, digits),
    }


def run_one(cfg: RunConfig, label: str, text: str) -> RunResult:
    """Execute the configured pipeline on one spec; raises on bad input."""
    spec = parse_spec(text)
    digits = digits_for(cfg.precision)
    conv = convergence_report(spec, cfg.terms, cfg.backend, cfg.precision, cfg.tol, cfg.window)

    verdicts, extra, exit_code = [], {}, EXIT_OK
    if cfg.command == "check":
        verdict = check(spec, cfg.criterion, cfg.params, cfg.terms, cfg.precision)
        verdicts.append(verdict.to_dict())
        if not verdict.holds:
            exit_code = EXIT_VIOLATED
    elif cfg.command == "certify":
        target = SEARCH_TARGETS[cfg.criterion or "theorem3"]
        cert = certificate_search(spec, target, cfg.terms, cfg.precision)
        extra["search_target"] = target
        extra["certificate"] = None if cert is None else cert.to_dict()
        if cert is not None:
            verdicts.append(check_certificate(spec, cert, cfg.terms, cfg.precision).to_dict())

    report = {
        "input_echo": {
            "source": label,
            "text": text,
            "canonical": spec.text,
            "command": cfg.command,
            "criterion": cfg.criterion,
            "params": dict(cfg.params),
            "precision": cfg.precision,
            "tol": repr(cfg.tol),
            "window": cfg.window,
        },
        "backend": conv.backend,
        "terms": conv.terms_used,
        **extra,
        "verdicts": verdicts,
        "limit_estimate": _scalar(conv.limit_estimate, digits),
        "last_approximant": _scalar(conv.trace[-1], digits),
        "cauchy": conv.cauchy_satisfied,
        "gap_summary": _gap_summary(conv, digits),
        "max_b_ratio": _real(conv.max_b_ratio, digits),
        "determinant_residual_max": _real(conv.residual_summary, digits),
    }
    return RunResult(report, conv, exit_code)


def trace_rows(conv: ConvergenceReport, digits: int):
    """CSV rows n, re(f_n), im(f_n), |f_n - f_{n-1}| (blank for n = 1)."""
    prev = None
    for n, v in enumerate(conv.trace, start=1):
        if v is INFINITY:
            re = im = "inf"
        else:
            s = format_scalar(v, digits)
            re, im = s["re"], s["im"]
        if prev is None:
            gap = ""
        elif v is INFINITY or prev is INFINITY:
            gap = "inf"
        else:
            gap = format_real(magnitude(v - prev), digits)
        yield [n, re, im, gap]
        prev = v


def write_trace(path: Path, results: list, digits: int):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        multi = len(results) > 1
        writer.writerow((["source"] if multi else []) + ["n", "re", "im", "gap"])
        for label, res in results:
            for row in trace_rows(res.convergence, digits):
                writer.writerow(([label] if multi else []) + row)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def run(cfg: RunConfig, out=None, err=None) -> int:
    """Run every spec in input order, then write outputs once."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        cfg.validate()
    except ValueError as e:
        print(f"error: {e}", file=err)
        return EXIT_INPUT

    results = []
    for label, text in cfg.sources:
        try:
            results.append((label, run_one(cfg, label, text)))
        except (CFError, ValueError) as e:
            print(f"error: {label}: {e}", file=err)
            return EXIT_INPUT

    reports = [res.report for _, res in results]
    payload = dump_json(reports[0] if len(reports) == 1 else reports)
    if cfg.report:
        Path(cfg.report).write_text(payload, encoding="utf-8")
    else:
        out.write(payload)
    if cfg.trace:
        write_trace(Path(cfg.trace), results, digits_for(cfg.precision))
    return max(res.exit_code for _, res in results)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cfconv", description="Evaluate continued fractions and check convergence criteria.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "eval": "evaluate approximants and convergence diagnostics",
        "check": "evaluate and test one criterion on the prefix",
        "certify": "search for criterion parameters and re-check them",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--spec", action="append", metavar="FILE", help="a .cfspec file (repeat for batch runs)")
        src.add_argument("--inline", metavar="STR", help="spec text given directly")
        p.add_argument("--terms", type=int, default=100, help="number of elements N (default 100)")
        p.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="float working precision in bits")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="Cauchy tolerance (default 1e-12)")
        p.add_argument("--window", type=int, default=DEFAULT_WINDOW, help="Cauchy window length (default 6)")
        p.add_argument("--backend", choices=["auto", "exact", "float"], default="auto")
        choices = sorted(CRITERIA + PARTIAL_CRITERIA) if name == "check" else sorted(SEARCH_TARGETS)
        p.add_argument("--criterion", choices=choices if name != "eval" else None,
                       help="criterion to check, or search target for certify")
        for flag in PARAM_FLAGS[:-1]:
            p.add_argument(f"--{flag}", help=f"criterion parameter {flag} (number or expression in n)")
        p.add_argument("--variant", choices=["cond1", "cond2"], help="condition form for theorem3/cornew")
        p.add_argument("--report", metavar="PATH", help="write the JSON report here instead of stdout")
        p.add_argument("--trace", metavar="PATH", help="write the approximant trace as CSV")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.inline is not None:
        sources = [("<inline>", args.inline)]
    else:
        sources = [(path, None) for path in args.spec]
    params = {k: getattr(args, k) for k in PARAM_FLAGS if getattr(args, k) is not None}
    return RunConfig(args.command, sources, args.terms, args.precision, args.tol, args.window,
                     args.backend, args.criterion, params, args.report, args.trace)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    loaded = []
    for label, text in cfg.sources:
        if text is None:
            try:
                text = Path(label).read_text(encoding="utf-8")
            except OSError as e:
                print(f"error: cannot read {label}: {e.strerror}", file=sys.stderr)
                return EXIT_INPUT
        loaded.append((label, text))
    cfg.sources = loaded
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
