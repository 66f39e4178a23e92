"""Command line entry point: ``zetawallis {zeta,exact,verify,study}``.

Output is plain text by default, one JSON object per line with ``--json``, or
CSV with ``--csv``.  Exit codes: 0 ok, 2 usage, 3 pole or region violation.
Nothing is randomised and timings are only printed with ``--timing``, so
repeated runs produce identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Dict, List, Optional, Sequence

from zetawallis.diffcore import Modulus
from zetawallis.exact import bernoulli_oracle, zeta_neg_int
from zetawallis.products import CATALOGUE, verify_identity
from zetawallis.zeta import PoleError, RegionError, zeta

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3

CSV_COLUMNS = ["command", "s_re", "s_im", "c", "k", "N", "value_re", "value_im", "est_error", "elapsed_ms"]


class UsageError(Exception):
    pass


@dataclass
class OutputRecord:
    command: str
    inputs: Dict[str, object]
    value: str
    est_error: str
    metadata: Dict[str, object] = field(default_factory=dict)
    extra: Dict[str, object] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))


def format_decimal(x: float, digits: int = 15) -> str:
    """``x`` rounded half-even to ``digits`` significant digits."""
    if x != x:
        return "nan"
    if x in (float("inf"), float("-inf")):
        return "inf" if x > 0 else "-inf"
    d = Decimal(x)
    if d == 0:
        return "0"
    q = Decimal(1).scaleb(d.adjusted() - digits + 1)
    r = d.quantize(q, rounding=ROUND_HALF_EVEN)
    if -6 <= r.adjusted() < digits:
        text = format(r, "f")
    else:
        text = format(r, "e")
    if "." in text and "e" not in text.lower():
        text = text.rstrip("0").rstrip(".")
    return text


def format_complex(z: complex, digits: int = 15) -> str:
    if z.imag == 0:
        return format_decimal(z.real + 0.0, digits)
    return f"{format_decimal(z.real + 0.0, digits)},{format_decimal(z.imag, digits)}"


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) not in (1, 2):
        raise UsageError(f"cannot parse complex number {text!r}; use 're' or 're,im'")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}; use 're' or 're,im'") from None
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def parse_int_list(text: str) -> List[int]:
    """``"2,3"`` or ``"2..6"`` or a mix such as ``"1,4..6"``."""
    out: List[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"cannot parse integer list {text!r}") from None
    if not out:
        raise UsageError(f"empty integer list {text!r}")
    return out


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_zeta(s: complex, tol: float, c: Optional[int], k: Optional[int], N: Optional[int], digits: int):
    t0 = time.perf_counter()
    ev = zeta(s, tol, c=c, k=k, N=N)
    elapsed = (time.perf_counter() - t0) * 1000
    rec = OutputRecord(
        "zeta",
        {"s": format_complex(s, 17), "tol": tol, "c": c, "k": k, "N": N},
        format_complex(ev.value, digits),
        format_decimal(ev.est_error, 3),
        {"c": ev.plan.c, "k": ev.plan.k, "N": ev.plan.N, "elapsed_ms": None},
        {"conditional": ev.conditional, "terms_used": ev.terms_used},
    )
    return rec, ev, elapsed


def cmd_exact(m: int, c: int, check: bool):
    t0 = time.perf_counter()
    val = zeta_neg_int(m, c)
    extra: Dict[str, object] = {}
    if check:
        oracle = bernoulli_oracle(m)
        extra = {"oracle": _frac(oracle), "check": "MATCH" if oracle == val else "MISMATCH"}
    elapsed = (time.perf_counter() - t0) * 1000
    rec = OutputRecord("exact", {"m": m, "c": c}, _frac(val), "0", {"c": c, "k": m + 1, "N": None, "elapsed_ms": None}, extra)
    return rec, elapsed


def _frac(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def cmd_verify(name: str, N: int, tol: Optional[float], rows: int, full: bool, digits: int):
    t0 = time.perf_counter()
    ok, report = verify_identity(name, N, tol)
    elapsed = (time.perf_counter() - t0) * 1000
    ident = CATALOGUE[name]
    gaps = report.gaps()
    if full:
        picks = list(range(1, N + 1))
    else:
        picks = sorted({max(1, round(N ** (i / max(rows - 1, 1)))) for i in range(rows)} | {N})
    table = [
        {"block": b, "log_partial": format_decimal(float(report.log_partial[b - 1]), digits),
         "gap": format_decimal(float(gaps[b - 1]), 6)}
        for b in picks
    ]
    rec = OutputRecord(
        "verify",
        {"identity": name, "N": N, "tol": ident.tol if tol is None else tol},
        format_decimal(float(report.log_partial[-1]), digits),
        format_decimal(report.abs_gap, 6),
        {"c": ident.c, "k": 1 if ident.route == "continued" else 0, "N": N, "elapsed_ms": None},
        {
            "result": "PASS" if ok else "FAIL",
            "s": ident.s,
            "target_log": format_decimal(report.target_log, digits),
            "series_target": format_decimal(report.series_target, digits),
            "observed_order": None if report.observed_order is None else format_decimal(report.observed_order, 6),
            "tail_estimate": format_decimal(report.tail_estimate, 6),
        },
    )
    return rec, ok, table, elapsed


def _study_cell(s: complex, c: int, k: int, N: int, tol: float):
    try:
        ev = zeta(s, tol, c=c, k=k, N=N)
    except RegionError as exc:
        return {"status": "region", "error": str(exc)}
    except PoleError as exc:
        return {"status": "pole", "error": str(exc)}
    return {
        "status": "conditional regime" if ev.conditional else "ok",
        "value": ev.value,
        "est_error": ev.est_error,
    }


def cmd_study(s: complex, cs: Sequence[int], ks: Sequence[int], Ns: Sequence[int], jobs: int, digits: int):
    cells = [(c, k, N) for c in cs for k in ks for N in Ns]
    for c in cs:
        Modulus(c)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda cell: _study_cell(s, *cell, 1.0), cells))
    else:
        results = [_study_cell(s, *cell, 1.0) for cell in cells]
    # reference per modulus: the valid cell with the largest (k, N)
    refs: Dict[int, complex] = {}
    for (c, k, N), res in zip(cells, results):
        if "value" in res:
            key = (k, N)
            if c not in refs or key >= refs[c][0]:
                refs[c] = (key, res["value"])
    rows = []
    for (c, k, N), res in zip(cells, results):
        row = {"c": c, "k": k, "N": N, "status": res["status"]}
        if "value" in res:
            row["value"] = format_complex(res["value"], digits)
            row["est_error"] = format_decimal(res["est_error"], 3)
            row["abs_diff"] = format_decimal(abs(res["value"] - refs[c][1]), 3)
        else:
            row["value"] = row["est_error"] = row["abs_diff"] = ""
        rows.append(row)
    return rows


# --------------------------------------------------------------------------
# argument handling and rendering
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="zetawallis", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def out_flags(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--json", action="store_true", help="JSON lines output")
        g.add_argument("--csv", action="store_true", help="CSV output")
        sp.add_argument("--digits", type=int, default=15, help="significant digits (default 15)")
        sp.add_argument("--timing", action="store_true", help="report elapsed_ms (makes output run-dependent)")
        sp.add_argument("--out", help="write output to FILE instead of stdout")

    z = sub.add_parser("zeta", help="evaluate zeta(s)")
    z.add_argument("--s", required=True, help="'re' or 're,im'")
    z.add_argument("--tol", type=float, default=1e-12)
    z.add_argument("--c", type=int)
    z.add_argument("--k", type=int)
    z.add_argument("--N", type=int)
    out_flags(z)

    e = sub.add_parser("exact", help="exact zeta(-m)")
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--c", type=int, default=2)
    e.add_argument("--check", action="store_true", help="compare with the Bernoulli-number value")
    out_flags(e)

    v = sub.add_parser("verify", help="check a Wallis-type product identity")
    v.add_argument("--identity", required=True, help=", ".join(CATALOGUE))
    v.add_argument("--N", type=int, default=100_000)
    v.add_argument("--tol", type=float)
    v.add_argument("--rows", type=int, default=13, help="log-spaced table rows")
    v.add_argument("--full-table", action="store_true", help="print every block")
    out_flags(v)

    st = sub.add_parser("study", help="convergence grid over c, k, N")
    st.add_argument("--s", required=True)
    st.add_argument("--c", default="2,3")
    st.add_argument("--k", default="2..6")
    st.add_argument("--N", default="10,100,1000")
    st.add_argument("--jobs", type=int, default=1, help="worker threads for the grid")
    out_flags(st)
    return p


def _csv_text(rows: List[Dict[str, object]], columns: List[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({c: ("" if r.get(c) is None else r.get(c)) for c in columns})
    return buf.getvalue()


def _record_csv_row(rec: OutputRecord, s: Optional[complex] = None) -> Dict[str, object]:
    parts = rec.value.split(",")
    return {
        "command": rec.command,
        "s_re": "" if s is None else format_decimal(s.real, 17),
        "s_im": "" if s is None else format_decimal(s.imag, 17),
        "c": rec.metadata.get("c"),
        "k": rec.metadata.get("k"),
        "N": rec.metadata.get("N"),
        "value_re": parts[0],
        "value_im": parts[1] if len(parts) > 1 else "0",
        "est_error": rec.est_error,
        "elapsed_ms": rec.metadata.get("elapsed_ms"),
    }


def _run(args) -> tuple:
    """Return (text, exit_code)."""
    if args.command == "zeta":
        s = parse_complex(args.s)
        try:
            rec, ev, elapsed = cmd_zeta(s, args.tol, args.c, args.k, args.N, args.digits)
        except PoleError as exc:
            raise _DomainFailure(str(exc)) from None
        except RegionError as exc:
            raise _DomainFailure(str(exc)) from None
        if args.timing:
            rec.metadata["elapsed_ms"] = round(elapsed, 3)
        if args.json:
            return rec.to_json() + "\n", EXIT_OK
        if args.csv:
            return _csv_text([_record_csv_row(rec, s)], CSV_COLUMNS), EXIT_OK
        flag = " (conditional regime)" if ev.conditional else ""
        lines = [
            f"zeta({rec.inputs['s']}) = {rec.value}",
            f"est_error = {rec.est_error}{flag}",
            f"plan: c={ev.plan.c} k={ev.plan.k} N={ev.plan.N} terms={ev.terms_used}",
        ]
        if args.timing:
            lines.append(f"elapsed_ms = {rec.metadata['elapsed_ms']}")
        return "\n".join(lines) + "\n", EXIT_OK

    if args.command == "exact":
        if args.m < 0:
            raise UsageError("--m must be >= 0")
        Modulus(args.c)
        rec, elapsed = cmd_exact(args.m, args.c, args.check)
        if args.timing:
            rec.metadata["elapsed_ms"] = round(elapsed, 3)
        if args.json:
            return rec.to_json() + "\n", EXIT_OK
        if args.csv:
            return _csv_text([_record_csv_row(rec)], CSV_COLUMNS + ["check"] if args.check else CSV_COLUMNS), EXIT_OK
        text = rec.value + (f" {rec.extra['check']}" if args.check else "")
        return text + "\n", EXIT_OK

    if args.command == "verify":
        if args.identity not in CATALOGUE:
            raise UsageError(f"unknown identity {args.identity!r}; choose from {', '.join(CATALOGUE)}")
        if args.N < 11:
            raise UsageError("--N must be at least 11")
        rec, ok, table, elapsed = cmd_verify(args.identity, args.N, args.tol, args.rows, args.full_table, args.digits)
        if args.timing:
            rec.metadata["elapsed_ms"] = round(elapsed, 3)
        if args.json:
            lines = [json.dumps({"block": r["block"], "gap": r["gap"], "log_partial": r["log_partial"]}, sort_keys=True,
                                separators=(",", ":")) for r in table]
            return "\n".join(lines + [rec.to_json()]) + "\n", EXIT_OK
        if args.csv:
            return _csv_text(table, ["block", "log_partial", "gap"]) + f"# {rec.extra['result']}\n", EXIT_OK
        lines = [f"{'block':>10}  {'log_partial':>22}  {'gap':>12}"]
        lines += [f"{r['block']:>10}  {r['log_partial']:>22}  {r['gap']:>12}" for r in table]
        lines.append(f"identity {args.identity}: c={rec.metadata['c']} s={rec.extra['s']}")
        lines.append(f"target_log = {rec.extra['target_log']}  (series {rec.extra['series_target']})")
        lines.append(f"gap = {rec.est_error}  tol = {rec.inputs['tol']}  order ~ {rec.extra['observed_order']}")
        lines.append(rec.extra["result"])
        return "\n".join(lines) + "\n", EXIT_OK

    if args.command == "study":
        s = parse_complex(args.s)
        cs, ks, Ns = parse_int_list(args.c), parse_int_list(args.k), parse_int_list(args.N)
        if any(k < 0 for k in ks) or any(N < 1 for N in Ns):
            raise UsageError("k must be >= 0 and N >= 1")
        rows = cmd_study(s, cs, ks, Ns, args.jobs, args.digits)
        cols = ["c", "k", "N", "value", "est_error", "abs_diff", "status"]
        if args.json:
            return "".join(json.dumps(dict(r, s=format_complex(s, 17)), sort_keys=True, separators=(",", ":")) + "\n"
                           for r in rows), EXIT_OK
        if args.csv:
            return _csv_text(rows, cols), EXIT_OK
        lines = [f"{'c':>3} {'k':>3} {'N':>8}  {'value':>40}  {'est_error':>10}  {'abs_diff':>10}  status"]
        lines += [f"{r['c']:>3} {r['k']:>3} {r['N']:>8}  {r['value']:>40}  {r['est_error']:>10}  {r['abs_diff']:>10}  {r['status']}"
                  for r in rows]
        return "\n".join(lines) + "\n", EXIT_OK
    raise UsageError(f"unknown command {args.command!r}")


class _DomainFailure(Exception):
    pass


def _glue_values(argv: Sequence[str]) -> List[str]:
    # argparse treats "-0.5,3" as an option string; bind such values to their flag
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ("--s",):
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = _glue_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
        text, code = _run(args)
    except UsageError as exc:
        print(f"zetawallis: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _DomainFailure as exc:
        print(f"zetawallis: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ValueError, TypeError) as exc:
        print(f"zetawallis: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
