"""Batch scans over Hilbert-function families, checkpointing, and reports."""

from __future__ import annotations

import itertools
import json
import os
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from csv import QUOTE_MINIMAL, writer as csv_writer
from dataclasses import dataclass
from fractions import Fraction
from io import StringIO
from math import factorial

from .betti import (
    BettiDiagram,
    ek_betti,
    greedy_stages,
    is_pure,
    is_quasipure,
    max_shifts,
    min_shifts,
)
from .errors import NeedsCapError, NotAdmissibleError
from .hilbert import HilbertFunction, _enumerate_value_tuples, _values, multiplicity
from .koszul import DEFAULT_CHAR, koszul_betti, truncation_analysis, verify_truncation_rows
from .monomial import lex_ideal, parse_ideal, quotient_hilbert_function, truncate
from .verdict import (
    DEFAULT_DFS_CAP,
    DEFAULT_FILTERS,
    Classification,
    ClassifyOptions,
    _classify_columns,
    classify,
    lower_bound_holds,
    upper_bound_holds,
)

__all__ = ["ScanReport", "scan", "check_hf", "check_ideal"]

KNOWN_FILTERS = frozenset(DEFAULT_FILTERS)


@dataclass
class ScanReport:
    """Scan outcome: parameters, counters, exception records, timing, cursor."""

    parameters: dict
    counts: dict
    exceptions: list
    timing: dict
    checkpoint_cursor: str | None
    status: str

    def to_json(self):
        payload = {
            "parameters": self.parameters,
            "counts": self.counts,
            "exceptions": self.exceptions,
            "timing": self.timing,
            "checkpoint_cursor": self.checkpoint_cursor,
            "status": self.status,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def to_csv(self):
        out = StringIO()
        rows = csv_writer(out, quoting=QUOTE_MINIMAL, lineterminator="\n")
        rows.writerow(["hf", "e", "M", "lhs", "rhs", "status", "reason"])
        for rec in self.exceptions:
            rows.writerow([
                rec["hf"],
                rec["e"],
                " ".join(str(s) for s in rec["shifts"]),
                rec["lhs"],
                rec["rhs"],
                rec["status"],
                rec["reason"],
            ])
        return out.getvalue()

    def summary(self):
        p = self.parameters
        lines = [
            "scan: n={n} prefix={prefix} socle_max={socle_max} filters={filters} dfs_cap={dfs_cap}".format(
                n=p["n"],
                prefix=",".join(str(v) for v in p["prefix"]),
                socle_max=p["socle_max"],
                filters=",".join(p["filters"]),
                dfs_cap=p["dfs_cap"],
            ),
            "scanned {scanned} Hilbert functions in {sec} s".format(
                scanned=self.counts["scanned"], sec=self.timing["seconds"]
            ),
            "bound holds: {0}".format(self.counts["bound_holds"]),
            "exceptions: {0} (eliminated {1}, unresolved {2})".format(
                len(self.exceptions), self.counts["eliminated"], self.counts["unresolved"]
            ),
        ]
        if self.counts["eliminated_by"]:
            parts = [f"{k}: {v}" for k, v in sorted(self.counts["eliminated_by"].items())]
            lines.append("eliminated by: " + "; ".join(parts))
        unresolved = [rec for rec in self.exceptions if rec["status"] == "UNRESOLVED"]
        if unresolved:
            lines.append("unresolved Hilbert functions:")
            for rec in unresolved:
                lines.append(f"  {rec['hf']}: {rec['reason']}")
        lines.append(f"status: {self.status}")
        return "\n".join(lines) + "\n"


def _scan_chunk(args):
    """Classify one chunk of Hilbert function value tuples.

    Returns (count, bound_holds, exception records, last tuple processed).
    """
    chunk, n, filters, dfs_cap = args
    holds = 0
    records = []
    for hvals in chunk:
        status, reason, e, shifts, lhs, rhs, _, greedy_cols, extras = _classify_columns(
            hvals, n, filters, dfs_cap
        )
        if extras is None:
            holds += 1
            continue
        result = Classification(
            hvals, n, status, reason, e, shifts, lhs, rhs,
            BettiDiagram.from_columns(n, greedy_cols),
            violating=extras["violating"],
            degenerate=extras["degenerate"],
            nodes=extras["nodes"],
            cap_exceeded=extras["cap_exceeded"],
            filter_histogram=extras["filter_histogram"],
            survivors=[BettiDiagram.from_columns(n, c) for c in extras["survivor_cols"]],
        )
        records.append(result.to_record())
    return len(chunk), holds, records, list(chunk[-1])


def _chunked(stream, size):
    chunk = []
    for item in stream:
        chunk.append(item)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def _pooled_results(executor, args_iter, window):
    pending = deque()
    try:
        for args in args_iter:
            pending.append(executor.submit(_scan_chunk, args))
            if len(pending) >= window:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()
    finally:
        for fut in pending:
            fut.cancel()


def _write_checkpoint(path, cursor, payload):
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        fh.write(",".join(str(v) for v in cursor) + "\n")
        json.dump(payload, fh, sort_keys=True)
        fh.write("\n")
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def _load_checkpoint(path):
    with open(path) as fh:
        first = fh.readline().strip()
        rest = fh.read()
    cursor = tuple(int(v) for v in first.split(","))
    return cursor, json.loads(rest)


def scan(
    n,
    socle_max,
    prefix=(1,),
    *,
    filters=DEFAULT_FILTERS,
    dfs_cap=DEFAULT_DFS_CAP,
    jobs=None,
    chunk_size=512,
    checkpoint_path=None,
    checkpoint_interval=10_000,
    out_path=None,
    out_format="json",
    limit=None,
):
    """Classify every O-sequence extending prefix up to socle_max.

    Deterministic regardless of jobs; resumable from checkpoint_path; limit
    caps the number of functions processed in this invocation, leaving an
    INCOMPLETE report and a checkpoint to resume from.
    """
    start = time.time()
    prefix = tuple(int(v) for v in _values(prefix))
    filters = tuple(sorted(set(filters)))
    unknown = set(filters) - KNOWN_FILTERS
    if unknown:
        raise ValueError(f"unknown filters {sorted(unknown)}; known: {sorted(KNOWN_FILTERS)}")
    if out_format not in ("json", "csv"):
        raise ValueError(f"unknown report format {out_format!r}")
    parameters = {
        "n": int(n),
        "socle_max": int(socle_max),
        "prefix": list(prefix),
        "filters": list(filters),
        "dfs_cap": int(dfs_cap),
    }
    scanned = 0
    bound_holds = 0
    exceptions = []
    cursor = None
    if checkpoint_path and os.path.exists(checkpoint_path) and os.path.getsize(checkpoint_path):
        cursor, saved = _load_checkpoint(checkpoint_path)
        if saved["parameters"] != parameters:
            raise ValueError(
                f"checkpoint {checkpoint_path} was written with parameters "
                f"{saved['parameters']}, current scan uses {parameters}"
            )
        scanned = saved["scanned"]
        bound_holds = saved["bound_holds"]
        exceptions = saved["exceptions"]

    stream = _enumerate_value_tuples(n, socle_max, prefix)
    if cursor is not None:
        # Enumeration order is tuple order, so everything after the cursor compares greater.
        stream = itertools.dropwhile(lambda vals: vals <= cursor, stream)
    if jobs is None:
        jobs = os.cpu_count() or 1
    args_iter = ((chunk, n, filters, dfs_cap) for chunk in _chunked(stream, chunk_size))

    interrupted = False
    scanned_now = 0
    since_checkpoint = 0
    executor = None
    try:
        if jobs == 1:
            results = map(_scan_chunk, args_iter)
        else:
            executor = ProcessPoolExecutor(max_workers=jobs)
            results = _pooled_results(executor, args_iter, window=jobs * 4)
        for count, holds, records, last in results:
            scanned += count
            scanned_now += count
            bound_holds += holds
            exceptions.extend(records)
            cursor = tuple(last)
            since_checkpoint += count
            if checkpoint_path and since_checkpoint >= checkpoint_interval:
                _write_checkpoint(checkpoint_path, cursor, {
                    "parameters": parameters,
                    "scanned": scanned,
                    "bound_holds": bound_holds,
                    "exceptions": exceptions,
                })
                since_checkpoint = 0
            if limit is not None and scanned_now >= limit:
                interrupted = True
                break
    finally:
        if executor is not None:
            executor.shutdown(wait=False, cancel_futures=True)

    eliminated = sum(1 for rec in exceptions if rec["status"] == "ELIMINATED")
    unresolved = sum(1 for rec in exceptions if rec["status"] == "UNRESOLVED")
    assert scanned == bound_holds + eliminated + unresolved
    eliminated_by = {}
    for rec in exceptions:
        if rec["status"] == "ELIMINATED":
            eliminated_by[rec["reason"]] = eliminated_by.get(rec["reason"], 0) + 1
    counts = {
        "scanned": scanned,
        "bound_holds": bound_holds,
        "eliminated": eliminated,
        "unresolved": unresolved,
        "eliminated_by": eliminated_by,
        "violating_diagrams": sum(r["witnesses"]["violating_diagrams"] for r in exceptions),
        "surviving_diagrams": sum(len(r["witnesses"]["survivors"]) for r in exceptions),
    }
    report = ScanReport(
        parameters=parameters,
        counts=counts,
        exceptions=exceptions,
        timing={"seconds": round(time.time() - start, 3)},
        checkpoint_cursor=",".join(str(v) for v in cursor) if cursor else None,
        status="INCOMPLETE" if interrupted else "COMPLETE",
    )
    if checkpoint_path and cursor is not None:
        _write_checkpoint(checkpoint_path, cursor, {
            "parameters": parameters,
            "scanned": scanned,
            "bound_holds": bound_holds,
            "exceptions": exceptions,
        })
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(report.to_json() if out_format == "json" else report.to_csv())
    return report


def _bounds_line(e, mins, maxs, c):
    lower = Fraction(_product(mins), factorial(c))
    upper = Fraction(_product(maxs), factorial(c))
    return f"bounds: {lower} <= {e} <= {upper}"


def _product(values):
    prod = 1
    for v in values:
        prod *= v
    return prod


def check_hf(sequence, n=None, filters=DEFAULT_FILTERS, dfs_cap=DEFAULT_DFS_CAP):
    """Classify one Hilbert function, printing every intermediate diagram.

    Returns (classification or None, report text, exit code): 0 for a
    determination, 2 when unresolved diagrams remain.
    """
    if isinstance(sequence, str):
        H = HilbertFunction.parse(sequence)
    else:
        H = HilbertFunction(_values(sequence))
    if n is None:
        n = max(H[1], 1)
    lines = [f"H: {H} (n={n}, socle degree {H.socle_degree})", f"e = {multiplicity(H)}"]
    try:
        L = lex_ideal(H, n)
    except NotAdmissibleError as err:
        lines.append(f"status: NOT_ADMISSIBLE ({err})")
        return None, "\n".join(lines) + "\n", 0
    D = ek_betti(L)
    lines += ["", f"lex ideal: {len(L.generators)} generators", "", "lex diagram:", D.to_text()]
    stages = greedy_stages(D)
    for i, stage in enumerate(stages, start=1):
        lines += ["", f"after cancellations in columns ({i},{i + 1}):", stage.to_text()]
    final = stages[-1] if stages else D
    mins, maxs = min_shifts(final), max_shifts(final)
    result = classify(H, n, ClassifyOptions(filters=tuple(filters), dfs_cap=dfs_cap))
    lines += [
        "",
        "min shifts: " + " ".join(str(s) for s in mins),
        "max shifts: " + " ".join(str(s) for s in maxs),
        _bounds_line(result.e, mins, maxs, n),
        str(upper_bound_holds(result.e, maxs, n)),
        str(lower_bound_holds(result.e, mins, n)),
    ]
    if result.status != "BOUND_HOLDS":
        lines += [
            "",
            f"violating diagrams: {result.violating} "
            f"(dfs nodes {result.nodes}, degenerate skipped {result.degenerate})",
        ]
        if result.filter_histogram:
            parts = [f"{k}: {v}" for k, v in sorted(result.filter_histogram.items())]
            lines.append("eliminated by filters: " + "; ".join(parts))
        if result.cap_exceeded:
            lines.append("dfs node cap exceeded; enumeration incomplete")
        for idx, surv in enumerate(result.survivors, start=1):
            lines += ["", f"surviving diagram {idx}:", surv.to_text()]
    reason = f" ({result.reason})" if result.reason else ""
    lines += ["", f"status: {result.status}{reason}"]
    code = 2 if result.status == "UNRESOLVED" else 0
    return result, "\n".join(lines) + "\n", code


def check_ideal(text, n=None, truncate_at=None, field_char=DEFAULT_CHAR, degree_cap=None):
    """Analyze one monomial ideal: diagram, shifts, bounds, truncation outcome.

    Returns (analysis or None, report text, exit code 0).
    """
    I = parse_ideal(text, n)
    artinian = I.is_artinian()
    lines = [f"ideal: {I} (n={I.n})"]
    if artinian:
        H = quotient_hilbert_function(I)
        e = multiplicity(H)
        lines += [f"Hilbert function: {H}", f"e = {e}"]
        D = koszul_betti(I, field_char)
    else:
        if degree_cap is None:
            raise NeedsCapError(f"ideal ({I}) is not Artinian; pass --degree-cap")
        vals = quotient_hilbert_function(I, degree_cap)
        e = None
        lines.append(
            f"Hilbert function through degree {degree_cap}: "
            + ",".join(str(v) for v in vals)
            + " (not Artinian)"
        )
        D = koszul_betti(I, field_char, degree_cap)
    lines += ["", "diagram:", D.to_text(), ""]
    mins, maxs = min_shifts(D), max_shifts(D)
    c = D.projective_dimension
    lines += [
        "min shifts: " + " ".join(str(s) for s in mins),
        "max shifts: " + " ".join(str(s) for s in maxs),
    ]
    if artinian:
        lines += [
            _bounds_line(e, mins, maxs, c),
            str(upper_bound_holds(e, maxs, c)),
            str(lower_bound_holds(e, mins, c)),
        ]
    lines.append(
        f"pure: {'yes' if is_pure(D) else 'no'}   quasipure: {'yes' if is_quasipure(D) else 'no'}"
    )
    if truncate_at is not None:
        T = truncate(I, truncate_at)
        rows = verify_truncation_rows(I, truncate_at, field_char, degree_cap)
        lines += ["", f"truncation at degree {truncate_at}: {T}"]
        if artinian:
            eT = multiplicity(quotient_hilbert_function(T))
            lines.append(f"e = {e}, truncation e = {eT}")
        lines.append(
            f"rows >= {truncate_at} preserved under truncation: {'yes' if rows.ok else 'no'}"
        )
    analysis = None
    if artinian:
        analysis = truncation_analysis(I, field_char)
        lines += ["", f"truncation analysis: {analysis.status} ({analysis.reason})"]
        lines.append(
            f"  regularity {analysis.regularity}, max generator degree {analysis.max_gen_degree}"
        )
        if analysis.truncation is not None:
            lines.append(
                f"  e = {analysis.e} vs truncation e = {analysis.e_truncation}"
            )
        if analysis.verdict is not None:
            lines.append(f"  {analysis.verdict}")
    return analysis, "\n".join(lines) + "\n", 0
