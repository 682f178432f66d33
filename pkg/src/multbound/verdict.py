"""Multiplicity bound verdicts and non-realizability filters for potential diagrams."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import factorial

from .betti import BettiDiagram, columns_from_profile, greedy_columns
from .errors import MalformedDiagramError, NotAdmissibleError
from .hilbert import _values, aci_obstruction, is_o_sequence
from .monomial import lex_generator_profile

__all__ = [
    "BoundVerdict",
    "upper_bound_holds",
    "lower_bound_holds",
    "EvansRichertCheck",
    "evans_richert_ok",
    "generator_count_ok",
    "ClassifyOptions",
    "Classification",
    "classify",
    "DEFAULT_FILTERS",
    "DEFAULT_DFS_CAP",
]

DEFAULT_FILTERS = ("er", "gen", "aci", "growth")
DEFAULT_DFS_CAP = 1_000_000


@dataclass(frozen=True)
class BoundVerdict:
    """Outcome of one side of the multiplicity bound, in exact integers.

    holds iff lhs <= rhs, where the upper bound compares c!*e against the max
    shift product and the lower bound compares the min shift product against c!*e.
    """

    e: int
    shifts: tuple
    codim: int
    holds: bool
    lhs: int
    rhs: int
    kind: str

    def __str__(self):
        rel = "<=" if self.holds else ">"
        return f"{self.kind} bound {'HOLDS' if self.holds else 'FAILS'} ({self.lhs} {rel} {self.rhs})"


def _shift_product(shifts):
    prod = 1
    for s in shifts:
        prod *= s
    return prod


def upper_bound_holds(e, M, c):
    """Check c!*e <= product of the max shifts M."""
    M = tuple(M)
    if len(M) != c or any(s < 1 for s in M):
        raise ValueError(f"need {c} positive shifts, got {M}")
    lhs = factorial(c) * e
    rhs = _shift_product(M)
    return BoundVerdict(e, M, c, lhs <= rhs, lhs, rhs, "upper")


def lower_bound_holds(e, m, c):
    """Check product of the min shifts m <= c!*e."""
    m = tuple(m)
    if len(m) != c or any(s < 1 for s in m):
        raise ValueError(f"need {c} positive shifts, got {m}")
    lhs = _shift_product(m)
    rhs = factorial(c) * e
    return BoundVerdict(e, m, c, lhs <= rhs, lhs, rhs, "lower")


@dataclass(frozen=True)
class EvansRichertCheck:
    """Syzygy-count check result; witness is the failing (column, degree) pair."""

    ok: bool
    witness: tuple | None

    def __bool__(self):
        return self.ok


def _evans_richert_witness(cols):
    """First (i, t) where column i's earliest syzygies outnumber column i-1 below t."""
    for i in range(2, len(cols)):
        col = cols[i]
        if not col:
            continue
        t = min(col)
        if sum(c for j, c in cols[i - 1].items() if j < t) < i:
            return (i, t)
    return None


def evans_richert_ok(D):
    """Each column i >= 2 needs at least i entries strictly below its min shift in column i-1."""
    witness = _evans_richert_witness(D.columns())
    return EvansRichertCheck(witness is None, witness)


def _ci_koszul_shape(cols):
    """True iff columns 1..3 form the Koszul diagram of three forms' degrees."""
    degs = sorted(j for j, c in cols[1].items() for _ in range(c))
    if len(degs) != 3:
        return False
    pair_sums = sorted(a + b for a, b in combinations(degs, 2))
    col2 = sorted(j for j, c in cols[2].items() for _ in range(c))
    if col2 != pair_sums:
        return False
    col3 = sorted(j for j, c in cols[3].items() for _ in range(c))
    return col3 == [sum(degs)]


def _generator_count_ok(cols, n):
    total = sum(cols[1].values())
    if n != 3:
        return total >= n
    if total >= 4:
        return True
    if total == 3:
        return _ci_koszul_shape(cols)
    return False


def generator_count_ok(D, n):
    """Artinian quotients in n variables need n generators; in three, four unless a CI."""
    return _generator_count_ok(D.columns(), n)


def _growth_ok(cols):
    prev = None
    for col in cols:
        if not col:
            prev = None
            continue
        cur = max(col)
        if prev is not None and cur < prev + 1:
            return False
        prev = cur
    return True


def _diagram_filter_failures(cols, hvals, n, filters, aci_cache):
    """Names of enabled filters this potential diagram fails."""
    failed = []
    if "er" in filters and _evans_richert_witness(cols) is not None:
        failed.append("er")
    if "gen" in filters and not _generator_count_ok(cols, n):
        failed.append("gen")
    if "growth" in filters and not _growth_ok(cols):
        failed.append("growth")
    if "aci" in filters and n == 3 and len(cols[1]) == 1:
        (d, count), = cols[1].items()
        if count == 4:
            if d not in aci_cache:
                aci_cache[d] = aci_obstruction(hvals, d).obstructed
            if aci_cache[d]:
                failed.append("aci")
    return failed


def _violating_diagrams(cols, lhs, cap):
    """All cancellation-reachable diagrams whose max-shift product stays below lhs.

    cols is the lex diagram's column maps. Enumerates one canonical cancellation
    profile per reachable diagram: per degree (descending) and column pair
    (ascending), the number of units cancelled. Entries above the degree being
    processed are final, which powers the pruning. Returns (diagrams, stats).
    """
    n = len(cols) - 1
    degrees = sorted({j for col in cols[1:] for j in col}, reverse=True)
    found = []
    stats = {"nodes": 0, "degenerate": 0, "cap_exceeded": False}

    def descend(level):
        if stats["cap_exceeded"]:
            return
        stats["nodes"] += 1
        if stats["nodes"] > cap:
            stats["cap_exceeded"] = True
            return
        if level == len(degrees):
            if any(not col for col in cols[1:]):
                stats["degenerate"] += 1
                return
            prod = 1
            for col in cols[1:]:
                prod *= max(col)
            if prod < lhs:
                found.append([dict(col) for col in cols])
            return
        j = degrees[level]
        pinned = 1
        for col in cols[1:]:
            later = [jj for jj in col if jj > j]
            if not later:
                pinned = 0
                break
            pinned *= max(later)
        if pinned >= lhs:
            # Every completion keeps the product at or above lhs: no violations below.
            return

        def choose(i):
            if i == n:
                descend(level + 1)
                return
            a, b = cols[i], cols[i + 1]
            limit = min(a.get(j, 0), b.get(j, 0))
            choose(i + 1)
            for _ in range(limit):
                a[j] -= 1
                if a[j] == 0:
                    del a[j]
                b[j] -= 1
                if b[j] == 0:
                    del b[j]
                choose(i + 1)
            if limit:
                a[j] = a.get(j, 0) + limit
                b[j] = b.get(j, 0) + limit

        choose(1)

    descend(0)
    return found, stats


@dataclass(frozen=True)
class ClassifyOptions:
    """Knobs for classify: enabled filters and the DFS node budget."""

    filters: tuple = DEFAULT_FILTERS
    dfs_cap: int = DEFAULT_DFS_CAP


@dataclass
class Classification:
    """Verdict for one Hilbert function with the evidence behind it."""

    hf: tuple
    n: int
    status: str
    reason: str
    e: int
    shifts: tuple
    lhs: int
    rhs: int
    greedy: BettiDiagram
    violating: int = 0
    degenerate: int = 0
    nodes: int = 0
    cap_exceeded: bool = False
    filter_histogram: dict = field(default_factory=dict)
    survivors: list = field(default_factory=list)

    def to_record(self):
        """JSON-ready record with the greedy diagram in machine form."""
        return {
            "hf": ",".join(str(v) for v in self.hf),
            "e": self.e,
            "shifts": list(self.shifts),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "status": self.status,
            "reason": self.reason,
            "diagram": self.greedy.to_machine(),
            "witnesses": {
                "violating_diagrams": self.violating,
                "degenerate_skipped": self.degenerate,
                "dfs_nodes": self.nodes,
                "cap_exceeded": self.cap_exceeded,
                "filter_histogram": dict(sorted(self.filter_histogram.items())),
                "survivors": [d.to_machine() for d in self.survivors],
            },
        }


def _classify_columns(hvals, n, filters, dfs_cap):
    """Classification payload from raw Hilbert function values.

    Returns (status, reason, e, shifts, lhs, rhs, lex_cols, greedy_cols, extras)
    where extras is None when the bound already holds on the greedy diagram.
    """
    profile = lex_generator_profile(hvals, n)
    lex_cols = columns_from_profile(profile, n)
    cols = greedy_columns([dict(col) for col in lex_cols])
    shifts = []
    for i in range(1, n + 1):
        if not cols[i]:
            raise MalformedDiagramError(
                f"greedy diagram for H={hvals} has an empty column {i}"
            )
        shifts.append(max(cols[i]))
    shifts = tuple(shifts)
    e = sum(hvals)
    lhs = factorial(n) * e
    rhs = _shift_product(shifts)
    if lhs <= rhs:
        return "BOUND_HOLDS", "", e, shifts, lhs, rhs, lex_cols, cols, None
    work = [dict(col) for col in lex_cols]
    violating, stats = _violating_diagrams(work, lhs, dfs_cap)
    histogram = {}
    survivors = []
    fired = set()
    aci_cache = {}
    for diag_cols in violating:
        failed = _diagram_filter_failures(diag_cols, hvals, n, filters, aci_cache)
        if failed:
            key = "+".join(failed)
            histogram[key] = histogram.get(key, 0) + 1
            fired.update(failed)
        else:
            survivors.append(diag_cols)
    if stats["cap_exceeded"]:
        status, reason = "UNRESOLVED", "CAP_EXCEEDED"
    elif survivors:
        status, reason = "UNRESOLVED", f"{len(survivors)} diagrams pass all filters"
    else:
        status, reason = "ELIMINATED", ",".join(sorted(fired))
    extras = {
        "violating": len(violating),
        "degenerate": stats["degenerate"],
        "nodes": stats["nodes"],
        "cap_exceeded": stats["cap_exceeded"],
        "filter_histogram": histogram,
        "survivor_cols": survivors,
    }
    return status, reason, e, shifts, lhs, rhs, lex_cols, cols, extras


def classify(H, n, options=None):
    """Full pipeline for one Hilbert function.

    Greedy-minimizes the lex diagram; if the upper bound holds there it holds
    for every module with Hilbert function H. Otherwise every reachable
    violating diagram is tested against the enabled filters: ELIMINATED when
    all fail one, UNRESOLVED when survivors remain or the node cap is hit.
    """
    opts = options or ClassifyOptions()
    hvals = _values(H)
    while hvals and hvals[-1] == 0:
        hvals = hvals[:-1]
    if not is_o_sequence(hvals, n):
        raise NotAdmissibleError(f"{hvals} is not an O-sequence in {n} variables")
    status, reason, e, shifts, lhs, rhs, _, greedy_cols, extras = _classify_columns(
        hvals, n, tuple(opts.filters), opts.dfs_cap
    )
    greedy = BettiDiagram.from_columns(n, greedy_cols)
    result = Classification(hvals, n, status, reason, e, shifts, lhs, rhs, greedy)
    if extras is not None:
        result.violating = extras["violating"]
        result.degenerate = extras["degenerate"]
        result.nodes = extras["nodes"]
        result.cap_exceeded = extras["cap_exceeded"]
        result.filter_histogram = extras["filter_histogram"]
        result.survivors = [
            BettiDiagram.from_columns(n, cols) for cols in extras["survivor_cols"]
        ]
    return result
