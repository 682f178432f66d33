"""Ground-truth graded Betti numbers of monomial quotients via Koszul homology."""

from __future__ import annotations

from dataclasses import dataclass

from .betti import BettiDiagram, is_quasipure, max_shifts
from .errors import NeedsCapError
from .hilbert import multiplicity
from .monomial import MonomialIdeal, _exponents_of_degree, quotient_hilbert_function, truncate
from .verdict import BoundVerdict, upper_bound_holds

__all__ = [
    "koszul_betti",
    "rank_mod_p",
    "TruncationRowsReport",
    "verify_truncation_rows",
    "TruncationAnalysis",
    "truncation_analysis",
]

DEFAULT_CHAR = 32003


def _is_prime(p):
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def rank_mod_p(rows, p):
    """Rank of an integer matrix over the field with p elements, by elimination."""
    mat = [[v % p for v in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    row_at = 0
    for col in range(ncols):
        pivot = next((r for r in range(row_at, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[row_at], mat[pivot] = mat[pivot], mat[row_at]
        inv = pow(mat[row_at][col], -1, p)
        mat[row_at] = [(v * inv) % p for v in mat[row_at]]
        base = mat[row_at]
        for r in range(len(mat)):
            if r != row_at and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [(v - factor * b) % p for v, b in zip(mat[r], base)]
        row_at += 1
        rank += 1
        if row_at == len(mat):
            break
    return rank


def _standard_exponents(gens, n, degree_cap):
    """Exponent tuples outside the ideal, degree by degree.

    Stops at the first empty degree for Artinian ideals, else at degree_cap.
    """
    std = []
    d = 0
    while True:
        layer = [
            exps
            for exps in _exponents_of_degree(d, n)
            if not any(all(g[k] <= exps[k] for k in range(n)) for g in gens)
        ]
        std.extend(layer)
        if degree_cap is None:
            if not layer:
                return std
        elif d == degree_cap:
            return std
        d += 1


def _block_betti(mu, gens, n, p):
    """Betti numbers of one multidegree block of the Koszul complex mod I.

    Basis elements in homological degree r are subsets S of the support of mu
    with |S| = r whose complement monomial mu - 1_S avoids the ideal. Returns
    {r: beta_r} for the block.
    """
    support = [k for k in range(n) if mu[k] >= 1]
    basis = {}
    for bits in range(1 << len(support)):
        mask = 0
        exps = list(mu)
        for pos in range(len(support)):
            if bits >> pos & 1:
                mask |= 1 << support[pos]
                exps[support[pos]] -= 1
        if any(all(g[k] <= exps[k] for k in range(n)) for g in gens):
            continue
        basis.setdefault(bin(mask).count("1"), []).append(mask)
    for masks in basis.values():
        masks.sort()
    if not basis:
        return {}
    matrices = {}
    top = max(basis)
    for r in range(1, top + 1):
        source = basis.get(r, [])
        target = basis.get(r - 1, [])
        index = {mask: row for row, mask in enumerate(target)}
        mat = [[0] * len(source) for _ in target]
        for col, mask in enumerate(source):
            for k in range(n):
                if not mask >> k & 1:
                    continue
                image = mask & ~(1 << k)
                row = index.get(image)
                if row is None:
                    continue
                sign = -1 if bin(mask & ((1 << k) - 1)).count("1") % 2 else 1
                mat[row][col] = sign % p
        matrices[r] = mat
    if __debug__:
        for r in range(2, top + 1):
            upper, lower = matrices[r], matrices[r - 1]
            for col in range(len(basis.get(r, []))):
                for row in range(len(basis.get(r - 2, []))):
                    acc = sum(
                        lower[row][mid] * upper[mid][col]
                        for mid in range(len(basis.get(r - 1, [])))
                    )
                    assert acc % p == 0, "Koszul differential does not square to zero"
    ranks = {r: rank_mod_p(mat, p) if mat and mat[0] else 0 for r, mat in matrices.items()}
    out = {}
    for r, masks in basis.items():
        beta = len(masks) - ranks.get(r, 0) - ranks.get(r + 1, 0)
        assert beta >= 0
        if beta:
            out[r] = beta
    return out


def koszul_betti(I, field_char=DEFAULT_CHAR, degree_cap=None):
    """Graded Betti numbers of the quotient by I, computed blockwise per multidegree.

    Exact over the prime field of the given characteristic. Non-Artinian ideals
    need degree_cap; entries are then complete for internal degrees <= degree_cap.
    """
    if not _is_prime(field_char):
        raise ValueError(f"field characteristic must be prime, got {field_char}")
    if any(g.degree == 0 for g in I.generators):
        raise ValueError("unit ideal has no quotient resolution")
    if not I.is_artinian() and degree_cap is None:
        raise NeedsCapError(f"ideal ({I}) is not Artinian; pass degree_cap")
    n = I.n
    gens = [g.exponents for g in I.generators]
    std = _standard_exponents(gens, n, degree_cap)
    candidates = set()
    for exps in std:
        for mask in range(1 << n):
            mu = tuple(exps[k] + (mask >> k & 1) for k in range(n))
            if degree_cap is not None and sum(mu) > degree_cap:
                continue
            candidates.add(mu)
    entries = {}
    for mu in sorted(candidates):
        j = sum(mu)
        for r, beta in _block_betti(mu, gens, n, field_char).items():
            entries[(r, j)] = entries.get((r, j), 0) + beta
    return BettiDiagram(n, entries)


@dataclass(frozen=True)
class TruncationRowsReport:
    """Row-by-row comparison of Betti diagrams before and after truncation."""

    ok: bool
    degree: int
    rows: tuple
    mismatches: dict
    diagram: BettiDiagram
    truncated_diagram: BettiDiagram

    def __bool__(self):
        return self.ok


def verify_truncation_rows(I, d, field_char=DEFAULT_CHAR, degree_cap=None):
    """Check that rows d and higher of the diagram survive truncation at d."""
    D1 = koszul_betti(I, field_char, degree_cap)
    D2 = koszul_betti(truncate(I, d), field_char, degree_cap)
    top = max(D1.regularity, D2.regularity)
    rows = []
    mismatches = {}
    for row in range(d, top + 1):
        diffs = {}
        for i in range(I.n + 1):
            a, b = D1.entry(i, i + row), D2.entry(i, i + row)
            if a != b:
                diffs[i] = (a, b)
        rows.append((row, not diffs))
        if diffs:
            mismatches[row] = diffs
    return TruncationRowsReport(not mismatches, d, tuple(rows), mismatches, D1, D2)


@dataclass(frozen=True)
class TruncationAnalysis:
    """Outcome of trying to certify the upper bound through truncation.

    CERTIFIED either directly from a quasipure diagram or by truncating at the
    max generator degree when that degree is the regularity or one more;
    NOT_APPLICABLE names the hypothesis that failed.
    """

    status: str
    reason: str
    regularity: int
    max_gen_degree: int
    e: int
    diagram: BettiDiagram
    quasipure_direct: bool = False
    truncation: MonomialIdeal | None = None
    truncation_diagram: BettiDiagram | None = None
    e_truncation: int | None = None
    verdict: BoundVerdict | None = None

    @property
    def certified(self):
        return self.status == "CERTIFIED"


def truncation_analysis(I, field_char=DEFAULT_CHAR):
    """Certify the upper multiplicity bound for an Artinian quotient via truncation.

    Quasipure diagrams certify directly. Otherwise, when the max generator
    degree g is the regularity d or d+1, the truncation at g must be quasipure
    with the same max shifts and at least the multiplicity, and the bound is
    checked on the truncation's shifts.
    """
    if not I.is_artinian():
        raise NeedsCapError(f"ideal ({I}) is not Artinian")
    D = koszul_betti(I, field_char)
    reg = D.regularity
    g = I.max_gen_degree
    e = multiplicity(quotient_hilbert_function(I))
    if is_quasipure(D):
        verdict = upper_bound_holds(e, max_shifts(D), I.n)
        if verdict.holds:
            return TruncationAnalysis(
                "CERTIFIED", "diagram is quasipure", reg, g, e, D,
                quasipure_direct=True, verdict=verdict,
            )
        return TruncationAnalysis(
            "NOT_APPLICABLE", "quasipure diagram fails the bound", reg, g, e, D,
            quasipure_direct=True, verdict=verdict,
        )
    if g not in (reg, reg + 1):
        return TruncationAnalysis(
            "NOT_APPLICABLE",
            f"no minimal generator of degree {reg} or {reg + 1}",
            reg, g, e, D,
        )
    T = truncate(I, g)
    DT = koszul_betti(T, field_char)
    eT = multiplicity(quotient_hilbert_function(T))
    base = dict(
        regularity=reg, max_gen_degree=g, e=e, diagram=D,
        truncation=T, truncation_diagram=DT, e_truncation=eT,
    )
    if not is_quasipure(DT):
        return TruncationAnalysis("NOT_APPLICABLE", "truncation is not quasipure", **base)
    if max_shifts(D) != max_shifts(DT):
        return TruncationAnalysis("NOT_APPLICABLE", "max shifts change under truncation", **base)
    if e > eT:
        return TruncationAnalysis("NOT_APPLICABLE", "truncation loses multiplicity", **base)
    verdict = upper_bound_holds(eT, max_shifts(DT), I.n)
    if not verdict.holds:
        return TruncationAnalysis(
            "NOT_APPLICABLE", "bound fails on the truncation", verdict=verdict, **base
        )
    return TruncationAnalysis(
        "CERTIFIED",
        f"truncation at degree {g} is quasipure with the same max shifts",
        verdict=verdict,
        **base,
    )
