"""Graded Betti diagrams: closed-form resolutions, cancellation, shifts, layouts."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .errors import (
    CannotCancelError,
    InconsistentDiagramError,
    MalformedDiagramError,
    NotPureError,
    NotStableError,
)
from .hilbert import HilbertFunction
from .monomial import is_stable

__all__ = [
    "BettiDiagram",
    "ek_betti",
    "cancel",
    "greedy_minimize",
    "greedy_stages",
    "max_shifts",
    "min_shifts",
    "is_pure",
    "is_quasipure",
    "huneke_miller",
    "hilbert_from_diagram",
    "check_shift_growth",
    "dual_diagram",
]


class BettiDiagram:
    """Table of graded Betti numbers beta_{i,j} for a quotient in n variables.

    Only nonzero entries are stored. Validation enforces the cyclic-quotient
    shape: beta_{0,0} = 1 is the only entry in column 0 and columns stop at n.
    """

    __slots__ = ("n", "_entries")

    def __init__(self, n, entries, validate=True):
        n = int(n)
        if n < 1:
            raise ValueError(f"need at least one variable, got n={n}")
        clean = {}
        for (i, j), c in dict(entries).items():
            i, j, c = int(i), int(j), int(c)
            if c < 0:
                raise ValueError(f"negative entry beta_{{{i},{j}}} = {c}")
            if c == 0:
                continue
            if not 0 <= i <= n:
                raise ValueError(f"column {i} outside 0..{n}")
            if j < 0:
                raise ValueError(f"negative degree {j} at column {i}")
            clean[(i, j)] = c
        if validate:
            if clean.get((0, 0)) != 1 or any(i == 0 and j != 0 for i, j in clean):
                raise ValueError("column 0 must hold exactly beta_{0,0} = 1")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_entries", clean)

    def __setattr__(self, name, value):
        raise AttributeError("BettiDiagram is immutable")

    @classmethod
    def from_columns(cls, n, columns, validate=True):
        """Build from a list of per-column {degree: count} maps, index 0..n."""
        entries = {}
        for i, col in enumerate(columns):
            for j, c in col.items():
                entries[(i, j)] = c
        return cls(n, entries, validate=validate)

    def entry(self, i, j):
        return self._entries.get((i, j), 0)

    def entries(self):
        """Nonzero entries as a dict {(i, j): count}, sorted by position."""
        return {key: self._entries[key] for key in sorted(self._entries)}

    def columns(self):
        """Per-column {degree: count} maps, index 0..n."""
        cols = [{} for _ in range(self.n + 1)]
        for (i, j), c in self._entries.items():
            cols[i][j] = c
        return cols

    def column_total(self, i):
        return sum(c for (ci, _), c in self._entries.items() if ci == i)

    def column_totals(self):
        """Totals for columns 0 through the projective dimension."""
        return tuple(self.column_total(i) for i in range(self.projective_dimension + 1))

    @property
    def projective_dimension(self):
        return max((i for i, _ in self._entries), default=0)

    @property
    def regularity(self):
        return max((j - i for i, j in self._entries), default=0)

    def __eq__(self, other):
        if isinstance(other, BettiDiagram):
            return self.n == other.n and self._entries == other._entries
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self._entries.items())))

    def __repr__(self):
        return f"BettiDiagram(n={self.n}, entries={self.entries()})"

    def __str__(self):
        return self.to_text()

    def to_text(self):
        """Human layout: entry beta_{i,j} at row j-i, column i, dots for zeros."""
        width = self.projective_dimension
        reg = self.regularity if self._entries else -1
        grid = [["total:"] + [str(self.column_total(i)) for i in range(width + 1)]]
        for r in range(reg + 1):
            cells = [f"{r}:"]
            for i in range(width + 1):
                c = self.entry(i, r + i)
                cells.append(str(c) if c else ".")
            grid.append(cells)
        pads = [max(len(row[k]) for row in grid) for k in range(width + 2)]
        lines = []
        for row in grid:
            cells = [row[0].ljust(pads[0])]
            cells += [row[k].rjust(pads[k]) for k in range(1, width + 2)]
            lines.append(" ".join(cells).rstrip())
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text, n=None, validate=True):
        """Parse the human layout back into a diagram."""
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines or not lines[0].split()[0] == "total:":
            raise ValueError("diagram text must start with a total: row")
        totals = [int(tok) for tok in lines[0].split()[1:]]
        width = len(totals)
        entries = {}
        for line in lines[1:]:
            tokens = line.split()
            if not tokens[0].endswith(":"):
                raise ValueError(f"bad row label in {line!r}")
            r = int(tokens[0][:-1])
            cells = tokens[1:]
            if len(cells) != width:
                raise ValueError(f"row {r} has {len(cells)} cells, expected {width}")
            for i, cell in enumerate(cells):
                if cell != ".":
                    entries[(i, r + i)] = int(cell)
        diagram = cls(n if n is not None else width - 1, entries, validate=validate)
        if list(diagram.column_totals()) + [0] * (width - diagram.projective_dimension - 1) != totals:
            raise ValueError("total: row does not match parsed entries")
        return diagram

    def to_machine(self):
        """Machine form: one `i j count` line per nonzero entry."""
        return "\n".join(f"{i} {j} {c}" for (i, j), c in sorted(self._entries.items()))

    @classmethod
    def from_machine(cls, text, n=None, validate=True):
        """Parse the machine form back into a diagram."""
        entries = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            i, j, c = (int(tok) for tok in line.split())
            entries[(i, j)] = c
        if not entries:
            raise ValueError("machine-form diagram text has no entries")
        if n is None:
            n = max(i for i, _ in entries)
        return cls(n, entries, validate=validate)


def columns_from_profile(profile, n):
    """Betti columns of a stable ideal from its (degree, max_var) generator profile.

    A generator of degree d whose largest variable is m contributes
    C(m-1, i) to beta_{i+1, d+i} for i = 0..m-1.
    """
    cols = [{} for _ in range(n + 1)]
    cols[0][0] = 1
    for d, m in profile:
        for i in range(m):
            col = cols[i + 1]
            j = d + i
            col[j] = col.get(j, 0) + comb(m - 1, i)
    return cols


def ek_betti(I, check=True):
    """Betti diagram of the quotient by a stable monomial ideal, in closed form."""
    if check and not is_stable(I):
        raise NotStableError(f"ideal ({I}) is not stable")
    profile = [(g.degree, g.max_var) for g in I.generators]
    return BettiDiagram.from_columns(I.n, columns_from_profile(profile, I.n))


def cancel(D, i, j, count=None):
    """Cancel count units from beta_{i,j} and beta_{i+1,j}.

    With count omitted, cancels the maximum possible. Raises CannotCancelError
    when the entries cannot support the cancellation.
    """
    if not 1 <= i <= D.n - 1:
        raise ValueError(f"column pair ({i},{i + 1}) outside 1..{D.n - 1}")
    avail = min(D.entry(i, j), D.entry(i + 1, j))
    if count is None:
        count = avail
    if count < 1:
        raise CannotCancelError(f"nothing to cancel at columns ({i},{i + 1}) degree {j}")
    if count > avail:
        raise CannotCancelError(
            f"cannot cancel {count} at columns ({i},{i + 1}) degree {j}; only {avail} available"
        )
    entries = dict(D.entries())
    entries[(i, j)] -= count
    entries[(i + 1, j)] -= count
    return BettiDiagram(D.n, entries)


def greedy_columns(cols):
    """Apply all maximal cancellations to column maps, in place.

    Column pairs run left to right; within a pair, degrees run high to low.
    """
    n = len(cols) - 1
    for i in range(1, n):
        a, b = cols[i], cols[i + 1]
        for j in sorted(set(a) & set(b), reverse=True):
            k = min(a[j], b[j])
            if a[j] == k:
                del a[j]
            else:
                a[j] -= k
            if b[j] == k:
                del b[j]
            else:
                b[j] -= k
    return cols


def greedy_stages(D):
    """Diagrams after each column pair of the greedy cancellation pass."""
    cols = D.columns()
    stages = []
    for i in range(1, D.n):
        a, b = cols[i], cols[i + 1]
        for j in sorted(set(a) & set(b), reverse=True):
            k = min(a[j], b[j])
            if a[j] == k:
                del a[j]
            else:
                a[j] -= k
            if b[j] == k:
                del b[j]
            else:
                b[j] -= k
        stages.append(BettiDiagram.from_columns(D.n, cols))
    return stages


def greedy_minimize(D):
    """Diagram after all maximal cancellations, minimizing the max-shift product."""
    stages = greedy_stages(D)
    return stages[-1] if stages else D


def _column_shifts(D, pick):
    cols = D.columns()
    p = D.projective_dimension
    shifts = []
    for i in range(1, p + 1):
        if not cols[i]:
            raise MalformedDiagramError(f"column {i} is empty below projective dimension {p}")
        shifts.append(pick(cols[i]))
    return tuple(shifts)


def max_shifts(D):
    """Largest degree per column 1..projective dimension."""
    return _column_shifts(D, max)


def min_shifts(D):
    """Smallest degree per column 1..projective dimension."""
    return _column_shifts(D, min)


def is_pure(D):
    """True iff every column up to the projective dimension has a single degree."""
    cols = D.columns()
    return all(len(cols[i]) == 1 for i in range(1, D.projective_dimension + 1))


def is_quasipure(D):
    """True iff max shift of each column is at most the min shift of the next."""
    cols = D.columns()
    p = D.projective_dimension
    if any(not cols[i] for i in range(1, p + 1)):
        return False
    for i in range(2, p + 1):
        if max(cols[i - 1]) > min(cols[i]):
            return False
    return True


def huneke_miller(D, c):
    """Multiplicity of a pure diagram: the shift product over c factorial."""
    if D.projective_dimension != c:
        raise ValueError(f"projective dimension {D.projective_dimension} != codimension {c}")
    if not is_pure(D):
        raise NotPureError("diagram is not pure")
    prod = 1
    for d in max_shifts(D):
        prod *= d
    return Fraction(prod, factorial(c))


def hilbert_from_diagram(D):
    """Hilbert function encoded by the diagram's alternating numerator.

    Divides sum_{i,j} (-1)^i beta_{i,j} t^j by (1-t)^n exactly; a nonzero
    remainder, a negative value, or an internal zero means the diagram is not
    numerically consistent with any Artinian quotient.
    """
    entries = D.entries()
    if not entries:
        raise InconsistentDiagramError("empty diagram")
    coeffs = [0] * (max(j for _, j in entries) + 1)
    for (i, j), c in entries.items():
        coeffs[j] += c if i % 2 == 0 else -c
    for _ in range(D.n):
        run = 0
        sums = []
        for v in coeffs:
            run += v
            sums.append(run)
        if not sums or sums[-1] != 0:
            raise InconsistentDiagramError("numerator is not divisible by (1-t)^n")
        coeffs = sums[:-1]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if any(v < 0 for v in coeffs):
        raise InconsistentDiagramError("Hilbert function has a negative value")
    if 0 in coeffs:
        raise InconsistentDiagramError("Hilbert function vanishes then returns")
    return HilbertFunction(coeffs)


def check_shift_growth(D):
    """True iff max shifts rise by at least one across consecutive nonempty columns."""
    cols = D.columns()
    prev = None
    for i in range(len(cols)):
        if not cols[i]:
            prev = None
            continue
        cur = max(cols[i])
        if prev is not None and cur < prev + 1:
            return False
        prev = cur
    return True


def dual_diagram(D, c, d):
    """Formal 180-degree rotation: entry (i, j) moves to (c - i, d - j)."""
    entries = {}
    for (i, j), count in D.entries().items():
        if not 0 <= c - i <= D.n or d - j < 0:
            raise ValueError(f"entry ({i},{j}) has no image under rotation by ({c},{d})")
        entries[(c - i, d - j)] = count
    return BettiDiagram(D.n, entries, validate=False)
