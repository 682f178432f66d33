"""Hilbert functions of Artinian graded quotients and Macaulay growth bounds."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import NotAdmissibleError

__all__ = [
    "HilbertFunction",
    "macaulay_expansion",
    "macaulay_bound",
    "is_o_sequence",
    "enumerate_o_sequences",
    "multiplicity",
    "ci_hilbert_function",
    "AciObstruction",
    "aci_obstruction",
]


class HilbertFunction:
    """Finite sequence of nonnegative values H(0), H(1), ... with H(d) = 0 beyond.

    Trailing zeros are stripped, so ``len`` is socle degree plus one.
    """

    __slots__ = ("values",)

    def __init__(self, values):
        vals = tuple(int(v) for v in values)
        if any(v < 0 for v in vals):
            raise ValueError(f"negative Hilbert function value in {vals}")
        while vals and vals[-1] == 0:
            vals = vals[:-1]
        object.__setattr__(self, "values", vals)

    @classmethod
    def _trusted(cls, vals):
        # vals is already a canonical tuple: nonnegative, no trailing zeros.
        self = object.__new__(cls)
        object.__setattr__(self, "values", vals)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("HilbertFunction is immutable")

    def __getitem__(self, d):
        if isinstance(d, slice):
            return self.values[d]
        if d < 0:
            raise IndexError(f"degree {d} out of range")
        return self.values[d] if d < len(self.values) else 0

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        if isinstance(other, HilbertFunction):
            return self.values == other.values
        return NotImplemented

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"HilbertFunction({self.values})"

    def __str__(self):
        return ",".join(str(v) for v in self.values)

    @property
    def socle_degree(self):
        """Largest degree with a nonzero value, or -1 for the zero sequence."""
        return len(self.values) - 1

    @classmethod
    def parse(cls, text):
        """Parse a comma- or whitespace-separated value list like ``1,3,6,7,3,1``."""
        tokens = text.replace(",", " ").split()
        if not tokens:
            raise ValueError("empty Hilbert function text")
        try:
            vals = [int(tok) for tok in tokens]
        except ValueError:
            raise ValueError(f"non-integer value in Hilbert function text {text!r}") from None
        return cls(vals)


def _values(H):
    """Raw value tuple of a HilbertFunction or plain iterable."""
    if isinstance(H, HilbertFunction):
        return H.values
    return tuple(int(v) for v in H)


def macaulay_expansion(h, d):
    """Unique expansion h = C(a_d,d) + C(a_{d-1},d-1) + ... with a_d > a_{d-1} > ... >= j.

    Returns the tuple (a_d, a_{d-1}, ..., a_j) of binomial tops, highest first.
    """
    if h < 1 or d < 1:
        raise ValueError(f"need h >= 1 and d >= 1, got h={h}, d={d}")
    tops = []
    rest = h
    j = d
    while rest > 0:
        a = j
        while comb(a + 1, j) <= rest:
            a += 1
        tops.append(a)
        rest -= comb(a, j)
        j -= 1
    return tuple(tops)


def macaulay_bound(h, d):
    """Largest value allowed in degree d+1 after h in degree d of an O-sequence."""
    if h == 0:
        return 0
    tops = macaulay_expansion(h, d)
    return sum(comb(a + 1, j + 1) for a, j in zip(tops, range(d, d - len(tops), -1)))


def is_o_sequence(H, n):
    """True iff H is the Hilbert function of some Artinian quotient in n variables."""
    vals = _values(H)
    if not vals or vals[0] != 1:
        return False
    if len(vals) > 1 and vals[1] > n:
        return False
    for d in range(1, len(vals)):
        if vals[d] == 0:
            return all(v == 0 for v in vals[d:])
        if d + 1 < len(vals) and vals[d + 1] > macaulay_bound(vals[d], d):
            return False
    return True


def _enumerate_value_tuples(n, socle_max, prefix):
    """Yield O-sequence value tuples extending prefix, socle degree <= socle_max.

    Order is lexicographic on the tuples, which puts each sequence before all
    of its extensions.
    """
    start = _values(prefix)
    if start and start[-1] == 0:
        raise NotAdmissibleError(f"prefix {start} has trailing zeros")
    if not is_o_sequence(start, n):
        raise NotAdmissibleError(f"prefix {start} is not an O-sequence in {n} variables")
    stack = [start]
    while stack:
        vals = stack.pop()
        d = len(vals) - 1
        if d <= socle_max:
            yield vals
        if d < socle_max:
            top = macaulay_bound(vals[-1], d) if d >= 1 else n
            # Push descending so extensions pop in ascending value order.
            for v in range(top, 0, -1):
                stack.append(vals + (v,))


def enumerate_o_sequences(n, socle_max, prefix=(1,)):
    """Yield every O-sequence in n variables extending prefix, up to socle_max."""
    for vals in _enumerate_value_tuples(n, socle_max, prefix):
        yield HilbertFunction._trusted(vals)


def multiplicity(H):
    """Multiplicity of an Artinian quotient: the sum of its Hilbert function."""
    return sum(_values(H))


def ci_hilbert_function(degrees):
    """Hilbert function of a complete intersection with the given forms' degrees."""
    degs = tuple(int(d) for d in degrees)
    if not degs or any(d < 1 for d in degs):
        raise ValueError(f"degrees must be positive, got {degs}")
    vals = [1]
    for d in degs:
        # Multiply the generating polynomial by 1 + t + ... + t^(d-1).
        new = [0] * (len(vals) + d - 1)
        for i, c in enumerate(vals):
            for k in range(d):
                new[i + k] += c
        vals = new
    return HilbertFunction(vals)


@dataclass(frozen=True)
class AciObstruction:
    """Outcome of testing whether H can contain a complete intersection (d, d, d).

    status is OBSTRUCTED when no almost complete intersection with a degree-d
    relation in three variables can have Hilbert function H, INCONCLUSIVE when
    the test finds no obstruction.
    """

    status: str
    generator_degree: int
    difference: tuple
    witness_degree: int | None
    reason: str

    @property
    def obstructed(self):
        return self.status == "OBSTRUCTED"


def aci_obstruction(H, d):
    """Test H against containment of a complete intersection of three degree-d forms.

    An almost complete intersection generated by three degree-d forms plus one
    more form contains the complete intersection (d, d, d), so the termwise
    difference CI(d,d,d) - H must be the Hilbert function of a quotient of the
    complete intersection by one extra form: nonnegative, zero below degree d,
    and an O-sequence once shifted down by d.
    """
    if d < 1:
        raise ValueError(f"generator degree must be positive, got d={d}")
    hvals = _values(H)
    ci = ci_hilbert_function((d, d, d)).values
    width = max(len(ci), len(hvals))
    diff = tuple(
        (ci[k] if k < len(ci) else 0) - (hvals[k] if k < len(hvals) else 0)
        for k in range(width)
    )
    for k, v in enumerate(diff):
        if v < 0:
            return AciObstruction(
                "OBSTRUCTED", d, diff, k,
                f"H exceeds the complete intersection in degree {k}",
            )
    for k in range(min(d, width)):
        if diff[k] != 0:
            return AciObstruction(
                "OBSTRUCTED", d, diff, k,
                f"difference is nonzero in degree {k} < {d}",
            )
    shifted = diff[d:]
    if all(v == 0 for v in shifted):
        return AciObstruction("INCONCLUSIVE", d, diff, None, "difference is zero")
    if not is_o_sequence(shifted, 3):
        return AciObstruction(
            "OBSTRUCTED", d, diff, None,
            "shifted difference is not an O-sequence",
        )
    return AciObstruction("INCONCLUSIVE", d, diff, None, "no obstruction found")
