"""Monomial ideals: lex ideals for a Hilbert function, truncation, stability."""

from __future__ import annotations

import re
from math import comb

from .errors import IdealParseError, NeedsCapError, NotAdmissibleError
from .hilbert import HilbertFunction, _values, macaulay_bound

__all__ = [
    "Monomial",
    "MonomialIdeal",
    "lex_compare",
    "monomials_of_degree",
    "lex_ideal",
    "lex_generator_profile",
    "truncate",
    "quotient_hilbert_function",
    "is_stable",
    "parse_monomial",
    "parse_ideal",
]

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


class Monomial:
    """Monomial in n variables, stored as an exponent tuple."""

    __slots__ = ("exponents",)

    def __init__(self, exponents):
        exps = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        object.__setattr__(self, "exponents", exps)

    def __setattr__(self, name, value):
        raise AttributeError("Monomial is immutable")

    @property
    def n(self):
        return len(self.exponents)

    @property
    def degree(self):
        return sum(self.exponents)

    @property
    def max_var(self):
        """One-based index of the last variable dividing this monomial, 0 for 1."""
        for i in range(len(self.exponents) - 1, -1, -1):
            if self.exponents[i] > 0:
                return i + 1
        return 0

    def divides(self, other):
        if len(self.exponents) != len(other.exponents):
            raise ValueError("monomials live in different variable counts")
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other):
        if len(self.exponents) != len(other.exponents):
            raise ValueError("monomials live in different variable counts")
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __eq__(self, other):
        if isinstance(other, Monomial):
            return self.exponents == other.exponents
        return NotImplemented

    def __hash__(self):
        return hash(self.exponents)

    def __repr__(self):
        return f"Monomial({self.exponents})"

    def __str__(self):
        if all(e == 0 for e in self.exponents):
            return "1"
        if len(self.exponents) > len(_LETTERS):
            return "(" + ",".join(str(e) for e in self.exponents) + ")"
        parts = []
        for i, e in enumerate(self.exponents):
            if e == 1:
                parts.append(_LETTERS[i])
            elif e > 1:
                parts.append(f"{_LETTERS[i]}^{e}")
        return "*".join(parts)


def lex_compare(u, v):
    """Comparator for lex order with earlier variables larger: a > b > c > ...

    Returns a positive number when u > v, negative when u < v, zero when equal.
    """
    ue, ve = u.exponents, v.exponents
    if len(ue) != len(ve):
        raise ValueError("monomials live in different variable counts")
    return (ue > ve) - (ue < ve)


def _exponents_of_degree(d, n):
    """Yield degree-d exponent tuples in n variables in descending lex order."""
    if n == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in _exponents_of_degree(d - e, n - 1):
            yield (e,) + rest


def monomials_of_degree(d, n):
    """Yield all degree-d monomials in n variables in descending lex order."""
    for exps in _exponents_of_degree(d, n):
        yield Monomial(exps)


def _mono_rank(exps):
    """Zero-based position of an exponent tuple in descending lex order within its degree."""
    n = len(exps)
    rank = 0
    rem = sum(exps)
    for pos in range(n - 1):
        width = n - pos - 1
        for bigger in range(rem, exps[pos], -1):
            rank += comb(rem - bigger + width - 1, width - 1)
        rem -= exps[pos]
    return rank


def _mono_unrank(d, n, rank):
    """Exponent tuple at a zero-based position in descending lex order, degree d."""
    exps = []
    rem = d
    for pos in range(n - 1):
        width = n - pos - 1
        for v in range(rem, -1, -1):
            block = comb(rem - v + width - 1, width - 1)
            if rank < block:
                exps.append(v)
                rem -= v
                break
            rank -= block
    exps.append(rem)
    return tuple(exps)


def _minimalize(monomials):
    """Minimal generating set: drop duplicates and multiples of other generators."""
    unique = sorted(set(monomials), key=lambda m: (m.degree,) + tuple(-e for e in m.exponents))
    kept = []
    for m in unique:
        if not any(g.divides(m) for g in kept):
            kept.append(m)
    return kept


class MonomialIdeal:
    """Monomial ideal given by minimal generators, canonically ordered.

    Generators are minimalized on construction and sorted by ascending degree,
    descending lex within a degree.
    """

    __slots__ = ("n", "generators")

    def __init__(self, n, generators):
        n = int(n)
        if n < 1:
            raise ValueError(f"need at least one variable, got n={n}")
        gens = []
        for g in generators:
            m = g if isinstance(g, Monomial) else Monomial(g)
            if m.n != n:
                raise ValueError(f"generator {m} has {m.n} variables, expected {n}")
            gens.append(m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "generators", tuple(_minimalize(gens)))

    def __setattr__(self, name, value):
        raise AttributeError("MonomialIdeal is immutable")

    def __eq__(self, other):
        if isinstance(other, MonomialIdeal):
            return self.n == other.n and self.generators == other.generators
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.generators))

    def __repr__(self):
        return f"MonomialIdeal(n={self.n}, generators={list(map(str, self.generators))})"

    def __str__(self):
        return "; ".join(str(g) for g in self.generators)

    def __len__(self):
        return len(self.generators)

    def contains(self, monomial):
        """Membership test: some generator divides the monomial."""
        m = monomial if isinstance(monomial, Monomial) else Monomial(monomial)
        return any(g.divides(m) for g in self.generators)

    def is_artinian(self):
        """True iff every variable appears in some pure-power generator."""
        powered = set()
        for g in self.generators:
            nz = [i for i, e in enumerate(g.exponents) if e > 0]
            if len(nz) == 1:
                powered.add(nz[0])
        return len(powered) == self.n

    @property
    def max_gen_degree(self):
        return max((g.degree for g in self.generators), default=0)

    def degree_piece(self, d):
        """All degree-d monomials contained in the ideal, descending lex."""
        return [m for m in monomials_of_degree(d, self.n) if self.contains(m)]

    def standard_monomials(self, d):
        """All degree-d monomials outside the ideal, descending lex."""
        return [m for m in monomials_of_degree(d, self.n) if not self.contains(m)]


def _lex_segment_plan(hvals, n):
    """Per-degree (d, shadow_count, segment_count) for the lex ideal of H.

    segment_count is how many lex-first degree-d monomials lie in the ideal
    and shadow_count how many are forced by degree d-1, so the minimal
    generators of degree d are the ranks shadow_count..segment_count-1.
    Raises NotAdmissibleError when H is not an O-sequence in n variables.
    """
    if not hvals or hvals[0] != 1:
        raise NotAdmissibleError(f"Hilbert function must start with 1, got {hvals}")
    if any(v < 0 for v in hvals):
        raise NotAdmissibleError(f"negative value in Hilbert function {hvals}")
    socle = len(hvals) - 1
    plan = []
    prev_count = 0
    prev_h = 1
    for d in range(1, socle + 2):
        total = comb(n - 1 + d, d)
        h = hvals[d] if d <= socle else 0
        segment = total - h
        if segment < 0:
            raise NotAdmissibleError(f"H({d}) = {h} exceeds the {total} monomials of degree {d}")
        if prev_count == 0:
            shadow = 0
        else:
            last = _mono_unrank(d - 1, n, prev_count - 1)
            bumped = last[:-1] + (last[-1] + 1,)
            shadow = _mono_rank(bumped) + 1
        # Lex segments grow minimally: the shadow complement matches the growth bound.
        assert total - shadow == macaulay_bound(prev_h, d - 1) if d > 1 else shadow == 0
        if segment < shadow:
            raise NotAdmissibleError(
                f"H({d}) = {h} exceeds the growth bound from H({d - 1}) = {prev_h}"
            )
        plan.append((d, shadow, segment))
        prev_count, prev_h = segment, h
    return plan


def lex_ideal(H, n):
    """Lex ideal attaining the Hilbert function H in n variables.

    Raises NotAdmissibleError when no such ideal exists.
    """
    hvals = _values(H)
    while hvals and hvals[-1] == 0:
        hvals = hvals[:-1]
    gens = []
    for d, shadow, segment in _lex_segment_plan(hvals, n):
        for rank in range(shadow, segment):
            gens.append(Monomial(_mono_unrank(d, n, rank)))
    ideal = MonomialIdeal(n, gens)
    assert len(ideal.generators) == len(gens)
    return ideal


def lex_generator_profile(H, n):
    """Degrees and last variables of the lex ideal's minimal generators.

    Returns a tuple of (degree, max_var) pairs in generator order. This is all
    the resolution of a lex ideal depends on, so scans use it instead of
    materializing monomials.
    """
    hvals = _values(H)
    while hvals and hvals[-1] == 0:
        hvals = hvals[:-1]
    profile = []
    for d, shadow, segment in _lex_segment_plan(hvals, n):
        for rank in range(shadow, segment):
            exps = _mono_unrank(d, n, rank)
            mv = len(exps)
            while mv > 0 and exps[mv - 1] == 0:
                mv -= 1
            profile.append((d, mv))
    return tuple(profile)


def truncate(I, d):
    """Ideal generated by the degree >= d part of I."""
    if d < 0:
        raise ValueError(f"truncation degree must be nonnegative, got {d}")
    gens = [g for g in I.generators if g.degree >= d]
    gens.extend(I.degree_piece(d))
    return MonomialIdeal(I.n, gens)


def quotient_hilbert_function(I, d_max=None):
    """Hilbert function of the quotient by I.

    Artinian ideals give the complete HilbertFunction. Otherwise a d_max cap is
    required and the raw value tuple through degree d_max is returned instead.
    """
    artinian = I.is_artinian()
    if not artinian and d_max is None:
        raise NeedsCapError(f"ideal ({I}) is not Artinian; pass d_max to cap the computation")
    vals = []
    d = 0
    while True:
        count = len(I.standard_monomials(d))
        vals.append(count)
        if artinian:
            if count == 0:
                return HilbertFunction(vals)
        elif d == d_max:
            return tuple(vals)
        d += 1


def is_stable(I):
    """True iff for each generator u and s < max_var(u), x_s * u / x_max stays in I."""
    for u in I.generators:
        mv = u.max_var
        for s in range(1, mv):
            exps = list(u.exponents)
            exps[mv - 1] -= 1
            exps[s - 1] += 1
            if not I.contains(Monomial(exps)):
                return False
    return True


_SYMBOL_RE = re.compile(r"([a-z])(?:\^(\d+))?$")


def parse_monomial(text, n=None):
    """Parse ``a^2*b*c^3`` or ``(2,1,3)`` into a Monomial.

    With n omitted, symbolic form sizes by the last letter used and tuple form
    by its length.
    """
    text = text.strip()
    if not text:
        raise IdealParseError("empty monomial")
    if text.startswith("("):
        if not text.endswith(")"):
            raise IdealParseError(f"unterminated exponent tuple {text!r}")
        body = text[1:-1].strip()
        try:
            exps = [int(tok) for tok in body.split(",")] if body else []
        except ValueError:
            raise IdealParseError(f"non-integer exponent in {text!r}") from None
        if n is not None:
            if len(exps) > n:
                raise IdealParseError(f"{text!r} has {len(exps)} exponents, expected {n}")
            exps.extend([0] * (n - len(exps)))
        return Monomial(exps)
    if text == "1":
        if n is None:
            raise IdealParseError("monomial 1 needs an explicit variable count")
        return Monomial((0,) * n)
    exps = {}
    for factor in text.split("*"):
        factor = factor.strip()
        match = _SYMBOL_RE.match(factor)
        if not match:
            raise IdealParseError(f"bad factor {factor!r} in monomial {text!r}")
        var = _LETTERS.index(match.group(1))
        power = int(match.group(2)) if match.group(2) else 1
        exps[var] = exps.get(var, 0) + power
    width = n if n is not None else max(exps) + 1
    if max(exps) + 1 > width:
        raise IdealParseError(f"monomial {text!r} uses more than {width} variables")
    return Monomial(tuple(exps.get(i, 0) for i in range(width)))


def parse_ideal(text, n=None):
    """Parse a semicolon- or newline-separated generator list into a MonomialIdeal.

    With n omitted the variable count is the largest letter used across all
    generators, or the tuple width in exponent-tuple form. Parse errors carry
    the offending generator's character position in the input.
    """
    tokens = []
    offset = 0
    for part in text.replace("\n", ";").split(";"):
        stripped = part.strip()
        if stripped:
            tokens.append((offset + part.index(stripped), stripped))
        offset += len(part) + 1
    if not tokens:
        raise IdealParseError("ideal text has no generators")
    if n is None:
        width = 0
        for _, tok in tokens:
            if tok.startswith("("):
                width = max(width, len(parse_monomial(tok).exponents))
            else:
                for match in re.finditer(r"[a-z]", tok):
                    width = max(width, _LETTERS.index(match.group(0)) + 1)
        if width == 0:
            raise IdealParseError(f"cannot infer variable count from {text!r}")
        n = width
    gens = []
    for pos, tok in tokens:
        try:
            gens.append(parse_monomial(tok, n))
        except IdealParseError as err:
            raise IdealParseError(err.args[0], position=pos) from None
    return MonomialIdeal(n, gens)
