"""Tests for monomial arithmetic, lex ideals, truncation, and parsing."""

import itertools
from math import comb

import pytest

from multbound import (
    HilbertFunction,
    IdealParseError,
    Monomial,
    MonomialIdeal,
    NeedsCapError,
    NotAdmissibleError,
    enumerate_o_sequences,
    is_o_sequence,
    is_stable,
    lex_compare,
    lex_generator_profile,
    lex_ideal,
    monomials_of_degree,
    multiplicity,
    parse_ideal,
    parse_monomial,
    quotient_hilbert_function,
    truncate,
)
from multbound.monomial import _mono_rank, _mono_unrank

from goldens import (
    IDEAL_ROWS_DEMO,
    IDEAL_STABLE_NONCM,
    IDEAL_TRUNC_MULT,
    IDEAL_TRUNC_MULT_AT_3,
)


def test_monomial_basics():
    m = Monomial((2, 1, 3))
    assert m.degree == 6
    assert m.n == 3
    assert m.max_var == 3
    assert str(m) == "a^2*b*c^3"
    assert Monomial((0, 0)).max_var == 0
    assert str(Monomial((0, 0))) == "1"
    assert Monomial((1, 0)).divides(Monomial((2, 1)))
    assert not Monomial((1, 2)).divides(Monomial((2, 1)))
    assert Monomial((1, 0)) * Monomial((1, 2)) == Monomial((2, 2))
    with pytest.raises(ValueError):
        Monomial((1, -1))
    with pytest.raises(ValueError):
        Monomial((1,)).divides(Monomial((1, 0)))
    with pytest.raises(ValueError):
        Monomial((1,)) * Monomial((1, 0))
    with pytest.raises(AttributeError):
        m.exponents = (0, 0, 0)


def test_lex_compare():
    a2b = parse_monomial("a^2*b", 3)
    ab2 = parse_monomial("a*b^2", 3)
    ac2 = parse_monomial("a*c^2", 3)
    b3 = parse_monomial("b^3", 3)
    assert lex_compare(a2b, ab2) > 0
    assert lex_compare(ab2, a2b) < 0
    assert lex_compare(ac2, b3) > 0
    assert lex_compare(a2b, a2b) == 0
    with pytest.raises(ValueError):
        lex_compare(Monomial((1,)), Monomial((1, 0)))


def test_monomials_of_degree_descending_lex():
    names = [str(m) for m in monomials_of_degree(2, 3)]
    assert names == ["a^2", "a*b", "a*c", "b^2", "b*c", "c^2"]
    assert [str(m) for m in monomials_of_degree(0, 3)] == ["1"]
    for n in range(1, 5):
        for d in range(0, 7):
            mons = list(monomials_of_degree(d, n))
            assert len(mons) == comb(n - 1 + d, d)
            assert all(lex_compare(u, v) > 0 for u, v in zip(mons, mons[1:]))


def test_rank_unrank_round_trip():
    for n in range(1, 5):
        for d in range(0, 7):
            for i, m in enumerate(monomials_of_degree(d, n)):
                assert _mono_rank(m.exponents) == i
                assert _mono_unrank(d, n, i) == m.exponents


def test_lex_ideal_reference_cases():
    I = lex_ideal((1, 3, 6, 9, 9, 6, 2), 3)
    assert len(I.generators) == 16
    assert str(I.generators[0]) == "a^3"
    assert len(lex_ideal((1, 3, 6, 7, 3, 1), 3).generators) == 12
    assert str(lex_ideal((1,), 3)) == "a; b; c"


def test_lex_ideal_rejects_non_o_sequences():
    for bad in [(1, 3, 7), (1, 4), (2,), (1, 2, 1, 0, 0, 1), ()]:
        with pytest.raises(NotAdmissibleError):
            lex_ideal(bad, 3)


def test_lex_ideal_agrees_with_o_sequence_test():
    # Construction succeeds exactly on O-sequences, over a brute-force grid.
    for h1 in range(0, 5):
        for h2 in range(0, 9):
            for h3 in range(0, 13):
                vals = (1, h1, h2, h3)
                if is_o_sequence(vals, 3):
                    I = lex_ideal(vals, 3)
                    assert quotient_hilbert_function(I) == HilbertFunction(vals)
                else:
                    with pytest.raises(NotAdmissibleError):
                        lex_ideal(vals, 3)


def test_lex_ideal_round_trips_every_small_hilbert_function():
    for H in enumerate_o_sequences(3, 5):
        assert quotient_hilbert_function(lex_ideal(H, 3)) == H


def test_lex_ideal_degree_pieces_are_initial_segments():
    for H in enumerate_o_sequences(3, 4):
        I = lex_ideal(H, 3)
        for d in range(0, H.socle_degree + 2):
            piece = I.degree_piece(d)
            mons = list(monomials_of_degree(d, 3))
            assert piece == mons[: len(piece)]


def test_lex_generator_profile_matches_materialized_generators():
    for H in enumerate_o_sequences(3, 4):
        I = lex_ideal(H, 3)
        assert lex_generator_profile(H, 3) == tuple(
            (g.degree, g.max_var) for g in I.generators
        )


def test_truncate_reference_case():
    I = parse_ideal(IDEAL_TRUNC_MULT)
    T = truncate(I, 3)
    assert T == parse_ideal(IDEAL_TRUNC_MULT_AT_3)
    assert truncate(T, 3) == T
    assert truncate(I, 2) == I
    assert truncate(I, 0) == I
    assert len(truncate(parse_ideal(IDEAL_ROWS_DEMO), 3).generators) == 10
    with pytest.raises(ValueError):
        truncate(I, -1)


def test_truncate_preserves_high_degree_pieces():
    I = parse_ideal(IDEAL_TRUNC_MULT)
    T = truncate(I, 3)
    for d in range(3, 7):
        assert T.degree_piece(d) == I.degree_piece(d)
    assert T.degree_piece(2) == []


def test_quotient_hilbert_function_reference_cases():
    I = parse_ideal(IDEAL_TRUNC_MULT)
    H = quotient_hilbert_function(I)
    assert H == HilbertFunction((1, 3, 4, 2, 1))
    assert multiplicity(H) == 11
    assert multiplicity(quotient_hilbert_function(truncate(I, 3))) == 13
    assert quotient_hilbert_function(parse_ideal("a; b; c")) == HilbertFunction((1,))


def test_quotient_hilbert_function_needs_cap_for_non_artinian():
    J = parse_ideal(IDEAL_STABLE_NONCM)
    assert not J.is_artinian()
    with pytest.raises(NeedsCapError):
        quotient_hilbert_function(J)
    vals = quotient_hilbert_function(J, d_max=8)
    assert isinstance(vals, tuple)
    assert vals == (1, 3, 6, 4, 4, 4, 4, 4, 4)


def test_is_stable():
    assert is_stable(parse_ideal(IDEAL_STABLE_NONCM))
    assert not is_stable(parse_ideal("a^2; b^2", 2))
    assert is_stable(parse_ideal("a^2", 2))
    for H in enumerate_o_sequences(3, 4):
        assert is_stable(lex_ideal(H, 3))


def test_parse_monomial_forms():
    assert parse_monomial("a^2*b*c^3").exponents == (2, 1, 3)
    assert parse_monomial("(2,1,3)").exponents == (2, 1, 3)
    assert parse_monomial("(2,1,3)", 4).exponents == (2, 1, 3, 0)
    assert parse_monomial("1", 3).exponents == (0, 0, 0)
    assert parse_monomial("a*a^2").exponents == (3,)
    assert parse_monomial("b", 3).exponents == (0, 1, 0)
    assert str(parse_monomial("a^2*b*c^3")) == "a^2*b*c^3"


def test_parse_monomial_errors():
    for bad in ["", "q2", "a^2*", "(2,x)", "(2,1", "a^"]:
        with pytest.raises(IdealParseError):
            parse_monomial(bad, 3)
    with pytest.raises(IdealParseError):
        parse_monomial("1")
    with pytest.raises(IdealParseError):
        parse_monomial("c", 2)
    with pytest.raises(IdealParseError):
        parse_monomial("(1,2,3)", 2)


def test_parse_ideal_round_trip_and_inference():
    I = parse_ideal(IDEAL_ROWS_DEMO)
    assert I.n == 3
    assert parse_ideal(str(I)) == I
    assert parse_ideal("a; c").n == 3
    assert parse_ideal("(2,0); (0,3)").n == 2
    assert parse_ideal("a^2;; b") == parse_ideal("a^2; b")


def test_parse_ideal_newlines_match_semicolons():
    assert parse_ideal(IDEAL_TRUNC_MULT) == parse_ideal(
        IDEAL_TRUNC_MULT.replace("; ", "\n")
    )


def test_parse_ideal_error_positions():
    with pytest.raises(IdealParseError) as exc:
        parse_ideal("a^3; q2*w; b")
    assert exc.value.position == 5
    assert str(exc.value).endswith("(at position 5)")
    for empty in ["", " ; ; "]:
        with pytest.raises(IdealParseError):
            parse_ideal(empty)
    with pytest.raises(IdealParseError):
        parse_ideal("1")


def test_monomial_ideal_canonical_form():
    I = MonomialIdeal(3, [Monomial((0, 0, 2)), Monomial((1, 1, 0)), Monomial((2, 0, 0))])
    assert str(I) == "a^2; a*b; c^2"
    assert MonomialIdeal(2, [Monomial((1, 0)), Monomial((2, 0)), Monomial((1, 1))]) == \
        MonomialIdeal(2, [Monomial((1, 0))])
    assert len(parse_ideal("a; a; b")) == 2


def test_monomial_ideal_contains_and_artinian():
    I = parse_ideal("a^2; b", 2)
    assert I.contains(Monomial((3, 0)))
    assert I.contains(Monomial((2, 1)))
    assert I.contains(Monomial((0, 1)))
    assert not I.contains(Monomial((1, 0)))
    assert I.is_artinian()
    assert parse_ideal(IDEAL_ROWS_DEMO).is_artinian()
    assert not parse_ideal("a; b", 3).is_artinian()
    assert not parse_ideal(IDEAL_STABLE_NONCM).is_artinian()


def test_monomial_ideal_validation():
    with pytest.raises(ValueError):
        MonomialIdeal(0, [])
    with pytest.raises(ValueError):
        MonomialIdeal(2, [Monomial((1,))])
    with pytest.raises(AttributeError):
        parse_ideal("a", 1).generators = ()


def test_standard_monomials_complement_degree_pieces():
    I = parse_ideal(IDEAL_TRUNC_MULT)
    for d in range(0, 6):
        inside = I.degree_piece(d)
        outside = I.standard_monomials(d)
        assert len(inside) + len(outside) == comb(2 + d, d)
        assert not set(inside) & set(outside)
