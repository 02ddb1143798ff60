from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from schubpuzzle.permcore import (BLANK, Alphabet, NotAlmostSeparated, NotSeparated, Permutation,
                                  almostsep_choices, almostsep_encode, code, decode, desc,
                                  descent_set, direct_sum, dual_string, format_string, from_code,
                                  inversion_number, overlap, parse_string, perm_to_string,
                                  sepdesc_alphabets, sepdesc_choices, sepdesc_encode, sort_content,
                                  standardize, string_to_perm)

P = Permutation


def perm_strategy(max_n: int = 7):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(range(1, n + 1))).map(P)


# -- permutations ----------------------------------------------------------


def test_trailing_fixed_points_are_ignored():
    assert P("2134") == P("21")
    assert hash(P("2134")) == hash(P("21"))
    assert P("123") == P.identity()


def test_rejects_non_permutations():
    with pytest.raises(ValueError):
        P("1224")


@pytest.mark.parametrize("w, ds", [("1362547", {3, 5}), ("1234", set()), ("4321", {1, 2, 3})])
def test_descent_set(w, ds):
    assert descent_set(P(w)) == ds


@pytest.mark.parametrize("w, ell", [("4321", 6), ("15342", 5), ("2431", 4), ("1", 0)])
def test_inversion_number(w, ell):
    assert inversion_number(P(w)) == ell


def test_code_examples():
    assert code(P("4321")) == (3, 2, 1)
    assert code(P("2134")) == (1,)
    assert code(P()) == ()


@given(perm_strategy())
def test_code_round_trip(p):
    assert from_code(code(p)) == p
    assert sum(code(p)) == inversion_number(p)


@given(perm_strategy())
def test_inverse(p):
    assert p * p.inverse() == P()
    assert inversion_number(p.inverse()) == inversion_number(p)


def test_direct_sum_examples():
    assert direct_sum(P("21"), P("21")) == P("2143")
    assert direct_sum(P(), P("21"), 3) == P("12354")


@given(perm_strategy(5), perm_strategy(5))
def test_direct_sum_length(p, r):
    assert inversion_number(direct_sum(p, r)) == inversion_number(p) + inversion_number(r)


# -- strings -----------------------------------------------------------------


def test_standardize_and_f():
    a = Alphabet.digits(2)
    assert standardize(parse_string("0201"), a) == P("1423")
    assert string_to_perm(parse_string("0201"), a) == P("1342")
    assert string_to_perm(parse_string("000"), Alphabet.digits(0)) == P()
    assert standardize(parse_string("_2_2"), Alphabet((BLANK, 2))) == P("1324")
    assert string_to_perm(parse_string("2120"), a) == standardize(parse_string("2120"), a).inverse()


def test_perm_to_string_examples():
    s = perm_to_string(P("1362547"), [3, 5], Alphabet.digits(2), 7)
    assert format_string(s) == "0102102"
    a1, _, _ = sepdesc_alphabets(2, 4)
    assert format_string(perm_to_string(P("1362547"), [3, 5], a1, 7)) == "_3_43_4"
    assert format_string(perm_to_string(P(), [], Alphabet.digits(0), 4)) == "0000"


def test_perm_to_string_rejects_bad_cuts():
    with pytest.raises(ValueError):
        perm_to_string(P("1362547"), [3], Alphabet.digits(1), 7)


@given(perm_strategy(7), st.data())
def test_perm_to_string_round_trip(p, data):
    n = max(p.size, 1)
    extra = data.draw(st.sets(st.integers(1, n - 1) if n > 1 else st.nothing()))
    cuts = sorted(descent_set(p) | extra)
    a = Alphabet.digits(len(cuts))
    s = perm_to_string(p, cuts, a, n)
    assert string_to_perm(s, a) == p
    assert descent_set(string_to_perm(s, a)) <= set(cuts)


def test_sort_content():
    a1, _, _ = sepdesc_alphabets(2, 4)
    assert format_string(sort_content(parse_string("_3_43_4"), a1)) == "___3344"
    assert format_string(sort_content(parse_string("0201"), Alphabet.digits(2))) == "0012"


@given(st.lists(st.sampled_from([0, 1, 2]), max_size=8))
def test_sort_content_is_idempotent(s):
    a = Alphabet.digits(2)
    once = sort_content(s, a)
    assert sort_content(once, a) == once


def test_dual_string():
    assert format_string(dual_string(parse_string("_3_43_4"), 4)) == "0_10_1_"
    assert dual_string(("v0", "odd", "^3"), 4) == ("v1", "odd", "^4")


@given(st.lists(st.sampled_from([0, 1, 2, 3, BLANK, "v1", "^2", "odd", "even"]), max_size=8))
def test_dual_string_is_an_involution(s):
    assert dual_string(dual_string(s, 3), 3) == tuple(s)


def test_parse_string_forms():
    assert parse_string("_3_4") == (BLANK, 3, BLANK, 4)
    assert parse_string("0,1,_,10") == (0, 1, BLANK, 10)
    assert parse_string("^3,v0,odd") == ("^3", "v0", "odd")
    with pytest.raises(ValueError):
        parse_string("x")


# -- overlap and encoders ----------------------------------------------------------


@pytest.mark.parametrize("pi, rho, o", [
    ("1362547", "7321456", {3}),
    ("2543167", "4132567", {2, 3}),
    ("2431", "2134", set()),
])
def test_overlap(pi, rho, o):
    assert overlap(P(pi), P(rho)) == (frozenset(o), len(o))


@given(perm_strategy(6), perm_strategy(6))
def test_overlap_at_most_desc(p, r):
    assert overlap(p, r)[1] <= desc(p, r)


def test_sepdesc_encode_examples():
    e = sepdesc_encode(P("1362547"), P("7321456"))
    assert (format_string(e.lam), format_string(e.mu), e.k, e.d, e.m) == ("_3_43_4", "_21___0", 2, 4, 0)
    e = sepdesc_encode(P("2431"), P("2134"), k=1)
    assert (format_string(e.lam), format_string(e.mu)) == ("3_2_", "10__")
    e = sepdesc_encode(P("2431"), P("2134"), k=0)
    assert (format_string(e.lam), format_string(e.mu)) == ("3_21", "_0__")
    # the identity pair still needs n blanks in total, so one side is all blank
    for e in sepdesc_choices(P(), P(), 3):
        assert len(set(e.lam)) == len(set(e.mu)) == 1
        assert BLANK in e.lam + e.mu


def test_almostsep_encode_examples():
    e = almostsep_encode(P("2543167"), P("4132567"))
    assert (format_string(e.lam), format_string(e.mu), e.k, e.d, e.m) == ("1_20___", "4_32_44", 2, 4, 1)
    e = almostsep_encode(P("15342"), P("21435"))
    assert (format_string(e.lam), format_string(e.mu), e.k, e.d, e.m) == ("10_2_", "_423_", 2, 4, 1)


def test_almostsep_with_m_zero_matches_sepdesc_after_reindexing():
    pi, rho = P("1362547"), P("7321456")
    s = sepdesc_encode(pi, rho)
    a = [e for e in almostsep_choices(pi, rho, 7) if e.m == 0][0]
    # the separated rule reads (pi, rho) and the almost rule (rho, pi); shift the upper letters down
    down = lambda x: x - 1 if isinstance(x, int) and x > a.k else x
    assert (s.mu, s.lam) == (a.lam, tuple(down(x) for x in a.mu))


def test_encoders_reject():
    with pytest.raises(NotSeparated):
        sepdesc_encode(P("2543167"), P("4132567"))
    with pytest.raises(NotAlmostSeparated):
        almostsep_encode(P("4321"), P("4321"))


@given(perm_strategy(6), perm_strategy(6))
def test_sepdesc_encodings(p, r):
    n = max(p.size, r.size, 1)
    for e in sepdesc_choices(p, r, n):
        assert decode(e) == (p, r)
        assert e.lam.count(BLANK) + e.mu.count(BLANK) == n
        # pi ascends before the cut, rho after it
        cut = e.lam.count(BLANK)
        pw, rw = p.padded(n), r.padded(n)
        assert list(pw[:cut]) == sorted(pw[:cut])
        assert list(rw[cut:]) == sorted(rw[cut:])


@given(perm_strategy(6), perm_strategy(6))
def test_almostsep_encodings(p, r):
    n = max(p.size, r.size, 1)
    for e in almostsep_choices(p, r, n):
        assert decode(e) == (p, r)
        assert e.lam.count(e.k) == e.mu.count(e.k) == e.m
        assert e.lam.count(BLANK) + e.mu.count(BLANK) == n - e.m
