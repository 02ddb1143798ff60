from __future__ import annotations

import pytest

from schubpuzzle.dictionaries import (GRASSMANNIAN, TWOSTEP, TwoStepCatalog, from_grassmannian_label,
                                      from_twostep_label, grassmannian_puzzles, grassmannian_strings,
                                      rotate_up, translated_grassmannian_constants, translated_twostep_constants,
                                      twostep_strings)
from schubpuzzle.permcore import Permutation, desc, perms
from schubpuzzle.schubring import oracle_constants

P = Permutation
PAIRS4 = [(p, r) for p in perms(4) for r in perms(4)]
GRASS4 = [pr for pr in PAIRS4 if desc(*pr) <= 1]
TWO4 = [pr for pr in PAIRS4 if desc(*pr) <= 2]


def test_tables_are_injective():
    for table in (GRASSMANNIAN, TWOSTEP):
        for direction, m in table.items():
            assert len(set(m.values())) == len(m), direction


def test_single_labels():
    assert from_grassmannian_label("1", "ne") == "_"
    assert from_twostep_label("(21)0", "h") == "v2"
    assert from_twostep_label("10", "ne") == frozenset({0})


def test_grassmannian_strings():
    lam, mu = grassmannian_strings(P("1324"), P("2314"), 4)
    assert len(lam) == len(mu) == 4 and set(lam) | set(mu) <= {"0", "1"}
    with pytest.raises(ValueError):
        grassmannian_strings(P("1324"), P("1243"), 4)


def test_grassmannian_example():
    # sigma_1 * sigma_1 in Gr(2, 4): two puzzles
    pzs = list(grassmannian_puzzles(P("1324"), P("1324"), "H", 4))
    assert len(pzs) == 2


@pytest.mark.parametrize("theory", ["H", "K", "HT"])
def test_translated_grassmannian_matches_the_oracle(theory):
    for pi, rho in GRASS4[::3]:
        assert (translated_grassmannian_constants(pi, rho, theory, 4).nonzero()
                == oracle_constants(pi, rho, theory, 4).nonzero())


@pytest.mark.parametrize("theory", ["H", "K"])
def test_translated_twostep_matches_the_oracle(theory):
    for pi, rho in TWO4[::5]:
        assert (translated_twostep_constants(pi, rho, theory, 4).nonzero()
                == oracle_constants(pi, rho, theory, 4).nonzero())


def test_twostep_strings():
    lam, mu = twostep_strings(P("1324"), P("1243"), 4)
    assert set(lam) | set(mu) <= {"0", "1", "2"}
    with pytest.raises(ValueError):
        twostep_strings(P("2143"), P("1324"), 4)


def test_twostep_h_pieces_have_rotational_symmetry():
    cat = TwoStepCatalog("H", 3)
    ups = cat.up_pieces()
    assert ups and {rotate_up(p) for p in ups} == ups
    # a down piece (SE, N, SW) is an up piece turned 180 degrees
    assert cat.down_pieces() == {(a, h, c) for a, h, c in ups}


def test_twostep_h_has_the_pure_triangles():
    ups = TwoStepCatalog("H", 3).up_pieces()
    assert {("0", "0", "0"), ("1", "1", "1"), ("2", "2", "2")} <= ups
