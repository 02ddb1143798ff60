from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from schubpuzzle.laurent import lp
from schubpuzzle.permcore import BLANK, Permutation, inversion_number, perms, sepdesc_choices, sepdesc_encode
from schubpuzzle.puzzlegrid import Enumerator
from schubpuzzle.schubring import oracle_constants
from schubpuzzle.sepdesc import (SepDescCatalog, UnsupportedTheory, constants_from_encoding, display_horizontal,
                                 horizontal, sepdesc_constants)

P = Permutation
SEP_PAIRS = [(p, r) for p in perms(4) for r in perms(4) if sepdesc_choices(p, r, 4)]


def test_seven_letter_example():
    pi, rho = P("1362547"), P("7321456")
    e = sepdesc_encode(pi, rho)
    cat = SepDescCatalog("H", e.k, e.d, e.n)
    pzs = list(Enumerator(cat, e.lam, e.mu).puzzles())
    assert len(pzs) == 4
    assert sepdesc_constants(pi, rho, "H").nonzero() == oracle_constants(pi, rho, "H", 7).nonzero()


@pytest.mark.parametrize("k", [0, 1])
def test_kt_example(k):
    e = sepdesc_constants(P("2431"), P("2134"), "KT", k=k).nonzero()
    assert e == {P("2431"): lp("1 - y1^-1*y2"), P("3421"): lp("y1^-1*y2"),
                 P("4231"): lp("y1^-1*y2"), P("4321"): lp("-y1^-1*y2")}


def test_up_triangles():
    cat = SepDescCatalog("K", 1, 3, 4)
    assert cat.up(BLANK, 2) == 1 and cat.up(0, BLANK) == 1
    assert cat.up(3, 1) == 1
    assert cat.up(1, 2) == -1  # straddles the blank
    assert cat.up(2, 3) is None and cat.up(BLANK, BLANK) is None
    h = SepDescCatalog("H", 1, 3, 4)
    assert h.up(1, 2) is None


def test_down_triangles():
    cat = SepDescCatalog("K", 1, 3, 4)
    assert cat.down(0, 1) == -1 and cat.down(2, 3) == -1
    assert cat.down(1, 2) is None
    assert cat.down(3, 0) == 1


def test_horizontal_labels():
    assert display_horizontal(horizontal(BLANK, 3)) == 3
    assert display_horizontal(horizontal(2, 0)) == (0, 2)


@pytest.mark.parametrize("theory", ["H", "K", "HT", "KT"])
def test_all_encodings_agree_with_the_oracle(theory):
    for pi, rho in random.Random(theory).sample(SEP_PAIRS, 25):
        want = oracle_constants(pi, rho, theory, 4).nonzero()
        for e in sepdesc_choices(pi, rho, 4):
            assert constants_from_encoding(e, theory).nonzero() == want


def test_h_puzzles_are_the_charge_zero_k_puzzles():
    for pi, rho in SEP_PAIRS[::7]:
        e = sepdesc_choices(pi, rho, 4)[0]
        h = {(pz.nu, tuple(sorted(pz.cells.items()))) for pz in
             Enumerator(SepDescCatalog("H", e.k, e.d, 4), e.lam, e.mu).puzzles()}
        k0 = {(pz.nu, tuple(sorted(pz.cells.items()))) for pz in
              Enumerator(SepDescCatalog("K", e.k, e.d, 4), e.lam, e.mu).puzzles() if pz.charge == 0}
        assert h == k0


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SEP_PAIRS))
def test_k_signs_follow_length(pair):
    pi, rho = pair
    e = sepdesc_choices(pi, rho, 4)[0]
    cat = SepDescCatalog("K", e.k, e.d, 4)
    for pz in Enumerator(cat, e.lam, e.mu).puzzles():
        assert pz.fugacity == (-1) ** pz.charge
    for s, c in constants_from_encoding(e, "K").nonzero().items():
        assert c * (-1) ** (inversion_number(s) - inversion_number(pi) - inversion_number(rho)) > 0


@pytest.mark.parametrize("pair", SEP_PAIRS[::11], ids=lambda p: f"{p[0]}-{p[1]}")
def test_equivariant_theories_specialize(pair):
    # y -> 0 turns HT into H; y -> 1 turns KT into K
    e = sepdesc_choices(*pair, 4)[0]
    ht = constants_from_encoding(e, "HT").nonzero()
    kt = constants_from_encoding(e, "KT").nonzero()
    zero = {f"y{i}": 0 for i in range(1, 5)}
    one = {f"y{i}": 1 for i in range(1, 5)}
    h = {s: c.subs(zero) for s, c in ht.items()}
    k = {s: c.subs(one) for s, c in kt.items()}
    assert {s: c for s, c in h.items() if c} == constants_from_encoding(e, "H").nonzero()
    assert {s: c for s, c in k.items() if c} == constants_from_encoding(e, "K").nonzero()


def test_rejects():
    with pytest.raises(UnsupportedTheory):
        SepDescCatalog("QK", 0, 1, 2)
    with pytest.raises(UnsupportedTheory):
        sepdesc_constants(P("21"), P("21"), "GENERIC_EQ")
    with pytest.raises(ValueError):
        SepDescCatalog("H", 3, 1, 2)
