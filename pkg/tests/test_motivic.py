from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from schubpuzzle.motivic import (PoleHit, apply_rmatrix, dim_Y, euler_characteristic, random_point,
                                 segre_restriction, typeA_rmatrix_entry, verify_puzzle_identity)
from schubpuzzle.permcore import Alphabet, Permutation, parse_string, perms, sepdesc_alphabets, sort_content

F = Fraction
A = Alphabet.digits(2)


def test_rmatrix_entries():
    zp, zpp, q = F(2), F(3), F(5)
    x = zpp / zp
    den = 1 - q * q * x
    assert typeA_rmatrix_entry(1, 1, 1, 1, zp, zpp, q) == 1
    assert typeA_rmatrix_entry(0, 1, 1, 0, zp, zpp, q) == q * (1 - x) / den
    assert typeA_rmatrix_entry(0, 1, 0, 1, zp, zpp, q) == (1 - q * q) / den
    assert typeA_rmatrix_entry(1, 0, 1, 0, zp, zpp, q) == (1 - q * q) * x / den
    assert typeA_rmatrix_entry(0, 1, 0, 0, zp, zpp, q) == 0


def test_rmatrix_is_unitary():
    # R(z', z'') then R(z'', z') on the same two slots is the identity
    zp, zpp, q = F(7, 3), F(11, 5), F(13, 2)
    for s in itertools.product(range(3), repeat=2):
        once = apply_rmatrix({s: F(1)}, 1, zp, zpp, q, A)
        assert apply_rmatrix(once, 1, zpp, zp, q, A) == {s: 1}


def _run(word, vec, z):
    slots = list(range(1, len(z)))
    for a in word:
        vec = apply_rmatrix(vec, a, z[slots[a - 1]], z[slots[a]], q=Fraction(3, 7), alphabet=A)
        slots[a - 1], slots[a] = slots[a], slots[a - 1]
    return vec


def test_yang_baxter():
    z = [None, F(2), F(5, 3), F(7, 4)]
    for s in itertools.product(range(3), repeat=3):
        assert _run([1, 2, 1], {s: F(1)}, z) == _run([2, 1, 2], {s: F(1)}, z)


def test_segre_at_the_identity():
    pt = random_point(3, random.Random(1))
    for s in itertools.product(range(3), repeat=3):
        want = 1 if tuple(s) == sort_content(s, A) else 0
        assert segre_restriction(s, Permutation(), A, pt) == want


def test_segre_is_invariant_under_a_stabilizer_swap():
    # swapping two equal letters does nothing: R acts as 1 on e_i (x) e_i
    pt = random_point(3, random.Random(2))
    lam = (1, 1, 0)
    assert segre_restriction(lam, Permutation("213"), A, pt) == segre_restriction(lam, Permutation(), A, pt)


def test_puzzle_identity_small():
    rng = random.Random(3)
    for lam, mu, k, d in [("_2", "0_", 0, 2), ("2_", "_1", 1, 2), ("_3_", "0_1", 1, 3)]:
        lam, mu = parse_string(lam), parse_string(mu)
        for s in perms(len(lam)):
            assert verify_puzzle_identity(lam, mu, s, k, d, trials=2, rng=rng)


def test_euler_examples():
    assert euler_characteristic(parse_string("_2_2"), parse_string("10__"), parse_string("2120"),
                                "sepdesc", 1, 2) == {"puzzles": 3, "dim": 2, "chi": 3}
    bottom = ("^3", "^4", "v1", "odd", "v0")
    assert euler_characteristic(parse_string("10_2_"), parse_string("_423_"), bottom,
                                "almostsep", 2, 4) == {"puzzles": 3, "dim": 1, "chi": -3}


def test_euler_of_an_empty_intersection():
    r = euler_characteristic(parse_string("_2_2"), parse_string("10__"), parse_string("0122"), "sepdesc", 1, 2)
    assert r["puzzles"] == 0 and r["chi"] == 0 and r["dim"] < 0


def test_dim_y_is_codimension_count():
    a = sepdesc_alphabets(1, 2)
    assert dim_Y(parse_string("_2_2"), parse_string("10__"), parse_string("2120"), a) == 2


def test_euler_rejects_unknown_rule():
    with pytest.raises(ValueError):
        euler_characteristic((), (), (), "grassmannian", 0, 1)


def test_pole_is_reported():
    with pytest.raises(PoleHit):
        typeA_rmatrix_entry(0, 1, 1, 0, F(1), F(1), F(1))
