"""
Generic-q checks: fixed-point restrictions of motivic Segre classes via the
type A R-matrix together with the puzzle identity they satisfy.  Euler
characteristics of triple intersections are built on the same pieces.

Rational-function identities are checked by evaluation at random rational
points.  Both sides are rational functions of bounded degree, so agreement
at a few independent random points is a sound probabilistic test (a
nonzero difference vanishes only on a proper subvariety).
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Mapping, Sequence

from .laurent import LaurentPoly, RationalFunction
from .permcore import (Alphabet, Permutation, inversion_number, reduced_word,
                       sort_content, standardize)
from .puzzlegrid import Enumerator


class PoleHit(ZeroDivisionError):
    """A denominator vanished at the chosen evaluation point."""


def typeA_rmatrix_entry(i, j, m, l, zp, zpp, q, alphabet: Alphabet | None = None):
    """Normalized type A R-matrix entry R(z', z'')^{ml}_{ij} (input e_i (x) e_j).

    The normalization makes the all-equal entry 1.  Works on numbers or on
    LaurentPoly/RationalFunction values.

    >>> typeA_rmatrix_entry(0, 1, 1, 0, Fraction(2), Fraction(3), Fraction(5))
    Fraction(5, 73)
    """
    rank = (lambda s: alphabet.rank(s)) if alphabet is not None else (lambda s: s)
    x = _div(zpp, zp)
    den = 1 - q * q * x
    if i == j == m == l:
        return _one(x)
    if i == l and j == m and i != j:
        return _div(q * (1 - x), den)
    if i == m and j == l and i != j:
        if rank(i) < rank(j):
            return _div(1 - q * q, den)
        return _div((1 - q * q) * x, den)
    return _zero(x)


def _one(x):
    return RationalFunction(1) if isinstance(x, RationalFunction) else Fraction(1)


def _zero(x):
    return RationalFunction(0) if isinstance(x, RationalFunction) else Fraction(0)


def _div(a, b):
    if isinstance(a, (LaurentPoly, RationalFunction)) or isinstance(b, (LaurentPoly, RationalFunction)):
        return RationalFunction.coerce(a) / RationalFunction.coerce(b)
    b = Fraction(b)
    if b == 0:
        raise PoleHit("denominator vanished")
    return Fraction(a) / b


def apply_rmatrix(vec: dict, a: int, zp, zpp, q, alphabet: Alphabet) -> dict:
    """R-matrix on tensor slots a, a+1 (1-based) of a vector {string: coefficient}."""
    out: dict = {}
    for s, c in vec.items():
        i, j = s[a - 1], s[a]
        targets = [(i, j)] if i == j else [(j, i), (i, j)]
        for m, l in targets:
            w = typeA_rmatrix_entry(i, j, m, l, zp, zpp, q, alphabet)
            if w == 0:
                continue
            t = s[:a - 1] + (m, l) + s[a + 1:]
            out[t] = out.get(t, 0) + c * w
    return {s: c for s, c in out.items() if c != 0}


def segre_restriction(lam: Sequence, sigma: Permutation, alphabet: Alphabet,
                      point: Mapping[str, object]) -> Fraction:
    """S^lam|_sigma = <e*_{sort lam}, R_sigma e_lam> at a numeric point {q, z1..zn}.

    >>> segre_restriction((0, 1), Permutation(), Alphabet.digits(1), {"q": 2, "z1": 3, "z2": 5})
    Fraction(1, 1)
    """
    n = len(lam)
    q = Fraction(point["q"])
    z = [None] + [Fraction(point[f"z{i}"]) for i in range(1, n + 1)]
    word = reduced_word(sigma)
    slots = list(range(1, n + 1))  # z-index carried by each tensor slot
    vec = {tuple(lam): Fraction(1)}
    for a in reversed(word):
        vec = apply_rmatrix(vec, a, z[slots[a - 1]], z[slots[a]], q, alphabet)
        slots[a - 1], slots[a] = slots[a], slots[a - 1]
    return vec.get(sort_content(lam, alphabet), Fraction(0))


def random_point(n: int, rng: random.Random) -> dict:
    """Random rational (q, z_1..z_n) avoiding small coincidences."""
    def r():
        return Fraction(rng.randint(2, 10 ** 6), rng.randint(1, 10 ** 6))
    pt = {"q": r()}
    for i in range(1, n + 1):
        pt[f"z{i}"] = r()
    return pt


def puzzle_sums(lam: Sequence, mu: Sequence, k: int, d: int, point: Mapping[str, object]) -> dict:
    """{nu: sum of generic equivariant fugacities} for a sep-desc boundary."""
    from .sepdesc import SepDescCatalog

    cat = SepDescCatalog("GENERIC_EQ", k, d, len(lam), point=point)
    return {nu: w for nu, (_, w) in Enumerator(cat, lam, mu).tally().items() if w != 0}


def verify_puzzle_identity(lam: Sequence, mu: Sequence, sigma: Permutation, k: int, d: int,
                           trials: int = 3, rng: random.Random | None = None) -> bool:
    """Check sum_nu P(lam, mu, nu) S^nu_3|_sigma = S^lam_1|_sigma S^mu_2|_sigma
    at `trials` random points (sep-desc, generic equivariant pieces)."""
    from .permcore import sepdesc_alphabets

    rng = rng or random.Random(0)
    a1, a2, a3 = sepdesc_alphabets(k, d)
    n = len(lam)
    done = attempts = 0
    while done < trials:
        attempts += 1
        if attempts > 20 * trials:
            raise PoleHit("could not find a regular point")
        pt = random_point(n, rng)
        try:
            lhs = Fraction(0)
            for nu, w in puzzle_sums(lam, mu, k, d, pt).items():
                if any(isinstance(x, frozenset) for x in nu):
                    return False
                lhs += w * segre_restriction(nu, sigma, a3, pt)
            rhs = segre_restriction(lam, sigma, a1, pt) * segre_restriction(mu, sigma, a2, pt)
        except (PoleHit, ZeroDivisionError):
            continue
        if lhs != rhs:
            return False
        done += 1
    return True


# ---------------------------------------------------------------------------
# Euler characteristics


def _dim_flag(content_sizes: Sequence[int]) -> int:
    tot = 0
    for a in range(len(content_sizes)):
        for b in range(a + 1, len(content_sizes)):
            tot += content_sizes[a] * content_sizes[b]
    return tot


def dim_Y(lam: Sequence, mu: Sequence, nu: Sequence, alphabets: tuple[Alphabet, Alphabet, Alphabet]) -> int:
    """dim F_3 - l(f(lam)) - l(f(mu)) - l(f(reverse nu))."""
    a1, a2, a3 = alphabets
    sizes = [sum(1 for x in nu if x == s) for s in a3.symbols]
    f = lambda s, a: inversion_number(standardize(s, a).inverse())
    return _dim_flag(sizes) - f(lam, a1) - f(mu, a2) - f(tuple(reversed(nu)), a3)


def euler_characteristic(lam: Sequence, mu: Sequence, nu: Sequence, rule: str, k: int, d: int) -> dict:
    """Euler characteristic of the triple intersection for boundary (lam, mu, nu).

    `nu` is the S side of the puzzles, read left to right; the Schubert
    cell being intersected is indexed by its reverse.

    Returns {"puzzles", "dim", "chi"}.  Every puzzle's H-fugacity (plain
    U, D at q = -1) is asserted to be 1.

    >>> from schubpuzzle.permcore import parse_string
    >>> euler_characteristic(parse_string("_2_2"), parse_string("10__"), parse_string("2120"), "sepdesc", 1, 2)
    {'puzzles': 3, 'dim': 2, 'chi': 3}
    >>> bottom = ("^3", "^4", "v1", "odd", "v0")
    >>> euler_characteristic(parse_string("10_2_"), parse_string("_423_"), bottom, "almostsep", 2, 4)
    {'puzzles': 3, 'dim': 1, 'chi': -3}
    """
    if rule == "sepdesc":
        from .permcore import sepdesc_alphabets
        from .sepdesc import SepDescCatalog

        cat = SepDescCatalog("GENERIC_NONEQ", k, d, len(lam), point={"q": -1}, twisted=False)
        alphabets = sepdesc_alphabets(k, d)
        plam, pmu = lam, mu
    elif rule == "almostsep":
        from .almostsep import AlmostSepCatalog, to_sets
        from .permcore import almostsep_alphabets

        cat = AlmostSepCatalog("GENERIC_NONEQ", k, d, len(lam), point={"q": -1}, twisted=False)
        alphabets = almostsep_alphabets(k, d)
        plam, pmu = to_sets(lam), to_sets(mu)
    else:
        raise ValueError(f"unknown rule {rule}")
    count = 0
    for pz in Enumerator(cat, plam, pmu, nu).puzzles():
        w = pz.fugacity
        if w != 1:
            raise AssertionError(f"H-fugacity {w} != 1")
        count += 1
    dim = dim_Y(lam, mu, nu, alphabets)
    return {"puzzles": count, "dim": dim, "chi": -count if dim % 2 else count}
