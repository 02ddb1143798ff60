"""
Label dictionaries to older puzzle rules.

Grassmannian puzzles use the labels 0, 1, 10 on every edge.
Relabeling edge by edge turns them into separated-descent puzzles with
k = 0, d = 1:

    edge      0      1      10
    NW (/)    _      1      0
    NE (\\)    0      _      1
    S  (-)    0      1      01

Two-step puzzles use 0, 1, 2, 10, 20, 21, 2(10), (21)0 and become
almost-separated puzzles with k = 1, d = 2:

    edge      0     1     2     10    20     21    2(10)  (21)0
    NW (/)    0     1     _     01    02     2     12     012
    NE (\\)    _     1     2     0     02     12    012    01
    S  (-)    v0    odd   ^2    v1    even   ^1    ^0     v2

The Grassmannian side is an independent implementation (its own pieces);
the two-step pieces are the preimages of the almost-separated ones, and
their rotation symmetry is checked separately.

>>> from_grassmannian_label("10", "nw"), from_grassmannian_label("10", "h")
(0, frozenset({0, 1}))
>>> sorted(from_twostep_label("2(10)", "nw")), from_twostep_label("20", "h")
([1, 2], 'even')
"""
from __future__ import annotations

from dataclasses import replace
from typing import Sequence

from .permcore import BLANK, Alphabet, Permutation, descent_set, perm_to_string, string_to_perm
from .puzzlegrid import EQUIVARIANT, BoundaryMismatch, Enumerator, Puzzle
from .schubring import SYMBOLIC, SchubertExpansion, YRing

DIRECTIONS = ("nw", "ne", "h")

GRASSMANNIAN = {
    "nw": {"0": BLANK, "1": 1, "10": 0},
    "ne": {"0": 0, "1": BLANK, "10": 1},
    "h": {"0": frozenset((0, BLANK)), "1": frozenset((1, BLANK)), "10": frozenset((0, 1))},
}

_S = frozenset
TWOSTEP = {
    "nw": {"0": _S({0}), "1": _S({1}), "2": _S(), "10": _S({0, 1}), "20": _S({0, 2}),
           "21": _S({2}), "2(10)": _S({1, 2}), "(21)0": _S({0, 1, 2})},
    "ne": {"0": _S(), "1": _S({1}), "2": _S({2}), "10": _S({0}), "20": _S({0, 2}),
           "21": _S({1, 2}), "2(10)": _S({0, 1, 2}), "(21)0": _S({0, 1})},
    "h": {"0": "v0", "1": "odd", "2": "^2", "10": "v1", "20": "even",
          "21": "^1", "2(10)": "^0", "(21)0": "v2"},
}
TWOSTEP_LABELS = tuple(TWOSTEP["h"])


def from_grassmannian_label(label: str, direction: str):
    """Separated-descent label of a Grassmannian edge label."""
    return GRASSMANNIAN[direction][label]


def from_twostep_label(label: str, direction: str):
    """Almost-separated label of a two-step edge label."""
    return TWOSTEP[direction][label]


def _bottom_label(h):
    # S-side letters are single symbols
    if isinstance(h, frozenset) and BLANK in h:
        (x,) = h - {BLANK}
        return x
    return h


def _translate(pz: Puzzle, table: dict, rule: str) -> Puzzle:
    nw, ne, hz = table["nw"], table["ne"], table["h"]

    def h_of(s):
        return s if s == EQUIVARIANT else hz[s]

    cells = {key: replace(c, nw=nw[c.nw], ne=ne[c.ne], se=nw[c.se], sw=ne[c.sw], state=h_of(c.state))
             for key, c in pz.cells.items()}
    bottoms = {key: replace(b, nw=nw[b.nw], ne=ne[b.ne], s=_bottom_label(hz[b.s]))
               for key, b in pz.bottoms.items()}
    lam = tuple(nw[x] for x in pz.lam)
    mu = tuple(ne[x] for x in pz.mu)
    nu = tuple(_bottom_label(hz[x]) for x in pz.nu)
    return Puzzle(pz.n, lam, mu, nu, cells, bottoms, rule, pz.theory)


def from_grassmannian_labels(pz: Puzzle) -> Puzzle:
    """Relabel a whole Grassmannian puzzle as a separated-descent puzzle."""
    return _translate(pz, GRASSMANNIAN, "sepdesc")


def from_twostep_labels(pz: Puzzle) -> Puzzle:
    """Relabel a whole two-step puzzle as an almost-separated puzzle."""
    return _translate(pz, TWOSTEP, "almostsep")


# ---------------------------------------------------------------------------
# Grassmannian puzzles


_KT_TRIANGLES = {("0", "0", "0"), ("1", "1", "1"), ("1", "10", "0"), ("10", "0", "1"), ("0", "1", "10")}


class GrassmannianCatalog:
    """Grassmannian pieces; (NW, S, NE) for up triangles and (SE, N, SW) for
    down triangles range over the same five triples.

    K adds the up triangle with all three edges 10 (weight -1); HT adds the
    rhombus NW 0, NE 1, SE 0, SW 1 weighing y_i - y_j, with i, j the S
    positions reached by its two lines.
    """

    rule = "grassmannian"

    def __init__(self, theory: str, n: int, yring: YRing = SYMBOLIC):
        if theory not in ("H", "K", "HT"):
            raise ValueError(f"Grassmannian puzzles here support H, K, HT, not {theory}")
        self.theory, self.n, self.yring = theory, n, yring

    def check_boundary(self, lam: Sequence, mu: Sequence, nu: Sequence | None) -> None:
        for s in (lam, mu) + ((nu,) if nu is not None else ()):
            if any(x not in ("0", "1") for x in s):
                raise BoundaryMismatch("Grassmannian boundaries are 0/1 strings")

    def _up(self, nw: str, ne: str) -> list:
        out = [(h, 1, 0) for a, h, c in _KT_TRIANGLES if (a, c) == (nw, ne)]
        if self.theory == "K" and nw == ne == "10":
            out.append(("10", -1, 1))
        return out

    def rhombus(self, p: int, q: int, nw: str, ne: str) -> list:
        out = []
        for h, w, c in self._up(nw, ne):
            for se, hh, sw in _KT_TRIANGLES:
                if hh == h:
                    ww = self.yring.one() * w if self.theory == "HT" else w
                    out.append((se, sw, h, ww, c))
        if self.theory == "HT" and (nw, ne) == ("0", "1"):
            r = self.yring
            out.append(("0", "1", EQUIVARIANT, r.y(self.n + 1 - p) - r.y(q), 0))
        return out

    def bottom(self, c: int, nw: str, ne: str) -> list:
        one = self.yring.one() if self.theory == "HT" else 1
        return [(h, one * w, ch) for h, w, ch in self._up(nw, ne) if h in ("0", "1")]


def _grassmannian_cut(pi: Permutation, rho: Permutation, n: int) -> int:
    ds = descent_set(pi) | descent_set(rho)
    if len(ds) > 1:
        raise ValueError(f"desc({pi}, {rho}) > 1: not a Grassmannian pair")
    return min(ds) if ds else 1


def grassmannian_strings(pi: Permutation, rho: Permutation, n: int) -> tuple[tuple, tuple]:
    a = _grassmannian_cut(pi, rho, n)
    al = Alphabet(("0", "1"))
    return perm_to_string(pi, [a], al, n), perm_to_string(rho, [a], al, n)


def grassmannian_puzzles(pi: Permutation, rho: Permutation, theory: str, n: int,
                         yring: YRing = SYMBOLIC):
    lam, mu = grassmannian_strings(pi, rho, n)
    return Enumerator(GrassmannianCatalog(theory, n, yring), lam, mu).puzzles()


def translated_grassmannian_constants(pi: Permutation, rho: Permutation, theory: str, n: int,
                                      yring: YRing = SYMBOLIC) -> SchubertExpansion:
    """Constants from Grassmannian puzzles, each relabeled and checked
    piece by piece against the separated-descent catalog (k = 0, d = 1)."""
    from .sepdesc import SepDescCatalog

    cat = SepDescCatalog(theory, 0, 1, n, yring=yring)
    a3 = cat.alphabets[2]
    out: dict = {}
    for pz in grassmannian_puzzles(pi, rho, theory, n, yring):
        t = from_grassmannian_labels(pz)
        _check_cells(t, cat)
        sigma = string_to_perm(t.nu, a3)
        out[sigma] = out.get(sigma, 0) + t.fugacity
    return SchubertExpansion({s: v for s, v in out.items() if not _zero(v)}, n=n)


def _zero(v) -> bool:
    return v.is_zero() if hasattr(v, "is_zero") else v == 0


def _check_cells(pz: Puzzle, cat) -> None:
    for (p, q), c in pz.cells.items():
        opts = cat.rhombus(p, q, c.nw, c.ne)
        if not any((se, sw, st, w) == (c.se, c.sw, c.state, c.weight) for se, sw, st, w, _ in opts):
            raise AssertionError(f"relabeled cell {c} is not a piece of {cat.rule}")
    for j, b in pz.bottoms.items():
        if not any((s, w) == (b.s, b.weight) for s, w, _ in cat.bottom(j, b.nw, b.ne)):
            raise AssertionError(f"relabeled bottom {b} is not a piece of {cat.rule}")


# ---------------------------------------------------------------------------
# two-step puzzles


class TwoStepCatalog:
    """Two-step pieces as the dictionary preimage of the almost-separated
    pieces with k = 1, d = 2.  K uses the mirror (dual) almost-separated K
    rule, which is the one that extends the known two-step K-theory rule."""

    rule = "twostep"

    def __init__(self, theory: str, n: int):
        from .almostsep import AlmostSepCatalog

        self.theory, self.n = theory, n
        self.inner = AlmostSepCatalog(theory, 1, 2, n, dual=(theory == "K"))
        self._inv = {d: {v: k for k, v in TWOSTEP[d].items()} for d in DIRECTIONS}

    def check_boundary(self, lam: Sequence, mu: Sequence, nu: Sequence | None) -> None:
        for s in (lam, mu) + ((nu,) if nu is not None else ()):
            if any(x not in ("0", "1", "2") for x in s):
                raise BoundaryMismatch("two-step boundaries are 0/1/2 strings")

    def up(self, nw: str, ne: str):
        u = self.inner.up(TWOSTEP["nw"][nw], TWOSTEP["ne"][ne])
        return None if u is None else (self._inv["h"][u[0]],) + tuple(u[1:])

    def down_options(self, h: str) -> list:
        return [(self._inv["nw"][se], self._inv["ne"][sw], w, c)
                for se, sw, w, c in self.inner.down_options(TWOSTEP["h"][h])]

    def joinable(self, nw: str, ne: str) -> bool:
        return self.up(nw, ne) is not None

    def rhombus(self, p: int, q: int, nw: str, ne: str) -> list:
        u = self.up(nw, ne)
        if u is None:
            return []
        h, w, c = u
        return [(se, sw, h, w * dw, c + dc) for se, sw, dw, dc in self.down_options(h)]

    def bottom(self, c: int, nw: str, ne: str) -> list:
        u = self.up(nw, ne)
        if u is None or u[0] not in ("0", "1", "2"):
            return []
        return [u]

    def up_pieces(self) -> set:
        """All up triangles (NW, S, NE)."""
        out = set()
        for a in TWOSTEP_LABELS:
            for c in TWOSTEP_LABELS:
                u = self.up(a, c)
                if u is not None:
                    out.add((a, u[0], c))
        return out

    def down_pieces(self) -> set:
        """All down triangles (SE, N, SW)."""
        return {(se, h, sw) for h in TWOSTEP_LABELS for se, sw, _, _ in self.down_options(h)}


def twostep_strings(pi: Permutation, rho: Permutation, n: int) -> tuple[tuple, tuple]:
    """(NW, NE) = (string of rho, string of pi) over 0 < 1 < 2."""
    ds = sorted(descent_set(pi) | descent_set(rho))
    if len(ds) > 2:
        raise ValueError(f"desc({pi}, {rho}) > 2: not a two-step pair")
    cuts = (ds + [n, n])[:2] if ds else [n, n]
    al = Alphabet(("0", "1", "2"))
    return perm_to_string(rho, cuts, al, n), perm_to_string(pi, cuts, al, n)


def translated_twostep_constants(pi: Permutation, rho: Permutation, theory: str, n: int) -> SchubertExpansion:
    """Constants from two-step puzzles, relabeled into almost-separated puzzles."""
    from .almostsep import AlmostSepCatalog

    lam, mu = twostep_strings(pi, rho, n)
    check = AlmostSepCatalog(theory, 1, 2, n, dual=(theory == "K"))
    a3 = check.alphabets[2]
    out: dict = {}
    for pz in Enumerator(TwoStepCatalog(theory, n), lam, mu).puzzles():
        t = from_twostep_labels(pz)
        _check_cells(t, check)
        sigma = string_to_perm(t.nu, a3)
        out[sigma] = out.get(sigma, 0) + t.fugacity
    return SchubertExpansion({s: v for s, v in out.items() if v != 0}, n=n)


def rotate_up(piece: tuple) -> tuple:
    """Turn an up triangle (NW, S, NE) by 120 degrees."""
    a, h, c = piece
    return h, c, a
