"""
Almost-separated-descent puzzles: piece catalogs with inversion charges,
and the structure constants they produce.

Diagonal edges carry subsets X of {0..d} (stored as frozensets); a boundary
letter i becomes {i} and the blank becomes the empty set.  Horizontal edges
carry Down(i) ("v<i>"), Up(j) ("^<j>"), "even" or "odd".  Think of each
number as a path running east with NE and SE steps; a label on a horizontal edge says
which path crosses it, and in which direction.

Up triangles, written (NW, horizontal, NE):
    (iX, v i, X)    path i leaves through the bottom
    (X, ^ j, Xj)    path j enters through the bottom
    (X, even, X) and (X, odd, X) by the parity of #X
Down triangles (SE, horizontal, SW) are the same shapes rotated by 180
degrees with the arrow reversed back, so (iX, v i, X) again means path i
enters through the top and leaves through the SE edge.

H keeps i < X, X < j, and only the parity pieces on the empty set and on
singletons.  K widens the list and weighs each triangle (-1)^inv.

>>> from schubpuzzle.permcore import Permutation
>>> e = almostsep_constants(Permutation("2543167"), Permutation("4132567"), "H")
>>> sorted("".join(map(str, s.padded(7))) for s in e.nonzero())
['5462137', '5632147', '6352147', '6432157', '6523147', '7253146', '7342156']
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .laurent import LaurentPoly
from .permcore import (BLANK, EncodedPair, Permutation, almostsep_alphabets, almostsep_choices,
                       almostsep_encode, string_to_perm)
from .puzzlegrid import BoundaryMismatch, Enumerator
from .schubring import SchubertExpansion

THEORIES = ("H", "K", "GENERIC_NONEQ")
EVEN, ODD = "even", "odd"


class UnsupportedTheory(ValueError):
    pass


def down(i: int) -> str:
    return f"v{i}"


def up(j: int) -> str:
    return f"^{j}"


def arrow(h: str) -> tuple[str, int] | None:
    """("v", i) or ("^", j) for an arrow label, None for even/odd."""
    if h in (EVEN, ODD):
        return None
    return h[0], int(h[1:])


def to_sets(s: Sequence) -> tuple:
    """Boundary letters as diagonal labels: i -> {i}, blank -> {}.

    >>> to_sets((1, "_"))
    (frozenset({1}), frozenset())
    """
    return tuple(frozenset() if x == BLANK else frozenset((x,)) for x in s)


def inversion_charge(shape: str, h: str, x: Iterable[int]) -> int:
    """Inversion charge of a triangle, given by its horizontal label h and
    the set X of the paths that do not use the horizontal edge.

    `shape` ("up" or "down") does not change the value.

    >>> inversion_charge("up", "even", ())
    0
    >>> inversion_charge("up", "odd", {0, 1, 2})
    1
    >>> inversion_charge("up", "v1", {0})
    1
    """
    x = set(x)
    a = arrow(h)
    if a is None:
        return len(x) // 2
    kind, i = a
    if kind == "v":
        return sum(1 for t in x if t < i)
    return sum(1 for t in x if t > i)


def _neg_q_pow(q, e: int):
    base = -q
    if e >= 0 or isinstance(base, LaurentPoly):
        return base ** e
    return Fraction(base) ** e


class AlmostSepCatalog:
    """Triangle pieces for one theory at fixed (k, d, n).

    GENERIC_NONEQ uses the twisted U', D' by default, whose q -> 0 limit is
    the K catalog; twisted=False gives the plain U, D (all equal to 1 at
    q = -1).  point={"q": value} evaluates q.  dual=True gives the mirror
    rule: a piece is kept when its mirror image (left-right flip, i -> d-i,
    arrows reversed) is a piece of the catalog with k' = d - k.
    """

    rule = "almostsep"

    def __init__(self, theory: str, k: int, d: int, n: int, point: Mapping[str, object] | None = None,
                 twisted: bool = True, dual: bool = False, colors: Iterable[int] | None = None):
        if theory not in THEORIES:
            raise UnsupportedTheory(f"almost-separated puzzles support {THEORIES}, not {theory}")
        if not 0 <= k <= d:
            raise ValueError(f"need 0 <= k <= d, got k={k}, d={d}")
        self.theory, self.k, self.d, self.n = theory, k, d, n
        self.point = point
        self.twisted = twisted
        self.dual = dual
        self.colors = tuple(sorted(set(range(d + 1)) if colors is None else set(colors)))
        self.alphabets = almostsep_alphabets(k, d)
        self._mirror = (AlmostSepCatalog(theory, d - k, d, n, point, twisted,
                                         colors=[d - c for c in self.colors]) if dual else None)
        self._rh: dict = {}

    # -- boundary ---------------------------------------------------------
    def check_boundary(self, lam: Sequence, mu: Sequence, nu: Sequence | None) -> None:
        for name, s in (("lambda", lam), ("mu", mu)):
            bad = [x for x in s if not (isinstance(x, frozenset) and len(x) <= 1 and x <= set(range(self.d + 1)))]
            if bad:
                raise BoundaryMismatch(f"{name} must be singletons or empty sets over 0..{self.d}, got {bad}")
        if nu is not None:
            a3 = self.alphabets[2]
            bad = [x for x in nu if x not in a3]
            if bad:
                raise BoundaryMismatch(f"nu has labels {bad} outside {a3}")

    def _q(self):
        if self.point is not None and "q" in self.point:
            return self.point["q"]
        return LaurentPoly.var("q")

    # -- pieces -----------------------------------------------------------
    def up(self, nw: frozenset, ne: frozenset):
        """(horizontal, weight, charge) of the up triangle, or None."""
        if self.dual:
            m = self._mirror.up(_flip(ne, self.d), _flip(nw, self.d))
            return None if m is None else (_flip_h(m[0], self.d),) + m[1:]
        if nw == ne:
            h, x = (EVEN if len(nw) % 2 == 0 else ODD), nw
        elif len(nw) == len(ne) + 1 and ne < nw:
            (i,) = nw - ne
            h, x = down(i), ne
        elif len(ne) == len(nw) + 1 and nw < ne:
            (j,) = ne - nw
            h, x = up(j), nw
        else:
            return None
        if not self._up_ok(h, x):
            return None
        return h, self._up_weight(h, x), inversion_charge("up", h, x)

    def _up_ok(self, h: str, x: frozenset) -> bool:
        t, k = self.theory, self.k
        if t == "GENERIC_NONEQ":
            return True
        a = arrow(h)
        if a is None:
            if t == "H":
                return len(x) == (0 if h == EVEN else 1)
            return True
        kind, i = a
        if kind == "v":
            return all(i < t_ for t_ in x if t == "H" or t_ >= k)
        return all(t_ < i for t_ in x) or (t == "K" and i >= k)

    def _up_weight(self, h: str, x: frozenset):
        t, k = self.theory, self.k
        if t == "H":
            return 1
        sign = (-1) ** inversion_charge("up", h, x)
        if t == "K":
            return sign
        a = arrow(h)
        q = self._q()
        if not self.twisted:
            return _neg_q_pow(q, _untwisted_up_exp(h, x, k, self.d))
        if a is None:
            return sign
        kind, i = a
        if kind == "v":
            e = 2 * sum(1 for t_ in x if k <= t_ < i)
        else:
            e = 2 * sum(1 for t_ in x if t_ > i) if i < k else 0
        return sign * _neg_q_pow(q, e)

    def down_options(self, h: str) -> list:
        """[(se, sw, weight, charge)] for down triangles below horizontal h."""
        if self.dual:
            return [(_flip(sw, self.d), _flip(se, self.d), w, c)
                    for se, sw, w, c in self._mirror.down_options(_flip_h(h, self.d))]
        t = self.theory
        a = arrow(h)
        out = []
        if a is None:
            par = 0 if h == EVEN else 1
            if t in ("H", "K"):
                xs = [frozenset()] if h == EVEN else [frozenset((c,)) for c in self.colors]
            else:
                xs = [x for x in _subsets(self.colors) if len(x) % 2 == par]
            for x in xs:
                out.append((x, x) + self._down_wc(h, x))
            return out
        kind, i = a
        rest = [c for c in self.colors if c != i]
        for x in _subsets(rest):
            if not self._down_ok(kind, i, x):
                continue
            if kind == "v":
                out.append((x | {i}, x) + self._down_wc(h, x))
            else:
                out.append((x, x | {i}) + self._down_wc(h, x))
        return out

    def _down_ok(self, kind: str, i: int, x: frozenset) -> bool:
        t, k = self.theory, self.k
        if t == "GENERIC_NONEQ":
            return True
        if kind == "v":
            return all(i < t_ for t_ in x if t == "H" or t_ <= k - 1)
        return all(t_ < i for t_ in x) or (t == "K" and i < k)

    def _down_wc(self, h: str, x: frozenset) -> tuple:
        t, k = self.theory, self.k
        c = inversion_charge("down", h, x)
        if t == "H":
            return 1, c
        sign = (-1) ** c
        if t == "K":
            return sign, c
        q = self._q()
        if not self.twisted:
            return _neg_q_pow(q, -_untwisted_up_exp(h, x, k, self.d)), c
        a = arrow(h)
        if a is None:
            e = len(x) if h == EVEN else len(x) - 1
        else:
            kind, i = a
            if kind == "v":
                e = 2 * sum(1 for t_ in x if t_ < min(i, k))
            else:
                e = 2 * sum(1 for t_ in x if t_ > i) if i >= k else 0
        return sign * _neg_q_pow(q, e), c

    # -- catalog interface ------------------------------------------------
    def joinable(self, nw, ne) -> bool:
        """Whether some up triangle has these diagonal labels."""
        key = ("join", nw, ne)
        hit = self._rh.get(key)
        if hit is None:
            hit = self._rh[key] = self.up(nw, ne) is not None
        return hit

    def rhombus(self, p: int, q: int, nw, ne) -> list:
        key = (nw, ne)
        hit = self._rh.get(key)
        if hit is None:
            hit = self._rh[key] = self._rhombus(nw, ne)
        return hit

    def _rhombus(self, nw, ne) -> list:
        u = self.up(nw, ne)
        if u is None:
            return []
        h, w, c = u
        return [(se, sw, h, w * dw, c + dc) for se, sw, dw, dc in self.down_options(h)]

    def bottom(self, c: int, nw, ne) -> list:
        u = self.up(nw, ne)
        if u is None or u[0] == EVEN:
            return []
        return [u]


def _untwisted_up_exp(h: str, x: frozenset, k: int, d: int) -> int:
    """log_{-q} of the plain U entry (D is its inverse)."""
    r = sum(d - a for a in x if a < k) + sum(a - k for a in x if a > k)
    a = arrow(h)
    if a is None:
        return r
    _, i = a
    if i < k:
        return r + sum(1 for t in x if t > i)
    return r + sum(1 for t in x if k <= t < i)


def _subsets(items: Sequence[int]):
    for r in range(len(items) + 1):
        for c in itertools.combinations(items, r):
            yield frozenset(c)


def _flip(x: frozenset, d: int) -> frozenset:
    return frozenset(d - a for a in x)


def _flip_h(h: str, d: int) -> str:
    a = arrow(h)
    if a is None:
        return h
    kind, i = a
    return up(d - i) if kind == "v" else down(d - i)


def almostsep_catalog(theory: str, k: int, d: int, n: int, **kw) -> AlmostSepCatalog:
    return AlmostSepCatalog(theory, k, d, n, **kw)


def nu_content(lam: Sequence, mu: Sequence, k: int) -> list:
    """Content of the S side: Down(i) for i < k in lam, Up(j) for j > k in
    mu, and Odd once for each copy of k in lam.

    >>> from schubpuzzle.permcore import parse_string
    >>> nu_content(parse_string("1_20___"), parse_string("4_32_44"), 2)
    ['v0', 'v1', 'odd', '^3', '^4', '^4', '^4']
    """
    out = [down(i) for i in lam if i != BLANK and i < k]
    out += [ODD] * sum(1 for i in lam if i == k)
    out += [up(j) for j in mu if j != BLANK and j > k]
    order = {s: r for r, s in enumerate(almostsep_alphabets(k, max([k] + [x for x in mu if x != BLANK]))[2].symbols)}
    return sorted(out, key=lambda s: order[s])


def catalog_for(e: EncodedPair, theory: str, dual: bool = False, **kw) -> AlmostSepCatalog:
    colors = {x for x in e.lam + e.mu if x != BLANK}
    return AlmostSepCatalog(theory, e.k, e.d, e.n, dual=dual, colors=colors, **kw)


def constants_from_encoding(e: EncodedPair, theory: str, dual: bool = False) -> SchubertExpansion:
    """Signed puzzle counts for an encoded pair, keyed by sigma = f_{A3}(nu)."""
    if theory not in ("H", "K"):
        raise UnsupportedTheory(f"structure constants need H or K, not {theory}")
    cat = catalog_for(e, theory, dual)
    a3 = cat.alphabets[2]
    out: dict = {}
    counts: dict = {}
    for nu, (cnt, w) in Enumerator(cat, to_sets(e.lam), to_sets(e.mu)).tally().items():
        sigma = string_to_perm(nu, a3)
        out[sigma] = out.get(sigma, 0) + w
        counts[sigma] = counts.get(sigma, 0) + cnt
    exp = SchubertExpansion({s: v for s, v in out.items() if v != 0}, n=e.n)
    exp.counts = counts
    return exp


def almostsep_constants(pi: Permutation, rho: Permutation, theory: str, n: int | None = None,
                        k: int | None = None, dual: bool = False) -> SchubertExpansion:
    """Structure constants c^{pi rho}_sigma from almost-separated-descent puzzles.

    >>> from schubpuzzle.permcore import Permutation
    >>> almostsep_constants(Permutation(), Permutation(), "K", 3).nonzero()
    {Permutation(1): 1}
    """
    e = almostsep_encode(pi, rho, n, k)
    return constants_from_encoding(e, theory, dual)


def all_encodings(pi: Permutation, rho: Permutation, n: int) -> list[EncodedPair]:
    return almostsep_choices(pi, rho, n)


def from_twostep_labels(pz):
    """Relabel a two-step puzzle as an almost-separated puzzle."""
    from .dictionaries import from_twostep_labels as f

    return f(pz)
