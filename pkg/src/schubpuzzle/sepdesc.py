"""
Separated-descent puzzles: piece catalogs and structure constants.

Diagonal edges carry a single label from 0 < ... < k < _ < k+1 < ... < d
(the blank sits between k and k+1).  A horizontal edge carries the
unordered pair of the two diagonal labels of the triangle above it; on the
S side one of them is the blank and we record only the other.

Triangle orientation.  An up triangle with NW label a and NE label c is an
H piece when exactly one of a, c is blank, or a > c.  A down triangle with
SE label a and SW label c obeys the same rule.  K adds the up triangles
a < c with a <= k < c, and the down triangles a < c on the same side of the
blank.  Every K-triangle weighs -1.

Equivariant rhombus (p, q), all four edges blank, with i = n + 1 - p and
j = q the S positions reached by its two lines: H_T weight y_i - y_j, K_T
weight 1 - y_i/y_j.  In K_T, an up K-triangle inside rhombus (p, q) and the
two rhombi
    NW = _, NE = j, SE = j, SW = _   (j > k)
    NW = i, NE = _, SE = _, SW = i   (i <= k)
carry an extra y_i/y_j.  (Same i, j as above.)

>>> from schubpuzzle.permcore import Permutation
>>> e = sepdesc_constants(Permutation("1362547"), Permutation("7321456"), "H", 7)
>>> sorted(str(s) for s in e.nonzero())
['7461325', '7561234', '7631425', '7641235']
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .laurent import LaurentPoly, RationalFunction
from .permcore import (BLANK, EncodedPair, Permutation, sepdesc_alphabets, sepdesc_choices,
                       sepdesc_encode, string_to_perm)
from .puzzlegrid import EQUIVARIANT, BoundaryMismatch, Enumerator
from .schubring import SYMBOLIC, SchubertExpansion, YRing

THEORIES = ("H", "K", "HT", "KT", "GENERIC_NONEQ", "GENERIC_EQ")


class UnsupportedTheory(ValueError):
    pass


def _rank(x, k: int) -> float:
    return k + 0.5 if x == BLANK else x


def _blank_xor(a, c) -> bool:
    return (a == BLANK) != (c == BLANK)


def horizontal(a, c) -> frozenset:
    return frozenset((a, c))


def display_horizontal(h) -> object:
    """{i, _} shows as i; other pairs as a sorted tuple."""
    if BLANK in h and len(h) == 2:
        (x,) = h - {BLANK}
        return x
    return tuple(sorted(h, key=lambda s: (s == BLANK, s if s != BLANK else 0)))


class SepDescCatalog:
    """Pieces for one theory at fixed (k, d, n).

    yring: how y variables are represented for HT/KT (exact by default).
    point: numeric values {"q": ..., "z1": ...} for the generic theories;
    without it, generic weights are symbolic in q (and z).
    twisted: GENERIC_NONEQ uses the twisted U', D' (whose q -> 0 limit is
    the K catalog); twisted=False gives the plain U, D, whose q = -1
    values are the Euler-characteristic weights.
    """

    rule = "sepdesc"

    def __init__(self, theory: str, k: int, d: int, n: int, yring: YRing = SYMBOLIC,
                 point: Mapping[str, object] | None = None, twisted: bool = True):
        if theory not in THEORIES:
            raise UnsupportedTheory(theory)
        if not 0 <= k <= d:
            raise ValueError(f"need 0 <= k <= d, got k={k}, d={d}")
        self.theory, self.k, self.d, self.n = theory, k, d, n
        # the equivariant generic pieces are the plain R, U of the R-matrix setup
        self.yring, self.point = yring, point
        self.twisted = twisted and theory == "GENERIC_NONEQ"
        self.labels = tuple(range(k + 1)) + (BLANK,) + tuple(range(k + 1, d + 1))
        a1, a2, a3 = sepdesc_alphabets(k, d)
        self.alphabets = (a1, a2, a3)
        self._rh: dict = {}

    # -- boundary ---------------------------------------------------------
    def check_boundary(self, lam: Sequence, mu: Sequence, nu: Sequence | None) -> None:
        a1, a2, a3 = self.alphabets
        generic = self.theory.startswith("GENERIC")
        for name, s, a in (("lambda", lam, a1), ("mu", mu, a2)):
            dom = self.labels if generic else a
            bad = [x for x in s if x not in dom]
            if bad:
                raise BoundaryMismatch(f"{name} has labels {bad} outside {a}")
        if nu is not None:
            bad = [x for x in nu if not isinstance(x, frozenset) and x not in a3]
            if bad:
                raise BoundaryMismatch(f"nu has labels {bad} outside {a3}")

    # -- ring helpers -----------------------------------------------------
    def _q(self):
        if self.point is not None and "q" in self.point:
            return self.point["q"]
        return LaurentPoly.var("q")

    def _ratio(self, a: int, b: int):
        """y_a / y_b in the chosen y-ring."""
        r = self.yring
        return r.y(a) * r.yinv(b)

    def _z(self, p: int, q: int):
        """Spectral ratio z_{n+1-p}/z_q of rhombus (p, q)."""
        a, b = self.n + 1 - p, q
        if self.point is not None:
            return Fraction(self.point[f"z{a}"]) / Fraction(self.point[f"z{b}"])
        return RationalFunction(LaurentPoly.var(f"z{a}"), LaurentPoly.var(f"z{b}"))

    # -- triangles (nonequivariant theories) -------------------------------
    def up(self, nw, ne):
        """Weight of the up triangle (NW, NE), or None."""
        if nw == ne:
            return None
        t, k = self.theory, self.k
        a, c = nw, ne
        if t.startswith("GENERIC"):
            return self._generic_up(a, c)
        if _blank_xor(a, c):
            return 1
        if a == BLANK:
            return None
        if a > c:
            return 1
        if t in ("K", "KT") and a <= k < c:
            return -1
        return None

    def down(self, se, sw):
        """Weight of the down triangle with SE, SW labels, or None."""
        if se == sw:
            return None
        t, k = self.theory, self.k
        a, c = se, sw
        if t.startswith("GENERIC"):
            return self._generic_down(a, c)
        if _blank_xor(a, c):
            return 1
        if a == BLANK:
            return None
        if a > c:
            return 1
        if t in ("K", "KT") and (c <= k or a > k):
            return -1
        return None

    def _generic_up(self, i, j):
        # U(z)^{ij}: i on NW, j on NE
        k, q = self.k, self._q()
        ri, rj = _rank(i, k), _rank(j, k)
        if not self.twisted:
            return 1 if ri > rj else -q
        if ri > rj or BLANK in (i, j):
            return 1
        if ri < k + 0.5 < rj:
            return -1
        return -q * q

    def _generic_down(self, se, sw):
        # D(z)^{a}_{ij}: i on SW, j on SE
        k, q = self.k, self._q()
        i, j = sw, se
        ri, rj = _rank(i, k), _rank(j, k)
        if not self.twisted:
            return 1 if ri < rj else -_inv(q)
        if ri < rj or BLANK in (i, j):
            return 1
        if rj < k + 0.5 < ri:
            return -q * q
        return -1

    # -- catalog interface ------------------------------------------------
    def rhombus(self, p: int, q: int, nw, ne) -> list:
        key = (p, q, nw, ne)
        hit = self._rh.get(key)
        if hit is None:
            hit = self._rh[key] = self._rhombus(p, q, nw, ne)
        return hit

    def _rhombus(self, p: int, q: int, nw, ne) -> list:
        t = self.theory
        if t == "GENERIC_EQ":
            return self._generic_rhombus(p, q, nw, ne)
        out = []
        n, k = self.n, self.k
        i, j = n + 1 - p, q
        u = self.up(nw, ne)
        if u is not None:
            h = horizontal(nw, ne)
            for se, sw in ((nw, ne), (ne, nw)):
                dn = self.down(se, sw)
                if dn is None:
                    continue
                w = u * dn
                charge = (u == -1) + (dn == -1) if t in ("K", "KT") else 0
                if t == "KT":
                    w = self.yring.one() * w
                    if u == -1:
                        w = w * self._ratio(i, j)
                    if _special(nw, ne, se, sw, k):
                        w = w * self._ratio(i, j)
                elif t == "HT":
                    w = self.yring.one() * w
                out.append((se, sw, h, w, charge))
        if nw == BLANK and ne == BLANK and t in ("HT", "KT"):
            r = self.yring
            w = r.y(i) - r.y(j) if t == "HT" else r.one() - self._ratio(i, j)
            out.append((BLANK, BLANK, EQUIVARIANT, w, 0))
        return out

    def _generic_rhombus(self, p: int, q: int, i, j) -> list:
        """Normalized R_{1,2}(z): NW i, NE j -> SE l, SW m, z = z_{n+1-p}/z_q."""
        k, qq = self.k, self._q()
        z = self._z(p, q)
        den = 1 - qq * qq * z
        if i == j:
            return [(i, j, EQUIVARIANT, _div(qq * (1 - z), den), 0)]
        out = [(i, j, EQUIVARIANT, 1, 0)]  # pass through
        if _rank(i, k) < _rank(j, k):
            w = _div(-qq * (1 - qq * qq) * z, den)
        else:
            w = _div(-(1 - qq * qq), qq * den)
        out.append((j, i, EQUIVARIANT, w, 0))  # i exits SW, j exits SE
        return out

    def bottom(self, c: int, nw, ne) -> list:
        u = self.up(nw, ne)
        if u is None:
            return []
        h = horizontal(nw, ne)
        s = display_horizontal(h) if BLANK in h else h
        if self.theory in ("HT", "KT"):
            u = self.yring.one() * u
        return [(s, u, int(u == -1) if self.theory in ("K", "KT") else 0)]


def _inv(x):
    if isinstance(x, LaurentPoly):
        return x ** -1
    return Fraction(1) / x


def _div(a, b):
    if isinstance(a, (RationalFunction, LaurentPoly)) or isinstance(b, (RationalFunction, LaurentPoly)):
        return RationalFunction.coerce(a) / RationalFunction.coerce(b)
    return Fraction(a) / Fraction(b)


def _special(nw, ne, se, sw, k: int) -> bool:
    if nw == BLANK and sw == BLANK and ne == se and ne != BLANK and ne > k:
        return True
    if ne == BLANK and se == BLANK and nw == sw and nw != BLANK and nw <= k:
        return True
    return False


def sepdesc_catalog(theory: str, k: int, d: int, n: int, **kw) -> SepDescCatalog:
    return SepDescCatalog(theory, k, d, n, **kw)


def constants_from_encoding(e: EncodedPair, theory: str, yring: YRing = SYMBOLIC) -> SchubertExpansion:
    """Puzzle sums for an encoded pair, keyed by sigma = f_{A3}(nu)."""
    cat = SepDescCatalog(theory, e.k, e.d, e.n, yring=yring)
    a3 = cat.alphabets[2]
    out: dict = {}
    counts: dict = {}
    for nu, (cnt, w) in Enumerator(cat, e.lam, e.mu).tally().items():
        sigma = string_to_perm(nu, a3)
        out[sigma] = out.get(sigma, 0) + w
        counts[sigma] = counts.get(sigma, 0) + cnt
    if yring.mod is not None:
        out = {s: v % yring.mod for s, v in out.items()}
    exp = SchubertExpansion({s: v for s, v in out.items() if not _is_zero(v)}, n=e.n)
    exp.counts = counts
    return exp


def _is_zero(v) -> bool:
    return v.is_zero() if hasattr(v, "is_zero") else v == 0


def sepdesc_constants(pi: Permutation, rho: Permutation, theory: str, n: int | None = None,
                      k: int | None = None, yring: YRing = SYMBOLIC) -> SchubertExpansion:
    """Structure constants c^{pi rho}_sigma from separated-descent puzzles.

    >>> from schubpuzzle.permcore import Permutation
    >>> e = sepdesc_constants(Permutation("2431"), Permutation("2134"), "KT", k=1)
    >>> {str(s): str(c) for s, c in sorted(e.nonzero().items())}
    {'2431': '1 - y1^-1*y2', '3421': 'y1^-1*y2', '4231': 'y1^-1*y2', '4321': '-y1^-1*y2'}
    """
    if theory not in ("H", "K", "HT", "KT"):
        raise UnsupportedTheory(f"structure constants need H, K, HT or KT, not {theory}")
    e = sepdesc_encode(pi, rho, n, k)
    return constants_from_encoding(e, theory, yring)


def all_encodings(pi: Permutation, rho: Permutation, n: int) -> list[EncodedPair]:
    return sepdesc_choices(pi, rho, n)


def from_grassmannian_labels(pz):
    """Relabel a Grassmannian (0/1/10) puzzle as a separated-descent puzzle."""
    from .dictionaries import from_grassmannian_labels as f

    return f(pz)
