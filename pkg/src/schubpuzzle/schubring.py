"""
Schubert and Grothendieck polynomials from divided-difference recursions,
and expansion of products in these bases.  This module is the oracle the
puzzle rules are checked against, so it uses nothing from the puzzle side.

Internally a polynomial in x_1..x_N is a dict {exponent tuple: coefficient}.
Coefficients are ints (single polynomials, or double ones evaluated at a
numeric y modulo a prime) or LaurentPolys in the y variables (exact double
polynomials).  The kernels below only use +, -, * on coefficients.

Conventions:
  S^{w0} = prod x_i^{n-i}           (double: prod_{i+j<=n} (x_i - y_j))
  G^{w0} = prod (1 - x_i)^{n-i}     (double: prod_{i+j<=n} (1 - x_i/y_j))
  S^{w s_i} = d_i S^w and G^{w s_i} = dbar_i G^w when w(i) > w(i+1), with
  d_i f = (f - s_i f)/(x_i - x_{i+1}) and
  dbar_i f = (x_{i+1} f - x_i s_i f)/(x_{i+1} - x_i).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .laurent import LaurentPoly
from .permcore import Permutation, bruhat_leq, descent_set, from_code, inversion_number, perms

THEORIES = ("H", "K", "HT", "KT")

XPoly = dict  # {tuple[int, ...]: coefficient}

# a Mersenne prime; numeric checks of double polynomials run in Z/P
PRIME = (1 << 61) - 1


class MalformedBasis(RuntimeError):
    """A lead monomial did not correspond to a basis element (a bug, not bad input)."""


class ResidualNonzero(RuntimeError):
    """The expansion did not terminate inside the candidate set."""


# ---------------------------------------------------------------------------
# kernels on XPoly


def _add_into(acc: dict, mono: tuple, c) -> None:
    s = acc.get(mono)
    s = c if s is None else s + c
    if s == 0 or (isinstance(s, LaurentPoly) and s.is_zero()):
        acc.pop(mono, None)
    else:
        acc[mono] = s


def _clean(f: dict, mod: int | None) -> dict:
    if mod is None:
        return f
    out = {}
    for m, c in f.items():
        c %= mod
        if c:
            out[m] = c
    return out


def xmul(f: XPoly, g: XPoly, mod: int | None = None) -> XPoly:
    out: dict = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            _add_into(out, m, c1 * c2)
    return _clean(out, mod)


def ddiff(f: XPoly, i: int) -> XPoly:
    """d_i on x_i, x_{i+1} (1-based i).  Exact on polynomials."""
    a_i, b_i = i - 1, i
    out: dict = {}
    for m, c in f.items():
        a, b = m[a_i], m[b_i]
        if a == b:
            continue
        # (x^a y^b - x^b y^a)/(x - y) = sign * sum x^{hi-1-t} y^{lo+t}
        lo, hi, sign = (b, a, 1) if a > b else (a, b, -1)
        cc = c if sign == 1 else -c
        base = list(m)
        for t in range(hi - lo):
            base[a_i] = hi - 1 - t
            base[b_i] = lo + t
            _add_into(out, tuple(base), cc)
    return out


def demazure(f: XPoly, i: int) -> XPoly:
    """dbar_i f = -d_i(x_{i+1} f)."""
    shifted = {}
    for m, c in f.items():
        mm = list(m)
        mm[i] += 1
        shifted[tuple(mm)] = -c
    return ddiff(shifted, i)


def xeval(f: XPoly, point: list, mod: int | None = None):
    """Evaluate at x_i = point[i-1]; point entries are coefficients of the ring."""
    total = 0
    for m, c in f.items():
        t = c
        for v, e in zip(point, m):
            if e:
                t = t * (pow(v, e, mod) if mod is not None else v ** e)
                if mod is not None:
                    t %= mod
        total = total + t
    return total % mod if mod is not None else total


# ---------------------------------------------------------------------------
# coefficient rings for the y variables


@dataclass(frozen=True)
class YRing:
    """How the y variables are represented.

    kind: "zero" (y = 0, single Schubert), "one" (y = 1, single Grothendieck),
    "symbolic" (exact LaurentPoly in y), "mod" (y_j = values[j-1] in Z/PRIME).
    """

    kind: str
    values: tuple = ()

    @property
    def mod(self) -> int | None:
        return PRIME if self.kind == "mod" else None

    def y(self, j: int):
        if self.kind == "zero":
            return 0
        if self.kind == "one":
            return 1
        if self.kind == "symbolic":
            return LaurentPoly.var(f"y{j}")
        return self.values[j - 1] % PRIME

    def yinv(self, j: int):
        if self.kind == "zero":
            raise ZeroDivisionError("1/y at y = 0")
        if self.kind == "one":
            return 1
        if self.kind == "symbolic":
            return LaurentPoly.var(f"y{j}", -1)
        return pow(self.values[j - 1], PRIME - 2, PRIME)

    def one(self):
        return LaurentPoly.const(1) if self.kind == "symbolic" else 1

    def is_zero(self, c) -> bool:
        if isinstance(c, LaurentPoly):
            return c.is_zero()
        return c % PRIME == 0 if self.kind == "mod" else c == 0


SINGLE_H = YRing("zero")
SINGLE_K = YRing("one")
SYMBOLIC = YRing("symbolic")


def random_yring(n: int, rng: random.Random) -> YRing:
    return YRing("mod", tuple(rng.randrange(2, PRIME - 1) for _ in range(n + 1)))


def _is_k(theory: str) -> bool:
    return theory in ("K", "KT")


def ring_for(theory: str, ring: YRing | None = None) -> YRing:
    if theory in ("H", "K"):
        return SINGLE_H if theory == "H" else SINGLE_K
    return SYMBOLIC if ring is None else ring


# ---------------------------------------------------------------------------
# Schubert / Grothendieck polynomials as XPoly


def _seed(theory: str, n: int, ring: YRing) -> XPoly:
    N = n  # x_n never appears but d_{n-1} needs the slot
    zero = (0,) * N
    f: XPoly = {zero: ring.one()}
    for i in range(1, n):
        xi = tuple(1 if t == i - 1 else 0 for t in range(N))
        for j in range(1, n - i + 1):
            if _is_k(theory):
                fac = {zero: ring.one(), xi: -ring.yinv(j)}
            else:
                fac = {xi: ring.one()}
                if ring.kind != "zero":
                    fac[zero] = -ring.y(j)
            f = xmul(f, fac, ring.mod)
    return f


class PolyTable:
    """All basis polynomials of S_n for one theory and y-ring, computed once
    by walking down from w0 through the weak order."""

    def __init__(self, theory: str, n: int, ring: YRing):
        self.theory, self.n, self.ring = theory, n, ring
        op = demazure if _is_k(theory) else ddiff
        w0 = Permutation(range(n, 0, -1))
        table = {w0: _seed(theory, n, ring)}
        frontier = [w0]
        while frontier:
            nxt = []
            for w in frontier:
                word = w.padded(n)
                for i in range(1, n):
                    if word[i - 1] > word[i]:
                        v = w.swap_positions(i)
                        if v not in table:
                            table[v] = _clean(op(table[w], i), ring.mod)
                            nxt.append(v)
            frontier = nxt
        self.table = table

    def __getitem__(self, w: Permutation) -> XPoly:
        return self.table[w]


@lru_cache(maxsize=64)
def poly_table(theory: str, n: int, ring: YRing) -> PolyTable:
    return PolyTable(theory, n, ring)


def _to_laurent(f: XPoly) -> LaurentPoly:
    out = LaurentPoly()
    for m, c in f.items():
        mono = LaurentPoly.monomial({f"x{i}": e for i, e in enumerate(m, 1)})
        out = out + mono * c
    return out


def _from_laurent(f: LaurentPoly, N: int) -> XPoly:
    """Split a LaurentPoly into x-exponent tuples with y-LaurentPoly coefficients."""
    out: dict = {}
    for mono, c in f.terms.items():
        xs = [0] * N
        rest = []
        for v, e in mono:
            if v.startswith("x"):
                i = int(v[1:])
                if i > N or e < 0:
                    raise ValueError(f"x-exponent out of range in {f}")
                xs[i - 1] = e
            else:
                rest.append((v, e))
        _add_into(out, tuple(xs), LaurentPoly({tuple(rest): c}))
    return out


def _size(p: Permutation, N: int | None) -> int:
    return max(len(p), 1) if N is None else max(N, len(p), 1)


def schubert(p: Permutation, double: bool = False, N: int | None = None) -> LaurentPoly:
    """S^p as a LaurentPoly (x and, if double, y variables).

    >>> str(schubert(Permutation("321")))
    'x1^2*x2'
    """
    n = _size(p, N)
    return _to_laurent(poly_table("HT" if double else "H", n, SYMBOLIC if double else SINGLE_H)[p])


def grothendieck(p: Permutation, double: bool = False, N: int | None = None) -> LaurentPoly:
    """G^p.

    >>> str(grothendieck(Permutation("2134"), double=True))
    '1 - x1*y1^-1'
    """
    n = _size(p, N)
    return _to_laurent(poly_table("KT" if double else "K", n, SYMBOLIC if double else SINGLE_K)[p])


def divided_difference(f: LaurentPoly, i: int) -> LaurentPoly:
    N = _xcount(f, i + 1)
    return _to_laurent(ddiff(_from_laurent(f, N), i))


def demazure_op(f: LaurentPoly, i: int) -> LaurentPoly:
    N = _xcount(f, i + 1)
    return _to_laurent(demazure(_from_laurent(f, N), i))


def _xcount(f: LaurentPoly, at_least: int) -> int:
    idx = [int(v[1:]) for v in f.variables() if v.startswith("x")]
    return max(idx + [at_least])


def psi(f: LaurentPoly, i: int) -> LaurentPoly:
    """Ring endomorphism x_i -> 0, x_j -> x_{j-1} for j > i, x_j fixed for j < i."""
    out = LaurentPoly()
    for mono, c in f.terms.items():
        new = {}
        dead = False
        for v, e in mono:
            if v.startswith("x"):
                j = int(v[1:])
                if j == i:
                    dead = True
                    break
                v = f"x{j - 1}" if j > i else v
            new[v] = new.get(v, 0) + e
        if not dead:
            out = out + LaurentPoly.monomial(new, c)
    return out


# ---------------------------------------------------------------------------
# expansions


@dataclass
class SchubertExpansion:
    """coefficients: sigma -> coefficient; residual: terms outside S_n were dropped."""

    coefficients: dict = field(default_factory=dict)
    residual: bool = False
    n: int = 0

    def nonzero(self) -> dict:
        return {s: c for s, c in self.coefficients.items() if not _coeff_zero(c)}

    def __eq__(self, other) -> bool:
        a, b = self.nonzero(), other.nonzero() if isinstance(other, SchubertExpansion) else other
        if set(a) != set(b):
            return False
        return all(a[s] == b[s] for s in a)


def _coeff_zero(c) -> bool:
    return c.is_zero() if hasattr(c, "is_zero") else c == 0


def _xdegree(f: LaurentPoly) -> int:
    return f.degree([v for v in f.variables() if v.startswith("x")])


def _order(m: tuple) -> tuple:
    # graded reverse-lex: x^code(s) leads S^s
    return (sum(m), m[::-1])


def _trim(m: tuple) -> tuple:
    m = list(m)
    while m and m[-1] == 0:
        m.pop()
    return tuple(m)


def expand_schubert(f: LaurentPoly) -> SchubertExpansion:
    """Greedy expansion: strip off leading x-monomials x^code(s) * S^s.

    Works for single and double Schubert polynomials (coefficients Laurent in y).

    >>> e = expand_schubert(schubert(Permutation("132")) * schubert(Permutation("132")))
    >>> sorted(str(s) for s in e.nonzero())
    ['1423', '231']
    """
    rem = f
    out: dict = {}
    double = any(v.startswith("y") for v in f.variables())
    steps = 0
    while not rem.is_zero():
        N = _xcount(rem, 1)
        xp = _from_laurent(rem, N)
        lead = max(xp, key=_order)
        coeff = xp[lead]
        sigma = from_code(lead)
        basis = schubert(sigma, double=double, N=len(sigma))
        bl = _from_laurent(basis, max(N, _xcount(basis, 1)))
        blead = max(bl, key=_order)
        if _trim(blead) != _trim(lead):
            raise MalformedBasis(f"lead of S^{sigma} is {blead}, expected {lead}")
        if bl[blead] != 1:
            raise MalformedBasis(f"lead coefficient of S^{sigma} is {bl[blead]}")
        out[sigma] = out.get(sigma, 0) + coeff
        rem = rem - basis * coeff
        steps += 1
        if steps > 10000:
            raise ResidualNonzero("greedy expansion did not terminate")
    return SchubertExpansion({s: c for s, c in out.items() if not _coeff_zero(c)})


def expand_grothendieck(f: LaurentPoly, double: bool | None = None, n: int | None = None) -> SchubertExpansion:
    """Expand f in Grothendieck polynomials.

    Single: greedy on lowest-degree lex-leading terms after x -> 1 - x.  Double: coefficient extraction by
    Demazure chains evaluated at x = y, restricted to S_n.
    """
    if double is None:
        double = any(v.startswith("y") for v in f.variables())
    if double:
        if n is None:
            raise ValueError("double expansion needs the size n")
        N = n
        xp = _from_laurent(f, max(N, _xcount(f, 1)))
        if len(next(iter(xp))) > N:
            raise ValueError(f"f uses variables beyond x{N}")
        coeffs = extract_coefficients(xp, "KT", n, SYMBOLIC, candidates(n))
        return SchubertExpansion(coeffs, residual=True, n=n)
    # G^s(1 - x) has lowest homogeneous part S^s(x), so expand greedily there
    flip = _one_minus_x
    rem = flip(f)
    out: dict = {}
    steps = 0
    while not rem.is_zero():
        xs = [v for v in rem.variables() if v.startswith("x")]
        low = rem.homogeneous_part(rem.min_degree(xs), xs)
        xp = _from_laurent(low, _xcount(low, 1))
        lead = max(xp, key=_order)
        sigma = from_code(lead)
        coeff = xp[lead]
        out[sigma] = out.get(sigma, 0) + coeff
        rem = rem - flip(grothendieck(sigma, N=len(sigma))) * coeff
        steps += 1
        if steps > 10000:
            raise ResidualNonzero("greedy expansion did not terminate")
    return SchubertExpansion({s: c for s, c in out.items() if c})


def _one_minus_x(f: LaurentPoly) -> LaurentPoly:
    xs = [v for v in f.variables() if v.startswith("x")]
    return f.subs({v: 1 - LaurentPoly.var(v) for v in xs}) if xs else f


def candidates(n: int, allowed_descents: Iterable[int] | None = None, min_length: int = 0) -> list[Permutation]:
    """Permutations of S_n with descents inside the allowed set, sorted by length."""
    allowed = None if allowed_descents is None else set(allowed_descents)
    out = [w for w in perms(n)
           if inversion_number(w) >= min_length and (allowed is None or descent_set(w) <= allowed)]
    out.sort(key=lambda w: (inversion_number(w), w.word))
    return out


def extract_coefficients(f: XPoly, theory: str, n: int, ring: YRing, cands: list[Permutation]) -> dict:
    """Coefficients of f in the theory's basis, for every sigma in cands.

    cands must contain the support of f inside S_n.  Schubert:
    c_w = (d_{w} f)|_{x=y}.  Grothendieck: e(w) = (dbar_{w} f)|_{x=y} equals
    the sum of c_u over u <= w (Bruhat), which is inverted over cands.
    The operator for w is applied as g_w = op_b(g_{s_b w}) for a left
    descent b of w.
    """
    op = demazure if _is_k(theory) else ddiff
    mod = ring.mod
    point = [ring.y(j) for j in range(1, len(next(iter(f), (0,))) + 1)] if f else []
    memo: dict = {Permutation(): f}

    def chain(w: Permutation) -> XPoly:
        g = memo.get(w)
        if g is not None:
            return g
        inv = w.inverse().padded(n)
        b = next(b for b in range(1, n) if inv[b - 1] > inv[b])
        g = _clean(op(chain(w.swap_values(b)), b), mod)
        memo[w] = g
        return g

    evals = {}
    for w in cands:
        g = chain(w)
        evals[w] = xeval(g, point, mod) if g else 0
    if not _is_k(theory):
        return evals
    coeffs: dict = {}
    for w in cands:  # sorted by length
        c = evals[w]
        for u, cu in coeffs.items():
            if not _coeff_zero(cu) and u != w and bruhat_leq(u, w):
                c = c - cu
        if mod is not None:
            c %= mod
        coeffs[w] = c
    return coeffs


def oracle_constants(pi: Permutation, rho: Permutation, theory: str, n: int | None = None,
                     ring: YRing | None = None) -> SchubertExpansion:
    """Structure constants c^{pi rho}_sigma for sigma in S_n by polynomial algebra.

    ring defaults to exact y-arithmetic; pass random_yring(...) for a fast
    numeric check of HT/KT (values in Z/PRIME at a random y).
    """
    if theory not in THEORIES:
        raise ValueError(f"unknown theory {theory}")
    n = max(pi.size, rho.size, 1) if n is None else n
    ring = ring_for(theory, ring)
    tab = poly_table(theory, n, ring)
    f = xmul(tab[pi], tab[rho], ring.mod)
    allowed = descent_set(pi) | descent_set(rho)
    lsum = inversion_number(pi) + inversion_number(rho)
    lmax = max(inversion_number(pi), inversion_number(rho))
    # degree bounds on the support; Grothendieck extraction needs the whole support
    lo, hi = {"H": (lsum, lsum), "HT": (lmax, lsum), "K": (lsum, None), "KT": (0, None)}[theory]
    cands = [w for w in candidates(n, allowed, lo) if hi is None or inversion_number(w) <= hi]
    coeffs = extract_coefficients(f, theory, n, ring, cands)
    coeffs = {s: c for s, c in coeffs.items() if not _coeff_zero(c)}
    return SchubertExpansion(coeffs, residual=True, n=n)
