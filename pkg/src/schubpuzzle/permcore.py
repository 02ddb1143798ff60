"""
Permutations of S_infinity with their descents, plus the string encodings
that turn a pair of permutations into puzzle boundary data.

Permutations are stored in one-line notation with values 1..m; trailing
fixed points are trimmed so that equality is equality in S_infinity.
Strings are tuples of symbols drawn from an ordered Alphabet.  Digits are
plain ints and the blank is the string "_".
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Sequence

BLANK = "_"


class NotSeparated(ValueError):
    """The pair has overlap > 1, so the separated-descent rule does not apply."""


class NotAlmostSeparated(ValueError):
    """The pair has overlap > 2."""


# ---------------------------------------------------------------------------
# permutations


class Permutation:
    """An element of S_infinity in one-line notation.

    >>> Permutation([2, 1, 3, 4]) == Permutation([2, 1])
    True
    >>> Permutation("1362547").descents()
    frozenset({3, 5})
    """

    __slots__ = ("_w", "_hash", "size")

    def __init__(self, word: Iterable[int] | str = ()):
        if isinstance(word, str):
            word = parse_word(word)
        w = list(word)
        if sorted(w) != list(range(1, len(w) + 1)):
            raise ValueError(f"not a permutation of 1..{len(w)}: {w}")
        # size remembers the written length; it is a default for n, not identity
        self.size = len(w)
        while w and w[-1] == len(w):
            w.pop()
        self._w = tuple(w)
        self._hash = hash(self._w)

    @classmethod
    def identity(cls) -> Permutation:
        return cls(())

    @property
    def word(self) -> tuple[int, ...]:
        return self._w

    def __len__(self) -> int:
        return len(self._w)

    def padded(self, n: int) -> tuple[int, ...]:
        """One-line notation in S_n (n at least len(self))."""
        if n < len(self._w):
            raise ValueError(f"{self} does not fit in S_{n}")
        return self._w + tuple(range(len(self._w) + 1, n + 1))

    def __call__(self, i: int) -> int:
        return self._w[i - 1] if i <= len(self._w) else i

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._w == other._w

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Permutation) -> bool:
        return self._w < other._w

    def __repr__(self) -> str:
        return f"Permutation({format_word(self._w) or '1'})"

    def __str__(self) -> str:
        return format_word(self._w) or "1"

    def inverse(self) -> Permutation:
        inv = [0] * len(self._w)
        for i, v in enumerate(self._w, 1):
            inv[v - 1] = i
        return Permutation(inv)

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition (self * other)(i) = self(other(i))."""
        n = max(len(self), len(other))
        return Permutation(self(other(i)) for i in range(1, n + 1))

    def swap_positions(self, i: int) -> Permutation:
        """Right multiplication by s_i (swap entries i and i+1)."""
        w = list(self.padded(max(len(self), i + 1)))
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation(w)

    def swap_values(self, i: int) -> Permutation:
        """Left multiplication by s_i (swap values i and i+1)."""
        n = max(len(self), i + 1)
        t = {i: i + 1, i + 1: i}
        return Permutation(t.get(v, v) for v in self.padded(n))

    def descents(self) -> frozenset[int]:
        return descent_set(self)

    def length(self) -> int:
        return inversion_number(self)

    def code(self) -> tuple[int, ...]:
        return code(self)


def parse_word(s: str) -> list[int]:
    """Parse "2431" or "2,4,3,1" into a list of ints."""
    s = s.strip()
    if "," in s or " " in s:
        return [int(t) for t in s.replace(",", " ").split()]
    return [int(c) for c in s]


def format_word(w: Sequence[int]) -> str:
    if any(v > 9 for v in w):
        return ",".join(map(str, w))
    return "".join(map(str, w))


def descent_set(p: Permutation) -> frozenset[int]:
    """D(p) = {i : p_i > p_{i+1}}.

    >>> sorted(descent_set(Permutation("4321")))
    [1, 2, 3]
    """
    w = p.word
    return frozenset(i for i in range(1, len(w)) if w[i - 1] > w[i])


def inversion_number(p: Permutation) -> int:
    """
    >>> inversion_number(Permutation("15342"))
    5
    """
    w = p.word
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])


def code(p: Permutation) -> tuple[int, ...]:
    """Lehmer code c_i = #{j>i : p_j < p_i}, trailing zeros removed.

    >>> code(Permutation("2134"))
    (1,)
    """
    w = p.word
    c = [sum(1 for j in range(i + 1, len(w)) if w[j] < w[i]) for i in range(len(w))]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def from_code(c: Sequence[int]) -> Permutation:
    """Inverse of code()."""
    n = len(c) + (max(c) if c else 0) + 1
    avail = list(range(1, n + 1))
    w = []
    for ci in c:
        w.append(avail.pop(ci))
    w.extend(avail)
    return Permutation(w)


def direct_sum(pi: Permutation, rho: Permutation, n: int | None = None) -> Permutation:
    """Block sum pi (+) rho, with pi viewed in S_n (default n = len(pi)).

    >>> str(direct_sum(Permutation("21"), Permutation("21")))
    '2143'
    """
    n = pi.size if n is None else n
    return Permutation(list(pi.padded(n)) + [n + v for v in rho.word])


def reduced_word(p: Permutation) -> list[int]:
    """A reduced word i_1..i_l with p = s_{i_1} ... s_{i_l} (right factors act on positions)."""
    w = list(p.word)
    word = []
    while True:
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i + 1)
                break
        else:
            break
    return word[::-1]


def perms(n: int) -> Iterator[Permutation]:
    for w in itertools.permutations(range(1, n + 1)):
        yield Permutation(w)


def bruhat_leq(u: Permutation, v: Permutation) -> bool:
    """Tableau criterion for the Bruhat order."""
    n = max(len(u), len(v))
    a, b = u.padded(n), v.padded(n)
    for i in range(1, n):
        if any(x > y for x, y in zip(sorted(a[:i]), sorted(b[:i]))):
            return False
    return True


# ---------------------------------------------------------------------------
# alphabets and strings


@dataclass(frozen=True)
class Alphabet:
    """An ordered list of symbols; the order decides standardization."""

    symbols: tuple[Hashable, ...]

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("repeated symbol in alphabet")

    def rank(self, s: Hashable) -> int:
        try:
            return self.symbols.index(s)
        except ValueError:
            raise ValueError(f"symbol {s!r} not in alphabet {self}") from None

    def __contains__(self, s) -> bool:
        return s in self.symbols

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return "{" + "<".join(map(str, self.symbols)) + "}"

    @classmethod
    def digits(cls, d: int) -> Alphabet:
        return cls(tuple(range(d + 1)))


def sepdesc_alphabets(k: int, d: int) -> tuple[Alphabet, Alphabet, Alphabet]:
    """A1 = {_<k+1<..<d} (NW), A2 = {0<..<k<_} (NE), A3 = {0<..<d} (S)."""
    a1 = Alphabet((BLANK,) + tuple(range(k + 1, d + 1)))
    a2 = Alphabet(tuple(range(k + 1)) + (BLANK,))
    return a1, a2, Alphabet.digits(d)


def almostsep_alphabets(k: int, d: int) -> tuple[Alphabet, Alphabet, Alphabet]:
    """A1 = {0<..<k<_} (NW), A2 = {_<k<..<d} (NE), A3 = {v0<..<v(k-1)<odd<^(k+1)<..<^d}."""
    a1 = Alphabet(tuple(range(k + 1)) + (BLANK,))
    a2 = Alphabet((BLANK,) + tuple(range(k, d + 1)))
    a3 = Alphabet(tuple(f"v{i}" for i in range(k)) + ("odd",) + tuple(f"^{j}" for j in range(k + 1, d + 1)))
    return a1, a2, a3


@dataclass(frozen=True)
class LabelString:
    alphabet: Alphabet
    letters: tuple

    def __post_init__(self):
        for s in self.letters:
            if s not in self.alphabet:
                raise ValueError(f"letter {s!r} not in alphabet {self.alphabet}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return format_string(self.letters)


def parse_string(s: str) -> tuple:
    """Parse "_3_43_4" or "0,1,_,10" into a tuple of symbols.

    Almost-separated bottom letters may be written v0, ^3, odd, even
    (comma separated).

    >>> parse_string("_3_4")
    ('_', 3, '_', 4)
    """
    s = s.strip()
    if "," in s:
        toks = [t.strip() for t in s.split(",")]
    else:
        toks = list(s)
    return tuple(_parse_symbol(t) for t in toks)


def _parse_symbol(t: str):
    if t == BLANK:
        return BLANK
    if t.isdigit():
        return int(t)
    if t in ("odd", "even") or (t[:1] in ("v", "^") and t[1:].isdigit()):
        return t
    raise ValueError(f"bad label {t!r}")


def format_string(letters: Sequence) -> str:
    toks = [str(s) for s in letters]
    if all(len(t) == 1 for t in toks):
        return "".join(toks)
    return ",".join(toks)


def standardize(s: Sequence, alphabet: Alphabet) -> Permutation:
    """The standardization of s: equal letters are numbered left to right.

    >>> str(standardize((0, 2, 0, 1), Alphabet.digits(2)))
    '1423'
    """
    order = sorted(range(len(s)), key=lambda i: (alphabet.rank(s[i]), i))
    st = [0] * len(s)
    for v, i in enumerate(order, 1):
        st[i] = v
    return Permutation(st)


def string_to_perm(s: Sequence, alphabet: Alphabet) -> Permutation:
    """f_A(s), the inverse of the standardization.

    >>> str(string_to_perm((0, 2, 0, 1), Alphabet.digits(2)))
    '1342'
    """
    return standardize(s, alphabet).inverse()


def sort_content(s: Sequence, alphabet: Alphabet) -> tuple:
    return tuple(sorted(s, key=alphabet.rank))


def blocks_from_cuts(cuts: Sequence[int], n: int) -> list[int]:
    """Block sizes p_i = n_{i+1} - n_i for a weakly increasing cut list.

    Cuts may repeat or sit at 0 or n, which gives empty blocks.
    """
    pts = [0] + sorted(cuts) + [n]
    if pts[1] < 0 or pts[-2] > n:
        raise ValueError("cut outside [0, n]")
    return [b - a for a, b in zip(pts, pts[1:])]


def perm_to_string(p: Permutation, cuts: Sequence[int], alphabet: Alphabet, n: int | None = None) -> tuple:
    """The string lambda with lambda_{p(i)} = omega_i, omega built from the cut blocks.

    >>> format_string(perm_to_string(Permutation("1362547"), [3, 5], Alphabet.digits(2)))
    '0102102'
    """
    n = p.size if n is None else n
    if not descent_set(p) <= set(cuts):
        raise ValueError(f"descents {sorted(descent_set(p))} not inside {sorted(cuts)}")
    sizes = blocks_from_cuts(cuts, n)
    if len(sizes) != len(alphabet):
        raise ValueError(f"{len(sizes)} blocks but {len(alphabet)} letters")
    omega = [sym for sym, sz in zip(alphabet.symbols, sizes) for _ in range(sz)]
    w = p.padded(n)
    lam = [None] * n
    for i in range(n):
        lam[w[i] - 1] = omega[i]
    return tuple(lam)


def overlap(pi: Permutation, rho: Permutation) -> tuple[frozenset[int], int]:
    """O(pi, rho) = (D(pi) u D(rho)) n [min D(pi), max D(rho)] and its size.

    >>> overlap(Permutation("2543167"), Permutation("4132567"))
    (frozenset({2, 3}), 2)
    """
    dp, dr = descent_set(pi), descent_set(rho)
    if not dp or not dr:
        return frozenset(), 0
    lo, hi = min(dp), max(dr)
    o = frozenset(i for i in dp | dr if lo <= i <= hi)
    return o, len(o)


def desc(pi: Permutation, rho: Permutation) -> int:
    return len(descent_set(pi) | descent_set(rho))


def dual_string(s: Sequence, d: int) -> tuple:
    """Reverse and complement i -> d-i; arrows flip (v i <-> ^ d-i).

    >>> format_string(dual_string(parse_string("_3_43_4"), 4))
    '0_10_1_'
    """
    def flip(x):
        if x == BLANK or x in ("odd", "even"):
            return x
        if isinstance(x, int):
            return d - x
        if x[0] == "v":
            return f"^{d - int(x[1:])}"
        return f"v{d - int(x[1:])}"
    return tuple(flip(x) for x in reversed(s))


# ---------------------------------------------------------------------------
# encoders


@dataclass(frozen=True)
class EncodedPair:
    rule: str
    lam: tuple
    mu: tuple
    k: int
    d: int
    m: int
    n: int

    @property
    def alphabets(self) -> tuple[Alphabet, Alphabet, Alphabet]:
        if self.rule == "sepdesc":
            return sepdesc_alphabets(self.k, self.d)
        return almostsep_alphabets(self.k, self.d)

    def __str__(self) -> str:
        return (f"lambda={format_string(self.lam)} mu={format_string(self.mu)} "
                f"k={self.k} d={self.d} m={self.m}")


def _max0(s) -> int:
    return max(s) if s else 0


def _min_n(s, n) -> int:
    return min(s) if s else n


def sepdesc_splits(pi: Permutation, rho: Permutation, n: int) -> list[int]:
    """Admissible blank counts r for lambda: r = min D(pi) = max D(rho), or any
    r in [max D(rho), min D(pi)] when the descents are disjointly ordered."""
    dp, dr = descent_set(pi), descent_set(rho)
    lo, hi = _max0(dr), _min_n(dp, n)
    if lo <= hi:
        return list(range(lo, hi + 1))
    return []


def sepdesc_encode(pi: Permutation, rho: Permutation, n: int | None = None,
                   k: int | None = None) -> EncodedPair:
    """Encode a separated-descent pair: lambda (from pi) over A1, mu (from rho) over A2.

    ``k`` selects among the admissible choices; default is the smallest.

    >>> print(sepdesc_encode(Permutation("1362547"), Permutation("7321456")))
    lambda=_3_43_4 mu=_21___0 k=2 d=4 m=0
    """
    n = max(pi.size, rho.size, 1) if n is None else n
    choices = sepdesc_choices(pi, rho, n)
    if not choices:
        raise NotSeparated(f"over({pi},{rho}) > 1")
    if k is None:
        return choices[0]
    for e in choices:
        if e.k == k:
            return e
    raise NotSeparated(f"k={k} is not admissible; choose from {[e.k for e in choices]}")


def sepdesc_choices(pi: Permutation, rho: Permutation, n: int) -> list[EncodedPair]:
    dp, dr = descent_set(pi), descent_set(rho)
    out = []
    for r in sepdesc_splits(pi, rho, n):
        cuts_pi = sorted(dp | {r})
        cuts_rho = sorted(dr | {r})
        k = len(cuts_rho) - 1
        d = k + len(cuts_pi)
        a1, a2, _ = sepdesc_alphabets(k, d)
        lam = perm_to_string(pi, cuts_pi, a1, n)
        mu = perm_to_string(rho, cuts_rho, a2, n)
        e = EncodedPair("sepdesc", lam, mu, k, d, 0, n)
        if all(e.k != o.k for o in out):
            out.append(e)
    return out


def almostsep_choices(pi: Permutation, rho: Permutation, n: int) -> list[EncodedPair]:
    dp, dr = descent_set(pi), descent_set(rho)
    _, ov = overlap(pi, rho)
    if ov > 2:
        return []
    r, s = _min_n(dp, n), _max0(dr)
    if r <= s:
        pairs = [(r, s)]
    else:
        pairs = [(t, t) for t in range(s, r + 1)]
    out = []
    for r, s in pairs:
        # multiset cuts: the k-block is (r, s] in both strings, empty when r == s
        cuts_pi = sorted([c for c in dp if c not in (r, s)] + [r, s])
        cuts_rho = sorted([c for c in dr if c not in (r, s)] + [r, s])
        k = len(cuts_rho) - 1
        d = k + len(cuts_pi) - 1
        a1, a2, _ = almostsep_alphabets(k, d)
        lam = perm_to_string(rho, cuts_rho, a1, n)
        mu = perm_to_string(pi, cuts_pi, a2, n)
        out.append(EncodedPair("almostsep", lam, mu, k, d, s - r, n))
    return out


def almostsep_encode(pi: Permutation, rho: Permutation, n: int | None = None,
                     k: int | None = None) -> EncodedPair:
    """Encode an almost-separated pair.  Note lambda encodes rho and mu encodes pi.

    >>> print(almostsep_encode(Permutation("2543167"), Permutation("4132567")))
    lambda=1_20___ mu=4_32_44 k=2 d=4 m=1
    """
    n = max(pi.size, rho.size, 1) if n is None else n
    choices = almostsep_choices(pi, rho, n)
    if not choices:
        raise NotAlmostSeparated(f"over({pi},{rho}) > 2")
    if k is None:
        return choices[0]
    for e in choices:
        if e.k == k:
            return e
    raise NotAlmostSeparated(f"k={k} is not admissible; choose from {[e.k for e in choices]}")


def decode(e: EncodedPair) -> tuple[Permutation, Permutation]:
    """(pi, rho) back from an encoded pair."""
    a1, a2, _ = e.alphabets
    p1, p2 = string_to_perm(e.lam, a1), string_to_perm(e.mu, a2)
    return (p1, p2) if e.rule == "sepdesc" else (p2, p1)
