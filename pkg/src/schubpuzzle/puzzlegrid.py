"""
The triangular grid of a puzzle and a catalog-driven enumerator.  Rendering
lives at the end of the module.

Coordinates.  The size-n triangle points up.  Its NW side is crossed by n
lines running SE, numbered p = 1..n from the top; its NE side by n lines
running SW, numbered q = 1..n from the top.  Lines p and q cross in a
rhombus when p + q <= n (the up triangle in row p + q - 1 together with the
down triangle below it).  Otherwise they meet in bottom triangle q, whose
horizontal edge is the q-th letter of the S side read left to right.

Boundary strings: the NW string is read from the bottom corner up, so its
letter i sits on line p = n + 1 - i; the NE string is read top down, so its
letter q sits on line q.

Rhombus (p, q) sends line q out of the S side at position j = q and line p
at position i = n + 1 - p; equivariant weights are functions of (i, j).

A catalog supplies
  rhombus(p, q, nw, ne) -> [(se, sw, state, weight, charge), ...]
  bottom(c, nw, ne)     -> [(horizontal, weight, charge), ...]
where ``state`` is the horizontal label of a bisected rhombus or EQUIVARIANT,
and ``charge`` is a small integer the rule wants summed (K-tiles, inversion
charge).  Weights are anything with * and + (ints, LaurentPoly, ...).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterator, Protocol, Sequence

EQUIVARIANT = "equivariant"


class BoundaryMismatch(ValueError):
    """Boundary strings of the wrong length or with labels outside the catalog."""


@dataclass(frozen=True)
class AnyOf:
    """A free boundary edge: every listed label is tried."""
    labels: tuple


@dataclass(frozen=True)
class Arrangement:
    """A free boundary side: every ordering of the multiset `letters`.

    Passed in place of a whole NW or NE string; the enumerator keeps the
    unused letters in its state, so each ordering is counted once.
    """
    letters: tuple


class Catalog(Protocol):
    n: int
    rule: str
    theory: str

    def rhombus(self, p: int, q: int, nw, ne) -> list: ...

    def bottom(self, c: int, nw, ne) -> list: ...

    def check_boundary(self, lam: Sequence, mu: Sequence, nu: Sequence | None) -> None: ...


def exit_positions(n: int, p: int, q: int) -> tuple[int, int]:
    """(i, j): S positions where lines p (SE-bound) and q (SW-bound) exit.

    >>> exit_positions(4, 1, 2)
    (4, 2)
    """
    return n + 1 - p, q


@dataclass(frozen=True)
class Cell:
    p: int
    q: int
    nw: object
    ne: object
    se: object
    sw: object
    state: object
    weight: object
    charge: int = 0


@dataclass(frozen=True)
class BottomCell:
    c: int
    nw: object
    ne: object
    s: object
    weight: object
    charge: int = 0


@dataclass
class Puzzle:
    n: int
    lam: tuple
    mu: tuple
    nu: tuple
    cells: dict = field(default_factory=dict)    # (p, q) -> Cell
    bottoms: dict = field(default_factory=dict)  # c -> BottomCell
    rule: str = ""
    theory: str = ""

    @property
    def fugacity(self):
        return puzzle_fugacity(self)

    @property
    def charge(self) -> int:
        return sum(c.charge for c in self.cells.values()) + sum(b.charge for b in self.bottoms.values())

    def equivariant_cells(self) -> list[Cell]:
        return [c for c in self.cells.values() if c.state == EQUIVARIANT]


def puzzle_fugacity(pz: Puzzle):
    """Product of the cell weights."""
    out = 1
    for c in pz.cells.values():
        out = c.weight * out
    for b in pz.bottoms.values():
        out = b.weight * out
    return out


def _lam_at(lam: Sequence, n: int, p: int):
    return lam[n - p]


def _feed(row: int, n: int, lam, mu, prev_out: tuple) -> list[tuple]:
    """Inputs (nw, ne) of the row's cells from the previous row's outputs.

    prev_out = (se_1..se_{r-1}, sw_1..sw_{r-1}) of row r-1; cell c of row r
    lies on lines p = r - c + 1, q = c.
    """
    r = row
    m = r - 1
    ses, sws = prev_out[:m], prev_out[m:]
    out = []
    for c in range(1, r + 1):
        nw = _lam_at(lam, n, r) if c == 1 else ses[c - 2]
        ne = mu[r - 1] if c == r else sws[c - 1]
        out.append((nw, ne))
    return out


class Enumerator:
    """Row-by-row transfer over one boundary (lam, mu), optionally fixing nu.

    tally() sums weights grouped by nu without listing puzzles; puzzles()
    walks only into states that have a completion.
    """

    def __init__(self, cat: Catalog, lam, mu, nu: Sequence | None = None,
                 weights: bool = True):
        n = cat.n
        self._syms: list = []
        budget: list = []
        sides = []
        for side in (lam, mu):
            if isinstance(side, Arrangement):
                syms = tuple(dict.fromkeys(side.letters))
                self._syms.append(syms)
                budget.append(tuple(side.letters.count(x) for x in syms))
                sides.append((AnyOf(syms),) * len(side.letters))
            else:
                self._syms.append(None)
                budget.append(None)
                sides.append(tuple(side))
        lam, mu = sides
        if len(lam) != n or len(mu) != n or (nu is not None and len(nu) != n):
            raise BoundaryMismatch(f"boundary lengths must all be {n}")
        fixed = [tuple(x for x in s if not isinstance(x, AnyOf)) for s in (lam, mu)]
        cat.check_boundary(fixed[0], fixed[1], nu)
        self.cat, self.n = cat, n
        self.lam, self.mu = lam, mu
        self.nu = None if nu is None else tuple(nu)
        self.weights = weights
        self._budget0 = tuple(budget)
        self._memo: dict = {}
        self._dom = self._domains() if self.nu is not None else None

    def _domains(self) -> dict:
        """Labels each internal or free edge can carry in some puzzle.

        A forward pass collects what every edge can receive; a backward pass
        from the fixed S side keeps only labels that can still reach it.
        Keys: ("se", r, c) and ("sw", r, c) for the outputs of cell c of row
        r, ("lam", r) and ("mu", r) for the boundary edges entering row r.
        """
        n = self.n
        dom: dict = {}
        for r in range(1, n + 1):
            dom[("lam", r)] = set(_choices(_lam_at(self.lam, n, r)))
            dom[("mu", r)] = set(_choices(self.mu[r - 1]))

        def ins(r, c):
            nw = dom[("lam", r)] if c == 1 else dom[("se", r - 1, c - 1)]
            ne = dom[("mu", r)] if c == r else dom[("sw", r - 1, c)]
            return nw, ne

        for r in range(1, n):
            for c in range(1, r + 1):
                nws, nes = ins(r, c)
                se, sw = set(), set()
                for a in nws:
                    for b in nes:
                        for t in self._cell(r, c, a, b):
                            se.add(t[0])
                            sw.add(t[1])
                dom[("se", r, c)], dom[("sw", r, c)] = se, sw
        for r in range(n, 0, -1):
            keep_nw: list = []
            keep_ne: list = []
            for c in range(1, r + 1):
                nws, nes = ins(r, c)
                kn, ke = set(), set()
                for a in nws:
                    for b in nes:
                        for t in self._cell(r, c, a, b):
                            if r == n or (t[0] in dom[("se", r, c)] and t[1] in dom[("sw", r, c)]):
                                kn.add(a)
                                ke.add(b)
                keep_nw.append(kn)
                keep_ne.append(ke)
            for c in range(1, r + 1):
                dom[("lam", r) if c == 1 else ("se", r - 1, c - 1)] = keep_nw[c - 1]
                dom[("mu", r) if c == r else ("sw", r - 1, c)] = keep_ne[c - 1]
        return dom

    # each row's options: list over cells of lists of completions
    def _row_options(self, r: int, prev_out: tuple, budget: tuple = (None, None)):
        n = self.n
        inputs = _feed(r, n, self.lam, self.mu, prev_out)
        if budget[0] is not None:
            nw, ne = inputs[0]
            inputs[0] = (_left(self._syms[0], budget[0]), ne)
        if budget[1] is not None:
            nw, ne = inputs[-1]
            inputs[-1] = (nw, _left(self._syms[1], budget[1]))
        opts = []
        for c, (nw, ne) in enumerate(inputs, 1):
            if isinstance(nw, AnyOf) or isinstance(ne, AnyOf):
                # free edges: remember the labels used after the usual fields
                o = [t + (a, b) for a in _choices(nw) for b in _choices(ne)
                     for t in self._cell(r, c, a, b)]
            else:
                o = self._cell(r, c, nw, ne)
            if self._dom is not None and r < n:
                se, sw = self._dom[("se", r, c)], self._dom[("sw", r, c)]
                o = [t for t in o if t[0] in se and t[1] in sw]
            if not o:
                return None, inputs
            opts.append(o)
        return opts, inputs

    def _spend(self, r: int, combo: tuple, budget: tuple) -> tuple:
        """Budget left after row r picks its boundary letters."""
        if budget == (None, None):
            return budget
        at = 3 if r == self.n else 5
        out = []
        for side, (syms, b) in enumerate(zip(self._syms, budget)):
            if b is None:
                out.append(None)
                continue
            x = combo[0][at] if side == 0 else combo[-1][at + 1]
            i = syms.index(x)
            out.append(b[:i] + (b[i] - 1,) + b[i + 1:])
        return tuple(out)

    def _cell(self, r: int, c: int, nw, ne) -> list:
        if r < self.n:
            return self.cat.rhombus(r - c + 1, c, nw, ne)
        o = self.cat.bottom(c, nw, ne)
        if self.nu is not None:
            o = [t for t in o if t[0] == self.nu[c - 1]]
        return o

    def _combos(self, r: int, opts: list):
        """Row completions; with a catalog `joinable(nw, ne)` test, choices
        that cannot start an up triangle of the next row are cut early."""
        join = getattr(self.cat, "joinable", None)
        if join is None or r == self.n:
            yield from itertools.product(*opts)
            return
        if isinstance(_lam_at(self.lam, self.n, r + 1), AnyOf) or isinstance(self.mu[r], AnyOf):
            join = _any_join(join)
        left = _lam_at(self.lam, self.n, r + 1)
        last = self.mu[r]
        m = len(opts)
        combo: list = []

        def rec(c: int, nw):
            if c == m:
                if join(nw, last):
                    yield tuple(combo)
                return
            for t in opts[c]:
                if join(nw, t[1]):
                    combo.append(t)
                    yield from rec(c + 1, t[0])
                    combo.pop()

        yield from rec(0, left)

    def tally(self, r: int = 1, prev_out: tuple = (), budget: tuple | None = None) -> dict:
        """{nu: (count, weight)} over completions of rows r..n.

        With weights=False the weight slot is None and only counts are kept.
        """
        if budget is None:
            budget = self._budget0
        key = (r, prev_out, budget)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        opts, _ = self._row_options(r, prev_out, budget)
        out: dict = {}
        wt = self.weights
        if opts is not None:
            if r == self.n:
                for combo in itertools.product(*opts):
                    nu = tuple(t[0] for t in combo)
                    w = None
                    if wt:
                        w = 1
                        for t in combo:
                            w = t[1] * w
                    _acc(out, nu, 1, w)
            else:
                for combo in self._combos(r, opts):
                    w = None
                    if wt:
                        w = 1
                        for t in combo:
                            w = t[3] * w
                    nxt = tuple(t[0] for t in combo) + tuple(t[1] for t in combo)
                    for nu, (cnt, ww) in self.tally(r + 1, nxt, self._spend(r, combo, budget)).items():
                        _acc(out, nu, cnt, w * ww if wt else None)
        self._memo[key] = out
        return out

    def count(self) -> int:
        return sum(c for c, _ in self.tally().values())

    def puzzles(self) -> Iterator[Puzzle]:
        n = self.n

        def rec(r: int, prev_out: tuple, cells: dict, budget: tuple) -> Iterator[Puzzle]:
            opts, inputs = self._row_options(r, prev_out, budget)
            if opts is None:
                return
            for combo in self._combos(r, opts):
                if r == n:
                    bottoms = {}
                    for c, ((nw, ne), t) in enumerate(zip(inputs, combo), 1):
                        if len(t) > 3:
                            nw, ne = t[3], t[4]
                        bottoms[c] = BottomCell(c, nw, ne, t[0], t[1], t[2])
                    nu = tuple(t[0] for t in combo)
                    lam, mu = self._used_boundary(cells, bottoms)
                    yield Puzzle(n, lam, mu, nu, dict(cells), bottoms,
                                 self.cat.rule, self.cat.theory)
                    continue
                nxt = tuple(t[0] for t in combo) + tuple(t[1] for t in combo)
                left = self._spend(r, combo, budget)
                if not self.tally(r + 1, nxt, left):
                    continue
                new = dict(cells)
                for c, ((nw, ne), t) in enumerate(zip(inputs, combo), 1):
                    p = r - c + 1
                    if len(t) > 5:
                        nw, ne = t[5], t[6]
                    new[(p, c)] = Cell(p, c, nw, ne, t[0], t[1], t[2], t[3], t[4])
                yield from rec(r + 1, nxt, new, left)

        if n == 0:
            return
        yield from rec(1, (), {}, self._budget0)


    def _used_boundary(self, cells: dict, bottoms: dict) -> tuple[tuple, tuple]:
        """The boundary strings actually used (resolves free edges)."""
        n = self.n
        lam, mu = list(self.lam), list(self.mu)
        for r in range(1, n + 1):
            first = cells[(r, 1)] if r < n else bottoms[1]
            last = cells[(1, r)] if r < n else bottoms[n]
            lam[n - r], mu[r - 1] = first.nw, last.ne
        return tuple(lam), tuple(mu)


def _choices(x) -> tuple:
    return x.labels if isinstance(x, AnyOf) else (x,)


def _left(syms: tuple, budget: tuple) -> AnyOf:
    return AnyOf(tuple(x for x, b in zip(syms, budget) if b > 0))


def _any_join(join):
    def j(nw, ne):
        return any(join(a, b) for a in _choices(nw) for b in _choices(ne))
    return j


def _acc(d: dict, key, cnt: int, w) -> None:
    old = d.get(key)
    if old is None:
        d[key] = (cnt, w)
    elif w is None:
        d[key] = (old[0] + cnt, None)
    else:
        d[key] = (old[0] + cnt, old[1] + w)


def enumerate_puzzles(cat: Catalog, lam: Sequence, mu: Sequence, nu: Sequence | None = None) -> Iterator[tuple[Puzzle, object]]:
    """Every puzzle with the given boundary, with its fugacity."""
    for pz in Enumerator(cat, lam, mu, nu).puzzles():
        yield pz, puzzle_fugacity(pz)


def structure_constants_from_puzzles(cat: Catalog, lam: Sequence, mu: Sequence) -> dict:
    """{nu: (puzzle count, fugacity sum)}; entries whose weights cancel are kept
    with their counts."""
    return dict(Enumerator(cat, lam, mu).tally())


# ---------------------------------------------------------------------------
# rendering


def _fmt(label) -> str:
    if label is None:
        return ""
    if isinstance(label, (tuple, frozenset, set, list)):
        return "".join(_fmt(x) for x in sorted(label, key=str))
    return "" if label == "_" else str(label)


def _geometry(n: int):
    """Vertex coordinates: row r (0 = apex) vertex c at (c - r/2, -r*h)."""
    h = 3 ** 0.5 / 2

    def v(r: int, c: int) -> tuple[float, float]:
        return (c - r / 2 + n / 2, r * h)

    return v


def _edges(pz: Puzzle):
    """(kind, (x1, y1), (x2, y2), label) for every edge, plus shaded cells."""
    n = pz.n
    v = _geometry(n)
    edges = []
    shaded = []
    for (p, q), cell in pz.cells.items():
        r = p + q - 1  # up triangle row (1-based), position q
        top, left, right = v(r - 1, q - 1), v(r, q - 1), v(r, q)
        bot = v(r + 1, q)
        if q == 1:
            edges.append(("nw", left, top, cell.nw))
        if q == r:
            edges.append(("ne", top, right, cell.ne))
        if cell.state == EQUIVARIANT:
            shaded.append(("equivariant", [top, right, bot, left]))
        else:
            edges.append(("h", left, right, cell.state))
        edges.append(("sw", left, bot, cell.sw))
        edges.append(("se", bot, right, cell.se))
        if cell.charge:
            shaded.append(("k", [top, right, left] if cell.state != EQUIVARIANT else [top, right, bot, left]))
    for c, b in pz.bottoms.items():
        top, left, right = v(n - 1, c - 1), v(n, c - 1), v(n, c)
        if c == 1:
            edges.append(("nw", left, top, b.nw))
        if c == n:
            edges.append(("ne", top, right, b.ne))
        edges.append(("s", left, right, b.s))
        if b.charge:
            shaded.append(("k", [top, right, left]))
    return edges, shaded


def render_json(pz: Puzzle) -> str:
    cells = []
    for (p, q), c in sorted(pz.cells.items()):
        cells.append({"p": p, "q": q, "state": "equivariant" if c.state == EQUIVARIANT else "bisected",
                      "nw": _fmt(c.nw), "ne": _fmt(c.ne), "se": _fmt(c.se), "sw": _fmt(c.sw),
                      "h": None if c.state == EQUIVARIANT else _fmt(c.state), "weight": str(c.weight)})
    for c, b in sorted(pz.bottoms.items()):
        cells.append({"c": c, "state": "bottom", "nw": _fmt(b.nw), "ne": _fmt(b.ne), "s": _fmt(b.s),
                      "weight": str(b.weight)})
    doc = {"n": pz.n, "rule": pz.rule, "theory": pz.theory,
           "nw": [_fmt(x) or "_" for x in pz.lam], "ne": [_fmt(x) or "_" for x in pz.mu],
           "s": [_fmt(x) for x in pz.nu], "cells": cells, "fugacity": str(puzzle_fugacity(pz))}
    return json.dumps(doc, sort_keys=True)


def _color(label, d: int) -> str:
    import colorsys

    s = _fmt(label)
    if not s or not s.isdigit():
        return "#444444"
    r, g, b = colorsys.hsv_to_rgb(int(s) / (d + 1), 0.8, 0.75)
    return "#%02x%02x%02x" % (int(r * 255), int(g * 255), int(b * 255))


def render_svg(pz: Puzzle, d: int = 9, scale: float = 40.0) -> str:
    edges, shaded = _edges(pz)
    h = pz.n * 3 ** 0.5 / 2
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{(pz.n + 1) * scale:.0f}" '
           f'height="{(h + 1) * scale:.0f}" viewBox="-0.5 -0.5 {pz.n + 1} {h + 1}">']
    for kind, poly in shaded:
        fill = "#bbbbbb" if kind == "equivariant" else "#f4b6c2"
        pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in poly)
        out.append(f'<polygon points="{pts}" fill="{fill}" stroke="none"/>')
    for kind, a, b, label in edges:
        out.append(f'<line x1="{a[0]:.3f}" y1="{a[1]:.3f}" x2="{b[0]:.3f}" y2="{b[1]:.3f}" '
                   f'stroke="{_color(label, d)}" stroke-width="0.03"/>')
        text = _fmt(label)
        if text:
            mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
            out.append(f'<text x="{mx:.3f}" y="{my:.3f}" font-size="0.22" text-anchor="middle" '
                       f'dominant-baseline="middle">{text}</text>')
    out.append("</svg>")
    return "\n".join(out)


def render_tikz(pz: Puzzle) -> str:
    edges, shaded = _edges(pz)
    out = ["\\begin{tikzpicture}[yscale=-1]"]
    for kind, poly in shaded:
        fill = "gray!50" if kind == "equivariant" else "pink"
        pts = " -- ".join(f"({x:.3f},{y:.3f})" for x, y in poly)
        out.append(f"\\fill[{fill}] {pts} -- cycle;")
    for kind, a, b, label in edges:
        text = _fmt(label)
        node = f" node {{${text}$}}" if text else ""
        out.append(f"\\draw ({a[0]:.3f},{a[1]:.3f}) --{node} ({b[0]:.3f},{b[1]:.3f});")
    out.append("\\end{tikzpicture}")
    return "\n".join(out)


def render(pz: Puzzle, fmt: str = "svg") -> str:
    """Render a puzzle as SVG or TikZ text, or as JSON."""
    if fmt == "svg":
        return render_svg(pz)
    if fmt == "tikz":
        return render_tikz(pz)
    if fmt == "json":
        return render_json(pz)
    raise ValueError(f"unknown format {fmt}")
