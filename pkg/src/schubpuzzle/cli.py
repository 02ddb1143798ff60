"""
Command-line interface: ``schubpuzzle <command> ...``.

Commands
  multiply  structure constants of S_pi * S_rho (from puzzles and/or the oracle)
  puzzles   enumerate the puzzles of one boundary, optionally rendered
  encode    show the string encodings of a pair of permutations
  euler     Euler characteristic of a triple intersection
  verify    compare puzzles with the oracle on sampled pairs

Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 the two methods
of ``multiply --method both`` disagree.

>>> main(["multiply", "--pi", "1", "--rho", "1", "--theory", "H"])
sigma  coefficient  puzzles
1      1            1
0
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .permcore import (BLANK, EncodedPair, NotAlmostSeparated, NotSeparated, Permutation,
                       almostsep_choices, almostsep_encode, format_string, inversion_number,
                       overlap, parse_string, perms, sepdesc_choices, sepdesc_encode,
                       string_to_perm)
from .puzzlegrid import BoundaryMismatch, Enumerator, render, render_json
from .schubring import oracle_constants, random_yring

OK, FAILED, BAD_INPUT, DISAGREE = 0, 1, 2, 3


class BadInput(ValueError):
    pass


# ---------------------------------------------------------------------------
# helpers


def _perm(s: str) -> Permutation:
    try:
        return Permutation(s.strip())
    except ValueError as exc:
        raise BadInput(str(exc)) from None


def _label(x) -> str:
    if isinstance(x, frozenset):
        return "{" + ",".join(str(v) for v in sorted(x)) + "}" if x else BLANK
    return str(x)


def _string(s: Sequence) -> str:
    return format_string([_label(x) for x in s])


def pick_rule(pi: Permutation, rho: Permutation, theory: str, rule: str) -> str:
    """Resolve rule=auto: separated descents when over <= 1, else almost.

    >>> pick_rule(Permutation("2543167"), Permutation("4132567"), "H", "auto")
    'almostsep'
    """
    if rule == "auto":
        over = overlap(pi, rho)[1]
        if over > 2:
            raise BadInput(f"over(pi, rho) = {over}: no puzzle rule applies")
        rule = "sepdesc" if over <= 1 else "almostsep"
    if rule == "almostsep" and theory in ("HT", "KT"):
        raise BadInput("almost-separated puzzles have no equivariant rule (use H or K)")
    return rule


def encode(pi: Permutation, rho: Permutation, rule: str, n: int | None, k: int | None) -> EncodedPair:
    if rule == "sepdesc":
        return sepdesc_encode(pi, rho, n, k)
    return almostsep_encode(pi, rho, n, k)


def catalog(rule: str, theory: str, k: int, d: int, n: int, **kw):
    if rule == "sepdesc":
        from .sepdesc import SepDescCatalog

        return SepDescCatalog(theory, k, d, n, **kw)
    from .almostsep import AlmostSepCatalog

    return AlmostSepCatalog(theory, k, d, n, **kw)


def _boundary(rule: str, s: Sequence) -> tuple:
    if rule == "almostsep":
        from .almostsep import to_sets

        return to_sets(s)
    return tuple(s)


def puzzle_table(e: EncodedPair, theory: str, yring=None) -> list[dict]:
    """Rows {sigma, nu, coefficient, puzzle_count}, sorted by sigma."""
    kw = {"yring": yring} if yring is not None else {}
    cat = catalog(e.rule, theory, e.k, e.d, e.n, **kw)
    a3 = e.alphabets[2]
    rows = []
    tally = Enumerator(cat, _boundary(e.rule, e.lam), _boundary(e.rule, e.mu)).tally()
    for nu, (cnt, w) in tally.items():
        if yring is not None and yring.mod is not None:
            w = w % yring.mod
        if _zero(w):
            continue
        rows.append({"sigma": string_to_perm(nu, a3), "nu": _string(nu),
                     "coefficient": w, "puzzle_count": cnt})
    rows.sort(key=lambda r: r["sigma"].padded(e.n))
    return rows


def _zero(v) -> bool:
    return v.is_zero() if hasattr(v, "is_zero") else v == 0


def infer_kd(rule: str, lam: Sequence, mu: Sequence, k: int | None, d: int | None) -> tuple[int, int]:
    """Guess (k, d) from the digits on the two sides when not given.

    Separated: NW letters lie above k, NE letters at most k.  Almost
    separated: NW letters at most k, NE letters at least k.

    >>> infer_kd("sepdesc", parse_string("_2_2"), parse_string("10__"), None, None)
    (1, 2)
    >>> infer_kd("almostsep", parse_string("10_2_"), parse_string("_423_"), None, None)
    (2, 4)
    """
    ls = [x for x in lam if isinstance(x, int)]
    ms = [x for x in mu if isinstance(x, int)]
    if k is None:
        if rule == "sepdesc":
            k = max(ms) if ms else (min(ls) - 1 if ls else 0)
        else:
            k = max(ls) if ls else (min(ms) if ms else 0)
    if d is None:
        d = max(ls + ms + [k])
    return k, d


# ---------------------------------------------------------------------------
# commands


def cmd_multiply(a, out) -> int:
    pi, rho = _perm(a.pi), _perm(a.rho)
    rule = pick_rule(pi, rho, a.theory, a.rule)
    n = a.n or max(pi.size, rho.size, 1)
    sizes = [n] if a.pad is None else list(range(n, max(n, a.pad) + 1))
    runs = [_multiply_at(pi, rho, a.theory, rule, m, a.k, a.method) for m in sizes]
    first = runs[0]
    if any(r.get("disagree") for r in runs):
        status = DISAGREE
    else:
        status = OK
    doc = {"request": _request(a), "version": __version__, "rule": rule, "n": first["n"],
           "k": first["k"], "d": first["d"], "constants": first["rows"]}
    if a.pad is not None:
        doc["padding"] = [{"n": r["n"], "stable": _same(r["rows"], runs[-1]["rows"])} for r in runs]
        doc["constants"] = runs[-1]["rows"]
    if status == DISAGREE:
        doc["disagreement"] = [r["disagree"] for r in runs if r.get("disagree")]
    if a.json:
        print(json.dumps(_jsonable(doc), sort_keys=True), file=out)
    else:
        _table(doc["constants"], a.method, out)
        for p in doc.get("padding", []):
            print(f"n={p['n']}: {'stable' if p['stable'] else 'changes at larger n'}", file=out)
        for dis in doc.get("disagreement", []):
            print(f"DISAGREEMENT: {dis}", file=out)
    return status


def _multiply_at(pi, rho, theory, rule, n, k, method) -> dict:
    e = encode(pi, rho, rule, n, k)
    res: dict = {"n": e.n, "k": e.k, "d": e.d}
    rows = puzzle_table(e, theory) if method in ("puzzle", "both") else None
    if method in ("oracle", "both"):
        orc = oracle_constants(pi, rho, theory, e.n).nonzero()
        if rows is None:
            rows = [{"sigma": s, "nu": None, "coefficient": c, "puzzle_count": None}
                    for s, c in sorted(orc.items(), key=lambda t: t[0].padded(e.n))]
        else:
            got = {r["sigma"]: r["coefficient"] for r in rows}
            if set(got) != set(orc) or any(got[s] != orc[s] for s in got):
                res["disagree"] = {"n": e.n, "puzzle": {str(s): str(c) for s, c in got.items()},
                                   "oracle": {str(s): str(c) for s, c in orc.items()}}
    res["rows"] = rows
    return res


def _same(r1: list, r2: list) -> bool:
    key = lambda rows: {str(r["sigma"]): str(r["coefficient"]) for r in rows}
    return key(r1) == key(r2)


def _table(rows: list, method: str, out) -> None:
    head = ["sigma", "coefficient", "puzzles"] if method != "oracle" else ["sigma", "coefficient"]
    body = []
    for r in rows:
        line = [str(r["sigma"]), str(r["coefficient"])]
        if method != "oracle":
            line.append(str(r["puzzle_count"]))
        body.append(line)
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    for line in [head] + body:
        print("  ".join(x.ljust(w) for x, w in zip(line, widths)).rstrip(), file=out)


def cmd_puzzles(a, out) -> int:
    lam, mu = _parse(a.lam), _parse(a.mu)
    nu = _parse(a.nu) if a.nu else None
    k, d = infer_kd(a.rule, lam, mu, a.k, a.d)
    cat = catalog(a.rule, a.theory, k, d, len(lam))
    pzs = list(Enumerator(cat, _boundary(a.rule, lam), _boundary(a.rule, mu), nu).puzzles())
    groups: dict = {}
    for pz in pzs:
        g = groups.setdefault(_string(pz.nu), [0, 0])
        g[0] += 1
        g[1] = pz.fugacity + g[1]
    files = []
    if a.render:
        path = Path(a.render)
        fmt = path.suffix.lstrip(".") or "svg"
        for i, pz in enumerate(pzs, 1):
            target = path if len(pzs) == 1 else path.with_name(f"{path.stem}-{i}{path.suffix}")
            target.write_text(render(pz, fmt))
            files.append(str(target))
    if a.json:
        doc = {"request": _request(a), "version": __version__, "k": k, "d": d, "count": len(pzs),
               "constants": [{"nu": s, "puzzle_count": c, "coefficient": str(w)}
                             for s, (c, w) in sorted(groups.items())],
               "puzzles": [json.loads(render_json(pz)) for pz in pzs]}
        if files:
            doc["files"] = files
        print(json.dumps(doc, sort_keys=True), file=out)
    else:
        print(f"{len(pzs)} puzzles (k={k}, d={d})", file=out)
        for s, (c, w) in sorted(groups.items()):
            print(f"  {s}: {c} puzzles, weight {w}", file=out)
        for f in files:
            print(f"wrote {f}", file=out)
    return OK


def cmd_encode(a, out) -> int:
    pi, rho = _perm(a.pi), _perm(a.rho)
    n = a.n or max(pi.size, rho.size, 1)
    rules = ["sepdesc", "almostsep"] if a.rule == "auto" else [a.rule]
    found = []
    for rule in rules:
        choices = sepdesc_choices(pi, rho, n) if rule == "sepdesc" else almostsep_choices(pi, rho, n)
        for e in choices:
            a1, a2, a3 = e.alphabets
            found.append({"rule": rule, "lambda": _string(e.lam), "mu": _string(e.mu),
                          "k": e.k, "d": e.d, "m": e.m, "n": e.n,
                          "alphabets": [str(a1), str(a2), str(a3)]})
    if not found:
        raise BadInput(f"neither rule applies to ({pi}, {rho})")
    if a.json:
        print(json.dumps({"request": _request(a), "version": __version__, "encodings": found},
                         sort_keys=True), file=out)
    else:
        for f in found:
            print(f"{f['rule']}: lambda={f['lambda']} mu={f['mu']} k={f['k']} d={f['d']} m={f['m']}"
                  f"  alphabets {' | '.join(f['alphabets'])}", file=out)
    return OK


def cmd_euler(a, out) -> int:
    from .motivic import euler_characteristic

    lam, mu, nu = _parse(a.lam), _parse(a.mu), _parse(a.nu)
    k, d = infer_kd(a.rule, lam, mu, a.k, a.d)
    res = euler_characteristic(lam, mu, nu, a.rule, k, d)
    if a.json:
        print(json.dumps({"request": _request(a), "version": __version__, "k": k, "d": d, **res},
                         sort_keys=True), file=out)
    else:
        print(f"puzzles={res['puzzles']} dim={res['dim']} chi={res['chi']}", file=out)
    return OK


def cmd_verify(a, out) -> int:
    if a.rule == "almostsep" and a.theory in ("HT", "KT"):
        raise BadInput("almost-separated puzzles have no equivariant rule (use H or K)")
    rng = random.Random(a.seed)
    pool = [(pi, rho) for pi in perms(a.n) for rho in perms(a.n) if _choices(a.rule, pi, rho, a.n)]
    if a.samples != "all":
        try:
            m = int(a.samples)
        except ValueError:
            raise BadInput(f"--samples must be an integer or 'all', not {a.samples!r}") from None
        pool = rng.sample(pool, min(m, len(pool)))
    fails = []
    for pi, rho in pool:
        if not _agrees(pi, rho, a.rule, a.theory, a.n, rng):
            fails.append((pi, rho))
    doc = {"request": _request(a), "version": __version__, "seed": a.seed,
           "checked": len(pool), "failed": len(fails)}
    if fails:
        doc["reproducer"] = _minimize(fails, a.rule, a.theory, a.n, rng)
    if a.json:
        print(json.dumps(doc, sort_keys=True), file=out)
    else:
        print(f"{len(pool) - len(fails)}/{len(pool)} pairs agree", file=out)
        if fails:
            r = doc["reproducer"]
            print(f"smallest failure: pi={r['pi']} rho={r['rho']} n={r['n']}", file=out)
    return FAILED if fails else OK


def _choices(rule, pi, rho, n):
    return sepdesc_choices(pi, rho, n) if rule == "sepdesc" else almostsep_choices(pi, rho, n)


def _agrees(pi, rho, rule, theory, n, rng) -> bool:
    ring = random_yring(n, rng) if theory in ("HT", "KT") else None
    orc = oracle_constants(pi, rho, theory, n, ring=ring).nonzero()
    for e in _choices(rule, pi, rho, n):
        got = {r["sigma"]: r["coefficient"] for r in puzzle_table(e, theory, ring)}
        if set(got) != set(orc) or any(got[s] != orc[s] for s in got):
            return False
    return True


def _minimize(fails, rule, theory, n, rng) -> dict:
    """The failing pair of least total length, at the least n that still fails."""
    pi, rho = min(fails, key=lambda t: (inversion_number(t[0]) + inversion_number(t[1]), t))
    best = n
    for m in range(max(len(pi), len(rho), 1), n):
        if _choices(rule, pi, rho, m) and not _agrees(pi, rho, rule, theory, m, rng):
            best = m
            break
    return {"pi": str(pi), "rho": str(rho), "n": best}


# ---------------------------------------------------------------------------
# plumbing


def _parse(s: str) -> tuple:
    try:
        return parse_string(s)
    except ValueError as exc:
        raise BadInput(str(exc)) from None


def _request(a) -> dict:
    return {k: v for k, v in sorted(vars(a).items()) if k != "func"}


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    if isinstance(x, Permutation):
        return str(x)
    if x is None or isinstance(x, (bool, int, str)):
        return x
    return str(x)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="schubpuzzle", description=__doc__.split("\n\n")[0].strip())
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("multiply", help="structure constants of S_pi * S_rho")
    m.add_argument("--pi", required=True)
    m.add_argument("--rho", required=True)
    m.add_argument("--theory", choices=("H", "K", "HT", "KT"), default="H")
    m.add_argument("--rule", choices=("auto", "sepdesc", "almostsep"), default="auto")
    m.add_argument("--n", type=int)
    m.add_argument("--k", type=int, help="position of the blank (default: smallest valid)")
    m.add_argument("--method", choices=("puzzle", "oracle", "both"), default="puzzle")
    m.add_argument("--pad", type=int, help="also run at every size up to this n and report stability")
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_multiply)

    z = sub.add_parser("puzzles", help="enumerate the puzzles of one boundary")
    z.add_argument("--lambda", dest="lam", required=True, help="NW side, read from the bottom up")
    z.add_argument("--mu", required=True, help="NE side, read from the top down")
    z.add_argument("--nu", help="S side, read left to right (optional filter)")
    z.add_argument("--rule", choices=("sepdesc", "almostsep"), default="sepdesc")
    z.add_argument("--theory", default="H")
    z.add_argument("--k", type=int)
    z.add_argument("--d", type=int)
    z.add_argument("--render", help="write each puzzle to this file (.svg, .tikz or .json)")
    z.add_argument("--json", action="store_true")
    z.set_defaults(func=cmd_puzzles)

    e = sub.add_parser("encode", help="string encodings of a pair")
    e.add_argument("--pi", required=True)
    e.add_argument("--rho", required=True)
    e.add_argument("--rule", choices=("auto", "sepdesc", "almostsep"), default="auto")
    e.add_argument("--n", type=int)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_encode)

    u = sub.add_parser("euler", help="Euler characteristic from H-fugacities")
    u.add_argument("--lambda", dest="lam", required=True)
    u.add_argument("--mu", required=True)
    u.add_argument("--nu", required=True, help="S side of the puzzles, left to right")
    u.add_argument("--rule", choices=("sepdesc", "almostsep"), default="sepdesc")
    u.add_argument("--k", type=int)
    u.add_argument("--d", type=int)
    u.add_argument("--json", action="store_true")
    u.set_defaults(func=cmd_euler)

    v = sub.add_parser("verify", help="compare puzzle and oracle constants")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--samples", default="50", help="number of pairs, or 'all'")
    v.add_argument("--rule", choices=("sepdesc", "almostsep"), default="sepdesc")
    v.add_argument("--theory", choices=("H", "K", "HT", "KT"), default="H")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    a = build_parser().parse_args(argv)
    try:
        code = a.func(a, out)
    except (BadInput, BoundaryMismatch, NotSeparated, NotAlmostSeparated, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = BAD_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
