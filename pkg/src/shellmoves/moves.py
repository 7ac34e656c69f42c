"""Local moves on Gauss diagrams.

Eight rewrite kinds: insertion/deletion of an isolated chord (R1), of a
cancelling adjacent pair (R2, in the parallel and nested variants), the
triple-pair exchange (R3), sliding a shell across its base chord (S1), and
swapping two adjacent endpoints at the price of one shell on each chord (S2).

A move site pins the rewrite to concrete positions in the current words, so
sites can be serialized, replayed, and invalidated (StaleSite) once the
diagram changes underneath them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .diagram import INITIAL, TERMINAL, Endpoint, GaussDiagram
from .errors import StaleSite

__all__ = [
    "MOVE_KINDS",
    "MoveSite",
    "find_move_sites",
    "apply_move",
    "apply_move_with_inverse",
    "random_walk",
    "site_to_text",
    "site_from_text",
]

R1_INSERT = "R1_insert"
R1_DELETE = "R1_delete"
R2_INSERT = "R2_insert"
R2_DELETE = "R2_delete"
R3 = "R3"
S1 = "S1"
S2_INSERT = "S2_insert"
S2_DELETE = "S2_delete"

MOVE_KINDS = (R1_INSERT, R1_DELETE, R2_INSERT, R2_DELETE, R3,
              S1, S2_INSERT, S2_DELETE)

_GROWTH = {R1_INSERT: 1, R2_INSERT: 2, S2_INSERT: 2}


@dataclass(frozen=True)
class MoveSite:
    """A concrete occurrence of a move pattern.

    ``anchors`` are (circle, position) pairs into the current words: gap
    positions for insertions, first-token positions of the matched adjacent
    pairs or windows otherwise.  ``params`` carries the kind-specific extras
    (sign, insertion order, R2 variant).
    """

    kind: str
    anchors: tuple[tuple[int, int], ...]
    params: tuple[str, ...] = ()


def _sgn(s: str) -> int:
    if s == "+":
        return 1
    if s == "-":
        return -1
    raise StaleSite(f"bad sign parameter {s!r}")


def _fresh_ids(G: GaussDiagram, n: int) -> list[str]:
    out: list[str] = []
    k = len(G.signs)
    while len(out) < n:
        k += 1
        cid = f"n{k}"
        if cid not in G.signs:
            out.append(cid)
    return out


def _insert_blocks(word, inserts):
    """Insert blocks before the given gap indices of the original word; a gap
    equal to the word length appends.  Blocks aimed at the same gap land in
    list order.
    """
    out: list[Endpoint] = []
    n = len(word)
    for i in range(n):
        for g, blk in inserts:
            if g == i:
                out.extend(blk)
        out.append(word[i])
    for g, blk in inserts:
        if g >= n:
            out.extend(blk)
    return tuple(out)


def _delete_positions(word, positions):
    drop = set(positions)
    return tuple(ep for i, ep in enumerate(word) if i not in drop)


def _pair(G: GaussDiagram, c: int, p: int) -> tuple[Endpoint, Endpoint]:
    try:
        word = G.circles[c]
    except IndexError:
        raise StaleSite(f"no circle {c}") from None
    if not word:
        raise StaleSite("empty circle")
    return word[p % len(word)], word[(p + 1) % len(word)]


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise StaleSite(msg)


def _flank_block(shell: str, around: Endpoint, sign_around: int
                 ) -> list[Endpoint]:
    """Surround an endpoint with a fresh shell, oriented by its sign."""
    if sign_around > 0:
        return [Endpoint(shell, INITIAL), around, Endpoint(shell, TERMINAL)]
    return [Endpoint(shell, TERMINAL), around, Endpoint(shell, INITIAL)]


# -- apply -------------------------------------------------------------------


def apply_move(G: GaussDiagram, site: MoveSite) -> GaussDiagram:
    """Rewrite ``G`` at ``site``; raises StaleSite if the pattern is gone."""
    return apply_move_with_inverse(G, site)[0]


def apply_move_with_inverse(G: GaussDiagram, site: MoveSite
                            ) -> tuple[GaussDiagram, MoveSite]:
    """Apply a move and return the site that undoes it in the image."""
    handler = _APPLY[site.kind] if site.kind in _APPLY else None
    if handler is None:
        raise StaleSite(f"unknown move kind {site.kind!r}")
    return handler(G, site)


def _new(G: GaussDiagram, signs, circles) -> GaussDiagram:
    return GaussDiagram(signs, circles, validate=False)


def _apply_r1_insert(G, site):
    (c, g), = site.anchors
    sgn, order = site.params
    eps = _sgn(sgn)
    _check(0 <= c < G.mu, "bad circle")
    word = G.circles[c]
    _check(0 <= g <= len(word), "bad gap")
    cid, = _fresh_ids(G, 1)
    pair = [Endpoint(cid, INITIAL), Endpoint(cid, TERMINAL)]
    if order == "TI":
        pair.reverse()
    circles = list(G.circles)
    circles[c] = _insert_blocks(word, [(g, pair)])
    signs = dict(G.signs)
    signs[cid] = eps
    return _new(G, signs, circles), MoveSite(R1_DELETE, ((c, g),))


def _apply_r1_delete(G, site):
    (c, p), = site.anchors
    u, v = _pair(G, c, p)
    _check(u.chord == v.chord, "tokens are not a free chord")
    word = G.circles[c]
    n = len(word)
    p %= n
    q = (p + 1) % n
    circles = list(G.circles)
    circles[c] = _delete_positions(word, (p, q))
    signs = dict(G.signs)
    sign = signs.pop(u.chord)
    gap = q - (1 if p < q else 0)
    order = "IT" if u.kind == INITIAL else "TI"
    inv = MoveSite(R1_INSERT, ((c, gap),),
                   ("+" if sign > 0 else "-", order))
    return _new(G, signs, circles), inv


def _apply_r2_insert(G, site):
    (c1, g1), (c2, g2) = site.anchors
    variant, sgn = site.params[:2]
    # when both blocks target one gap, "tfirst" puts the terminal pair first
    t_first = "tfirst" in site.params[2:]
    eps = _sgn(sgn)
    _check(variant in ("par", "anti"), f"bad variant {variant!r}")
    _check(not t_first or (c1, g1) == (c2, g2), "tfirst needs a shared gap")
    for c, g in site.anchors:
        _check(0 <= c < G.mu, "bad circle")
        _check(0 <= g <= len(G.circles[c]), "bad gap")
    x, y = _fresh_ids(G, 2)
    head = [Endpoint(x, INITIAL), Endpoint(y, INITIAL)]
    tail = [Endpoint(x, TERMINAL), Endpoint(y, TERMINAL)]
    if variant == "anti":
        tail.reverse()
    circles = list(G.circles)
    if c1 == c2:
        blocks = [(g2, tail), (g1, head)] if t_first else [(g1, head), (g2, tail)]
        circles[c1] = _insert_blocks(G.circles[c1], blocks)
        if g1 < g2:
            p1, p2 = g1, g2 + 2
        elif g1 > g2:
            p1, p2 = g1 + 2, g2
        elif t_first:
            p1, p2 = g1 + 2, g1
        else:
            p1, p2 = g1, g1 + 2
    else:
        circles[c1] = _insert_blocks(G.circles[c1], [(g1, head)])
        circles[c2] = _insert_blocks(G.circles[c2], [(g2, tail)])
        p1, p2 = g1, g2
    signs = dict(G.signs)
    signs[x] = eps
    signs[y] = -eps
    inv = MoveSite(R2_DELETE, ((c1, p1), (c2, p2)), (variant,))
    return _new(G, signs, circles), inv


def _validate_r2_pattern(G, site):
    (c1, p1), (c2, p2) = site.anchors
    variant, = site.params
    a, b = _pair(G, c1, p1)
    _check(a.kind == INITIAL and b.kind == INITIAL, "first pair must be initials")
    _check(a.chord != b.chord, "pair needs two chords")
    x, y = a.chord, b.chord
    _check(G.signs[x] == -G.signs[y], "chords must have opposite signs")
    u, v = _pair(G, c2, p2)
    if variant == "par":
        _check((u.chord, u.kind) == (x, TERMINAL)
               and (v.chord, v.kind) == (y, TERMINAL), "terminal pair mismatch")
    elif variant == "anti":
        _check((u.chord, u.kind) == (y, TERMINAL)
               and (v.chord, v.kind) == (x, TERMINAL), "terminal pair mismatch")
    else:
        raise StaleSite(f"bad variant {variant!r}")
    return x, y


def _apply_r2_delete(G, site):
    x, y = _validate_r2_pattern(G, site)
    (c1, p1), (c2, p2) = site.anchors
    n1 = len(G.circles[c1])
    pos = {(c1, p1 % n1), (c1, (p1 + 1) % n1)}
    n2 = len(G.circles[c2])
    pos |= {(c2, p2 % n2), (c2, (p2 + 1) % n2)}
    _check(len(pos) == 4, "overlapping pairs")
    circles = list(G.circles)
    by_circle: dict[int, list[int]] = {}
    for c, p in pos:
        by_circle.setdefault(c, []).append(p)
    for c, ps in by_circle.items():
        circles[c] = _delete_positions(G.circles[c], ps)
    signs = dict(G.signs)
    eps = signs.pop(x)
    signs.pop(y)
    variant = site.params[0]

    def _gap(c, p):
        second = (p + 1) % len(G.circles[c])
        removed_before = sum(1 for cc, pp in pos if cc == c and pp < second)
        return second - removed_before

    g1, g2 = _gap(c1, p1), _gap(c2, p2)
    params = [variant, "+" if eps > 0 else "-"]
    if c1 == c2 and g1 == g2 and (p2 % n1 + 2) % n1 == p1 % n1:
        params.append("tfirst")
    inv = MoveSite(R2_INSERT, ((c1, g1), (c2, g2)), tuple(params))
    return _new(G, signs, circles), inv


def _validate_r3(G, site):
    """The exchange acts on three mutually adjacent endpoint pairs:
    (hp>, hq>), (hp<, x<), (hq<, x>) with signs x:+, hp:-, hq:-, or the
    swapped image of that configuration."""
    pairs = [_pair(G, c, p) for c, p in site.anchors]
    for cfg in ("A", "B"):
        pr = pairs if cfg == "A" else [(b, a) for a, b in pairs]
        (t1a, t1b), (t2a, t2b), (t3a, t3b) = pr
        if (t1a.kind, t1b.kind) != (TERMINAL, TERMINAL):
            continue
        if (t2a.kind, t2b.kind) != (INITIAL, INITIAL):
            continue
        if (t3a.kind, t3b.kind) != (INITIAL, TERMINAL):
            continue
        hp, hq = t1a.chord, t1b.chord
        x = t2b.chord
        if t2a.chord != hp or t3a.chord != hq or t3b.chord != x:
            continue
        if len({x, hp, hq}) != 3:
            continue
        if G.signs[x] == 1 and G.signs[hp] == -1 and G.signs[hq] == -1:
            return
    raise StaleSite("no triple-exchange pattern at the given pairs")


def _apply_r3(G, site):
    _validate_r3(G, site)
    pos = set()
    for c, p in site.anchors:
        n = len(G.circles[c])
        pos |= {(c, p % n), (c, (p + 1) % n)}
    _check(len(pos) == 6, "overlapping pairs")
    circles = [list(w) for w in G.circles]
    for c, p in site.anchors:
        n = len(G.circles[c])
        a, b = p % n, (p + 1) % n
        circles[c][a], circles[c][b] = circles[c][b], circles[c][a]
    return (_new(G, G.signs, [tuple(w) for w in circles]),
            MoveSite(R3, site.anchors))


def _apply_s1(G, site):
    (c, p), = site.anchors
    word = G.circles[c]
    n = len(word)
    _check(n >= 3, "word too short for a shell")
    p %= n
    e = word[p]
    u, v = word[(p - 1) % n], word[(p + 1) % n]
    _check(u.chord == v.chord and u.chord != e.chord,
           "no shell flanking this endpoint")
    shell = u.chord
    _check((u.kind == INITIAL) == (G.endpoint_sign(e) > 0),
           "flanking chord is not a shell (wrong orientation)")
    base = e.chord
    other_kind = TERMINAL if e.kind == INITIAL else INITIAL
    circles = [[ep for ep in w if ep.chord != shell] for w in G.circles]
    c2, p2 = next((ci, pi) for ci, w in enumerate(circles)
                  for pi, ep in enumerate(w)
                  if ep.chord == base and ep.kind == other_kind)
    target = circles[c2][p2]
    block = _flank_block(shell, target, G.endpoint_sign(target))
    circles[c2][p2:p2 + 1] = block
    new = _new(G, G.signs, [tuple(w) for w in circles])
    return new, MoveSite(S1, ((c2, p2 + 1),))


def _apply_s2_insert(G, site):
    (c, p), = site.anchors
    e, f = _pair(G, c, p)
    _check(e.chord != f.chord, "adjacent endpoints must belong to two chords")
    word = G.circles[c]
    n = len(word)
    p %= n
    se, sf = G.endpoint_sign(e), G.endpoint_sign(f)
    u, v = _fresh_ids(G, 2)  # u shields f, v shields e
    signs = dict(G.signs)
    signs[v] = se * sf
    signs[u] = -se * sf
    block = _flank_block(u, f, sf) + _flank_block(v, e, se)
    circles = list(G.circles)
    if (p + 1) % n == (p + 1):
        circles[c] = word[:p] + tuple(block) + word[p + 2:]
        anchor = p
    else:  # pair wraps around the basepoint; rotate it into view
        rot = word[p:] + word[:p]
        circles[c] = tuple(block) + rot[2:]
        anchor = 0
    return _new(G, signs, circles), MoveSite(S2_DELETE, ((c, anchor),))


def _apply_s2_delete(G, site):
    (c, p), = site.anchors
    word = G.circles[c]
    n = len(word)
    _check(n >= 6, "word too short")
    p %= n
    t = [word[(p + i) % n] for i in range(6)]
    _check(len({(ep.chord, ep.kind) for ep in t}) == 6, "window overlaps itself")
    u, f, u2, v, e, v2 = t
    _check(u.chord == u2.chord and v.chord == v2.chord, "not two shells")
    _check(u.chord != v.chord, "shells must be distinct")
    _check(len({u.chord, v.chord, e.chord, f.chord}) == 4, "chords must differ")
    se, sf = G.endpoint_sign(e), G.endpoint_sign(f)
    _check((u.kind == INITIAL) == (sf > 0), "first shell mis-oriented")
    _check((v.kind == INITIAL) == (se > 0), "second shell mis-oriented")
    _check(G.signs[v.chord] == se * sf and G.signs[u.chord] == -se * sf,
           "shell signs do not cancel")
    rot = word[p:] + word[:p]
    circles = list(G.circles)
    circles[c] = (e, f) + rot[6:]
    signs = dict(G.signs)
    signs.pop(u.chord)
    signs.pop(v.chord)
    return _new(G, signs, circles), MoveSite(S2_INSERT, ((c, 0),))


_APPLY = {
    R1_INSERT: _apply_r1_insert,
    R1_DELETE: _apply_r1_delete,
    R2_INSERT: _apply_r2_insert,
    R2_DELETE: _apply_r2_delete,
    R3: _apply_r3,
    S1: _apply_s1,
    S2_INSERT: _apply_s2_insert,
    S2_DELETE: _apply_s2_delete,
}


# -- site enumeration ----------------------------------------------------------


def _gaps(G: GaussDiagram):
    for c, word in enumerate(G.circles):
        for g in range(max(len(word), 1)):
            yield c, g


def _adjacent_pairs(G: GaussDiagram):
    for c, word in enumerate(G.circles):
        n = len(word)
        if n < 2:
            continue
        for p in range(n):
            yield c, p, word[p], word[(p + 1) % n]


def _sites_r1_insert(G):
    return [MoveSite(R1_INSERT, ((c, g),), (s, "IT"))
            for c, g in _gaps(G) for s in ("+", "-")]


def _sites_r1_delete(G):
    out = []
    for cid in G.signs:
        if not G.is_free(cid):
            continue
        ci, pi = G.locate(cid, INITIAL)
        _, pt = G.locate(cid, TERMINAL)
        n = len(G.circles[ci])
        cands = [p for p in (pi, pt) if (p + 1) % n in (pi, pt) and p != (p + 1) % n]
        out.append(MoveSite(R1_DELETE, ((ci, min(cands)),)))
    return out


def _sites_r2_insert(G):
    gaps = list(_gaps(G))
    out = []
    for a in gaps:
        for b in gaps:
            for variant in ("par", "anti"):
                for s in ("+", "-"):
                    out.append(MoveSite(R2_INSERT, (a, b), (variant, s)))
                    if a == b:
                        out.append(MoveSite(R2_INSERT, (a, b),
                                            (variant, s, "tfirst")))
    return out


def _sites_r2_delete(G):
    where = {}
    for c, p, u, v in _adjacent_pairs(G):
        where[(u.chord, u.kind, v.chord, v.kind)] = (c, p)
    out = []
    for c, p, u, v in _adjacent_pairs(G):
        if u.kind != INITIAL or v.kind != INITIAL or u.chord == v.chord:
            continue
        x, y = u.chord, v.chord
        if G.signs[x] != -G.signs[y]:
            continue
        spot = where.get((x, TERMINAL, y, TERMINAL))
        if spot is not None:
            out.append(MoveSite(R2_DELETE, ((c, p), spot), ("par",)))
        spot = where.get((y, TERMINAL, x, TERMINAL))
        if spot is not None:
            out.append(MoveSite(R2_DELETE, ((c, p), spot), ("anti",)))
    return out


def _sites_r3(G):
    tt, ii, it, ti = {}, {}, {}, {}
    for c, p, u, v in _adjacent_pairs(G):
        key = (u.chord, v.chord)
        spot = (c, p)
        if u.kind == TERMINAL and v.kind == TERMINAL:
            tt[key] = spot
        elif u.kind == INITIAL and v.kind == INITIAL:
            ii[key] = spot
        elif u.kind == INITIAL:
            it[key] = spot
        else:
            ti[key] = spot
    out = []
    for (hp, hq), a1 in tt.items():
        if hp == hq or G.signs[hp] != -1 or G.signs[hq] != -1:
            continue
        # forward configuration
        for (h, x), a2 in ii.items():
            if h != hp or x in (hp, hq) or G.signs[x] != 1:
                continue
            a3 = it.get((hq, x))
            if a3 is not None:
                out.append(MoveSite(R3, (a1, a2, a3)))
        # image configuration, matched so the exchange is an involution
    for (hq, hp), a1 in tt.items():
        if hp == hq or G.signs[hp] != -1 or G.signs[hq] != -1:
            continue
        for (x, h), a2 in ii.items():
            if h != hp or x in (hp, hq) or G.signs[x] != 1:
                continue
            a3 = ti.get((x, hq))
            if a3 is not None:
                out.append(MoveSite(R3, (a1, a2, a3)))
    return out


def _sites_s1(G):
    out = []
    for c, word in enumerate(G.circles):
        n = len(word)
        if n < 3:
            continue
        for p in range(n):
            e = word[p]
            u, v = word[(p - 1) % n], word[(p + 1) % n]
            if u.chord != v.chord or u.chord == e.chord:
                continue
            if (u.kind == INITIAL) == (G.endpoint_sign(e) > 0):
                out.append(MoveSite(S1, ((c, p),)))
    return out


def _sites_s2_insert(G):
    return [MoveSite(S2_INSERT, ((c, p),))
            for c, p, u, v in _adjacent_pairs(G) if u.chord != v.chord]


def _sites_s2_delete(G):
    out = []
    for c, word in enumerate(G.circles):
        n = len(word)
        if n < 6:
            continue
        for p in range(n):
            site = MoveSite(S2_DELETE, ((c, p),))
            try:
                _apply_s2_delete(G, site)
            except StaleSite:
                continue
            out.append(site)
    return out


_FINDERS = {
    R1_INSERT: _sites_r1_insert,
    R1_DELETE: _sites_r1_delete,
    R2_INSERT: _sites_r2_insert,
    R2_DELETE: _sites_r2_delete,
    R3: _sites_r3,
    S1: _sites_s1,
    S2_INSERT: _sites_s2_insert,
    S2_DELETE: _sites_s2_delete,
}


def find_move_sites(G: GaussDiagram, kind: str) -> list[MoveSite]:
    """All occurrences of the given move pattern in ``G``."""
    try:
        finder = _FINDERS[kind]
    except KeyError:
        raise ValueError(f"unknown move kind {kind!r}") from None
    return finder(G)


# -- random walks ---------------------------------------------------------------


def _sample_site(G: GaussDiagram, kind: str, rng: random.Random
                 ) -> MoveSite | None:
    """Uniform site of the given kind; insertion kinds are sampled directly
    instead of enumerated."""
    if kind == R1_INSERT:
        gaps = list(_gaps(G))
        return MoveSite(R1_INSERT, (rng.choice(gaps),),
                        (rng.choice("+-"), "IT"))
    if kind == R2_INSERT:
        gaps = list(_gaps(G))
        a, b = rng.choice(gaps), rng.choice(gaps)
        params = [rng.choice(["par", "anti"]), rng.choice("+-")]
        if a == b and rng.random() < 0.5:
            params.append("tfirst")
        return MoveSite(R2_INSERT, (a, b), tuple(params))
    sites = find_move_sites(G, kind)
    return rng.choice(sites) if sites else None


def random_walk(G: GaussDiagram, steps: int, seed: int, chord_cap: int
                ) -> tuple[GaussDiagram, list[MoveSite]]:
    """Apply ``steps`` random applicable moves, deterministically in ``seed``.

    Kinds with no sites are re-rolled; insertions that would push the chord
    count past ``chord_cap`` count as having none.
    """
    if chord_cap < len(G):
        raise ValueError("chord_cap below current chord count")
    rng = random.Random(seed)
    trace: list[MoveSite] = []
    for _ in range(steps):
        kinds = list(MOVE_KINDS)
        rng.shuffle(kinds)
        for kind in kinds:
            if len(G) + _GROWTH.get(kind, 0) > chord_cap:
                continue
            site = _sample_site(G, kind, rng)
            if site is None:
                continue
            G = apply_move(G, site)
            trace.append(site)
            break
        else:
            raise ValueError("no applicable move")
    return G, trace


# -- trace text -------------------------------------------------------------------


def site_to_text(site: MoveSite) -> str:
    anchors = " ".join(f"{c + 1}:{p}" for c, p in site.anchors)
    extra = (" " + " ".join(site.params)) if site.params else ""
    return f"{site.kind} @ {anchors}{extra}"


def site_from_text(line: str) -> MoveSite:
    parts = line.split()
    if len(parts) < 3 or parts[1] != "@" or parts[0] not in MOVE_KINDS:
        raise ValueError(f"bad trace line {line!r}")
    kind = parts[0]
    anchors: list[tuple[int, int]] = []
    params: list[str] = []
    for tok in parts[2:]:
        if ":" in tok and not params:
            c, _, p = tok.partition(":")
            try:
                anchors.append((int(c) - 1, int(p)))
            except ValueError:
                raise ValueError(f"bad anchor {tok!r}") from None
        else:
            params.append(tok)
    return MoveSite(kind, tuple(anchors), tuple(params))
