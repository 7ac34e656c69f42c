"""Shell-move equivalence decisions, realization of target invariants, and a
bounded breadth-first oracle over the move graph.

Equivalence of profiles is decided from the complete invariant suite; the
oracle exists to cross-check the decision procedure on desk-scale diagrams by
actually exhibiting move sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .algebra import LaurentPoly
from .diagram import (
    Endpoint,
    GaussDiagram,
    INITIAL,
    TERMINAL,
    canonical_key,
    swap_components,
)
from .errors import (
    BudgetExceeded,
    ComponentCountMismatch,
    ConstraintViolated,
    NegativeLambda,
    NotRealizable,
    UnsupportedComponentCount,
)
from .invariants import LinkProfile, profile, self_writhe_tables
from .moves import MoveSite, apply_move, find_move_sites
from .normal_form import build_knot_form, build_link_diagram

__all__ = [
    "Verdict",
    "s_equivalent",
    "check_consistency",
    "realize_knot",
    "realize_link",
    "bfs_witness",
]


@dataclass(frozen=True)
class Verdict:
    equivalent: bool
    reason: str

    def __bool__(self) -> bool:
        return self.equivalent


_OK = "all conditions met"


def s_equivalent(G: GaussDiagram, H: GaussDiagram) -> Verdict:
    """Decide shell-move equivalence from the complete invariant suite."""
    if G.mu != H.mu:
        raise ComponentCountMismatch(f"{G.mu} vs {H.mu} circles")
    if G.mu == 1:
        wg, wh = profile(G).writhe, profile(H).writhe
        if wg != wh:
            return Verdict(False, f"writhe polynomial mismatch: {wg} vs {wh}")
        return Verdict(True, _OK)
    if G.mu != 2:
        raise UnsupportedComponentCount(
            f"equivalence is decided for 1 or 2 circles, not {G.mu}")
    pg, ph = profile(G), profile(H)
    if pg.lam != ph.lam:
        return Verdict(
            False, f"virtual linking number mismatch: {pg.lam} vs {ph.lam}")
    if pg.lam < 0:
        # relabelling both components commutes with every move
        return s_equivalent(swap_components(G), swap_components(H))
    if (pg.lk12, pg.lk21) != (ph.lk12, ph.lk21):
        return Verdict(
            False, "linking number mismatch: "
            f"({pg.lk12}, {pg.lk21}) vs ({ph.lk12}, {ph.lk21})")
    for which, a, b in (("1", pg.invariant_jn1(), ph.invariant_jn1()),
                        ("2", pg.invariant_jn2(), ph.invariant_jn2())):
        for n in sorted(set(a) | set(b)):
            if a.get(n, 0) != b.get(n, 0):
                return Verdict(
                    False, f"component-{which} index writhe mismatch at n={n}:"
                    f" {a.get(n, 0)} vs {b.get(n, 0)}")
    if pg.linking_class != ph.linking_class:
        return Verdict(False, "linking class mismatch: "
                       f"{pg.linking_class} vs {ph.linking_class}")
    if pg.lam >= 2 and pg.shell_sum != ph.shell_sum:
        return Verdict(False, "shell sum mismatch: "
                       f"{pg.shell_sum} vs {ph.shell_sum}")
    return Verdict(True, _OK)


def check_consistency(pr: LinkProfile) -> bool:
    """The index-weighted writhe sums and the class derivative cancel:
    exactly for lambda = 0, mod lambda otherwise (undefined for |lambda| = 1)."""
    lam = abs(pr.lam)
    if lam == 1:
        raise ValueError("consistency relation is undefined for |lambda| = 1")
    total = (sum(n * v for n, v in pr.jn1.items())
             + sum(n * v for n, v in pr.jn2.items())
             + pr.f_prime)
    return total == 0 if lam == 0 else total % lam == 0


# -- realization ----------------------------------------------------------------


def realize_knot(f: LaurentPoly) -> GaussDiagram:
    """A one-circle diagram whose writhe polynomial is ``f``.

    Realizable exactly when f(1) = f'(1) = 0; the snail coefficients are the
    coefficients of f away from exponents 0 and 1.
    """
    if f.eval_at_one() != 0:
        raise NotRealizable(f"value at 1 is {f.eval_at_one()}, not 0")
    if f.derivative_at_one() != 0:
        raise NotRealizable(
            f"derivative at 1 is {f.derivative_at_one()}, not 0")
    return build_knot_form({n: c for n, c in f.coeffs().items()
                            if n not in (0, 1)})


def _fresh(G: GaussDiagram, n: int) -> list[str]:
    out, k = [], len(G.signs)
    while len(out) < n:
        k += 1
        if f"r{k}" not in G.signs:
            out.append(f"r{k}")
    return out


def _dress_endpoint(G: GaussDiagram, chord: str, kind: str, total: int
                    ) -> GaussDiagram:
    """Nest |total| shells of sign sgn(total) directly around an endpoint."""
    if total == 0:
        return G
    c, p = G.locate(chord, kind)
    ep = G.circles[c][p]
    s_ep = G.endpoint_sign(ep)
    sigma = 1 if total > 0 else -1
    ids = _fresh(G, abs(total))
    near, far = (INITIAL, TERMINAL) if s_ep > 0 else (TERMINAL, INITIAL)
    seg: list[Endpoint] = [ep]
    for sid in ids:
        seg = [Endpoint(sid, near)] + seg + [Endpoint(sid, far)]
    word = G.circles[c]
    circles = list(G.circles)
    circles[c] = word[:p] + tuple(seg) + word[p + 1:]
    signs = dict(G.signs)
    signs.update({sid: sigma for sid in ids})
    return GaussDiagram(signs, circles, validate=False)


def _transfer_shells(G: GaussDiagram, chord: str, x: int) -> GaussDiagram:
    """Add shells of sign sum x around a nonself chord's endpoint on the
    first circle and -x around its endpoint on the second; the chord's own
    index and every other chord's index are unchanged, while the per-circle
    shell slots move by x and -x."""
    ini_circle, _ = G.chord_circles(chord)
    first, second = (x, -x) if ini_circle == 0 else (-x, x)
    G = _dress_endpoint(G, chord, INITIAL, first)
    return _dress_endpoint(G, chord, TERMINAL, second)


def _append_gadget(G: GaussDiagram, circle: int, positive: bool
                   ) -> GaussDiagram:
    """Two-chord block that moves one unit of index writhe between the
    slot-1 count and the partner shell slot of the given circle."""
    g, s = _fresh(G, 2)
    if positive:  # main chord lands in slot 1 with sign +, shell in partner
        block = (Endpoint(s, TERMINAL), Endpoint(g, INITIAL),
                 Endpoint(s, INITIAL), Endpoint(g, TERMINAL))
        signs = {g: 1, s: -1}
    else:
        block = (Endpoint(g, INITIAL), Endpoint(s, TERMINAL),
                 Endpoint(g, TERMINAL), Endpoint(s, INITIAL))
        signs = {g: -1, s: 1}
    circles = list(G.circles)
    circles[circle] = circles[circle] + block
    allsigns = dict(G.signs)
    allsigns.update(signs)
    return GaussDiagram(allsigns, circles, validate=False)


def _apply_gadgets(G: GaussDiagram, circle: int, delta: int,
                   flip: bool = False) -> GaussDiagram:
    """Shift the targeted slot of ``circle`` by ``delta`` against its partner
    slot.  ``flip`` targets the partner instead (used for the slot that the
    positive gadget lowers)."""
    positive = (delta > 0) != flip
    for _ in range(abs(delta)):
        G = _append_gadget(G, circle, positive)
    return G


def _nonself_anchor(G: GaussDiagram) -> tuple[GaussDiagram, str]:
    """Some nonself chord, inserting a cancelling parallel pair if none."""
    for cid in G.signs:
        if not G.is_self_chord(cid):
            return G, cid
    q1, q2 = _fresh(G, 2)
    circles = list(G.circles)
    circles[0] = circles[0] + (Endpoint(q1, INITIAL), Endpoint(q2, INITIAL))
    circles[1] = circles[1] + (Endpoint(q1, TERMINAL), Endpoint(q2, TERMINAL))
    signs = dict(G.signs)
    signs.update({q1: 1, q2: -1})
    return GaussDiagram(signs, circles, validate=False), q1


def _check_support(name: str, coeffs: Mapping[int, int], banned: set[int]):
    hit = sorted(set(coeffs) & banned)
    if any(coeffs[n] for n in hit):
        raise ConstraintViolated(
            f"{name} must vanish on slots {sorted(banned)}; got {hit}")


def realize_link(lam: int, a: Mapping[int, int], b: Mapping[int, int],
                 c: Mapping[int, int], d: Mapping[int, int],
                 target_shell_sum: int | None = None) -> GaussDiagram:
    """A 2-component diagram with the given index writhes and linking class.

    ``a``/``b`` are the full index-writhe targets of the two components on
    their defined slots, ``c``/``d`` the linking-class coefficients: arbitrary
    finite maps for lam = 0, a single value c (with the second entry forced
    to c - 1) encoded as {0: c} for lam = 1, and length-lam vectors keyed
    0..lam-1 for lam >= 2.  Admissibility: (a) the coefficient sums must book
    the linking numbers consistently with lam, and (b) the index-weighted
    totals must cancel (mod lam where applicable).
    """
    if lam < 0:
        raise NegativeLambda("realization targets assume lam >= 0")
    a = {n: v for n, v in a.items() if v}
    b = {n: v for n, v in b.items() if v}
    if lam == 0:
        return _realize_lam0(a, b, c, d, target_shell_sum)
    if lam == 1:
        return _realize_lam1(a, b, c, d, target_shell_sum)
    return _realize_lam_ge2(lam, a, b, c, d, target_shell_sum)


def _realize_lam0(a, b, c, d, target_shell_sum):
    _check_support("component-1 writhe targets", a, {0})
    _check_support("component-2 writhe targets", b, {0})
    c = {m: v for m, v in c.items() if v}
    d = {m: v for m, v in d.items() if v}
    if sum(c.values()) != sum(d.values()):
        raise ConstraintViolated(
            "(a): the two nonself coefficient sums must be equal, got "
            f"{sum(c.values())} and {sum(d.values())}")
    total = (sum(n * v for n, v in a.items())
             + sum(n * v for n, v in b.items())
             + sum(m * v for m, v in c.items())
             + sum(m * v for m, v in d.items()))
    if total != 0:
        raise ConstraintViolated(
            f"(b): the index-weighted target total must vanish, got {total}")
    if target_shell_sum is not None and \
            target_shell_sum != a.get(1, 0) + b.get(1, 0):
        raise ConstraintViolated(
            "shell-sum target conflicts with the slot-1 writhe targets")
    G = build_link_diagram({n: v for n, v in a.items() if n != 1},
                           {n: v for n, v in b.items() if n != 1}, c, d)
    t1, _ = self_writhe_tables(G)
    x = a.get(1, 0) - t1.get(1, 0)
    if x:
        G, anchor = _nonself_anchor(G)
        G = _transfer_shells(G, anchor, x)
    return G


def _realize_lam1(a, b, c, d, target_shell_sum):
    _check_support("component-1 writhe targets", a, {0, -1})
    _check_support("component-2 writhe targets", b, {0, 1})
    if {m for m, v in c.items() if v} - {0} or \
            {m for m, v in d.items() if v} - {0}:
        raise ConstraintViolated("lam = 1 takes single linking numbers")
    c0 = c.get(0, 0)
    if 0 in d and d[0] != c0 - 1:
        raise ConstraintViolated(
            f"(a): second linking number is forced to {c0 - 1}")
    if target_shell_sum is not None:
        raise ConstraintViolated("no shell-sum invariant exists for lam = 1")
    G = build_link_diagram({n: v for n, v in a.items() if n != 1},
                           {n: v for n, v in b.items() if n != 2},
                           {0: c0}, {0: c0 - 1})
    t1, t2 = self_writhe_tables(G)
    G = _apply_gadgets(G, 0, a.get(1, 0) - t1.get(1, 0))
    G = _apply_gadgets(G, 1, b.get(2, 0) - t2.get(2, 0), flip=True)
    return G


def _realize_lam_ge2(lam, a, b, c, d, target_shell_sum):
    _check_support("component-1 writhe targets", a, {0, -lam})
    _check_support("component-2 writhe targets", b, {0, lam})
    c = {m: v for m, v in c.items() if v}
    d = {m: v for m, v in d.items() if v}
    if (set(c) | set(d)) - set(range(lam)):
        raise ConstraintViolated(
            f"nonself coefficients must be keyed 0..{lam - 1}")
    if sum(c.values()) - sum(d.values()) != lam:
        raise ConstraintViolated(
            "(a): nonself coefficient sums must differ by lam, got "
            f"{sum(c.values())} - {sum(d.values())}")
    total = (sum(n * v for n, v in a.items())
             + sum(n * v for n, v in b.items())
             + sum(m * v for m, v in c.items())
             - sum(m * v for m, v in d.items()))
    if total % lam != 0:
        raise ConstraintViolated(
            f"(b): index-weighted target total must vanish mod lam, "
            f"got {total} mod {lam}")
    four = (a.get(1, 0) + a.get(-lam + 1, 0)
            + b.get(1, 0) + b.get(lam + 1, 0))
    if target_shell_sum is not None and target_shell_sum != four:
        raise ConstraintViolated(
            "shell-sum target conflicts with the four slot targets")
    k = total // lam
    p = -k - a.get(-lam + 1, 0) + b.get(lam + 1, 0)
    G = build_link_diagram(
        {n: v for n, v in a.items() if n not in (1, -lam + 1)},
        {n: v for n, v in b.items() if n not in (1, lam + 1)},
        {p + m: v for m, v in c.items()},
        {-p - m: v for m, v in d.items()})
    t1, _ = self_writhe_tables(G)
    # amount the component-1 shell slots are short; the anchor transfer
    # moves exactly that much over from component 2
    x = (a.get(1, 0) + a.get(-lam + 1, 0)
         - t1.get(1, 0) - t1.get(-lam + 1, 0))
    if x:
        G, anchor = _nonself_anchor(G)
        G = _transfer_shells(G, anchor, x)
    t1, t2 = self_writhe_tables(G)
    G = _apply_gadgets(G, 0, a.get(1, 0) - t1.get(1, 0))
    G = _apply_gadgets(G, 1, b.get(1, 0) - t2.get(1, 0))
    return G


# -- bounded oracle ---------------------------------------------------------------


_EXPANSION_ORDER = ("R1_delete", "R2_delete", "S2_delete", "S1", "R3",
                    "R1_insert", "R2_insert", "S2_insert")


def bfs_witness(G: GaussDiagram, H: GaussDiagram, max_depth: int,
                chord_cap: int, node_budget: int = 20000
                ) -> list[MoveSite] | None:
    """Breadth-first search for a move sequence from ``G`` to ``H``.

    Works modulo diagram isomorphism; meant for desk-scale inputs (a few
    chords, shallow depth).  Returns a replayable trace, or None when the
    bounded graph holds no path.  Raises BudgetExceeded once ``node_budget``
    candidate diagrams have been generated without an answer, in which case
    absence is not certified.
    """
    if G.mu != H.mu:
        raise ComponentCountMismatch(f"{G.mu} vs {H.mu} circles")
    target = canonical_key(H)
    if canonical_key(G) == target:
        return []
    nodes: list[tuple[GaussDiagram, int, MoveSite | None]] = [(G, -1, None)]
    seen = {canonical_key(G)}
    frontier = [0]
    generated = 0
    for _ in range(max_depth):
        nxt: list[int] = []
        for idx in frontier:
            diagram = nodes[idx][0]
            for kind in _EXPANSION_ORDER:
                if len(diagram) + _growth(kind) > chord_cap:
                    continue
                for site in find_move_sites(diagram, kind):
                    child = apply_move(diagram, site)
                    generated += 1
                    if generated > node_budget:
                        raise BudgetExceeded(
                            f"{node_budget} candidates generated")
                    key = canonical_key(child)
                    if key == target:
                        trace = [site]
                        back = idx
                        while back > 0:
                            trace.append(nodes[back][2])
                            back = nodes[back][1]
                        trace.reverse()
                        return trace
                    if key in seen:
                        continue
                    seen.add(key)
                    nodes.append((child, idx, site))
                    nxt.append(len(nodes) - 1)
        if not nxt:
            return None
        frontier = nxt
    return None


def _growth(kind: str) -> int:
    return {"R1_insert": 1, "R2_insert": 2, "S2_insert": 2}.get(kind, 0)
