"""Chord indices and the full invariant suite for 1- and 2-circle diagrams.

The index of a self-chord is the endpoint-sign sum along the arc from its
initial to its terminal endpoint.  Nonself chords are indexed relative to a
reference nonself chord gamma0 by first merging the two circles along gamma0;
different choices of gamma0 twist the resulting index polynomials by
(t^k, t^-k), so only the twist class is recorded.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import LaurentPoly, LinkingClass, gamma_class
from .diagram import GaussDiagram, surgery
from .errors import NotANonselfChord, UnsupportedComponentCount

__all__ = [
    "KnotProfile",
    "LinkProfile",
    "knot_index",
    "writhe_polynomial",
    "self_index",
    "nonself_index",
    "self_writhe_tables",
    "nonself_writhe_tables",
    "linking_data",
    "linking_class",
    "profile",
]


def knot_index(G: GaussDiagram, chord: str) -> int:
    """Index of a chord in a one-circle diagram."""
    G.require_mu(1)
    return G.arc_sign_sum(chord)


def self_index(G: GaussDiagram, chord: str) -> int:
    """Index of a self-chord in a two-circle diagram (arc on its own circle,
    counting endpoints of self- and nonself-chords alike)."""
    G.require_mu(2)
    return G.arc_sign_sum(chord)


def nonself_index(G: GaussDiagram, chord: str, gamma0: str) -> int:
    """Index of a nonself chord relative to ``gamma0``.

    Computed on the one-circle diagram obtained by merging along ``gamma0``,
    where ``chord`` becomes a self-chord; ``gamma0`` itself gets index 0.
    """
    G.require_mu(2)
    for c in (chord, gamma0):
        if G.is_self_chord(c):
            raise NotANonselfChord(f"chord {c!r} is a self-chord")
    if chord == gamma0:
        return 0
    return surgery(G, gamma0).arc_sign_sum(chord)


def _add(table: dict[int, int], n: int, sign: int) -> None:
    table[n] = table.get(n, 0) + sign
    if table[n] == 0:
        del table[n]


def writhe_tables(G: GaussDiagram) -> dict[int, int]:
    """n -> signed count of chords of index n, for a one-circle diagram."""
    G.require_mu(1)
    out: dict[int, int] = {}
    for cid in G.signs:
        _add(out, G.arc_sign_sum(cid), G.signs[cid])
    return out


def writhe_polynomial(G: GaussDiagram) -> LaurentPoly:
    """W(t) = sum_{n != 0} J_n t^n - sum_{n != 0} J_n."""
    J = writhe_tables(G)
    terms = {n: v for n, v in J.items() if n != 0}
    total = sum(terms.values())
    return LaurentPoly(terms) - LaurentPoly.const(total)


def self_writhe_tables(G: GaussDiagram) -> tuple[dict[int, int], dict[int, int]]:
    """Index tables of the self-chords on each circle of a 2-circle diagram."""
    G.require_mu(2)
    t1: dict[int, int] = {}
    t2: dict[int, int] = {}
    for cid in G.signs:
        ci, ct = G.chord_circles(cid)
        if ci == ct:
            _add(t1 if ci == 0 else t2, G.arc_sign_sum(cid), G.signs[cid])
    return t1, t2


def nonself_writhe_tables(G: GaussDiagram, gamma0: str
                          ) -> tuple[dict[int, int], dict[int, int]]:
    """Index tables of the nonself chords relative to ``gamma0``, split by
    type (1,2) / (2,1); ``gamma0`` contributes its sign at index 0."""
    G.require_mu(2)
    if G.is_self_chord(gamma0):
        raise NotANonselfChord(f"chord {gamma0!r} is a self-chord")
    merged = surgery(G, gamma0)
    t12: dict[int, int] = {}
    t21: dict[int, int] = {}
    for cid in G.signs:
        typ = G.chord_type(cid)
        if typ is None:
            continue
        idx = 0 if cid == gamma0 else merged.arc_sign_sum(cid)
        _add(t12 if typ == (1, 2) else t21, idx, G.signs[cid])
    return t12, t21


def linking_data(G: GaussDiagram) -> tuple[int, int, int]:
    """(Lk(K1,K2), Lk(K2,K1), lambda): signed counts of the two nonself
    chord types and their difference."""
    G.require_mu(2)
    lk12 = lk21 = 0
    for cid in G.signs:
        typ = G.chord_type(cid)
        if typ == (1, 2):
            lk12 += G.signs[cid]
        elif typ == (2, 1):
            lk21 += G.signs[cid]
    return lk12, lk21, lk12 - lk21


def _first_nonself(G: GaussDiagram) -> str | None:
    for word in G.circles:
        for ep in word:
            if not G.is_self_chord(ep.chord):
                return ep.chord
    return None


def linking_class(G: GaussDiagram) -> LinkingClass:
    """Twist class of the nonself index polynomials in Gamma(|lambda|).

    Independent of the reference chord: changing it multiplies the two
    polynomials by t^k and t^-k, which the class quotients away.
    """
    _, _, lam = linking_data(G)
    gamma0 = _first_nonself(G)
    if gamma0 is None:
        return gamma_class(0, LaurentPoly(), LaurentPoly())
    t12, t21 = nonself_writhe_tables(G, gamma0)
    return gamma_class(abs(lam), LaurentPoly(t12), LaurentPoly(t21))


@dataclass(frozen=True)
class KnotProfile:
    """Complete shell-move invariant of a virtual knot."""

    writhe: LaurentPoly
    n_writhes: dict[int, int]
    odd_writhe: int

    @property
    def mu(self) -> int:
        return 1


@dataclass(frozen=True, eq=False)
class LinkProfile:
    """Invariants of an ordered 2-component diagram.

    ``jn1``/``jn2`` are the per-circle self-chord index tables on the slots
    where they are diagram-independent (n != 0, -lam for circle 1 and
    n != 0, lam for circle 2).  Equality compares only the shell-move
    invariant content: the tables restricted off the slots a sliding shell
    can occupy, the combined shell sum, the linking data and the twist class.
    """

    lk12: int
    lk21: int
    lam: int
    jn1: dict[int, int]
    jn2: dict[int, int]
    shell_sum: int | None
    linking_class: LinkingClass
    f_prime: int | None

    @property
    def mu(self) -> int:
        return 2

    def invariant_jn1(self) -> dict[int, int]:
        banned = {0, 1, -self.lam, -self.lam + 1}
        return {n: v for n, v in self.jn1.items() if n not in banned}

    def invariant_jn2(self) -> dict[int, int]:
        banned = {0, 1, self.lam, self.lam + 1}
        return {n: v for n, v in self.jn2.items() if n not in banned}

    def s_key(self):
        return (self.lam, self.lk12, self.lk21,
                tuple(sorted(self.invariant_jn1().items())),
                tuple(sorted(self.invariant_jn2().items())),
                self.shell_sum, self.linking_class, self.f_prime)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinkProfile) and self.s_key() == other.s_key()

    def __hash__(self) -> int:
        return hash(self.s_key())


def profile(G: GaussDiagram) -> KnotProfile | LinkProfile:
    """Assemble the full invariant profile of a 1- or 2-circle diagram."""
    if G.mu == 1:
        J = writhe_tables(G)
        n_writhes = {n: v for n, v in J.items() if n != 0}
        odd = sum(v for n, v in n_writhes.items() if n % 2)
        return KnotProfile(writhe_polynomial(G), n_writhes, odd)
    if G.mu != 2:
        raise UnsupportedComponentCount(
            f"profiles cover 1 or 2 circles, not {G.mu}")
    lk12, lk21, lam = linking_data(G)
    t1, t2 = self_writhe_tables(G)
    jn1 = {n: v for n, v in t1.items() if n not in (0, -lam)}
    jn2 = {n: v for n, v in t2.items() if n not in (0, lam)}
    if abs(lam) == 1:
        shell_sum = None
    elif lam == 0:
        shell_sum = t1.get(1, 0) + t2.get(1, 0)
    else:
        shell_sum = (t1.get(1, 0) + t1.get(-lam + 1, 0)
                     + t2.get(1, 0) + t2.get(lam + 1, 0))
    cls = linking_class(G)
    f_prime = None if abs(lam) == 1 else cls.derivative_sum()
    return LinkProfile(lk12, lk21, lam, jn1, jn2, shell_sum, cls, f_prime)
