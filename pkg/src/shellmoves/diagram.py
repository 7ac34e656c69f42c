"""Gauss diagrams: oriented circles carrying signed, oriented chords.

A diagram is stored as one cyclic endpoint word per circle plus a sign per
chord.  Words carry an arbitrary basepoint; everything that compares diagrams
does so up to rotation of each circle (circles themselves stay ordered, since
link components are labelled).  Initial endpoints carry sign -eps and
terminal endpoints +eps, where eps is the chord sign.
"""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple

from .errors import (
    BadSign,
    CircleCountMismatch,
    DuplicateEndpoint,
    GaussCodeError,
    MissingEndpoint,
    NotANonselfChord,
    NotASelfChord,
    UnknownChordId,
    WrongComponentCount,
)

__all__ = [
    "INITIAL",
    "TERMINAL",
    "Endpoint",
    "GaussDiagram",
    "parse_gauss_code",
    "serialize",
    "detect_shells",
    "surgery",
    "swap_components",
    "canonical_key",
    "isomorphic",
]

INITIAL = "<"
TERMINAL = ">"


class Endpoint(NamedTuple):
    chord: str
    kind: str  # INITIAL or TERMINAL

    def token(self) -> str:
        return f"{self.chord}{self.kind}"


Word = tuple[Endpoint, ...]


class GaussDiagram:
    """Immutable Gauss diagram. Use :func:`parse_gauss_code` or the builders."""

    __slots__ = ("signs", "circles", "_where")

    def __init__(self, signs: Mapping[str, int], circles: Iterable[Word],
                 validate: bool = True):
        object.__setattr__(self, "signs", dict(signs))
        object.__setattr__(self, "circles",
                           tuple(tuple(w) for w in circles))
        where: dict[str, dict[str, tuple[int, int]]] = {}
        for ci, word in enumerate(self.circles):
            for pos, ep in enumerate(word):
                where.setdefault(ep.chord, {})
                if validate and ep.kind in where[ep.chord]:
                    raise DuplicateEndpoint(
                        f"chord {ep.chord!r} has two {ep.kind!r} endpoints")
                where[ep.chord][ep.kind] = (ci, pos)
        object.__setattr__(self, "_where", where)
        if validate:
            self._validate()

    def _validate(self) -> None:
        if not self.circles:
            raise CircleCountMismatch("a diagram needs at least one circle")
        for cid, sign in self.signs.items():
            if sign not in (1, -1):
                raise BadSign(f"chord {cid!r} has sign {sign!r}")
            spots = self._where.get(cid, {})
            for kind in (INITIAL, TERMINAL):
                if kind not in spots:
                    raise MissingEndpoint(
                        f"chord {cid!r} lacks its {kind!r} endpoint")
        for cid in self._where:
            if cid not in self.signs:
                raise UnknownChordId(f"endpoint references unknown chord {cid!r}")

    # -- basic queries ----------------------------------------------------

    @property
    def mu(self) -> int:
        return len(self.circles)

    @property
    def chord_ids(self) -> tuple[str, ...]:
        return tuple(self.signs)

    def __len__(self) -> int:
        return len(self.signs)

    def locate(self, chord: str, kind: str) -> tuple[int, int]:
        """(circle index, position) of one endpoint of ``chord``."""
        try:
            return self._where[chord][kind]
        except KeyError:
            raise UnknownChordId(f"no chord {chord!r}") from None

    def endpoint_sign(self, ep: Endpoint) -> int:
        try:
            sign = self.signs[ep.chord]
        except KeyError:
            raise UnknownChordId(f"no chord {ep.chord!r}") from None
        return sign if ep.kind == TERMINAL else -sign

    def chord_circles(self, chord: str) -> tuple[int, int]:
        """(circle of initial endpoint, circle of terminal endpoint)."""
        return self.locate(chord, INITIAL)[0], self.locate(chord, TERMINAL)[0]

    def is_self_chord(self, chord: str) -> bool:
        i, t = self.chord_circles(chord)
        return i == t

    def chord_type(self, chord: str) -> tuple[int, int] | None:
        """(i, j) for a nonself chord oriented from circle i to circle j,
        1-based; None for a self-chord."""
        i, t = self.chord_circles(chord)
        return None if i == t else (i + 1, t + 1)

    def is_free(self, chord: str) -> bool:
        ci, pi = self.locate(chord, INITIAL)
        ct, pt = self.locate(chord, TERMINAL)
        if ci != ct:
            return False
        n = len(self.circles[ci])
        return (pi - pt) % n == 1 or (pt - pi) % n == 1

    def arc_sign_sum(self, chord: str) -> int:
        """Endpoint-sign sum strictly between the chord's initial and
        terminal endpoints, walking the circle in its orientation.

        Meaningful for self-chords; this is the raw index computation shared
        by the knot and link index functions.
        """
        ci, pi = self.locate(chord, INITIAL)
        ct, pt = self.locate(chord, TERMINAL)
        if ci != ct:
            raise NotASelfChord(f"chord {chord!r} is not a self-chord")
        word = self.circles[ci]
        n = len(word)
        total = 0
        p = (pi + 1) % n
        while p != pt:
            total += self.endpoint_sign(word[p])
            p = (p + 1) % n
        return total

    def circle_sign_sum(self, circle: int) -> int:
        return sum(self.endpoint_sign(ep) for ep in self.circles[circle])

    def require_mu(self, mu: int) -> None:
        if self.mu != mu:
            raise WrongComponentCount(
                f"operation needs {mu} circle(s), diagram has {self.mu}")

    def __repr__(self) -> str:
        words = " | ".join(" ".join(ep.token() for ep in w) or "-"
                           for w in self.circles)
        return f"<GaussDiagram mu={self.mu} chords={len(self.signs)} {words}>"


# -- text format -----------------------------------------------------------


def parse_gauss_code(text: str) -> GaussDiagram:
    """Parse the line-oriented Gauss-code format.

    ::

        circles: 2
        chord g +
        circle 1: g<
        circle 2: g>

    ``#`` starts a comment; blank lines are ignored.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GaussCodeError("empty Gauss code")
    head = lines[0].replace(":", " : ").split()
    if len(head) != 3 or head[0] != "circles" or head[1] != ":":
        raise GaussCodeError(f"first line must be 'circles: <n>', got {lines[0]!r}")
    try:
        mu = int(head[2])
    except ValueError:
        raise CircleCountMismatch(f"bad circle count {head[2]!r}") from None
    if mu < 1:
        raise CircleCountMismatch("circle count must be positive")

    signs: dict[str, int] = {}
    words: list[list[Endpoint]] = []
    for line in lines[1:]:
        if line.startswith("chord"):
            if words:
                raise GaussCodeError("chord declarations must precede circles")
            parts = line.split()
            if len(parts) != 3:
                raise GaussCodeError(f"bad chord declaration {line!r}")
            _, cid, sgn = parts
            if any(ch in cid for ch in "<>#:") :
                raise GaussCodeError(f"bad chord id {cid!r}")
            if sgn == "+":
                s = 1
            elif sgn == "-":
                s = -1
            else:
                raise BadSign(f"chord {cid!r}: sign must be + or -, got {sgn!r}")
            if cid in signs:
                raise GaussCodeError(f"chord {cid!r} declared twice")
            signs[cid] = s
        elif line.startswith("circle"):
            headpart, _, body = line.partition(":")
            parts = headpart.split()
            if len(parts) != 2:
                raise GaussCodeError(f"bad circle line {line!r}")
            try:
                idx = int(parts[1])
            except ValueError:
                raise GaussCodeError(f"bad circle index {parts[1]!r}") from None
            if idx != len(words) + 1:
                raise CircleCountMismatch(
                    f"expected circle {len(words) + 1}, got {idx}")
            word: list[Endpoint] = []
            for tok in body.split():
                kind = tok[-1]
                if kind not in (INITIAL, TERMINAL) or len(tok) < 2:
                    raise GaussCodeError(f"bad endpoint token {tok!r}")
                cid = tok[:-1]
                if cid not in signs:
                    raise UnknownChordId(f"token {tok!r} references undeclared chord")
                word.append(Endpoint(cid, kind))
            words.append(word)
        else:
            raise GaussCodeError(f"unrecognized line {line!r}")
    if len(words) != mu:
        raise CircleCountMismatch(
            f"declared {mu} circles but found {len(words)} circle lines")
    return GaussDiagram(signs, [tuple(w) for w in words])


def serialize(G: GaussDiagram) -> str:
    out = [f"circles: {G.mu}"]
    for cid in sorted(G.signs):
        out.append(f"chord {cid} {'+' if G.signs[cid] > 0 else '-'}")
    for i, word in enumerate(G.circles, start=1):
        toks = " ".join(ep.token() for ep in word)
        out.append(f"circle {i}:" + (f" {toks}" if toks else ""))
    return "\n".join(out) + "\n"


# -- shells ------------------------------------------------------------------


def _nest_around(G: GaussDiagram, circle: int, p: int) -> list[str]:
    """Chords nested in parallel around the endpoint at position ``p``,
    innermost first.

    Layer k pairs the tokens k+1 steps before and after ``p``; each layer
    must be one self-chord, oriented with the circle exactly when the
    surrounded endpoint is positive.
    """
    word = G.circles[circle]
    n = len(word)
    e = word[p]
    want_initial_first = G.endpoint_sign(e) > 0
    layers: list[str] = []
    k = 0
    while 2 * (k + 1) + 1 <= n:
        a = word[(p - 1 - k) % n]
        b = word[(p + 1 + k) % n]
        if a.chord != b.chord or a.chord == e.chord or a.kind == b.kind:
            break
        if (a.kind == INITIAL) != want_initial_first:
            break
        layers.append(a.chord)
        k += 1
    return layers


def detect_shells(G: GaussDiagram) -> dict[str, str]:
    """Map every shell chord to the base chord it ultimately surrounds.

    A shell surrounds one endpoint either directly or through the other
    shells nested around that same endpoint.  A chord qualifying around two
    different endpoints is assigned to the one it surrounds innermost; a
    chain of shells resolves to the underlying non-shell base when one
    exists.
    """
    best: dict[str, tuple[int, str]] = {}
    for ci, word in enumerate(G.circles):
        for p in range(len(word)):
            owner = word[p].chord
            for depth, cid in enumerate(_nest_around(G, ci, p)):
                if cid not in best or depth < best[cid][0]:
                    best[cid] = (depth, owner)
    bases: dict[str, str] = {}
    for cid, (_, direct) in best.items():
        owner = direct
        hops = {cid}
        while owner in best and owner not in hops:
            hops.add(owner)
            owner = best[owner][1]
        # a cycle (chords mutually surrounding each other) keeps the direct owner
        bases[cid] = direct if owner in best else owner
    return bases


# -- structural operations ----------------------------------------------------


def surgery(G: GaussDiagram, gamma0: str) -> GaussDiagram:
    """Merge the two circles of a 2-circle diagram along the nonself chord
    ``gamma0``, deleting it.  The merged circle follows each original circle
    in its own orientation, spliced at the removed endpoints."""
    G.require_mu(2)
    if gamma0 not in G.signs:
        raise UnknownChordId(f"no chord {gamma0!r}")
    if G.is_self_chord(gamma0):
        raise NotANonselfChord(f"chord {gamma0!r} is a self-chord")
    ci, pi = G.locate(gamma0, INITIAL)
    ct, pt = G.locate(gamma0, TERMINAL)
    a, b = G.circles[ci], G.circles[ct]
    merged = a[pi + 1:] + a[:pi] + b[pt + 1:] + b[:pt]
    signs = {cid: s for cid, s in G.signs.items() if cid != gamma0}
    return GaussDiagram(signs, [merged], validate=False)


def swap_components(G: GaussDiagram) -> GaussDiagram:
    """Exchange the two circles (relabel the components)."""
    G.require_mu(2)
    return GaussDiagram(G.signs, [G.circles[1], G.circles[0]], validate=False)


# -- isomorphism ---------------------------------------------------------------


def canonical_key(G: GaussDiagram):
    """Rotation- and renaming-invariant key: circles in order, each rotated
    so the tuple of (first-occurrence chord index, kind, sign) tokens is
    lexicographically minimal, with the renaming shared across circles.

    A circle may have several minimizing rotations that name the chords
    differently; all of them are carried forward, as they can lead to
    different (and possibly smaller) words on the later circles.
    """
    contexts: list[tuple[dict[str, int], int, tuple]] = [({}, 0, ())]
    for word in G.circles:
        n = len(word)
        if n == 0:
            contexts = [(ren, nxt, acc + ((),)) for ren, nxt, acc in contexts]
            continue
        best_acc: tuple | None = None
        survivors: dict[tuple, tuple[dict[str, int], int, tuple]] = {}
        for ren, nxt, acc in contexts:
            for r in range(n):
                ren2 = dict(ren)
                cnt = nxt
                toks = []
                for k in range(n):
                    ep = word[(r + k) % n]
                    idx = ren2.get(ep.chord)
                    if idx is None:
                        idx = ren2[ep.chord] = cnt
                        cnt += 1
                    toks.append((idx, ep.kind, G.signs[ep.chord]))
                key = acc + (tuple(toks),)
                if best_acc is None or key < best_acc:
                    best_acc = key
                    survivors = {}
                if key == best_acc:
                    survivors.setdefault(tuple(sorted(ren2.items())),
                                         (ren2, cnt, key))
        contexts = list(survivors.values())
    return contexts[0][2]


def isomorphic(G: GaussDiagram, H: GaussDiagram) -> bool:
    """Same diagram up to rotating each circle and renaming chords."""
    return G.mu == H.mu and canonical_key(G) == canonical_key(H)
