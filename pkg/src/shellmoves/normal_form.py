"""Snail encodings and canonical snail-form diagrams.

A snail is a chord dressed with nested shells: the main chord of sign eps
carries |n| shells of sign -eps*sgn(n), which pins the main chord's index at
n.  Knots normalize to a concatenation of self snails indexed by the writhe
coefficients; 2-component links additionally carry two families of nonself
snails laid out in parallel between the circles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .diagram import INITIAL, TERMINAL, Endpoint, GaussDiagram
from .errors import (
    BadSupport,
    InconsistentProfile,
    MalformedSnailForm,
    NegativeLambda,
)

__all__ = [
    "KnotForm",
    "LinkForm",
    "encode_snail",
    "build_knot_form",
    "build_link_diagram",
    "build_link_form",
    "canonical_form",
]


def _clean(m: Mapping[int, int]) -> dict[int, int]:
    return {k: v for k, v in sorted(m.items()) if v != 0}


@dataclass(frozen=True)
class KnotForm:
    """Multiset of self snails a_n S(n), n outside {0, 1}."""

    a: dict[int, int]

    def __post_init__(self):
        object.__setattr__(self, "a", _clean(self.a))


@dataclass(frozen=True)
class LinkForm:
    """Snail data for a 2-component diagram.

    ``a``/``b`` hold self-snail coefficients per circle, ``c``/``d`` the
    nonself-snail coefficients keyed by absolute snail index.  For lam >= 2
    a canonical form supports ``c`` on the window [p, p+lam) and ``d`` on
    (-p-lam, -p]; ``p`` records the window start.
    """

    lam: int
    a: dict[int, int]
    b: dict[int, int]
    c: dict[int, int]
    d: dict[int, int]
    p: int = 0

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, _clean(getattr(self, name)))

    def c_vector(self) -> tuple[int, ...]:
        return tuple(self.c.get(self.p + m, 0) for m in range(self.lam))

    def d_vector(self) -> tuple[int, ...]:
        return tuple(self.d.get(-self.p - m, 0) for m in range(self.lam))


# -- snail words -----------------------------------------------------------


def _self_snail_words(main: str, shells: list[str], eps: int,
                      n: int) -> tuple[dict[str, int], list[Endpoint]]:
    """Endpoint word of a self snail: initial endpoint, shell near-endpoints,
    terminal endpoint, shell far-endpoints reversed."""
    sigma = -eps * (1 if n > 0 else -1) if n else 0
    near = INITIAL if eps > 0 else TERMINAL
    far = TERMINAL if eps > 0 else INITIAL
    signs = {main: eps}
    signs.update({s: sigma for s in shells})
    word = [Endpoint(main, INITIAL)]
    word += [Endpoint(s, near) for s in shells]
    word.append(Endpoint(main, TERMINAL))
    word += [Endpoint(s, far) for s in reversed(shells)]
    return signs, word


def _nonself_snail_words(main: str, shells: list[str], eps: int, n: int
                         ) -> tuple[dict[str, int], list[Endpoint], list[Endpoint]]:
    """Words of a nonself snail: the shells nest around the initial endpoint
    on the source circle, the bare terminal endpoint sits on the target."""
    sigma = -eps * (1 if n > 0 else -1) if n else 0
    before = INITIAL if eps < 0 else TERMINAL
    after = TERMINAL if eps < 0 else INITIAL
    signs = {main: eps}
    signs.update({s: sigma for s in shells})
    src = [Endpoint(s, before) for s in shells]
    src.append(Endpoint(main, INITIAL))
    src += [Endpoint(s, after) for s in reversed(shells)]
    dst = [Endpoint(main, TERMINAL)]
    return signs, src, dst


def encode_snail(kind: str, eps: int, n: int) -> GaussDiagram:
    """One snail as a standalone diagram, chords named g, s1..s|n|.

    ``kind`` is ``"self"`` (one circle) or ``"nonself"`` (main chord from
    circle 1 to circle 2).
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    shells = [f"s{j}" for j in range(1, abs(n) + 1)]
    if kind == "self":
        signs, word = _self_snail_words("g", shells, eps, n)
        return GaussDiagram(signs, [word])
    if kind == "nonself":
        signs, src, dst = _nonself_snail_words("g", shells, eps, n)
        return GaussDiagram(signs, [src, dst])
    raise ValueError(f"unknown snail kind {kind!r}")


# -- diagram builders --------------------------------------------------------


class _Builder:
    def __init__(self, mu: int):
        self.signs: dict[str, int] = {}
        self.words: list[list[Endpoint]] = [[] for _ in range(mu)]
        self.count = 0

    def fresh(self) -> tuple[str, int]:
        self.count += 1
        return f"g{self.count}", self.count

    def add_self_snail(self, circle: int, eps: int, n: int) -> str:
        main, k = self.fresh()
        shells = [f"g{k}s{j}" for j in range(1, abs(n) + 1)]
        signs, word = _self_snail_words(main, shells, eps, n)
        self.signs.update(signs)
        self.words[circle] += word
        return main

    def add_nonself_snail(self, src: int, dst: int, eps: int, n: int
                          ) -> tuple[str, list[Endpoint]]:
        """Append the source-circle fragment; return the pending terminal
        endpoint so the caller controls the parallel layout."""
        main, k = self.fresh()
        shells = [f"g{k}s{j}" for j in range(1, abs(n) + 1)]
        signs, srcw, dstw = _nonself_snail_words(main, shells, eps, n)
        self.signs.update(signs)
        self.words[src] += srcw
        return main, dstw

    def diagram(self) -> GaussDiagram:
        return GaussDiagram(self.signs, [tuple(w) for w in self.words])


def _snail_run(coeffs: Mapping[int, int]):
    """(index, sign) per snail copy, ascending index."""
    for n in sorted(coeffs):
        c = coeffs[n]
        for _ in range(abs(c)):
            yield n, (1 if c > 0 else -1)


def build_knot_form(a: Mapping[int, int]) -> GaussDiagram:
    """Concatenation of self snails realizing writhe coefficients ``a``."""
    a = _clean(a)
    if 0 in a or 1 in a:
        raise BadSupport("knot snail coefficients must vanish at 0 and 1")
    b = _Builder(1)
    for n, eps in _snail_run(a):
        b.add_self_snail(0, eps, n)
    return b.diagram()


def build_link_diagram(a: Mapping[int, int], b: Mapping[int, int],
                       c: Mapping[int, int], d: Mapping[int, int]
                       ) -> GaussDiagram:
    """General snail-form 2-component diagram.

    Self snails sit on an arc of their own circle; the nonself families run
    between the circles in parallel, so the terminal endpoints appear in
    reverse order on the far circle.
    """
    a, b, c, d = _clean(a), _clean(b), _clean(c), _clean(d)
    if 0 in a or 1 in a or 0 in b or 1 in b:
        raise BadSupport("self-snail coefficients must vanish at 0 and 1")
    bld = _Builder(2)
    for n, eps in _snail_run(a):
        bld.add_self_snail(0, eps, n)
    for n, eps in _snail_run(b):
        bld.add_self_snail(1, eps, n)
    c_tails: list[Endpoint] = []
    for m, eps in _snail_run(c):
        _, tail = bld.add_nonself_snail(0, 1, eps, m)
        c_tails = tail + c_tails
    d_tails: list[Endpoint] = []
    for m, eps in _snail_run(d):
        _, tail = bld.add_nonself_snail(1, 0, eps, m)
        d_tails = tail + d_tails
    bld.words[1] += c_tails
    bld.words[0] += d_tails
    return bld.diagram()


def build_link_form(form: LinkForm) -> GaussDiagram:
    lam = sum(form.c.values()) - sum(form.d.values())
    if lam != form.lam:
        raise MalformedSnailForm(
            f"nonself coefficients give linking difference {lam}, "
            f"form says {form.lam}")
    try:
        return build_link_diagram(form.a, form.b, form.c, form.d)
    except BadSupport as e:
        raise MalformedSnailForm(str(e)) from None


# -- canonical form from a profile -------------------------------------------


def canonical_form(profile) -> KnotForm | LinkForm:
    """Extract the unique canonical snail form from an invariant profile.

    For knots this is just the writhe table off slots {0, 1}.  For links the
    nonself coefficients come from the canonical linking-class representative;
    for lam >= 2 the window position p is solved from the shell-sum identity.
    """
    from .invariants import KnotProfile, LinkProfile

    if isinstance(profile, KnotProfile):
        return KnotForm({n: v for n, v in profile.n_writhes.items() if n != 1})
    if not isinstance(profile, LinkProfile):
        raise TypeError(f"not a profile: {profile!r}")
    lam = profile.lam
    if lam < 0:
        raise NegativeLambda(
            "canonical forms are defined for lam >= 0; swap components first")
    a = profile.invariant_jn1()
    b = profile.invariant_jn2()
    cls = profile.linking_class
    if lam == 0:
        return LinkForm(0, a, b, cls.f.coeffs(), cls.g.coeffs(), 0)
    if lam == 1:
        return LinkForm(1, a, b, {0: profile.lk12}, {0: profile.lk21}, 0)
    cvec = cls.f.vector(lam)
    dvec = tuple(cls.g.vector(lam)[(-m) % lam] for m in range(lam))
    base = (-sum(n * v for n, v in a.items())
            - sum(n * v for n, v in b.items())
            - sum(m * cvec[m] for m in range(lam))
            + sum(m * dvec[m] for m in range(lam)))
    if (base - profile.shell_sum) % lam != 0:
        raise InconsistentProfile(
            "shell sum is incompatible with the linking class")
    p = (base - profile.shell_sum) // lam
    c = {p + m: cvec[m] for m in range(lam)}
    d = {-p - m: dvec[m] for m in range(lam)}
    return LinkForm(lam, a, b, c, d, p)
