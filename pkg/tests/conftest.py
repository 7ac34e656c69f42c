"""Shared fixtures: frozen reference diagrams and random generators."""

import random

import pytest

from shellmoves.algebra import LaurentPoly, gamma_class
from shellmoves.diagram import Endpoint, GaussDiagram, INITIAL, TERMINAL, parse_gauss_code
from shellmoves.normal_form import LinkForm, build_link_diagram

# Five-chord one-circle diagram with index writhes J_3 = J_-1 = 1, J_1 = -2,
# hence writhe polynomial t^-1 - 2t + t^3 and odd writhe 0.  Chord indices,
# hand-checked from the word below: a:1 b:3 c:0 d:-1 e:1.
REFERENCE_KNOT_CODE = """\
circles: 1
chord a -
chord b +
chord c -
chord d +
chord e -
circle 1: a< e< b> e> a> d< b< d> c< c>
"""
REFERENCE_KNOT_INDICES = {"a": 1, "b": 3, "c": 0, "d": -1, "e": 1}

# Snail data of the reference 2-component diagram: linking numbers (3, 1),
# lambda 2, invariant-slot writhes {2: 2, 3: -1} / {-1: 2}, linking class
# represented by (t^-1 + 1 + t^4, 2t^2 - t^3).
REFERENCE_LINK_SNAILS = dict(a={2: 2, 3: -1}, b={-1: 2},
                             c={0: 1, -1: 1, 4: 1}, d={2: 2, 3: -1})


@pytest.fixture
def reference_knot() -> GaussDiagram:
    return parse_gauss_code(REFERENCE_KNOT_CODE)


@pytest.fixture
def reference_link() -> GaussDiagram:
    return build_link_diagram(**REFERENCE_LINK_SNAILS)


def random_diagram(rng: random.Random, mu: int, max_chords: int,
                   chords: int | None = None) -> GaussDiagram:
    """Uniform-ish random diagram: random chord signs and circle assignment,
    endpoints shuffled into the circle words."""
    n = rng.randint(0, max_chords) if chords is None else chords
    ids = [f"c{i}" for i in range(n)]
    signs = {cid: rng.choice((1, -1)) for cid in ids}
    eps = [Endpoint(cid, k) for cid in ids for k in (INITIAL, TERMINAL)]
    rng.shuffle(eps)
    if mu == 1:
        return GaussDiagram(signs, [tuple(eps)])
    cut = rng.randint(0, len(eps))
    return GaussDiagram(signs, [tuple(eps[:cut]), tuple(eps[cut:])])


def random_link_with_lambda(rng: random.Random, lam: int,
                            max_self: int = 4, max_extra: int = 2
                            ) -> GaussDiagram:
    """Random two-circle diagram with the prescribed linking difference.

    Nonself chords are dealt so the type-(1,2) and type-(2,1) signed counts
    differ by exactly ``lam``; self chords and endpoint placement are random.
    """
    base = rng.randint(0, max_extra)
    lk12 = lam + rng.randint(-max_extra, max_extra)
    lk21 = lk12 - lam
    chords: list[tuple[str, int, int, int]] = []  # id, sign, circ_i, circ_t
    k = 0

    def deal(total: int, pad: int, src: int, dst: int):
        nonlocal k
        signs = [1] * max(total, 0) + [-1] * max(-total, 0) + [1, -1] * pad
        for s in signs:
            chords.append((f"n{k}", s, src, dst))
            k += 1

    deal(lk12, base, 0, 1)
    deal(lk21, rng.randint(0, max_extra), 1, 0)
    for _ in range(rng.randint(0, max_self)):
        c = rng.choice((0, 1))
        chords.append((f"n{k}", rng.choice((1, -1)), c, c))
        k += 1
    signs = {cid: s for cid, s, _, _ in chords}
    words: tuple[list[Endpoint], list[Endpoint]] = ([], [])
    for cid, _, ci, ct in chords:
        words[ci].insert(rng.randint(0, len(words[ci])), Endpoint(cid, INITIAL))
        words[ct].insert(rng.randint(0, len(words[ct])), Endpoint(cid, TERMINAL))
    return GaussDiagram(signs, [tuple(words[0]), tuple(words[1])])


def random_canonical_form(rng: random.Random, lam: int) -> LinkForm:
    """A random snail form already in canonical position for its regime."""
    def slots(banned):
        out = {}
        for _ in range(rng.randint(0, 3)):
            n = rng.randint(-5, 6)
            if n not in banned:
                out[n] = rng.randint(-2, 2)
        return {n: v for n, v in out.items() if v}

    if lam == 0:
        a, b = slots({0, 1}), slots({0, 1})
        c = {rng.randint(-3, 3): rng.randint(-2, 2)
             for _ in range(rng.randint(0, 3))}
        d = {m + rng.randint(-1, 1): v for m, v in c.items()}
        cls = gamma_class(0, LaurentPoly(c), LaurentPoly(d))
        diff = cls.f.eval_at_one() - cls.g.eval_at_one()
        if diff:
            g2 = cls.g + LaurentPoly({max(cls.g.coeffs(), default=0) + 1: diff})
            cls = gamma_class(0, cls.f, g2)
        return LinkForm(0, a, b, cls.f.coeffs(), cls.g.coeffs(), 0)
    if lam == 1:
        a, b = slots({0, 1, -1}), slots({0, 1, 2})
        c0 = rng.randint(-3, 4)
        return LinkForm(1, a, b, {0: c0}, {0: c0 - 1}, 0)
    a = slots({0, 1, -lam, -lam + 1})
    b = slots({0, 1, lam, lam + 1})
    c = [rng.randint(-2, 2) for _ in range(lam)]
    d = [rng.randint(-2, 2) for _ in range(lam)]
    d[0] += sum(c) - sum(d) - lam
    cls = gamma_class(lam, LaurentPoly(dict(enumerate(c))),
                      LaurentPoly({-m: v for m, v in enumerate(d)}))
    cvec = cls.f.vector(lam)
    dvec = [cls.g.vector(lam)[(-m) % lam] for m in range(lam)]
    p = rng.randint(-3, 3)
    return LinkForm(lam, a, b, {p + m: cvec[m] for m in range(lam)},
                    {-p - m: dvec[m] for m in range(lam)}, p)
