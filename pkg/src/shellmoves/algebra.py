"""Exact integer Laurent polynomials and the twist-quotient of pairs.

A Laurent polynomial is stored sparsely as exponent -> coefficient with no
zero coefficients.  On top of the ring arithmetic this module provides the
quotient structure used for linking classes: pairs (f, g) of polynomials
reduced mod t^s - 1, identified under the simultaneous twist
(f, g) ~ (t^k f, t^(-k) g), with a deterministic canonical representative.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

__all__ = ["LaurentPoly", "LinkingClass", "gamma_class", "parse_poly"]


class LaurentPoly:
    """Integer Laurent polynomial, immutable and hashable.

    >>> LaurentPoly({-1: 1, 1: -2, 3: 1})
    LaurentPoly('t^-1 - 2*t + t^3')
    """

    __slots__ = ("_terms",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))

    @classmethod
    def t_power(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        """Sorted (exponent, coefficient) pairs, zero coefficients omitted."""
        return self._terms

    def coeffs(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, e: int) -> int:
        for ee, c in self._terms:
            if ee == e:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no minimum exponent")
        return self._terms[0][0]

    def eval_at_one(self) -> int:
        """Sum of coefficients, i.e. the value at t = 1."""
        return sum(c for _, c in self._terms)

    def derivative_at_one(self) -> int:
        """Value of the formal derivative at t = 1: sum of e * coeff(e)."""
        return sum(e * c for e, c in self._terms)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k (the one-sided twist)."""
        if k == 0:
            return self
        return LaurentPoly((e + k, c) for e, c in self._terms)

    def reduce_mod(self, s: int) -> "LaurentPoly":
        """Image in Z[t, 1/t] / (t^s - 1): exponents folded into 0..s-1."""
        if s <= 0:
            return self
        return LaurentPoly((e % s, c) for e, c in self._terms)

    def vector(self, s: int) -> tuple[int, ...]:
        """Length-s coefficient vector of the reduction mod t^s - 1."""
        v = [0] * s
        for e, c in self._terms:
            v[e % s] += c
        return tuple(v)

    @classmethod
    def from_vector(cls, v: Iterable[int]) -> "LaurentPoly":
        return cls(enumerate(v))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(list(self._terms) + list(other._terms))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly((e, -c) for e, c in self._terms)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly((e, c * other) for e, c in self._terms)
        out: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        """Ascending-exponent text form, e.g. ``t^-1 - 2*t + t^3``."""
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e, c in self._terms:
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                t = "t" if e == 1 else f"t^{e}"
                body = t if mag == 1 else f"{mag}*{t}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly('{self}')"


_TERM_RE = re.compile(
    r"^(?:(?P<coeff>-?\d+)\*?)?(?:(?P<t>t)(?:\^(?P<exp>-?\d+))?)?$"
)


def parse_poly(text: str) -> LaurentPoly:
    """Parse the textual form produced by ``str(LaurentPoly)``."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    # Split on +/- separators; a sign directly after '^' belongs to an exponent.
    chunks = re.split(r"(?<!\^)\s*([+-])\s*", text)
    head = chunks[0].strip()
    terms: list[tuple[str, str]] = []
    if head:
        terms.append(("+", head))
    for sign, body in zip(chunks[1::2], chunks[2::2]):
        terms.append((sign, body.strip()))
    if not terms:
        raise ValueError(f"bad polynomial text: {text!r}")
    out: dict[int, int] = {}
    for sign, body in terms:
        m = _TERM_RE.match(body)
        if not m or (m.group("coeff") is None and m.group("t") is None):
            raise ValueError(f"bad polynomial term: {body!r}")
        c = int(m.group("coeff")) if m.group("coeff") else 1
        if m.group("t"):
            e = int(m.group("exp")) if m.group("exp") else 1
        else:
            e = 0
        out[e] = out.get(e, 0) + (c if sign == "+" else -c)
    return LaurentPoly(out)


@dataclass(frozen=True)
class LinkingClass:
    """Canonical representative of an element of the twist quotient.

    ``s`` is the modulus of the ambient ring Z[t,1/t]/(t^s - 1) (s = 0 means
    no reduction, s = 1 collapses polynomials to their integer values).  The
    pair (f, g) is stored in the canonical twist position, so dataclass
    equality decides class equality.
    """

    s: int
    f: LaurentPoly
    g: LaurentPoly

    def eval_at_one(self) -> tuple[int, int]:
        return self.f.eval_at_one(), self.g.eval_at_one()

    def derivative_sum(self) -> int:
        """f'(1) + g'(1) of the stored representative.

        Well defined exactly for s = 0 and mod s otherwise, provided
        f(1) - g(1) = s.
        """
        d = self.f.derivative_at_one() + self.g.derivative_at_one()
        return d % self.s if self.s >= 2 else d

    def __str__(self) -> str:
        return f"[{self.f}, {self.g}] in Gamma({self.s})"


def gamma_class(s: int, f: LaurentPoly, g: LaurentPoly) -> LinkingClass:
    """Canonicalize the pair (f, g) under (f, g) ~ (t^k f, t^(-k) g) mod t^s - 1.

    Canonical twist: for s = 0 shift so the first nonzero entry of the pair
    has minimum exponent 0 (f takes priority); for s = 1 collapse to the
    integer pair; for s >= 2 pick the rotation whose concatenated
    coefficient vectors are lexicographically minimal.
    """
    if s < 0:
        raise ValueError("modulus must be nonnegative")
    if s == 0:
        if f:
            k = -f.min_exp()
        elif g:
            k = g.min_exp()
        else:
            k = 0
        return LinkingClass(0, f.shift(k), g.shift(-k))
    if s == 1:
        return LinkingClass(1, LaurentPoly.const(f.eval_at_one()),
                            LaurentPoly.const(g.eval_at_one()))
    fv, gv = f.vector(s), g.vector(s)
    best: tuple[int, ...] | None = None
    for k in range(s):
        # rotate(f, +k) then rotate(g, -k): coefficient of t^i picks up the
        # old coefficient of t^(i -+ k).
        cand = tuple(fv[(i - k) % s] for i in range(s)) + tuple(
            gv[(i + k) % s] for i in range(s))
        if best is None or cand < best:
            best = cand
    assert best is not None
    return LinkingClass(s, LaurentPoly.from_vector(best[:s]),
                        LaurentPoly.from_vector(best[s:]))
