"""Univariate polynomials over Q."""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from math import lcm as ilcm
from typing import Sequence

from .errors import NotSquarefree


class RatPoly:
    """Polynomial with exact rational coefficients, ascending degree order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        c = [Fraction(x) if not isinstance(x, Fraction) else x for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def x(cls) -> "RatPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "RatPoly":
        if self.is_zero():
            return self
        lc = self.coeffs[-1]
        return RatPoly([c / lc for c in self.coeffs])

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatPoly([other])
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RatPoly({self})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}" + (f"*{mono}" if mono else "")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __add__(self, other) -> "RatPoly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "RatPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "RatPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "RatPoly":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return RatPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RatPoly":
        out = RatPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lc
        if len(rem) - 1 < dq:
            return RatPoly([]), self
        quo = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lc
            quo[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] -= c * b
        return RatPoly(quo), RatPoly(rem[:dq])

    def __floordiv__(self, other) -> "RatPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "RatPoly":
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RatPoly":
        return RatPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def is_squarefree(self) -> bool:
        if self.degree <= 1:
            return True
        return gcd(self, self.derivative()).degree == 0

    def primitive_integer(self) -> list[int]:
        """Integer coefficient list with content 1 and the same sign as ``self``."""
        if self.is_zero():
            return []
        den = 1
        for c in self.coeffs:
            den = ilcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = igcd(g, v)
        return [v // g for v in ints]


def _as_poly(p) -> RatPoly:
    return p if isinstance(p, RatPoly) else RatPoly([p])


def gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd (zero if both inputs vanish)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def lcm(a: RatPoly, b: RatPoly) -> RatPoly:
    if a.is_zero() or b.is_zero():
        return RatPoly([])
    return (a * b // gcd(a, b)).monic()


def xgcd(a: RatPoly, b: RatPoly) -> tuple[RatPoly, RatPoly, RatPoly]:
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = RatPoly([1]), RatPoly([])
    t0, t1 = RatPoly([]), RatPoly([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lc = r0.lc
    return r0.monic(), s0 * (1 / lc), t0 * (1 / lc)


def factor_over_q(p: RatPoly) -> list[tuple[RatPoly, int]]:
    """Irreducible factorization over Q as monic factors with multiplicities.

    Backed by sympy's factorization over ZZ (Zassenhaus with Hensel lifting);
    factors are returned monic, sorted by (degree, coefficients).
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree == 0:
        return []
    from sympy import Poly, QQ, symbols

    x = symbols("x")
    sp = Poly(list(reversed(p.coeffs)), x, domain=QQ)
    _, factors = sp.factor_list()
    out = []
    for f, mult in factors:
        coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(f.all_coeffs())]
        out.append((RatPoly(coeffs).monic(), mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs, fm[1]))
    return out


def _sign_at_infinity(poly: list[int], positive: bool) -> int:
    lead = poly[-1]
    deg = len(poly) - 1
    s = 1 if lead > 0 else -1
    if not positive and deg % 2:
        s = -s
    return s


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Positive integer multiple of the remainder of a by b."""
    rem = list(a)
    db = len(b) - 1
    scale = abs(b[-1])
    sgn = 1 if b[-1] > 0 else -1
    while rem and len(rem) - 1 >= db:
        c = rem[-1] * sgn
        shift = len(rem) - 1 - db
        rem = [v * scale for v in rem]
        for i, bv in enumerate(b):
            rem[i + shift] -= c * bv
        while rem and rem[-1] == 0:
            rem.pop()
    return rem


def _primitive(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = igcd(g, x)
    return [x // g for x in v] if g > 1 else v


def sturm_sequence(p: RatPoly) -> list[list[int]]:
    """Sturm chain of ``p`` with integral, primitive members (positive rescalings)."""
    p0 = p.primitive_integer()
    p1 = _primitive(p.derivative().primitive_integer())
    chain = [p0, p1]
    while len(chain[-1]) > 1:
        r = _prem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(_primitive([-v for v in r]))
    return chain


def count_real_roots(p: RatPoly) -> int:
    """Number of distinct real roots of a squarefree polynomial."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if p.degree == 0:
        return 0
    if not p.is_squarefree():
        raise NotSquarefree(f"{p} is not squarefree")
    chain = sturm_sequence(p)

    def variations(positive: bool) -> int:
        signs = [_sign_at_infinity(q, positive) for q in chain if q]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return variations(False) - variations(True)
