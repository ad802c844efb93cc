"""Brauer classes over R, central simple algebra descriptors and motive comparison.

Br(R) is Z/2 generated by the quaternions.  A cyclic group Z/m of any order
is accepted for classes and motives so that the cancellation property can be
exercised on groups where it is not automatic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .errors import InvalidDescriptor

QUATERNION = 1
CLASS_NAMES = {"split": 0, "quaternion": 1}


@dataclass(frozen=True, order=True)
class BrauerClass:
    value: int
    modulus: int = 2

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidDescriptor("modulus must be positive")
        object.__setattr__(self, "value", self.value % self.modulus)

    def __add__(self, other: "BrauerClass") -> "BrauerClass":
        if self.modulus != other.modulus:
            raise InvalidDescriptor("classes live in different groups")
        return BrauerClass(self.value + other.value, self.modulus)

    def __mul__(self, p: int) -> "BrauerClass":
        return BrauerClass(self.value * p, self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "BrauerClass":
        return BrauerClass(-self.value, self.modulus)

    @property
    def order(self) -> int:
        k = 1
        while (self.value * k) % self.modulus:
            k += 1
        return k

    def is_trivial(self) -> bool:
        return self.value == 0

    @classmethod
    def named(cls, name: str) -> "BrauerClass":
        try:
            return cls(CLASS_NAMES[name])
        except KeyError:
            raise InvalidDescriptor(f"unknown class {name!r}; use 'split' or 'quaternion'") from None

    @property
    def name(self) -> str:
        if self.modulus == 2:
            return "quaternion" if self.value else "split"
        return f"{self.value} mod {self.modulus}"


SPLIT = BrauerClass(0)
HAMILTON = BrauerClass(QUATERNION)


@dataclass(frozen=True)
class CsaDescriptor:
    """A central simple R-algebra: M_degree(R) if split, M_{degree/2}(H) otherwise."""

    degree: int
    cls: BrauerClass = SPLIT

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidDescriptor("degree must be positive")
        if self.cls.modulus != 2:
            raise InvalidDescriptor("descriptors are over R, whose Brauer group is Z/2")
        if not self.cls.is_trivial() and self.degree % 2:
            raise InvalidDescriptor(f"a quaternionic algebra has even degree, got {self.degree}")

    @property
    def dim(self) -> int:
        return self.degree * self.degree

    @property
    def split(self) -> bool:
        return self.cls.is_trivial()

    def __str__(self) -> str:
        if self.split:
            return f"M_{self.degree}(R)"
        return f"M_{self.degree // 2}(H)"


def index(a: CsaDescriptor) -> int:
    """Degree of the underlying division algebra."""
    return 1 if a.split else 2


def period(a: CsaDescriptor) -> int:
    return a.cls.order


@dataclass(frozen=True)
class BsDescriptor:
    """Brauer-Severi variety of a central simple algebra."""

    algebra: CsaDescriptor

    @property
    def dimension(self) -> int:
        return self.algebra.degree - 1

    @property
    def split(self) -> bool:
        return self.algebra.split

    @property
    def has_point(self) -> bool:
        return self.algebra.split


class Motive:
    """Direct sum of U(A_i), recorded by the Brauer classes [A_i] as a multiset."""

    __slots__ = ("modulus", "_classes")

    def __init__(self, classes: Iterable[int | BrauerClass], modulus: int = 2):
        vals = []
        for c in classes:
            if isinstance(c, BrauerClass):
                if c.modulus != modulus:
                    raise InvalidDescriptor("class modulus does not match the motive")
                vals.append(c.value)
            else:
                vals.append(int(c) % modulus)
        self.modulus = modulus
        self._classes = tuple(sorted(vals))

    @property
    def classes(self) -> tuple[int, ...]:
        return self._classes

    def __len__(self) -> int:
        return len(self._classes)

    def __add__(self, other: "Motive") -> "Motive":
        if self.modulus != other.modulus:
            raise InvalidDescriptor("motives over different groups")
        return Motive(self._classes + other._classes, self.modulus)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Motive):
            return NotImplemented
        return self.modulus == other.modulus and self._classes == other._classes

    def __hash__(self):
        return hash((self.modulus, self._classes))

    def __repr__(self) -> str:
        return f"Motive({list(self._classes)}, modulus={self.modulus})"

    def powered(self, p: int) -> Counter:
        return Counter((p * c) % self.modulus for c in self._classes)


def motive_difference(x: Motive, y: Motive) -> str | None:
    """Why x and y are not isomorphic, or None if they are.

    Classes of A^p repeat with period dividing the group exponent, so the
    powers 1..modulus exhaust the criterion.
    """
    if x.modulus != y.modulus:
        raise InvalidDescriptor("motives over different groups")
    if len(x) != len(y):
        return f"summand counts differ ({len(x)} vs {len(y)})"
    for p in range(1, x.modulus + 1):
        if x.powered(p) != y.powered(p):
            return f"power p={p} multisets differ"
    return None


def motive_iso(x: Motive, y: Motive) -> bool:
    return motive_difference(x, y) is None


def motive_cancel(x: Motive, y: Motive, common: Motive) -> bool:
    """Compare x + common against y + common."""
    return motive_iso(x + common, y + common)


def _check_range(a: CsaDescriptor, l: int) -> None:
    if not 1 <= l < a.degree:
        raise InvalidDescriptor(f"need 1 <= l < deg(A) = {a.degree}, got l = {l}")


def gbs_has_point(a: CsaDescriptor, l: int) -> bool:
    """Real point on the generalized Brauer-Severi variety of l-dimensional ideals."""
    _check_range(a, l)
    return l % index(a) == 0


def sym_power_has_point(a: CsaDescriptor, l: int) -> bool:
    """Real point on S^l(BS(A)).

    S^l(X) is birational to X_l x P^{l(l-1)}; point existence is carried
    across that map by Lang-Nishimura, which reduces the question to the
    generalized Brauer-Severi variety X_l.
    """
    _check_range(a, l)
    return gbs_has_point(a, l)
