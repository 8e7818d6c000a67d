"""Integer Laurent polynomials in one variable ``T``."""

from __future__ import annotations

from typing import Iterable, Sequence


class LaurentPoly:
    """Immutable element of Z[T, T^-1].

    Stored as ``min_degree`` plus a coefficient tuple, where ``coeffs[i]`` is
    the coefficient of ``T**(min_degree + i)``.  Leading and trailing zeros are
    stripped on construction; the zero polynomial has ``coeffs == ()`` and
    ``min_degree == 0``.
    """

    __slots__ = ("min_degree", "coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = (), min_degree: int = 0):
        cs = [int(c) for c in coeffs]
        lo, hi = 0, len(cs)
        while lo < hi and cs[lo] == 0:
            lo += 1
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.coeffs: tuple[int, ...] = ()
            self.min_degree = 0
        else:
            self.coeffs = tuple(cs[lo:hi])
            self.min_degree = min_degree + lo
        self._hash = hash((self.min_degree, self.coeffs))

    # constructors

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls([c])

    @classmethod
    def monomial(cls, c: int, degree: int) -> LaurentPoly:
        return cls([c], degree)

    @classmethod
    def from_dict(cls, terms: dict[int, int]) -> LaurentPoly:
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls([terms.get(d, 0) for d in range(lo, hi + 1)], lo)

    # basic queries

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def max_degree(self) -> int:
        return self.min_degree + len(self.coeffs) - 1

    def terms(self) -> dict[int, int]:
        return {self.min_degree + i: c for i, c in enumerate(self.coeffs) if c}

    def __call__(self, t: int) -> int:
        """Evaluate at an integer.  Negative powers require ``t`` to be a unit."""
        if self.is_zero():
            return 0
        if self.min_degree < 0 and t not in (1, -1):
            raise ZeroDivisionError("negative powers of T only evaluate exactly at T = +-1")
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        if self.min_degree >= 0:
            return acc * t ** self.min_degree
        return acc * t ** (-self.min_degree)  # t**-k == t**k for t = +-1

    # arithmetic

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.min_degree, other.min_degree)
        hi = max(self.max_degree, other.max_degree)
        out = [0] * (hi - lo + 1)
        for p in (self, other):
            off = p.min_degree - lo
            for i, c in enumerate(p.coeffs):
                out[off + i] += c
        return LaurentPoly(out, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly([-c for c in self.coeffs], self.min_degree)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return LaurentPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPoly(out, self.min_degree + other.min_degree)

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``T**k``."""
        if self.is_zero():
            return self
        return LaurentPoly(self.coeffs, self.min_degree + k)

    # comparisons

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.min_degree == other.min_degree and self.coeffs == other.coeffs

    def __hash__(self):
        return self._hash

    def equal_mod_units(self, other: LaurentPoly) -> bool:
        """True iff ``self == +-T**n * other`` for some integer ``n``."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.coeffs == other.coeffs or self.coeffs == tuple(-c for c in other.coeffs)

    def reduced(self) -> LaurentPoly:
        """Unit-normalised representative: nonzero positive constant term."""
        if self.is_zero():
            return self
        sign = 1 if self.coeffs[0] > 0 else -1
        return LaurentPoly([sign * c for c in self.coeffs], 0)

    # formatting

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "min_degree": self.min_degree}

    @classmethod
    def from_json(cls, data: dict) -> LaurentPoly:
        return cls(data["coeffs"], data.get("min_degree", 0))

    def __repr__(self):
        return f"LaurentPoly({list(self.coeffs)!r}, min_degree={self.min_degree})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        terms = self.terms()
        for d in sorted(terms, reverse=True):
            c = terms[d]
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                var = "T" if d == 1 else f"T^{d}"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


def parse_coeffs(coeffs: Sequence[int]) -> LaurentPoly:
    """Polynomial from ascending coefficients ``[c0, c1, ...]``."""
    return LaurentPoly(coeffs, 0)


T = LaurentPoly.monomial(1, 1)
ONE = LaurentPoly.constant(1)
ZERO = LaurentPoly()
