"""Univariate integer polynomials in ``t``."""

from __future__ import annotations

from functools import total_ordering
from typing import Iterable


@total_ordering
class IntPolynomial:
    """Immutable integer polynomial with coefficients stored low degree first.

    Trailing zeros are stripped, so equal polynomials have equal ``coeffs``.
    The zero polynomial has ``coeffs == ()`` and degree ``-inf``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other) -> "IntPolynomial":
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

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
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def truncate(self, degree: int) -> "IntPolynomial":
        """Drop every term of degree greater than ``degree``."""
        return IntPolynomial(self.coeffs[: max(degree + 1, 0)])

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def is_palindromic(self, center_degree: int | None = None) -> bool:
        """Symmetry ``c_i = c_{m-i}``; ``m`` defaults to the degree.

        When ``center_degree`` is given the symmetry is about that fixed
        total degree, so ``t`` is palindromic for ``m = 2`` but not for
        ``m = 1`` (``c_0 = 0`` must match ``c_1``).
        """
        if not self.coeffs:
            return True
        m = len(self.coeffs) - 1 if center_degree is None else center_degree
        return len(self.coeffs) - 1 <= m and all(self[i] == self[m - i] for i in range(m + 1))

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        return format_polynomial(self)


T_MINUS_ONE = IntPolynomial([-1, 1])
ONE = IntPolynomial([1])
ZERO = IntPolynomial()


def format_polynomial(p: IntPolynomial, var: str = "t") -> str:
    """Human rendering such as ``1 + 23t + 23t^2 + t^3``."""
    terms = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(terms) if terms else "0"
