"""Integer-coefficient univariate polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with integer coefficients, constant term first.

    ``Polynomial((11, 5, 3))`` is 3x^2 + 5x + 11. Trailing zeros are
    stripped, so the zero polynomial has ``coeffs == ()`` and degree -1.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_high(cls, coeffs: Sequence[int]) -> "Polynomial":
        """Build from highest-degree-first coefficients, e.g. (a, b, c)."""
        return cls(reversed(list(coeffs)))

    @classmethod
    def quadratic(cls, a: int, b: int, c: int) -> "Polynomial":
        if a == 0:
            raise ValueError("leading coefficient of a quadratic must be nonzero")
        return cls((c, b, a))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # quadratic aliases: F(n) = a n^2 + b n + c
    @property
    def a(self) -> int:
        return self.coeff(2)

    @property
    def b(self) -> int:
        return self.coeff(1)

    @property
    def c(self) -> int:
        return self.coeff(0)

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def hasse(self, j: int) -> "Polynomial":
        """j-th Hasse derivative: coefficient k is C(k+j, j) * a_{k+j}."""
        if j < 0:
            raise ValueError("derivative order must be non-negative")
        return Polynomial(comb(k + j, j) * self.coeffs[k + j] for k in range(len(self.coeffs) - j))

    def derivative(self, j: int = 1) -> "Polynomial":
        """Ordinary j-th derivative."""
        p = self
        for _ in range(j):
            p = Polynomial(k * p.coeffs[k] for k in range(1, len(p.coeffs)))
        return p

    def shift(self, h: int) -> "Polynomial":
        """Return G with G(x) = F(x - h)."""
        # Taylor expansion about -h: G(x) = sum_j (D^(j) F)(-h) x^j
        return Polynomial(self.hasse(j)(-h) for j in range(len(self.coeffs)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def to_high(self) -> list[int]:
        return list(reversed(self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "x" if k == 1 else f"x^{k}"
                body = var if mag == 1 else f"{mag}{var}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms)


def require_quadratic(F: Polynomial) -> None:
    if F.degree != 2:
        raise ValueError(f"expected a quadratic polynomial, got degree {F.degree}")
