"""Lattice points on a X^2 + b X Y + c Y^2 + X - n Y = 0.

For A in Gamma_a the point (beta gamma, beta delta) lies on the conic with
n = eta[A]; conversely every point with Y != 0 comes from exactly one
such A with beta > 0. The points with Y = 0 are (0, 0) and, when a = +-1,
(-1/a, 0); they carry the trivial factorizations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import IdentityDefect, NotInGamma
from .gamma import GammaMatrix, delta, evaluate_forms
from .polynomial import Polynomial, require_quadratic


@dataclass(frozen=True)
class ConicInstance:
    poly: Polynomial
    n: int

    def __post_init__(self):
        require_quadratic(self.poly)

    @property
    def discriminant(self) -> int:
        F = self.poly
        return F.b * F.b - 4 * F.a * F.c

    def lhs(self, X: int, Y: int) -> int:
        F = self.poly
        return F.a * X * X + F.b * X * Y + F.c * Y * Y + X - self.n * Y

    def contains(self, P: "LatticePoint") -> bool:
        return self.lhs(P.X, P.Y) == 0


@dataclass(frozen=True, order=True)
class LatticePoint:
    X: int
    Y: int


@dataclass(frozen=True)
class PellPoint:
    U: int
    V: int
    D: int


def _solve_row(inst: ConicInstance, Y: int) -> list[int]:
    """Integer X with (X, Y) on the conic."""
    F = inst.poly
    a, b = F.a, F.b
    lin = b * Y + 1
    disc = lin * lin - 4 * a * (F.c * Y * Y - inst.n * Y)
    if disc < 0:
        return []
    s = math.isqrt(disc)
    if s * s != disc:
        return []
    xs = set()
    for num in (-lin - s, -lin + s):
        if num % (2 * a) == 0:
            xs.add(num // (2 * a))
    return sorted(xs)


def y_range(inst: ConicInstance) -> tuple[int, int]:
    """Integer Y-range of a bounded (D < 0) conic, from the X-discriminant.

    disc(Y) = D Y^2 + 2 B Y + 1 with B = b + 2 a n, whose roots are
    (B -+ sqrt(E)) / |D| where E = B^2 - D = 4 a F(n).
    """
    D = inst.discriminant
    if D >= 0:
        raise ValueError("unbounded conic requires a search box")
    F = inst.poly
    B = F.b + 2 * F.a * inst.n
    s = math.isqrt(B * B - D)
    return (B - s - 1) // -D, -((-(B + s + 1)) // -D)


def enumerate_points(inst: ConicInstance, box: int | None = None) -> list[LatticePoint]:
    """All lattice points, sorted; within |X|, |Y| <= box when a box is given."""
    if box is None:
        lo, hi = y_range(inst)
    else:
        lo, hi = -box, box
    pts = []
    for Y in range(lo, hi + 1):
        for X in _solve_row(inst, Y):
            if box is None or abs(X) <= box:
                pts.append(LatticePoint(X, Y))
    for P in pts:
        if not inst.contains(P):
            raise IdentityDefect(f"{P} is not on the conic")
    return sorted(pts)


def psi(a: int, A: GammaMatrix) -> LatticePoint:
    if delta(a, A) != 1:
        raise NotInGamma("not in Γ_a")
    return LatticePoint(A.beta * A.gamma, A.beta * A.delta)


def psi_inv(a: int, P: LatticePoint) -> GammaMatrix:
    """Preimage with beta = gcd(X, Y) > 0; the other preimage is its negative."""
    X, Y = P.X, P.Y
    if Y == 0:
        raise ValueError("exceptional point: preimage is a K-class, not unique")
    G = math.gcd(X, Y)
    num = G * (1 + a * X)
    if num % Y:
        raise ValueError(f"{P} is not on any conic for a = {a}")
    A = GammaMatrix(num // Y, G, X // G, Y // G)
    if delta(a, A) != 1:
        raise IdentityDefect(f"psi_inv({P}) left Gamma_{a}")
    return A


def point_to_factorization(inst: ConicInstance, P: LatticePoint) -> tuple[int, int, int]:
    """(p, q, n) with p q = F(n) read off from the point."""
    if not inst.contains(P):
        raise ValueError(f"{P} is not on the conic")
    F, n = inst.poly, inst.n
    v = F(n)
    if P.Y == 0:
        # K1 -> (0, 0); K2 (a = 1) -> (-1, 0); K3 (a = -1) -> (1, 0)
        if P.X == 0:
            return (1, v, n)
        if F.a == 1:
            return (v, 1, n)
        return (-v, -1, n)
    ev = evaluate_forms(F, psi_inv(F.a, P))
    if ev.eta_val != n or ev.phi0 * ev.phi1 != v:
        raise IdentityDefect(f"{P} did not map to a factorization of F({n})")
    return (ev.phi0, ev.phi1, n)


def pell_reduce(inst: ConicInstance, P: LatticePoint) -> PellPoint:
    """U = D Y + (b + 2 a n), V = 2 a X + b Y + 1, so U^2 - D V^2 = 4 a F(n)."""
    D = inst.discriminant
    if D == 0:
        raise ValueError("degenerate: Pell reduction undefined")
    if not inst.contains(P):
        raise ValueError(f"{P} is not on the conic")
    F, n = inst.poly, inst.n
    U = D * P.Y + F.b + 2 * F.a * n
    V = 2 * F.a * P.X + F.b * P.Y + 1
    if U * U - D * V * V != 4 * F.a * F(n):
        raise IdentityDefect("Pell identity failed")
    return PellPoint(U, V, D)
