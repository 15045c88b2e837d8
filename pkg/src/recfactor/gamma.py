"""Binary-quadratic-form calculus on 2x2 integer matrices.

For F(n) = a n^2 + b n + c and A = (alpha, beta; gamma, delta):

    Delta[A] = alpha delta - a beta gamma
    eta[A]   = alpha gamma + b beta gamma + c beta delta
    phi0[A]  = alpha^2 + b alpha beta + a c beta^2
    phi1[A]  = a gamma^2 + b gamma delta + c delta^2

and F(eta) - phi0 phi1 = (1 - Delta)(c Delta + c + b eta), so the product
identity F(eta[A]) = phi0[A] phi1[A] holds exactly when one factor vanishes.
Gamma_a is the set of A with Delta[A] = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import IdentityDefect, NotInGamma
from .polynomial import Polynomial, require_quadratic


@dataclass(frozen=True)
class GammaMatrix:
    alpha: int
    beta: int
    gamma: int
    delta: int

    @classmethod
    def identity(cls) -> "GammaMatrix":
        return cls(1, 0, 0, 1)

    def __iter__(self) -> Iterator[int]:
        return iter((self.alpha, self.beta, self.gamma, self.delta))

    def __matmul__(self, other: "GammaMatrix") -> "GammaMatrix":
        a1, b1, c1, d1 = self
        a2, b2, c2, d2 = other
        return GammaMatrix(a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)

    def __neg__(self) -> "GammaMatrix":
        return GammaMatrix(-self.alpha, -self.beta, -self.gamma, -self.delta)

    def det(self) -> int:
        return self.alpha * self.delta - self.beta * self.gamma

    def rows(self) -> list[list[int]]:
        return [[self.alpha, self.beta], [self.gamma, self.delta]]

    def __str__(self) -> str:
        return f"({self.alpha}, {self.beta}; {self.gamma}, {self.delta})"


def T_pow(i: int) -> GammaMatrix:
    return GammaMatrix(1, i, 0, 1)


def U_pow(i: int) -> GammaMatrix:
    return GammaMatrix(1, 0, i, 1)


@dataclass(frozen=True)
class FormEvaluation:
    delta_val: int
    eta_val: int
    phi0: int
    phi1: int

    def phi(self, m: int) -> int:
        """phi_m: phi0 for even m, phi1 for odd m."""
        return self.phi0 if m % 2 == 0 else self.phi1


def delta(a: int, A: GammaMatrix) -> int:
    return A.alpha * A.delta - a * A.beta * A.gamma


def in_gamma(a: int, A: GammaMatrix) -> bool:
    return delta(a, A) == 1


def evaluate_forms(F: Polynomial, A: GammaMatrix) -> FormEvaluation:
    require_quadratic(F)
    a, b, c = F.a, F.b, F.c
    al, be, ga, de = A
    return FormEvaluation(
        delta_val=al * de - a * be * ga,
        eta_val=al * ga + b * be * ga + c * be * de,
        phi0=al * al + b * al * be + a * c * be * be,
        phi1=a * ga * ga + b * ga * de + c * de * de,
    )


def phi_m(F: Polynomial, A: GammaMatrix, m: int) -> int:
    return evaluate_forms(F, A).phi(m)


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    branch: str  # "delta_one", "second", "both" or "neither"


def identity_holds(F: Polynomial, A: GammaMatrix) -> IdentityCheck:
    """Test F(eta[A]) == phi0[A] phi1[A] and report which factor vanishes.

    The second branch Delta = -1 - (b/c) eta is tested in the integer form
    c Delta + c + b eta == 0, which is also meaningful when c == 0.
    """
    ev = evaluate_forms(F, A)
    holds = F(ev.eta_val) == ev.phi0 * ev.phi1
    first = ev.delta_val == 1
    second = F.c * ev.delta_val + F.c + F.b * ev.eta_val == 0
    branch = {(True, True): "both", (True, False): "delta_one",
              (False, True): "second", (False, False): "neither"}[(first, second)]
    if holds != (branch != "neither"):
        raise IdentityDefect(f"product-of-forms identity inconsistent for {F}, {A}")
    return IdentityCheck(holds, branch)


def seq_to_matrix(F: Polynomial, seq: Sequence[int]) -> list[GammaMatrix]:
    """A_0 = I, A_{k+1} = A_k + x_{k+1} B_k.

    B_k = (a gamma_k, delta_k; 0, 0) for odd k and (0, 0; alpha_k, a beta_k)
    for even k, so odd steps change the bottom row and even steps the top.
    """
    require_quadratic(F)
    a = F.a
    al, be, ga, de = 1, 0, 0, 1
    out = [GammaMatrix(al, be, ga, de)]
    for k, x in enumerate(seq):
        if k % 2 == 0:
            ga, de = ga + x * al, de + x * a * be
        else:
            al, be = al + x * a * ga, be + x * de
        out.append(GammaMatrix(al, be, ga, de))
    return out


@dataclass(frozen=True)
class TransvectionWord:
    """Exponents (x_1, ..., x_m) read as W^{x_m} ... T^{x_2} U^{x_1}."""

    exponents: tuple[int, ...]

    def letters(self) -> list[tuple[str, int]]:
        """Factors left to right as they appear in the product."""
        return [("U" if k % 2 == 0 else "T", x) for k, x in reversed(list(enumerate(self.exponents)))]

    def matrix(self) -> GammaMatrix:
        M = GammaMatrix.identity()
        for k, x in enumerate(self.exponents):
            M = (U_pow(x) if k % 2 == 0 else T_pow(x)) @ M
        return M

    def __str__(self) -> str:
        if not self.exponents:
            return "I"
        return " ".join(f"{s}^{x}" if x != 1 else s for s, x in self.letters())


def transvection_word(seq: Sequence[int]) -> tuple[TransvectionWord, GammaMatrix]:
    word = TransvectionWord(tuple(seq))
    return word, word.matrix()


def shift_matrix(F: Polynomial, h: int, A: GammaMatrix) -> GammaMatrix:
    """Carry A in Gamma_a for F to the matching matrix for G(n) = F(n - h)."""
    require_quadratic(F)
    a = F.a
    if delta(a, A) != 1:
        raise NotInGamma("not in Γ_a")
    return GammaMatrix(A.alpha + h * a * A.beta, A.beta, A.gamma + h * A.delta, A.delta)


def brahmagupta_check(a: int, c: int, A: GammaMatrix) -> bool:
    """a(αγ + cβδ)^2 + c(αδ - aβγ)^2 == (α^2 + acβ^2)(aγ^2 + cδ^2)."""
    al, be, ga, de = A
    lhs = a * (al * ga + c * be * de) ** 2 + c * (al * de - a * be * ga) ** 2
    rhs = (al * al + a * c * be * be) * (a * ga * ga + c * de * de)
    return lhs == rhs


def exceptional_class(a: int, A: GammaMatrix) -> str | None:
    """Which trivial-factorization family A belongs to: 'K1', 'K2', 'K3' or None."""
    al, be, ga, de = A
    if be == 0 and al == de and al in (1, -1):
        return "K1"
    if de == 0 and be in (1, -1):
        if a == 1 and ga == -be:
            return "K2"
        if a == -1 and ga == be:
            return "K3"
    return None


def identity_box_scan(bound: int) -> dict[str, int]:
    """Exhaustively test both directions of the product identity.

    Covers every matrix with entries in [-bound, bound] against every
    a, b, c in [-bound, bound]. Vectorised over matrices; each (a, b, c)
    is one pass. Returns violation counts (both should be zero).
    """
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    al, be, ga, de = (x.ravel() for x in np.meshgrid(r, r, r, r, indexing="ij"))
    forward_bad = converse_bad = holds_total = 0
    for a in r:
        dl = al * de - a * be * ga
        for b in r:
            for c in r:
                eta = al * ga + b * be * ga + c * be * de
                p0 = al * al + b * al * be + a * c * be * be
                p1 = a * ga * ga + b * ga * de + c * de * de
                holds = a * eta * eta + b * eta + c == p0 * p1
                holds_total += int(holds.sum())
                forward_bad += int(((dl == 1) & ~holds).sum())
                if c != 0:
                    branch = (dl == 1) | (c * dl == -c - b * eta)
                    converse_bad += int((holds & ~branch).sum())
    return {"cases": int(len(al) * len(r) ** 3), "holds": holds_total,
            "forward_violations": forward_bad, "converse_violations": converse_bad}
