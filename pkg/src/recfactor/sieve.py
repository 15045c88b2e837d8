"""Polynomial-value sieving sequences.

For a sequence (x_1, ..., x_m) the partial sums N_k = sum_{j<=k} x_j f_{j-1}
satisfy F(N_m) = f_{m-1} * f_m. The f_k are computed without division from
the Taylor expansion of F around N_{k-1}:

    f_k = f_{k-2} + x_k * sum_{j=1}^{d} (D^(j) F)(N_{k-1}) * (x_k f_{k-1})^(j-1)

so a zero value of some f_k never causes trouble.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import IdentityDefect
from .polynomial import Polynomial


@dataclass(frozen=True)
class SieveTrace:
    poly: Polynomial
    seq: tuple[int, ...]
    f: tuple[int, ...]
    N: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.seq)

    @property
    def value(self) -> int:
        """F(N_m)."""
        return self.poly(self.N[-1])

    @property
    def last_pair(self) -> tuple[int, int]:
        if self.m == 0:
            return (1, 1)
        return (self.f[-2], self.f[-1])


def _check(trace: SieveTrace) -> SieveTrace:
    F = trace.poly
    if trace.f[0] != 1 or trace.N[0] != 0:
        raise IdentityDefect("trace must start with f_0 = 1, N_0 = 0")
    for k in range(1, trace.m + 1):
        if F(trace.N[k]) != trace.f[k - 1] * trace.f[k]:
            raise IdentityDefect(
                f"F(N_{k}) != f_{k-1} f_{k} for {F} along {list(trace.seq)}"
            )
    return trace


def sieve_eval(F: Polynomial, seq: Sequence[int]) -> SieveTrace:
    """Evaluate f_0..f_m and N_0..N_m for any polynomial of degree >= 1."""
    if F.degree < 1:
        raise ValueError("sieving needs a polynomial of degree >= 1")
    derivs = [F.hasse(j) for j in range(1, F.degree + 1)]
    # f_{-1} := F(0) makes the recurrence produce f_1 = F(x_1)
    f = [F(0), 1]
    N = [0]
    for x in seq:
        base = N[-1]
        step = x * f[-1]
        acc = 0
        for D in reversed(derivs):
            acc = acc * step + D(base)
        f.append(f[-2] + x * acc)
        N.append(base + step)
    return _check(SieveTrace(F, tuple(seq), tuple(f[1:]), tuple(N)))


def sieve_eval_quadratic(F: Polynomial, seq: Sequence[int]) -> SieveTrace:
    """Quadratic special case: f_k = f_{k-2} + x_k F'(N_{k-1}) + a x_k^2 f_{k-1}."""
    if F.degree != 2:
        raise ValueError("quadratic recurrence requires degree 2")
    a = F.a
    dF = F.derivative()
    f = [F.c, 1]
    N = [0]
    for x in seq:
        f.append(f[-2] + x * dF(N[-1]) + a * x * x * f[-1])
        N.append(N[-1] + x * f[-2])
    return _check(SieveTrace(F, tuple(seq), tuple(f[1:]), tuple(N)))


def split_entry(x: int) -> list[int]:
    """Rewrite one nonzero entry as a {-1, 0, 1} run of length 2|x| - 1."""
    if x == 0:
        raise ValueError("zero entries must be pre-stripped")
    s = 1 if x > 0 else -1
    out = [s]
    for _ in range(abs(x) - 1):
        out += [0, s]
    return out


def expand_to_binary(trace: SieveTrace) -> SieveTrace:
    """Equivalent trace over entries in {-1, 0, 1}.

    Uses x -> (sign x, 0, x - sign x) repeatedly; inserting (x_a, 0, x_b) for
    x = x_a + x_b leaves the final pair (f_{m-1}, f_m) and N_m unchanged.
    """
    if not trace.seq:
        raise ValueError("cannot expand an empty sequence")
    if any(x == 0 for x in trace.seq):
        raise ValueError("zero entries must be pre-stripped")
    z: list[int] = []
    for x in trace.seq:
        z += split_entry(x)
    out = sieve_eval(trace.poly, z)
    if out.last_pair != trace.last_pair or out.N[-1] != trace.N[-1]:
        raise IdentityDefect("binary expansion changed the final presentation")
    return out
