"""Recursively-factorable criterion, interval certificates and constructive descent.

An integer n satisfies the criterion for F when every nontrivial
factorization |F(n)| = p q admits some r with |F(r)| < |F(n)| and
r = n (mod p) or r = n (mod q). F(n) = 0 always fails.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import __version__
from .bigarith import factor_pairs, is_square, isqrt, trial_divisors
from .errors import CriterionCannotClose, DescentStall, IdentityDefect
from .polynomial import Polynomial, require_quadratic
from .sieve import SieveTrace, sieve_eval, sieve_eval_quadratic


# --------------------------------------------------------------------------
# minimising |F| over a residue class
# --------------------------------------------------------------------------

def _anchors(F: Polynomial) -> list[int]:
    """Integers within 2 of every point where |F| can have a local minimum."""
    if F.degree == 1:
        return [(-F.coeff(0)) // F.coeff(1)]
    a, b, c = F.a, F.b, F.c
    pts = [(-b) // (2 * a)]
    D = b * b - 4 * a * c
    if D >= 0:
        s = isqrt(D)
        pts += [(-b - s) // (2 * a), (-b + s) // (2 * a)]
    return pts


def _class_candidates(F: Polynomial, n: int, m: int, bound: int) -> Iterable[int]:
    if F.degree <= 2:
        # |F| is monotone between consecutive roots/vertex, so the class
        # minimum sits next to one of them
        for t in _anchors(F):
            lo = t - m - 2
            r = lo + (n - lo) % m
            while r <= t + m + 2:
                yield r
                r += m
        return
    # generic degree: |F(x)| >= bound whenever |x| >= (S + bound) / |a_d|
    S = sum(abs(c) for c in F.coeffs[:-1])
    R = -(-(S + bound) // abs(F.leading))
    r = -R + (n + R) % m
    while r <= R:
        yield r
        r += m


def class_minimizer(F: Polynomial, n: int, m: int, bound: int) -> int | None:
    """r = n (mod m) minimising (|F(r)|, |r|, r) subject to |F(r)| < bound."""
    if m <= 0:
        return None
    best = None
    for r in _class_candidates(F, n, m, bound):
        v = abs(F(r))
        if v < bound:
            key = (v, abs(r), r)
            if best is None or key < best:
                best = key
    return None if best is None else best[2]


def _pick(F: Polynomial, n: int, moduli: Sequence[int], bound: int) -> tuple[int, int] | None:
    """Best (r, modulus) over several residue classes; earlier moduli win ties."""
    best = None
    for rank, m in enumerate(moduli):
        r = class_minimizer(F, n, m, bound)
        if r is None:
            continue
        key = (abs(F(r)), abs(r), r, rank)
        if best is None or key < best[0]:
            best = (key, r, m)
    return None if best is None else (best[1], best[2])


# --------------------------------------------------------------------------
# pointwise criterion
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CriterionWitness:
    n: int
    p: int
    q: int
    r: int
    modulus: int

    @property
    def factor_pair(self) -> tuple[int, int]:
        return (self.p, self.q)


@dataclass
class CriterionResult:
    n: int
    value: int
    witnesses: list[CriterionWitness] = field(default_factory=list)
    failures: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def criterion_check(F: Polynomial, n: int) -> CriterionResult:
    v = F(n)
    res = CriterionResult(n, v)
    if v == 0:
        res.failures.append((0, 0))
        return res
    bound = abs(v)
    for p, q in factor_pairs(v):
        hit = _pick(F, n, (p, q) if p != q else (p,), bound)
        if hit is None:
            res.failures.append((p, q))
        else:
            res.witnesses.append(CriterionWitness(n, p, q, hit[0], hit[1]))
    return res


# --------------------------------------------------------------------------
# interval certificates
# --------------------------------------------------------------------------

def _normalized(F: Polynomial) -> Polynomial:
    require_quadratic(F)
    return -F if F.a < 0 else F


def _right_threshold(F: Polynomial) -> int:
    """Smallest n_hat such that every n >= n_hat passes the criterion outright.

    For n >= n_hat: min(p, q) < 2n + b/a, so r = n - min(p, q) lies strictly
    between n and its mirror -n - b/a, where |F| < |F(n)|.
    """
    a, b, c = F.a, F.b, F.c
    D = b * b - 4 * a * c

    def grows(n: int) -> bool:
        v = F(n)
        return v > 0 and 4 * a * v > D

    if a <= 3:
        def analytic(n: int) -> bool:
            w = 2 * a * n + b
            return w > 0 and w * w > a * a * F(n) and grows(n)

        def width_ok(n: int) -> bool:
            w = 2 * a * n + b
            return w > 0 and w > a * isqrt(abs(F(n)))
    elif a == 4:
        def analytic(n: int) -> bool:
            w = 8 * n + b
            return w > 0 and w > -D and grows(n)

        def width_ok(n: int) -> bool:
            w = 8 * n + b
            if w <= 0:
                return False
            pairs = factor_pairs(F(n)) if F(n) != 0 else []
            return all(4 * p < w for p, _ in pairs)
    else:
        raise CriterionCannotClose("not irreducible / criterion cannot close: leading coefficient above 4")

    n = -(b // (2 * a))
    while not analytic(n):
        n += 1
    while width_ok(n - 1) and grows(n - 1):
        n -= 1
    return n


def lemma_threshold(F: Polynomial) -> tuple[int, int]:
    """(left, right) thresholds; the criterion must be checked strictly between."""
    G = _normalized(F)
    D = G.b * G.b - 4 * G.a * G.c
    if is_square(D):
        raise CriterionCannotClose("not irreducible / criterion cannot close")
    right = _right_threshold(G)
    left = -_right_threshold(Polynomial((G.c, -G.b, G.a)))
    return left, right


@dataclass
class DescentCertificate:
    poly: Polynomial
    mode: str
    interval: tuple[int, int]
    witnesses: dict[tuple[int, int, int], CriterionWitness] = field(default_factory=dict)
    failures: list[tuple[int, int, int]] = field(default_factory=list)
    n_hat: tuple[int, int] | None = None
    lemma_interval: tuple[int, int] | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def failing_n(self) -> list[int]:
        return sorted({n for n, _, _ in self.failures})

    @property
    def counterexample(self) -> int | None:
        """Failing n closest to 0 (ties go to the positive side)."""
        return min(self.failing_n, key=lambda n: (abs(n), -n)) if self.failures else None

    def to_text(self) -> str:
        """Line-oriented canonical form, sorted by n then factor pair."""
        lines = [
            f"# recfactor certificate v{__version__}",
            "poly " + ",".join(str(c) for c in self.poly.to_high()),
            f"mode {self.mode}",
            f"interval {self.interval[0]} {self.interval[1]}",
        ]
        if self.n_hat is not None:
            lines.append(f"n_hat {self.n_hat[0]} {self.n_hat[1]}")
        if self.lemma_interval is not None:
            lines.append(f"lemma_interval {self.lemma_interval[0]} {self.lemma_interval[1]}")
        lines.append("status " + ("PASS" if self.passed else "FAIL"))
        rows = [(k, f"W {w.n} {w.p} {w.q} {w.r} {w.modulus}") for k, w in self.witnesses.items()]
        rows += [(k, f"X {k[0]} {k[1]} {k[2]}") for k in self.failures]
        lines += [line for _, line in sorted(rows)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "DescentCertificate":
        head: dict[str, list[str]] = {}
        witnesses, failures = {}, []
        for line in text.splitlines():
            if not line or line.startswith("#"):
                continue
            tag, *rest = line.split()
            if tag == "W":
                n, p, q, r, m = map(int, rest)
                witnesses[(n, p, q)] = CriterionWitness(n, p, q, r, m)
            elif tag == "X":
                failures.append(tuple(map(int, rest)))
            else:
                head[tag] = rest
        pair = lambda k: tuple(map(int, head[k])) if k in head else None  # noqa: E731
        cert = cls(
            poly=Polynomial.from_high([int(c) for c in head["poly"][0].split(",")]),
            mode=head["mode"][0],
            interval=pair("interval"),
            witnesses=witnesses,
            failures=sorted(failures),
            n_hat=pair("n_hat"),
            lemma_interval=pair("lemma_interval"),
        )
        if ("PASS" if cert.passed else "FAIL") != head["status"][0]:
            raise ValueError("certificate status does not match its entries")
        return cert


def _check_range(args: tuple[Polynomial, int, int]) -> list[CriterionResult]:
    F, lo, hi = args
    return [criterion_check(F, n) for n in range(lo, hi + 1)]


def _run(F: Polynomial, lo: int, hi: int, jobs: int) -> list[CriterionResult]:
    if jobs <= 1 or hi - lo < 64:
        return _check_range((F, lo, hi))
    step = math.ceil((hi - lo + 1) / (4 * jobs))
    chunks = [(F, s, min(s + step - 1, hi)) for s in range(lo, hi + 1, step)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return [r for part in ex.map(_check_range, chunks) for r in part]


def verify_rf(F: Polynomial, mode: str = "lemma", lo: int | None = None,
              hi: int | None = None, jobs: int = 1) -> DescentCertificate:
    """Check the criterion on a finite interval.

    ``mode="lemma"`` derives the interval outside of which the criterion
    holds automatically and checks its union with [-|c|, |c|]; a passing
    certificate then covers every integer. ``mode="range"`` checks [lo, hi].
    """
    if mode == "range":
        if lo is None or hi is None:
            raise ValueError("range mode needs lo and hi")
        cert = DescentCertificate(F, "range", (lo, hi))
    elif mode == "lemma":
        left, right = lemma_threshold(F)
        I = (left + 1, right - 1)
        c = abs(F.c)
        # leading coefficient 4 gets a margin of 2 around the base interval
        margin = 2 if abs(F.a) == 4 else 0
        lo = min(I[0], -c - margin)
        hi = max(I[1], c + margin)
        cert = DescentCertificate(F, "lemma", (lo, hi), n_hat=(left, right), lemma_interval=I)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for res in _run(F, lo, hi, jobs):
        for w in res.witnesses:
            cert.witnesses[(w.n, w.p, w.q)] = w
        cert.failures += [(res.n, p, q) for p, q in res.failures]
    cert.failures.sort()
    return cert


# --------------------------------------------------------------------------
# constructive descent
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DescentTrace:
    poly: Polynomial
    n: int
    p: int
    remainders: tuple[int, ...]
    quotients: tuple[int, ...]
    factors: tuple[int, ...]
    seq: tuple[int, ...]
    trace: SieveTrace


def _seq_from_remainders(F: Polynomial, targets: list[int]) -> list[int]:
    """Build (x_1, ...) whose partial sums N_k hit each target in turn."""
    seq = [targets[0]]
    for t in targets[1:]:
        tr = sieve_eval(F, seq)
        step, rem = divmod(t - tr.N[-1], tr.f[-1]) if tr.f[-1] else (0, 1)
        if rem:
            raise IdentityDefect(f"descent quotient not integral for {F} at {t}")
        seq.append(step)
    return seq


def factor_to_sequence(F: Polynomial, n: int, p: int) -> DescentTrace:
    """Sieving sequence with N_m = n and |f_m| = p, found by descending |F|."""
    require_quadratic(F)
    v = F(n)
    if v == 0:
        raise ValueError(f"F({n}) = 0 has no factorization presentation")
    if p <= 0 or abs(v) % p:
        raise ValueError(f"{p} does not divide F({n}) = {v}")
    if p == abs(v):
        seq = [n]
        remainders, quotients, factors = (), (), (p,)
    elif p == 1:
        # (n, 0): f_2 = f_0 = 1 with N_2 = n
        seq = [n, 0]
        remainders, quotients, factors = (), (), (1,)
    else:
        rems, quots, facs = [], [], []
        hit = _pick(F, n, (p, abs(v) // p), abs(v))
        if hit is None:
            raise DescentStall(n)
        r, mod = hit
        cur = n
        while True:
            rems.append(r)
            quots.append((cur - r) // mod)
            facs.append(mod)
            nxt = F(r) // mod
            if abs(nxt) == 1:
                facs.append(nxt)
                break
            hit = _pick(F, r, (abs(nxt),), abs(F(r)))
            if hit is None:
                raise DescentStall(r)
            cur, (r, mod) = r, hit
        seq = _seq_from_remainders(F, rems[::-1] + [n])
        remainders, quotients, factors = tuple(rems), tuple(quots), tuple(facs)
    tr = sieve_eval_quadratic(F, seq)
    if abs(tr.f[-1]) != p:
        # the descent may land on the cofactor; a trailing 0 swaps f_{m-1}, f_m
        seq.append(0)
        tr = sieve_eval_quadratic(F, seq)
    if tr.N[-1] != n or abs(tr.f[-1]) != p:
        raise IdentityDefect(f"descent round trip failed for {F}, n={n}, p={p}")
    return DescentTrace(F, n, p, remainders, quotients, factors, tuple(seq), tr)
