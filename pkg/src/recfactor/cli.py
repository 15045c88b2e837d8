"""Command-line front end.

Exit codes: 0 success/PASS, 1 FAIL with counterexample, 2 usage or parse
error, 3 internal identity defect, 4 descent stall.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Any

from . import __version__
from .conic import ConicInstance, LatticePoint, enumerate_points, pell_reduce, point_to_factorization, psi_inv
from .descent import factor_to_sequence, verify_rf
from .errors import CriterionCannotClose, DescentStall, IdentityDefect
from .gamma import evaluate_forms, seq_to_matrix, transvection_word
from .plot import render_svg
from .polynomial import Polynomial
from .sieve import expand_to_binary, sieve_eval

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEFECT, EXIT_STALL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def parse_ints(text: str, what: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r}: expected comma-separated integers") from None


def parse_poly(text: str, low_first: bool = False) -> Polynomial:
    """'a,b,c' (highest degree first) or, with low_first, 'c0,c1,...,cd'."""
    cs = parse_ints(text, "polynomial")
    if not cs:
        raise UsageError("empty polynomial")
    hi = cs[::-1] if low_first else cs
    if hi[0] == 0:
        raise UsageError("leading coefficient must be nonzero")
    return Polynomial.from_high(hi)


def _s(v: Any) -> Any:
    """Integers become decimal strings so JSON consumers never truncate them."""
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_s(x) for x in v]
    if isinstance(v, dict):
        return {k: _s(x) for k, x in v.items()}
    return v


def payload(F: Polynomial, command: str, results: list[dict]) -> dict:
    return {"polynomial": _s(F.to_high()), "command": command, "results": _s(results)}


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2)


def _matrix(A) -> list[list[int]]:
    return A.rows()


# --------------------------------------------------------------------------
# sieve
# --------------------------------------------------------------------------

def sieve_report(F: Polynomial, seq: list[int], binary: bool) -> dict:
    tr = sieve_eval(F, seq)
    out = {"seq": list(tr.seq), "f": list(tr.f), "N": list(tr.N)}
    if tr.m:
        out["value"] = tr.value
        out["factors"] = list(tr.last_pair)
    if binary:
        b = expand_to_binary(tr)
        out["binary"] = {"seq": list(b.seq), "f": list(b.f), "N": list(b.N), "M": b.m}
    return out


def cmd_sieve(args) -> int:
    F = parse_poly(args.poly, args.low_first)
    seq = parse_ints(args.seq, "sequence")
    rep = sieve_report(F, seq, args.binary_expand)
    if args.json:
        print(dumps(payload(F, "sieve", [rep])))
        return EXIT_OK
    print(f"F(x) = {F}")
    print(f"{'k':>3} {'x_k':>8} {'f_k':>14} {'N_k':>14}")
    for k, (f, N) in enumerate(zip(rep["f"], rep["N"])):
        x = "-" if k == 0 else str(seq[k - 1])
        print(f"{k:>3} {x:>8} {f:>14} {N:>14}")
    print(f"f = [{', '.join(map(str, rep['f']))}]")
    if seq:
        p, q = rep["factors"]
        print(f"F({rep['N'][-1]}) = {rep['value']} = {p} × {q}")
    if args.binary_expand and seq:
        b = rep["binary"]
        print(f"binary expansion (M = {b['M']}): ({', '.join(map(str, b['seq']))})")
        print(f"f_{b['M']} = {b['f'][-1]}, f_{b['M'] - 1} = {b['f'][-2]}, N_{b['M']} = {b['N'][-1]}")
    return EXIT_OK


# --------------------------------------------------------------------------
# factor
# --------------------------------------------------------------------------

def factor_report(F: Polynomial, n: int, p: int, matrix: bool, word: bool) -> dict:
    d = factor_to_sequence(F, n, p)
    tr = d.trace
    out = {
        "n": n, "p": p, "seq": list(d.seq),
        "remainders": list(d.remainders), "quotients": list(d.quotients), "factors": list(d.factors),
        "f": list(tr.f), "N": list(tr.N), "value": tr.value,
    }
    if matrix:
        chain = seq_to_matrix(F, d.seq)
        ev = evaluate_forms(F, chain[-1])
        if ev.phi(tr.m) != tr.f[-1] or ev.eta_val != n or ev.delta_val != 1:
            raise IdentityDefect("matrix chain disagrees with the sieve")
        out["matrices"] = [_matrix(A) for A in chain]
    if word and F.a == 1:
        w, M = transvection_word(d.seq)
        if M != seq_to_matrix(F, d.seq)[-1]:
            raise IdentityDefect("transvection word disagrees with the matrix recursion")
        out["word"] = str(w)
    return out


def cmd_factor(args) -> int:
    F = parse_poly(args.poly, args.low_first)
    try:
        rep = factor_report(F, args.n, args.p, args.matrix, args.word)
    except DescentStall as e:
        print(f"criterion violated at n = {e.at}", file=sys.stderr)
        return EXIT_STALL
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.json:
        print(dumps(payload(F, "factor", [rep])))
        return EXIT_OK
    m = len(rep["seq"])
    print(f"F(x) = {F}, n = {args.n}, p = {args.p}")
    print(f"seq = ({', '.join(map(str, rep['seq']))})")
    if rep["remainders"]:
        print(f"remainders = {rep['remainders']}, quotients = {rep['quotients']}, factors = {rep['factors']}")
    print(f"check: N_{m} = {rep['N'][-1]}, f_{m - 1} = {rep['f'][-2]}, f_{m} = {rep['f'][-1]}, "
          f"F({args.n}) = {rep['value']} = {rep['f'][-2]} × {rep['f'][-1]}")
    if args.matrix:
        for k, A in enumerate(rep["matrices"]):
            print(f"A_{k} = ({A[0][0]}, {A[0][1]}; {A[1][0]}, {A[1][1]})")
    if args.word:
        print(f"word = {rep['word']}" if "word" in rep else "word: only defined for monic F (a = 1)")
    return EXIT_OK


# --------------------------------------------------------------------------
# verify-rf
# --------------------------------------------------------------------------

def verify_report(cert) -> dict:
    out = {
        "mode": cert.mode, "status": "PASS" if cert.passed else "FAIL",
        "interval": list(cert.interval), "witness_count": len(cert.witnesses),
        "failures": [list(f) for f in cert.failures],
    }
    if cert.lemma_interval is not None:
        out["lemma_interval"] = list(cert.lemma_interval)
        out["n_hat"] = list(cert.n_hat)
    if cert.failures:
        out["counterexample"] = cert.counterexample
    return out


def cmd_verify_rf(args) -> int:
    F = parse_poly(args.poly, args.low_first)
    if args.mode == "range" and (args.lo is None or args.hi is None):
        raise UsageError("--mode range needs --lo and --hi")
    try:
        cert = verify_rf(F, args.mode, args.lo, args.hi, jobs=args.jobs)
    except CriterionCannotClose as e:
        raise UsageError(str(e)) from None
    if args.emit_cert:
        with open(args.emit_cert, "w") as fh:
            fh.write(cert.to_text())
    rep = verify_report(cert)
    if args.json:
        print(dumps(payload(F, "verify-rf", [rep])))
    elif cert.passed:
        lo, hi = cert.interval
        if cert.lemma_interval is not None:
            a, b = cert.lemma_interval
            c = abs(F.c)
            print(f"PASS  I = [{a}, {b}] ∪ [{-c}, {c}]  checked [{lo}, {hi}], {len(cert.witnesses)} witnesses")
        else:
            print(f"PASS  checked [{lo}, {hi}], {len(cert.witnesses)} witnesses")
    else:
        n = cert.counterexample
        pairs = [(p, q) for m, p, q in cert.failures if m == n]
        why = "F(n) = 0" if pairs == [(0, 0)] else ", ".join(f"({p}, {q})" for p, q in pairs) + " without witness"
        print(f"FAIL at n = {n}: {why}")
        if len(cert.failing_n) > 1:
            print(f"all failing n: {', '.join(map(str, cert.failing_n))}")
    return EXIT_OK if cert.passed else EXIT_FAIL


# --------------------------------------------------------------------------
# conic
# --------------------------------------------------------------------------

def conic_report(inst: ConicInstance, box: int | None, pell: bool) -> dict:
    pts = enumerate_points(inst, box)
    rows = []
    for P in pts:
        p, q, n = point_to_factorization(inst, P)
        row: dict[str, Any] = {"X": P.X, "Y": P.Y, "p": p, "q": q, "n": n}
        row["matrix"] = _matrix(psi_inv(inst.poly.a, P)) if P.Y != 0 else None
        if pell:
            pp = pell_reduce(inst, P)
            row.update(U=pp.U, V=pp.V, D=pp.D)
        rows.append(row)
    return {"n": inst.n, "points": rows}


def conic_equation(inst: ConicInstance) -> str:
    F = inst.poly
    terms = [(F.a, "X^2"), (F.b, "XY"), (F.c, "Y^2"), (1, "X"), (-inst.n, "Y")]
    out = ""
    for k, var in terms:
        if k == 0:
            continue
        mag = "" if abs(k) == 1 else str(abs(k))
        sign = ("-" if k < 0 else "") if not out else (" - " if k < 0 else " + ")
        out += f"{sign}{mag}{var}"
    return out + " = 0"


def _parse_family(text: str) -> range:
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise UsageError(f"--family expects LO:HI, got {text!r}") from None
    return range(lo, hi + 1)


def cmd_conic(args) -> int:
    F = parse_poly(args.poly, args.low_first)
    if F.degree != 2:
        raise UsageError("conic needs a quadratic polynomial")
    inst = ConicInstance(F, args.n)
    if inst.discriminant >= 0 and args.box is None:
        raise UsageError("unbounded conic requires a search box (--box)")
    rep = conic_report(inst, args.box, args.pell)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["X", "Y", "p", "q", "n"])
            for r in rep["points"]:
                w.writerow([r["X"], r["Y"], r["p"], r["q"], r["n"]])
    if args.svg:
        family = [ConicInstance(F, k) for k in _parse_family(args.family)] if args.family else []
        insts = [i for i in family if i != inst] + [inst]
        pts = [LatticePoint(r["X"], r["Y"]) for r in rep["points"]]
        with open(args.svg, "w") as fh:
            fh.write(render_svg(insts, pts, highlight=inst, box=args.box))
    if args.json:
        print(dumps(payload(F, "conic", [rep])))
        return EXIT_OK
    print(f"{conic_equation(inst)}   F({args.n}) = {F(args.n)}")
    for r in rep["points"]:
        A = r["matrix"]
        mat = f"A = ({A[0][0]}, {A[0][1]}; {A[1][0]}, {A[1][1]})" if A else "A in K-class (trivial)"
        line = f"({r['X']}, {r['Y']})  {r['p']} · {r['q']}  {mat}"
        if args.pell:
            line += f"  U = {r['U']}, V = {r['V']}"
        print(line)
    print(f"{len(rep['points'])} points")
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="recfactor", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--poly", required=True, help="coefficients, highest degree first (a,b,c)")
        p.add_argument("--low-first", action="store_true", help="read --poly as c0,c1,...,cd")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("sieve", help="evaluate a sieving sequence")
    common(p)
    p.add_argument("--seq", required=True, help="comma-separated integers, may be empty")
    p.add_argument("--binary-expand", action="store_true")
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("factor", help="find a sieving sequence for a divisor of F(n)")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--matrix", action="store_true", help="print the matrix chain A_k")
    p.add_argument("--word", action="store_true", help="print the transvection word (a = 1)")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("verify-rf", help="certify the recursively-factorable criterion")
    common(p)
    p.add_argument("--mode", choices=["lemma", "range"], default="lemma")
    p.add_argument("--lo", type=int)
    p.add_argument("--hi", type=int)
    p.add_argument("--emit-cert", metavar="PATH")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify_rf)

    p = sub.add_parser("conic", help="lattice points of a X^2 + b XY + c Y^2 + X - n Y = 0")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--box", type=int, help="search bound |X|, |Y| <= BOX (needed when b^2 - 4ac >= 0)")
    p.add_argument("--svg", metavar="PATH")
    p.add_argument("--family", metavar="LO:HI", help="overlay the conics for n in LO..HI in the SVG")
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--pell", action="store_true")
    p.set_defaults(func=cmd_conic)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except IdentityDefect as e:
        print(f"internal defect: {e}", file=sys.stderr)
        return EXIT_DEFECT


if __name__ == "__main__":
    sys.exit(main())
