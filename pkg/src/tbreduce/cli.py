"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 search exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import errors
from .characteristic import analyze_spans, characteristic_matrix, enumerate_variants, verify_characteristic
from .oracle import build_tb_trellis, code_of, codes_equal, shift_code, state_profile
from .polymatrix import PolyMatrix, expand, format_octal, parse_encoder, validate_canonical
from .reduction import dual_procedure, search_reduction, section_bound
from .tbgm import build_tbgm, format_blocks

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_EXHAUSTED = 0, 1, 2, 3


def _add_encoder(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--octal", help='octal generators, e.g. "(7,5)"')
    g.add_argument("--poly", help='polynomial grid, e.g. "1+D,D;D^2,1"')


def _add_common(p, needs_n=True):
    if needs_n:
        p.add_argument("-N", type=int, required=True, help="number of trellis sections")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--force", action="store_true", help="proceed with non-canonical encoders")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tbreduce", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("characteristic", help="characteristic matrix and span structure")
    _add_encoder(p)
    _add_common(p)
    p.add_argument("--all-variants", action="store_true", help="also enumerate every (non-symmetric) variant")

    p = sub.add_parser("reduce", help="search for a reduced tail-biting encoder")
    _add_encoder(p)
    _add_common(p)
    p.add_argument("--all-variants", action="store_true")
    p.add_argument("--partial-division", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-dual", action="store_true", help="skip the dual-side procedure")
    p.add_argument("--trellis-out", help="write the reduced encoder's trellis description here")

    p = sub.add_parser("verify", help="check a reduced encoder against the original")
    _add_encoder(p)
    _add_common(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--reduced-octal")
    g.add_argument("--reduced-poly")
    p.add_argument("--shift", required=True, help='per-column branch shifts, e.g. "-2,0"')

    p = sub.add_parser("dual", help="dual-side selection and profile evidence")
    _add_encoder(p)
    _add_common(p)

    p = sub.add_parser("bound", help="section-length feasibility bound")
    _add_encoder(p, required=False)
    _add_common(p)
    p.add_argument("--n0", type=int)
    p.add_argument("--k0", type=int)
    p.add_argument("--nu", type=int)

    p = sub.add_parser("expand", help="coefficient matrices and metrics")
    _add_encoder(p)
    _add_common(p, needs_n=False)
    return ap


def _encoder(args) -> PolyMatrix:
    G = parse_encoder(args.octal, args.poly)
    diag = validate_canonical(G)
    if not diag.canonical:
        msg = f"{G} is not canonical (basic={diag.basic}, reduced={diag.reduced})"
        if not args.force:
            raise errors.NonCanonicalError(msg + "; pass --force to continue")
        print("warning: " + msg, file=sys.stderr)
    return G


def _check_n(N: int):
    if N < 2:
        raise errors.SectionLengthError(f"N must be at least 2, got {N}")


def _emit(args, payload: dict, text: str):
    print(json.dumps(payload, indent=2) if args.json else text)


def cmd_characteristic(args) -> int:
    G = _encoder(args)
    _check_n(args.N)
    t = build_tbgm(G, args.N).require_full_rank()
    c = characteristic_matrix(t)
    diag = verify_characteristic(c, t)
    s = analyze_spans(c, G.n0, G.k0, args.N)
    payload = {
        "encoder": str(G),
        "N": args.N,
        "characteristic": c.to_dict(),
        "checks": diag.ok,
        "T0": [str(x) for x in s.T0],
        "theta": s.theta,
        "variant_count": s.variant_count,
        "ell": s.ell,
        "ell_formula": s.ell_expected,
    }
    lines = [
        f"encoder {G}, N={args.N}",
        c.render(),
        f"T0 = {{{', '.join(map(str, s.T0))}}}",
        f"theta = {s.theta}  variants = 2^(theta*N) = {s.variant_count}",
        f"ell = {s.ell} (n0((n0-k0)N+1) = {s.ell_expected})",
        f"characteristic checks: {'pass' if diag.ok else 'FAIL'}",
    ]
    if args.all_variants:
        if s.theta * args.N > 16:
            raise errors.BudgetError("too many variants to enumerate")
        seen = set()
        valid = 0
        for v in enumerate_variants(c, s, all_variants=True):
            if v.X not in seen:
                seen.add(v.X)
                valid += verify_characteristic(v, t).ok
        payload["all_variants"] = {"distinct": len(seen), "valid": valid}
        lines.append(f"all variants: {len(seen)} distinct, {valid} valid")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if diag.ok else EXIT_VERIFY


def cmd_reduce(args) -> int:
    G = _encoder(args)
    _check_n(args.N)
    transcript = [] if args.all_variants else None
    try:
        rep = search_reduction(
            G,
            args.N,
            all_variants=args.all_variants,
            partial_division=args.partial_division,
            dual=False if args.no_dual else "auto",
            jobs=args.jobs,
            transcript=transcript,
        )
    except errors.ExhaustedError as exc:
        bound = exc.bound
        payload = {"encoder": str(G), "N": args.N, "exhausted": True, "bound": bound.text, "bound_holds": bool(bound)}
        _emit(args, payload, f"exhausted: {exc}")
        return EXIT_EXHAUSTED
    if args.trellis_out:
        with open(args.trellis_out, "w") as fh:
            json.dump(build_tb_trellis(rep.reduced, args.N).to_dict(), fh, indent=1)
    payload = rep.to_dict()
    if transcript is not None:
        payload["transcript"] = [
            {"variant": e["variant"], "basic_rows": list(e["basic_rows"]), "success": e["success"],
             "G_prime": str(e["G_prime"]) if e["G_prime"] else None, "reason": e["reason"]}
            for e in transcript
        ]
    text = "\n".join(
        [
            f"original  {G}  nu={rep.nu}  N={rep.N}",
            f"G'(D)     {rep.candidate.poly if rep.candidate else '-'}",
            f"reduced   {rep.reduced}  nu={rep.nu_reduced}  octal {format_octal(rep.reduced)}",
            f"shifts    {tuple(rep.shift_vector)}",
            f"mode      {rep.mode}",
            f"verified  {rep.verification} ({rep.verification_method})",
        ]
        + list(rep.notes)
    )
    _emit(args, payload, text)
    return EXIT_OK if rep.verification == "pass" else EXIT_VERIFY


def cmd_verify(args) -> int:
    G = _encoder(args)
    _check_n(args.N)
    R = parse_encoder(args.reduced_octal, args.reduced_poly)
    shifts = tuple(int(x) for x in args.shift.split(","))
    if len(shifts) != G.n0 or R.shape != G.shape:
        raise errors.DimensionError("encoders and shift vector must agree in shape")
    a = shift_code(code_of(G, args.N), shifts, G.n0, args.N)
    b = code_of(R, args.N)
    ok = codes_equal(a, b)
    _emit(args, {"equal": ok, "codewords": len(a)}, f"{'equal' if ok else 'NOT equal'} ({len(a)} codewords)")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_dual(args) -> int:
    G = _encoder(args)
    _check_n(args.N)
    d = dual_procedure(G, args.N)
    sel = d.selection
    payload = {
        "H": str(d.H),
        "H_reciprocal": str(d.Ht),
        "T_hat": [str(s) for s in d.Y.T],
        "selection": str(sel.poly),
        "S_hat": [str(s) for s in sel.spans],
        "swept": str(sel.swept),
        "profile": list(d.profile),
        "swept_profile": list(d.swept_profile),
        "reducible": d.reducible,
    }
    text = "\n".join(
        [
            f"H(D)        {d.H}",
            f"H~(D)       {d.Ht}",
            f"T^          {{{', '.join(map(str, d.Y.T))}}}",
            f"H~'(D)      {sel.poly}  spans {{{', '.join(map(str, sel.spans))}}}",
            f"swept       {sel.swept}",
            f"profiles    {d.profile} -> {d.swept_profile}",
            f"reducible   {d.reducible}",
        ]
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_bound(args) -> int:
    if args.octal or args.poly:
        G = _encoder(args)
        n0, k0, nu = G.n0, G.k0, G.constraint_length
    else:
        if None in (args.n0, args.k0, args.nu):
            raise errors.ParseError("give an encoder or all of --n0 --k0 --nu")
        n0, k0, nu = args.n0, args.k0, args.nu
    _check_n(args.N)
    b = section_bound(n0, k0, nu, args.N)
    _emit(args, {"holds": b.satisfied, "bound": b.text, "n_max": b.n_max}, f"{b.text}: {'holds' if b else 'violated'} for N={args.N}")
    return EXIT_OK


def cmd_expand(args) -> int:
    G = _encoder(args)
    exp = expand(G)
    diag = validate_canonical(G)
    payload = {
        "encoder": str(G),
        "octal": format_octal(G),
        "coefficients": [M.to_strings() for M in exp.matrices],
        "memory": G.memory,
        "nu": G.constraint_length,
        "row_degrees": list(G.row_degrees),
        "basic": diag.basic,
        "reduced": diag.reduced,
        "profile": list(state_profile(G)),
    }
    lines = [f"{G}  octal {format_octal(G)}"]
    for i, M in enumerate(exp.matrices):
        lines.append(f"G_{i}:")
        lines.append(format_blocks(M, G.n0))
    lines.append(f"L={G.memory} nu={G.constraint_length} row degrees={G.row_degrees}")
    lines.append(f"basic={diag.basic} reduced={diag.reduced} profile={state_profile(G)}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


COMMANDS = {
    "characteristic": cmd_characteristic,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "dual": cmd_dual,
    "bound": cmd_bound,
    "expand": cmd_expand,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except errors.VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except errors.ExhaustedError as exc:
        print(f"exhausted: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (errors.TBError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
