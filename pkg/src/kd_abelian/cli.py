"""Command-line interface: ``kd-abelian <subcommand> ...``.

Exit codes of ``check``: 0 KD-positive and in the hull of pure KD-positive
states, 3 KD-positive but outside the hull (a witness is written), 4 not
KD-positive, 5 not a state.  ``decompose`` additionally uses 6 for a
KD-positive state with no nonnegative periodic decomposition.  2 always
means bad input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import serialization as ser
from .counterexamples import verify_z2z2, verify_z6
from .groups import all_subgroups, annihilator, is_chain, make_group
from .hull import chain_decomposition, membership_conv_pure
from .kd import kd_lower, kd_upper
from .positivity import DEFAULT_EPS, check_kd_positive, eta, pure_positive_states

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_OUTSIDE_HULL = 3
EXIT_NOT_KD_POSITIVE = 4
EXIT_NOT_STATE = 5
EXIT_NO_DECOMPOSITION = 6
DEFAULT_SEED = 7


class InputError(Exception):
    pass


def _emit(args, payload: dict, text: str | None = None):
    if args.format == "text" and text is not None:
        out = text
    else:
        out = ser.dumps(payload)
    if getattr(args, "out", None):
        Path(args.out).write_text(out + "\n")
    else:
        print(out)


def _orders(args):
    orders = list(getattr(args, "orders_pos", None) or []) or list(args.orders or [])
    if not orders:
        raise InputError("group orders are required (positional or --orders)")
    try:
        return make_group(orders)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _load_operator(args):
    try:
        G, C = ser.operator_from_json(ser.read_json(args.file))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read operator from {args.file}: {exc}") from exc
    if args.orders and tuple(args.orders) != G.orders:
        raise InputError(f"--orders {args.orders} does not match the file's group {list(G.orders)}")
    return G, C


def cmd_group_info(args) -> int:
    G = _orders(args)
    subs = all_subgroups(G)
    rows = []
    for H in subs:
        perp = annihilator(G, H)
        rows.append({"order": H.order, "elements": [list(e) for e in H.elements],
                     "generators": [list(g) for g in H.generators],
                     "annihilator": [list(e) for e in perp.elements]})
    payload = {"group": G.to_json(), "order": G.order, "subgroup_count": len(subs),
               "pure_positive_count": G.order * len(subs), "chain": is_chain(subs),
               "subgroups": rows}
    lines = [f"group {G}  |G| = {G.order}",
             f"subgroups: {len(subs)}  pure KD-positive states: {G.order * len(subs)}"]
    for r in rows:
        lines.append(f"  H = {r['elements']}  H^perp = {r['annihilator']}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_pure_states(args) -> int:
    G = _orders(args)
    out = []
    for s in pure_positive_states(G):
        out.append({"subgroup": s.subgroup.to_json(),
                    "elements": [list(e) for e in s.subgroup.elements],
                    "g0": list(s.g0), "chi0": list(s.chi0),
                    "amplitudes": ser.array_to_json(s.vector),
                    "eta": eta(G, s.subgroup, s.g0, s.chi0).tolist()})
    text = "\n".join(f"H={o['elements']} g0={o['g0']} chi0={o['chi0']}" for o in out)
    _emit(args, {"group": G.to_json(), "count": len(out), "states": out}, text)
    return EXIT_OK


def cmd_kd_symbol(args) -> int:
    G, C = _load_operator(args)
    f = kd_upper(G, C) if args.upper else kd_lower(G, C)
    _emit(args, ser.kd_to_json(G, f), np.array2string(f, precision=6))
    return EXIT_OK


def _positivity_exit(report) -> int | None:
    if not report.is_state:
        return EXIT_NOT_STATE
    if not report.verdict:
        return EXIT_NOT_KD_POSITIVE
    return None


def cmd_check(args) -> int:
    G, rho = _load_operator(args)
    report = check_kd_positive(G, rho, args.tol)
    payload = {"group": G.to_json(), "positivity": report.to_json()}
    code = _positivity_exit(report)
    if code is None:
        mem = membership_conv_pure(G, rho)
        payload["in_hull"] = mem.feasible
        if mem.feasible:
            code = EXIT_OK
        else:
            code = EXIT_OUTSIDE_HULL
            witness_path = Path(args.witness) if args.witness else Path(str(args.file) + ".witness.json")
            ser.write_json(witness_path, ser.kd_to_json(G, mem.witness))
            payload["witness"] = str(witness_path)
            payload["witness_pairing"] = float(np.sum(mem.witness * kd_lower(G, rho).real))
    payload["exit_code"] = code
    verdicts = {0: "KD-positive, in hull", 3: "KD-positive, outside hull",
                4: "not KD-positive", 5: "not a state"}
    _emit(args, payload, f"{verdicts[code]} (exit {code})")
    return code


def cmd_decompose(args) -> int:
    G, rho = _load_operator(args)
    report = check_kd_positive(G, rho, args.tol)
    code = _positivity_exit(report)
    if code is not None:
        _emit(args, {"positivity": report.to_json(), "exit_code": code})
        return code
    if args.lp:
        mem = membership_conv_pure(G, rho)
        if not mem.feasible:
            payload = {"group": G.to_json(), "mode": "lp", "exit_code": EXIT_NO_DECOMPOSITION,
                       "witness": ser.kd_to_json(G, mem.witness)}
            _emit(args, payload, "KD-positive but no nonnegative periodic decomposition (exit 6)")
            return EXIT_NO_DECOMPOSITION
        dec = mem.parts
        mode = "lp"
    else:
        if not is_chain(all_subgroups(G)):
            raise InputError(f"chain mode needs a group whose subgroups form a chain "
                             f"(cyclic of prime-power order); {G} does not. Use --lp.")
        dec = chain_decomposition(G, rho)
        mode = "chain"
    Q = kd_lower(G, rho).real
    parts = [(H, t) for H, t in dec.parts if np.abs(t).max() > 1e-12]
    payload = {"group": G.to_json(), "mode": mode, "exit_code": EXIT_OK,
               "resum_error": float(np.abs(dec.total() - Q).max()),
               "min_entry": dec.min_entry(),
               "parts": [{"subgroup": H.to_json(), "elements": [list(e) for e in H.elements],
                          "table": t.tolist()} for H, t in parts]}
    text = "\n".join(f"H={[list(e) for e in H.elements]} mass={t.sum():.6f}" for H, t in parts)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_pair(args) -> int:
    try:
        Gw, W = ser.kd_from_json(ser.read_json(args.witness_file))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read witness from {args.witness_file}: {exc}") from exc
    G, rho = _load_operator(args)
    if Gw.orders != G.orders:
        raise InputError("witness and state live on different groups")
    value = complex(np.sum(np.conj(W) * kd_lower(G, rho)))
    _emit(args, {"pairing": ser.complex_to_json(value)}, f"{value.real:.12g} {value.imag:+.3g}i")
    return EXIT_OK


def cmd_verify_examples(args) -> int:
    reports = []
    if args.which in ("z6", "all"):
        reports.append(verify_z6())
    if args.which in ("z2z2", "all"):
        try:
            reports.append(verify_z2z2(args.lam))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    ok = all(r.passed for r in reports)
    payload = {"seed": args.seed, "passed": ok, "reports": [r.to_json() for r in reports]}
    _emit(args, payload, "\n".join(r.to_text() for r in reports))
    return EXIT_OK if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--orders", type=int, nargs="+", help="cyclic orders of the group")
    common.add_argument("--tol", type=float, default=DEFAULT_EPS, help="positivity tolerance")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="kd-abelian", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("group-info", parents=[common], help="subgroups, annihilators and counts")
    s.add_argument("orders_pos", type=int, nargs="*", metavar="ORDER")
    s.set_defaults(func=cmd_group_info)

    s = sub.add_parser("pure-states", parents=[common], help="enumerate pure KD-positive states")
    s.add_argument("orders_pos", type=int, nargs="*", metavar="ORDER")
    s.set_defaults(func=cmd_pure_states)

    s = sub.add_parser("kd-symbol", parents=[common], help="KD distribution of an operator file")
    s.add_argument("file")
    s.add_argument("--upper", action="store_true", help="upper symbol instead of lower")
    s.set_defaults(func=cmd_kd_symbol)

    s = sub.add_parser("check", parents=[common], help="KD positivity and hull membership")
    s.add_argument("file")
    s.add_argument("--witness", help="where to write the witness (default FILE.witness.json)")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("decompose", parents=[common], help="nonnegative periodic decomposition")
    s.add_argument("file")
    s.add_argument("--lp", action="store_true", help="use LP weights instead of the chain repair")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("pair", parents=[common], help="pair a witness table with a state")
    s.add_argument("witness_file")
    s.add_argument("file")
    s.set_defaults(func=cmd_pair)

    s = sub.add_parser("verify-paper", parents=[common], help="check the Z6 and Z2xZ2 counterexamples")
    s.add_argument("which", choices=("z6", "z2z2", "all"), nargs="?", default="all")
    s.add_argument("--lambda", dest="lam", type=float, default=0.05)
    s.set_defaults(func=cmd_verify_examples)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code else EXIT_OK
    if args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
