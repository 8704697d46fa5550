"""``singchain`` command line: JSON on stdout, diagnostics on stderr.

Exit codes: 0 decisive result, 1 input error, 2 inconclusive or unknown.
"""

from __future__ import annotations

import argparse
import inspect
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .anticanon import forced_depth, realize, replay, seed_by_name, seeds, target_k2, witness_from_json
from .chains import ChainSyntaxError, CyclicType, chain_to_frac, frac_to_chain, is_tchain, parse_chain
from .cusp import classify_and_decide, dual_cycle, parse_cycle, steenbrink_ok
from .exact import NotNegativeDefinite, fmt_fraction
from .graphs import cores, log_discrepancies
from .trains import (
    Admissible,
    TTrain,
    ample_trains,
    blow_down,
    enumerate_p_resolutions,
    is_p_admissible,
    make_train,
    parse_train,
)
from .verify import LEMMAS, verify

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _fracs(xs) -> list[str]:
    return [fmt_fraction(Fraction(x)) for x in xs]


def _chain(text: str):
    try:
        return parse_chain(text)
    except (ChainSyntaxError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _cycle(text: str):
    try:
        return parse_cycle(text)
    except (ChainSyntaxError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def train_json(t: TTrain, cost: int | None = None) -> dict:
    out = {
        "train": str(t),
        "vehicles": [list(v) for v in t.vehicles],
        "junction_alphas": [_fracs(pair) for pair in t.junction_alphas],
        "ample": t.ample,
        "moves": [m.to_json() for m in t.moves],
    }
    if cost is not None:
        out["cost"] = cost
    return out


# ---------------------------------------------------------------------------
# chain and frac


def chain_info(c) -> dict:
    t = chain_to_frac(c)
    tc = is_tchain(c)
    out = {
        "entries": list(c),
        "frac": [t.n, t.a],
        "frac_canonical": [t.n, t.canonical_a],
        "tchain": None,
        "alphas": None,
        "cores": None,
        "kp_invariant": None,
        "lc_status": None,
    }
    if tc is not None:
        out["tchain"] = {"d": tc.d, "n": tc.n, "a": tc.a, "milnor": tc.milnor}
        out["cores"] = list(cores(c))
    prof = log_discrepancies(c)
    out["alphas"] = _fracs(prof.alphas)
    out["kp_invariant"] = fmt_fraction(prof.kp_squared_plus_kpE)
    out["lc_status"] = prof.status
    return out


def cmd_chain(args) -> int:
    print(_dump(chain_info(_chain(args.chain))))
    return EXIT_OK


def _parse_frac(text: str) -> CyclicType:
    try:
        n, a = (int(x) for x in text.replace(",", "/").split("/"))
        return CyclicType(n, a)
    except ValueError as exc:
        raise InputError(f"expected a chain literal or n/a, got {text!r}") from exc


def cmd_frac(args) -> int:
    text = args.value.strip()
    if text.startswith("["):
        c = _chain(text)
        t = chain_to_frac(c)
        out = {"chain": list(c), "n": t.n, "a": t.a, "a_inverse": t.a_inverse}
    else:
        t = _parse_frac(text)
        out = {"n": t.n, "a": t.a, "chain": list(frac_to_chain(t))}
    print(_dump(out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# trains


def cmd_train(args) -> int:
    budget = args.budget
    if budget < 0:
        raise InputError("budget must be >= 0")
    if args.train_cmd == "check":
        try:
            entries = parse_train(args.chain)
        except (ChainSyntaxError, ValueError) as exc:
            raise InputError(str(exc)) from exc
        t = make_train(entries)
        try:
            base = list(blow_down(entries))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        out = {"input": args.chain, "blow_down": base, "is_t_train": t is not None}
        if t is not None:
            out.update(train_json(t))
            out["input"] = args.chain
        print(_dump(out))
        return EXIT_OK
    c = _chain(args.chain)
    if args.train_cmd == "search":
        found = ample_trains(c, budget, minimal=not args.all)
        out = {"chain": list(c), "budget": budget, "trains": [train_json(f.train, f.cost) for f in found]}
        print(_dump(out))
        return EXIT_OK if found else EXIT_INCONCLUSIVE
    if args.train_cmd == "admissible":
        res = is_p_admissible(c, budget)
        if isinstance(res, Admissible):
            trains = ample_trains(c, budget, minimal=False) if args.all else res.trains
            out = {
                "chain": list(c),
                "verdict": "Admissible",
                "moves": res.moves,
                "trains": [train_json(f.train, f.cost) for f in trains],
            }
            print(_dump(out))
            return EXIT_OK
        print(_dump({"chain": list(c), "verdict": "NotWithinBudget", "budget": budget}))
        return EXIT_INCONCLUSIVE
    # presol
    res = enumerate_p_resolutions(c, budget, du_val=not args.strict)
    items = [
        {
            "subchains": [list(iv) for iv in r.subchains],
            "trains": [str(t) for t in r.trains],
            "rho": r.rho,
            "mu": r.mu,
            "k_ample": r.k_ample,
        }
        for r in res
    ]
    ok = [r.rho + r.mu for r in res if r.k_ample]
    out = {"chain": list(c), "budget": budget, "resolutions": items, "lambda": min(ok) if ok else None}
    print(_dump(out))
    return EXIT_OK if ok else EXIT_INCONCLUSIVE


# ---------------------------------------------------------------------------
# cusps


def cmd_cusp(args) -> int:
    if args.cusp_cmd == "replay":
        text = sys.stdin.read() if args.witness == "-" else args.witness
        try:
            data = json.loads(text)
            # accept the full `cusp realize` output as well as a bare witness
            if isinstance(data, dict) and "witness" in data:
                data = data["witness"]
            w = witness_from_json(data)
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"bad witness: {exc}") from exc
        states = []
        try:
            final = replay(w, on_state=lambda s: states.append(list(s.entries)))
        except (AssertionError, IndexError) as exc:
            print(_dump({"valid": False, "error": str(exc)}))
            return EXIT_INCONCLUSIVE
        print(_dump({"valid": True, "states": states, "final": list(final.entries), "k2": final.k2}))
        return EXIT_OK
    c = _cycle(args.cycle)
    if args.cusp_cmd == "decide":
        v = classify_and_decide(c)
        out = {"cycle": str(c), **v.to_json()}
        print(_dump(out))
        return EXIT_INCONCLUSIVE if v.status == "Unknown" else EXIT_OK
    if args.cusp_cmd == "dual":
        print(_dump({"cycle": str(c), "dual": str(dual_cycle(c))}))
        return EXIT_OK
    if args.cusp_cmd == "steenbrink":
        print(_dump({"cycle": str(c), "steenbrink": steenbrink_ok(c)}))
        return EXIT_OK
    # realize
    target = dual_cycle(c) if args.dual else c
    if args.seed:
        try:
            for name in args.seed:
                seed_by_name(name)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    res = realize(target, max_blowups=args.max, seed_filter=args.seed or None)
    out = {
        "target": str(target),
        "k2": target_k2(target),
        "forced_depth": forced_depth(target),
        "found": res.witness is not None,
        "reason": res.reason,
        "explored": res.explored,
        "witness": res.witness.to_json() if res.witness else None,
    }
    print(_dump(out))
    return EXIT_OK if res.witness else EXIT_INCONCLUSIVE


# ---------------------------------------------------------------------------
# verify

_RANGE_FLAGS = {
    "chi_max": int,
    "pad_max": int,
    "p_max": int,
    "n_max": int,
    "beta_max": int,
    "gamma_max": int,
    "k_max": int,
    "l_max": int,
    "r_max": int,
    "entry_max": int,
    "samples": int,
    "depth_max": int,
}


def cmd_verify(args) -> int:
    from . import verify as vmod

    builders = {
        "C6": vmod.cases_C6,
        "C7": vmod.cases_C7,
        "C8": vmod.cases_C8,
        "C9": vmod.cases_C9_1,
        "C9.1": vmod.cases_C9_1,
        "C10": vmod.cases_C10,
        "C11": vmod.cases_C11,
        "B3": vmod.cases_B3,
        "B4": vmod.cases_B4,
        "B5": vmod.cases_B5,
        "B6": vmod.cases_B6,
        "B-dual-involution": vmod.check_dual_involution,
    }
    if args.lemma not in builders:
        raise InputError(f"unknown lemma id {args.lemma!r}; expected one of {', '.join(LEMMAS)}")
    accepted = set(inspect.signature(builders[args.lemma]).parameters)
    if args.lemma.startswith("B") and args.lemma != "B-dual-involution":
        accepted.add("depth_max")
    ranges = {}
    for name in _RANGE_FLAGS:
        value = getattr(args, name)
        if value is None:
            continue
        if name not in accepted:
            raise InputError(f"--{name.replace('_', '-')} does not apply to {args.lemma}")
        ranges[name] = value
    if args.d is not None:
        if args.lemma != "C11":
            raise InputError("--d applies to C11 only")
        ranges["ds"] = tuple(args.d)
    if args.lemma == "C9":
        ranges["full"] = args.full
    elif args.full:
        raise InputError("--full applies to C9 only")
    report = verify(args.lemma, budget=args.budget, threads=args.threads, **ranges)
    out = report.to_json()
    out["budget"] = args.budget
    print(_dump(out))
    print(f"{report.lemma}: {report.status} {report.summary}", file=sys.stderr)
    return EXIT_OK if report.status == "PASS" else EXIT_INCONCLUSIVE


# ---------------------------------------------------------------------------


def _default_budget() -> int:
    raw = os.environ.get("SINGCHAIN_BUDGET")
    if raw is None:
        return 24
    try:
        return int(raw)
    except ValueError:
        print(f"ignoring non-integer SINGCHAIN_BUDGET={raw!r}", file=sys.stderr)
        return 24


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="singchain", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"singchain {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    ch = sub.add_parser("chain", help="chain invariants")
    ch_sub = ch.add_subparsers(dest="chain_cmd", required=True)
    info = ch_sub.add_parser("info", help="fraction, T-class, log discrepancies, cores")
    info.add_argument("chain")
    info.set_defaults(func=cmd_chain)

    fr = sub.add_parser("frac", help="chain literal to n/a, or n/a to chain")
    fr.add_argument("value")
    fr.set_defaults(func=cmd_frac)

    budget = _default_budget()
    tr = sub.add_parser("train", help="ample trains, admissibility, P-resolutions")
    tr_sub = tr.add_subparsers(dest="train_cmd", required=True)
    for name, helptext in (
        ("search", "ample trains at minimal cost"),
        ("admissible", "P-admissibility verdict"),
        ("presol", "P-resolutions and lambda"),
        ("check", "inspect a train literal"),
    ):
        sp = tr_sub.add_parser(name, help=helptext)
        sp.add_argument("chain")
        sp.add_argument("--budget", type=int, default=budget)
        if name in ("search", "admissible"):
            sp.add_argument("--all", action="store_true", help="every train within budget")
        if name == "presol":
            sp.add_argument("--strict", action="store_true", help="no Du Val vehicles")
    tr.set_defaults(func=cmd_train)

    cu = sub.add_parser("cusp", help="cusp cycles")
    cu_sub = cu.add_subparsers(dest="cusp_cmd", required=True)
    for name in ("decide", "dual", "steenbrink"):
        cu_sub.add_parser(name).add_argument("cycle")
    rz = cu_sub.add_parser("realize", help="anticanonical realization search")
    rz.add_argument("cycle")
    rz.add_argument("--max", type=int, default=budget, help="maximum number of blow-ups")
    rz.add_argument("--dual", action="store_true", help="realize the dual cycle instead")
    rz.add_argument(
        "--seed",
        action="append",
        help="restrict to a seed (repeatable): "
        + ", ".join(s.name for s in seeds(0))
        + ", hirzebruch-<d>",
    )
    rp = cu_sub.add_parser("replay", help="re-run a witness (JSON text or '-' for stdin)")
    rp.add_argument("witness")
    cu.set_defaults(func=cmd_cusp)

    vf = sub.add_parser("verify", help="lemma grid checks")
    vf.add_argument("lemma", help=", ".join(LEMMAS))
    vf.add_argument("--budget", type=int, default=budget)
    vf.add_argument("--threads", type=int, default=1)
    vf.add_argument("--full", action="store_true", help="C9: include rows (2)-(9)")
    vf.add_argument("--d", type=int, action="append", help="C11: value of d (repeatable)")
    for name, typ in _RANGE_FLAGS.items():
        vf.add_argument("--" + name.replace("_", "-"), type=typ, default=None)
    vf.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotNegativeDefinite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
