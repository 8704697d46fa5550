"""Grid checks of the classification lemmas against the search engines.

Each check instantiates a parameter grid, computes the artifact verdict
for every point and compares it with the closed-form statement.

* ``match``: the statement and the computation agree.  For positive
  points the listed train (or witness) must also be produced.
* ``mismatch``: they disagree.  Any mismatch makes the report FAIL.
* ``inconclusive``: the statement is negative and nothing was found
  within budget, or a realization search was out of reach.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .anticanon import forced_depth, realize
from .chains import ChainSyntaxError, format_entries, parse_chain
from .cusp import (
    Cycle,
    cycle_B3,
    cycle_B4,
    cycle_B5,
    cycle_B6,
    decide_B3,
    decide_B4,
    decide_B5,
    decide_B6,
    dual_cycle,
    steenbrink_ok,
)
from .trains import (
    Admissible,
    ample_trains,
    blow_down,
    format_train,
    is_ample_train,
    is_p_admissible,
    lr_trains,
    split_vehicles,
)

VERDICTS = ("match", "mismatch", "inconclusive")


@dataclass(frozen=True)
class CaseResult:
    params: tuple
    verdict: str
    details: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"params": list(self.params), "verdict": self.verdict, "details": self.details}


@dataclass(frozen=True)
class VerifyReport:
    lemma: str
    param_names: tuple[str, ...]
    cases: tuple[CaseResult, ...]

    @property
    def grid(self) -> list[tuple]:
        return [c.params for c in self.cases]

    @property
    def summary(self) -> dict[str, int]:
        out = {v: 0 for v in VERDICTS}
        for c in self.cases:
            out[c.verdict] += 1
        return out

    @property
    def status(self) -> str:
        return "FAIL" if self.summary["mismatch"] else "PASS"

    def of(self, verdict: str) -> list[CaseResult]:
        return [c for c in self.cases if c.verdict == verdict]

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "status": self.status,
            "param_names": list(self.param_names),
            "summary": self.summary,
            "cases": [c.to_json() for c in self.cases],
        }


# ---------------------------------------------------------------------------
# literals with parameters


def _pow2(k: int) -> str:
    return f"2^{{{k}}}"


def chain_or_none(text: str) -> tuple[int, ...] | None:
    """Entries of a parametrized chain literal, ``None`` when it is undefined."""
    try:
        return parse_chain(text).entries
    except (ChainSyntaxError, ValueError):
        return None


def listed_train(text: str) -> tuple[int, ...] | None:
    """State entries of a listed train literal.

    A vehicle containing ``2^{-2}`` is a degenerate vehicle; it is dropped
    together with one adjacent junction.  Other undefined exponents make
    the literal unusable (``None``).
    """
    parts = [p.strip() for p in text.split("-1-")]
    kept = []
    for p in parts:
        if "2^{-2}" in p.replace(" ", ""):
            continue
        entries = chain_or_none(p)
        if entries is None:
            return None
        kept.append(entries)
    if not kept:
        return None
    out: list[int] = []
    for i, v in enumerate(kept):
        if i:
            out.append(1)
        out.extend(v)
    return tuple(out)


def _orientations(witness: tuple[int, ...]):
    """The witness with each vehicle read either way, whole-train reversals included."""
    vs = split_vehicles(witness)
    for flips in itertools.product((False, True), repeat=len(vs)):
        out: list[int] = []
        for i, (v, f) in enumerate(zip(vs, flips)):
            if i:
                out.append(1)
            out.extend(v[::-1] if f else v)
        yield tuple(out)


def _valid_witness(chain: tuple[int, ...], witness: tuple[int, ...] | None):
    """``(problem, witness)``: why the listed witness is unusable (or ``None``), and
    the witness with vehicles oriented so that it blows down to ``chain``."""
    if witness is None:
        return "listed train literal undefined at these parameters", None
    for cand in _orientations(witness):
        for oriented in (cand, cand[::-1]):
            try:
                ok = blow_down(oriented).entries == chain
            except ValueError:
                ok = False
            if not ok:
                continue
            if is_ample_train(oriented) is None:
                return "listed train is not an ample T-train", oriented
            return None, oriented
    return "listed train does not blow down to the chain", None


def _same_up_to_orientation(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return a == b or a == b[::-1]


# ---------------------------------------------------------------------------
# train cases


@dataclass(frozen=True)
class TrainCase:
    params: tuple
    chain: tuple[int, ...]
    listed: tuple[str, ...] = ()  # listed train literals when the statement is positive


def evaluate_train_case(case: TrainCase, budget: int) -> CaseResult:
    C = case.chain
    details: dict = {"chain": format_entries(C)}
    witnesses = []
    for lit in case.listed:
        problem, witness = _valid_witness(C, listed_train(lit))
        if problem is None:
            witnesses.append(witness)
        else:
            details.setdefault("excluded", []).append(f"{lit}: {problem}")
    expected = bool(witnesses)
    if expected:
        details["listed"] = [format_train(w) for w in witnesses]
    res = is_p_admissible(C, budget)
    found = isinstance(res, Admissible)
    if found:
        details["trains"] = [format_train(f.entries) for f in res.trains]
        details["cost"] = res.moves
    details["expected"] = "Admissible" if expected else "not P-admissible"
    if expected != found:
        return CaseResult(case.params, "mismatch", details)
    if not expected:
        details["reason"] = f"no ample train within budget {budget}"
        return CaseResult(case.params, "inconclusive", details)
    # positive: every listed train must come out of the search
    cost = max(len(w) - len(C) for w in witnesses)
    if cost > budget:
        details["reason"] = "listed train costs more than the budget"
        return CaseResult(case.params, "mismatch", details)
    pool = [f.entries for f in ample_trains(C, cost, minimal=False)]
    missing = [
        format_train(w) for w in witnesses if not any(_same_up_to_orientation(e, w) for e in pool)
    ]
    if missing:
        details["reason"] = "listed train not produced by the search"
        details["missing"] = missing
        return CaseResult(case.params, "mismatch", details)
    return CaseResult(case.params, "match", details)


def _listed(*lits: str | None) -> tuple[str, ...]:
    return tuple(x for x in lits if x is not None)


def cases_C6(chi_max: int = 10, pad_max: int = 8) -> list[TrainCase]:
    out = []
    for chi in range(2, chi_max + 1):
        for a in range(pad_max + 1):
            for b in range(pad_max + 1):
                C = (2,) * a + (chi,) + (2,) * b
                positive = chi >= 4 and (a, b) in ((chi - 4, 0), (0, chi - 4))
                out.append(TrainCase((chi, a, b), C, _listed(format_entries(C) if positive else None)))
    return out


def cases_C7(p_max: int = 5, n_max: int = 8) -> list[TrainCase]:
    out = []
    rng = range(p_max + 1)
    for b1, b2, n in itertools.product(rng, rng, rng):
        C = chain_or_none(f"[3,{_pow2(b1 - 1)},3,{_pow2(n - 1)},3,{_pow2(b2 - 1)},3]")
        if C is not None:
            out.append(TrainCase(("1", b1, b2, n), C))
    for n in range(1, n_max + 1):
        listed = f"[2,5]-1-[3,{_pow2(n - 2)},3]-1-[5,2]"
        w = listed_train(listed)
        out.append(TrainCase(("2", n), blow_down(w).entries, (listed,)))
    for a1, a2, b1 in itertools.product(rng, rng, rng):
        C = chain_or_none(f"[{_pow2(a1)},3,{_pow2(b1 - 1)},3,{_pow2(a2)}]")
        if C is None:
            continue
        listed = format_entries(C) if a1 == a2 == 0 else None
        out.append(TrainCase(("3", a1, a2, b1), C, _listed(listed)))
    for a1, a2, b1, b2 in itertools.product(rng, rng, rng, rng):
        C = chain_or_none(f"[{_pow2(a1)},3,{_pow2(b1 - 1)},3,{_pow2(b2 - 1)},3,{_pow2(a2)}]")
        if C is None:
            continue
        listed = None
        if (a1, a2) == (1, 0):
            listed = (
                f"[2,3,{_pow2(b1 - 1)},4]"
                if b2 == 0
                else f"[2,3,{_pow2(b1 - 1)},4]-1-[3,{_pow2(b2 - 2)},3]"
            )
        elif (a1, a2) == (0, 1):
            listed = (
                f"[2,3,{_pow2(b2 - 1)},4]"
                if b1 == 0
                else f"[3,{_pow2(b1 - 2)},3]-1-[2,3,{_pow2(b2 - 1)},4]"
            )
        if listed is not None and b1 == b2 == 0:
            listed = format_entries(C)
        out.append(TrainCase(("4", a1, a2, b1, b2), C, _listed(listed)))
    return out


def cases_C8(p_max: int = 5, n_max: int = 8) -> list[TrainCase]:
    out = []
    for a, b, g in itertools.product(range(p_max + 1), range(p_max + 1), range(max(p_max, n_max) + 1)):
        if g > p_max and (a, b) != (1, 0):
            continue
        C = chain_or_none(f"[{_pow2(a)},{4 + b},{_pow2(g - 1)},3,{_pow2(b)}]")
        if C is None:
            continue
        listed = f"[2,5]-1-[3,{_pow2(g - 2)},3]" if (a, b) == (1, 0) else None
        out.append(TrainCase((a, b, g), C, _listed(listed)))
    return out


def c9_row1_listed(a: int, chi: int, b: int, g: int) -> tuple[str, ...]:
    """Listed trains of the first row of the two-section lemma at this point."""
    p = _pow2
    out = []
    if a == 0 and b == chi - 2 and g >= chi - 2 and chi >= 3:
        n = g - (chi - 2)
        out.append(
            f"[{chi},{chi + 1},{p(chi - 4)},3,{p(chi - 2)}]-1-[{chi + 1},{p(n - 2)},3,{p(chi - 2)}]"
        )
    if (a, chi, b) == (2, 5, 0) and g >= 1:
        out.append(f"[2,2,5,4]-1-[3,{p(g - 3)},3]")
    if a == 1 and b == 0 and g >= chi - 2 and chi >= 3:
        n = g - (chi - 2)
        out.append(f"[2,{chi},3,{p(chi - 4)},3]-1-[3,{p(n - 2)},3]")
    if a == chi - 2 and b == 0 and g >= 1:
        out.append(f"[{p(chi - 2)},{chi + 2}]-1-[2,5]-1-[3,{p(g - 3)},3]")
    return tuple(out)


def cases_C9_1(chi_max: int = 7, pad_max: int = 5, gamma_max: int = 9) -> list[TrainCase]:
    out = []
    for chi in range(2, chi_max + 1):
        for a, b in itertools.product(range(pad_max + 1), range(pad_max + 1)):
            for g in range(1, gamma_max + 1):
                C = chain_or_none(f"[{_pow2(a)},{chi},{3 + b},{_pow2(g - 2)},3,{_pow2(b)}]")
                if C is None:
                    continue
                out.append(TrainCase((a, chi, b, g), C, c9_row1_listed(a, chi, b, g)))
    return out


def _c9_row4(a: int, g: int, chi: int, dl: int, b: int) -> tuple[str, ...]:
    p = _pow2
    out = []

    def add(m: int, n: int, *vehicles: str) -> None:
        if m >= 0 and n >= 0:
            out.append("-1-".join(vehicles) + f"-1-[3,{p(n - 2)},3]")

    if (a, chi, b) == (1, 3, 0):
        add(g - 2, dl - 2, f"[2,3,{p(g - 4)},4]", "[2,3,4,3,3,3]")
    if (a, chi, b) == (1, 2, 0):
        add(g - 1, dl - 3, f"[2,3,{p(g - 3)},4]", "[2,5,2,3,2,3]")
    if (a, chi, b) == (1, 5, 0):
        add(g - 1, dl - 4, f"[2,3,{p(g - 3)},4]", "[2,5,5,3,2,2,3]")
    if (a, b) == (2, 0):
        m = g - chi + 1
        add(m, dl - 1, f"[2,2,3,{p(m - 2)},5]", f"[2,2,3,{p(chi - 3)},5,{chi},4]")
    if (a, chi, b) == (0, 4, 1) and g >= 4 and dl >= 1:
        m, n = g - 4, dl - 1
        out.append(
            f"[3,{p(m - 2)},3]-1-[3,2,2,7,2]-1-[3,2,2,5,5,2]-1-[4,{p(n - 2)},3,2]"
        )
    if a == chi and b == 0:
        m = g - chi
        add(
            m, dl - 1,
            f"[{p(chi)},3,{p(m - 2)},{chi + 3}]",
            f"[{p(chi)},3,{p(chi - 2)},{chi + 3},{chi + 2}]",
            "[2,5]",
        )
    if (a, b) == (1, 0):
        add(g - 2, dl - chi, f"[2,3,{p(g - 4)},4]", "[2,3,5,3]", f"[2,{chi + 2},3,{p(chi - 2)},3]")
    if (a, b) == (2, 0):
        m = g - chi
        add(
            m, dl - 1,
            f"[2,2,3,{p(m - 2)},5]",
            f"[2,2,3,{p(chi - 2)},{chi + 3},4]",
            f"[2,2,3,{p(chi - 4)},{chi + 1},4]",
        )
    if (a, chi, b) == (1, 4, 0):
        add(g - 3, dl - 2, f"[2,3,{p(g - 5)},4]", "[2,3,2,6,3]", "[2,3,5,3,3]")
    if (a, b) == (1, 0):
        add(g - 1, dl - chi - 1, f"[2,3,{p(g - 3)},4]", "[2,6,2,3]", f"[2,{chi + 3},3,{p(chi - 1)},3]")
    if (a, b) == (0, 1) and g >= 2 and dl >= chi:
        m, n = g - 2, dl - chi
        out.append(
            f"[3,{p(m - 2)},3]-1-[3,5,2]-1-[3,{chi + 2},{p(chi - 3)},3,2]"
            f"-1-[3,{chi + 3},{p(chi - 2)},3,2]-1-[4,{p(n - 2)},3,2]"
        )
    return tuple(out)


def _c9_row5(be: int, ga: int, chi: int, dl: int) -> tuple[str, ...]:
    p = _pow2
    out = []
    if (be, ga, chi) == (6, 0, 2) and dl >= 1:
        out.append(f"[2,2,6,2,4]-1-[3,{p(dl - 3)},3]")
    if (be, ga, chi) == (5, 0, 2) and dl >= 3:
        out.append(f"[2,5,2,3,2,3]-1-[3,{p(dl - 5)},3]")
    if (be, ga, chi) == (5, 0, 5) and dl >= 4:
        out.append(f"[2,5,5,3,2,2,3]-1-[3,{p(dl - 6)},3]")
    if (be, ga, chi) == (5, 0, 4) and dl >= 4:
        out.append(f"[2,5,5,2,2,3]-1-[2,7,2,2,3]-1-[3,{p(dl - 6)},3]")
    if (be, ga) == (5, 0) and dl >= chi + 1:
        n = dl - chi - 1
        out.append(f"[2,6,2,3]-1-[2,{chi + 3},3,{p(chi - 1)},3]-1-[3,{p(n - 2)},3]")
    return tuple(out)


def _c9_row6(al: int, be: int, chi: int, ga: int) -> tuple[str, ...]:
    if be != 0 or ga < 2:
        return ()
    tail = f"[3,{_pow2(ga - 4)},3]"
    table = {
        (0, 2): "[2,4,3,3]",
        (1, 2): "[2,5]-1-[2,4,3,3]",
        (1, 3): "[2,3,5,3]-1-[2,5,3]",
        (1, 4): "[2,3,5,3,3]",
    }
    head = table.get((al, chi))
    return (f"{head}-1-{tail}",) if head else ()


def cases_C9_full(small: int = 4) -> list[TrainCase]:
    """Rows (2)-(9) of the two-section lemma on small grids."""
    p = _pow2
    out: list[TrainCase] = []

    def add(params, text, listed=()):
        C = chain_or_none(text)
        if C is not None:
            out.append(TrainCase(params, C, tuple(listed)))

    rng = range(small + 1)
    for a, chi, be in itertools.product(rng, range(2, 9), (5, 6, 7, 8)):
        pos = (a, chi, be) == (0, 3, 5)
        add(("2", a, chi, be), f"[{p(a)},{chi},{be},{p(be - 4)}]", ["[3,5,2]"] if pos else [])
    for a, chi, be in itertools.product(rng, range(1, 9), range(small + 2)):
        text = f"[{p(a)},{chi + 1},{p(be - 1)},3,2]"
        add(("3", a, chi, be), text, [text] if (a, chi) == (0, 3) else [])
    for a, g, chi, dl, b in itertools.product(
        range(4), range(1, 7), range(2, 6), range(1, 8), range(2)
    ):
        text = f"[{p(a)},3,{p(g - 2)},{3 + a},{chi},{3 + b},{p(dl - 2)},3,{p(b)}]"
        add(("4", a, g, chi, dl, b), text, _c9_row4(a, g, chi, dl, b))
    for be, ga, chi, dl in itertools.product((5, 6, 7, 8), range(3), range(2, 8), range(1, 10)):
        text = f"[{p(be - 4)},{be},{chi},{3 + ga},{p(dl - 2)},3,{p(ga)}]"
        add(("5", be, ga, chi, dl), text, _c9_row5(be, ga, chi, dl))
    for al, be, chi, ga in itertools.product((0, 1), range(4), range(1, 7), range(1, 8)):
        text = f"[2,3,{p(al - 1)},{chi + 1},{3 + be},{p(ga - 2)},3,{p(be)}]"
        add(("6", al, be, chi, ga), text, _c9_row6(al, be, chi, ga))
    for al, be, chi in itertools.product((5, 6, 7, 8), (5, 6, 7, 8), range(2, 7)):
        add(("7", al, be, chi), f"[{p(al - 4)},{al},{chi},{be},{p(be - 4)}]")
    for al, be, chi in itertools.product((5, 6, 7, 8), rng, range(1, 7)):
        add(("8", al, be, chi), f"[{p(al - 4)},{al},{chi + 1},{p(be - 1)},3,2]")
    for al, be, chi in itertools.product(rng, rng, rng):
        add(("9", al, be, chi), f"[2,3,{p(al - 1)},{chi + 2},{p(be - 1)},3,2]")
    return out


def cases_C10(p_max: int = 4) -> list[TrainCase]:
    out = []
    p = _pow2
    rng = range(p_max + 1)
    for bb in (2, 3, 4, 6):
        for a, c, d in itertools.product(rng, range(4), rng):
            if d == 0:
                continue  # d = 0 is the c + 4 case of part (2)
            C = chain_or_none(f"[{p(bb - 2)},3,{p(a - 1)},{4 + c},{p(d - 1)},3,{p(c)}]")
            if C is None:
                continue
            listed = None
            if (bb, c) == (2, 1) and a >= 1 and d >= 1:
                m, n = a - 1, d - 1
                listed = f"[3,{p(m - 2)},3]-1-[3,5,3,2]-1-[4,{p(n - 2)},3,2]"
            elif (bb, c) == (3, 0) and d >= 1:
                m, n = a, d - 1
                listed = f"[2,3,{p(m - 2)},4]-1-[2,5,3]-1-[3,{p(n - 2)},3]"
            out.append(TrainCase(("1", bb, a, c, d), C, _listed(listed)))
        for a, c in itertools.product(rng, range(4, 4 + p_max + 1)):
            C = chain_or_none(f"[{p(bb - 2)},3,{p(a - 1)},{c + 1},{p(c - 4)}]")
            if C is None:
                continue
            listed = None
            if (bb, c) == (2, 5) and a >= 2:
                listed = f"[3,{p(a - 4)},3]-1-[3,2,6,2]"
            elif (bb, a, c) == (4, 0, 4):
                listed = format_entries(C)
            out.append(TrainCase(("2", bb, a, c), C, _listed(listed)))
        for a in rng:
            C = chain_or_none(f"[{p(bb - 2)},3,{p(a - 1)},4,2]")
            if C is None:
                continue
            listed = f"[3,{p(a - 2)},3]-1-[5,2]" if bb == 2 else None
            out.append(TrainCase(("3", bb, a), C, _listed(listed)))
    return out


# ---------------------------------------------------------------------------
# fixed junction: left - 1 - [2]


@dataclass(frozen=True)
class LRCase:
    params: tuple
    left: tuple[int, ...]
    right: tuple[int, ...]
    listed: str | None


def evaluate_lr_case(case: LRCase, budget: int) -> CaseResult:
    details: dict = {"left": format_entries(case.left), "right": format_entries(case.right)}
    found = lr_trains(case.left, case.right, budget)
    if found:
        details["trains"] = [format_train(t.entries) for t, _ in found]
        details["words"] = [w for _, w in found]
    expected = case.listed is not None
    details["expected"] = "train" if expected else "no train"
    if expected:
        if not found:
            return CaseResult(case.params, "mismatch", details)
        w = listed_train(case.listed)
        details["listed"] = case.listed
        if any(_same_up_to_orientation(t.entries, w) for t, _ in found):
            return CaseResult(case.params, "match", details)
        details["reason"] = "listed train not produced"
        return CaseResult(case.params, "mismatch", details)
    if found:
        return CaseResult(case.params, "mismatch", details)
    details["reason"] = f"no train within budget {budget}"
    return CaseResult(case.params, "inconclusive", details)


def cases_C11(ds: Sequence[int] = (5, 6, 7), l_max: int | None = None) -> list[LRCase]:
    out = []
    for d in ds:
        top = d if l_max is None else l_max
        for l in range(top + 1):
            left = parse_chain(f"[{d + 1},{_pow2(l - 1)},3]").entries
            listed = None
            if l == d - 4:
                listed = f"[{d + 1},{_pow2(d - 5)},{d},{_pow2(d - 1)}]-1-[{d + 1},{_pow2(d - 3)}]"
            out.append(LRCase((d, l), left, (2,), listed))
    return out


# ---------------------------------------------------------------------------
# cusp families


@dataclass(frozen=True)
class CuspCase:
    params: tuple
    family: str


_FAMILIES: dict[str, tuple[Callable[..., Cycle], Callable[..., bool]]] = {
    "B3": (cycle_B3, decide_B3),
    "B4": (cycle_B4, decide_B4),
    "B5": (cycle_B5, decide_B5),
    "B6": (cycle_B6, decide_B6),
}


def evaluate_cusp_case(case: CuspCase, depth_max: int) -> CaseResult:
    build, decide = _FAMILIES[case.family]
    c = build(*case.params)
    claim = decide(*case.params)
    st = steenbrink_ok(c)
    target = dual_cycle(c)
    depth = forced_depth(target)
    details: dict = {
        "cycle": str(c),
        "dual": str(target),
        "decider": claim,
        "steenbrink": st,
        "forced_depth": depth,
    }
    if claim and not st:
        details["reason"] = "decider positive but Steenbrink fails"
        return CaseResult(case.params, "mismatch", details)
    if not claim and not st:
        return CaseResult(case.params, "match", details)
    if depth is None or depth > depth_max:
        details["reason"] = f"forced depth above {depth_max}"
        return CaseResult(case.params, "inconclusive", details)
    res = realize(target, max_blowups=depth_max)
    details["realized"] = res.witness is not None
    if res.witness is not None:
        details["witness"] = res.witness.to_json()
    if claim:
        if res.witness is not None:
            return CaseResult(case.params, "match", details)
        details["reason"] = res.reason
        return CaseResult(case.params, "inconclusive", details)
    if res.witness is not None:
        details["reason"] = "decider negative but the dual is realized"
        return CaseResult(case.params, "mismatch", details)
    details["reason"] = "negative not provable from Steenbrink; " + res.reason
    return CaseResult(case.params, "inconclusive", details)


def cases_B4(n_max: int = 12, beta_max: int = 12) -> list[CuspCase]:
    return [CuspCase((n, b), "B4") for n in range(1, n_max + 1) for b in range(beta_max + 1)]


def cases_B3(chi_max: int = 12, n_max: int = 8) -> list[CuspCase]:
    return [
        CuspCase((chi, n, g), "B3")
        for chi in range(4, chi_max + 1)
        for n in range(1, n_max + 1)
        for g in range(n + 1)
    ]


def cases_B5(chi_max: int = 12, k_max: int = 8) -> list[CuspCase]:
    return [
        CuspCase((chi, k1, k2), "B5")
        for chi in range(4, chi_max + 1)
        for k1 in range(k_max + 1)
        for k2 in range(k_max + 1)
        if k1 + k2 > 0
    ]


def cases_B6(chi_max: int = 12, n_max: int = 8) -> list[CuspCase]:
    return [
        CuspCase((chi, n, g), "B6")
        for chi in range(4, chi_max + 1)
        for n in range(1, n_max + 1)
        for g in range(n + 1)
    ]


# ---------------------------------------------------------------------------
# duality involution


def necklaces(r: int, alphabet: Sequence[int]):
    """Lexicographically least rotations of length ``r`` (FKM algorithm)."""
    k = len(alphabet)
    a = [0] * (r + 1)

    def gen(t: int, p: int):
        if t > r:
            if r % p == 0:
                yield tuple(alphabet[x] for x in a[1:])
            return
        a[t] = a[t - p]
        yield from gen(t + 1, p)
        for j in range(a[t - p] + 1, k):
            a[t] = j
            yield from gen(t + 1, t)

    yield from gen(1, 1)


def bracelets(r: int, entry_max: int):
    """One representative per dihedral class, entries in ``2..entry_max``, some entry >= 3."""
    for neck in necklaces(r, range(2, entry_max + 1)):
        if max(neck) < 3:
            continue
        rev = neck[::-1]
        if min(rev[i:] + rev[:i] for i in range(r)) < neck:
            continue
        yield neck


def _involution_case(entries: tuple[int, ...]) -> CaseResult:
    c = Cycle(entries)
    back = dual_cycle(dual_cycle(c))
    if back == c:
        return CaseResult(c.entries, "match")
    return CaseResult(c.entries, "mismatch", {"dual": str(dual_cycle(c)), "back": str(back)})


def check_dual_involution(
    r_max: int = 12, entry_max: int = 4, samples: int = 0, sample_entry_max: int = 9, seed: int = 0
) -> VerifyReport:
    """Exhaustive over ``r <= r_max`` with entries ``<= entry_max``; optional random extras."""
    cases = [_involution_case(e) for r in range(1, r_max + 1) for e in bracelets(r, entry_max)]
    rng = random.Random(seed)
    for _ in range(samples):
        r = rng.randint(1, r_max)
        e = [rng.randint(2, sample_entry_max) for _ in range(r)]
        if max(e) < 3:
            e[rng.randrange(r)] = rng.randint(3, max(3, sample_entry_max))
        cases.append(_involution_case(tuple(e)))
    return VerifyReport("B-dual-involution", ("entries",), tuple(cases))


# ---------------------------------------------------------------------------
# driver

LEMMAS = ("C6", "C7", "C8", "C9", "C9.1", "C10", "C11", "B3", "B4", "B5", "B6", "B-dual-involution")

_PARAM_NAMES = {
    "C6": ("chi", "alpha", "beta"),
    "C7": ("part", "..."),
    "C8": ("alpha", "beta", "gamma"),
    "C9": ("row", "..."),
    "C9.1": ("alpha", "chi", "beta", "gamma"),
    "C10": ("part", "b", "..."),
    "C11": ("d", "l"),
    "B3": ("chi", "n", "gamma"),
    "B4": ("n", "beta"),
    "B5": ("chi", "k1", "k2"),
    "B6": ("chi", "n", "gamma"),
}


def _run(fn, cases, arg, threads: int) -> tuple[CaseResult, ...]:
    if threads > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(fn, cases, itertools.repeat(arg), chunksize=4))
    else:
        results = [fn(c, arg) for c in cases]
    return tuple(results)  # grid order is fixed, so output does not depend on threads


def cases_C9(full: bool = False, **ranges) -> list[TrainCase]:
    """Row (1) of the two-section lemma, plus rows (2)-(9) with ``full``."""
    rows = [TrainCase(("1",) + c.params, c.chain, c.listed) for c in cases_C9_1(**ranges)]
    return rows + cases_C9_full() if full else rows


def verify(lemma: str, *, budget: int = 24, threads: int = 1, **ranges) -> VerifyReport:
    """Run one lemma check.  ``ranges`` are the keyword bounds of the ``cases_*`` builders."""
    if lemma == "B-dual-involution":
        return check_dual_involution(**ranges)
    builders = {
        "C6": cases_C6,
        "C7": cases_C7,
        "C8": cases_C8,
        "C9": cases_C9,
        "C9.1": cases_C9_1,
        "C10": cases_C10,
        "C11": cases_C11,
        "B3": cases_B3,
        "B4": cases_B4,
        "B5": cases_B5,
        "B6": cases_B6,
    }
    if lemma not in builders:
        raise KeyError(f"unknown lemma id {lemma!r}; expected one of {', '.join(LEMMAS)}")
    depth_max = ranges.pop("depth_max", 10)
    cases = builders[lemma](**ranges)
    if lemma.startswith("B"):
        results = _run(evaluate_cusp_case, cases, depth_max, threads)
    elif lemma == "C11":
        results = _run(evaluate_lr_case, cases, budget, threads)
    else:
        results = _run(evaluate_train_case, cases, budget, threads)
    return VerifyReport(lemma, _PARAM_NAMES[lemma], results)


__all__ = [
    "CaseResult",
    "LEMMAS",
    "VerifyReport",
    "bracelets",
    "c9_row1_listed",
    "check_dual_involution",
    "listed_train",
    "necklaces",
    "verify",
]
