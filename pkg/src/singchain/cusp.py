"""Cusp cycles: canonical form, the Steenbrink bound, duality and the family deciders."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .chains import SPLICE, ChainSyntaxError, parse_tokens, resolve_splices


def dihedral_max(entries: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically largest rotation of ``entries`` or of its reverse."""
    e = tuple(entries)
    r = len(e)
    best = e
    for seq in (e, e[::-1]):
        for k in range(r):
            cand = seq[k:] + seq[:k]
            if cand > best:
                best = cand
    return best


@dataclass(frozen=True)
class Cycle:
    """A cusp cycle stored in canonical (dihedral-maximal) form.

    For ``r == 1`` the single entry is the nodal label ``b + 2`` of a
    nodal curve with self-intersection ``-b``.
    """

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        e = tuple(int(x) for x in self.entries)
        if not e:
            raise ValueError("empty cycle")
        if min(e) < 2:
            raise ValueError(f"cycle entries must be >= 2, got {list(e)}")
        if max(e) == 2:
            raise ValueError("the all-2 cycle is not negative definite")
        object.__setattr__(self, "entries", dihedral_max(e))

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def r1_flag(self) -> bool:
        return self.r == 1

    def __str__(self) -> str:
        return format_cycle(self.entries)


def format_cycle(entries: Sequence[int]) -> str:
    body = "[" + ",".join(map(str, entries)) + "]o"
    return body + "!" if len(entries) == 1 else body


def splice_cyclic(tokens: Sequence[int | None]) -> list[int]:
    """Resolve ``2^-1`` splices on a cyclic token list."""
    toks = list(tokens)
    n = len(toks)
    if not any(t is SPLICE for t in toks):
        return [int(t) for t in toks]
    for k in range(n):
        if toks[k] is not SPLICE and toks[k - 1] is not SPLICE:
            rot = toks[k:] + toks[:k]
            return resolve_splices(rot)
    raise ChainSyntaxError("cyclic splice merges a component with itself")


def canonicalize(raw: Sequence[int | None]) -> Cycle:
    """Canonical :class:`Cycle` from raw cyclic entries (``None`` marks a splice)."""
    return Cycle(tuple(splice_cyclic(raw)))


def parse_cycle(text: str) -> Cycle:
    """Parse ``[5,2,2]o`` (or ``[b]o!`` for one component)."""
    t = text.strip()
    if t.endswith("!"):
        t = t[:-1]
    if t.endswith("o") or t.endswith("°"):
        t = t[:-1]
    else:
        raise ChainSyntaxError(f"cycle literal must end in 'o', got {text!r}")
    entries = splice_cyclic(parse_tokens(t))
    try:
        return Cycle(tuple(entries))
    except ValueError as exc:
        raise ChainSyntaxError(str(exc)) from exc


def steenbrink_ok(c: Cycle) -> bool:
    """Necessary condition for smoothability: ``r + 9 + sum(2 - b) >= 0``."""
    return c.r + 9 + sum(2 - b for b in c.entries) >= 0


def blocks(c: Cycle) -> list[int]:
    """``a_1..a_2n`` with the cycle equal to ``[a_1+3, 2^a_2, a_3+3, 2^a_4, ...]``."""
    e = c.entries  # canonical form starts with its largest entry, which is >= 3
    out: list[int] = []
    run = 0
    for x in e:
        if x >= 3:
            if out:
                out.append(run)
            out.append(x - 3)
            run = 0
        else:
            run += 1
    out.append(run)
    return out


def dual_cycle(c: Cycle) -> Cycle:
    """Swap the roles of the entries >= 3 and the 2-runs."""
    a = blocks(c)
    out: list[int] = []
    for i in range(0, len(a), 2):
        out.extend([2] * a[i])
        out.append(a[i + 1] + 3)
    return Cycle(tuple(out))


# ---------------------------------------------------------------------------
# closed-form deciders


def decide_simple_elliptic(b: int) -> bool:
    if b < 1:
        raise ValueError("degree must be >= 1")
    return b <= 9


def decide_B4(n: int, beta: int) -> bool:
    """``[beta+3, 2^(n-1)]``: smoothable iff ``beta <= n + 8``."""
    if n < 1 or beta < 0:
        raise ValueError("need n >= 1, beta >= 0")
    return beta <= n + 8


def decide_B3(chi: int, n: int, gamma: int) -> bool:
    """``[chi-1, 2^(n-gamma-1), 3, 2^(gamma-1)]``: smoothable iff ``n >= chi - 11``."""
    if chi < 4 or not 0 <= gamma <= n:
        raise ValueError("need chi >= 4, 0 <= gamma <= n")
    return n >= chi - 11


def _pairs(pairs) -> set[tuple[int, int]]:
    return {(x, y) for x, y in pairs if x >= 0 and y >= 0}


def decide_B5(chi: int, k1: int, k2: int) -> bool:
    """``[chi-1, 2^(k1-1), chi-1, 2^(k2-1)]``."""
    if chi < 4 or k1 < 0 or k2 < 0 or k1 + k2 == 0:
        raise ValueError("need chi >= 4, k1, k2 >= 0, k1 + k2 > 0")
    if k1 + k2 >= 2 * chi - 14:
        return True
    special = _pairs(
        [
            (0, 2 * chi - 15),
            (chi - 10, chi - 5),
            (chi - 9, chi - 6),
            (chi - 6, chi - 9),
            (chi - 5, chi - 10),
            (2 * chi - 15, 0),
        ]
    )
    return (k1, k2) in special


def decide_B6(chi: int, n: int, gamma: int) -> bool:
    """``[chi-1, 2^(n-gamma-1), chi-1, 2^(gamma-1)]``."""
    if chi < 4 or not 0 <= gamma <= n:
        raise ValueError("need chi >= 4, 0 <= gamma <= n")
    if n >= 2 * chi - 14:
        return True
    m = 2 * chi - 15
    special = _pairs([(m, m), (m, chi - 5), (m, chi - 6), (m, chi - 9), (m, chi - 10), (m, 0)])
    return (n, gamma) in special


# family cycles as raw token lists (None = 2^-1 splice)


def _two_power(k: int) -> list[int | None]:
    if k < -1:
        raise ValueError(f"2^{k} is undefined")
    return [SPLICE] if k == -1 else [2] * k


def cycle_B4(n: int, beta: int) -> Cycle:
    return canonicalize([beta + 3] + _two_power(n - 1))


def cycle_B3(chi: int, n: int, gamma: int) -> Cycle:
    return canonicalize([chi - 1] + _two_power(n - gamma - 1) + [3] + _two_power(gamma - 1))


def cycle_B5(chi: int, k1: int, k2: int) -> Cycle:
    return canonicalize([chi - 1] + _two_power(k1 - 1) + [chi - 1] + _two_power(k2 - 1))


def cycle_B6(chi: int, n: int, gamma: int) -> Cycle:
    return cycle_B5(chi, n - gamma, gamma)


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Verdict:
    status: str  # "Smoothable", "NotSmoothable" or "Unknown"
    rule: str | None
    params: dict
    steenbrink: bool

    def to_json(self) -> dict:
        return {
            "verdict": self.status,
            "rule": self.rule,
            "params": self.params,
            "steenbrink": self.steenbrink,
        }


def _runs(e: tuple[int, ...], big: list[int]) -> list[int]:
    r = len(e)
    return [((big[(k + 1) % len(big)] - big[k] - 1) % r) for k in range(len(big))]


def classify_and_decide(c: Cycle) -> Verdict:
    """Match ``c`` against the four families and apply that decider."""
    e = c.entries
    st = steenbrink_ok(c)
    big = [i for i, x in enumerate(e) if x >= 3]

    def verdict(ok: bool, rule: str, params: dict) -> Verdict:
        return Verdict("Smoothable" if ok else "NotSmoothable", rule, params, st)

    if len(big) == 1:
        n, beta = c.r, e[big[0]] - 3
        return verdict(decide_B4(n, beta), "B4", {"n": n, "beta": beta})
    if len(big) == 2:
        x, y = e[big[0]], e[big[1]]
        run_xy, run_yx = _runs(e, big)
        if x == y:
            chi = x + 1
            k1, k2 = run_xy + 1, run_yx + 1
            return verdict(decide_B5(chi, k1, k2), "B5", {"chi": chi, "k1": k1, "k2": k2})
        if 3 in (x, y):
            other = y if x == 3 else x
            # runs measured from the big entry towards the 3 and back
            after, before = (run_xy, run_yx) if x == other else (run_yx, run_xy)
            chi = other + 1
            gamma = before + 1
            n = after + before + 2
            return verdict(decide_B3(chi, n, gamma), "B3", {"chi": chi, "n": n, "gamma": gamma})
    return Verdict("Unknown", None, {}, st)


__all__ = [
    "Cycle",
    "Verdict",
    "blocks",
    "canonicalize",
    "classify_and_decide",
    "cycle_B3",
    "cycle_B4",
    "cycle_B5",
    "cycle_B6",
    "decide_B3",
    "decide_B4",
    "decide_B5",
    "decide_B6",
    "decide_simple_elliptic",
    "dihedral_max",
    "dual_cycle",
    "format_cycle",
    "parse_cycle",
    "steenbrink_ok",
]
