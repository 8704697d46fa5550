"""Extended T-chains, T-trains and the search for ample trains.

A train state is a list of positive integers where each ``1`` is a
(-1)-curve separating two vehicles.  Blowing up nodes of a chain and
the nodes next to a (-1)-curve produces such states; the search looks
for states whose vehicles are T-chains meeting the ample condition.

Search layout
-------------
Cores of an ample train are never contracted, so every vehicle contains
base curves and there is exactly one (-1)-curve over each cut node of
the base chain.  A train is therefore the set of cut nodes together with
a word over ``L``/``R`` for each cut.  The word at a cut is read off the
left vehicle's tail; this lets the search enumerate T-chain completions
of a vehicle instead of blind move sequences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .chains import (
    Chain,
    ChainSyntaxError,
    apply_paired,
    format_entries,
    is_tchain,
    parse_chain,
)
from .graphs import cores, log_discrepancies_recursive

DEFAULT_BUDGET = 24


# ---------------------------------------------------------------------------
# states and moves


@dataclass(frozen=True)
class Move:
    kind: str  # "between", "left" or "right"
    pos: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "pos": self.pos}


@dataclass(frozen=True)
class TrainState:
    entries: tuple[int, ...]
    moves: tuple[Move, ...] = ()

    def __post_init__(self) -> None:
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries or min(entries) < 1:
            raise ValueError(f"invalid train state {list(entries)}")

    @classmethod
    def of(cls, c: Chain | Sequence[int]) -> "TrainState":
        return cls(tuple(c))

    def __str__(self) -> str:
        return format_train(self.entries)


def blow_up_between(s: TrainState, i: int) -> TrainState:
    """Blow up the node between entries ``i`` and ``i + 1``."""
    e = s.entries
    if not 0 <= i < len(e) - 1:
        raise IndexError(f"no node after position {i} in {list(e)}")
    new = e[:i] + (e[i] + 1, 1, e[i + 1] + 1) + e[i + 2 :]
    return TrainState(new, s.moves + (Move("between", i),))


def _check_one(e: tuple[int, ...], j: int) -> None:
    if not 0 <= j < len(e) or e[j] != 1:
        raise ValueError(f"position {j} of {list(e)} is not a (-1)-curve")
    if j == 0 or j == len(e) - 1:
        raise ValueError(f"(-1)-curve at {j} of {list(e)} lacks a neighbour")


def left_blow_up(s: TrainState, j: int) -> TrainState:
    """``[..a]R_1 - 1 - L_2[b..]``: blow up the node between ``1`` and its left neighbour...

    ...seen from the right vehicle, which gains a leading ``2``.
    """
    e = s.entries
    _check_one(e, j)
    new = e[: j - 1] + (e[j - 1] + 1, 1, 2) + e[j + 1 :]
    return TrainState(new, s.moves + (Move("left", j),))


def right_blow_up(s: TrainState, j: int) -> TrainState:
    """``[..a]R_2 - 1 - L_1[b..]``: the left vehicle gains a trailing ``2``."""
    e = s.entries
    _check_one(e, j)
    new = e[:j] + (2, 1, e[j + 1] + 1) + e[j + 2 :]
    return TrainState(new, s.moves + (Move("right", j),))


def apply_move(s: TrainState, m: Move) -> TrainState:
    if m.kind == "between":
        return blow_up_between(s, m.pos)
    if m.kind == "left":
        return left_blow_up(s, m.pos)
    if m.kind == "right":
        return right_blow_up(s, m.pos)
    raise ValueError(f"unknown move kind {m.kind!r}")


def contract(entries: Sequence[int], j: int) -> tuple[int, ...]:
    """Contract the (-1)-curve at ``j``, decrementing its neighbours."""
    e = list(entries)
    if e[j] != 1:
        raise ValueError(f"position {j} is not a (-1)-curve")
    if j > 0:
        e[j - 1] -= 1
    if j < len(e) - 1:
        e[j + 1] -= 1
    del e[j]
    return tuple(e)


def blow_down(s: TrainState | Sequence[int], order: Iterable[int] | None = None) -> Chain:
    """Contract (-1)-curves until none is left.

    ``order`` optionally picks which current (-1)-curve to contract at each
    step (an index into the list of current 1-positions); the result does
    not depend on it.
    """
    e = tuple(s.entries if isinstance(s, TrainState) else s)
    picks = iter(order) if order is not None else None
    while True:
        ones = [i for i, x in enumerate(e) if x == 1]
        if not ones:
            break
        if len(e) == 1:
            raise ValueError("a lone (-1)-curve blows down to a smooth point")
        k = next(picks, 0) % len(ones) if picks is not None else 0
        e = contract(e, ones[k])
        if min(e) < 1:
            raise ValueError(f"invalid state: contraction produced {list(e)}")
    return Chain(e)


# ---------------------------------------------------------------------------
# trains


def split_vehicles(entries: Sequence[int]) -> list[tuple[int, ...]]:
    """Maximal segments between 1-entries; raises on empty vehicles."""
    out: list[tuple[int, ...]] = []
    cur: list[int] = []
    for x in entries:
        if x == 1:
            if not cur:
                raise ValueError(f"empty vehicle in {list(entries)}")
            out.append(tuple(cur))
            cur = []
        else:
            cur.append(x)
    if not cur:
        raise ValueError(f"empty vehicle in {list(entries)}")
    out.append(tuple(cur))
    return out


@lru_cache(maxsize=None)
def _alphas(vehicle: tuple[int, ...]) -> tuple[Fraction, ...]:
    if all(x == 2 for x in vehicle):
        return (Fraction(1),) * len(vehicle)
    return log_discrepancies_recursive(vehicle).alphas


@dataclass(frozen=True)
class TTrain:
    vehicles: tuple[Chain, ...]
    junction_alphas: tuple[tuple[Fraction, Fraction], ...]
    moves: tuple[Move, ...] = field(default=(), compare=False)

    @property
    def ample(self) -> bool:
        return all(a + b < 1 for a, b in self.junction_alphas)

    @property
    def entries(self) -> tuple[int, ...]:
        out: list[int] = []
        for i, v in enumerate(self.vehicles):
            if i:
                out.append(1)
            out.extend(v)
        return tuple(out)

    @property
    def milnor(self) -> int:
        """Sum of Milnor numbers: ``d - 1`` per T-vehicle, ``k`` per ``[2^k]``."""
        total = 0
        for v in self.vehicles:
            t = is_tchain(v)
            total += len(v) if t is None else t.milnor
        return total

    @property
    def core_count(self) -> int:
        return sum(is_tchain(v).d for v in self.vehicles)

    def __str__(self) -> str:
        return format_train(self.entries)


def make_train(entries: Sequence[int], *, allow_du_val: bool = False) -> TTrain | None:
    """Build the :class:`TTrain` of a state whose vehicles are T-chains, else ``None``."""
    moves = entries.moves if isinstance(entries, TrainState) else ()
    entries = entries.entries if isinstance(entries, TrainState) else tuple(entries)
    try:
        vs = split_vehicles(entries)
    except ValueError:
        return None
    for v in vs:
        if is_tchain(v) is None and not (allow_du_val and all(x == 2 for x in v)):
            return None
    junctions = tuple((_alphas(a)[-1], _alphas(b)[0]) for a, b in zip(vs, vs[1:]))
    return TTrain(tuple(Chain(v) for v in vs), junctions, moves)


def is_ample_train(s: TrainState | Sequence[int]) -> TTrain | None:
    """The ample :class:`TTrain` carried by ``s``, or ``None``."""
    entries = s.entries if isinstance(s, TrainState) else tuple(s)
    t = make_train(entries)
    if t is None or not t.ample:
        return None
    if isinstance(s, TrainState):
        t = TTrain(t.vehicles, t.junction_alphas, s.moves)
    return t


def format_train(entries: Sequence[int]) -> str:
    return "-1-".join(format_entries(v) for v in _split_loose(entries))


def _split_loose(entries: Sequence[int]) -> list[tuple[int, ...]]:
    out: list[list[int]] = [[]]
    for x in entries:
        if x == 1:
            out.append([])
        else:
            out[-1].append(x)
    return [tuple(v) for v in out]


def parse_train(text: str) -> tuple[int, ...]:
    """Parse ``[a,..]-1-[b,..]`` into state entries (each vehicle uses chain sugar)."""
    parts = [p.strip() for p in text.strip().split("-1-")]
    out: list[int] = []
    for i, p in enumerate(parts):
        if i:
            out.append(1)
        out.extend(parse_chain(p))
    return tuple(out)


def check_length_relation(c: Chain | Sequence[int], t: TTrain) -> bool:
    """``r - d + 2 == sum(b - 2)`` with ``d`` the total core count of ``t``."""
    base = tuple(c)
    if blow_down(t.entries).entries != base:
        raise ValueError(f"{t} does not blow down to {format_entries(base)}")
    return len(base) - t.core_count + 2 == sum(b - 2 for b in base)


def core_positions(t: TTrain) -> list[int]:
    """Positions of all cores in the train state."""
    out = []
    offset = 0
    for v in t.vehicles:
        out.extend(offset + i for i in cores(v))
        offset += len(v) + 1
    return out


# ---------------------------------------------------------------------------
# T-chain completions


def tchain_extensions(
    prefix: Sequence[int], delta: int, max_cost: int, core_from: int | None = None
) -> list[tuple[tuple[int, ...], int]]:
    """T-chains reachable from ``prefix`` by growing its right end.

    Returns ``(T, cost)`` with ``T[:m-1] == prefix[:m-1]``,
    ``T[m-1] >= prefix[m-1] + delta`` and
    ``cost = T[m-1] - prefix[m-1] - delta + sum(T[i] - 1 for i >= m)`` at most
    ``max_cost``.  This cost is the number of left/right moves at the
    (-1)-curve after the vehicle.

    With ``core_from`` set, the cores (the seed the chain grows from) must
    sit at prefix positions ``core_from .. m-1``.  Ample trains never
    contract a core, so the search over trains may require this.

    T-chains are built outside in: a run of ``c`` ``L_1 R_2`` operations
    followed by ``L_2 R_1`` fixes the next left entry at ``2 + c``, so the
    left end is matched against the prefix one entry at a time.
    """
    P = tuple(prefix)
    m = len(P)
    K = max_cost
    if m == 0 or K < 0:
        return []
    max_len = m + K
    out: dict[tuple[int, ...], int] = {}
    ops: list[int] = []

    def emit(seed: tuple[int, ...]) -> None:
        e = seed
        for op in reversed(ops):
            e = apply_paired(e, op)
        if len(e) < m or e[: m - 1] != P[: m - 1] or e[m - 1] < P[m - 1] + delta:
            return
        cost = e[m - 1] - P[m - 1] - delta + sum(x - 1 for x in e[m:])
        if cost <= K:
            out[e] = cost

    def seeds(i: int, cost: int, n1: int) -> None:
        if core_from is not None and i < core_from:
            return
        base = len(ops)
        room = max_len - base
        # lower bound on what right-hand entries cost once everything sits past the prefix
        beyond = i >= m
        # [4] with c outer L_1 R_2 operations; the value at i also absorbs inner R_1's
        top = P[i] - 4 if i < m - 1 else room - 1
        for c in range(0, max(-1, min(top, room - 1)) + 1):
            if beyond and cost + 3 + c + n1 + c > K:
                break
            ops.extend([1] * c)
            emit((4,))
            del ops[base:]
        # [3, 2^(d-2), 3]
        if i < m - 1:
            cs = [P[i] - 3] if P[i] >= 3 else []
        else:
            lo = max(0, P[i] + delta - 3) if i == m - 1 else 0
            cs = range(lo, room)
        for c in cs:
            if i >= m - 1:
                first_cost = (3 + c - P[i] - delta) if i == m - 1 else 2 + c
                if cost + first_cost + (n1 + c) > K:
                    break
            top_d = room - c if core_from is None else min(room - c, m - i)
            for d in range(2, top_d + 1):
                if i >= m - 1:
                    first_cost = (3 + c - P[i] - delta) if i == m - 1 else 2 + c
                    tail = sum(1 for k in range(i + 1, i + d) if k >= m)
                    if cost + first_cost + tail + (n1 + c) > K:
                        break
                ops.extend([1] * c)
                emit((3,) + (2,) * (d - 2) + (3,))
                del ops[base:]

    def rec(i: int, cost: int, n1: int) -> None:
        if len(ops) + 1 > max_len:
            return
        seeds(i, cost, n1)
        if core_from is not None and i >= m - 1:
            return
        # an entry 2 + c made by c outer L_1 R_2's around one L_2 R_1
        if i < m - 1:
            cs: Iterable[int] = [P[i] - 2]
        elif i == m - 1:
            cs = range(max(0, P[i] + delta - 2), P[i] + delta - 2 + K + 1)
        else:
            cs = range(0, K + 1)
        base = len(ops)
        for c in cs:
            if i == m - 1:
                add = 2 + c - P[i] - delta
            elif i >= m:
                add = 1 + c
            else:
                add = 0
            new_cost = cost + add
            # later entries: every L_1 R_2 leaves one more right entry past the prefix,
            # and the seed costs at least 2 more
            if i >= m - 1 and new_cost + n1 + c + 2 > K:
                break
            if base + c + 2 > max_len:
                break
            ops.extend([1] * c + [2])
            rec(i + 1, new_cost, n1 + c)
            del ops[base:]

    rec(0, 0, 0)
    return sorted(out.items(), key=lambda kv: (kv[1], kv[0]))


@lru_cache(maxsize=200_000)
def _extensions_cached(prefix: tuple[int, ...], delta: int, max_cost: int, core_from: int):
    return tuple(tchain_extensions(prefix, delta, max_cost, core_from))


def word_of(T: Sequence[int], prefix: Sequence[int], delta: int) -> str:
    """The ``L``/``R`` word at the (-1)-curve after ``prefix`` that yields ``T``."""
    m = len(prefix)
    w = "L" * (T[m - 1] - prefix[m - 1] - delta)
    for x in T[m:]:
        w += "R" + "L" * (x - 2)
    return w


def head_of(word: str, first: int, delta: int) -> list[int]:
    """Left end of the vehicle after the (-1)-curve, from its first base entry."""
    h = [first + delta]
    for ch in word:
        if ch == "L":
            h.insert(0, 2)
        else:
            h[0] += 1
    return h


# ---------------------------------------------------------------------------
# ample train search


@dataclass(frozen=True)
class FoundTrain:
    train: TTrain
    cost: int
    cuts: tuple[tuple[int, str], ...]  # (node index in base, word)

    @property
    def entries(self) -> tuple[int, ...]:
        return self.train.entries


def forbidden_cuts(c: Sequence[int]) -> set[int]:
    """Nodes inside a boundary 2-run or right after it.

    Node ``q`` is the node between base entries ``q`` and ``q + 1``.
    """
    m = len(c)
    a = 0
    while a < m and c[a] == 2:
        a += 1
    b = 0
    while b < m and c[m - 1 - b] == 2:
        b += 1
    bad = set(range(0, min(a, m - 1)))
    bad |= set(range(max(0, m - 1 - b), m - 1))
    return bad


def replay_cuts(c: Sequence[int], cuts: Sequence[tuple[int, str]]) -> TrainState:
    """Replay cuts as Def.-style moves, right to left so earlier positions stay put."""
    s = TrainState(tuple(c))
    for q, w in sorted(cuts, reverse=True):
        s = blow_up_between(s, q)
        j = q + 1
        for ch in w:
            if ch == "L":
                s = left_blow_up(s, j)
            else:
                s = right_blow_up(s, j)
                j += 1
    return s


def ample_trains(
    c: Chain | Sequence[int],
    budget: int = DEFAULT_BUDGET,
    *,
    prune: bool = True,
    minimal: bool = True,
) -> list[FoundTrain]:
    """Ample T-trains over ``c`` using at most ``budget`` blow-ups.

    With ``minimal`` only the cheapest trains are returned; otherwise all
    within budget.  ``prune`` skips cuts inside boundary 2-runs and requires
    the end vehicles to contain a base entry > 2.  Output is sorted by
    ``(cost, entries)``.
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    C = tuple(c)
    m = len(C)
    bad = forbidden_cuts(C) if prune else set()
    bound = [budget]
    found: list[tuple[int, tuple, tuple]] = []

    def record(cost, cuts, vehicles):
        if cost > bound[0]:
            return
        if prune and not _ends_ok(C, cuts):
            return
        if minimal and cost < bound[0]:
            bound[0] = cost
            found.clear()
        found.append((cost, tuple(cuts), tuple(vehicles)))

    def rec(p, head, prev_alpha, cost, cuts, vehicles):
        for q in range(p, m):
            P = tuple(head) + C[p + 1 : q + 1]
            if q == m - 1:
                if is_tchain(P) is None:
                    continue
                if prev_alpha is not None and prev_alpha + _alphas(P)[0] >= 1:
                    continue
                record(cost, cuts, vehicles + [P])
                continue
            if q in bad:
                continue
            K = bound[0] - cost - 1
            if K < 0:
                continue
            for T, wcost in _extensions_cached(P, 1, K, len(head) - 1):
                if cost + 1 + wcost > bound[0]:
                    break
                al = _alphas(T)
                if prev_alpha is not None and prev_alpha + al[0] >= 1:
                    continue
                w = word_of(T, P, 1)
                h = head_of(w, C[q + 1], 1)
                rec(q + 1, h, al[-1], cost + 1 + wcost, cuts + [(q, w)], vehicles + [T])

    rec(0, [C[0]], None, 0, [], [])
    out = []
    for cost, cuts, vehicles in found:
        state = replay_cuts(C, cuts)
        train = is_ample_train(state)
        assert train is not None and train.entries == _join(vehicles), "replay mismatch"
        out.append(FoundTrain(train, cost, cuts))
    out.sort(key=lambda f: (f.cost, f.entries))
    return out


def _join(vehicles) -> tuple[int, ...]:
    out: list[int] = []
    for i, v in enumerate(vehicles):
        if i:
            out.append(1)
        out.extend(v)
    return tuple(out)


def _ends_ok(C, cuts) -> bool:
    if not cuts:
        return max(C) > 2
    first = C[: cuts[0][0] + 1]
    last = C[cuts[-1][0] + 1 :]
    return max(first) > 2 and max(last) > 2


@dataclass(frozen=True)
class Admissible:
    trains: tuple[FoundTrain, ...]

    @property
    def moves(self) -> int:
        return self.trains[0].cost


@dataclass(frozen=True)
class NotWithinBudget:
    budget: int


def is_p_admissible(c: Chain | Sequence[int], budget: int = DEFAULT_BUDGET, *, prune: bool = True):
    """``Admissible`` with the cheapest ample trains, or ``NotWithinBudget``."""
    found = ample_trains(c, budget, prune=prune, minimal=True)
    if found:
        return Admissible(tuple(found))
    return NotWithinBudget(budget)


# ---------------------------------------------------------------------------
# trains from a fixed (-1)-curve by left/right moves only


def lr_trains(left: Sequence[int], right: Sequence[int], budget: int) -> list[tuple[TTrain, str]]:
    """T-trains ``T1 - 1 - T2`` reachable from ``left - 1 - right`` by left/right moves.

    Ampleness is not required.  Sorted by word length, then entries.
    """
    A = tuple(left)
    B = tuple(right)
    out = []
    for T, cost in tchain_extensions(A, 0, budget):
        w = word_of(T, A, 0)
        h = head_of(w, B[0], 0)
        R = tuple(h) + B[1:]
        if is_tchain(R) is None:
            continue
        s = TrainState(A + (1,) + B)
        j = len(A)
        for ch in w:
            if ch == "L":
                s = left_blow_up(s, j)
            else:
                s = right_blow_up(s, j)
                j += 1
        t = make_train(s.entries)
        assert t is not None and t.entries == T + (1,) + R
        out.append((TTrain(t.vehicles, t.junction_alphas, s.moves), w))
    out.sort(key=lambda tw: (len(tw[1]), tw[0].entries))
    return out


# ---------------------------------------------------------------------------
# P-resolutions


@dataclass(frozen=True)
class PResolution:
    subchains: tuple[tuple[int, int], ...]  # inclusive index intervals
    trains: tuple[TTrain, ...]
    rho: int
    mu: int
    k_ample: bool

    @property
    def is_minimal_resolution(self) -> bool:
        return not self.subchains


def _interval_options(c: tuple[int, ...], budget: int, prune: bool, du_val: bool):
    opts: list[TTrain] = []
    if du_val and all(x == 2 for x in c):
        opts.append(TTrain((Chain(c),), ()))
    for f in ample_trains(c, budget, prune=prune, minimal=False):
        opts.append(f.train)
    return opts


def _boundary_alpha(t: TTrain, side: str) -> Fraction:
    v = tuple(t.vehicles[0] if side == "left" else t.vehicles[-1])
    al = _alphas(v)
    return al[0] if side == "left" else al[-1]


def enumerate_p_resolutions(
    c: Chain | Sequence[int],
    budget: int = DEFAULT_BUDGET,
    *,
    du_val: bool = True,
    prune: bool = True,
) -> list[PResolution]:
    """P-resolutions as disjoint intervals with an ample train over each.

    Intervals are separated by at least one uncontracted base curve.  Every
    uncontracted curve must have positive degree against the canonical
    class; the minimal resolution is listed as well and flagged by
    ``k_ample`` when it fails this.
    """
    C = tuple(c)
    m = len(C)
    options = {}
    for i in range(m):
        for j in range(i, m):
            opts = _interval_options(C[i : j + 1], budget, prune, du_val)
            if opts:
                options[(i, j)] = opts

    results: list[PResolution] = []

    def k_degree_ok(chosen) -> bool:
        contracted = {}
        for (i, j), t in chosen:
            contracted[i] = (t, "left")
            contracted[j] = (t, "right")
        covered = set()
        for (i, j), _ in chosen:
            covered.update(range(i, j + 1))
        for k in range(m):
            if k in covered:
                continue
            deg = Fraction(C[k] - 2)
            if k - 1 >= 0 and k - 1 in covered:
                t, _ = contracted[k - 1]
                deg += 1 - _boundary_alpha(t, "right")
            if k + 1 < m and k + 1 in covered:
                t, _ = contracted[k + 1]
                deg += 1 - _boundary_alpha(t, "left")
            if deg <= 0:
                return False
        return True

    def rec(start, chosen):
        ok = k_degree_ok(chosen)
        if chosen and ok:
            results.append(_make_presol(C, chosen, True))
        for i in range(start, m):
            for j in range(i, m):
                for t in options.get((i, j), ()):
                    rec(j + 2, chosen + [((i, j), t)])

    rec(0, [])
    results.append(_make_presol(C, [], k_degree_ok([])))
    results.sort(key=lambda r: (r.rho + r.mu, r.rho, r.subchains, [t.entries for t in r.trains]))
    return results


def _make_presol(C, chosen, ok) -> PResolution:
    covered = sum(j - i + 1 for (i, j), _ in chosen)
    rho = (len(C) - covered) + sum(len(t.vehicles) - 1 for _, t in chosen)
    mu = sum(t.milnor for _, t in chosen)
    return PResolution(
        tuple(iv for iv, _ in chosen), tuple(t for _, t in chosen), rho, mu, ok
    )


def lambda_invariant(c: Chain | Sequence[int], budget: int = DEFAULT_BUDGET) -> int:
    """Minimum of ``rho + mu`` over the K-ample P-resolutions found within budget."""
    res = [r for r in enumerate_p_resolutions(c, budget) if r.k_ample]
    if not res:
        raise LookupError("no P-resolution found within budget")
    return min(r.rho + r.mu for r in res)


__all__ = [
    "Admissible",
    "ChainSyntaxError",
    "FoundTrain",
    "Move",
    "NotWithinBudget",
    "PResolution",
    "TTrain",
    "TrainState",
    "ample_trains",
    "blow_down",
    "blow_up_between",
    "check_length_relation",
    "enumerate_p_resolutions",
    "format_train",
    "is_ample_train",
    "is_p_admissible",
    "lambda_invariant",
    "left_blow_up",
    "lr_trains",
    "parse_train",
    "right_blow_up",
    "tchain_extensions",
]
