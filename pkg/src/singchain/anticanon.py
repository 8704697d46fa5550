"""Search for anticanonical cycles on smooth rational surfaces.

States are cycles of rational curves (entry = minus self-intersection,
any sign) sitting in ``|-K|`` on a surface with ``K^2 = k2``.  Blowing up
a node or a smooth point of the cycle keeps it anticanonical.  Starting
from cycles on minimal rational surfaces, the search tries to reach a
target cycle.  Finding one is a proof of realizability; not finding one
proves nothing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .cusp import Cycle, dihedral_max


@dataclass(frozen=True)
class Seed:
    name: str
    entries: tuple[int, ...]
    k2: int

    def to_json(self) -> dict:
        return {"name": self.name, "entries": list(self.entries), "k2": self.k2}


@dataclass(frozen=True)
class WitnessMove:
    kind: str  # "node" or "smooth"
    pos: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "pos": self.pos}


@dataclass(frozen=True)
class AnticanonicalState:
    entries: tuple[int, ...]
    k2: int
    move_log: tuple[WitnessMove, ...] = ()

    @property
    def r(self) -> int:
        return len(self.entries)

    def conserved(self) -> bool:
        return 2 * self.r - sum(self.entries) == self.k2

    def canonical(self) -> tuple[int, ...]:
        return dihedral_max(self.entries)


def seeds(max_degree: int = 12) -> list[Seed]:
    """Anticanonical cycles on minimal rational surfaces.

    Plane: line + conic, triangle of lines, nodal cubic (one component, so
    its entry is the nodal label).  Hirzebruch surfaces: section plus
    negative section for degree ``1..max_degree``, and the square of
    rulings on the quadric.
    """
    out = [
        Seed("plane-line-conic", (-4, -1), 9),
        Seed("plane-triangle", (-1, -1, -1), 9),
        Seed("plane-nodal-cubic", (-7,), 9),
        Seed("quadric-square", (0, 0, 0, 0), 8),
    ]
    out += [Seed(f"hirzebruch-{d}", (-d - 4, d), 8) for d in range(1, max_degree + 1)]
    return out


def seed_by_name(name: str) -> Seed:
    if name.startswith("hirzebruch-"):
        d = int(name.split("-", 1)[1])
        if d < 1:
            raise ValueError("Hirzebruch degree must be >= 1")
        return Seed(name, (-d - 4, d), 8)
    for s in seeds(0):
        if s.name == name:
            return s
    raise ValueError(f"unknown seed {name!r}")


def start(seed: Seed) -> AnticanonicalState:
    return AnticanonicalState(seed.entries, seed.k2)


def move_node(s: AnticanonicalState, i: int) -> AnticanonicalState:
    """Blow up the node between components ``i`` and ``i + 1`` (cyclically)."""
    r = s.r
    if not 0 <= i < r:
        raise IndexError(f"node {i} out of range for r = {r}")
    e = list(s.entries)
    if r == 1:
        new = [e[0] + 2, 1]
    else:
        e[i] += 1
        e[(i + 1) % r] += 1
        new = e[: i + 1] + [1] + e[i + 1 :]
    return AnticanonicalState(tuple(new), s.k2 - 1, s.move_log + (WitnessMove("node", i),))


def move_smooth(s: AnticanonicalState, i: int) -> AnticanonicalState:
    """Blow up a smooth point of the cycle on component ``i``."""
    if not 0 <= i < s.r:
        raise IndexError(f"component {i} out of range for r = {s.r}")
    e = list(s.entries)
    e[i] += 1
    return AnticanonicalState(tuple(e), s.k2 - 1, s.move_log + (WitnessMove("smooth", i),))


def target_k2(c: Cycle) -> int:
    return 2 * c.r - sum(c.entries)


def forced_depth(c: Cycle) -> int | None:
    """Fewest blow-ups any usable seed needs to reach ``c``.

    Blow-ups never shrink the cycle, so only seeds with at most ``c.r``
    components count.  ``None`` when no seed has ``k2`` large enough.
    """
    k2_t = target_k2(c)
    depths = [s.k2 - k2_t for s in seeds(0) if len(s.entries) <= c.r and s.k2 >= k2_t]
    if c.r >= 2 and 8 >= k2_t:
        depths.append(8 - k2_t)  # Hirzebruch seeds
    return min(depths) if depths else None


@dataclass(frozen=True)
class Witness:
    seed: Seed
    moves: tuple[WitnessMove, ...]

    def to_json(self) -> dict:
        return {"seed": self.seed.to_json(), "moves": [m.to_json() for m in self.moves]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class RealizeResult:
    witness: Witness | None
    reason: str
    explored: int


def realize(
    target: Cycle,
    max_blowups: int = 24,
    seed_filter: Iterable[str] | None = None,
    on_state=None,
) -> RealizeResult:
    """Look for blow-ups of a seed whose anticanonical cycle is ``target``.

    The number of blow-ups from a seed is forced: ``k2(seed) - k2(target)``.
    ``on_state`` is called on every explored state (used for conservation
    checks).  Seeds are tried in a fixed order; the first witness wins.
    """
    goal = target.entries
    r_t = target.r
    top = max(goal)
    low = min(goal)
    k2_t = target_k2(target)
    wanted = set(seed_filter) if seed_filter is not None else None
    pool = [s for s in seeds(max(1, top)) if wanted is None or s.name in wanted]
    explored = 0
    any_depth = False
    for seed in pool:
        depth = seed.k2 - k2_t
        if depth < 0 or depth > max_blowups:
            continue
        any_depth = True
        visited: set[tuple[int, ...]] = set()
        stack = [start(seed)]
        while stack:
            s = stack.pop()
            explored += 1
            if on_state is not None:
                on_state(s)
            remaining = s.k2 - k2_t
            if remaining == 0:
                if s.r == r_t and s.canonical() == goal:
                    return RealizeResult(Witness(seed, s.move_log), "found", explored)
                continue
            for nxt in _children(s):
                if not _viable(nxt, r_t, top, low, k2_t):
                    continue
                key = nxt.canonical()
                if key in visited:
                    continue
                visited.add(key)
                stack.append(nxt)
    if not any_depth:
        return RealizeResult(None, "max_blowups below the forced depth for every seed", explored)
    return RealizeResult(None, "not found within budget", explored)


def _children(s: AnticanonicalState) -> list[AnticanonicalState]:
    out = [move_smooth(s, i) for i in range(s.r)]
    out += [move_node(s, i) for i in range(s.r)]
    return out


def _viable(s: AnticanonicalState, r_t: int, top: int, low: int, k2_t: int) -> bool:
    remaining = s.k2 - k2_t
    if s.r > r_t or max(s.entries) > top:
        return False
    nodes = r_t - s.r
    if nodes > remaining:
        return False
    smooth = remaining - nodes
    # raising every entry to the target minimum; each node blow-up adds two
    # units but also a new entry 1 that itself needs low - 1 more
    deficit = sum(max(0, low - x) for x in s.entries)
    return deficit <= nodes * (3 - low) + smooth


def replay(w: Witness, on_state=None) -> AnticanonicalState:
    """Re-run a witness, checking conservation at every step."""
    s = start(w.seed)
    for m in w.moves:
        if not s.conserved():
            raise AssertionError(f"conservation fails at {s.entries}")
        if on_state is not None:
            on_state(s)
        s = move_node(s, m.pos) if m.kind == "node" else move_smooth(s, m.pos)
    if not s.conserved():
        raise AssertionError(f"conservation fails at {s.entries}")
    if on_state is not None:
        on_state(s)
    return s


def witness_from_json(data: dict | str) -> Witness:
    if isinstance(data, str):
        data = json.loads(data)
    sd = data["seed"]
    seed = Seed(sd["name"], tuple(sd["entries"]), int(sd["k2"]))
    if 2 * len(seed.entries) - sum(seed.entries) != seed.k2:
        raise ValueError("seed violates conservation")
    moves = []
    for m in data["moves"]:
        if m["kind"] not in ("node", "smooth"):
            raise ValueError(f"unknown move kind {m['kind']!r}")
        moves.append(WitnessMove(m["kind"], int(m["pos"])))
    return Witness(seed, tuple(moves))


__all__ = [
    "AnticanonicalState",
    "forced_depth",
    "RealizeResult",
    "Seed",
    "Witness",
    "WitnessMove",
    "move_node",
    "move_smooth",
    "realize",
    "replay",
    "seed_by_name",
    "seeds",
    "start",
    "target_k2",
    "witness_from_json",
]
