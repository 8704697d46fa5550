"""Dual graphs, log discrepancies and strictly lc rational types."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .chains import Chain, is_tchain, tchain_word
from .exact import NotNegativeDefinite, is_positive_definite, solve_positive_definite


@dataclass(frozen=True)
class DualGraph:
    """Weighted dual graph of rational curves.

    ``weights[i]`` is minus the self-intersection of vertex ``i`` (for a
    one-vertex cycle it is the nodal label ``b + 2``).  ``edges`` may repeat
    (two curves meeting twice) and contain loops ``(i, i)`` (a nodal curve).
    """

    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    shape: str = "tree"

    @classmethod
    def chain(cls, entries: Sequence[int]) -> "DualGraph":
        e = tuple(entries)
        return cls(e, tuple((i, i + 1) for i in range(len(e) - 1)), "chain")

    @classmethod
    def cycle(cls, entries: Sequence[int]) -> "DualGraph":
        e = tuple(entries)
        r = len(e)
        if r == 1:
            return cls(e, ((0, 0),), "cycle")
        return cls(e, tuple((i, (i + 1) % r) for i in range(r)), "cycle")

    @classmethod
    def star(cls, center: int, arms: Sequence[Sequence[int]]) -> "DualGraph":
        """A center vertex with chains hanging off it (arm[0] touches the center)."""
        weights = [center]
        edges = []
        for arm in arms:
            prev = 0
            for w in arm:
                weights.append(w)
                edges.append((prev, len(weights) - 1))
                prev = len(weights) - 1
        return cls(tuple(weights), tuple(edges), "tree")

    @classmethod
    def type_2222(cls, bs: Sequence[int]) -> "DualGraph":
        """Chain ``b_1..b_n`` with two (-2)-leaves on each end vertex."""
        n = len(bs)
        weights = list(bs) + [2, 2, 2, 2]
        edges = [(i, i + 1) for i in range(n - 1)]
        edges += [(0, n), (0, n + 1), (n - 1, n + 2), (n - 1, n + 3)]
        return cls(tuple(weights), tuple(edges), "tree")

    def gram(self) -> list[list[int]]:
        n = len(self.weights)
        g = [[0] * n for _ in range(n)]
        for i, w in enumerate(self.weights):
            g[i][i] = -w
        for i, j in self.edges:
            if i == j:
                g[i][i] += 2
            else:
                g[i][j] += 1
                g[j][i] += 1
        return g

    @property
    def negative_definite(self) -> bool:
        return is_positive_definite([[-x for x in row] for row in self.gram()])


@dataclass(frozen=True)
class LogDiscProfile:
    alphas: tuple[Fraction, ...]
    kp_squared_plus_kpE: Fraction

    @property
    def status(self) -> str:
        low = min(self.alphas)
        if low > 0:
            return "klt"
        if low == 0:
            return "strictly lc"
        return "not lc"


def _profile(weights: Sequence[int], alphas: Sequence[Fraction]) -> LogDiscProfile:
    kp = sum((a * (w - 2) for a, w in zip(alphas, weights)), Fraction(0))
    return LogDiscProfile(tuple(alphas), kp)


def log_discrepancies(g: DualGraph | Chain | Sequence[int]) -> LogDiscProfile:
    """Solve ``sum_j (alpha_j - 1) E_j.E_i = w_i - 2`` exactly.

    Plain sequences and chains are read as chain graphs.  Raises
    :class:`NotNegativeDefinite` if the configuration does not contract.
    """
    if not isinstance(g, DualGraph):
        g = DualGraph.chain(tuple(g))
    m = [[-x for x in row] for row in g.gram()]
    x = solve_positive_definite(m, [2 - w for w in g.weights])
    return _profile(g.weights, [xi + 1 for xi in x])


def log_discrepancies_recursive(c: Chain | Sequence[int]) -> LogDiscProfile:
    """Log discrepancies of a T-chain grown from its seed by the paired L/R rule."""
    entries = tuple(c)
    word = tchain_word(entries)
    if word is None:
        raise ValueError(f"{list(entries)} is not a T-chain")
    d, ops = word
    alphas = [Fraction(1, 2)] * d
    for op in reversed(ops):
        if op == 2:
            s = 1 + alphas[-1]
            alphas = [1 / s] + [a / s for a in alphas]
        else:
            s = 1 + alphas[0]
            alphas = [a / s for a in alphas] + [1 / s]
    return _profile(entries, alphas)


def cores(c: Chain | Sequence[int]) -> tuple[int, ...]:
    """Positions of the minimal log discrepancy; there are ``d`` of them."""
    alphas = log_discrepancies_recursive(c).alphas
    low = min(alphas)
    return tuple(i for i, a in enumerate(alphas) if a == low)


def lc_status(c: Chain | Sequence[int]) -> str:
    return log_discrepancies(c).status


# ---------------------------------------------------------------------------
# strictly lc rational singularities


@dataclass(frozen=True)
class StrictlyLcType:
    kind: str  # "(2,2,2,2)", "(3,3,3)", "(2,4,4)", "(2,3,6)" or "none"
    params: tuple[int, ...] = ()
    smoothable: bool = False
    kp_invariant: Fraction | None = None
    alphas: tuple[Fraction, ...] = field(default=(), compare=False)

    @property
    def label(self) -> str:
        if self.kind == "none":
            return "NotStrictlyLcRational"
        return f"{self.kind}[{','.join(map(str, self.params))}]"


_STAR_TYPES = {
    (3, 3, 3): ("(3,3,3)", lambda b: b in (2, 3, 4)),
    (2, 4, 4): ("(2,4,4)", lambda b: b in (2, 3)),
    (2, 3, 6): ("(2,3,6)", lambda b: b == 2),
}

NOT_STRICTLY_LC = StrictlyLcType("none")


def classify_strictly_lc(g: DualGraph) -> StrictlyLcType:
    """Recognize the four strictly lc rational forks and their smoothability flag."""
    if not g.negative_definite:
        raise NotNegativeDefinite("intersection form is not negative definite")
    n = len(g.weights)
    if any(i == j for i, j in g.edges) or len(set(map(frozenset, g.edges))) != len(g.edges):
        return NOT_STRICTLY_LC
    if len(g.edges) != n - 1 or not _connected(n, g.edges):
        return NOT_STRICTLY_LC
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for i, j in g.edges:
        adj[i].append(j)
        adj[j].append(i)
    deg = {i: len(v) for i, v in adj.items()}
    forks = [i for i in range(n) if deg[i] >= 3]
    if not forks:
        return NOT_STRICTLY_LC

    result = None
    w = g.weights
    if len(forks) == 1 and deg[forks[0]] == 3 and n == 4:
        c = forks[0]
        arms = tuple(sorted(w[j] for j in adj[c]))
        if arms in _STAR_TYPES:
            kind, flag = _STAR_TYPES[arms]
            result = (kind, (w[c],), flag(w[c]))
    elif _is_2222(n, adj, deg, w):
        bs = _path_2222(adj, deg)
        bw = tuple(w[i] for i in bs)
        result = ("(2,2,2,2)", bw, sum(b - 3 for b in bw) <= 3)
    if result is None:
        return NOT_STRICTLY_LC
    prof = log_discrepancies(g)
    if prof.status != "strictly lc":
        return NOT_STRICTLY_LC
    kind, params, flag = result
    return StrictlyLcType(kind, params, flag, prof.kp_squared_plus_kpE, prof.alphas)


def _connected(n: int, edges) -> bool:
    adj: dict[int, set[int]] = {i: set() for i in range(n)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    seen = {0}
    stack = [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def _is_2222(n, adj, deg, w) -> bool:
    leaves = [i for i in range(n) if deg[i] == 1]
    if len(leaves) != 4 or any(w[i] != 2 for i in leaves):
        return False
    inner = [i for i in range(n) if deg[i] > 1]
    if len(inner) == 1:
        return deg[inner[0]] == 4
    counts = Counter(deg[i] for i in inner)
    if counts[3] != 2 or counts[2] != len(inner) - 2:
        return False
    # each fork carries two of the leaves
    return all(sum(1 for j in adj[f] if deg[j] == 1) == 2 for f in inner if deg[f] == 3)


def _path_2222(adj, deg) -> list[int]:
    inner = [i for i in adj if deg[i] > 1]
    if len(inner) == 1:
        return inner
    start = next(i for i in inner if deg[i] == 3)
    path = [start]
    prev = None
    cur = start
    while True:
        nxt = [j for j in adj[cur] if deg[j] > 1 and j != prev]
        if not nxt:
            return path
        prev, cur = cur, nxt[0]
        path.append(cur)


__all__ = [
    "DualGraph",
    "LogDiscProfile",
    "StrictlyLcType",
    "classify_strictly_lc",
    "cores",
    "is_tchain",
    "lc_status",
    "log_discrepancies",
    "log_discrepancies_recursive",
]
