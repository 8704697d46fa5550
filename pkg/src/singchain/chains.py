"""Chains of rational curves and their Hirzebruch-Jung continued fractions.

A chain ``[b_1, ..., b_r]`` lists the negated self-intersections of the
exceptional curves of a cyclic quotient singularity.  Everything here is
integer or :class:`fractions.Fraction` arithmetic.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterable, Iterator, Sequence


class ChainSyntaxError(ValueError):
    """A chain, cycle or train literal could not be parsed."""


# Marker standing for the ``2^{-1}`` splice token in a parsed literal.
SPLICE = None


@dataclass(frozen=True)
class Chain:
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValueError("a chain must be non-empty")
        if min(entries) < 2:
            raise ValueError(f"chain entries must be >= 2, got {list(entries)}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self) -> str:
        return format_entries(self.entries)

    def reversed(self) -> "Chain":
        return Chain(self.entries[::-1])

    def normalized(self) -> "Chain":
        """Orientation-free representative: the lexicographically smaller direction."""
        return Chain(min(self.entries, self.entries[::-1]))

    @property
    def is_a_chain(self) -> bool:
        """Du Val chain ``[2^k]``."""
        return all(e == 2 for e in self.entries)


@dataclass(frozen=True)
class CyclicType:
    """The cyclic quotient singularity ``1/n (1, a)``."""

    n: int
    a: int

    def __post_init__(self) -> None:
        if not (0 < self.a < self.n) or gcd(self.a, self.n) != 1:
            raise ValueError(f"invalid cyclic type 1/{self.n}(1,{self.a})")

    @property
    def a_inverse(self) -> int:
        return pow(self.a, -1, self.n)

    @property
    def canonical_a(self) -> int:
        return min(self.a, self.a_inverse)


@dataclass(frozen=True)
class TClass:
    """Arithmetic data of a non-Du Val T-singularity ``1/(d n^2) (1, a d n - 1)``."""

    d: int
    n: int
    a: int

    @property
    def milnor(self) -> int:
        return self.d - 1

    @property
    def is_wahl(self) -> bool:
        return self.d == 1

    @property
    def cyclic_type(self) -> CyclicType:
        return CyclicType(self.d * self.n * self.n, self.a * self.d * self.n - 1)


# ---------------------------------------------------------------------------
# literals

_TERM = re.compile(r"^\s*(-?\d+)\s*(?:\^\s*\{?\s*(-?\d+)\s*\}?)?\s*$")


def format_entries(entries: Iterable[int]) -> str:
    return "[" + ",".join(str(e) for e in entries) + "]"


def parse_tokens(text: str) -> list[int | None]:
    """Tokenize a bracketed literal, expanding ``2^k``; ``2^-1`` becomes :data:`SPLICE`."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ChainSyntaxError(f"expected a bracketed literal, got {text!r}")
    body = body[1:-1].strip()
    if not body:
        raise ChainSyntaxError("empty literal")
    out: list[int | None] = []
    for raw in body.split(","):
        m = _TERM.match(raw)
        if not m:
            raise ChainSyntaxError(f"bad term {raw.strip()!r} in {text!r}")
        base = int(m.group(1))
        if m.group(2) is None:
            out.append(base)
            continue
        k = int(m.group(2))
        if base != 2:
            raise ChainSyntaxError(f"only powers of 2 are allowed, got {raw.strip()!r}")
        if k < -1:
            raise ChainSyntaxError(f"exponent {k} < -1 in {raw.strip()!r}")
        if k == -1:
            out.append(SPLICE)
        else:
            out.extend([2] * k)
    return out


def resolve_splices(tokens: Sequence[int | None]) -> list[int]:
    """Apply ``a, 2^-1, b -> a+b-2`` left to right on a linear token list."""
    out: list[int] = []
    pending = False
    for tok in tokens:
        if tok is SPLICE:
            if pending or not out:
                raise ChainSyntaxError("2^-1 splice without a left neighbour")
            pending = True
            continue
        if pending:
            out[-1] = out[-1] + tok - 2
            pending = False
        else:
            out.append(tok)
    if pending:
        raise ChainSyntaxError("2^-1 splice without a right neighbour")
    return out


def parse_chain(text: str) -> Chain:
    """Parse ``[3,2^3,3]``-style literals into a fully expanded :class:`Chain`."""
    entries = resolve_splices(parse_tokens(text))
    if not entries:
        raise ChainSyntaxError(f"{text!r} expands to an empty chain")
    bad = [e for e in entries if e < 2]
    if bad:
        raise ChainSyntaxError(f"{text!r} expands to entries < 2: {entries}")
    return Chain(tuple(entries))


# ---------------------------------------------------------------------------
# continued fractions


def frac_of(entries: Sequence[int]) -> tuple[int, int]:
    """``(n, a)`` with ``n/a = b_1 - 1/(b_2 - ...)``, by the integer recurrence."""
    p, q = entries[-1], 1
    for b in reversed(entries[:-1]):
        p, q = b * p - q, p
    return p, q


def chain_to_frac(c: Chain | Sequence[int]) -> CyclicType:
    n, a = frac_of(tuple(c))
    return CyclicType(n, a)


def frac_to_chain(t: CyclicType | tuple[int, int]) -> Chain:
    if not isinstance(t, CyclicType):
        t = CyclicType(*t)
    n, a = t.n, t.a
    entries = []
    while a:
        b = -(-n // a)
        entries.append(b)
        n, a = a, b * a - n
    return Chain(tuple(entries))


# ---------------------------------------------------------------------------
# T-chains


def t_class_of(n: int, a: int) -> TClass | None:
    """Find ``(d, m, q)`` with ``n = d m^2`` and ``a = q d m - 1``, if any."""
    for m in range(2, isqrt(n) + 1):
        if n % (m * m):
            continue
        d = n // (m * m)
        if (a + 1) % (d * m):
            continue
        q = (a + 1) // (d * m)
        if 1 <= q <= m - 1 and gcd(q, m) == 1:
            return TClass(d, m, q)
    return None


def is_tchain(c: Chain | Sequence[int]) -> TClass | None:
    """T-class of a non-Du Val T-chain, ``None`` otherwise (arithmetic test)."""
    entries = tuple(c)
    if all(e == 2 for e in entries):
        return None
    n, a = frac_of(entries)
    return t_class_of(n, a)


def is_seed(entries: Sequence[int]) -> bool:
    """``L_1 [2^d] R_1``: either ``[4]`` or ``[3, 2, ..., 2, 3]``."""
    if len(entries) == 1:
        return entries[0] == 4
    return entries[0] == 3 and entries[-1] == 3 and all(e == 2 for e in entries[1:-1])


def tchain_word(c: Chain | Sequence[int]) -> tuple[int, list[int]] | None:
    """Peel a T-chain down to its seed.

    Returns ``(d, ops)`` where ``d`` is the seed length and ``ops`` lists the
    paired operations from the outside in: ``2`` for ``L_2 . R_1`` and ``1``
    for ``L_1 . R_2``.  ``None`` when the chain is not a T-chain.
    """
    e = list(c)
    ops: list[int] = []
    while True:
        if is_seed(e):
            return len(e), ops
        if len(e) < 2:
            return None
        if e[0] == 2 and e[-1] >= 3:
            ops.append(2)
            e = e[1:]
            e[-1] -= 1
        elif e[-1] == 2 and e[0] >= 3:
            ops.append(1)
            e = e[:-1]
            e[0] -= 1
        else:
            return None


def apply_paired(entries: Sequence[int], op: int) -> tuple[int, ...]:
    """``L_2 X R_1`` for ``op == 2``, ``L_1 X R_2`` for ``op == 1``."""
    e = list(entries)
    if op == 2:
        e[-1] += 1
        return (2, *e)
    e[0] += 1
    return (*e, 2)


def generate_tchains(max_length: int, max_entry_sum: int) -> list[Chain]:
    """All T-chains with length and entry sum within bounds, by L/R closure of the seeds.

    Sorted by ``(length, entries)``.
    """
    if max_length < 1 or max_entry_sum < 1:
        raise ValueError("bounds must be >= 1")
    seeds = [(4,)] + [(3,) + (2,) * k + (3,) for k in range(max_length - 1)]
    seen: set[tuple[int, ...]] = set()
    queue = deque(s for s in seeds if len(s) <= max_length and sum(s) <= max_entry_sum)
    while queue:
        e = queue.popleft()
        if e in seen:
            continue
        seen.add(e)
        if len(e) + 1 > max_length or sum(e) + 3 > max_entry_sum:
            continue
        for op in (1, 2):
            queue.append(apply_paired(e, op))
    return [Chain(e) for e in sorted(seen, key=lambda e: (len(e), e))]


def milnor_number(c: Chain | Sequence[int]) -> int | None:
    """Milnor number of the smoothing: ``d - 1`` for T-chains, ``k`` for ``[2^k]``."""
    entries = tuple(c)
    if all(e == 2 for e in entries):
        return len(entries)
    t = is_tchain(entries)
    return None if t is None else t.milnor
