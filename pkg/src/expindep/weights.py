"""Exact influence weights over blocked distances, and the two verifiers.

A selected set S assigns to a vertex u the total influence

    sum over v in S of (1/2) ** (d(u, v) - 1)

where d(u, v) is the hop distance between u and v after deleting every
member of S other than u and v. Selected vertices therefore shield
whatever lies behind them, and an unreachable source contributes 0.

S is *exponentially independent* when every member receives total
influence strictly below 1 from the other members, and *exponentially
dominating* when every vertex of the graph receives total influence at
least 1 from S. Both thresholds sit on exact boundaries in the extremal
examples (two adjacent vertices give exactly 1, the center of a 3-path
covers both leaves with exactly 1), so all arithmetic here is exact: every
term is a dyadic rational p / 2**e and comparisons against 1 reduce to
integer comparisons. Floating point appears only in display strings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .graphs import INF, Graph, absorbing_bfs


class Dyadic:
    """Nonnegative rational with a power-of-two denominator, kept in the
    canonical form where the numerator is odd or the exponent is zero
    (and zero is 0 / 2**0). Addition and comparison are exact."""

    __slots__ = ("num", "exp")

    def __init__(self, num: int = 0, exp: int = 0):
        if num < 0 or exp < 0:
            raise ValueError("dyadic values are nonnegative with nonnegative exponent")
        while num and num % 2 == 0 and exp > 0:
            num //= 2
            exp -= 1
        if num == 0:
            exp = 0
        self.num = num
        self.exp = exp

    @classmethod
    def influence(cls, distance: int) -> "Dyadic":
        """The term (1/2) ** (distance - 1); distance 0 gives 2."""
        if distance < 0:
            raise ValueError("distance must be nonnegative")
        if distance == 0:
            return cls(2, 0)
        return cls(1, distance - 1)

    def _cmp(self, other) -> int:
        if isinstance(other, int):
            if other < 0:
                return 1
            other = Dyadic(other, 0)
        elif not isinstance(other, Dyadic):
            return NotImplemented
        left = self.num << other.exp
        right = other.num << self.exp
        return (left > right) - (left < right)

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def __hash__(self):
        return hash((self.num, self.exp))

    def __add__(self, other):
        if isinstance(other, int):
            if other < 0:
                raise ValueError("cannot add a negative integer to a dyadic")
            other = Dyadic(other, 0)
        if not isinstance(other, Dyadic):
            return NotImplemented
        e = max(self.exp, other.exp)
        num = (self.num << (e - self.exp)) + (other.num << (e - other.exp))
        return Dyadic(num, e)

    __radd__ = __add__

    def __float__(self) -> float:
        return self.num / (1 << self.exp)

    def __str__(self) -> str:
        return f"{self.num}/2^{self.exp}"

    def __repr__(self) -> str:
        return f"Dyadic({self.num}, {self.exp})"

    def decimal_str(self) -> str:
        """Exact decimal rendering, for display only."""
        if self.exp == 0:
            return str(self.num)
        digits = str(self.num * 5 ** self.exp).rjust(self.exp + 1, "0")
        whole, frac = digits[: -self.exp], digits[-self.exp :]
        frac = frac.rstrip("0") or "0"
        return f"{whole}.{frac}"


ONE = Dyadic(1, 0)


class Contribution(NamedTuple):
    source: int
    distance: int
    amount: Dyadic


@dataclass(frozen=True)
class VertexCheck:
    vertex: int
    weight: Dyadic
    contributions: tuple[Contribution, ...]
    ok: bool


@dataclass(frozen=True)
class WeightReport:
    """Full diagnostic output of a verifier run: one check per examined
    vertex (sorted by id), each carrying the exact weight and its
    decomposition into per-source contributions."""

    mode: str  # "ei" or "ed"
    ok: bool
    checks: tuple[VertexCheck, ...]
    first_violation: int | None

    def to_text(self) -> str:
        from . import __version__

        head = (
            f"mode={self.mode} verdict={'true' if self.ok else 'false'} "
            f"first_violation={self.first_violation if self.first_violation is not None else 'none'}"
        )
        lines = [head]
        for c in self.checks:
            mark = "ok" if c.ok else "VIOLATION"
            lines.append(f"{c.vertex} w={c.weight} ({c.weight.decimal_str()}) {mark}")
            for s in c.contributions:
                lines.append(f"  v={s.source} d={s.distance} c={s.amount} ({s.amount.decimal_str()})")
        lines.append(f"# expindep {__version__}")
        return "\n".join(lines) + "\n"


def blocked_distance(G: Graph, S: Iterable[int], u: int, v: int):
    """Distance between u and v with every member of S other than u and v
    deleted; INF when they become disconnected, 0 only for u == v."""
    return absorbing_bfs(G, u, frozenset(S))[v]


def weight(G: Graph, S: Iterable[int], u: int) -> Dyadic:
    """Total influence that S exerts on u, as an exact dyadic. A member at
    blocked distance d contributes (1/2)**(d-1); unreachable members
    contribute nothing; u itself, when in S, contributes 2."""
    members = S if isinstance(S, (set, frozenset)) else frozenset(S)
    dist = absorbing_bfs(G, u, members)
    total = Dyadic()
    for v in members:
        d = dist[v]
        if d != INF:
            total = total + Dyadic.influence(d)
    return total


def weight_details(G: Graph, S: Iterable[int], u: int) -> tuple[Dyadic, tuple[Contribution, ...]]:
    """Like ``weight`` but also returns the per-source decomposition,
    sorted by source id; only reachable members appear."""
    members = S if isinstance(S, (set, frozenset)) else frozenset(S)
    dist = absorbing_bfs(G, u, members)
    total = Dyadic()
    parts = []
    for v in sorted(members):
        d = dist[v]
        if d != INF:
            amt = Dyadic.influence(d)
            total = total + amt
            parts.append(Contribution(v, d, amt))
    return total, tuple(parts)


def is_exponentially_independent(G: Graph, S: Iterable[int]) -> WeightReport:
    """Verdict true iff every member u of S satisfies weight(G, S - {u}, u) < 1
    exactly. Empty and singleton sets pass vacuously. The report carries
    every member's weight and decomposition."""
    members = frozenset(S)
    checks = []
    first_violation = None
    ok = True
    for u in sorted(members):
        w, parts = weight_details(G, members - {u}, u)
        good = w < ONE
        if not good and first_violation is None:
            first_violation = u
            ok = False
        checks.append(VertexCheck(u, w, parts, good))
    return WeightReport("ei", ok, tuple(checks), first_violation)


def is_exponentially_dominating(G: Graph, S: Iterable[int]) -> WeightReport:
    """Verdict true iff every vertex of G satisfies weight(G, S, u) >= 1
    exactly; members are automatically satisfied through their self term."""
    members = frozenset(S)
    checks = []
    first_violation = None
    ok = True
    for u in range(G.n):
        w, parts = weight_details(G, members, u)
        good = w >= ONE
        if not good and first_violation is None:
            first_violation = u
            ok = False
        checks.append(VertexCheck(u, w, parts, good))
    return WeightReport("ed", ok, tuple(checks), first_violation)


def ei_holds(G: Graph, S: Iterable[int]) -> bool:
    """Boolean fast path of the independence verifier (early exit, no
    report); agrees with is_exponentially_independent by construction."""
    members = frozenset(S)
    for u in members:
        if not weight(G, members - {u}, u) < ONE:
            return False
    return True


def ed_holds(G: Graph, S: Iterable[int]) -> bool:
    """Boolean fast path of the domination verifier (early exit, members
    skipped since their self term is 2)."""
    members = frozenset(S)
    for u in range(G.n):
        if u in members:
            continue
        if weight(G, members, u) < ONE:
            return False
    return True
