"""Exact optimizers for the two influence parameters, plus the search for
structurally interesting witnesses.

The maximum-selection solver is a branch and bound over include/exclude
decisions in a fixed vertex order. Its only structural prune is licensed
by subset closure: a candidate whose addition already breaks the member
condition can never appear in a feasible superset, because every subset of
a feasible set is feasible. The counting prune discards a subtree only
when it cannot reach the incumbent size, so ties stay alive and the
reported witness is the lexicographically smallest optimum.

The minimum-domination solver enumerates subsets by increasing size with
no pruning at all: adding a vertex can sever influence routes, so
feasibility is not monotone and supersets of dominating sets need not
dominate. Exhaustive enumeration per size is the correctness strategy at
desk scale.

Member weights along the branch-and-bound path are maintained
incrementally: when v joins the set, the only existing members whose
weight can change are those that still reach v once the new blocking is in
place; one absorbing sweep from v finds them, everyone else keeps their
cached weight. The equivalence of this shortcut with full re-verification
is covered by tests, and every final witness is re-checked by the full
verifier before it is returned.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .graphs import INF, Graph, absorbing_bfs, connected_components, induced_subgraph
from .weights import (
    Dyadic,
    ONE,
    ed_holds,
    ei_holds,
    is_exponentially_dominating,
    is_exponentially_independent,
    weight,
)


class InfeasibleError(ValueError):
    """The required set is not exponentially independent."""


class _Timeout(Exception):
    pass


@dataclass(frozen=True)
class SearchResult:
    optimum: int
    witness: tuple[int, ...]
    nodes_explored: int
    status: str  # "optimal" or "timeout"

    def to_text(self) -> str:
        lines = [
            f"status {self.status}",
            f"optimum {self.optimum}",
            f"nodes {self.nodes_explored}",
            "witness " + " ".join(str(v) for v in self.witness),
        ]
        return "\n".join(lines) + "\n"


def try_extend(G: Graph, members: frozenset, weights: dict, v: int) -> dict | None:
    """Incremental feasibility check for members + {v}: returns the updated
    weight cache when the extended set stays exponentially independent,
    None otherwise. ``weights`` maps each member u to its cached weight
    against the other members."""
    w_v = weight(G, members, v)
    if not w_v < ONE:
        return None
    grown = members | {v}
    dist = absorbing_bfs(G, v, grown)
    new_weights = {v: w_v}
    for x in members:
        if dist[x] == INF:
            new_weights[x] = weights[x]
            continue
        w_x = weight(G, grown - {x}, x)
        if not w_x < ONE:
            return None
        new_weights[x] = w_x
    return new_weights


def alpha_e_exact(
    G: Graph,
    required: Iterable[int] = (),
    time_budget: float | None = None,
    excluded: Iterable[int] = (),
) -> SearchResult:
    """Maximum size of an exponentially independent set containing
    ``required`` (which must itself be independent, else InfeasibleError),
    never touching ``excluded``. Deterministic: branching order is
    descending degree with id tie-break, and the witness is the
    lexicographically smallest among the optima. On timeout the best
    incumbent is returned with status "timeout"."""
    req = frozenset(required)
    exc = frozenset(excluded)
    if req & exc:
        raise ValueError("required and excluded sets overlap")
    base_weights: dict[int, Dyadic] = {}
    for u in sorted(req):
        w = weight(G, req - {u}, u)
        if not w < ONE:
            raise InfeasibleError(
                f"required set is not exponentially independent at vertex {u}"
            )
        base_weights[u] = w

    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    cands = [v for v in order if v not in req and v not in exc]
    deadline = None if time_budget is None else time.monotonic() + time_budget

    best_size = len(req)
    best_set = tuple(sorted(req))
    nodes = 0
    ncands = len(cands)

    def dfs(i: int, members: frozenset, weights: dict):
        nonlocal best_size, best_set, nodes
        nodes += 1
        if deadline is not None and (nodes & 255) == 0 and time.monotonic() > deadline:
            raise _Timeout
        if len(members) + (ncands - i) < best_size:
            return
        if i == ncands:
            size = len(members)
            tup = tuple(sorted(members))
            if size > best_size or (size == best_size and tup < best_set):
                best_size, best_set = size, tup
            return
        v = cands[i]
        ext = try_extend(G, members, weights, v)
        if ext is not None:
            dfs(i + 1, members | {v}, ext)
        dfs(i + 1, members, weights)

    status = "optimal"
    try:
        dfs(0, req, base_weights)
    except _Timeout:
        status = "timeout"

    if not is_exponentially_independent(G, best_set).ok:
        raise RuntimeError("internal error: witness failed re-verification")
    return SearchResult(best_size, best_set, nodes, status)


def alpha_e_bruteforce(G: Graph) -> SearchResult:
    """Ground-truth oracle by descending-size exhaustive enumeration;
    the first feasible combination at the optimum size is automatically
    the lexicographically smallest witness. Guarded to n <= 20."""
    if G.n > 20:
        raise ValueError("graph too large for exhaustive enumeration")
    nodes = 0
    for s in range(G.n, 0, -1):
        for combo in combinations(range(G.n), s):
            nodes += 1
            if ei_holds(G, combo):
                if not is_exponentially_independent(G, combo).ok:
                    raise RuntimeError("internal error: witness failed re-verification")
                return SearchResult(s, combo, nodes, "optimal")
    return SearchResult(0, (), nodes, "optimal")


def greedy_dominating_set(G: Graph) -> frozenset:
    """Deterministic greedy upper bound for the domination search: grow by
    the vertex satisfying the most currently unsatisfied vertices
    (smallest id on ties); falls back to adding the smallest unsatisfied
    vertex so termination is guaranteed (the whole vertex set dominates)."""
    members: set[int] = set()

    def satisfied(mem: frozenset) -> set[int]:
        out = set(mem)
        for u in range(G.n):
            if u not in mem and weight(G, mem, u) >= ONE:
                out.add(u)
        return out

    covered = satisfied(frozenset())
    while len(covered) < G.n:
        best_v, best_cov = None, None
        for v in range(G.n):
            if v in members:
                continue
            cov = satisfied(frozenset(members | {v}))
            if best_cov is None or len(cov) > len(best_cov):
                best_v, best_cov = v, cov
        if best_v is None or len(best_cov) <= len(covered):
            best_v = min(u for u in range(G.n) if u not in covered)
            best_cov = satisfied(frozenset(members | {best_v}))
        members.add(best_v)
        covered = best_cov
    return frozenset(members)


def gamma_e_exact(G: Graph, time_budget: float | None = None) -> SearchResult:
    """Minimum size of an exponentially dominating set, by increasing-size
    exhaustive enumeration per connected component (components cannot
    influence each other, so the optimum is the sum). On timeout the
    greedy upper bound is returned with status "timeout"."""
    deadline = None if time_budget is None else time.monotonic() + time_budget
    nodes = 0
    witness: list[int] = []
    try:
        for comp in connected_components(G):
            sub, old_ids = induced_subgraph(G, comp)
            found = None
            for s in range(1, sub.n + 1):
                for combo in combinations(range(sub.n), s):
                    nodes += 1
                    if deadline is not None and (nodes & 63) == 0 and time.monotonic() > deadline:
                        raise _Timeout
                    if ed_holds(sub, combo):
                        found = combo
                        break
                if found is not None:
                    break
            witness.extend(old_ids[v] for v in found)
    except _Timeout:
        greedy = greedy_dominating_set(G)
        return SearchResult(len(greedy), tuple(sorted(greedy)), nodes, "timeout")
    witness_t = tuple(sorted(witness))
    if not is_exponentially_dominating(G, witness_t).ok:
        raise RuntimeError("internal error: witness failed re-verification")
    return SearchResult(len(witness_t), witness_t, nodes, "optimal")


def find_maximal_ei_not_ed(G: Graph) -> frozenset | None:
    """First (in subset-mask order) exponentially independent set that is
    inclusion-maximal independent yet fails to dominate; None when no such
    set exists at this scale. Guarded to n <= 16."""
    if G.n > 16:
        raise ValueError("graph too large for exhaustive subset scan")
    n = G.n
    for mask in range(1, 1 << n):
        members = frozenset(v for v in range(n) if mask >> v & 1)
        if not ei_holds(G, members):
            continue
        extendable = any(
            ei_holds(G, members | {v}) for v in range(n) if v not in members
        )
        if extendable:
            continue
        if ed_holds(G, members):
            continue
        return members
    return None
