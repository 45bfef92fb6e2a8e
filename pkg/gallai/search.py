import logging
from typing import Iterator, Optional, Sequence

import networkx as nx

from .coloring import (
    ColorOutOfRangeError,
    ColoredComplete,
    Embedding,
    TargetError,
    TargetKind,
    TargetSpec,
)

DEFAULT_NODE_BUDGET = 10**8
# Dead (visited, end) states remembered per call.
MEMO_LIMIT = 1_000_000


class OddLengthError(TargetError):
    pass


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, budget: int) -> None:
        super().__init__(f"Search budget of {budget} expanded states exhausted")
        self.budget = budget


class NodeCounter:
    """Shared expansion counter; raises instead of letting a search return a wrong 'none'."""

    def __init__(self, budget: Optional[int] = None) -> None:
        self.budget = budget if budget is not None else DEFAULT_NODE_BUDGET
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(self.budget)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def reachable(adj: Sequence[int], start: int, within: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        grown = 0
        for v in iter_bits(frontier):
            grown |= adj[v]
        grown &= within & ~seen
        seen |= grown
        frontier = grown
    return seen


def twin_masks(adj: Sequence[int]) -> list[int]:
    """For each w, the vertices u < w that an automorphism can swap with w."""
    n = len(adj)
    twins = [0] * n
    for w in range(n):
        for u in range(w):
            if adj[u] & ~(1 << w) == adj[w] & ~(1 << u):
                twins[w] |= 1 << u
    return twins


def _check_color(c: ColoredComplete, color: int) -> None:
    if not 1 <= color <= c.k:
        raise ColorOutOfRangeError(f"Color {color} is outside 1..{c.k}")


def path_in(adj: Sequence[int], m: int, counter: NodeCounter) -> Optional[tuple[int, ...]]:
    """Lexicographically least m-vertex path, or None."""
    n = len(adj)
    if m < 1 or m > n:
        return None
    if m == 1:
        return (0,)
    allowed = 0
    for v in range(n):
        if adj[v]:
            allowed |= 1 << v
    twins = twin_masks(adj)
    failed: set[tuple[int, int]] = set()
    path: list[int] = []

    def extend(end: int, visited: int) -> bool:
        counter.tick()
        if len(path) == m:
            return True
        key = (visited, end)
        if key in failed:
            return False
        free = allowed & ~visited
        if (reachable(adj, end, free | (1 << end)).bit_count() - 1) < m - len(path):
            return False
        for w in iter_bits(adj[end] & free):
            if twins[w] & free:
                continue
            path.append(w)
            if extend(w, visited | (1 << w)):
                return True
            path.pop()
        if len(failed) < MEMO_LIMIT:
            failed.add(key)
        return False

    for start in iter_bits(allowed):
        if twins[start] & allowed:
            continue
        path[:] = [start]
        if extend(start, 1 << start):
            return tuple(path)
    return None


def cycle_in(adj: Sequence[int], length: int, counter: NodeCounter) -> Optional[tuple[int, ...]]:
    """Lexicographically least cycle on `length` vertices, started at its least vertex."""
    n = len(adj)
    if length > n:
        return None
    core = (1 << n) - 1
    changed = True
    while changed:
        changed = False
        for v in iter_bits(core):
            if (adj[v] & core).bit_count() < 2:
                core &= ~(1 << v)
                changed = True
    twins = twin_masks(adj)
    failed: set[tuple[int, int]] = set()
    path: list[int] = []

    def extend(start: int, within: int, end: int, visited: int) -> bool:
        counter.tick()
        if len(path) == length:
            return bool(adj[end] >> start & 1)
        key = (visited, end)
        if key in failed:
            return False
        free = within & ~visited
        reach = reachable(adj, end, free | (1 << end))
        if reach.bit_count() - 1 < length - len(path) or not (reach & free & adj[start]):
            if len(failed) < MEMO_LIMIT:
                failed.add(key)
            return False
        for w in iter_bits(adj[end] & free):
            if twins[w] & free:
                continue
            path.append(w)
            if extend(start, within, w, visited | (1 << w)):
                return True
            path.pop()
        if len(failed) < MEMO_LIMIT:
            failed.add(key)
        return False

    for start in iter_bits(core):
        if twins[start] & core:
            continue
        within = core & ~((1 << (start + 1)) - 1)
        if within.bit_count() < length - 1:
            break
        path[:] = [start]
        if extend(start, within, start, 1 << start):
            return tuple(path)
    return None


def matching_in(adj: Sequence[int], size: int) -> Optional[tuple[int, ...]]:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(adj)))
    for v, neighbours in enumerate(adj):
        graph.add_edges_from((u, v) for u in iter_bits(neighbours) if u < v)
    matching = nx.max_weight_matching(graph, maxcardinality=True)
    pairs = sorted(tuple(sorted(edge)) for edge in matching)
    if len(pairs) < size:
        return None
    return tuple(v for pair in pairs[:size] for v in pair)


def target_in(
    adj: Sequence[int], target: TargetSpec, counter: NodeCounter
) -> Optional[tuple[int, ...]]:
    if target.kind == TargetKind.PATH:
        return path_in(adj, target.order, counter)
    if target.kind == TargetKind.EVEN_CYCLE:
        return cycle_in(adj, target.order, counter)
    return matching_in(adj, target.order // 2)


def _path_through(
    adj: Sequence[int], m: int, u: int, v: int, counter: NodeCounter
) -> Optional[tuple[int, ...]]:
    left: list[int] = []
    right: list[int] = []

    def count() -> int:
        return len(left) + len(right) + 2

    def grow_left(end: int, visited: int) -> bool:
        counter.tick()
        if count() == m:
            return True
        free = ~visited
        if reachable(adj, end, (free | (1 << end)) & ((1 << len(adj)) - 1)).bit_count() - 1 < m - count():
            return False
        for w in iter_bits(adj[end] & free):
            left.append(w)
            if grow_left(w, visited | (1 << w)):
                return True
            left.pop()
        return False

    def grow_right(end: int, visited: int) -> bool:
        counter.tick()
        if count() == m:
            return True
        left_end = left[-1] if left else u
        if grow_left(left_end, visited):
            return True
        for w in iter_bits(adj[end] & ~visited):
            right.append(w)
            if grow_right(w, visited | (1 << w)):
                return True
            right.pop()
        return False

    if m < 2:
        return (u,)
    if grow_right(v, (1 << u) | (1 << v)):
        return tuple(reversed(left)) + (u, v) + tuple(right)
    return None


def _cycle_through(
    adj: Sequence[int], length: int, u: int, v: int, counter: NodeCounter
) -> Optional[tuple[int, ...]]:
    full = (1 << len(adj)) - 1
    path = [u, v]

    def extend(end: int, visited: int) -> bool:
        counter.tick()
        if len(path) == length:
            return bool(adj[end] >> u & 1)
        free = full & ~visited
        reach = reachable(adj, end, free | (1 << end))
        if reach.bit_count() - 1 < length - len(path) or not (reach & free & adj[u]):
            return False
        for w in iter_bits(adj[end] & free):
            path.append(w)
            if extend(w, visited | (1 << w)):
                return True
            path.pop()
        return False

    if extend(v, (1 << u) | (1 << v)):
        return tuple(path)
    return None


def target_through_edge(
    adj: Sequence[int], target: TargetSpec, u: int, v: int, counter: NodeCounter
) -> Optional[tuple[int, ...]]:
    """A copy of target using edge (u, v); exact when no copy avoids that edge."""
    if target.order > len(adj):
        return None
    if target.kind == TargetKind.PATH:
        return _path_through(adj, target.order, u, v, counter)
    if target.kind == TargetKind.EVEN_CYCLE:
        return _cycle_through(adj, target.order, u, v, counter)
    return matching_in(adj, target.order // 2)


def find_mono_path(
    c: ColoredComplete, color: int, m: int, budget: Optional[int] = None
) -> Optional[Embedding]:
    _check_color(c, color)
    if m > c.n:
        return None
    counter = NodeCounter(budget)
    found = path_in(c.color_adjacency(color), m, counter)
    logging.debug("Path search P%s color %s: %s states", m, color, counter.nodes)
    if found is None:
        return None
    return Embedding(TargetSpec.path(m), color, found)


def find_mono_cycle(
    c: ColoredComplete, color: int, length: int, budget: Optional[int] = None
) -> Optional[Embedding]:
    _check_color(c, color)
    if length % 2:
        raise OddLengthError(f"Cycle length must be even. Got {length}")
    target = TargetSpec.cycle(length)
    counter = NodeCounter(budget)
    found = cycle_in(c.color_adjacency(color), length, counter)
    logging.debug("Cycle search C%s color %s: %s states", length, color, counter.nodes)
    if found is None:
        return None
    return Embedding(target, color, found)


def find_mono_matching(c: ColoredComplete, color: int, size: int) -> Optional[Embedding]:
    _check_color(c, color)
    target = TargetSpec.matching(size)
    found = matching_in(c.color_adjacency(color), size)
    if found is None:
        return None
    return Embedding(target, color, found)


def has_target(
    c: ColoredComplete, color: int, target: TargetSpec, budget: Optional[int] = None
) -> Optional[Embedding]:
    if target.kind == TargetKind.PATH:
        return find_mono_path(c, color, target.order, budget)
    if target.kind == TargetKind.EVEN_CYCLE:
        return find_mono_cycle(c, color, target.order, budget)
    return find_mono_matching(c, color, target.order // 2)
