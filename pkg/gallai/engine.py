import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .coloring import ColoredComplete, Embedding, TargetError, TargetSpec, from_colors, pair_count, pair_index
from .constructions import lower_bound_witness
from .formulas import GRInstance, gr_value
from .logging_utils import configure_worker_logging
from .search import NodeCounter, SearchBudgetExceeded, target_through_edge
from .verify import SearchStats, Verdict, VerdictReport, check_bad_coloring, describe_targets

DEFAULT_RAMSEY_CAP = 8
RECHECK_SAMPLE = 10


class RamseyCapError(ValueError):
    pass


@dataclass
class _PrunedLeaf:
    colors: tuple[int, ...]
    color: int
    vertices: tuple[int, ...]
    target: Optional[TargetSpec]


@dataclass
class SubtreeResult:
    witness: Optional[tuple[int, ...]]
    exhausted: bool
    nodes: int
    leaves: int
    rechecked: int
    recheck_failures: list[str] = field(default_factory=list)


def _recheck(leaf: _PrunedLeaf) -> Optional[str]:
    """Naive re-verification of why a branch was cut."""
    if leaf.target is None:
        a, b, x = leaf.vertices
        seen = {leaf.colors[pair_index(a, b)], leaf.colors[pair_index(a, x)], leaf.colors[pair_index(b, x)]}
        if len(seen) != 3:
            return f"triangle {leaf.vertices} is not rainbow"
        return None
    verts = leaf.vertices
    if len(set(verts)) != len(verts) or len(verts) != leaf.target.order:
        return f"{leaf.target.label} embedding {verts} has the wrong vertices"
    for u, v in Embedding(leaf.target, leaf.color, verts).edges():
        index = pair_index(u, v)
        if u == v or index >= len(leaf.colors) or leaf.colors[index] != leaf.color:
            return f"{leaf.target.label} edge ({u}, {v}) is not color {leaf.color}"
    return None


class ColoringSearch:
    """Depth-first assignment of edge colors in the order (0,1), (0,2), (1,2), (0,3), ...

    Branches are cut when a rainbow triangle closes (if Gallai-ness is required)
    or when the newest edge completes its color's target. Two symmetry rules keep
    one labeling per isomorphism class reachable: the colors on (0..v-1, v) are
    lexicographically at most those on (0..v-1, v+1), and among colors with equal
    targets a color appears only after every smaller one has.
    """

    def __init__(
        self,
        n: int,
        targets: Optional[Sequence[TargetSpec]],
        k: Optional[int] = None,
        require_gallai: bool = True,
        budget: Optional[int] = None,
        seed: int = 0,
    ) -> None:
        self.n = n
        self.targets = tuple(targets) if targets is not None else None
        self.k = len(self.targets) if self.targets is not None else (k or 1)
        self.require_gallai = require_gallai
        self.counter = NodeCounter(budget)
        self.edges = [(u, v) for v in range(1, n) for u in range(v)]
        self.colors = [0] * len(self.edges)
        self.adj = [[0] * n for _ in range(self.k + 1)]
        self.used = [0] * (self.k + 1)
        self.group_prev = [0] * (self.k + 1)
        for color in range(2, self.k + 1):
            if self.targets is None:
                self.group_prev[color] = color - 1
                continue
            for earlier in range(color - 1, 0, -1):
                if self.targets[earlier - 1] == self.targets[color - 1]:
                    self.group_prev[color] = earlier
                    break
        self.rng = random.Random(seed)
        self.sample: list[_PrunedLeaf] = []
        self.leaves = 0
        self.count_only = False
        self.complete = 0

    def allowed(self, index: int, color: int) -> bool:
        previous = self.group_prev[color]
        if previous and not self.used[previous]:
            return False
        u, v = self.edges[index]
        if v < 2 or u > v - 2:
            return True
        for row in range(u):
            left = self.colors[pair_index(row, v - 1)]
            right = self.colors[pair_index(row, v)]
            if left != right:
                return True
        return color >= self.colors[pair_index(u, v - 1)]

    def rainbow_at(self, u: int, v: int, color: int) -> Optional[tuple[int, int, int]]:
        for w in range(u):
            a = self.colors[pair_index(w, v)]
            b = self.colors[pair_index(w, u)]
            if a != b and a != color and b != color:
                return (w, u, v)
        return None

    def assign(self, index: int, color: int) -> None:
        u, v = self.edges[index]
        self.colors[index] = color
        self.adj[color][u] |= 1 << v
        self.adj[color][v] |= 1 << u
        self.used[color] += 1

    def unassign(self, index: int) -> None:
        u, v = self.edges[index]
        color = self.colors[index]
        self.colors[index] = 0
        self.adj[color][u] &= ~(1 << v)
        self.adj[color][v] &= ~(1 << u)
        self.used[color] -= 1

    def _prune(
        self, index: int, color: int, vertices: tuple[int, ...], target: Optional[TargetSpec]
    ) -> None:
        self.leaves += 1
        if len(self.sample) < RECHECK_SAMPLE:
            self.sample.append(self._leaf(index, color, vertices, target))
            return
        pick = self.rng.randrange(self.leaves)
        if pick < RECHECK_SAMPLE:
            self.sample[pick] = self._leaf(index, color, vertices, target)

    def _leaf(
        self, index: int, color: int, vertices: tuple[int, ...], target: Optional[TargetSpec]
    ) -> _PrunedLeaf:
        snapshot = list(self.colors[: index + 1])
        snapshot[index] = color
        return _PrunedLeaf(tuple(snapshot), color, vertices, target)

    def _try(self, index: int, color: int) -> bool:
        """Place color on edge index if no cut applies; True when the edge stays assigned."""
        u, v = self.edges[index]
        self.counter.tick()
        if self.require_gallai:
            triangle = self.rainbow_at(u, v, color)
            if triangle is not None:
                self._prune(index, color, triangle, None)
                return False
        self.assign(index, color)
        if self.targets is not None:
            target = self.targets[color - 1]
            found = target_through_edge(self.adj[color], target, u, v, self.counter)
            if found is not None:
                self._prune(index, color, found, target)
                self.unassign(index)
                return False
        return True

    def dfs(self, index: int) -> bool:
        if index == len(self.edges):
            if self.count_only:
                self.complete += 1
                return False
            return True
        for color in range(1, self.k + 1):
            if not self.allowed(index, color):
                continue
            if not self._try(index, color):
                continue
            if self.dfs(index + 1):
                return True
            self.unassign(index)
        return False

    def replay(self, prefix: Sequence[int]) -> None:
        for index, color in enumerate(prefix):
            self.assign(index, color)

    def prefixes(self, depth: int) -> list[tuple[int, ...]]:
        """All surviving assignments of the first `depth` edges, in search order."""
        found: list[tuple[int, ...]] = []

        def walk(index: int) -> None:
            if index == depth:
                found.append(tuple(self.colors[:depth]))
                return
            for color in range(1, self.k + 1):
                if not self.allowed(index, color) or not self._try(index, color):
                    continue
                walk(index + 1)
                self.unassign(index)

        walk(0)
        return found

    def recheck(self) -> list[str]:
        return [problem for leaf in self.sample if (problem := _recheck(leaf))]

    def witness(self) -> ColoredComplete:
        return from_colors(self.n, self.k, self.colors)


def _run_subtree(
    n: int,
    targets: Optional[tuple[TargetSpec, ...]],
    k: int,
    require_gallai: bool,
    budget: Optional[int],
    prefix: tuple[int, ...],
) -> SubtreeResult:
    search = ColoringSearch(n, targets, k=k, require_gallai=require_gallai, budget=budget)
    search.replay(prefix)
    try:
        found = search.dfs(len(prefix))
    except SearchBudgetExceeded:
        return SubtreeResult(None, True, search.counter.nodes, search.leaves, 0)
    failures = [] if found else search.recheck()
    witness = tuple(search.colors) if found else None
    return SubtreeResult(witness, False, search.counter.nodes, search.leaves, len(search.sample), failures)


def _run(
    n: int,
    targets: Optional[tuple[TargetSpec, ...]],
    k: int,
    require_gallai: bool,
    budget: Optional[int],
    threads: int,
) -> list[SubtreeResult]:
    if threads <= 1 or pair_count(n) < 2:
        return [_run_subtree(n, targets, k, require_gallai, budget, ())]
    splitter = ColoringSearch(n, targets, k=k, require_gallai=require_gallai)
    depth = 1
    prefixes = splitter.prefixes(depth)
    while len(prefixes) < 4 * threads and depth < pair_count(n):
        depth += 1
        prefixes = splitter.prefixes(depth)
    if not prefixes:
        return [SubtreeResult(None, False, splitter.counter.nodes, splitter.leaves, 0)]
    share = None if budget is None else max(1, budget // len(prefixes))
    logging.info("Splitting K_%s search into %s subtrees over %s workers", n, len(prefixes), threads)
    with ProcessPoolExecutor(
        max_workers=threads,
        initializer=configure_worker_logging,
        initargs=(logging.getLogger().getEffectiveLevel(),),
    ) as pool:
        results = list(
            pool.map(
                _run_subtree,
                *zip(*[(n, targets, k, require_gallai, share, prefix) for prefix in prefixes]),
            )
        )
    return results


def _aggregate(
    claim: str,
    n: int,
    k: int,
    results: list[SubtreeResult],
    started: float,
) -> VerdictReport:
    stats = SearchStats(
        nodes=sum(result.nodes for result in results),
        seconds=time.perf_counter() - started,
        leaves=sum(result.leaves for result in results),
    )
    for result in results:
        if result.witness is not None:
            return VerdictReport(
                claim=claim,
                verdict=Verdict.REFUTED,
                coloring=from_colors(n, k, result.witness),
                stats=stats,
            )
    if any(result.exhausted for result in results):
        return VerdictReport(claim=claim, verdict=Verdict.EXHAUSTED_BUDGET, stats=stats)
    failures = [problem for result in results for problem in result.recheck_failures]
    if failures:
        raise RuntimeError(f"Pruned leaves failed re-verification: {failures[:3]}")
    stats.rechecked = sum(result.rechecked for result in results)
    return VerdictReport(claim=claim, verdict=Verdict.VERIFIED, stats=stats)


def _always_present(n: int, targets: Sequence[TargetSpec]) -> Optional[Embedding]:
    """A one-vertex path sits in every color of any K_n with n >= 1."""
    if n < 1:
        return None
    for color, target in enumerate(targets, start=1):
        if target.order <= 1:
            return Embedding(target, color, (0,))
    return None


def search_bad_gallai(
    n: int,
    targets: Sequence[TargetSpec],
    budget: Optional[int] = None,
    threads: int = 1,
) -> VerdictReport:
    if not targets:
        raise TargetError("search_bad_gallai needs at least one target")
    targets = tuple(targets)
    k = len(targets)
    claim = f"every Gallai {k}-coloring of K_{n} contains a target [{describe_targets(targets)}]"
    present = _always_present(n, targets)
    if present is not None:
        return VerdictReport(claim=claim, verdict=Verdict.VERIFIED, embedding=present)
    started = time.perf_counter()
    results = _run(n, targets, k, True, budget, threads)
    report = _aggregate(claim, n, k, results, started)
    if report.coloring is not None:
        check = check_bad_coloring(report.coloring, targets)
        if check.verdict != Verdict.VERIFIED:
            raise RuntimeError(f"Search produced an invalid witness: {check.summary()}")
    logging.info("%s -> %s (%s nodes)", claim, report.verdict.value, report.stats.nodes)
    return report


def exhaustive_ramsey2(
    t1: TargetSpec,
    t2: TargetSpec,
    n: int,
    budget: Optional[int] = None,
    threads: int = 1,
    cap: int = DEFAULT_RAMSEY_CAP,
) -> VerdictReport:
    if n > cap:
        raise RamseyCapError(f"Full 2-coloring enumeration is capped at N={cap}. Got N={n}")
    targets = (t1, t2)
    claim = f"every 2-coloring of K_{n} has {t1.label} in color 1 or {t2.label} in color 2"
    present = _always_present(n, targets)
    if present is not None:
        return VerdictReport(claim=claim, verdict=Verdict.VERIFIED, embedding=present)
    started = time.perf_counter()
    results = _run(n, targets, 2, False, budget, threads)
    report = _aggregate(claim, n, 2, results, started)
    if report.verdict == Verdict.EXHAUSTED_BUDGET:
        raise SearchBudgetExceeded(budget if budget is not None else NodeCounter().budget)
    if report.coloring is not None:
        check = check_bad_coloring(report.coloring, targets)
        if check.verdict != Verdict.VERIFIED:
            raise RuntimeError(f"Search produced an invalid witness: {check.summary()}")
    logging.info("%s -> %s (%s nodes)", claim, report.verdict.value, report.stats.nodes)
    return report


def count_symmetry_reduced(n: int, k: int, require_gallai: bool = False) -> int:
    """Number of complete colorings the symmetry rules leave reachable (no target cuts)."""
    search = ColoringSearch(n, None, k=k, require_gallai=require_gallai)
    search.count_only = True
    search.dfs(0)
    return search.complete


def verify_gr_point(
    inst: GRInstance, budget: Optional[int] = None, threads: int = 1
) -> VerdictReport:
    value = gr_value(inst)
    targets = inst.targets()
    started = time.perf_counter()
    witness = lower_bound_witness(inst, budget)
    lower = check_bad_coloring(witness, targets, budget)
    lower.claim = f"{inst.describe()} > {value - 1}: " + lower.claim
    lower.coloring = witness
    upper = search_bad_gallai(value, targets, budget, threads)
    if lower.verdict == Verdict.VERIFIED and upper.verdict == Verdict.VERIFIED:
        verdict = Verdict.VERIFIED
    elif upper.verdict == Verdict.REFUTED or lower.verdict == Verdict.REFUTED:
        verdict = Verdict.REFUTED
    else:
        verdict = Verdict.EXHAUSTED_BUDGET
    return VerdictReport(
        claim=f"{inst.describe()} = {value}",
        verdict=verdict,
        stats=lower.stats.merge(upper.stats).merge(SearchStats(seconds=time.perf_counter() - started)),
        parts=[lower, upper],
    )
