import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .coloring import ColoredComplete, Embedding, find_rainbow_triangle


class DecompositionError(ValueError):
    pass


class NotGallaiError(DecompositionError):
    pass


class TooSmallError(DecompositionError):
    pass


class NotMonochromaticBetweenError(DecompositionError):
    def __init__(self, i: int, j: int) -> None:
        super().__init__(f"Edges between parts {i} and {j} use more than one color")
        self.i = i
        self.j = j


@dataclass(frozen=True)
class GallaiPartition:
    parts: tuple[frozenset[int], ...]
    reduced: ColoredComplete
    inter_colors: frozenset[int]

    @property
    def p(self) -> int:
        return len(self.parts)


@dataclass
class PartitionReport:
    violations: list[str] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.violations


def _sees(c: ColoredComplete, w: int, members: Iterable[int]) -> set[int]:
    return {c.color(w, v) for v in members}


def smallest_module(c: ColoredComplete, seed: Iterable[int]) -> frozenset[int]:
    module = set(seed)
    if not module:
        raise DecompositionError("A module closure needs a nonempty seed")
    grown = True
    while grown:
        grown = False
        for w in range(c.n):
            if w in module:
                continue
            if len(_sees(c, w, module)) > 1:
                module.add(w)
                grown = True
    return frozenset(module)


def order_parts(parts: Iterable[Iterable[int]]) -> tuple[frozenset[int], ...]:
    frozen = [frozenset(part) for part in parts]
    return tuple(sorted(frozen, key=lambda part: (-len(part), min(part))))


def reduced_coloring(c: ColoredComplete, parts: Sequence[Iterable[int]]) -> ColoredComplete:
    groups = [sorted(part) for part in parts]
    values: list[int] = []
    for j in range(len(groups)):
        for i in range(j):
            seen = {c.color(u, v) for u in groups[i] for v in groups[j]}
            if len(seen) != 1:
                raise NotMonochromaticBetweenError(i, j)
            values.append(seen.pop())
    return ColoredComplete(n=len(groups), k=c.k, colors=tuple(values))


def _closed_partition(c: ColoredComplete, palette: frozenset[int]) -> list[set[int]]:
    """Finest partition into modules whose inter-part edges only use colors in palette."""
    owner = list(range(c.n))

    def find(v: int) -> int:
        while owner[v] != v:
            owner[v] = owner[owner[v]]
            v = owner[v]
        return v

    def union(u: int, v: int) -> None:
        ru, rv = find(u), find(v)
        if ru != rv:
            owner[max(ru, rv)] = min(ru, rv)

    for u, v in combinations(range(c.n), 2):
        if c.color(u, v) not in palette:
            union(u, v)
    while True:
        groups: dict[int, set[int]] = {}
        for v in range(c.n):
            groups.setdefault(find(v), set()).add(v)
        if len(groups) == 1:
            return list(groups.values())
        merged = False
        for part in groups.values():
            module = smallest_module(c, part)
            if module != part:
                first = min(part)
                for v in module:
                    union(first, v)
                merged = True
        if not merged:
            return list(groups.values())


def gallai_partition(c: ColoredComplete) -> GallaiPartition:
    if c.n < 2:
        raise TooSmallError(f"A Gallai partition needs at least 2 vertices. Got n={c.n}")
    triangle = find_rainbow_triangle(c)
    if triangle is not None:
        raise NotGallaiError(f"Coloring has the rainbow triangle {triangle}")
    used = sorted(c.used_colors())
    if len(used) <= 2:
        palettes = [frozenset(used)]
    else:
        palettes = [frozenset(pair) for pair in combinations(used, 2)]
    best: Optional[tuple[frozenset[int], ...]] = None
    for palette in palettes:
        parts = _closed_partition(c, palette)
        if len(parts) < 2:
            continue
        ordered = order_parts(parts)
        if best is None or _partition_key(ordered) < _partition_key(best):
            best = ordered
    if best is None:
        # Unreachable for Gallai colorings.
        raise NotGallaiError("No Gallai partition exists for this coloring")
    reduced = reduced_coloring(c, best)
    logging.debug("Gallai partition of %s: p=%s", c, len(best))
    return GallaiPartition(parts=best, reduced=reduced, inter_colors=frozenset(reduced.used_colors()))


def _partition_key(parts: tuple[frozenset[int], ...]) -> tuple:
    return (-len(parts), [sorted(part) for part in parts])


def validate_partition(c: ColoredComplete, g: GallaiPartition) -> PartitionReport:
    report = PartitionReport()
    seen: set[int] = set()
    for index, part in enumerate(g.parts):
        if not part:
            report.violations.append(f"part {index} is empty")
        overlap = seen & part
        if overlap:
            report.violations.append(f"part {index} overlaps earlier parts on {sorted(overlap)}")
        seen |= part
    if seen != set(range(c.n)):
        missing = sorted(set(range(c.n)) - seen)
        extra = sorted(seen - set(range(c.n)))
        report.violations.append(f"parts do not cover the vertex set (missing {missing}, extra {extra})")
    if len(g.parts) < 2:
        report.violations.append(f"p >= 2 fails (p={len(g.parts)})")
    between: set[int] = set()
    for j in range(len(g.parts)):
        for i in range(j):
            colors = {c.color(u, v) for u in g.parts[i] for v in g.parts[j] if u != v}
            between |= colors
            if len(colors) > 1:
                report.violations.append(
                    f"edges between parts {i} and {j} are not monochromatic ({sorted(colors)})"
                )
            elif colors and g.reduced.n == len(g.parts) and g.reduced.color(i, j) not in colors:
                report.violations.append(
                    f"reduced edge ({i}, {j}) has color {g.reduced.color(i, j)}, parts use {sorted(colors)}"
                )
    if len(between) > 2:
        report.violations.append(f"|interColors| <= 2 fails ({sorted(between)} between parts)")
    if g.reduced.n != len(g.parts):
        report.violations.append(f"reduced coloring has {g.reduced.n} vertices for {len(g.parts)} parts")
    if set(g.inter_colors) != between:
        report.violations.append(
            f"interColors {sorted(g.inter_colors)} differ from colors between parts {sorted(between)}"
        )
    return report


def lift_embedding(g: GallaiPartition, embedding: Embedding) -> Embedding:
    """Map an embedding in the reduced coloring to one using each part's least vertex."""
    representatives = [min(part) for part in g.parts]
    return Embedding(
        embedding.target,
        embedding.color,
        tuple(representatives[v] for v in embedding.vertices),
    )
