from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional, Sequence


class ColoringError(ValueError):
    pass


class MissingEdgeError(ColoringError):
    pass


class DuplicateEdgeError(ColoringError):
    pass


class ColorOutOfRangeError(ColoringError):
    pass


class VertexOutOfRangeError(ColoringError):
    pass


class EmptyPartsError(ColoringError):
    pass


class TargetError(ColoringError):
    pass


def pair_index(u: int, v: int) -> int:
    """Position of the pair {u, v} in the order (0,1), (0,2), (1,2), (0,3), ..."""
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def pair_at(index: int) -> tuple[int, int]:
    v = 1
    while pair_count(v + 1) <= index:
        v += 1
    return index - pair_count(v), v


@dataclass(frozen=True)
class ColoredComplete:
    n: int
    k: int
    colors: tuple[int, ...]
    # Vertex ranges of the parts a substitution was built from; not part of equality.
    blocks: Optional[tuple[tuple[int, ...], ...]] = field(default=None, compare=False)

    def color(self, u: int, v: int) -> int:
        if u == v:
            raise VertexOutOfRangeError(f"No color on the loop ({u}, {v})")
        return self.colors[pair_index(u, v)]

    def edges(self) -> list[tuple[int, int, int]]:
        return [(u, v, self.color(u, v)) for u, v in combinations(range(self.n), 2)]

    def used_colors(self) -> set[int]:
        return set(self.colors)

    def color_adjacency(self, color: int) -> list[int]:
        """Adjacency bitmasks of the graph formed by edges of one color."""
        adj = [0] * self.n
        index = 0
        for v in range(1, self.n):
            for u in range(v):
                if self.colors[index] == color:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
                index += 1
        return adj

    def color_degree(self, v: int, color: int) -> int:
        return sum(1 for u in range(self.n) if u != v and self.color(u, v) == color)

    def __repr__(self) -> str:
        return f"<ColoredComplete n={self.n} k={self.k} used={sorted(self.used_colors())}>"


class TargetKind(str, Enum):
    PATH = "path"
    EVEN_CYCLE = "cycle"
    MATCHING = "matching"


_LABEL_PREFIX = {
    TargetKind.PATH: "P",
    TargetKind.EVEN_CYCLE: "C",
    TargetKind.MATCHING: "M",
}


@dataclass(frozen=True)
class TargetSpec:
    kind: TargetKind
    order: int

    def __post_init__(self) -> None:
        if self.kind == TargetKind.PATH and self.order < 1:
            raise TargetError(f"Path order must be at least 1. Got {self.order}")
        if self.kind == TargetKind.EVEN_CYCLE:
            if self.order % 2:
                raise TargetError(f"Even cycle order must be even. Got {self.order}")
            if self.order < 4:
                raise TargetError(f"Even cycle order must be at least 4. Got {self.order}")
        if self.kind == TargetKind.MATCHING and (self.order < 2 or self.order % 2):
            raise TargetError(f"Matching order must be even and at least 2. Got {self.order}")

    @classmethod
    def path(cls, order: int) -> "TargetSpec":
        return cls(TargetKind.PATH, order)

    @classmethod
    def cycle(cls, order: int) -> "TargetSpec":
        return cls(TargetKind.EVEN_CYCLE, order)

    @classmethod
    def matching(cls, size: int) -> "TargetSpec":
        return cls(TargetKind.MATCHING, 2 * size)

    @classmethod
    def parse(cls, text: str) -> "TargetSpec":
        raw = text.strip().upper().replace("_", "")
        if len(raw) < 2:
            raise TargetError(f"Could not parse target '{text}'. Try P7, C10 or M5")
        try:
            number = int(raw[1:])
        except ValueError:
            raise TargetError(f"Could not parse target '{text}'. Try P7, C10 or M5") from None
        if raw[0] == "P":
            return cls.path(number)
        if raw[0] == "C":
            return cls.cycle(number)
        if raw[0] == "M":
            return cls.matching(number)
        raise TargetError(f"Unknown target kind in '{text}'. Use P, C or M")

    @property
    def size(self) -> int:
        """Edge count of the target."""
        if self.kind == TargetKind.PATH:
            return self.order - 1
        if self.kind == TargetKind.EVEN_CYCLE:
            return self.order
        return self.order // 2

    @property
    def label(self) -> str:
        if self.kind == TargetKind.MATCHING:
            return f"M{self.order // 2}"
        return f"{_LABEL_PREFIX[self.kind]}{self.order}"

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Embedding:
    target: TargetSpec
    color: int
    vertices: tuple[int, ...]

    def edges(self) -> list[tuple[int, int]]:
        verts = self.vertices
        if self.target.kind == TargetKind.MATCHING:
            return [(verts[i], verts[i + 1]) for i in range(0, len(verts), 2)]
        pairs = list(zip(verts, verts[1:]))
        if self.target.kind == TargetKind.EVEN_CYCLE:
            pairs.append((verts[-1], verts[0]))
        return pairs

    def problems(self, c: ColoredComplete) -> list[str]:
        found: list[str] = []
        if len(self.vertices) != self.target.order:
            found.append(
                f"{self.target.label} needs {self.target.order} vertices, got {len(self.vertices)}"
            )
        if len(set(self.vertices)) != len(self.vertices):
            found.append("vertices repeat")
        if any(v < 0 or v >= c.n for v in self.vertices):
            found.append("vertex outside the coloring")
            return found
        for u, v in self.edges():
            if u == v or c.color(u, v) != self.color:
                found.append(f"edge ({u}, {v}) is not color {self.color}")
        return found

    def is_valid_in(self, c: ColoredComplete) -> bool:
        return not self.problems(c)


def make_coloring(n: int, k: int, edges: Iterable[tuple[int, int, int]]) -> ColoredComplete:
    if n < 1:
        raise VertexOutOfRangeError(f"A coloring needs at least one vertex. Got n={n}")
    if k < 1:
        raise ColorOutOfRangeError(f"A coloring needs at least one color. Got k={k}")
    colors: list[Optional[int]] = [None] * pair_count(n)
    for u, v, color in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise VertexOutOfRangeError(f"Edge ({u}, {v}) is not a pair of vertices in 0..{n - 1}")
        if not 1 <= color <= k:
            raise ColorOutOfRangeError(f"Edge ({u}, {v}) has color {color}; colors are 1..{k}")
        index = pair_index(u, v)
        if colors[index] is not None:
            raise DuplicateEdgeError(f"Edge ({min(u, v)}, {max(u, v)}) is colored twice")
        colors[index] = color
    for index, value in enumerate(colors):
        if value is None:
            u, v = pair_at(index)
            raise MissingEdgeError(f"Edge ({u}, {v}) has no color")
    return ColoredComplete(n=n, k=k, colors=tuple(colors))  # type: ignore[arg-type]


def from_colors(n: int, k: int, colors: Sequence[int]) -> ColoredComplete:
    """Build from a flat color list in pair_index order."""
    if len(colors) != pair_count(n):
        raise MissingEdgeError(f"Expected {pair_count(n)} edge colors for n={n}, got {len(colors)}")
    for index, color in enumerate(colors):
        if not 1 <= color <= k:
            u, v = pair_at(index)
            raise ColorOutOfRangeError(f"Edge ({u}, {v}) has color {color}; colors are 1..{k}")
    return ColoredComplete(n=n, k=k, colors=tuple(colors))


def monochromatic(n: int, color: int = 1, k: Optional[int] = None) -> ColoredComplete:
    palette = max(color, k or 1)
    return ColoredComplete(n=n, k=palette, colors=(color,) * pair_count(n))


def two_colored(
    n: int, first_edges: Iterable[tuple[int, int]], colors: tuple[int, int] = (1, 2), k: Optional[int] = None
) -> ColoredComplete:
    """Pairs in first_edges get colors[0]; every other pair gets colors[1]."""
    values = [colors[1]] * pair_count(n)
    for u, v in first_edges:
        values[pair_index(u, v)] = colors[0]
    return ColoredComplete(n=n, k=max(max(colors), k or 1), colors=tuple(values))


def induced(c: ColoredComplete, vertices: Sequence[int]) -> ColoredComplete:
    order = list(vertices)
    values = [c.color(order[u], order[v]) for v in range(len(order)) for u in range(v)]
    return ColoredComplete(n=len(order), k=c.k, colors=tuple(values))


def permute(c: ColoredComplete, order: Sequence[int]) -> ColoredComplete:
    """Relabel so that new vertex i is old vertex order[i]."""
    if sorted(order) != list(range(c.n)):
        raise VertexOutOfRangeError("Relabeling must be a permutation of the vertices")
    return induced(c, order)


def find_rainbow_triangle(c: ColoredComplete) -> Optional[tuple[int, int, int]]:
    n = c.n
    for a in range(n):
        for b in range(a + 1, n):
            ab = c.colors[pair_index(a, b)]
            for x in range(b + 1, n):
                ax = c.colors[pair_index(a, x)]
                if ax == ab:
                    continue
                bx = c.colors[pair_index(b, x)]
                if bx != ab and bx != ax:
                    return (a, b, x)
    return None


def is_gallai(c: ColoredComplete) -> bool:
    return find_rainbow_triangle(c) is None


def substitute(base: ColoredComplete, parts: Sequence[ColoredComplete]) -> ColoredComplete:
    if not parts:
        raise EmptyPartsError("Substitution needs at least one part")
    if len(parts) != base.n:
        raise EmptyPartsError(f"Base has {base.n} vertices but {len(parts)} parts were given")
    offsets: list[int] = []
    owner: list[int] = []
    total = 0
    for block, part in enumerate(parts):
        offsets.append(total)
        owner.extend([block] * part.n)
        total += part.n
    values: list[int] = []
    for v in range(total):
        bv = owner[v]
        for u in range(v):
            bu = owner[u]
            if bu == bv:
                values.append(parts[bu].color(u - offsets[bu], v - offsets[bv]))
            else:
                values.append(base.color(bu, bv))
    blocks = tuple(tuple(range(offsets[i], offsets[i] + part.n)) for i, part in enumerate(parts))
    palette = max([base.k, *(part.k for part in parts)])
    return ColoredComplete(n=total, k=palette, colors=tuple(values), blocks=blocks)
