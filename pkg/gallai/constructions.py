import logging
import random
from dataclasses import dataclass
from typing import Optional

from .coloring import (
    ColorOutOfRangeError,
    ColoredComplete,
    VertexOutOfRangeError,
    monochromatic,
    pair_count,
    substitute,
)
from .formulas import GRInstance, Provenance, gr_value, gr_value_provenance
from .verify import Verdict, check_bad_coloring


class ConstructionInvalidError(RuntimeError):
    pass


@dataclass(frozen=True)
class WitnessLayers:
    base_order: int
    # (color, clique size) for every color after the first, in color order.
    layers: tuple[tuple[int, int], ...]

    @property
    def order(self) -> int:
        return self.base_order + sum(size for _, size in self.layers)


def witness_layers(inst: GRInstance) -> WitnessLayers:
    i_1 = inst.i_vector[0]
    base = 2 + min(i_1, inst.n_star - 2) + i_1
    layers = tuple((j, inst.i_vector[j - 1]) for j in range(2, inst.k + 1))
    return WitnessLayers(base_order=base, layers=layers)


def layered_coloring(layers: WitnessLayers, k: int) -> ColoredComplete:
    """Color-1 clique on the base, then each layer as a clique joined to everything before it in its own color."""
    order = layers.order
    layer_color = [1] * layers.base_order
    for color, size in layers.layers:
        layer_color.extend([color] * size)
    values: list[int] = []
    for v in range(order):
        # Both ends inside the base get color 1; otherwise the later vertex decides.
        values.extend([layer_color[v]] * v)
    return ColoredComplete(n=order, k=k, colors=tuple(values))


def lower_bound_witness(inst: GRInstance, budget: Optional[int] = None) -> ColoredComplete:
    layers = witness_layers(inst)
    coloring = layered_coloring(layers, inst.k)
    expected = gr_value(inst) - 1
    if coloring.n != expected:
        raise ConstructionInvalidError(
            f"{inst.describe()} witness has {coloring.n} vertices, expected {expected}"
        )
    report = check_bad_coloring(coloring, inst.targets(), budget)
    if report.verdict != Verdict.VERIFIED:
        raise ConstructionInvalidError(f"{inst.describe()} witness failed its check: {report.summary()}")
    if gr_value_provenance(inst) == Provenance.CONJECTURAL:
        logging.info("%s with n=%s lies outside the proven range", inst.describe(), inst.n)
    logging.debug("Certified %s witness on %s vertices", inst.describe(), coloring.n)
    return coloring


def _random_two_colored(n: int, k: int, rng: random.Random) -> ColoredComplete:
    if k == 1:
        return monochromatic(n, 1, k)
    first, second = rng.sample(range(1, k + 1), 2)
    values = tuple(rng.choice((first, second)) for _ in range(pair_count(n)))
    return ColoredComplete(n=n, k=k, colors=values)


def _split(n: int, parts: int, rng: random.Random) -> list[int]:
    cuts = sorted(rng.sample(range(1, n), parts - 1))
    bounds = [0, *cuts, n]
    return [bounds[i + 1] - bounds[i] for i in range(parts)]


def _random_gallai(n: int, k: int, depth: int, rng: random.Random) -> ColoredComplete:
    if n == 1:
        return monochromatic(1, 1, k)
    if depth == 0 or n == 2:
        return _random_two_colored(n, k, rng)
    parts = rng.randint(2, n)
    sizes = _split(n, parts, rng)
    base = _random_two_colored(parts, k, rng)
    blocks = [_random_gallai(size, k, depth - 1, rng) for size in sizes]
    result = substitute(base, blocks)
    return ColoredComplete(n=result.n, k=k, colors=result.colors, blocks=result.blocks)


def random_gallai(n: int, k: int, depth: int, seed: Optional[int] = None) -> ColoredComplete:
    if n < 1:
        raise VertexOutOfRangeError(f"random_gallai needs n >= 1. Got {n}")
    if k < 1:
        raise ColorOutOfRangeError(f"random_gallai needs k >= 1. Got {k}")
    return _random_gallai(n, k, max(depth, 0), random.Random(seed))
