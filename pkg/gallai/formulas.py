from dataclasses import dataclass
from enum import Enum
from itertools import combinations_with_replacement
from typing import Iterator, Sequence

from .coloring import TargetSpec


class FormulaError(ValueError):
    pass


class InvalidIVectorError(FormulaError):
    pass


class RangeViolationError(FormulaError):
    pass


class TopKind(str, Enum):
    EVEN_CYCLE = "cycle"
    ODD_PATH = "path"


class Family(str, Enum):
    EVEN_CYCLE = "cycle"
    EVEN_PATH = "even-path"
    MATCHING = "matching"
    ODD_PATH = "odd-path"


class Provenance(str, Enum):
    PROVEN = "proven"
    CONJECTURAL = "conjectural"


# n values for which the closed form is a theorem (n = 3, 4 and n = 5, 6).
PROVEN_N = frozenset({3, 4, 5, 6})
PROVEN_ODD_PATH_N = frozenset(range(1, 7))
PROVEN_PATH_INDEX = 5


@dataclass(frozen=True)
class GRInstance:
    n: int
    i_vector: tuple[int, ...]
    top: TopKind = TopKind.EVEN_CYCLE

    def __post_init__(self) -> None:
        if self.n < 3:
            raise InvalidIVectorError(f"n must be at least 3. Got {self.n}")
        if not self.i_vector:
            raise InvalidIVectorError("i-vector needs at least one entry (k >= 1)")
        for value in self.i_vector:
            if not 0 <= value <= self.n - 1:
                raise InvalidIVectorError(
                    f"i-vector entries must lie in 0..{self.n - 1}. Got {list(self.i_vector)}"
                )
        if any(a < b for a, b in zip(self.i_vector, self.i_vector[1:])):
            raise InvalidIVectorError(
                f"i-vector must be non-increasing. Got {list(self.i_vector)}"
            )

    @classmethod
    def parse(cls, n: int, i_vector: str, top: str = "cycle") -> "GRInstance":
        try:
            values = tuple(int(part) for part in i_vector.split(",") if part.strip())
        except ValueError:
            raise InvalidIVectorError(f"Could not parse i-vector '{i_vector}'. Try 4,4,4") from None
        return cls(n=n, i_vector=values, top=TopKind(top))

    @property
    def k(self) -> int:
        return len(self.i_vector)

    @property
    def n_star(self) -> int:
        if self.top == TopKind.ODD_PATH and self.i_vector[0] == self.n - 1:
            return self.n + 1
        return self.n

    def target(self, j: int) -> TargetSpec:
        """G_{i_j} for color j (1-based)."""
        i = self.i_vector[j - 1]
        if i <= self.n - 2:
            return TargetSpec.path(2 * i + 3)
        if self.top == TopKind.ODD_PATH:
            return TargetSpec.path(2 * self.n + 1)
        return TargetSpec.cycle(2 * self.n)

    def targets(self) -> tuple[TargetSpec, ...]:
        return tuple(self.target(j) for j in range(1, self.k + 1))

    def describe(self) -> str:
        labels = ", ".join(target.label for target in self.targets())
        return f"GR({labels})"


def gr_value(inst: GRInstance) -> int:
    return 3 + min(inst.i_vector[0], inst.n_star - 2) + sum(inst.i_vector)


def gr_value_provenance(inst: GRInstance) -> Provenance:
    return Provenance.PROVEN if inst.n in PROVEN_N else Provenance.CONJECTURAL


def gr_k_family(n: int, k: int, family: Family) -> int:
    if k < 1:
        raise RangeViolationError(f"k must be at least 1. Got {k}")
    if family == Family.ODD_PATH:
        if n < 1:
            raise RangeViolationError(f"n must be at least 1 for P_(2n+1). Got {n}")
        return (n - 1) * k + n + 2
    if n < 3:
        raise RangeViolationError(f"n must be at least 3 for {family.value}. Got {n}")
    return (n - 1) * k + n + 1


def family_provenance(n: int, k: int, family: Family) -> Provenance:
    proven = PROVEN_ODD_PATH_N if family == Family.ODD_PATH else PROVEN_N
    return Provenance.PROVEN if n in proven else Provenance.CONJECTURAL


def family_target(n: int, family: Family) -> TargetSpec:
    if family == Family.EVEN_CYCLE:
        return TargetSpec.cycle(2 * n)
    if family == Family.EVEN_PATH:
        return TargetSpec.path(2 * n)
    if family == Family.MATCHING:
        return TargetSpec.matching(n)
    return TargetSpec.path(2 * n + 1)


def r2_even_cycle(n: int) -> int:
    if n < 3:
        raise RangeViolationError(f"R_2(C_2n) needs n >= 3. Got {n}")
    return 3 * n - 1


def r_path_cycle(m: int, n: int) -> int:
    if not 2 * n >= m >= 3:
        raise RangeViolationError(f"R(P_m, C_2n) needs 2n >= m >= 3. Got m={m}, n={n}")
    return 2 * n + m // 2 - 1


def r3_even_cycle_lower_bound(n: int) -> int:
    if n < 3:
        raise RangeViolationError(f"R_3(C_2n) >= 4n needs n >= 3. Got {n}")
    return 4 * n


def gr_all_paths(i_vector: Sequence[int]) -> int:
    """GR(P_{2i_1+3}, ..., P_{2i_k+3}) = 3 + max i_j + sum i_j."""
    if not i_vector:
        raise InvalidIVectorError("i-vector needs at least one entry (k >= 1)")
    if any(value < 0 for value in i_vector):
        raise InvalidIVectorError(f"i-vector entries must be non-negative. Got {list(i_vector)}")
    return 3 + max(i_vector) + sum(i_vector)


def gr_all_paths_provenance(i_vector: Sequence[int]) -> Provenance:
    if max(i_vector) <= PROVEN_PATH_INDEX:
        return Provenance.PROVEN
    return Provenance.CONJECTURAL


def iter_instances(n: int, k: int, top: TopKind = TopKind.EVEN_CYCLE) -> Iterator[GRInstance]:
    """Every non-increasing i-vector of length k over 0..n-1."""
    for combo in combinations_with_replacement(range(n - 1, -1, -1), k):
        yield GRInstance(n=n, i_vector=combo, top=top)
