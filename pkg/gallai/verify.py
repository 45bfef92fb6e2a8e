import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Sequence

from .coloring import ColoredComplete, Embedding, TargetError, TargetSpec, find_rainbow_triangle
from .search import SearchBudgetExceeded, has_target


class Verdict(str, Enum):
    VERIFIED = "Verified"
    REFUTED = "Refuted"
    EXHAUSTED_BUDGET = "Exhausted-Budget"


EXIT_CODES = {
    Verdict.VERIFIED: 0,
    Verdict.REFUTED: 1,
    Verdict.EXHAUSTED_BUDGET: 2,
}


@dataclass
class SearchStats:
    nodes: int = 0
    seconds: float = 0.0
    leaves: int = 0
    rechecked: int = 0

    def merge(self, other: "SearchStats") -> "SearchStats":
        return SearchStats(
            nodes=self.nodes + other.nodes,
            seconds=max(self.seconds, other.seconds),
            leaves=self.leaves + other.leaves,
            rechecked=self.rechecked + other.rechecked,
        )


@dataclass
class VerdictReport:
    claim: str
    verdict: Verdict
    embedding: Optional[Embedding] = None
    triangle: Optional[tuple[int, int, int]] = None
    coloring: Optional[ColoredComplete] = None
    stats: SearchStats = field(default_factory=SearchStats)
    parts: list["VerdictReport"] = field(default_factory=list)
    note: Optional[str] = None

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def summary(self) -> str:
        line = f"{self.verdict.value}: {self.claim}"
        if self.triangle is not None:
            line += f" | rainbow triangle {self.triangle}"
        if self.embedding is not None:
            line += (
                f" | {self.embedding.target.label} in color {self.embedding.color}: "
                f"{list(self.embedding.vertices)}"
            )
        if self.coloring is not None:
            line += f" | witness on {self.coloring.n} vertices"
        if self.note:
            line += f" | {self.note}"
        return line

    def to_record(self) -> dict[str, Any]:
        """Flat structure for line-delimited output; wall time is left out so output is stable."""
        record: dict[str, Any] = {
            "claim": self.claim,
            "verdict": self.verdict.value,
            "nodes": self.stats.nodes,
        }
        if self.triangle is not None:
            record["triangle"] = list(self.triangle)
        if self.embedding is not None:
            record["embedding"] = {
                "target": self.embedding.target.label,
                "color": self.embedding.color,
                "vertices": list(self.embedding.vertices),
            }
        if self.coloring is not None:
            record["witness"] = {"n": self.coloring.n, "k": self.coloring.k}
        if self.note:
            record["note"] = self.note
        if self.parts:
            record["parts"] = [part.to_record() for part in self.parts]
        return record


def describe_targets(targets: Sequence[TargetSpec]) -> str:
    return ", ".join(f"{j}:{target.label}" for j, target in enumerate(targets, start=1))


def check_bad_coloring(
    c: ColoredComplete, targets: Sequence[TargetSpec], budget: Optional[int] = None
) -> VerdictReport:
    if len(targets) != c.k:
        raise TargetError(f"Need one target per color: k={c.k}, got {len(targets)} targets")
    claim = f"K_{c.n} coloring is Gallai and avoids [{describe_targets(targets)}]"
    started = time.perf_counter()
    triangle = find_rainbow_triangle(c)
    if triangle is not None:
        return VerdictReport(
            claim=claim,
            verdict=Verdict.REFUTED,
            triangle=triangle,
            stats=SearchStats(seconds=time.perf_counter() - started),
        )
    for color, target in enumerate(targets, start=1):
        try:
            embedding = has_target(c, color, target, budget)
        except SearchBudgetExceeded as exc:
            logging.warning("Budget exhausted checking %s in color %s", target.label, color)
            return VerdictReport(
                claim=claim,
                verdict=Verdict.EXHAUSTED_BUDGET,
                stats=SearchStats(nodes=exc.budget, seconds=time.perf_counter() - started),
                note=f"color {color} undecided",
            )
        if embedding is not None:
            return VerdictReport(
                claim=claim,
                verdict=Verdict.REFUTED,
                embedding=embedding,
                stats=SearchStats(seconds=time.perf_counter() - started),
            )
    return VerdictReport(
        claim=claim,
        verdict=Verdict.VERIFIED,
        stats=SearchStats(seconds=time.perf_counter() - started),
    )
