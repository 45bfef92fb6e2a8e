import logging
from datetime import datetime
from functools import lru_cache
from pathlib import Path
from typing import Optional, Sequence

from sqlalchemy import Column, DateTime, Integer, String, Text, create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import declarative_base, sessionmaker

from .coloring import TargetSpec
from .verify import VerdictReport

Base = declarative_base()


class RunRecord(Base):
    __tablename__ = "runs"

    id = Column(Integer, primary_key=True, autoincrement=True)
    entry_timestamp = Column(DateTime, default=datetime.now, nullable=False)
    command = Column(String, nullable=False)
    n = Column(Integer, nullable=True)
    k = Column(Integer, nullable=True)
    targets = Column(String, nullable=True)  # Comma-separated labels, e.g. "C10,C10"
    verdict = Column(String, nullable=True)
    provenance = Column(String, nullable=True)
    nodes = Column(Integer, nullable=True)
    claim = Column(String, nullable=True)
    certificate = Column(Text, nullable=True)

    def __repr__(self):
        return f"<RunRecord {self.id}: {self.command} n={self.n} {self.verdict}>"


@lru_cache(maxsize=None)
def _engine(path: Path) -> Engine:
    return create_engine(f"sqlite:///{path}", echo=False)


def _session(path: Path):
    return sessionmaker(bind=_engine(path))()


def init_db(path: Path) -> None:
    """Create tables if they don't exist."""
    path.parent.mkdir(parents=True, exist_ok=True)
    Base.metadata.create_all(_engine(path))


def record_run(
    path: Path,
    command: str,
    report: Optional[VerdictReport] = None,
    n: Optional[int] = None,
    k: Optional[int] = None,
    targets: Sequence[TargetSpec] = (),
    provenance: Optional[str] = None,
    certificate: Optional[str] = None,
) -> int:
    init_db(path)
    session = _session(path)
    try:
        record = RunRecord(
            command=command,
            n=n,
            k=k,
            targets=",".join(target.label for target in targets) or None,
            verdict=report.verdict.value if report is not None else None,
            provenance=provenance,
            nodes=report.stats.nodes if report is not None else None,
            claim=report.claim if report is not None else None,
            certificate=certificate,
        )
        session.add(record)
        session.commit()
        logging.info("Recorded %s run as ledger entry %s", command, record.id)
        return record.id
    finally:
        session.close()


def fetch_runs(path: Path, limit: int) -> list[RunRecord]:
    init_db(path)
    session = _session(path)
    try:
        query = session.query(RunRecord).order_by(RunRecord.id.desc())
        return list(reversed(query.limit(limit).all()))
    finally:
        session.close()


def fetch_run(path: Path, run_id: int) -> Optional[RunRecord]:
    init_db(path)
    session = _session(path)
    try:
        record = session.query(RunRecord).filter(RunRecord.id == run_id).one_or_none()
        if record:
            session.expunge(record)
        return record
    finally:
        session.close()


def delete_run(path: Path, run_id: int) -> bool:
    init_db(path)
    session = _session(path)
    try:
        record = session.query(RunRecord).filter(RunRecord.id == run_id).one_or_none()
        if not record:
            return False
        session.delete(record)
        session.commit()
        return True
    finally:
        session.close()


def format_table(headers: list[str], rows: list[list[str]]) -> str:
    """Return a simple aligned table for terminal output."""
    if not rows:
        return ""
    widths = [len(header) for header in headers]
    for row in rows:
        for idx, cell in enumerate(row):
            widths[idx] = max(widths[idx], len(cell))
    header_line = " | ".join(header.ljust(widths[idx]) for idx, header in enumerate(headers))
    divider = "-+-".join("-" * widths[idx] for idx in range(len(headers)))
    body_lines = [" | ".join(cell.ljust(widths[idx]) for idx, cell in enumerate(row)) for row in rows]
    return "\n".join([header_line, divider, *body_lines])


def render_runs(runs: list[RunRecord]) -> str:
    if not runs:
        return "No runs recorded."
    headers = ["ID", "When", "Command", "n", "k", "Targets", "Verdict", "Provenance", "Nodes"]
    rows: list[list[str]] = []
    for run in runs:
        rows.append(
            [
                str(run.id),
                run.entry_timestamp.strftime("%Y-%m-%d %H:%M"),
                run.command,
                "" if run.n is None else str(run.n),
                "" if run.k is None else str(run.k),
                run.targets or "",
                run.verdict or "",
                run.provenance or "",
                "" if run.nodes is None else str(run.nodes),
            ]
        )
    return format_table(headers, rows)
