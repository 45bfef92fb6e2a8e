import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

from . import __version__
from .coloring import ColoredComplete, ColoringError, TargetSpec, find_rainbow_triangle, make_coloring
from .formulas import (
    GRInstance,
    Provenance,
    gr_value,
    gr_value_provenance,
)
from .search import SearchBudgetExceeded, has_target
from .verify import SearchStats, Verdict, VerdictReport, describe_targets

FORMAT_HEADER = "gallai-certificate"
FORMAT_VERSION = 1


class CertificateSyntaxError(ValueError):
    pass


class CertificateSemanticError(ValueError):
    pass


@dataclass(frozen=True)
class Claims:
    gallai: bool
    # One entry per color: True claims color j has no copy of its target.
    absent: tuple[bool, ...]


@dataclass(frozen=True)
class VerificationBlock:
    verdict: Verdict
    tool_version: str
    nodes: int = 0


@dataclass(frozen=True)
class Certificate:
    n: int
    k: int
    edges: tuple[tuple[int, int, int], ...]
    targets: tuple[TargetSpec, ...] = ()
    claims: Optional[Claims] = None
    verification: Optional[VerificationBlock] = None
    provenance: Provenance = Provenance.PROVEN
    color_names: tuple[tuple[int, str], ...] = ()
    instance: Optional[GRInstance] = None
    format_version: int = FORMAT_VERSION

    def coloring(self) -> ColoredComplete:
        try:
            return make_coloring(self.n, self.k, self.edges)
        except ColoringError as exc:
            raise CertificateSemanticError(str(exc)) from None


def _names_for(k: int, names: Sequence[str]) -> tuple[tuple[int, str], ...]:
    return tuple((color, names[color - 1]) for color in range(1, min(k, len(names)) + 1))


def certificate_for(
    c: ColoredComplete,
    targets: Sequence[TargetSpec] = (),
    report: Optional[VerdictReport] = None,
    instance: Optional[GRInstance] = None,
    color_names: Sequence[str] = (),
) -> Certificate:
    claims = None
    verification = None
    if report is not None:
        if report.verdict != Verdict.VERIFIED:
            raise CertificateSemanticError(f"Only verified colorings are certified: {report.summary()}")
        claims = Claims(gallai=True, absent=tuple(True for _ in targets))
        verification = VerificationBlock(report.verdict, __version__, report.stats.nodes)
    provenance = gr_value_provenance(instance) if instance is not None else Provenance.PROVEN
    return Certificate(
        n=c.n,
        k=c.k,
        edges=tuple(c.edges()),
        targets=tuple(targets),
        claims=claims,
        verification=verification,
        provenance=provenance,
        color_names=_names_for(c.k, color_names),
        instance=instance,
    )


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def serialize(cert: Certificate) -> bytes:
    lines = [f"{FORMAT_HEADER} {cert.format_version}", f"n {cert.n}", f"k {cert.k}"]
    if cert.color_names:
        lines.append("names " + " ".join(f"{color}={name}" for color, name in cert.color_names))
    lines.append(f"provenance {cert.provenance.value}")
    if cert.instance is not None:
        i_vector = ",".join(str(value) for value in cert.instance.i_vector)
        lines.append(f"instance {cert.instance.n} {i_vector} {cert.instance.top.value}")
    for color, target in enumerate(cert.targets, start=1):
        lines.append(f"target {color} {target.label}")
    for u, v, color in sorted(cert.edges):
        lines.append(f"edge {u} {v} {color}")
    if cert.claims is not None:
        lines.append(f"claim gallai {_yes(cert.claims.gallai)}")
        for color, flag in enumerate(cert.claims.absent, start=1):
            lines.append(f"claim absent {color} {_yes(flag)}")
    if cert.verification is not None:
        lines.append(f"verify verdict {cert.verification.verdict.value}")
        lines.append(f"verify tool {cert.verification.tool_version}")
        lines.append(f"verify nodes {cert.verification.nodes}")
    lines.append("end")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _int(token: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise CertificateSyntaxError(f"line {line_no}: expected an integer, got {token!r}") from None


def _flag(token: str, line_no: int) -> bool:
    if token not in {"yes", "no"}:
        raise CertificateSyntaxError(f"line {line_no}: expected yes or no, got {token!r}")
    return token == "yes"


def parse(data: Union[bytes, str]) -> Certificate:
    try:
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    except UnicodeDecodeError as exc:
        raise CertificateSyntaxError(f"certificate is not UTF-8 text: {exc.reason} at byte {exc.start}") from exc
    raw_lines = [line.strip() for line in text.splitlines()]
    numbered = [(no, line) for no, line in enumerate(raw_lines, start=1) if line and not line.startswith("#")]
    if not numbered:
        raise CertificateSyntaxError("empty certificate")
    first_no, first = numbered[0]
    header = first.split()
    if len(header) != 2 or header[0] != FORMAT_HEADER:
        raise CertificateSyntaxError(f"line {first_no}: expected '{FORMAT_HEADER} <version>'")
    version = _int(header[1], first_no)
    if version != FORMAT_VERSION:
        raise CertificateSyntaxError(f"unsupported format version {version}")

    n: Optional[int] = None
    k: Optional[int] = None
    names: list[tuple[int, str]] = []
    provenance = Provenance.PROVEN
    instance: Optional[GRInstance] = None
    targets: dict[int, TargetSpec] = {}
    edges: list[tuple[int, int, int]] = []
    gallai_claim: Optional[bool] = None
    absent: dict[int, bool] = {}
    verify_fields: dict[str, str] = {}
    ended = False
    for line_no, line in numbered[1:]:
        if ended:
            raise CertificateSyntaxError(f"line {line_no}: content after 'end'")
        tokens = line.split()
        key = tokens[0]
        if key == "end" and len(tokens) == 1:
            ended = True
        elif key in {"n", "k"} and len(tokens) == 2:
            value = _int(tokens[1], line_no)
            if key == "n":
                n = value
            else:
                k = value
        elif key == "names":
            for token in tokens[1:]:
                color, _, name = token.partition("=")
                if not name:
                    raise CertificateSyntaxError(f"line {line_no}: expected color=name, got {token!r}")
                names.append((_int(color, line_no), name))
        elif key == "provenance" and len(tokens) == 2:
            try:
                provenance = Provenance(tokens[1])
            except ValueError:
                raise CertificateSyntaxError(f"line {line_no}: unknown provenance {tokens[1]!r}") from None
        elif key == "instance" and len(tokens) == 4:
            instance_n = _int(tokens[1], line_no)
            try:
                instance = GRInstance.parse(instance_n, tokens[2], tokens[3])
            except ValueError as exc:
                raise CertificateSemanticError(f"line {line_no}: {exc}") from None
        elif key == "target" and len(tokens) == 3:
            color = _int(tokens[1], line_no)
            if color in targets:
                raise CertificateSemanticError(f"line {line_no}: color {color} has two targets")
            try:
                targets[color] = TargetSpec.parse(tokens[2])
            except ColoringError as exc:
                raise CertificateSyntaxError(f"line {line_no}: {exc}") from None
        elif key == "edge" and len(tokens) == 4:
            edges.append(tuple(_int(token, line_no) for token in tokens[1:]))  # type: ignore[arg-type]
        elif key == "claim" and len(tokens) == 3 and tokens[1] == "gallai":
            gallai_claim = _flag(tokens[2], line_no)
        elif key == "claim" and len(tokens) == 4 and tokens[1] == "absent":
            absent[_int(tokens[2], line_no)] = _flag(tokens[3], line_no)
        elif key == "verify" and len(tokens) == 3:
            verify_fields[tokens[1]] = tokens[2]
        else:
            raise CertificateSyntaxError(f"line {line_no}: unrecognized line {line!r}")
    if not ended:
        raise CertificateSyntaxError("certificate is truncated (missing 'end')")
    if n is None or k is None:
        raise CertificateSyntaxError("certificate needs both 'n' and 'k' lines")

    if targets and sorted(targets) != list(range(1, k + 1)):
        raise CertificateSemanticError(f"targets must cover colors 1..{k}, got {sorted(targets)}")
    has_claims = gallai_claim is not None or bool(absent)
    if has_claims != bool(verify_fields):
        raise CertificateSemanticError("claims and the verification block must appear together")
    claims = None
    verification = None
    if has_claims:
        if gallai_claim is None or sorted(absent) != sorted(targets):
            raise CertificateSemanticError("claims need a gallai line and one absent line per target")
        claims = Claims(gallai=gallai_claim, absent=tuple(absent[color] for color in sorted(absent)))
        try:
            verification = VerificationBlock(
                verdict=Verdict(verify_fields["verdict"]),
                tool_version=verify_fields["tool"],
                nodes=int(verify_fields.get("nodes", "0")),
            )
        except (KeyError, ValueError):
            raise CertificateSemanticError(f"malformed verification block {verify_fields}") from None

    cert = Certificate(
        n=n,
        k=k,
        edges=tuple(sorted((min(u, v), max(u, v), color) for u, v, color in edges)),
        targets=tuple(targets[color] for color in sorted(targets)),
        claims=claims,
        verification=verification,
        provenance=provenance,
        color_names=tuple(names),
        instance=instance,
        format_version=version,
    )
    cert.coloring()
    if instance is not None and gr_value_provenance(instance) != provenance:
        raise CertificateSemanticError(
            f"provenance {provenance.value} does not match {instance.describe()} with n={instance.n}"
        )
    return cert


def verify_certificate(cert: Certificate, budget: Optional[int] = None) -> VerdictReport:
    """Re-derive every claim of a certificate from its edge list."""
    c = cert.coloring()
    claim = f"certificate K_{c.n}, k={c.k}"
    if cert.targets:
        claim += f" [{describe_targets(cert.targets)}]"
    if cert.instance is not None:
        claim += f" for {cert.instance.describe()}"
        expected = gr_value(cert.instance) - 1
        if c.n != expected or tuple(cert.instance.targets()) != cert.targets:
            return VerdictReport(
                claim=claim,
                verdict=Verdict.REFUTED,
                note=f"instance needs {expected} vertices and targets {describe_targets(cert.instance.targets())}",
            )
    triangle = find_rainbow_triangle(c)
    if cert.claims is None:
        verdict = Verdict.VERIFIED if triangle is None else Verdict.REFUTED
        note = "no claims; Gallai check only"
        return VerdictReport(claim=claim, verdict=verdict, triangle=triangle, note=note)
    if cert.claims.gallai != (triangle is None):
        return VerdictReport(claim=claim, verdict=Verdict.REFUTED, triangle=triangle, note="gallai claim fails")
    for color, (target, flag) in enumerate(zip(cert.targets, cert.claims.absent), start=1):
        try:
            embedding = has_target(c, color, target, budget)
        except SearchBudgetExceeded as exc:
            return VerdictReport(
                claim=claim,
                verdict=Verdict.EXHAUSTED_BUDGET,
                stats=SearchStats(nodes=exc.budget),
                note=f"color {color} undecided",
            )
        if flag and embedding is not None:
            return VerdictReport(claim=claim, verdict=Verdict.REFUTED, embedding=embedding)
        if not flag and embedding is None:
            return VerdictReport(
                claim=claim, verdict=Verdict.REFUTED, note=f"claimed {target.label} in color {color} is absent"
            )
    logging.debug("Certificate verified: %s", claim)
    return VerdictReport(claim=claim, verdict=Verdict.VERIFIED)


def save_certificate(path: Path, cert: Certificate) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    temp_path = path.with_suffix(path.suffix + ".tmp")
    temp_path.write_bytes(serialize(cert))
    temp_path.replace(path)


def load_certificate(path: Path) -> Certificate:
    return parse(path.read_bytes())
