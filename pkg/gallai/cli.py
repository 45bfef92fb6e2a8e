import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional

from .certificate import Certificate, certificate_for, load_certificate, save_certificate, serialize, verify_certificate
from .coloring import TargetSpec
from .config import ToolkitConfig, load_config
from .constructions import lower_bound_witness, random_gallai, witness_layers
from .decomposition import gallai_partition, validate_partition
from .engine import exhaustive_ramsey2, search_bad_gallai, verify_gr_point
from .formulas import (
    Family,
    GRInstance,
    Provenance,
    TopKind,
    family_provenance,
    family_target,
    gr_all_paths,
    gr_all_paths_provenance,
    gr_k_family,
    gr_value,
    gr_value_provenance,
    r2_even_cycle,
    r_path_cycle,
)
from .ledger import delete_run, fetch_run, fetch_runs, record_run, render_runs
from .logging_utils import configure_logging
from .search import SearchBudgetExceeded
from .verify import SearchStats, Verdict, VerdictReport, check_bad_coloring

ERROR_EXIT_CODE = 3


def parse_targets(raw: str) -> list[TargetSpec]:
    return [TargetSpec.parse(part) for part in raw.split(",") if part.strip()]


def emit(args: argparse.Namespace, record: dict[str, Any], text: str) -> None:
    if args.format == "jsonl":
        print(json.dumps({"command": args.command, **record}, sort_keys=True))
    else:
        print(text)


def emit_report(args: argparse.Namespace, report: VerdictReport) -> None:
    lines = [report.summary()]
    for part in report.parts:
        lines.append(f"  {part.summary()}")
    lines.append(f"  nodes={report.stats.nodes} leaves={report.stats.leaves} rechecked={report.stats.rechecked}")
    emit(args, report.to_record(), "\n".join(lines))


def ledger_path(args: argparse.Namespace, config: ToolkitConfig) -> Optional[Path]:
    if args.ledger:
        return Path(args.ledger).expanduser()
    return config.ledger_path


def record(args: argparse.Namespace, config: ToolkitConfig, **fields: Any) -> None:
    path = ledger_path(args, config)
    if path is None:
        return
    record_run(path, args.command, **fields)


def instance_from(args: argparse.Namespace) -> GRInstance:
    return GRInstance.parse(args.n, args.i_vector, args.top)


def run_formula(args: argparse.Namespace, config: ToolkitConfig) -> int:
    if args.n is None and not args.all_paths:
        raise ValueError("formula needs --n (or --all-paths)")
    if args.all_paths:
        values = [int(part) for part in args.all_paths.split(",") if part.strip()]
        value = gr_all_paths(values)
        provenance = gr_all_paths_provenance(values)
        labels = ", ".join(f"P{2 * i + 3}" for i in values)
        name = f"GR({labels})"
    elif args.i_vector:
        inst = instance_from(args)
        value = gr_value(inst)
        provenance = gr_value_provenance(inst)
        name = inst.describe()
    elif args.family:
        if args.k is None:
            raise ValueError("--family needs --k")
        family = Family(args.family)
        value = gr_k_family(args.n, args.k, family)
        provenance = family_provenance(args.n, args.k, family)
        name = f"GR_{args.k}({family_target(args.n, family).label})"
    elif args.m is not None:
        value = r_path_cycle(args.m, args.n)
        provenance = Provenance.PROVEN
        name = f"R(P{args.m}, C{2 * args.n})"
    else:
        value = r2_even_cycle(args.n)
        provenance = Provenance.PROVEN
        name = f"R_2(C{2 * args.n})"
    emit(
        args,
        {"name": name, "value": value, "provenance": provenance.value},
        f"{name} = {value} ({provenance.value})",
    )
    return 0


def write_certificate(args: argparse.Namespace, payload: bytes, cert: Certificate) -> None:
    if args.out:
        save_certificate(Path(args.out), cert)
        logging.info("Wrote certificate to %s", args.out)
    else:
        sys.stdout.write(payload.decode("utf-8"))


def run_construct(args: argparse.Namespace, config: ToolkitConfig) -> int:
    inst = instance_from(args)
    budget = args.budget or config.node_budget
    witness = lower_bound_witness(inst, budget)
    report = check_bad_coloring(witness, inst.targets(), budget)
    cert = certificate_for(witness, inst.targets(), report, inst, config.color_names)
    payload = serialize(cert)
    write_certificate(args, payload, cert)
    if args.out:
        layers = witness_layers(inst)
        sizes = ", ".join(f"{color}:{size}" for color, size in layers.layers) or "none"
        emit(
            args,
            {
                "instance": inst.describe(),
                "order": witness.n,
                "provenance": cert.provenance.value,
                "path": args.out,
            },
            f"{inst.describe()}: witness on {witness.n} vertices "
            f"(base {layers.base_order}, layers {sizes}) -> {args.out}",
        )
    record(
        args,
        config,
        report=report,
        n=witness.n,
        k=witness.k,
        targets=inst.targets(),
        provenance=cert.provenance.value,
        certificate=payload.decode("utf-8"),
    )
    return 0


def run_check(args: argparse.Namespace, config: ToolkitConfig) -> int:
    cert = load_certificate(Path(args.certificate))
    report = verify_certificate(cert, args.budget or config.node_budget)
    emit_report(args, report)
    record(args, config, report=report, n=cert.n, k=cert.k, targets=cert.targets, provenance=cert.provenance.value)
    return report.exit_code


def run_partition(args: argparse.Namespace, config: ToolkitConfig) -> int:
    coloring = load_certificate(Path(args.certificate)).coloring()
    partition = gallai_partition(coloring)
    check = validate_partition(coloring, partition)
    if not check.is_valid:
        raise RuntimeError(f"Partition failed validation: {check.violations}")
    parts = [sorted(part) for part in partition.parts]
    reduced = [list(edge) for edge in partition.reduced.edges()]
    lines = [f"p={partition.p} inter-colors={sorted(partition.inter_colors)}"]
    lines.extend(f"  A{index}: {part}" for index, part in enumerate(parts, start=1))
    lines.extend(f"  reduced {u + 1}-{v + 1}: color {color}" for u, v, color in reduced)
    emit(
        args,
        {"p": partition.p, "parts": parts, "inter_colors": sorted(partition.inter_colors), "reduced": reduced},
        "\n".join(lines),
    )
    return 0


def run_search(args: argparse.Namespace, config: ToolkitConfig) -> int:
    targets = parse_targets(args.targets)
    budget = args.budget or config.node_budget
    threads = args.threads or config.threads
    if args.mode == "ramsey2":
        if len(targets) != 2:
            raise ValueError(f"ramsey2 mode needs exactly two targets. Got {len(targets)}")
        try:
            report = exhaustive_ramsey2(targets[0], targets[1], args.N, budget, threads, config.ramsey_cap)
        except SearchBudgetExceeded as exc:
            report = VerdictReport(
                claim=f"every 2-coloring of K_{args.N} has {targets[0].label} in color 1 or {targets[1].label} in color 2",
                verdict=Verdict.EXHAUSTED_BUDGET,
                stats=SearchStats(nodes=exc.budget),
            )
    else:
        report = search_bad_gallai(args.N, targets, budget, threads)
    if report.coloring is not None and args.out:
        check = check_bad_coloring(report.coloring, targets, budget)
        verified = check if check.verdict == Verdict.VERIFIED else None
        if verified is None:
            logging.warning("Witness claims left out of %s: %s", args.out, check.summary())
        cert = certificate_for(report.coloring, targets, report=verified, color_names=config.color_names)
        save_certificate(Path(args.out), cert)
        logging.info("Wrote witness certificate to %s", args.out)
    emit_report(args, report)
    record(args, config, report=report, n=args.N, k=len(targets), targets=targets)
    return report.exit_code


def run_verify_point(args: argparse.Namespace, config: ToolkitConfig) -> int:
    inst = instance_from(args)
    report = verify_gr_point(inst, args.budget or config.node_budget, args.threads or config.threads)
    emit_report(args, report)
    record(
        args,
        config,
        report=report,
        n=inst.n,
        k=inst.k,
        targets=inst.targets(),
        provenance=gr_value_provenance(inst).value,
    )
    return report.exit_code


def run_random(args: argparse.Namespace, config: ToolkitConfig) -> int:
    coloring = random_gallai(args.n, args.k, args.depth, args.seed)
    cert = certificate_for(coloring, color_names=config.color_names)
    payload = serialize(cert)
    write_certificate(args, payload, cert)
    if args.out:
        emit(
            args,
            {"n": coloring.n, "k": coloring.k, "seed": args.seed, "path": args.out},
            f"Random Gallai coloring of K_{coloring.n} with k={coloring.k} -> {args.out}",
        )
    return 0


def run_history(args: argparse.Namespace, config: ToolkitConfig) -> int:
    path = ledger_path(args, config)
    if path is None:
        raise ValueError("No ledger configured. Pass --ledger or set GALLAI_LEDGER_PATH")
    if args.delete is not None:
        if not delete_run(path, args.delete):
            raise ValueError(f"No run found with ID {args.delete}")
        print(f"Removed run {args.delete}.")
        return 0
    if args.show is not None:
        run = fetch_run(path, args.show)
        if run is None:
            raise ValueError(f"No run found with ID {args.show}")
        if not run.certificate:
            raise ValueError(f"Run {args.show} stored no certificate")
        sys.stdout.write(run.certificate)
        return 0
    print(render_runs(fetch_runs(path, args.limit)))
    return 0


COMMANDS = {
    "formula": run_formula,
    "construct": run_construct,
    "check": run_check,
    "partition": run_partition,
    "search": run_search,
    "verify-point": run_verify_point,
    "random": run_random,
    "history": run_history,
}


def add_instance_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--n", type=int, required=required, help="Top index n (targets up to C_2n or P_2n+1)")
    parser.add_argument("--i-vector", required=required, help="Non-increasing comma-separated i_1,...,i_k")
    parser.add_argument("--top", choices=[kind.value for kind in TopKind], default="cycle", help="G_(n-1) kind")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Gallai colorings and Gallai-Ramsey numbers of even cycles and paths")
    parser.add_argument("--ledger", help="SQLite file recording runs (default: GALLAI_LEDGER_PATH)")
    parser.add_argument("--format", choices=["text", "jsonl"], default="text", help="Output format")
    parser.add_argument("--log-level", help="Logging level (default: LOG_LEVEL or INFO)")
    subparsers = parser.add_subparsers(dest="command", help="Commands")

    formula_parser = subparsers.add_parser("formula", help="Evaluate a closed-form Ramsey value")
    add_instance_arguments(formula_parser, required=False)
    formula_parser.add_argument("--family", choices=[family.value for family in Family], help="k-color family")
    formula_parser.add_argument("--k", type=int, help="Number of colors for --family")
    formula_parser.add_argument("--m", type=int, help="Path order m for R(P_m, C_2n)")
    formula_parser.add_argument("--all-paths", help="Comma-separated path indices for GR(P_2i+3, ...)")

    construct_parser = subparsers.add_parser("construct", help="Emit a certified lower-bound witness")
    add_instance_arguments(construct_parser)
    construct_parser.add_argument("--out", "-o", help="Certificate path (default: stdout)")
    construct_parser.add_argument("--budget", type=int, help="Node budget per search")

    check_parser = subparsers.add_parser("check", help="Re-verify a certificate file")
    check_parser.add_argument("certificate", help="Certificate path")
    check_parser.add_argument("--budget", type=int, help="Node budget per search")

    partition_parser = subparsers.add_parser("partition", help="Print the Gallai partition of a certificate")
    partition_parser.add_argument("certificate", help="Certificate path")

    search_parser = subparsers.add_parser("search", help="Exhaustive coloring search")
    search_parser.add_argument("--mode", choices=["gallai", "ramsey2"], default="gallai")
    search_parser.add_argument("--N", type=int, required=True, help="Order of the complete graph")
    search_parser.add_argument("--targets", required=True, help="Targets per color, e.g. 'P5,P3' or 'P4,C6'")
    search_parser.add_argument("--budget", type=int, help="Node budget")
    search_parser.add_argument("--threads", type=int, help="Worker processes")
    search_parser.add_argument("--out", "-o", help="Write a found witness as a certificate")

    point_parser = subparsers.add_parser("verify-point", help="Check both sides of a GR value")
    add_instance_arguments(point_parser)
    point_parser.add_argument("--budget", type=int, help="Node budget")
    point_parser.add_argument("--threads", type=int, help="Worker processes")

    random_parser = subparsers.add_parser("random", help="Random Gallai coloring by substitution")
    random_parser.add_argument("--n", type=int, required=True, help="Vertex count")
    random_parser.add_argument("--k", type=int, default=3, help="Color count (default: 3)")
    random_parser.add_argument("--depth", type=int, default=3, help="Substitution depth (default: 3)")
    random_parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    random_parser.add_argument("--out", "-o", help="Certificate path (default: stdout)")

    history_parser = subparsers.add_parser("history", help="List recorded runs")
    history_parser.add_argument("--limit", "-l", type=int, default=10, help="Runs to show (default: 10)")
    history_parser.add_argument("--show", type=int, help="Print the certificate stored with a run")
    history_parser.add_argument("--delete", type=int, help="Remove a run by ID")
    return parser


def main(argv: Optional[list[str]] = None) -> None:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    config = load_config()

    handler = COMMANDS.get(args.command)
    if handler is None:
        parser.print_help()
        sys.exit(ERROR_EXIT_CODE)
    try:
        code = handler(args, config)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        sys.exit(ERROR_EXIT_CODE)
    sys.exit(code)


if __name__ == "__main__":
    main()
