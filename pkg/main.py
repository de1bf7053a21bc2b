from dotenv import load_dotenv

load_dotenv()

import argparse
import logging
import sys
from pydantic import ValidationError
from constants import (
    ALL_METHODS,
    BENCH,
    CACHE_DIR,
    ENCODING,
    EXIT_CACHE,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFY_FAILED,
    JOBS,
    JSON,
    LATEX,
    LOG_LEVEL,
    METHODS,
    MODEL_A,
    SOLVE,
    SUTHERLAND,
    TABLE,
    TEXT,
    THEOREM1,
    VERIFY,
    WRITE_TEXT,
)
from errors import CacheError, IncompatibleMethodError, LabelError
from models.base import JobSpec, ModelParams, TableRow
from services.batch import solve_batch
from services.bench import run_bench
from services.cache import ExpansionCache
from services.cbasis import set_store
from services.spectra import default_methods
from services.verify import cross_check, relate_labels, verify_eigen, verify_suite
from utils.main import to_labels
from utils.render import render_bench, render_records, render_reports, render_table
from utils.sympoly import is_partition, labels_up_to, partitions_of, sort_desc, to_msym, weight


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--model", type=str.upper, choices=["A", "B"], default=MODEL_A)
    common.add_argument("--N", type=int, required=True, help="Number of particles")
    common.add_argument("--lambda", dest="lam", required=True, help='Coupling as a rational, e.g. "3/2"')
    common.add_argument("--mu", default=None, help="B-model coupling as a rational")
    common.add_argument("--n", action="append", default=[], help='Label "n1,n2,...", repeatable')
    common.add_argument("--method", choices=[*METHODS, ALL_METHODS], default=None)
    common.add_argument("--format", dest="output_format", choices=[JSON, TEXT, LATEX], default=JSON)
    common.add_argument("--verify", action="store_true", help="Check every result against the reduced operator")
    common.add_argument("--max-weight", type=int, default=None)
    common.add_argument("--include-labels", action="store_true", help="Add tail-valid non-partition labels")
    common.add_argument("--cache-dir", default=CACHE_DIR)
    common.add_argument("--paranoid", action="store_true", help="Re-verify cached records on read")
    common.add_argument("--jobs", type=int, default=JOBS)
    common.add_argument("--output", default=None, help="Write to this file instead of stdout")
    common.add_argument("--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="calogero",
        description="Exact reduced eigenfunctions of the Calogero model.",
        allow_abbrev=False,
    )
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser(SOLVE, parents=[common], allow_abbrev=False, help="Solve for the given labels")
    commands.add_parser(TABLE, parents=[common], allow_abbrev=False, help="Tabulate the spectrum")
    commands.add_parser(VERIFY, parents=[common], allow_abbrev=False, help="Run the verification suites")
    commands.add_parser(BENCH, parents=[common], allow_abbrev=False, help="Time expansions and solvers")
    return parser


def configure_logging(verbose: bool):
    logging.basicConfig(
        level=logging.DEBUG if verbose else LOG_LEVEL,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def to_job(args: argparse.Namespace) -> JobSpec:
    params = ModelParams(model=args.model, N=args.N, lam=args.lam, mu=args.mu)
    if args.method == ALL_METHODS:
        methods = list(default_methods(params))
    elif args.method is None:
        methods = list(default_methods(params)[:1])
    else:
        methods = [args.method]
    return JobSpec(
        command=args.command,
        params=params,
        labels=to_labels(args.n),
        max_weight=args.max_weight,
        methods=methods,
        output_format=args.output_format,
        verify=args.verify,
        include_labels=args.include_labels,
        cache_dir=args.cache_dir,
        paranoid=args.paranoid,
        jobs=args.jobs,
    )


def plan_tasks(job: JobSpec, labels: list[tuple[int, ...]], every: bool) -> list[tuple[tuple[int, ...], str]]:
    tasks = []
    for label in labels:
        for method in job.methods:
            if method == SUTHERLAND and not is_partition(label):
                if every:
                    continue
                raise IncompatibleMethodError(f"sutherland needs a partition label, got {label}")
            tasks.append((label, method))
    return tasks


def table_labels(job: JobSpec) -> list[tuple[int, ...]]:
    if job.include_labels:
        return labels_up_to(job.max_weight, job.params.N)
    found = [n for w in range(job.max_weight + 1) for n in partitions_of(w, job.params.N)]
    return sorted(found, key=lambda n: (weight(n), n))


def do_solve(job: JobSpec, every: bool) -> tuple[int, str]:
    tasks = plan_tasks(job, job.labels, every)
    records = solve_batch(job.params, tasks, job.jobs, job.cache_dir, job.paranoid)
    reports = [verify_eigen(rec) for rec in records] if job.verify else []
    if every and job.params.model == MODEL_A:
        reports.extend(cross_check(label, job.params) for label in job.labels)
    code = EXIT_OK if all(report.passed for report in reports) else EXIT_VERIFY_FAILED
    return code, render_records(records, reports, job.output_format)


def do_table(job: JobSpec, every: bool) -> tuple[int, str]:
    method = job.methods[0]
    tasks = [
        (label, THEOREM1 if method == SUTHERLAND and not is_partition(label) else method)
        for label in table_labels(job)
    ]
    records = solve_batch(job.params, tasks, job.jobs, job.cache_dir, job.paranoid)
    rows = []
    reports = []
    for rec in records:
        top = {k: c for k, c in to_msym(rec.poly).items() if weight(k) == weight(rec.label)}
        rows.append(TableRow(label=rec.label, method=rec.method, energy=rec.energy, leading=top))
        if job.verify:
            reports.append(verify_eigen(rec))
    text = render_table(rows, reports, job.output_format)
    code = EXIT_OK if all(report.passed for report in reports) else EXIT_VERIFY_FAILED
    return code, text


def do_verify(job: JobSpec, every: bool) -> tuple[int, str]:
    reports = verify_suite(job.params, job.max_weight)
    if job.include_labels:
        extra = [n for n in labels_up_to(job.max_weight, job.params.N) if not is_partition(n)]
        method = default_methods(job.params)[0]
        records = solve_batch(job.params, [(n, method) for n in extra], job.jobs, job.cache_dir, job.paranoid)
        reports.extend(verify_eigen(rec) for rec in records)
        if job.params.model == MODEL_A:
            reports.extend(
                relate_labels(sort_desc(n), n, job.params, method) for n in extra if is_partition(sort_desc(n))
            )
    code = EXIT_OK if all(report.passed for report in reports) else EXIT_VERIFY_FAILED
    return code, render_reports(reports, job.output_format)


def do_bench(job: JobSpec, every: bool) -> tuple[int, str]:
    return EXIT_OK, render_bench(run_bench(job.params, job.max_weight), job.output_format)


COMMANDS = {SOLVE: do_solve, TABLE: do_table, VERIFY: do_verify, BENCH: do_bench}


def emit(text: str, output: str | None):
    if output is None:
        print(text)
        return
    with open(output, mode=WRITE_TEXT, encoding=ENCODING) as file_like:
        file_like.write(text + "\n")


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    configure_logging(args.verbose)
    try:
        job = to_job(args)
        if job.command == SOLVE:
            plan_tasks(job, job.labels, args.method == ALL_METHODS)
    except (ValidationError, LabelError, IncompatibleMethodError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    set_store(ExpansionCache(job.cache_dir) if job.cache_dir else None)
    try:
        code, text = COMMANDS[job.command](job, args.method == ALL_METHODS)
    except CacheError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CACHE
    finally:
        set_store(None)
    emit(text, args.output)
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
