"""Command-line entry point: solve, brute, bench, and verify workflows."""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from .backend import BACKEND_NAME
from .bench import (
    SubjectError,
    SubjectSpec,
    bench,
    compare_traces,
    plot_series_fitness,
    plot_series_time,
    render_report,
    run_subject_once,
)
from .brute import brute_force_optimum
from .cities import CityFileError, load_cities
from .engine import GAConfig, run
from .trace import serialize_trace

DEFAULT_SEEDS = (1, 2, 3)


def default_cities_path() -> Path:
    """Path of the bundled ten-city fixture."""
    return Path(resources.files("tspga") / "data" / "cities10.csv")


def parse_n_values(text: str) -> list[int]:
    """Parse an --n value: a single integer or an inclusive 'LO..HI' range."""
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cities", type=Path, default=None, metavar="PATH",
                   help="city CSV file (default: bundled ten-city fixture)")
    p.add_argument("--n", default=None, metavar="INT|LO..HI",
                   help="city-file prefix length(s) (default: whole file)")
    p.add_argument("--seed", type=int, default=0, help="initial PRNG seed counter")
    p.add_argument("--pop", type=int, default=5, help="population size")
    p.add_argument("--max-gen", type=int, default=100, help="maximum generations")
    p.add_argument("--cx-rate", type=float, default=0.9, help="crossover rate")
    p.add_argument("--mut-rate", type=float, default=0.01, help="mutation rate")
    p.add_argument("--stagnation", type=int, default=20,
                   help="generations without improvement before stopping")


def _config(args, seed: int | None = None) -> GAConfig:
    return GAConfig(
        population_size=args.pop,
        max_generations=args.max_gen,
        crossover_rate=args.cx_rate,
        mutation_rate=args.mut_rate,
        stagnation_limit=args.stagnation,
        initial_seed=args.seed if seed is None else seed,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tspga",
        description="Deterministic GA solver for TSP with a benchmark and "
                    "conformance harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run the GA once and print its trace")
    _add_common(p_solve)
    p_solve.add_argument("--timing", action="store_true",
                         help="include the (nondeterministic) elapsed_ms field")
    p_solve.add_argument("--out", type=Path, default=None, metavar="PATH")

    p_brute = sub.add_parser("brute", help="print the exact optimum tour")
    p_brute.add_argument("--cities", type=Path, default=None, metavar="PATH")
    p_brute.add_argument("--n", default=None, metavar="INT")

    p_bench = sub.add_parser("bench", help="time subjects and emit a report")
    _add_common(p_bench)
    p_bench.add_argument("--reps", type=int, default=10, help="timed repetitions")
    p_bench.add_argument("--subject", action="append", default=[], metavar="CMD",
                         help="external subject launch command (repeatable)")
    p_bench.add_argument("--baseline", default="engine", metavar="ID")
    p_bench.add_argument("--format", choices=("table", "csv", "structured"),
                         default="table")
    p_bench.add_argument("--out", type=Path, default=None, metavar="PATH",
                         help="write the report here; plot-data CSVs are "
                              "written next to it")

    p_verify = sub.add_parser("verify",
                              help="check external subjects against the engine")
    _add_common(p_verify)
    p_verify.add_argument("--subject", action="append", default=[], metavar="CMD",
                          required=True, help="external subject launch command")
    p_verify.add_argument("--seeds", default=",".join(map(str, DEFAULT_SEEDS)),
                          help="comma-separated seed list")
    return parser


def _cities_for(args, n_values=None):
    path = args.cities or default_cities_path()
    cities = load_cities(path)
    return path, cities


def cmd_solve(args) -> int:
    _, cities = _cities_for(args)
    if args.n is not None:
        (n,) = parse_n_values(args.n)
        cities = cities.prefix(n)
    trace = run(cities, _config(args))
    doc = serialize_trace(trace, include_timing=args.timing)
    if args.out:
        args.out.write_text(doc, encoding="utf-8")
    else:
        sys.stdout.write(doc)
    return 0


def cmd_brute(args) -> int:
    _, cities = _cities_for(args)
    if args.n is not None:
        (n,) = parse_n_values(args.n)
        cities = cities.prefix(n)
    route, length = brute_force_optimum(cities)
    names = " -> ".join(cities[i].name for i in route.order)
    print(f"optimum_length: {length:.9f}")
    print(f"optimum_order: {route.order}")
    print(f"optimum_tour: {names} -> {cities[route.order[0]].name}")
    return 0


def cmd_bench(args) -> int:
    path, cities = _cities_for(args)
    n_values = parse_n_values(args.n) if args.n is not None else list(range(5, len(cities) + 1))
    subjects = [SubjectSpec.in_process("engine")]
    subjects += [SubjectSpec.external(cmd) for cmd in args.subject]
    report = bench(subjects, path, n_values, _config(args), args.reps, args.baseline)
    doc = render_report(report, args.format)
    if args.out:
        args.out.write_text(doc, encoding="utf-8")
        stem = args.out.with_suffix("")
        Path(f"{stem}.time_series.csv").write_text(plot_series_time(report), encoding="utf-8")
        Path(f"{stem}.fitness_series.csv").write_text(plot_series_fitness(report), encoding="utf-8")
    else:
        sys.stdout.write(doc)
    print(f"# kernel backend: {BACKEND_NAME}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    path, cities = _cities_for(args)
    n_values = parse_n_values(args.n) if args.n is not None else list(range(5, len(cities) + 1))
    seeds = [int(s) for s in args.seeds.split(",") if s.strip()]
    subjects = [SubjectSpec.external(cmd) for cmd in args.subject]
    engine_subject = SubjectSpec.in_process("engine")

    failures = 0
    import tempfile
    from .bench import _prefix_file

    with tempfile.TemporaryDirectory(prefix="tspga-verify-") as tmp:
        for n in n_values:
            prefix_path = _prefix_file(cities, n, Path(tmp))
            for seed in seeds:
                config = _config(args, seed=seed)
                reference = run_subject_once(engine_subject, prefix_path, config)
                for subject in subjects:
                    trace = run_subject_once(subject, prefix_path, config)
                    verdict = compare_traces(reference, trace)
                    status = "ok" if verdict.equal else f"FAIL ({verdict})"
                    print(f"n={n} seed={seed} subject={subject.id}: {status}")
                    if not verdict.equal:
                        failures += 1
    print("CONFORMANT" if failures == 0 else f"NONCONFORMANT ({failures} mismatches)")
    return 0 if failures == 0 else 1


def dispatch(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "solve": cmd_solve,
        "brute": cmd_brute,
        "bench": cmd_bench,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (CityFileError, OSError, ValueError, SubjectError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
