"""Benchmark and conformance harness.

Times repeated runs of subject implementations, summarizes them with the
usual benchmark statistics, cross-checks traces between subjects, and
renders reports and plot-data series.

Subject wire protocol: an external subject is launched with two arguments,
a city CSV path and a config JSON path, and must print exactly one trace
document (see trace.py) on stdout.  Nonzero exit signals failure.  The
in-process engine is itself a subject, and is the usual baseline.
"""

from __future__ import annotations

import json
import shlex
import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import engine
from .cities import CityList, load_cities
from .engine import GAConfig, RunTrace
from .stats import SummaryStats, linregress, perf_over_baseline, summarize
from .trace import TraceFormatError, parse_trace

LENGTH_TOLERANCE = 1e-9


class SubjectError(RuntimeError):
    """A subject crashed, violated the protocol, or diverged between reps."""


@dataclass(frozen=True)
class SubjectSpec:
    """One implementation under test."""

    id: str
    kind: str = "in-process"  # or "external"
    launch: tuple[str, ...] = ()

    @classmethod
    def in_process(cls, id: str = "engine") -> "SubjectSpec":
        return cls(id=id, kind="in-process")

    @classmethod
    def external(cls, command: str, id: str | None = None) -> "SubjectSpec":
        argv = tuple(shlex.split(command))
        if not argv:
            raise ValueError("empty subject launch command")
        return cls(id=id or Path(argv[-1]).stem, kind="external", launch=argv)


@dataclass
class Verdict:
    equal: bool
    field: str | None = None
    generation: int | None = None

    def __str__(self) -> str:
        if self.equal:
            return "equal"
        where = f" at generation {self.generation}" if self.generation is not None else ""
        return f"mismatch at {self.field}{where}"


def compare_traces(t1: RunTrace, t2: RunTrace) -> Verdict:
    """Field-for-field trace comparison; timing is ignored by design."""
    for name in ("n_cities", "best_generation", "final_generation", "last_seed"):
        if getattr(t1, name) != getattr(t2, name):
            return Verdict(False, name)
    if abs(t1.best_fitness - t2.best_fitness) > LENGTH_TOLERANCE:
        return Verdict(False, "best_fitness")
    if len(t1.per_generation) != len(t2.per_generation):
        return Verdict(False, "per_generation length")
    for a, b in zip(t1.per_generation, t2.per_generation):
        if a.generation != b.generation:
            return Verdict(False, "generation index", a.generation)
        if abs(a.population_best - b.population_best) > LENGTH_TOLERANCE:
            return Verdict(False, "population_best", a.generation)
        if abs(a.best_so_far - b.best_so_far) > LENGTH_TOLERANCE:
            return Verdict(False, "best_so_far", a.generation)
        if a.seed_after != b.seed_after:
            return Verdict(False, "seed_after", a.generation)
    return Verdict(True)


def config_document(config: GAConfig) -> str:
    """The config JSON handed to external subjects."""
    return json.dumps(
        {
            "population_size": config.population_size,
            "max_generations": config.max_generations,
            "crossover_rate": config.crossover_rate,
            "mutation_rate": config.mutation_rate,
            "stagnation_limit": config.stagnation_limit,
            "seed": config.initial_seed,
        },
        indent=2,
    )


def run_subject_once(subject: SubjectSpec, cities_path: Path, config: GAConfig) -> RunTrace:
    if subject.kind == "in-process":
        return engine.run(load_cities(cities_path), config)
    config_path = cities_path.with_suffix(".config.json")
    config_path.write_text(config_document(config), encoding="utf-8")
    argv = [*subject.launch, str(cities_path), str(config_path)]
    proc = subprocess.run(argv, capture_output=True, text=True)
    if proc.returncode != 0:
        raise SubjectError(
            f"subject {subject.id!r} exited with status {proc.returncode}: "
            f"{proc.stderr.strip()}"
        )
    try:
        return parse_trace(proc.stdout)
    except TraceFormatError as exc:
        raise SubjectError(f"subject {subject.id!r} protocol violation: {exc}") from None


def time_subject(
    subject: SubjectSpec,
    cities_path: Path,
    config: GAConfig,
    repetitions: int,
) -> tuple[list[float], RunTrace]:
    """Run a subject repeatedly; return its self-timed samples and trace.

    One untimed warm-up run comes first.  All repetitions must produce
    identical non-timing trace fields, or the offending repetition is
    reported as an error.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    run_subject_once(subject, cities_path, config)  # warm-up, discarded
    samples: list[float] = []
    canonical: RunTrace | None = None
    for rep in range(1, repetitions + 1):
        trace = run_subject_once(subject, cities_path, config)
        if canonical is None:
            canonical = trace
        else:
            verdict = compare_traces(canonical, trace)
            if not verdict.equal:
                raise SubjectError(
                    f"subject {subject.id!r} diverged on repetition {rep}: {verdict}"
                )
        samples.append(trace.elapsed_ms)
    return samples, canonical


@dataclass
class BenchRow:
    subject_id: str
    n_cities: int
    stats: SummaryStats
    best_generation: int
    last_seed: int
    best_fitness: float
    perf_percent: float | None  # None for the baseline subject


@dataclass
class BenchReport:
    rows: list[BenchRow]
    baseline_subject: str
    # per-subject OLS of mean time vs n: (slope, intercept, r, r_squared)
    regressions: dict[str, tuple[float, float, float, float]] = field(default_factory=dict)
    warmup_runs: int = 1


def _prefix_file(cities: CityList, n: int, directory: Path) -> Path:
    path = directory / f"cities_{n}.csv"
    lines = [f"{c.name},{c.x:g},{c.y:g}" for c in cities.prefix(n)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def bench(
    subjects: Sequence[SubjectSpec],
    cities_path: Path,
    n_values: Sequence[int],
    config: GAConfig,
    repetitions: int,
    baseline_id: str,
) -> BenchReport:
    """Benchmark every subject at every city-file prefix length.

    Any trace mismatch across subjects aborts with a conformance error.
    """
    ids = [s.id for s in subjects]
    if len(set(ids)) != len(ids):
        raise ValueError(f"duplicate subject ids: {ids}")
    if baseline_id not in ids:
        raise ValueError(f"baseline {baseline_id!r} not among subjects {ids}")
    cities = load_cities(cities_path)

    rows: list[BenchRow] = []
    means: dict[str, list[float]] = {s.id: [] for s in subjects}
    with tempfile.TemporaryDirectory(prefix="tspga-bench-") as tmp:
        for n in n_values:
            prefix_path = _prefix_file(cities, n, Path(tmp))
            traces: dict[str, RunTrace] = {}
            n_rows: list[BenchRow] = []
            for subject in subjects:
                samples, trace = time_subject(subject, prefix_path, config, repetitions)
                traces[subject.id] = trace
                stats = summarize(samples) if len(samples) >= 2 else SummaryStats(
                    samples[0], samples[0], samples[0], 0.0, 0.0, 1
                )
                means[subject.id].append(stats.mean_ms)
                n_rows.append(
                    BenchRow(
                        subject.id,
                        n,
                        stats,
                        trace.best_generation,
                        trace.last_seed,
                        trace.best_fitness,
                        None,
                    )
                )
            base_trace = traces[baseline_id]
            for sid, trace in traces.items():
                if sid == baseline_id:
                    continue
                verdict = compare_traces(base_trace, trace)
                if not verdict.equal:
                    raise SubjectError(
                        f"conformance failure at n={n}: {baseline_id!r} vs {sid!r}: {verdict}"
                    )
            base_mean = next(r.stats.mean_ms for r in n_rows if r.subject_id == baseline_id)
            for row in n_rows:
                if row.subject_id != baseline_id:
                    row.perf_percent = perf_over_baseline(base_mean, row.stats.mean_ms)
            rows.extend(n_rows)

    regressions = {}
    if len(n_values) >= 3:
        xs = [float(n) for n in n_values]
        for sid, ys in means.items():
            regressions[sid] = linregress(xs, ys)
    return BenchReport(rows=rows, baseline_subject=baseline_id, regressions=regressions)


# -- report rendering -----------------------------------------------------

_COLUMNS = (
    "n_cities",
    "subject",
    "max_ms",
    "min_ms",
    "mean_ms",
    "stddev_ms",
    "cv_percent",
    "best_generation",
    "last_seed",
    "best_fitness",
    "perf_vs_baseline_percent",
)


def _row_values(row: BenchRow) -> list[str]:
    s = row.stats
    perf = "-" if row.perf_percent is None else f"{row.perf_percent:.2f}"
    return [
        str(row.n_cities),
        row.subject_id,
        f"{s.max_ms:.2f}",
        f"{s.min_ms:.2f}",
        f"{s.mean_ms:.2f}",
        f"{s.stddev_ms:.2f}",
        f"{s.cv_percent:.2f}",
        str(row.best_generation),
        str(row.last_seed),
        f"{row.best_fitness:.3f}",
        perf,
    ]


def render_report(report: BenchReport, format: str = "table") -> str:
    if format == "csv":
        lines = [",".join(_COLUMNS)]
        lines += [",".join(_row_values(r)) for r in report.rows]
        return "\n".join(lines) + "\n"
    if format == "structured":
        doc = {
            "baseline_subject": report.baseline_subject,
            "warmup_runs": report.warmup_runs,
            "rows": [dict(zip(_COLUMNS, _row_values(r))) for r in report.rows],
            "time_vs_n_regression": {
                sid: {"slope": reg[0], "intercept": reg[1], "r": reg[2], "r_squared": reg[3]}
                for sid, reg in report.regressions.items()
            },
        }
        return json.dumps(doc, indent=2) + "\n"
    if format == "table":
        table = [list(_COLUMNS)] + [_row_values(r) for r in report.rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(_COLUMNS))]
        lines = []
        for idx, row in enumerate(table):
            lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
            if idx == 0:
                lines.append("  ".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {format!r}")


def plot_series_time(report: BenchReport) -> str:
    """CSV series of (subject, n, mean_ms) for the execution-time plot."""
    lines = ["subject,n_cities,mean_ms"]
    lines += [
        f"{r.subject_id},{r.n_cities},{r.stats.mean_ms:.2f}" for r in report.rows
    ]
    return "\n".join(lines) + "\n"


def plot_series_fitness(report: BenchReport) -> str:
    """CSV series of (n, best_fitness); identical across conformant subjects."""
    seen: dict[int, float] = {}
    for r in report.rows:
        seen.setdefault(r.n_cities, r.best_fitness)
    lines = ["n_cities,best_fitness"]
    lines += [f"{n},{fit:.3f}" for n, fit in sorted(seen.items())]
    return "\n".join(lines) + "\n"
