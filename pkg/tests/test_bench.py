import copy
import sys
from pathlib import Path

import pytest

from tspga.bench import (
    SubjectError,
    SubjectSpec,
    bench,
    compare_traces,
    plot_series_fitness,
    plot_series_time,
    render_report,
    run_subject_once,
    time_subject,
)
from tspga.cities import load_cities
from tspga.cli import default_cities_path
from tspga.engine import GAConfig, run

HELPERS = Path(__file__).parent / "helpers"
FIXTURE = default_cities_path()


def helper_cmd(name: str) -> str:
    return f"{sys.executable} {HELPERS / name}"


@pytest.fixture(scope="module")
def trace5():
    return run(load_cities(FIXTURE).prefix(5), GAConfig(initial_seed=1))


class TestCompareTraces:
    def test_reflexive(self, trace5):
        assert compare_traces(trace5, trace5).equal

    def test_fitness_perturbation_detected(self, trace5):
        other = copy.deepcopy(trace5)
        other.best_fitness += 1e-3
        verdict = compare_traces(trace5, other)
        assert not verdict.equal and verdict.field == "best_fitness"
        assert not compare_traces(other, trace5).equal  # symmetric verdict

    def test_timing_ignored(self, trace5):
        other = copy.deepcopy(trace5)
        other.elapsed_ms = trace5.elapsed_ms + 1000
        assert compare_traces(trace5, other).equal

    def test_per_generation_divergence_located(self, trace5):
        other = copy.deepcopy(trace5)
        other.per_generation[4].population_best += 1.0
        verdict = compare_traces(trace5, other)
        assert not verdict.equal
        assert verdict.field == "population_best" and verdict.generation == 4

    def test_within_tolerance_is_equal(self, trace5):
        other = copy.deepcopy(trace5)
        other.best_fitness += 1e-12
        assert compare_traces(trace5, other).equal


class TestTimeSubject:
    def test_in_process_single_rep(self):
        samples, trace = time_subject(
            SubjectSpec.in_process(), FIXTURE, GAConfig(initial_seed=1), 1
        )
        assert len(samples) == 1 and samples[0] > 0
        assert trace.n_cities == 10

    def test_repetitions_agree(self):
        samples, trace = time_subject(
            SubjectSpec.in_process(), FIXTURE, GAConfig(initial_seed=1), 4
        )
        assert len(samples) == 4
        assert trace.last_seed > 0

    def test_external_subject_roundtrip(self):
        subject = SubjectSpec.external(helper_cmd("subject_ok.py"), id="ok")
        samples, trace = time_subject(subject, FIXTURE, GAConfig(initial_seed=1), 2)
        reference = run(load_cities(FIXTURE), GAConfig(initial_seed=1))
        assert compare_traces(reference, trace).equal
        assert len(samples) == 2

    def test_crashing_subject_labeled(self):
        subject = SubjectSpec.external(helper_cmd("subject_crash.py"), id="crash")
        with pytest.raises(SubjectError, match="crash"):
            run_subject_once(subject, FIXTURE, GAConfig())

    def test_protocol_violation_labeled(self):
        subject = SubjectSpec.external(helper_cmd("subject_garbage.py"), id="garbage")
        with pytest.raises(SubjectError, match="protocol"):
            run_subject_once(subject, FIXTURE, GAConfig())

    def test_zero_repetitions_rejected(self):
        with pytest.raises(ValueError):
            time_subject(SubjectSpec.in_process(), FIXTURE, GAConfig(), 0)


class TestBench:
    def test_single_subject_structure(self):
        report = bench(
            [SubjectSpec.in_process("engine")],
            FIXTURE,
            [5, 6],
            GAConfig(initial_seed=1),
            repetitions=2,
            baseline_id="engine",
        )
        assert len(report.rows) == 2
        assert all(r.perf_percent is None for r in report.rows)
        assert report.baseline_subject == "engine"

    def test_two_conformant_subjects(self):
        subjects = [
            SubjectSpec.in_process("engine"),
            SubjectSpec.external(helper_cmd("subject_ok.py"), id="twin"),
        ]
        report = bench(subjects, FIXTURE, [5, 6], GAConfig(initial_seed=1), 2, "engine")
        by_n = {}
        for row in report.rows:
            by_n.setdefault(row.n_cities, set()).add(round(row.best_fitness, 9))
        assert all(len(v) == 1 for v in by_n.values())
        twin_rows = [r for r in report.rows if r.subject_id == "twin"]
        assert all(r.perf_percent is not None for r in twin_rows)

    def test_unknown_baseline_rejected(self):
        with pytest.raises(ValueError, match="baseline"):
            bench([SubjectSpec.in_process("engine")], FIXTURE, [5], GAConfig(), 1, "nope")

    def test_regressions_attached(self):
        report = bench(
            [SubjectSpec.in_process("engine")],
            FIXTURE,
            [5, 6, 7],
            GAConfig(initial_seed=1),
            repetitions=2,
            baseline_id="engine",
        )
        assert "engine" in report.regressions
        slope, intercept, r, r2 = report.regressions["engine"]
        assert r2 == pytest.approx(r * r)


@pytest.fixture(scope="module")
def small_report():
    return bench(
        [SubjectSpec.in_process("engine")],
        FIXTURE,
        [5, 6, 7],
        GAConfig(initial_seed=1),
        repetitions=2,
        baseline_id="engine",
    )


class TestRenderReport:
    def test_table_layout(self, small_report):
        doc = render_report(small_report, "table")
        header = doc.splitlines()[0].split()
        assert header[:2] == ["n_cities", "subject"]
        assert header[-1] == "perf_vs_baseline_percent"

    def test_baseline_perf_rendered_as_dash(self, small_report):
        csv_doc = render_report(small_report, "csv")
        for line in csv_doc.splitlines()[1:]:
            assert line.endswith(",-")

    def test_formats_carry_identical_values(self, small_report):
        import json

        csv_doc = render_report(small_report, "csv")
        structured = json.loads(render_report(small_report, "structured"))
        csv_first = csv_doc.splitlines()[1].split(",")
        structured_first = list(structured["rows"][0].values())
        assert csv_first == structured_first

    def test_formatting_contract(self, small_report):
        row = render_report(small_report, "csv").splitlines()[1].split(",")
        mean_ms, best_fitness = row[4], row[9]
        assert len(mean_ms.split(".")[1]) == 2
        assert len(best_fitness.split(".")[1]) == 3

    def test_empty_rows_header_only(self):
        from tspga.bench import BenchReport

        empty = BenchReport(rows=[], baseline_subject="engine")
        assert render_report(empty, "csv").splitlines() == [
            "n_cities,subject,max_ms,min_ms,mean_ms,stddev_ms,cv_percent,"
            "best_generation,last_seed,best_fitness,perf_vs_baseline_percent"
        ]

    def test_unknown_format(self, small_report):
        with pytest.raises(ValueError):
            render_report(small_report, "yaml")

    def test_plot_series(self, small_report):
        time_csv = plot_series_time(small_report)
        fit_csv = plot_series_fitness(small_report)
        assert time_csv.splitlines()[0] == "subject,n_cities,mean_ms"
        assert fit_csv.splitlines()[0] == "n_cities,best_fitness"
        assert len(fit_csv.splitlines()) == 4  # header + n in {5,6,7}


def test_subject_spec_validation():
    with pytest.raises(ValueError):
        SubjectSpec.external("   ")
    spec = SubjectSpec.external("python3 foo/bar.py")
    assert spec.id == "bar"
    assert spec.launch == ("python3", "foo/bar.py")
