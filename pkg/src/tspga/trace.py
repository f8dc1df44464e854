"""RunTrace wire format: a small JSON document with fixed number formatting.

All lengths are serialized to exactly 9 decimal places so that traces from
independent implementations compare bitwise, regardless of each language's
default float formatting.  The field set and order are part of the subject
wire protocol.

elapsed_ms is the one nondeterministic field; serialization can omit it so
that the canonical form of a deterministic run is byte-stable.
"""

from __future__ import annotations

import json

from .engine import GenerationRecord, RunTrace

TRACE_FIELDS = (
    "n_cities",
    "best_fitness",
    "best_generation",
    "final_generation",
    "last_seed",
    "elapsed_ms",
    "per_generation",
)


def serialize_trace(trace: RunTrace, include_timing: bool = True) -> str:
    """Render a trace as its canonical JSON document (newline-terminated)."""
    lines = [
        "{",
        f'  "n_cities": {trace.n_cities},',
        f'  "best_fitness": {trace.best_fitness:.9f},',
        f'  "best_generation": {trace.best_generation},',
        f'  "final_generation": {trace.final_generation},',
        f'  "last_seed": {trace.last_seed},',
    ]
    if include_timing:
        lines.append(f'  "elapsed_ms": {trace.elapsed_ms:.6f},')
    rows = [
        f"    [{rec.generation}, {rec.population_best:.9f}, "
        f"{rec.best_so_far:.9f}, {rec.seed_after}]"
        for rec in trace.per_generation
    ]
    lines.append('  "per_generation": [')
    lines.append(",\n".join(rows))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


class TraceFormatError(ValueError):
    """Raised when a subject's output is not a valid trace document."""


def parse_trace(text: str) -> RunTrace:
    """Parse a trace document; elapsed_ms defaults to 0 when absent."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TraceFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise TraceFormatError("trace document must be a JSON object")
    missing = [
        f for f in TRACE_FIELDS if f not in doc and f != "elapsed_ms"
    ]
    if missing:
        raise TraceFormatError(f"trace document missing fields: {missing}")
    records = []
    for row in doc["per_generation"]:
        if not (isinstance(row, list) and len(row) == 4):
            raise TraceFormatError(f"bad per_generation row: {row!r}")
        records.append(GenerationRecord(int(row[0]), float(row[1]), float(row[2]), int(row[3])))
    return RunTrace(
        n_cities=int(doc["n_cities"]),
        per_generation=records,
        best_fitness=float(doc["best_fitness"]),
        best_generation=int(doc["best_generation"]),
        final_generation=int(doc["final_generation"]),
        last_seed=int(doc["last_seed"]),
        elapsed_ms=float(doc.get("elapsed_ms", 0.0)),
    )
