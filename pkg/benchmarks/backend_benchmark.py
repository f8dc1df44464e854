"""Compare the compiled and pure-Python kernel backends.

Each backend runs in its own subprocess (backend choice is fixed at
import), timing full GA runs over the bundled fixture.  Results must be
identical; only speed may differ.

Usage: python3 benchmarks/backend_benchmark.py [--reps N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from tspga.backend import BACKEND_NAME
from tspga.cities import load_cities
from tspga.cli import default_cities_path
from tspga.engine import GAConfig, run

reps = int(sys.argv[1])
cities = load_cities(default_cities_path())
results = {"backend": BACKEND_NAME, "timings": {}, "fingerprint": {}}
for n in range(5, 11):
    prefix = cities.prefix(n)
    config = GAConfig(initial_seed=2)
    run(prefix, config)  # warm-up
    samples = []
    trace = None
    for _ in range(reps):
        trace = run(prefix, config)
        samples.append(trace.elapsed_ms)
    results["timings"][n] = sum(samples) / len(samples)
    results["fingerprint"][n] = [f"{trace.best_fitness:.9f}", trace.last_seed]
print(json.dumps(results))
"""


def measure(backend: str, reps: int) -> dict:
    env = dict(os.environ, TSPGA_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(reps)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--reps", type=int, default=20)
    args = parser.parse_args()

    try:
        compiled = measure("compiled", args.reps)
    except subprocess.CalledProcessError:
        print("compiled backend unavailable; build with: pip install -e . --no-build-isolation")
        return 1
    pure = measure("pure", args.reps)

    if compiled["fingerprint"] != pure["fingerprint"]:
        print("BACKENDS DISAGREE — this is a bug")
        return 1

    print(f"{'n':>3}  {'pure (ms)':>10}  {'compiled (ms)':>13}  {'speedup':>8}")
    for n in sorted(pure["timings"], key=int):
        p, c = pure["timings"][n], compiled["timings"][n]
        print(f"{n:>3}  {p:>10.3f}  {c:>13.3f}  {p / c:>7.2f}x")
    print("results identical across backends: yes")
    return 0


if __name__ == "__main__":
    sys.exit(main())
