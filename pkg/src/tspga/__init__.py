"""Deterministic GA engine for TSP with a benchmark and conformance harness."""

from .backend import BACKEND_NAME
from .brute import brute_force_optimum
from .cities import City, CityFileError, CityList, Route, distance, load_cities, parse_cities, tour_length
from .engine import Environment, GAConfig, RunTrace, run
from .prng import PrngState
from .stats import SummaryStats, linregress, perf_over_baseline, summarize
from .trace import parse_trace, serialize_trace

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "City",
    "CityFileError",
    "CityList",
    "Environment",
    "GAConfig",
    "PrngState",
    "Route",
    "RunTrace",
    "SummaryStats",
    "brute_force_optimum",
    "distance",
    "linregress",
    "load_cities",
    "parse_cities",
    "parse_trace",
    "perf_over_baseline",
    "run",
    "serialize_trace",
    "summarize",
    "tour_length",
    "__version__",
]
