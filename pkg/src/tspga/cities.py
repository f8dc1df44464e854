"""Cities, Euclidean distances, closed-tour evaluation and CSV ingestion."""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass, field
from typing import Sequence

from .backend import tour_length as _tour_length_kernel


class CityFileError(ValueError):
    """Raised for a malformed city CSV; message names the offending line."""


@dataclass(frozen=True)
class City:
    """A named 2D point; one gene of the chromosome."""

    name: str
    x: float
    y: float

    def __post_init__(self):
        if not self.name:
            raise ValueError("city name must be non-empty")
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"city {self.name!r} has non-finite coordinates")


class CityList:
    """Ordered, immutable list of distinctly-named cities.

    Coordinates are also kept as flat double arrays for the tour-length
    kernel.
    """

    def __init__(self, cities: Sequence[City]):
        cities = tuple(cities)
        if not cities:
            raise ValueError("need at least one city")
        seen = set()
        for c in cities:
            if c.name in seen:
                raise ValueError(f"duplicate city name {c.name!r}")
            seen.add(c.name)
        self.cities = cities
        self.xs = array("d", (c.x for c in cities))
        self.ys = array("d", (c.y for c in cities))

    def __len__(self) -> int:
        return len(self.cities)

    def __getitem__(self, i: int) -> City:
        return self.cities[i]

    def __iter__(self):
        return iter(self.cities)

    def prefix(self, n: int) -> "CityList":
        """First n cities, file order preserved."""
        if not 1 <= n <= len(self):
            raise ValueError(f"prefix length {n} out of range 1..{len(self)}")
        return CityList(self.cities[:n])


@dataclass
class Route:
    """A permutation of city indices with its cached closed-tour length."""

    order: list[int]
    length: float = field(default=math.nan)

    def evaluated(self) -> bool:
        return not math.isnan(self.length)


def parse_cities(text: str) -> CityList:
    """Parse a headerless name,x,y CSV document into a CityList.

    Raises CityFileError naming the 1-based line number on any malformed
    line (wrong field count, non-numeric coordinate, empty name, duplicate
    name).  Blank lines are skipped.
    """
    cities: list[City] = []
    names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 3:
            raise CityFileError(f"line {lineno}: expected 3 fields, got {len(fields)}")
        name, xs, ys = fields
        if not name:
            raise CityFileError(f"line {lineno}: empty city name")
        if name in names:
            raise CityFileError(f"line {lineno}: duplicate city name {name!r}")
        try:
            x = float(xs)
            y = float(ys)
        except ValueError:
            raise CityFileError(f"line {lineno}: non-numeric coordinate") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise CityFileError(f"line {lineno}: non-finite coordinate")
        names.add(name)
        cities.append(City(name, x, y))
    if not cities:
        raise CityFileError("no city lines found")
    return CityList(cities)


def load_cities(path) -> CityList:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_cities(fh.read())


def distance(a: City, b: City) -> float:
    """Euclidean distance between two cities."""
    return math.sqrt((a.x - b.x) ** 2 + (a.y - b.y) ** 2)


def tour_length(order: Sequence[int], cities: CityList) -> float:
    """Closed-tour length of `order` over `cities`; 0 for a single city.

    `order` must be a permutation of 0..n-1.
    """
    n = len(cities)
    if sorted(order) != list(range(n)):
        raise ValueError(f"order is not a permutation of 0..{n - 1}: {list(order)}")
    return _tour_length_kernel(order, cities.xs, cities.ys)


def evaluate_route(route: Route, cities: CityList) -> Route:
    """Fill in the route's cached length (in place) and return it."""
    route.length = tour_length(route.order, cities)
    return route
