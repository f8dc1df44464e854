"""Exact TSP by exhaustive enumeration; the correctness oracle for the GA.

City 0 is fixed as the start and only one tour direction is enumerated
(a closed tour has the same length from any start and in either
direction), so (n-1)!/2 tours are examined.  Guarded to n <= 12.
"""

from itertools import permutations

from .backend import tour_length as _tour_length_kernel
from .cities import CityList, Route

MAX_BRUTE_FORCE_CITIES = 12


def brute_force_optimum(cities: CityList) -> tuple[Route, float]:
    """Globally shortest closed tour; ties broken by smallest order sequence.

    Raises ValueError for more than 12 cities.
    """
    n = len(cities)
    if n > MAX_BRUTE_FORCE_CITIES:
        raise ValueError(
            f"{n} cities exceeds the brute-force limit of {MAX_BRUTE_FORCE_CITIES}"
        )
    if n <= 2:
        order = list(range(n))
        length = _tour_length_kernel(order, cities.xs, cities.ys)
        return Route(order, length), length

    xs, ys = cities.xs, cities.ys
    best_order = None
    best_len = float("inf")
    # permutations() is lexicographic, and the direction filter keeps the
    # lexicographically smaller member of each reversal pair, so strict <
    # yields the smallest order among ties.
    for rest in permutations(range(1, n)):
        if rest[0] > rest[-1]:
            continue
        length = _tour_length_kernel((0,) + rest, xs, ys)
        if length < best_len:
            best_len = length
            best_order = [0, *rest]
    return Route(best_order, best_len), best_len
