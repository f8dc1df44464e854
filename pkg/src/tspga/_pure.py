"""Pure-Python kernels: the SplitMix64 mixer and closed-tour length.

These are the hot inner functions of the engine.  A compiled Cython twin
lives in ``_kernels.pyx``; both must produce bit-identical results (the
mixer is exact 64-bit integer arithmetic, the tour length sums IEEE
doubles left to right with the closing edge last).
"""

from math import sqrt

BACKEND_NAME = "pure"

_MASK64 = (1 << 64) - 1


def mix64(seed: int) -> int:
    """SplitMix64 finalizer: map a 64-bit counter to a 64-bit output."""
    z = (seed + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def tour_length(order, xs, ys) -> float:
    """Length of the closed tour visiting cities in `order`.

    Edges are summed left to right, closing edge (last city back to the
    first) added last; this order is part of the trace-equality contract.
    """
    n = len(order)
    if n <= 1:
        return 0.0
    total = 0.0
    for i in range(n - 1):
        a = order[i]
        b = order[i + 1]
        dx = xs[a] - xs[b]
        dy = ys[a] - ys[b]
        total += sqrt(dx * dx + dy * dy)
    a = order[n - 1]
    b = order[0]
    dx = xs[a] - xs[b]
    dy = ys[a] - ys[b]
    total += sqrt(dx * dx + dy * dy)
    return total
