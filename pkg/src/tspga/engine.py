"""The GA environment: population lifecycle, operators, termination, tracing.

Determinism contract: one run is single-threaded, every random draw goes
through one PrngState, and the draw order is fixed.  Per candidate the
order is: crossover coin, crossover's internal draws (if taken), mutation
coin, mutation's index draw (if taken).  Any conformant implementation
must consume the stream identically.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .cities import CityList, Route, evaluate_route
from .prng import PrngState

# After this many candidate attempts duplicates are admitted, so the
# candidate loop terminates even when few unique offspring exist.
ATTEMPT_CAP_FACTOR = 100


@dataclass(frozen=True)
class GAConfig:
    population_size: int = 5
    max_generations: int = 100
    crossover_rate: float = 0.90
    mutation_rate: float = 0.01
    stagnation_limit: int = 20
    initial_seed: int = 0

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if self.max_generations < 1:
            raise ValueError("max_generations must be >= 1")
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ValueError("crossover_rate must be in [0, 1]")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must be in [0, 1]")
        if self.stagnation_limit < 1:
            raise ValueError("stagnation_limit must be >= 1")
        if self.initial_seed < 0:
            raise ValueError("initial_seed must be non-negative")


@dataclass
class GenerationRecord:
    generation: int
    population_best: float
    best_so_far: float
    seed_after: int


@dataclass
class RunTrace:
    """The conformance artifact: everything a run must agree on."""

    n_cities: int
    per_generation: list[GenerationRecord] = field(default_factory=list)
    best_fitness: float = float("inf")
    best_generation: int = 0
    final_generation: int = 0
    last_seed: int = 0
    elapsed_ms: float = 0.0


class Environment:
    """One GA run over a fixed city list.  Single-threaded by contract."""

    def __init__(self, cities: CityList, config: GAConfig):
        if len(cities) < 2:
            raise ValueError("the GA needs at least 2 cities")
        self.cities = cities
        self.config = config
        self.prng = PrngState(config.initial_seed)
        self.generation = 0
        self.population: list[Route] = []
        self.best: Route | None = None
        self.best_generation = 0

    # -- population lifecycle -------------------------------------------

    def make_population(self) -> list[Route]:
        """Initial two parents: file order, and a shuffle of it."""
        n = len(self.cities)
        parent_a = evaluate_route(Route(list(range(n))), self.cities)
        order_b = self.prng.shuffle(list(range(n)))
        parent_b = evaluate_route(Route(order_b), self.cities)
        self.population = [parent_a, parent_b]
        return self.population

    def evaluate_population(self) -> list[Route]:
        """Stable sort ascending by length; ties keep insertion order."""
        self.population.sort(key=lambda r: r.length)
        return self.population

    def track_best(self) -> None:
        """Adopt the population head as best only on strict improvement."""
        head = self.population[0]
        if self.best is None or head.length < self.best.length:
            self.best = Route(list(head.order), head.length)
            self.best_generation = self.generation

    def goal_reached(self) -> bool:
        return (
            self.generation >= self.config.max_generations
            or self.generation - self.best_generation > self.config.stagnation_limit
        )

    # -- operators -------------------------------------------------------

    def crossover_routes(self, parent_a: Route, parent_b: Route) -> Route:
        """Gene-by-gene recombination.

        For each position: a coin picks the source parent (A on < 0.5),
        then one of that parent's not-yet-used genes is drawn, in parent
        order.  A one-gene pool is taken without a draw.
        """
        n = len(self.cities)
        used = [False] * n
        child: list[int] = []
        while len(child) < n:
            coin = self.prng.rand_float()
            source = parent_a if coin < 0.5 else parent_b
            pool = [g for g in source.order if not used[g]]
            if len(pool) == 1:
                gene = pool[0]
            else:
                gene = pool[self.prng.rand_int(len(pool))]
            used[gene] = True
            child.append(gene)
        return evaluate_route(Route(child), self.cities)

    def mutate_route(self, route: Route) -> Route:
        """Left rotation by a drawn index; fitness-neutral on a closed tour."""
        n = len(route.order)
        if n < 2:
            raise ValueError("mutation needs at least 2 genes")
        k = self.prng.rand_int(n)
        order = route.order[k:] + route.order[:k]
        return evaluate_route(Route(order), self.cities)

    def build_candidates(self) -> list[Route]:
        """Breed the next population from the two best current routes.

        Duplicates (exact order equality) are rejected until the attempt
        cap, then admitted so the loop always terminates.
        """
        parent_a, parent_b = self.population[0], self.population[1]
        size = self.config.population_size
        cap = ATTEMPT_CAP_FACTOR * size
        candidates: list[Route] = []
        orders: set[tuple[int, ...]] = set()
        attempts = 0
        while len(candidates) < size:
            attempts += 1
            if self.prng.rand_float() < self.config.crossover_rate:
                child = self.crossover_routes(parent_a, parent_b)
            else:
                child = Route(list(parent_a.order), parent_a.length)
            if self.prng.rand_float() < self.config.mutation_rate:
                child = self.mutate_route(child)
            key = tuple(child.order)
            if key not in orders or attempts >= cap:
                candidates.append(child)
                orders.add(key)
        self.population = candidates
        return candidates

    # -- driver ----------------------------------------------------------

    def step(self) -> None:
        self.build_candidates()
        self.evaluate_population()
        self.track_best()


def run(cities: CityList, config: GAConfig) -> RunTrace:
    """Run the GA to termination and return its full trace.

    The timed region starts after city parsing (environment setup) and
    ends when the loop exits, measured on a monotonic clock.
    """
    start = time.perf_counter()
    env = Environment(cities, config)
    trace = RunTrace(n_cities=len(cities))

    env.make_population()
    env.evaluate_population()
    env.track_best()
    trace.per_generation.append(
        GenerationRecord(0, env.population[0].length, env.best.length, env.prng.seed)
    )

    while not env.goal_reached():
        env.generation += 1
        env.step()
        trace.per_generation.append(
            GenerationRecord(
                env.generation,
                env.population[0].length,
                env.best.length,
                env.prng.seed,
            )
        )

    trace.best_fitness = env.best.length
    trace.best_generation = env.best_generation
    trace.final_generation = env.generation
    trace.last_seed = env.prng.seed
    trace.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return trace
