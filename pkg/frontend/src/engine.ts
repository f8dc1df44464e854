/**
 * GA engine for TSP, independently implemented against the shared
 * engine contract: identity + shuffled-identity initial parents,
 * coin-then-pick crossover, rotation mutation, dedup-with-cap breeding,
 * strict-improvement best tracking, max-generation or stagnation stop.
 *
 * Draw order per candidate is fixed: crossover coin, crossover's internal
 * draws, mutation coin, mutation's index draw.
 */

import { CounterPrng } from "./prng";

export interface City {
  name: string;
  x: number;
  y: number;
}

export interface Config {
  populationSize: number;
  maxGenerations: number;
  crossoverRate: number;
  mutationRate: number;
  stagnationLimit: number;
  seed: number;
}

export interface Route {
  order: number[];
  length: number;
}

export interface GenerationRecord {
  generation: number;
  populationBest: number;
  bestSoFar: number;
  seedAfter: bigint;
}

export interface Trace {
  nCities: number;
  perGeneration: GenerationRecord[];
  bestFitness: number;
  bestGeneration: number;
  finalGeneration: number;
  lastSeed: bigint;
  elapsedMs: number;
}

const ATTEMPT_CAP_FACTOR = 100;

export function parseCities(text: string): City[] {
  const cities: City[] = [];
  const names = new Set<string>();
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "") continue;
    const fields = line.split(",").map((f) => f.trim());
    if (fields.length !== 3) {
      throw new Error(`line ${i + 1}: expected 3 fields, got ${fields.length}`);
    }
    const [name, xs, ys] = fields;
    if (name === "") throw new Error(`line ${i + 1}: empty city name`);
    if (names.has(name)) throw new Error(`line ${i + 1}: duplicate city name`);
    const x = Number(xs);
    const y = Number(ys);
    if (!Number.isFinite(x) || !Number.isFinite(y) || xs === "" || ys === "") {
      throw new Error(`line ${i + 1}: bad coordinate`);
    }
    names.add(name);
    cities.push({ name, x, y });
  }
  if (cities.length === 0) throw new Error("no city lines found");
  return cities;
}

/** Closed-tour length: edges summed left to right, closing edge last. */
export function tourLength(order: number[], cities: City[]): number {
  const n = order.length;
  if (n <= 1) return 0;
  let total = 0;
  for (let i = 0; i < n - 1; i++) {
    const a = cities[order[i]];
    const b = cities[order[i + 1]];
    const dx = a.x - b.x;
    const dy = a.y - b.y;
    total += Math.sqrt(dx * dx + dy * dy);
  }
  const a = cities[order[n - 1]];
  const b = cities[order[0]];
  const dx = a.x - b.x;
  const dy = a.y - b.y;
  total += Math.sqrt(dx * dx + dy * dy);
  return total;
}

function makeRoute(order: number[], cities: City[]): Route {
  return { order, length: tourLength(order, cities) };
}

function crossover(a: Route, b: Route, prng: CounterPrng, cities: City[]): Route {
  const n = cities.length;
  const used = new Array<boolean>(n).fill(false);
  const child: number[] = [];
  while (child.length < n) {
    const source = prng.randFloat() < 0.5 ? a : b;
    const pool = source.order.filter((g) => !used[g]);
    const gene = pool.length === 1 ? pool[0] : pool[prng.randInt(pool.length)];
    used[gene] = true;
    child.push(gene);
  }
  return makeRoute(child, cities);
}

function mutate(route: Route, prng: CounterPrng, cities: City[]): Route {
  const k = prng.randInt(route.order.length);
  const order = route.order.slice(k).concat(route.order.slice(0, k));
  return makeRoute(order, cities);
}

export function run(cities: City[], config: Config): Trace {
  if (cities.length < 2) throw new Error("the GA needs at least 2 cities");
  const start = performance.now();
  const n = cities.length;
  const prng = new CounterPrng(config.seed);

  const identity = Array.from({ length: n }, (_, i) => i);
  const parentA = makeRoute(identity.slice(), cities);
  const parentB = makeRoute(prng.shuffle(identity.slice()), cities);
  let population: Route[] = [parentA, parentB];
  population.sort((p, q) => p.length - q.length);

  let generation = 0;
  let best: Route = { order: population[0].order.slice(), length: population[0].length };
  let bestGeneration = 0;

  const trackBest = () => {
    if (population[0].length < best.length) {
      best = { order: population[0].order.slice(), length: population[0].length };
      bestGeneration = generation;
    }
  };

  const record = (records: GenerationRecord[]) => {
    records.push({
      generation,
      populationBest: population[0].length,
      bestSoFar: best.length,
      seedAfter: prng.seed,
    });
  };

  const perGeneration: GenerationRecord[] = [];
  record(perGeneration);

  const goalReached = () =>
    generation >= config.maxGenerations ||
    generation - bestGeneration > config.stagnationLimit;

  const cap = ATTEMPT_CAP_FACTOR * config.populationSize;
  while (!goalReached()) {
    generation += 1;
    const a = population[0];
    const b = population[1];
    const candidates: Route[] = [];
    const seen = new Set<string>();
    let attempts = 0;
    while (candidates.length < config.populationSize) {
      attempts += 1;
      let child: Route;
      if (prng.randFloat() < config.crossoverRate) {
        child = crossover(a, b, prng, cities);
      } else {
        child = { order: a.order.slice(), length: a.length };
      }
      if (prng.randFloat() < config.mutationRate) {
        child = mutate(child, prng, cities);
      }
      const key = child.order.join(",");
      if (!seen.has(key) || attempts >= cap) {
        candidates.push(child);
        seen.add(key);
      }
    }
    population = candidates;
    population.sort((p, q) => p.length - q.length);
    trackBest();
    record(perGeneration);
  }

  return {
    nCities: n,
    perGeneration,
    bestFitness: best.length,
    bestGeneration,
    finalGeneration: generation,
    lastSeed: prng.seed,
    elapsedMs: performance.now() - start,
  };
}

/** Render a trace as the wire-protocol JSON document (lengths at 9 decimals). */
export function serializeTrace(trace: Trace, includeTiming = true): string {
  const lines = [
    "{",
    `  "n_cities": ${trace.nCities},`,
    `  "best_fitness": ${trace.bestFitness.toFixed(9)},`,
    `  "best_generation": ${trace.bestGeneration},`,
    `  "final_generation": ${trace.finalGeneration},`,
    `  "last_seed": ${trace.lastSeed.toString()},`,
  ];
  if (includeTiming) {
    lines.push(`  "elapsed_ms": ${trace.elapsedMs.toFixed(6)},`);
  }
  const rows = trace.perGeneration.map(
    (rec) =>
      `    [${rec.generation}, ${rec.populationBest.toFixed(9)}, ` +
      `${rec.bestSoFar.toFixed(9)}, ${rec.seedAfter.toString()}]`
  );
  lines.push('  "per_generation": [');
  lines.push(rows.join(",\n"));
  lines.push("  ]");
  lines.push("}");
  return lines.join("\n") + "\n";
}
