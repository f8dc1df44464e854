/**
 * Wire-protocol entry point: subject.js CITIES_CSV CONFIG_JSON
 *
 * Prints exactly one trace document on stdout; any failure exits nonzero
 * with a message on stderr.
 */

import { readFileSync } from "node:fs";
import { Config, parseCities, run, serializeTrace } from "./engine";

function loadConfig(path: string): Config {
  const raw = JSON.parse(readFileSync(path, "utf-8"));
  for (const key of [
    "population_size",
    "max_generations",
    "crossover_rate",
    "mutation_rate",
    "stagnation_limit",
    "seed",
  ]) {
    if (!(key in raw)) throw new Error(`config missing key ${key}`);
  }
  return {
    populationSize: raw.population_size,
    maxGenerations: raw.max_generations,
    crossoverRate: raw.crossover_rate,
    mutationRate: raw.mutation_rate,
    stagnationLimit: raw.stagnation_limit,
    seed: raw.seed,
  };
}

function main(): number {
  const [citiesPath, configPath] = process.argv.slice(2);
  if (!citiesPath || !configPath) {
    process.stderr.write("usage: subject.js CITIES_CSV CONFIG_JSON\n");
    return 2;
  }
  const cities = parseCities(readFileSync(citiesPath, "utf-8"));
  const config = loadConfig(configPath);
  const trace = run(cities, config);
  process.stdout.write(serializeTrace(trace));
  return 0;
}

try {
  process.exit(main());
} catch (err) {
  process.stderr.write(`error: ${err instanceof Error ? err.message : err}\n`);
  process.exit(1);
}
