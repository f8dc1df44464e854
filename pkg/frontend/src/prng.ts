/**
 * Counter-seeded random source: every draw bumps the seed counter by one
 * and feeds it through the SplitMix64 mixer, so the whole stream is a pure
 * function of the initial seed.  Matches the protocol every conformant
 * subject must implement, bit for bit.
 */

const MASK64 = (1n << 64n) - 1n;
const FLOAT_SCALE = 1 / 2 ** 53;

export function mix64(seed: bigint): bigint {
  let z = (seed + 0x9e3779b97f4a7c15n) & MASK64;
  z = ((z ^ (z >> 30n)) * 0xbf58476d1ce4e5b9n) & MASK64;
  z = ((z ^ (z >> 27n)) * 0x94d049bb133111ebn) & MASK64;
  return z ^ (z >> 31n);
}

export class CounterPrng {
  seed: bigint;

  constructor(seed: bigint | number) {
    this.seed = BigInt(seed);
    if (this.seed < 0n || this.seed > MASK64) {
      throw new Error("initial seed must be an unsigned 64-bit integer");
    }
  }

  private next(): bigint {
    if (this.seed + 1n > MASK64) {
      throw new Error("seed counter exhausted");
    }
    this.seed += 1n;
    return mix64(this.seed);
  }

  /** Uniform in [0, 1) with 53-bit resolution. */
  randFloat(): number {
    return Number(this.next() >> 11n) * FLOAT_SCALE;
  }

  /** Integer in [0, max); max must be >= 2 (a 1-element choice takes no draw). */
  randInt(max: number): number {
    if (max < 2) {
      throw new Error(`randInt requires max >= 2, got ${max}`);
    }
    return Number(this.next() % BigInt(max));
  }

  /** In-place Fisher-Yates; consumes length-1 draws. */
  shuffle<T>(items: T[]): T[] {
    for (let i = items.length - 1; i >= 1; i--) {
      const j = this.randInt(i + 1);
      const tmp = items[i];
      items[i] = items[j];
      items[j] = tmp;
    }
    return items;
  }
}
