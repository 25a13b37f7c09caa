import { describe, expect, it } from "vitest";
import { forward } from "../src/gcn.js";
import type { InstanceGraph } from "../src/graph.js";
import { bceForMap, hindsightLoss, targetVector } from "../src/loss.js";
import { zeros } from "../src/matrix.js";
import type { ForwardCache } from "../src/gcn.js";

const C6: InstanceGraph = {
  n: 6,
  edges: [0, 1, 2, 3, 4, 5].map((i) => [i, (i + 1) % 6] as [number, number]),
};

/** Wrap a fixed n x m output matrix as a forward cache for loss tests. */
function cacheWithOutput(values: number[][]): ForwardCache {
  const n = values.length;
  const m = values[0].length;
  const out = zeros(n, m);
  for (let v = 0; v < n; v++) out.data.set(values[v], v * m);
  return { ahat: { n, rowPtr: new Int32Array(n + 1), colIdx: new Int32Array(0), values: new Float64Array(0) }, activations: [out], preactivations: [] };
}

describe("hindsight loss", () => {
  it("uniform half maps cost n ln 2", () => {
    const cache = cacheWithOutput(Array.from({ length: 6 }, () => [0.5, 0.5]));
    const { loss } = hindsightLoss(cache, targetVector(6, [0, 3]));
    expect(loss).toBeCloseTo(6 * Math.LN2, 12);
  });

  it("is near zero when one map matches the solution", () => {
    const rows = Array.from({ length: 6 }, (_, v) => [
      0.5,
      v === 0 || v === 3 ? 0.9999 : 0.0001,
    ]);
    const { loss, bestMap } = hindsightLoss(cacheWithOutput(rows), targetVector(6, [0, 3]));
    expect(bestMap).toBe(1);
    expect(loss).toBeLessThan(0.001);
  });

  it("takes the minimum over maps", () => {
    const rows = Array.from({ length: 6 }, (_, v) => [
      v === 0 || v === 3 ? 0.8 : 0.2, // decent map
      v === 1 || v === 4 ? 0.99 : 0.01, // excellent map for a different optimum
    ]);
    const target14 = targetVector(6, [1, 4]);
    const cache = cacheWithOutput(rows);
    expect(hindsightLoss(cache, target14).bestMap).toBe(1);
    expect(hindsightLoss(cache, target14).loss).toBeCloseTo(bceForMap(cache.activations[0], target14, 1), 12);
  });

  it("clamps probabilities away from zero and one", () => {
    const rows = Array.from({ length: 6 }, () => [0]);
    const { loss } = hindsightLoss(cacheWithOutput(rows), targetVector(6, [0]));
    expect(Number.isFinite(loss)).toBe(true);
  });

  it("separate solutions of one instance are separate samples", () => {
    // same maps, different targets, different winning maps
    const rows = Array.from({ length: 6 }, (_, v) => [
      v === 0 || v === 3 ? 0.9 : 0.1,
      v === 1 || v === 4 ? 0.9 : 0.1,
    ]);
    const cache = cacheWithOutput(rows);
    expect(hindsightLoss(cache, targetVector(6, [0, 3])).bestMap).toBe(0);
    expect(hindsightLoss(cache, targetVector(6, [1, 4])).bestMap).toBe(1);
  });

  it("rejects mismatched target length", () => {
    const w = { channelDims: [2, 2], layers: [{ theta0: zeros(2, 2), theta1: zeros(2, 2) }], metadata: {} };
    const cache = forward(C6, w);
    expect(() => hindsightLoss(cache, targetVector(5, [0]))).toThrow(/entries/);
  });
});
