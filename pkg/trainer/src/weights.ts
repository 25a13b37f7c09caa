/** Weight JSON IO in the format the solver toolkit consumes:
 * {"channel_dims": [...], "layers": [{"theta0": [[...]], "theta1": [[...]]}], "metadata": {}}
 */

import { readFileSync, writeFileSync } from "node:fs";
import type { Matrix } from "./matrix.js";
import { fromRows, toRows, zeros } from "./matrix.js";
import { Rng } from "./rng.js";

export interface LayerWeights {
  theta0: Matrix; // self term, C_l x C_{l+1}
  theta1: Matrix; // neighbor-aggregation term, same shape
}

export interface GcnWeights {
  channelDims: number[];
  layers: LayerWeights[];
  metadata: Record<string, unknown>;
}

export function validateWeights(w: GcnWeights): void {
  if (w.layers.length !== w.channelDims.length - 1) {
    throw new Error(
      `${w.layers.length} layers but ${w.channelDims.length} channel dims`,
    );
  }
  w.layers.forEach((layer, l) => {
    for (const [name, t] of [["theta0", layer.theta0], ["theta1", layer.theta1]] as const) {
      if (t.rows !== w.channelDims[l] || t.cols !== w.channelDims[l + 1]) {
        throw new Error(
          `layer ${l} ${name}: shape ${t.rows}x${t.cols} breaks the chain, ` +
            `expected ${w.channelDims[l]}x${w.channelDims[l + 1]}`,
        );
      }
      for (const x of t.data) {
        if (!Number.isFinite(x)) throw new Error(`layer ${l} ${name}: non-finite entry`);
      }
    }
  });
}

export function saveWeights(w: GcnWeights, path: string): void {
  validateWeights(w);
  const doc = {
    channel_dims: w.channelDims,
    layers: w.layers.map((layer) => ({
      theta0: toRows(layer.theta0),
      theta1: toRows(layer.theta1),
    })),
    metadata: w.metadata,
  };
  writeFileSync(path, JSON.stringify(doc));
}

export function loadWeights(path: string): GcnWeights {
  const doc = JSON.parse(readFileSync(path, "utf8")) as {
    channel_dims: number[];
    layers: Array<{ theta0: number[][]; theta1: number[][] }>;
    metadata?: Record<string, unknown>;
  };
  const w: GcnWeights = {
    channelDims: doc.channel_dims,
    layers: doc.layers.map((layer) => ({
      theta0: fromRows(layer.theta0),
      theta1: fromRows(layer.theta1),
    })),
    metadata: doc.metadata ?? {},
  };
  validateWeights(w);
  return w;
}

/** Fan-in-scaled uniform init, same scheme the solver's fixture weights use. */
export function initWeights(
  channelDims: number[],
  seed: number,
  metadata: Record<string, unknown> = {},
): GcnWeights {
  const rng = new Rng(seed);
  const layers: LayerWeights[] = [];
  for (let l = 0; l < channelDims.length - 1; l++) {
    const scale = 1 / Math.sqrt(channelDims[l]);
    const make = () => {
      const t = zeros(channelDims[l], channelDims[l + 1]);
      for (let i = 0; i < t.data.length; i++) t.data[i] = rng.uniform(-scale, scale);
      return t;
    };
    layers.push({ theta0: make(), theta1: make() });
  }
  return { channelDims: [...channelDims], layers, metadata };
}

export function zeroLike(w: GcnWeights): GcnWeights {
  return {
    channelDims: [...w.channelDims],
    layers: w.layers.map((layer) => ({
      theta0: zeros(layer.theta0.rows, layer.theta0.cols),
      theta1: zeros(layer.theta1.rows, layer.theta1.cols),
    })),
    metadata: {},
  };
}
