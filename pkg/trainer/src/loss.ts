/** Hindsight binary cross-entropy: each training sample is one optimal
 * solution; the loss is the minimum BCE over the m output maps, so only the
 * closest map receives gradient. Probabilities are clamped away from 0/1
 * before the logs.
 */

import type { ForwardCache } from "./gcn.js";
import type { Matrix } from "./matrix.js";
import { zeros } from "./matrix.js";

const CLAMP = 1e-7;

export interface LossResult {
  loss: number;
  bestMap: number;
  /** dL/dH_L in output-activation layout (n x m) */
  gradOutput: Matrix;
}

function clamp(p: number): number {
  return Math.min(Math.max(p, CLAMP), 1 - CLAMP);
}

/** Summed BCE of map column j against the 0/1 target vector. */
export function bceForMap(output: Matrix, target: Float64Array, j: number): number {
  let acc = 0;
  for (let v = 0; v < output.rows; v++) {
    const p = clamp(output.data[v * output.cols + j]);
    acc -= target[v] * Math.log(p) + (1 - target[v]) * Math.log(1 - p);
  }
  return acc;
}

export function targetVector(n: number, solution: number[]): Float64Array {
  const y = new Float64Array(n);
  for (const v of solution) {
    if (v < 0 || v >= n) throw new Error(`solution vertex ${v} out of range for n=${n}`);
    y[v] = 1;
  }
  return y;
}

export function hindsightLoss(cache: ForwardCache, target: Float64Array): LossResult {
  const output = cache.activations[cache.activations.length - 1];
  if (target.length !== output.rows) {
    throw new Error(`target has ${target.length} entries, output has ${output.rows} rows`);
  }
  let bestMap = 0;
  let best = Infinity;
  for (let j = 0; j < output.cols; j++) {
    const l = bceForMap(output, target, j);
    if (l < best) {
      best = l;
      bestMap = j;
    }
  }
  // d(sum BCE)/dp = (p - y) / (p (1 - p)), only in the winning column; the
  // sigmoid factor in backward() cancels this to the familiar p - y unless
  // the clamp was active
  const gradOutput = zeros(output.rows, output.cols);
  for (let v = 0; v < output.rows; v++) {
    const p = clamp(output.data[v * output.cols + bestMap]);
    gradOutput.data[v * output.cols + bestMap] = (p - target[v]) / (p * (1 - p));
  }
  return { loss: best, bestMap, gradOutput };
}
