/** GCN forward pass with cached activations and manual backprop.
 *
 * Layer rule: Z_l = H_l theta0_l + Ahat H_l theta1_l; hidden layers apply
 * ReLU, the output layer sigmoid. H_0 is all-ones n x C_0. The output
 * columns, transposed, are the m probability maps.
 */

import type { Csr, InstanceGraph } from "./graph.js";
import { csrMatmul, normalizedAdjacency } from "./graph.js";
import type { Matrix } from "./matrix.js";
import { addInPlace, matmul, matmulTransposeA, matmulTransposeB, ones, zeros } from "./matrix.js";
import type { GcnWeights } from "./weights.js";
import { zeroLike } from "./weights.js";

export interface ForwardCache {
  ahat: Csr;
  /** H_0 .. H_L; H_L holds the sigmoid outputs */
  activations: Matrix[];
  /** Z_1 .. Z_L pre-activations */
  preactivations: Matrix[];
}

export function forward(g: InstanceGraph, w: GcnWeights, ahat?: Csr): ForwardCache {
  const a = ahat ?? normalizedAdjacency(g);
  const activations: Matrix[] = [ones(g.n, w.channelDims[0])];
  const preactivations: Matrix[] = [];
  const last = w.layers.length - 1;
  for (let l = 0; l <= last; l++) {
    const h = activations[l];
    const z = matmul(h, w.layers[l].theta0);
    addInPlace(z, csrMatmul(a, matmul(h, w.layers[l].theta1)));
    preactivations.push(z);
    const out = zeros(z.rows, z.cols);
    if (l === last) {
      for (let i = 0; i < z.data.length; i++) out.data[i] = 1 / (1 + Math.exp(-z.data[i]));
    } else {
      for (let i = 0; i < z.data.length; i++) out.data[i] = Math.max(z.data[i], 0);
    }
    activations.push(out);
  }
  return { ahat: a, activations, preactivations };
}

/** Probability maps as an m x n row-major matrix (map-major, matching the solver). */
export function mapsFromCache(cache: ForwardCache): Matrix {
  const h = cache.activations[cache.activations.length - 1];
  const out = zeros(h.cols, h.rows);
  for (let v = 0; v < h.rows; v++) {
    for (let j = 0; j < h.cols; j++) {
      out.data[j * h.rows + v] = h.data[v * h.cols + j];
    }
  }
  return out;
}

/** Backpropagate dL/dH_L (n x m, same layout as the output activation)
 * through the network; returns per-layer gradients in weight layout. */
export function backward(cache: ForwardCache, w: GcnWeights, gradOutput: Matrix): GcnWeights {
  const grads = zeroLike(w);
  const last = w.layers.length - 1;
  let gradH = gradOutput;
  for (let l = last; l >= 0; l--) {
    const z = cache.preactivations[l];
    const out = cache.activations[l + 1];
    // through the activation: sigmoid'(z) = p(1-p); relu'(z) = [z > 0]
    const gradZ = zeros(z.rows, z.cols);
    if (l === last) {
      for (let i = 0; i < z.data.length; i++) {
        const p = out.data[i];
        gradZ.data[i] = gradH.data[i] * p * (1 - p);
      }
    } else {
      for (let i = 0; i < z.data.length; i++) {
        gradZ.data[i] = z.data[i] > 0 ? gradH.data[i] : 0;
      }
    }
    const h = cache.activations[l];
    // Z = H theta0 + Ahat H theta1, Ahat symmetric:
    // dtheta0 = H^T G, dtheta1 = H^T (Ahat G), dH = G theta0^T + Ahat G theta1^T
    const ag = csrMatmul(cache.ahat, gradZ);
    addInPlace(grads.layers[l].theta0, matmulTransposeA(h, gradZ));
    addInPlace(grads.layers[l].theta1, matmulTransposeA(h, ag));
    if (l > 0) {
      const next = matmulTransposeB(gradZ, w.layers[l].theta0);
      addInPlace(next, matmulTransposeB(ag, w.layers[l].theta1));
      gradH = next;
    }
  }
  return grads;
}
