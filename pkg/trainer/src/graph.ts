/** Instance JSON parsing and the symmetrically normalized adjacency in CSR form. */

import { readFileSync } from "node:fs";
import type { Matrix } from "./matrix.js";
import { zeros } from "./matrix.js";

export interface InstanceGraph {
  n: number;
  edges: Array<[number, number]>;
}

export interface LabeledInstance {
  graph: InstanceGraph;
  gamma: number;
  solutions: number[][];
}

/** Sparse symmetric matrix, compressed rows. */
export interface Csr {
  n: number;
  rowPtr: Int32Array;
  colIdx: Int32Array;
  values: Float64Array;
}

export function parseInstance(text: string, name = "instance"): LabeledInstance {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new Error(`${name}: parse error: ${(err as Error).message}`);
  }
  const rec = doc as Record<string, unknown>;
  for (const key of ["n", "edges", "gamma", "solutions"]) {
    if (!(key in rec)) throw new Error(`${name}: missing field '${key}'`);
  }
  const n = rec.n as number;
  const edges = (rec.edges as number[][]).map(([u, v]) => [u, v] as [number, number]);
  for (const [u, v] of edges) {
    if (u === v || u < 0 || v < 0 || u >= n || v >= n) {
      throw new Error(`${name}: bad edge (${u}, ${v}) for n=${n}`);
    }
  }
  const solutions = rec.solutions as number[][];
  const gamma = rec.gamma as number;
  for (const s of solutions) {
    if (s.length !== gamma) throw new Error(`${name}: solution size ${s.length} != gamma ${gamma}`);
  }
  return { graph: { n, edges }, gamma, solutions };
}

export function loadInstance(path: string): LabeledInstance {
  return parseInstance(readFileSync(path, "utf8"), path);
}

export function degrees(g: InstanceGraph): Int32Array {
  const deg = new Int32Array(g.n);
  for (const [u, v] of g.edges) {
    deg[u]++;
    deg[v]++;
  }
  return deg;
}

/** D^{-1/2} A D^{-1/2}; degree-0 vertices get empty rows. */
export function normalizedAdjacency(g: InstanceGraph): Csr {
  const deg = degrees(g);
  const invSqrt = new Float64Array(g.n);
  for (let v = 0; v < g.n; v++) {
    invSqrt[v] = deg[v] > 0 ? 1 / Math.sqrt(deg[v]) : 0;
  }
  const rowPtr = new Int32Array(g.n + 1);
  for (const [u, v] of g.edges) {
    rowPtr[u + 1]++;
    rowPtr[v + 1]++;
  }
  for (let v = 0; v < g.n; v++) rowPtr[v + 1] += rowPtr[v];
  const colIdx = new Int32Array(2 * g.edges.length);
  const values = new Float64Array(2 * g.edges.length);
  const cursor = rowPtr.slice(0, g.n);
  for (const [u, v] of g.edges) {
    const w = invSqrt[u] * invSqrt[v];
    colIdx[cursor[u]] = v;
    values[cursor[u]++] = w;
    colIdx[cursor[v]] = u;
    values[cursor[v]++] = w;
  }
  return { n: g.n, rowPtr, colIdx, values };
}

/** ahat @ h for dense h */
export function csrMatmul(ahat: Csr, h: Matrix): Matrix {
  if (ahat.n !== h.rows) {
    throw new Error(`csrMatmul shape mismatch: ${ahat.n} vs ${h.rows}`);
  }
  const out = zeros(h.rows, h.cols);
  for (let i = 0; i < ahat.n; i++) {
    const oi = i * h.cols;
    for (let idx = ahat.rowPtr[i]; idx < ahat.rowPtr[i + 1]; idx++) {
      const j = ahat.colIdx[idx];
      const w = ahat.values[idx];
      const hj = j * h.cols;
      for (let c = 0; c < h.cols; c++) {
        out.data[oi + c] += w * h.data[hj + c];
      }
    }
  }
  return out;
}
