/** Training loop: one sample per (instance, optimal solution) pair, shuffled
 * per epoch, hindsight loss, Adam updates per sample. */

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { Adam } from "./adam.js";
import type { Csr, InstanceGraph, LabeledInstance } from "./graph.js";
import { loadInstance, normalizedAdjacency } from "./graph.js";
import { backward, forward } from "./gcn.js";
import { hindsightLoss, targetVector } from "./loss.js";
import { Rng } from "./rng.js";
import type { GcnWeights } from "./weights.js";
import { initWeights } from "./weights.js";

export interface Sample {
  graph: InstanceGraph;
  ahat: Csr;
  target: Float64Array;
}

export interface TrainConfig {
  channelDims: number[];
  epochs: number;
  lr: number;
  seed: number;
  /** stop once an epoch's mean loss drops below this */
  stopAtLoss?: number;
  initialWeights?: GcnWeights;
  logEvery?: number;
  log?: (line: string) => void;
}

export interface TrainResult {
  weights: GcnWeights;
  /** mean per-sample loss for each epoch */
  epochLosses: number[];
}

export function samplesFromInstances(instances: LabeledInstance[]): Sample[] {
  const samples: Sample[] = [];
  for (const inst of instances) {
    const ahat = normalizedAdjacency(inst.graph);
    for (const solution of inst.solutions) {
      samples.push({ graph: inst.graph, ahat, target: targetVector(inst.graph.n, solution) });
    }
  }
  return samples;
}

export function loadTrainingSet(dataDir: string, split?: "train" | "test"): LabeledInstance[] {
  const manifest = JSON.parse(readFileSync(join(dataDir, "manifest.json"), "utf8")) as {
    instances: string[];
    split?: { train: string[]; test: string[] } | null;
  };
  let names = manifest.instances;
  if (split) {
    if (!manifest.split) throw new Error(`${dataDir}: manifest has no split`);
    names = manifest.split[split];
  }
  return names.map((name) => loadInstance(join(dataDir, name)));
}

export function meanLoss(samples: Sample[], weights: GcnWeights): number {
  let acc = 0;
  for (const sample of samples) {
    const cache = forward(sample.graph, weights, sample.ahat);
    acc += hindsightLoss(cache, sample.target).loss;
  }
  return acc / samples.length;
}

export function train(samples: Sample[], cfg: TrainConfig): TrainResult {
  if (samples.length === 0) throw new Error("no training samples");
  const weights =
    cfg.initialWeights ??
    initWeights(cfg.channelDims, cfg.seed, {
      trainer: "mds-gcn-trainer",
      epochs: cfg.epochs,
      lr: cfg.lr,
      seed: cfg.seed,
      samples: samples.length,
    });
  const adam = new Adam(weights, { lr: cfg.lr });
  const rng = new Rng(cfg.seed ^ 0x9e3779b9);
  const order = samples.map((_, i) => i);
  const epochLosses: number[] = [];
  for (let epoch = 0; epoch < cfg.epochs; epoch++) {
    rng.shuffle(order);
    let acc = 0;
    for (const idx of order) {
      const sample = samples[idx];
      const cache = forward(sample.graph, weights, sample.ahat);
      const { loss, gradOutput } = hindsightLoss(cache, sample.target);
      acc += loss;
      adam.update(weights, backward(cache, weights, gradOutput));
    }
    epochLosses.push(acc / samples.length);
    if (cfg.logEvery && (epoch + 1) % cfg.logEvery === 0) {
      (cfg.log ?? console.error)(`epoch ${epoch + 1}/${cfg.epochs} mean_loss=${epochLosses[epoch].toFixed(4)}`);
    }
    if (cfg.stopAtLoss !== undefined && epochLosses[epoch] < cfg.stopAtLoss) break;
  }
  return { weights, epochLosses };
}
