#!/usr/bin/env node
/** mds-gcn-trainer CLI.
 *
 *   train --data DIR [--split train] --out WEIGHTS.json
 *         [--layers L] [--channels C] [--maps M] [--epochs E] [--lr LR] [--seed S]
 *   forward --weights WEIGHTS.json --instance INSTANCE.json
 *
 * ``forward`` prints the probability maps as JSON (m rows of n values), for
 * cross-checking against the solver toolkit's inference.
 */

import { parseArgs } from "node:util";
import { loadInstance } from "./graph.js";
import { forward, mapsFromCache } from "./gcn.js";
import { toRows } from "./matrix.js";
import { loadTrainingSet, samplesFromInstances, train } from "./train.js";
import { loadWeights, saveWeights } from "./weights.js";

function cmdTrain(argv: string[]): number {
  const { values } = parseArgs({
    args: argv,
    options: {
      data: { type: "string" },
      split: { type: "string" },
      out: { type: "string" },
      layers: { type: "string", default: "8" },
      channels: { type: "string", default: "32" },
      maps: { type: "string", default: "16" },
      epochs: { type: "string", default: "100" },
      lr: { type: "string", default: "0.001" },
      seed: { type: "string", default: "0" },
      "log-every": { type: "string", default: "10" },
    },
  });
  if (!values.data || !values.out) {
    console.error("train: --data and --out are required");
    return 1;
  }
  if (values.split && values.split !== "train" && values.split !== "test") {
    console.error(`train: bad --split ${values.split}`);
    return 1;
  }
  const layers = parseInt(values.layers!, 10);
  const channels = parseInt(values.channels!, 10);
  const maps = parseInt(values.maps!, 10);
  if (layers < 1 || channels < 1 || maps < 1) {
    console.error("train: --layers, --channels, --maps must be >= 1");
    return 1;
  }
  const channelDims = [channels, ...Array(layers - 1).fill(channels), maps];
  const instances = loadTrainingSet(values.data, values.split as "train" | "test" | undefined);
  const samples = samplesFromInstances(instances);
  console.error(`training on ${samples.length} samples from ${instances.length} instances`);
  const result = train(samples, {
    channelDims,
    epochs: parseInt(values.epochs!, 10),
    lr: parseFloat(values.lr!),
    seed: parseInt(values.seed!, 10),
    logEvery: parseInt(values["log-every"]!, 10),
  });
  saveWeights(result.weights, values.out);
  console.log(
    JSON.stringify({
      out: values.out,
      samples: samples.length,
      first_epoch_loss: result.epochLosses[0],
      final_epoch_loss: result.epochLosses[result.epochLosses.length - 1],
    }),
  );
  return 0;
}

function cmdForward(argv: string[]): number {
  const { values } = parseArgs({
    args: argv,
    options: {
      weights: { type: "string" },
      instance: { type: "string" },
    },
  });
  if (!values.weights || !values.instance) {
    console.error("forward: --weights and --instance are required");
    return 1;
  }
  const w = loadWeights(values.weights);
  const inst = loadInstance(values.instance);
  const maps = mapsFromCache(forward(inst.graph, w));
  console.log(JSON.stringify(toRows(maps)));
  return 0;
}

export function main(argv: string[]): number {
  const [command, ...rest] = argv;
  try {
    switch (command) {
      case "train":
        return cmdTrain(rest);
      case "forward":
        return cmdForward(rest);
      default:
        console.error("usage: mds-gcn-trainer <train|forward> ...");
        return 1;
    }
  } catch (err) {
    console.error(`mds-gcn-trainer ${command}: ${(err as Error).message}`);
    return 2;
  }
}

process.exitCode = main(process.argv.slice(2));
