/**
 * Entry point: `serve` runs the protocol server, `finetune` trains a
 * victim checkpoint from an extended-CoNLL file.
 */

import * as fs from "node:fs";
import { parseArgs } from "node:util";

import { WhitespaceFallbackAnnotator } from "./annotate.js";
import { FINETUNE_DEFAULTS, finetune, sentencesFromConll } from "./finetune.js";
import { TokenClassifier } from "./model.js";
import { buildApp } from "./server.js";

function serveCommand(argv: string[]): number {
  const { values } = parseArgs({
    args: argv,
    options: {
      checkpoint: { type: "string" },
      port: { type: "string", default: "8370" },
      "attribution-steps": { type: "string", default: "8" },
      "attribution-epsilon": { type: "string", default: "0.001" },
      annotator: { type: "string", default: "none" },
    },
  });
  if (!values.checkpoint) {
    console.error("error: --checkpoint <file> is required");
    return 1;
  }
  const victim = TokenClassifier.load(values.checkpoint);
  const app = buildApp({
    victim,
    annotator: values.annotator === "whitespace" ? new WhitespaceFallbackAnnotator() : undefined,
    attribution: {
      steps: Number(values["attribution-steps"]),
      epsilon: Number(values["attribution-epsilon"]),
    },
    modelIds: { ner_predict: `token-classifier:${values.checkpoint}` },
  });
  const port = Number(values.port);
  app.listen(port, "127.0.0.1", () => {
    console.log(`model server listening on http://127.0.0.1:${port}`);
  });
  return 0;
}

function finetuneCommand(argv: string[]): number {
  const { values } = parseArgs({
    args: argv,
    options: {
      train: { type: "string" },
      output: { type: "string" },
      "learning-rate": { type: "string", default: String(FINETUNE_DEFAULTS.learningRate) },
      "batch-size": { type: "string", default: String(FINETUNE_DEFAULTS.batchSize) },
      "weight-decay": { type: "string", default: String(FINETUNE_DEFAULTS.weightDecay) },
      epochs: { type: "string", default: String(FINETUNE_DEFAULTS.epochs) },
      seed: { type: "string", default: String(FINETUNE_DEFAULTS.seed) },
      dim: { type: "string", default: String(FINETUNE_DEFAULTS.dim) },
      "ffn-dim": { type: "string", default: String(FINETUNE_DEFAULTS.ffnDim) },
    },
  });
  if (!values.train || !values.output) {
    console.error("error: --train <conll> and --output <checkpoint> are required");
    return 1;
  }
  const sentences = sentencesFromConll(fs.readFileSync(values.train, "utf-8"));
  const options = {
    ...FINETUNE_DEFAULTS,
    learningRate: Number(values["learning-rate"]),
    batchSize: Number(values["batch-size"]),
    weightDecay: Number(values["weight-decay"]),
    epochs: Number(values.epochs),
    seed: Number(values.seed),
    dim: Number(values.dim),
    ffnDim: Number(values["ffn-dim"]),
  };
  const { model, epochLosses } = finetune(sentences, options);
  epochLosses.forEach((loss, i) => console.log(`epoch ${i + 1}: loss=${loss.toFixed(6)}`));
  model.save(values.output);
  console.log(`checkpoint written to ${values.output}`);
  return 0;
}

function main(): number {
  const [command, ...rest] = process.argv.slice(2);
  if (command === "serve") return serveCommand(rest);
  if (command === "finetune") return finetuneCommand(rest);
  console.error("usage: main.js <serve|finetune> [flags]");
  return 1;
}

process.exitCode = main();
