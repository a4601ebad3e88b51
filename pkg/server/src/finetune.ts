/**
 * Victim fine-tuning on extended-CoNLL data.
 *
 * Defaults: Adam at learning rate 5e-5, batch size 8, decoupled weight
 * decay 0.01, 10 epochs (use --epochs 20 for short noisy corpora).
 * Training is deterministic for a fixed seed: weight init, the batch
 * shuffle and the optimizer all derive from it.
 */

import * as tf from "@tensorflow/tfjs";

import { collectLabels, nerTags, parseConll } from "./conll.js";
import { TokenClassifier, defaultConfig } from "./model.js";

export interface FinetuneOptions {
  learningRate: number;
  batchSize: number;
  weightDecay: number;
  epochs: number;
  seed: number;
  dim: number;
  ffnDim: number;
  maxLen: number;
}

export const FINETUNE_DEFAULTS: FinetuneOptions = {
  learningRate: 5e-5,
  batchSize: 8,
  weightDecay: 0.01,
  epochs: 10,
  seed: 13,
  dim: 32,
  ffnDim: 64,
  maxLen: 128,
};

export interface TrainingSentence {
  words: string[];
  tags: string[];
}

export function sentencesFromConll(text: string): TrainingSentence[] {
  return parseConll(text).map((sent) => ({
    words: sent.tokens.map((tok) => tok.form),
    tags: nerTags(sent),
  }));
}

/** Word-piece vocabulary: whole lowercased forms plus character fallbacks. */
export function vocabFromSentences(sentences: TrainingSentence[]): string[] {
  const vocab = new Set<string>();
  for (const { words } of sentences) {
    for (const word of words) {
      const lower = word.toLowerCase();
      vocab.add(lower);
      for (const ch of lower) {
        vocab.add(ch);
        vocab.add(`##${ch}`);
      }
    }
  }
  return [...vocab].sort();
}

/** Deterministic shuffle (mulberry32). */
function shuffled<T>(items: T[], seed: number): T[] {
  let state = seed >>> 0;
  const next = () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
  const out = [...items];
  for (let i = out.length - 1; i > 0; i--) {
    const j = Math.floor(next() * (i + 1));
    [out[i], out[j]] = [out[j], out[i]];
  }
  return out;
}

export function buildModel(sentences: TrainingSentence[], options: FinetuneOptions): TokenClassifier {
  const labels = collectLabels(
    sentences.map((s, i) => ({
      id: String(i),
      tokens: s.words.map((form, j) => ({
        form, upos: "X", chunk: "O", head: 0, deprel: "dep", ner: s.tags[j],
      })),
    })),
  );
  return new TokenClassifier(defaultConfig({
    vocabTokens: vocabFromSentences(sentences),
    labels,
    dim: options.dim,
    ffnDim: options.ffnDim,
    maxLen: options.maxLen,
    seed: options.seed,
  }));
}

/** One optimization step over a batch; returns the loss before the step. */
export function trainStep(
  model: TokenClassifier,
  batch: TrainingSentence[],
  optimizer: tf.Optimizer,
  options: Pick<FinetuneOptions, "learningRate" | "weightDecay">,
): number {
  const lossScalar = optimizer.minimize(
    () => model.loss(batch),
    true,
    model.trainableWeights(),
  ) as tf.Scalar;
  const value = lossScalar.arraySync() as number;
  lossScalar.dispose();
  model.applyWeightDecay(options.learningRate, options.weightDecay);
  return value;
}

/** Repeated steps over one fixed batch (overfit sanity checks). */
export function trainSteps(
  model: TokenClassifier,
  batch: TrainingSentence[],
  steps: number,
  options: FinetuneOptions = FINETUNE_DEFAULTS,
): number[] {
  const optimizer = tf.train.adam(options.learningRate);
  const losses: number[] = [];
  for (let i = 0; i < steps; i++) {
    losses.push(trainStep(model, batch, optimizer, options));
  }
  optimizer.dispose();
  return losses;
}

export interface FinetuneResult {
  model: TokenClassifier;
  epochLosses: number[];
}

export function finetune(
  sentences: TrainingSentence[],
  options: FinetuneOptions = FINETUNE_DEFAULTS,
): FinetuneResult {
  if (sentences.length === 0) throw new Error("no training sentences");
  const model = buildModel(sentences, options);
  const optimizer = tf.train.adam(options.learningRate);
  const epochLosses: number[] = [];
  for (let epoch = 0; epoch < options.epochs; epoch++) {
    const order = shuffled(sentences, options.seed + epoch);
    let total = 0;
    let batches = 0;
    for (let start = 0; start < order.length; start += options.batchSize) {
      const batch = order.slice(start, start + options.batchSize);
      total += trainStep(model, batch, optimizer, options);
      batches += 1;
    }
    epochLosses.push(total / batches);
  }
  optimizer.dispose();
  return { model, epochLosses };
}
