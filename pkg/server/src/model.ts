/**
 * Token-classification transformer with a tied masked-LM head.
 *
 * One self-attention block plus a feed-forward block over learned word
 * and position embeddings, followed by a linear classifier per piece.
 * Tags and attributions are pooled from the first piece of each word.
 * The network is written functionally over an explicit embeddings
 * tensor so gradients with respect to the input embeddings (needed by
 * the attribution endpoint) fall out of tf.grad directly.
 *
 * Checkpoints are plain JSON: config, vocabulary, label set, weights.
 */

import * as tf from "@tensorflow/tfjs";
import * as fs from "node:fs";

import { WordPieceTokenizer, CLS, MASK, PAD, SEP, UNK } from "./tokenizer.js";

export interface ModelConfig {
  vocabTokens: string[];   // word pieces, specials excluded
  labels: string[];        // BIO label set, "O" first
  dim: number;
  ffnDim: number;
  maxLen: number;
  seed: number;
  lowercase: boolean;
}

export interface FillCandidate {
  token: string;
  score: number;
}

const WEIGHT_NAMES = [
  "tokEmb", "posEmb", "wq", "wk", "wv", "wo", "w1", "b1", "w2", "b2", "head", "headBias",
] as const;
type WeightName = (typeof WEIGHT_NAMES)[number];

export class TokenClassifier {
  readonly config: ModelConfig;
  readonly tokenizer: WordPieceTokenizer;
  private weights: Record<WeightName, tf.Variable>;

  constructor(config: ModelConfig, weights?: Record<WeightName, tf.Tensor>) {
    if (config.labels[0] !== "O") throw new Error('label set must start with "O"');
    this.config = config;
    this.tokenizer = new WordPieceTokenizer(config.vocabTokens, config.lowercase);
    const { dim, ffnDim, maxLen, seed } = config;
    const vocabSize = this.tokenizer.size;
    const classes = config.labels.length;
    const init = (shape: number[], offset: number, std = 0.08): tf.Tensor =>
      tf.randomNormal(shape, 0, std, "float32", seed + offset);
    const fresh: Record<WeightName, tf.Tensor> = {
      tokEmb: init([vocabSize, dim], 1),
      posEmb: init([maxLen, dim], 2),
      wq: init([dim, dim], 3),
      wk: init([dim, dim], 4),
      wv: init([dim, dim], 5),
      wo: init([dim, dim], 6),
      w1: init([dim, ffnDim], 7),
      b1: tf.zeros([ffnDim]),
      w2: init([ffnDim, dim], 8),
      b2: tf.zeros([dim]),
      head: init([dim, classes], 9),
      headBias: tf.zeros([classes]),
    };
    const source = weights ?? fresh;
    // names are left to tfjs: the engine registry requires global
    // uniqueness and several models coexist in one process
    this.weights = Object.fromEntries(
      WEIGHT_NAMES.map((name) => [name, tf.variable(source[name], true)]),
    ) as Record<WeightName, tf.Variable>;
  }

  trainableWeights(): tf.Variable[] {
    return WEIGHT_NAMES.map((name) => this.weights[name]);
  }

  /** Decoupled weight decay on matrix weights (biases excluded). */
  applyWeightDecay(learningRate: number, weightDecay: number): void {
    if (weightDecay <= 0) return;
    const factor = 1 - learningRate * weightDecay;
    for (const name of WEIGHT_NAMES) {
      if (name === "b1" || name === "b2" || name === "headBias") continue;
      const w = this.weights[name];
      w.assign(tf.tidy(() => w.mul(factor)));
    }
  }

  embedIds(ids: number[]): tf.Tensor2D {
    return tf.tidy(() =>
      tf.gather(this.weights.tokEmb, tf.tensor1d(ids, "int32")) as tf.Tensor2D,
    );
  }

  /** Encoder over an explicit embeddings tensor [T, dim] -> [T, dim]. */
  hidden(emb: tf.Tensor): tf.Tensor {
    const { dim } = this.config;
    const w = this.weights;
    const seqLen = emb.shape[0] as number;
    if (seqLen > this.config.maxLen) {
      throw new Error(`sequence of ${seqLen} pieces exceeds maxLen ${this.config.maxLen}`);
    }
    return tf.tidy(() => {
      const pos = w.posEmb.slice([0, 0], [seqLen, dim]);
      let x = emb.add(pos);
      const q = x.matMul(w.wq);
      const k = x.matMul(w.wk);
      const v = x.matMul(w.wv);
      const attn = tf.softmax(q.matMul(k, false, true).div(Math.sqrt(dim)));
      x = x.add(attn.matMul(v).matMul(w.wo));
      const ffn = tf.relu(x.matMul(w.w1).add(w.b1)).matMul(w.w2).add(w.b2);
      return x.add(ffn);
    });
  }

  /** Per-piece classification logits [T, classes]. */
  logits(emb: tf.Tensor): tf.Tensor {
    return tf.tidy(() => this.hidden(emb).matMul(this.weights.head).add(this.weights.headBias));
  }

  /** Per-piece masked-LM logits [T, vocab], tied to the embeddings. */
  mlmLogits(emb: tf.Tensor): tf.Tensor {
    return tf.tidy(() => this.hidden(emb).matMul(this.weights.tokEmb, false, true));
  }

  /** BIO tags for one sentence, first-subtoken pooling. */
  predictTags(words: string[]): string[] {
    if (words.length === 0) return [];
    const enc = this.tokenizer.encode(words);
    return tf.tidy(() => {
      const logits = this.logits(this.embedIds(enc.ids));
      const best = logits.argMax(1).arraySync() as number[];
      return enc.firstPieceIndex.map((p) => this.config.labels[best[p]]);
    });
  }

  /** Top-k fill candidates for one masked word position. */
  maskFill(words: string[], maskIndex: number, topK: number): FillCandidate[] {
    if (maskIndex < 0 || maskIndex >= words.length) {
      throw new Error(`mask_index ${maskIndex} out of range for ${words.length} tokens`);
    }
    const enc = this.tokenizer.encode(words, maskIndex);
    const maskPiece = enc.firstPieceIndex[maskIndex];
    const probs = tf.tidy(() => {
      const logits = this.mlmLogits(this.embedIds(enc.ids));
      return (tf.softmax(logits.slice([maskPiece, 0], [1, -1]).squeeze()) as tf.Tensor1D)
        .arraySync() as number[];
    });
    const banned = new Set([PAD, UNK, CLS, SEP, MASK].map((t) => this.tokenizer.id(t)));
    const ranked = probs
      .map((p, id) => ({ id, p }))
      .filter(({ id }) => !banned.has(id))
      .sort((a, b) => b.p - a.p || a.id - b.id);
    const out: FillCandidate[] = [];
    for (const { id, p } of ranked) {
      if (out.length === topK) break;
      // strictly descending contract: drop exact float ties
      if (out.length > 0 && !(out[out.length - 1].score > p)) continue;
      out.push({ token: this.tokenizer.piece(id), score: p });
    }
    return out;
  }

  /** Sentence embedding: mean of hidden states over non-special pieces. */
  sentenceEmbedding(words: string[]): number[] {
    const enc = this.tokenizer.encode(words);
    return tf.tidy(() => {
      const hidden = this.hidden(this.embedIds(enc.ids));
      const keep = enc.wordIndex
        .map((w, piece) => ({ w, piece }))
        .filter(({ w }) => w >= 0)
        .map(({ piece }) => piece);
      const pooled = keep.length > 0
        ? tf.gather(hidden, tf.tensor1d(keep, "int32")).mean(0)
        : hidden.mean(0); // empty sentence: pool [CLS]/[SEP]
      return pooled.arraySync() as number[];
    });
  }

  /** Mean cross-entropy at the first piece of each word. */
  loss(sentences: { words: string[]; tags: string[] }[]): tf.Scalar {
    const labelIndex = new Map(this.config.labels.map((l, i) => [l, i]));
    return tf.tidy(() => {
      let total: tf.Scalar = tf.scalar(0);
      let count = 0;
      for (const { words, tags } of sentences) {
        if (words.length === 0) continue;
        const enc = this.tokenizer.encode(words);
        const logits = this.logits(this.embedIds(enc.ids));
        const picked = tf.gather(logits, tf.tensor1d(enc.firstPieceIndex, "int32"));
        const targets = tags.map((t) => {
          const id = labelIndex.get(t);
          if (id === undefined) throw new Error(`tag ${t} not in label set`);
          return id;
        });
        const onehot = tf.oneHot(tf.tensor1d(targets, "int32"), this.config.labels.length);
        const ce = tf.losses.softmaxCrossEntropy(onehot, picked);
        total = total.add(ce.mul(words.length)) as tf.Scalar;
        count += words.length;
      }
      return count > 0 ? (total.div(count) as tf.Scalar) : total;
    });
  }

  save(path: string): void {
    const payload = {
      version: 1,
      config: this.config,
      weights: Object.fromEntries(
        WEIGHT_NAMES.map((name) => {
          const w = this.weights[name];
          return [name, { shape: w.shape, data: Array.from(w.dataSync()) }];
        }),
      ),
    };
    fs.writeFileSync(path, JSON.stringify(payload), "utf-8");
  }

  static load(path: string): TokenClassifier {
    const payload = JSON.parse(fs.readFileSync(path, "utf-8"));
    if (payload.version !== 1) throw new Error(`unsupported checkpoint version ${payload.version}`);
    const weights = Object.fromEntries(
      WEIGHT_NAMES.map((name) => {
        const entry = payload.weights[name];
        if (!entry) throw new Error(`checkpoint missing weight ${name}`);
        return [name, tf.tensor(entry.data, entry.shape)];
      }),
    ) as Record<WeightName, tf.Tensor>;
    return new TokenClassifier(payload.config, weights);
  }
}

export function defaultConfig(partial: Partial<ModelConfig> & Pick<ModelConfig, "vocabTokens" | "labels">): ModelConfig {
  return {
    dim: 32,
    ffnDim: 64,
    maxLen: 128,
    seed: 7,
    lowercase: true,
    ...partial,
  };
}
