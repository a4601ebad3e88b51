import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import { describe, expect, it } from "vitest";

import { TokenClassifier, defaultConfig } from "../src/model.js";

const BIO = /^(?:O|[BI]-[A-Za-z0-9_]+)$/;

function tinyModel(seed = 7): TokenClassifier {
  return new TokenClassifier(defaultConfig({
    vocabTokens: ["wilson", "makes", "fine", "rack", "##ets", "berlin", "in", ".", "the"],
    labels: ["O", "B-PER", "I-PER", "B-LOC"],
    dim: 16,
    ffnDim: 24,
    maxLen: 32,
    seed,
  }));
}

describe("TokenClassifier", () => {
  it("emits one grammar-valid tag per word despite subword splits", () => {
    const model = tinyModel();
    const words = ["Wilson", "makes", "fine", "rackets", "in", "Berlin", "."];
    const tags = model.predictTags(words);
    expect(tags).toHaveLength(words.length);
    for (const tag of tags) {
      expect(tag).toMatch(BIO);
      expect(model.config.labels).toContain(tag);
    }
  });

  it("is deterministic for a fixed seed", () => {
    const words = ["Wilson", "makes", "rackets"];
    expect(tinyModel(3).predictTags(words)).toEqual(tinyModel(3).predictTags(words));
  });

  it("handles the empty sentence", () => {
    expect(tinyModel().predictTags([])).toEqual([]);
  });

  it("ranks mask-fill candidates strictly descending without specials", () => {
    const model = tinyModel();
    const candidates = model.maskFill(["Wilson", "makes", "rackets"], 1, 5);
    expect(candidates.length).toBeGreaterThan(0);
    expect(candidates.length).toBeLessThanOrEqual(5);
    for (const cand of candidates) {
      expect(Number.isFinite(cand.score)).toBe(true);
      expect(cand.token).not.toMatch(/^\[.*\]$/);
    }
    for (let i = 1; i < candidates.length; i++) {
      expect(candidates[i - 1].score).toBeGreaterThan(candidates[i].score);
    }
  });

  it("rejects an out-of-range mask index", () => {
    expect(() => tinyModel().maskFill(["a"], 3, 2)).toThrow(/out of range/);
  });

  it("embeds identical texts identically with a constant dimension", () => {
    const model = tinyModel();
    const a = model.sentenceEmbedding(["Wilson", "makes", "rackets"]);
    const b = model.sentenceEmbedding(["Wilson", "makes", "rackets"]);
    const c = model.sentenceEmbedding(["fine", "."]);
    expect(a).toEqual(b);
    expect(a).toHaveLength(model.config.dim);
    expect(c).toHaveLength(model.config.dim);
  });

  it("survives a save/load round trip bit-for-bit in behavior", () => {
    const model = tinyModel(11);
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), "ckpt-"));
    const file = path.join(dir, "victim.json");
    model.save(file);
    const loaded = TokenClassifier.load(file);
    const words = ["Wilson", "makes", "fine", "rackets", "."];
    expect(loaded.predictTags(words)).toEqual(model.predictTags(words));
    expect(loaded.sentenceEmbedding(words)).toEqual(model.sentenceEmbedding(words));
    expect(loaded.maskFill(words, 2, 3)).toEqual(model.maskFill(words, 2, 3));
  });

  it("refuses sequences beyond the configured maximum length", () => {
    const model = tinyModel();
    const words = new Array(40).fill("fine");
    expect(() => model.predictTags(words)).toThrow(/maxLen/);
  });
});
