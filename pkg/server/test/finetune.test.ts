import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import {
  FINETUNE_DEFAULTS,
  buildModel,
  finetune,
  sentencesFromConll,
  trainSteps,
  vocabFromSentences,
} from "../src/finetune.js";
import { TokenClassifier } from "../src/model.js";

const HERE = path.dirname(fileURLToPath(import.meta.url));
const TOY = path.resolve(HERE, "../../tests/data/toy50.conll");

const toySentences = () => sentencesFromConll(fs.readFileSync(TOY, "utf-8"));

describe("finetune defaults", () => {
  it("match the published recipe", () => {
    expect(FINETUNE_DEFAULTS.learningRate).toBe(5e-5);
    expect(FINETUNE_DEFAULTS.batchSize).toBe(8);
    expect(FINETUNE_DEFAULTS.weightDecay).toBe(0.01);
    expect(FINETUNE_DEFAULTS.epochs).toBe(10);
  });
});

describe("training", () => {
  it("overfits one batch: loss decreases over 20 steps on 8 sentences", () => {
    const slice = toySentences().slice(0, 8);
    const model = buildModel(slice, FINETUNE_DEFAULTS);
    const losses = trainSteps(model, slice, 20);
    expect(losses).toHaveLength(20);
    expect(losses[19]).toBeLessThan(losses[0]);
    losses.forEach((l) => expect(Number.isFinite(l)).toBe(true));
  });

  it("char-fallback vocabulary keeps unseen words out of [UNK]", () => {
    const slice = toySentences().slice(0, 8);
    const vocab = vocabFromSentences(slice);
    const model = buildModel(slice, FINETUNE_DEFAULTS);
    // "snow" is absent from the toy slice but all its characters occur
    expect(vocab).not.toContain("snow");
    expect(model.tokenizer.wordToPieces("snow")).not.toContain("[UNK]");
  });

  it("fine-tunes end to end and the checkpoint serves predictions", () => {
    const slice = toySentences().slice(0, 16);
    const { model, epochLosses } = finetune(slice, {
      ...FINETUNE_DEFAULTS,
      epochs: 4,
      learningRate: 3e-3, // tiny model, tiny corpus: larger step for the smoke check
    });
    expect(epochLosses).toHaveLength(4);
    expect(epochLosses[3]).toBeLessThan(epochLosses[0]);

    const dir = fs.mkdtempSync(path.join(os.tmpdir(), "ft-"));
    const file = path.join(dir, "victim.json");
    model.save(file);
    const loaded = TokenClassifier.load(file);
    const words = slice[0].words;
    expect(loaded.predictTags(words)).toEqual(model.predictTags(words));
  });

  it("is deterministic for a fixed seed", () => {
    const slice = toySentences().slice(0, 8);
    const opts = { ...FINETUNE_DEFAULTS, epochs: 2 };
    const a = finetune(slice, opts).epochLosses;
    const b = finetune(slice, opts).epochLosses;
    expect(a).toEqual(b);
  });
});
