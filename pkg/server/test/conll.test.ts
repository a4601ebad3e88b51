import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { collectLabels, parseConll, renderConll } from "../src/conll.js";

const HERE = path.dirname(fileURLToPath(import.meta.url));
const TOY = path.resolve(HERE, "../../tests/data/toy50.conll");

describe("extended-CoNLL interface", () => {
  it("reads the toolkit's toy corpus", () => {
    const sentences = parseConll(fs.readFileSync(TOY, "utf-8"));
    expect(sentences).toHaveLength(50);
    expect(sentences[0].id).toBe("toy0001");
    expect(sentences[0].tokens[0].form).toBe("Wilson");
    expect(sentences[0].tokens[0].ner).toBe("B-PER");
  });

  it("round-trips bytes through render and parse", () => {
    const text = fs.readFileSync(TOY, "utf-8");
    expect(renderConll(parseConll(text))).toBe(text);
  });

  it("rejects a wrong column count with the line number", () => {
    expect(() => parseConll("1\tonly\tthree\n\n")).toThrow(/line 1/);
  });

  it("rejects out-of-sequence ids", () => {
    expect(() => parseConll("2\tx\tX\tO\t0\tdep\tO\n\n")).toThrow(/out of sequence/);
  });

  it("rejects malformed NER tags", () => {
    expect(() => parseConll("1\tx\tX\tO\t0\tdep\tB_PER\n\n")).toThrow(/NER/);
  });

  it("rejects heads beyond the sentence length", () => {
    expect(() => parseConll("1\tx\tX\tO\t4\tdep\tO\n\n")).toThrow(/out of range/);
  });

  it("collects labels with O first", () => {
    const sentences = parseConll(fs.readFileSync(TOY, "utf-8"));
    const labels = collectLabels(sentences);
    expect(labels[0]).toBe("O");
    expect(labels).toContain("B-PER");
    expect(new Set(labels).size).toBe(labels.length);
  });
});
