import { describe, expect, it } from "vitest";

import { CLS, MASK, SEP, UNK, WordPieceTokenizer } from "../src/tokenizer.js";

const PIECES = ["rack", "##ets", "##et", "make", "##s", "fine", "wilson", "a", "##b"];

describe("WordPieceTokenizer", () => {
  it("keeps whole-vocabulary words as one piece", () => {
    const tok = new WordPieceTokenizer(PIECES);
    expect(tok.wordToPieces("fine")).toEqual(["fine"]);
  });

  it("splits with greedy longest match and ## continuations", () => {
    const tok = new WordPieceTokenizer(PIECES);
    expect(tok.wordToPieces("rackets")).toEqual(["rack", "##ets"]);
    expect(tok.wordToPieces("makes")).toEqual(["make", "##s"]);
  });

  it("lowercases by default", () => {
    const tok = new WordPieceTokenizer(PIECES);
    expect(tok.wordToPieces("Wilson")).toEqual(["wilson"]);
  });

  it("falls back to [UNK] when a word cannot be covered", () => {
    const tok = new WordPieceTokenizer(PIECES);
    expect(tok.wordToPieces("zzz")).toEqual([UNK]);
  });

  it("frames encodings with [CLS]/[SEP] and aligns pieces to words", () => {
    const tok = new WordPieceTokenizer(PIECES);
    const enc = tok.encode(["Wilson", "makes", "rackets"]);
    expect(enc.pieces[0]).toBe(CLS);
    expect(enc.pieces[enc.pieces.length - 1]).toBe(SEP);
    expect(enc.wordIndex[0]).toBe(-1);
    expect(enc.wordIndex[enc.wordIndex.length - 1]).toBe(-1);
    expect(enc.firstPieceIndex).toHaveLength(3);
    // realignment is total: every word owns at least one piece
    for (let w = 0; w < 3; w++) {
      expect(enc.wordIndex[enc.firstPieceIndex[w]]).toBe(w);
    }
    expect(enc.pieces.slice(1, -1)).toEqual(["wilson", "make", "##s", "rack", "##ets"]);
  });

  it("masks exactly the requested word position", () => {
    const tok = new WordPieceTokenizer(PIECES);
    const enc = tok.encode(["Wilson", "makes", "rackets"], 1);
    expect(enc.pieces[enc.firstPieceIndex[1]]).toBe(MASK);
    // masked word contributes exactly one piece
    expect(enc.wordIndex.filter((w) => w === 1)).toHaveLength(1);
    expect(enc.pieces).toContain("rack");
  });

  it("round-trips ids to pieces", () => {
    const tok = new WordPieceTokenizer(PIECES);
    const enc = tok.encode(["rackets"]);
    expect(enc.ids.map((id) => tok.piece(id))).toEqual(enc.pieces);
  });
});
