/**
 * WordPiece tokenizer with word-level alignment.
 *
 * Inputs arrive pre-split into words (the wire protocol ships token
 * lists), so there is no basic tokenizer here: each word is greedily
 * split into the longest vocabulary pieces, continuations carrying the
 * "##" prefix. Alignment is total: every word maps to at least one
 * piece ([UNK] when nothing matches), and `firstPieceIndex` gives the
 * position used for first-subtoken pooling of tags and attributions.
 */

export const PAD = "[PAD]";
export const UNK = "[UNK]";
export const CLS = "[CLS]";
export const SEP = "[SEP]";
export const MASK = "[MASK]";

export const SPECIAL_TOKENS = [PAD, UNK, CLS, SEP, MASK];

export interface Encoding {
  ids: number[];           // piece ids, [CLS] ... [SEP] included
  pieces: string[];        // piece strings, parallel to ids
  wordIndex: number[];     // word index per piece, -1 for specials
  firstPieceIndex: number[]; // per word: index of its first piece
}

export class WordPieceTokenizer {
  private vocab = new Map<string, number>();
  private inv: string[] = [];
  readonly lowercase: boolean;

  constructor(tokens: string[], lowercase = true) {
    this.lowercase = lowercase;
    for (const raw of SPECIAL_TOKENS) {
      this.add(raw);
    }
    for (const raw of tokens) {
      this.add(raw);
    }
  }

  private add(token: string): void {
    if (!this.vocab.has(token)) {
      this.vocab.set(token, this.inv.length);
      this.inv.push(token);
    }
  }

  get size(): number {
    return this.inv.length;
  }

  id(token: string): number {
    const id = this.vocab.get(token);
    if (id === undefined) throw new Error(`token not in vocabulary: ${token}`);
    return id;
  }

  piece(id: number): string {
    if (id < 0 || id >= this.inv.length) throw new Error(`piece id out of range: ${id}`);
    return this.inv[id];
  }

  vocabTokens(): string[] {
    return [...this.inv];
  }

  /** Greedy longest-match-first split of one word into pieces. */
  wordToPieces(word: string): string[] {
    const text = this.lowercase ? word.toLowerCase() : word;
    if (this.vocab.has(text)) return [text];
    const out: string[] = [];
    let start = 0;
    while (start < text.length) {
      let end = text.length;
      let found: string | null = null;
      while (start < end) {
        const candidate = (start > 0 ? "##" : "") + text.slice(start, end);
        if (this.vocab.has(candidate)) {
          found = candidate;
          break;
        }
        end -= 1;
      }
      if (found === null) return [UNK];
      out.push(found);
      start = end;
    }
    return out;
  }

  /** Encode words with [CLS]/[SEP] framing and per-piece word alignment. */
  encode(words: string[], maskWordIndex: number | null = null): Encoding {
    const ids: number[] = [this.id(CLS)];
    const pieces: string[] = [CLS];
    const wordIndex: number[] = [-1];
    const firstPieceIndex: number[] = [];
    for (let w = 0; w < words.length; w++) {
      const wordPieces = maskWordIndex === w ? [MASK] : this.wordToPieces(words[w]);
      firstPieceIndex.push(ids.length);
      for (const p of wordPieces) {
        ids.push(this.id(p));
        pieces.push(p);
        wordIndex.push(w);
      }
    }
    ids.push(this.id(SEP));
    pieces.push(SEP);
    wordIndex.push(-1);
    return { ids, pieces, wordIndex, firstPieceIndex };
  }
}

/** Build a word-piece vocabulary from whole words plus their fragments. */
export function buildVocab(words: Iterable<string>, lowercase = true): string[] {
  const seen = new Set<string>();
  for (const raw of words) {
    const word = lowercase ? raw.toLowerCase() : raw;
    seen.add(word);
  }
  return [...seen].sort();
}
