/**
 * Raw-text annotation endpoint support.
 *
 * Producing real POS/dependency/chunk layers needs a statistical
 * annotator, which has no JavaScript implementation here; the server
 * therefore takes a pluggable Annotator. The whitespace fallback emits
 * structurally valid but linguistically empty layers (upos X, chunk O,
 * every head 0) so the file format path can be exercised end to end;
 * entity-relative selection strategies will see no structure in it.
 */

import { ConllSentence, renderConll } from "./conll.js";

export interface Annotator {
  readonly name: string;
  annotate(text: string): ConllSentence[];
}

export class WhitespaceFallbackAnnotator implements Annotator {
  readonly name = "whitespace-fallback";
  private counter = 0;

  annotate(text: string): ConllSentence[] {
    const sentences: ConllSentence[] = [];
    for (const line of text.split("\n")) {
      const forms = line.split(/\s+/).filter((w) => w.length > 0);
      if (forms.length === 0) continue;
      this.counter += 1;
      sentences.push({
        id: `anno${String(this.counter).padStart(4, "0")}`,
        tokens: forms.map((form) => ({
          form,
          upos: "X",
          chunk: "O",
          head: 0,
          deprel: "dep",
          ner: "O",
        })),
      });
    }
    return sentences;
  }
}

export function annotateToConll(annotator: Annotator, text: string): string {
  return renderConll(annotator.annotate(text));
}
