/**
 * Extended-CoNLL file interface shared with the attack toolkit.
 *
 * Seven tab-separated columns `ID FORM UPOS CHUNK HEAD DEPREL NER`,
 * blank line between sentences, optional `# id = <string>` line per
 * sentence. This module only needs the reading/writing surface the
 * server uses: training data ingestion and annotation output.
 */

export interface TokenRow {
  form: string;
  upos: string;
  chunk: string;
  head: number;
  deprel: string;
  ner: string;
}

export interface ConllSentence {
  id: string;
  tokens: TokenRow[];
}

const NER_TAG = /^(?:O|[BI]-[A-Za-z0-9_]+)$/;

export function parseConll(text: string): ConllSentence[] {
  const sentences: ConllSentence[] = [];
  let pendingId: string | null = null;
  let rows: TokenRow[] = [];

  const flush = () => {
    if (rows.length > 0) {
      sentences.push({
        id: pendingId ?? `s${String(sentences.length + 1).padStart(4, "0")}`,
        tokens: rows,
      });
      rows = [];
    }
    pendingId = null;
  };

  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].replace(/\r$/, "");
    const lineNo = i + 1;
    if (line.trim() === "") {
      flush();
      continue;
    }
    if (line.startsWith("#")) {
      const m = line.match(/^#\s*id\s*=\s*(.+?)\s*$/);
      if (!m) throw new Error(`line ${lineNo}: unsupported comment ${JSON.stringify(line)}`);
      pendingId = m[1];
      continue;
    }
    if (line.startsWith("-DOCSTART-")) continue;
    const cols = line.split("\t");
    if (cols.length !== 7) {
      throw new Error(`line ${lineNo}: expected 7 tab-separated columns, got ${cols.length}`);
    }
    const [id, form, upos, chunk, head, deprel, ner] = cols;
    if (!/^\d+$/.test(id)) throw new Error(`line ${lineNo}: non-integer ID ${id}`);
    if (Number(id) !== rows.length + 1) {
      throw new Error(`line ${lineNo}: ID ${id} out of sequence`);
    }
    if (!/^\d+$/.test(head)) throw new Error(`line ${lineNo}: non-integer HEAD ${head}`);
    if (!NER_TAG.test(ner)) throw new Error(`line ${lineNo}: malformed NER tag ${ner}`);
    rows.push({ form, upos, chunk, head: Number(head), deprel, ner });
  }
  flush();

  for (const sent of sentences) {
    for (const [i, tok] of sent.tokens.entries()) {
      if (tok.head > sent.tokens.length) {
        throw new Error(`sentence ${sent.id}: token ${i + 1} HEAD ${tok.head} out of range`);
      }
    }
  }
  return sentences;
}

export function renderConll(sentences: ConllSentence[]): string {
  if (sentences.length === 0) return "";
  const lines: string[] = [];
  for (const sent of sentences) {
    lines.push(`# id = ${sent.id}`);
    sent.tokens.forEach((tok, i) => {
      lines.push(
        [i + 1, tok.form, tok.upos, tok.chunk, tok.head, tok.deprel, tok.ner].join("\t"),
      );
    });
    lines.push("");
  }
  return lines.join("\n") + "\n";
}

/** BIO tags of one sentence, in token order. */
export function nerTags(sentence: ConllSentence): string[] {
  return sentence.tokens.map((tok) => tok.ner);
}

/** Distinct BIO labels over a corpus, "O" first, rest sorted. */
export function collectLabels(sentences: ConllSentence[]): string[] {
  const labels = new Set<string>(["O"]);
  for (const sent of sentences) {
    for (const tok of sent.tokens) labels.add(tok.ner);
  }
  return ["O", ...[...labels].filter((l) => l !== "O").sort()];
}
