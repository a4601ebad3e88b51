/**
 * Express app implementing the v1 model protocol.
 *
 * Capabilities are advertised strictly from what is loaded: a victim
 * checkpoint provides ner_predict and importance and doubles as the
 * default mask-fill and embedding model unless separate checkpoints
 * are configured. Every error is the structured envelope.
 */

import express from "express";
import * as tf from "@tensorflow/tfjs";
import { ZodType } from "zod";

import { Annotator, annotateToConll } from "./annotate.js";
import {
  AttributionOptions,
  DEFAULT_ATTRIBUTION,
  entityInteractionImportance,
} from "./attribution.js";
import { TokenClassifier } from "./model.js";
import {
  annotateRequest,
  embedRequest,
  errorBody,
  importanceRequest,
  maskFillRequest,
  nerPredictRequest,
} from "./protocol.js";

export interface ServerOptions {
  victim?: TokenClassifier;
  maskFiller?: TokenClassifier;
  embedder?: TokenClassifier;
  annotator?: Annotator;
  attribution?: AttributionOptions;
  modelIds?: Partial<Record<string, string>>;
}

/** Importance of each word: entity-interaction attribution, first-piece pooled. */
export function wordImportance(
  model: TokenClassifier,
  words: string[],
  entityWordIndices: number[],
  options: AttributionOptions,
): number[] {
  if (words.length === 0) return [];
  for (const e of entityWordIndices) {
    if (e < 0 || e >= words.length) throw new Error(`entity index ${e} out of range`);
  }
  const enc = model.tokenizer.encode(words);
  const x = model.embedIds(enc.ids);
  try {
    if (entityWordIndices.length === 0) return new Array(words.length).fill(0);
    const entityPieces = entityWordIndices.map((w) => enc.firstPieceIndex[w]);
    // fixed target: the predicted class at each entity position
    const predicted = tf.tidy(() => {
      const l = model.logits(x);
      return (l.argMax(1).arraySync() as number[]);
    });
    const scoreFn = (emb: tf.Tensor): tf.Scalar =>
      tf.tidy(() => {
        const logits = model.logits(emb);
        let total: tf.Scalar = tf.scalar(0);
        for (const p of entityPieces) {
          total = total.add(logits.slice([p, predicted[p]], [1, 1]).squeeze()) as tf.Scalar;
        }
        return total;
      });
    const perPiece = entityInteractionImportance(x, entityPieces, scoreFn, options);
    return enc.firstPieceIndex.map((p) => perPiece[p]);
  } finally {
    x.dispose();
  }
}

export function buildApp(options: ServerOptions): express.Express {
  const victim = options.victim;
  const maskFiller = options.maskFiller ?? victim;
  const embedder = options.embedder ?? victim;
  const attribution = options.attribution ?? DEFAULT_ATTRIBUTION;

  const capabilities: string[] = [];
  const models: Record<string, string> = {};
  const ids = options.modelIds ?? {};
  if (victim) {
    capabilities.push("ner_predict", "importance");
    models["ner_predict"] = ids["ner_predict"] ?? "token-classifier";
    models["importance"] = ids["importance"] ?? "path-integrated-interactions";
  }
  if (maskFiller) {
    capabilities.push("mask_fill");
    models["mask_fill"] = ids["mask_fill"] ?? "tied-embedding-mlm";
  }
  if (embedder) {
    capabilities.push("embed");
    models["embed"] = ids["embed"] ?? "mean-pooled-encoder";
  }

  const app = express();
  app.use(express.json({ limit: "16mb" }));
  app.use((err: Error, _req: express.Request, res: express.Response, next: express.NextFunction) => {
    // express.json parse failures land here
    res.status(400).json(errorBody("bad_request", err.message));
    void next;
  });

  const parseWith = <T>(schema: ZodType<T>, req: express.Request, res: express.Response): T | null => {
    const result = schema.safeParse(req.body);
    if (!result.success) {
      res.status(400).json(errorBody("bad_request", result.error.issues[0]?.message ?? "invalid body"));
      return null;
    }
    return result.data;
  };

  const unavailable = (res: express.Response, what: string) =>
    res.status(503).json(errorBody("unavailable", `${what} is not configured on this server`));

  app.get("/v1/health", (_req, res) => {
    res.json({ status: "ok", capabilities: [...capabilities].sort(), models });
  });

  app.post("/v1/ner_predict", (req, res) => {
    const body = parseWith(nerPredictRequest, req, res);
    if (body === null) return;
    if (!victim) return unavailable(res, "ner_predict");
    try {
      const tags = body.sentences.map((sentence) => victim.predictTags(sentence));
      res.json({ tags });
    } catch (err) {
      res.status(400).json(errorBody("invalid_argument", String(err)));
    }
  });

  app.post("/v1/mask_fill", (req, res) => {
    const body = parseWith(maskFillRequest, req, res);
    if (body === null) return;
    if (!maskFiller) return unavailable(res, "mask_fill");
    try {
      const candidates = maskFiller.maskFill(body.tokens, body.mask_index, body.top_k);
      res.json({ candidates });
    } catch (err) {
      res.status(400).json(errorBody("invalid_argument", String(err)));
    }
  });

  app.post("/v1/importance", (req, res) => {
    const body = parseWith(importanceRequest, req, res);
    if (body === null) return;
    if (!victim) return unavailable(res, "importance");
    try {
      const scores = wordImportance(victim, body.tokens, body.entity_indices, attribution);
      res.json({ scores });
    } catch (err) {
      res.status(400).json(errorBody("invalid_argument", String(err)));
    }
  });

  app.post("/v1/embed", (req, res) => {
    const body = parseWith(embedRequest, req, res);
    if (body === null) return;
    if (!embedder) return unavailable(res, "embed");
    try {
      const vectors = body.texts.map((text) =>
        embedder.sentenceEmbedding(text.split(/\s+/).filter((w) => w.length > 0)),
      );
      res.json({ vectors });
    } catch (err) {
      res.status(400).json(errorBody("invalid_argument", String(err)));
    }
  });

  app.post("/v1/annotate", (req, res) => {
    const body = parseWith(annotateRequest, req, res);
    if (body === null) return;
    if (!options.annotator) return unavailable(res, "annotate");
    res.json({ conll: annotateToConll(options.annotator, body.text) });
  });

  app.use((_req, res) => {
    res.status(404).json(errorBody("not_found", "no such endpoint"));
  });

  return app;
}
