/**
 * Request validation for the v1 wire protocol.
 *
 * The normative JSON Schemas ship with the attack toolkit
 * (src/nerperturb/backend/schemas/); the zod schemas here mirror them
 * for runtime validation, and the test suite checks this server's
 * responses against those schema files directly.
 */

import { z } from "zod";

export const nerPredictRequest = z.object({
  sentences: z.array(z.array(z.string())),
}).strict();

export const maskFillRequest = z.object({
  tokens: z.array(z.string()),
  mask_index: z.number().int().min(0),
  top_k: z.number().int().min(1),
}).strict();

export const importanceRequest = z.object({
  tokens: z.array(z.string()),
  entity_indices: z.array(z.number().int().min(0)),
}).strict();

export const embedRequest = z.object({
  texts: z.array(z.string()),
}).strict();

export const annotateRequest = z.object({
  text: z.string(),
}).strict();

export type Capability = "ner_predict" | "mask_fill" | "importance" | "embed";

export function errorBody(code: string, message: string) {
  return { error: { code, message } };
}
