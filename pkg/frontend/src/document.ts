// Client-held problem document helpers: the blank-slate scaffold and
// immutable assessment edits. Anything semantic (validation, scoring)
// is the engine's job.

import type { Assessment, Problem, ProblemDocument } from "./types.js";

/**
 * Minimal valid problem a fresh workbench session starts from. It has
 * one placeholder action and objective so the engine accepts it; the
 * analyst replaces the placeholders by loading or editing a document.
 */
export function emptyDocument(): ProblemDocument {
  return {
    format_version: "1",
    problem: {
      id: "untitled",
      title: "Untitled problem",
      description: "",
      action_space: {
        kind: "discrete",
        actions: [{ id: "option-a", metric_values: { outcome: 0 } }],
      },
      objectives: [{ id: "outcome", name: "Outcome", direction: "minimize" }],
      assessments: [],
    },
  };
}

export function getAssessment(doc: ProblemDocument, propertyId: number): Assessment | undefined {
  return (doc.problem.assessments ?? []).find((a) => a.property_id === propertyId);
}

function withAssessments(doc: ProblemDocument, assessments: Assessment[]): ProblemDocument {
  const problem: Problem = { ...doc.problem, assessments };
  return { ...doc, problem };
}

/** Replace or add the assessment for one property. */
export function setAssessment(doc: ProblemDocument, assessment: Assessment): ProblemDocument {
  const rest = (doc.problem.assessments ?? []).filter(
    (a) => a.property_id !== assessment.property_id,
  );
  const next = [...rest, assessment].sort((a, b) => a.property_id - b.property_id);
  return withAssessments(doc, next);
}

/** Drop the assessment for one property, if any. */
export function clearAssessment(doc: ProblemDocument, propertyId: number): ProblemDocument {
  const rest = (doc.problem.assessments ?? []).filter((a) => a.property_id !== propertyId);
  return withAssessments(doc, rest);
}

/**
 * Parse loaded file text into a document. Only the outer shape is
 * checked here; schema and semantic validation belong to the engine's
 * /validate endpoint.
 */
export function parseDocumentText(text: string): ProblemDocument {
  let decoded: unknown;
  try {
    decoded = JSON.parse(text);
  } catch (exc) {
    throw new Error("not valid JSON: " + (exc instanceof Error ? exc.message : String(exc)));
  }
  if (typeof decoded !== "object" || decoded === null || Array.isArray(decoded)) {
    throw new Error("document must be a JSON object");
  }
  const doc = decoded as Partial<ProblemDocument>;
  if (doc.format_version === undefined || doc.problem === undefined) {
    throw new Error("document needs format_version and problem fields");
  }
  return decoded as ProblemDocument;
}

/** Suggested file name for a save. */
export function documentFileName(doc: ProblemDocument): string {
  const id = doc.problem.id && doc.problem.id.trim() ? doc.problem.id.trim() : "problem";
  return id + ".dproblem.json";
}
