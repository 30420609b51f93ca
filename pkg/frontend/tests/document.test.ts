import { describe, expect, it } from "vitest";

import {
  clearAssessment,
  documentFileName,
  emptyDocument,
  getAssessment,
  parseDocumentText,
  setAssessment,
} from "../src/document.js";
import { fixtureText } from "./helpers.js";

describe("empty scaffold", () => {
  it("is a complete minimal document the engine can validate", () => {
    const doc = emptyDocument();
    expect(doc.format_version).toBe("1");
    expect(doc.problem.id).toBe("untitled");
    expect(doc.problem.objectives).toHaveLength(1);
    expect(doc.problem.action_space.kind).toBe("discrete");
    expect(doc.problem.action_space.actions).toHaveLength(1);
    expect(doc.problem.assessments).toEqual([]);
  });
});

describe("assessment edits", () => {
  it("adds, replaces, and removes one assessment per property", () => {
    let doc = emptyDocument();
    doc = setAssessment(doc, { property_id: 5, mode: "binary", present: true });
    doc = setAssessment(doc, { property_id: 2, mode: "resolution", resolution: 0.4 });
    expect(doc.problem.assessments?.map((a) => a.property_id)).toEqual([2, 5]);

    doc = setAssessment(doc, { property_id: 5, mode: "count", count: 3 });
    expect(getAssessment(doc, 5)).toEqual({ property_id: 5, mode: "count", count: 3 });
    expect(doc.problem.assessments).toHaveLength(2);

    doc = clearAssessment(doc, 5);
    expect(getAssessment(doc, 5)).toBeUndefined();
    expect(doc.problem.assessments).toHaveLength(1);
  });

  it("never mutates the input document", () => {
    const before = emptyDocument();
    const snapshot = JSON.stringify(before);
    setAssessment(before, { property_id: 1, mode: "binary", present: true });
    clearAssessment(before, 1);
    expect(JSON.stringify(before)).toBe(snapshot);
  });
});

describe("parseDocumentText", () => {
  it("accepts a shipped fixture", () => {
    const doc = parseDocumentText(fixtureText("asteroid"));
    expect(doc.problem.id).toBe("asteroid-defense");
    expect(doc.problem.assessments).toHaveLength(5);
  });

  it("rejects non-JSON input", () => {
    expect(() => parseDocumentText("{nope")).toThrow(/not valid JSON/);
  });

  it("rejects JSON that is not an object", () => {
    expect(() => parseDocumentText("[1, 2]")).toThrow(/JSON object/);
    expect(() => parseDocumentText('"text"')).toThrow(/JSON object/);
  });

  it("rejects objects missing the document fields", () => {
    expect(() => parseDocumentText('{"problem": {}}')).toThrow(/format_version/);
    expect(() => parseDocumentText('{"format_version": "1"}')).toThrow(/problem/);
  });
});

describe("documentFileName", () => {
  it("derives the name from the problem id", () => {
    expect(documentFileName(emptyDocument())).toBe("untitled.dproblem.json");
    const doc = emptyDocument();
    doc.problem.id = "  ";
    expect(documentFileName(doc)).toBe("problem.dproblem.json");
  });
});
