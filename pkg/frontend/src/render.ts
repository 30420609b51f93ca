// Pure HTML/SVG builders. Everything here turns engine payloads into
// markup strings; no DOM access, no fetching, so the functions are
// directly testable in a node environment.

import type {
  Assessment,
  Diagnostic,
  FrontInfo,
  FrontMember,
  ProblemDocument,
  PropertyInfo,
  RecommendResponse,
} from "./types.js";

export interface DisplayedErrorLike {
  code: string;
  message: string;
  detail: unknown;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function metricIdsOf(doc: ProblemDocument): string[] {
  const primary = doc.problem.objectives.map((m) => m.id);
  const aux = (doc.problem.aux_metrics ?? []).map((m) => m.id);
  return [...primary, ...aux];
}

// Complexity gauge. The engine's H lands in [0, 1]: 1 means no
// structural help at all, 0 means some property is fully resolved.

export function gaugeHtml(text: string, trivial: boolean): string {
  const label = trivial ? '<span class="trivial">analytically trivial</span>' : "";
  const width = text === "–" ? 0 : Math.round((1 - Number(text)) * 100);
  return (
    '<div class="gauge">' +
    `<span class="gauge-value">${text}</span>` +
    `<div class="gauge-track"><div class="gauge-fill" style="width:${width}%"></div></div>` +
    label +
    "</div>"
  );
}

// Property panel: one row per catalog property with a presence toggle,
// a resolution slider, and a count entry. The definition rides on the
// row as a title attribute so hovering explains the property.

function assessmentFor(doc: ProblemDocument, propertyId: number): Assessment | undefined {
  return (doc.problem.assessments ?? []).find((a) => a.property_id === propertyId);
}

function rowControls(propertyId: number, assessment: Assessment | undefined): string {
  const isBinary = assessment?.mode === "binary" && assessment.present === true;
  const resolution = assessment?.mode === "resolution" ? assessment.resolution ?? 0 : 0;
  const count = assessment?.mode === "count" ? assessment.count ?? 0 : "";
  const mode = assessment?.mode ?? "none";
  return (
    `<input type="checkbox" class="present" data-pid="${propertyId}"` +
    `${isBinary ? " checked" : ""} aria-label="present">` +
    `<input type="range" class="resolution" data-pid="${propertyId}" min="0" max="1"` +
    ` step="0.01" value="${resolution}" aria-label="resolution">` +
    `<input type="number" class="count" data-pid="${propertyId}" min="0" step="1"` +
    ` value="${count}" placeholder="n" aria-label="count">` +
    `<span class="mode-badge mode-${mode}">${mode === "none" ? "" : mode}</span>`
  );
}

export function propertyPanelHtml(
  properties: PropertyInfo[],
  doc: ProblemDocument,
  flagged: Set<number> = new Set(),
): string {
  const rows = properties.map((prop) => {
    const assessment = assessmentFor(doc, prop.id);
    const classes = ["property-row"];
    if (assessment) classes.push("assessed");
    if (flagged.has(prop.id)) classes.push("flagged");
    return (
      `<div class="${classes.join(" ")}" data-pid="${prop.id}" ` +
      `title="${escapeHtml(prop.definition)}">` +
      `<span class="pid">${prop.id}</span>` +
      `<span class="pname">${escapeHtml(prop.name)}</span>` +
      rowControls(prop.id, assessment) +
      "</div>"
    );
  });
  return rows.join("\n");
}

// Recommendations pane: ranked strategies, each carrying its supporting
// property ids in a data attribute so the panel can highlight them on
// hover. When nothing is assessed, show the engine's gap verdict.

export const HARDEST_NUT_TEXT =
  "No cataloged strategy applies: none of the fourteen structural " +
  "properties is present. Problems like this are the hardest nuts; " +
  "revisit the assessments or widen the framing before committing to a " +
  "course of action.";

export function recommendationsHtml(response: RecommendResponse | null): string {
  if (response === null) return '<p class="placeholder">No engine response yet.</p>';
  if (response.gaps.hardest_nut) {
    return `<p class="hardest-nut">${escapeHtml(HARDEST_NUT_TEXT)}</p>`;
  }
  if (response.recommendations.length === 0) {
    return '<p class="placeholder">No applicable strategies.</p>';
  }
  const items = response.recommendations.map((rec, i) => {
    const pids = rec.supporting_properties.map((s) => s.property_id);
    const support = rec.supporting_properties
      .map((s) => `${s.property_id} (${s.resolution})`)
      .join(", ");
    return (
      `<li class="recommendation" data-pids="${pids.join(",")}">` +
      `<span class="rank">${i + 1}.</span> ` +
      `<span class="strategy-name">${escapeHtml(rec.strategy.name)}</span>` +
      `<span class="score">score ${rec.score}</span>` +
      `<span class="support">properties ${escapeHtml(support)}</span>` +
      "</li>"
    );
  });
  const gaps = response.gaps.absent_properties;
  const gapNote = gaps.length
    ? `<p class="gaps">Absent properties: ${gaps.join(", ")}</p>`
    : "";
  return `<ol class="recommendations">${items.join("\n")}</ol>` + gapNote;
}

// Trade-off views. Scatter for an objective pair, table for wide fronts,
// and a verbatim detail card for the selected member.

const PLOT = { width: 480, height: 360, pad: 44 };

function scale(values: number[], lo: number, hi: number): (v: number) => number {
  const min = Math.min(...values);
  const max = Math.max(...values);
  if (max === min) return () => (lo + hi) / 2;
  return (v) => lo + ((v - min) / (max - min)) * (hi - lo);
}

export function scatterSvg(
  front: FrontInfo,
  metricIds: string[],
  xIndex: number,
  yIndex: number,
  kneeIndex: number | null,
  selected: number | null,
): string {
  const { width, height, pad } = PLOT;
  const xs = front.members.map((m) => m.objectives[xIndex] ?? 0);
  const ys = front.members.map((m) => m.objectives[yIndex] ?? 0);
  const sx = scale(xs, pad, width - pad);
  const sy = scale(ys, height - pad, pad); // SVG y grows downward
  const points = front.members.map((m, i) => {
    const cx = sx(m.objectives[xIndex] ?? 0).toFixed(1);
    const cy = sy(m.objectives[yIndex] ?? 0).toFixed(1);
    const classes = ["member"];
    if (i === kneeIndex) classes.push("knee");
    if (i === selected) classes.push("selected");
    return `<circle class="${classes.join(" ")}" data-index="${i}" cx="${cx}" cy="${cy}" r="5"/>`;
  });
  const xLabel = `${metricIds[xIndex] ?? "x"} (${front.directions[xIndex] ?? "?"})`;
  const yLabel = `${metricIds[yIndex] ?? "y"} (${front.directions[yIndex] ?? "?"})`;
  return (
    `<svg viewBox="0 0 ${width} ${height}" class="front-scatter" role="img">` +
    `<line class="axis" x1="${pad}" y1="${height - pad}" x2="${width - pad}" y2="${height - pad}"/>` +
    `<line class="axis" x1="${pad}" y1="${pad}" x2="${pad}" y2="${height - pad}"/>` +
    `<text class="axis-label x" x="${width / 2}" y="${height - 8}">${escapeHtml(xLabel)}</text>` +
    `<text class="axis-label y" x="12" y="${height / 2}" transform="rotate(-90 12 ${height / 2})">` +
    `${escapeHtml(yLabel)}</text>` +
    points.join("") +
    "</svg>"
  );
}

function originText(member: FrontMember): string {
  return typeof member.origin === "string" ? member.origin : JSON.stringify(member.origin);
}

export function frontTableHtml(
  front: FrontInfo,
  metricIds: string[],
  kneeIndex: number | null,
  selected: number | null,
): string {
  const header =
    "<tr><th>origin</th>" + metricIds.map((id) => `<th>${escapeHtml(id)}</th>`).join("") + "</tr>";
  const rows = front.members.map((m, i) => {
    const classes = ["front-row"];
    if (i === kneeIndex) classes.push("knee");
    if (i === selected) classes.push("selected");
    const cells = m.objectives.map((v) => `<td>${v}</td>`).join("");
    return (
      `<tr class="${classes.join(" ")}" data-index="${i}">` +
      `<td>${escapeHtml(originText(m))}</td>` +
      cells +
      "</tr>"
    );
  });
  return `<table class="front-table"><thead>${header}</thead><tbody>${rows.join("\n")}</tbody></table>`;
}

/**
 * Detail card for a selected front member. The objective vector is the
 * engine's own numbers, rendered without rounding, so what the analyst
 * reads is exactly what /optimize returned.
 */
export function memberDetailHtml(member: FrontMember, metricIds: string[]): string {
  const rows = metricIds
    .map((id, i) => `<tr><td>${escapeHtml(id)}</td><td>${member.objectives[i]}</td></tr>`)
    .join("");
  const slacks = member.constraint_slacks.length
    ? `<p class="slacks">constraint slacks: <code>${JSON.stringify(member.constraint_slacks)}</code></p>`
    : "";
  return (
    '<div class="member-detail">' +
    `<p class="origin">origin: <code>${escapeHtml(originText(member))}</code></p>` +
    `<p class="vector">objectives: <code class="objective-vector">${JSON.stringify(member.objectives)}</code></p>` +
    `<table class="member-metrics"><tbody>${rows}</tbody></table>` +
    slacks +
    "</div>"
  );
}

export function warningsHtml(warnings: string[]): string {
  if (warnings.length === 0) return "";
  const items = warnings.map((w) => `<li>${escapeHtml(w)}</li>`).join("");
  return `<ul class="front-warnings">${items}</ul>`;
}

export function diagnosticsHtml(diagnostics: Diagnostic[]): string {
  if (diagnostics.length === 0) return "";
  const items = diagnostics
    .map(
      (d) =>
        `<li><code>${escapeHtml(d.code)}</code> ${escapeHtml(d.message)}` +
        (d.where ? ` <span class="where">at ${escapeHtml(d.where)}</span>` : "") +
        "</li>",
    )
    .join("");
  return `<ul class="diagnostics">${items}</ul>`;
}

/** Engine error payload, shown verbatim with its machine code. */
export function errorHtml(error: DisplayedErrorLike | null): string {
  if (error === null) return "";
  return (
    '<div class="engine-error">' +
    `<span class="code">${escapeHtml(error.code)}</span>` +
    `<pre>${escapeHtml(JSON.stringify(error, null, 2))}</pre>` +
    "</div>"
  );
}
