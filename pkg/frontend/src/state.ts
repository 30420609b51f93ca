// Workbench session state: the client-held document plus the latest
// engine answers for it. All mutations funnel through this class so the
// displayed score, recommendations, and front always come from the most
// recent service responses for the current document (stale responses
// are discarded inside ApiClient).

import { ApiClient, ApiError, ServiceUnreachableError } from "./api.js";
import {
  clearAssessment,
  documentFileName,
  emptyDocument,
  parseDocumentText,
  setAssessment,
} from "./document.js";
import type {
  Assessment,
  Diagnostic,
  OptimizeResponse,
  ProblemDocument,
  RecommendResponse,
  ScoreResponse,
  SearchOptions,
} from "./types.js";

export const REFRESH_DEBOUNCE_MS = 300;

export interface DisplayedError {
  code: string;
  message: string;
  detail: unknown;
}

type Listener = () => void;

export class WorkbenchState {
  document: ProblemDocument = emptyDocument();
  score: ScoreResponse | null = null;
  recommendations: RecommendResponse | null = null;
  front: OptimizeResponse | null = null;
  selectedMember: number | null = null;
  diagnostics: Diagnostic[] = [];
  dirty = false;
  serviceOk = true;
  lastError: DisplayedError | null = null;
  optimizing = false;

  private listeners: Listener[] = [];
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(readonly api: ApiClient) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  /** Gauge text: the engine's H to three decimals, or a dash while unknown. */
  gaugeText(): string {
    return this.score === null ? "–" : this.score.h.toFixed(3);
  }

  /** True when the engine reported H = 0: some property is fully resolved. */
  analyticallyTrivial(): boolean {
    return this.score !== null && this.score.h === 0;
  }

  // Document edits. Each one marks the session dirty, drops answers that
  // no longer correspond to the document, and schedules a refresh.

  applyAssessment(assessment: Assessment): void {
    this.document = setAssessment(this.document, assessment);
    this.markEdited();
  }

  removeAssessment(propertyId: number): void {
    this.document = clearAssessment(this.document, propertyId);
    this.markEdited();
  }

  toggleBinary(propertyId: number, present: boolean): void {
    this.applyAssessment({ property_id: propertyId, mode: "binary", present });
  }

  setResolution(propertyId: number, resolution: number): void {
    this.applyAssessment({ property_id: propertyId, mode: "resolution", resolution });
  }

  setCount(propertyId: number, count: number): void {
    this.applyAssessment({ property_id: propertyId, mode: "count", count });
  }

  private markEdited(): void {
    this.dirty = true;
    this.front = null;
    this.selectedMember = null;
    this.scheduleRefresh();
    this.notify();
  }

  /** Debounced /score + /recommend refresh, so slider drags stay cheap. */
  scheduleRefresh(): void {
    if (this.debounceTimer !== null) clearTimeout(this.debounceTimer);
    this.debounceTimer = setTimeout(() => {
      this.debounceTimer = null;
      void this.refreshNow();
    }, REFRESH_DEBOUNCE_MS);
  }

  async refreshNow(): Promise<void> {
    if (this.debounceTimer !== null) {
      clearTimeout(this.debounceTimer);
      this.debounceTimer = null;
    }
    const doc = this.document;
    try {
      const [score, recs] = await Promise.all([this.api.score(doc), this.api.recommend(doc)]);
      if (score !== null) this.score = score;
      if (recs !== null) this.recommendations = recs;
      if (score !== null || recs !== null) {
        this.serviceOk = true;
        this.lastError = null;
        this.diagnostics = [];
      }
    } catch (exc) {
      this.noteFailure(exc);
    }
    this.notify();
  }

  async runOptimize(options?: SearchOptions): Promise<void> {
    this.optimizing = true;
    this.notify();
    try {
      const result = await this.api.optimize(this.document, options);
      if (result !== null) {
        this.front = result;
        this.selectedMember = null;
        this.serviceOk = true;
        this.lastError = null;
      }
    } catch (exc) {
      this.noteFailure(exc);
    }
    this.optimizing = false;
    this.notify();
  }

  selectMember(index: number | null): void {
    this.selectedMember = index;
    this.notify();
  }

  /** Load document text; throws on unparseable input, leaving state as it was. */
  loadText(text: string): void {
    const doc = parseDocumentText(text); // throws before any state change
    this.document = doc;
    this.dirty = false;
    this.score = null;
    this.recommendations = null;
    this.front = null;
    this.selectedMember = null;
    this.diagnostics = [];
    this.lastError = null;
    this.notify();
    void this.refreshNow();
  }

  /**
   * Validate and hand back the canonical bytes to save. Returns null when
   * the engine rejects the document; diagnostics are kept for display.
   */
  async prepareSave(): Promise<{ name: string; text: string } | null> {
    try {
      const result = await this.api.validate(this.document);
      if (result === null) return null; // superseded; caller can retry
      if (!result.valid || result.canonical === null) {
        this.diagnostics = result.diagnostics;
        this.notify();
        return null;
      }
      this.diagnostics = [];
      this.dirty = false;
      this.notify();
      return { name: documentFileName(this.document), text: result.canonical };
    } catch (exc) {
      this.noteFailure(exc);
      this.notify();
      return null;
    }
  }

  private noteFailure(exc: unknown): void {
    if (exc instanceof ServiceUnreachableError) {
      this.serviceOk = false;
      return;
    }
    if (exc instanceof ApiError) {
      this.serviceOk = true;
      this.lastError = { code: exc.code, message: exc.message, detail: exc.detail };
      if (exc.code === "VALIDATION_FAILED" && Array.isArray(exc.detail)) {
        this.diagnostics = exc.detail as Diagnostic[];
      }
      return;
    }
    throw exc;
  }
}
