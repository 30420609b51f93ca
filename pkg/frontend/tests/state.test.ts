import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { REFRESH_DEBOUNCE_MS, WorkbenchState } from "../src/state.js";
import type { ProblemDocument } from "../src/types.js";
import { deferred, fixtureText, jsonResponse, stubFetch } from "./helpers.js";

const BASE = "http://engine.test";

function freshState(): WorkbenchState {
  return new WorkbenchState(new ApiClient(BASE));
}

const NO_RECS = { recommendations: [], gaps: { absent_properties: [], hardest_nut: false } };

afterEach(() => {
  vi.unstubAllGlobals();
  vi.useRealTimers();
});

describe("score refresh", () => {
  it("toggling property 5 on the empty problem asks the engine and shows 0.500", async () => {
    vi.useFakeTimers();
    const scored: ProblemDocument[] = [];
    stubFetch({
      "/api/v1/score": (body) => {
        const request = body as { document: ProblemDocument };
        scored.push(request.document);
        return jsonResponse({
          h: 0.5,
          k: 1,
          factors: [{ property_id: 5, resolution: 0.5, factor: 0.5 }],
        });
      },
      "/api/v1/recommend": () => jsonResponse(NO_RECS),
    });
    const state = freshState();
    state.toggleBinary(5, true);
    expect(state.gaugeText()).toBe("–"); // nothing fetched until the debounce fires
    await vi.advanceTimersByTimeAsync(REFRESH_DEBOUNCE_MS);
    expect(state.gaugeText()).toBe("0.500");
    expect(scored).toHaveLength(1);
    expect(scored[0]?.problem.assessments).toEqual([
      { property_id: 5, mode: "binary", present: true },
    ]);
  });

  it("collapses a slider drag burst into one request", async () => {
    vi.useFakeTimers();
    const fetchStub = stubFetch({
      "/api/v1/score": () => jsonResponse({ h: 0.4, k: 1, factors: [] }),
      "/api/v1/recommend": () => jsonResponse(NO_RECS),
    });
    const state = freshState();
    for (const value of [0.1, 0.2, 0.3, 0.4, 0.5]) state.setResolution(7, value);
    await vi.advanceTimersByTimeAsync(REFRESH_DEBOUNCE_MS - 1);
    expect(fetchStub).not.toHaveBeenCalled();
    await vi.advanceTimersByTimeAsync(1);
    expect(fetchStub).toHaveBeenCalledTimes(2); // one /score plus one /recommend
    expect(state.score?.h).toBe(0.4);
  });

  it("never lets a stale response overwrite a newer one", async () => {
    const slowScore = deferred<Response>();
    let scoreCalls = 0;
    vi.stubGlobal(
      "fetch",
      vi.fn((input: RequestInfo | URL) => {
        const path = new URL(String(input)).pathname;
        if (path === "/api/v1/recommend") return Promise.resolve(jsonResponse(NO_RECS));
        scoreCalls += 1;
        if (scoreCalls === 1) return slowScore.promise;
        return Promise.resolve(jsonResponse({ h: 0.25, k: 2, factors: [] }));
      }),
    );
    const state = freshState();
    const staleRefresh = state.refreshNow();
    const freshRefresh = state.refreshNow();
    await freshRefresh;
    expect(state.score?.h).toBe(0.25);
    slowScore.resolve(jsonResponse({ h: 1.0, k: 0, factors: [] }));
    await staleRefresh;
    expect(state.score?.h).toBe(0.25); // stale h = 1.0 was discarded
  });

  it("shows 0.031 after loading the asteroid fixture", async () => {
    const scored: ProblemDocument[] = [];
    stubFetch({
      "/api/v1/score": (body) => {
        const request = body as { document: ProblemDocument };
        scored.push(request.document);
        return jsonResponse({ h: 0.03125, k: 5, factors: [] });
      },
      "/api/v1/recommend": () => jsonResponse(NO_RECS),
    });
    const state = freshState();
    state.loadText(fixtureText("asteroid"));
    expect(state.dirty).toBe(false);
    await vi.waitFor(() => expect(state.gaugeText()).toBe("0.031"));
    expect(scored[0]?.problem.id).toBe("asteroid-defense");
    expect(scored[0]?.problem.assessments).toHaveLength(5);
  });

  it("flags a fully resolved problem as analytically trivial", async () => {
    stubFetch({
      "/api/v1/score": () =>
        jsonResponse({ h: 0.0, k: 1, factors: [{ property_id: 1, resolution: 1.0, factor: 0.0 }] }),
      "/api/v1/recommend": () => jsonResponse(NO_RECS),
    });
    const state = freshState();
    await state.refreshNow();
    expect(state.gaugeText()).toBe("0.000");
    expect(state.analyticallyTrivial()).toBe(true);
  });
});

describe("document lifecycle", () => {
  it("rejects malformed text without touching state", () => {
    const fetchStub = stubFetch({});
    const state = freshState();
    const before = JSON.stringify(state.document);
    expect(() => state.loadText("{nope")).toThrow(/not valid JSON/);
    expect(JSON.stringify(state.document)).toBe(before);
    expect(state.dirty).toBe(false);
    expect(fetchStub).not.toHaveBeenCalled();
  });

  it("marks edits dirty and drops answers tied to the old document", async () => {
    vi.useFakeTimers();
    stubFetch({
      "/api/v1/score": () => jsonResponse({ h: 1.0, k: 0, factors: [] }),
      "/api/v1/recommend": () => jsonResponse(NO_RECS),
      "/api/v1/optimize": () =>
        jsonResponse({
          front: {
            members: [
              { origin: "a", objectives: [1], constraint_slacks: [], feasible: true },
            ],
            directions: ["minimize"],
            warnings: [],
          },
          tradeoffs: null,
        }),
    });
    const state = freshState();
    await state.runOptimize();
    state.selectMember(0);
    expect(state.front).not.toBeNull();

    state.toggleBinary(3, true);
    expect(state.dirty).toBe(true);
    expect(state.front).toBeNull();
    expect(state.selectedMember).toBeNull();
    await vi.advanceTimersByTimeAsync(REFRESH_DEBOUNCE_MS);
  });

  it("prepareSave hands back the canonical echo and clears dirty", async () => {
    stubFetch({
      "/api/v1/validate": () =>
        jsonResponse({ valid: true, diagnostics: [], canonical: '{"canonical": true}\n' }),
    });
    const state = freshState();
    state.dirty = true;
    const saved = await state.prepareSave();
    expect(saved).toEqual({ name: "untitled.dproblem.json", text: '{"canonical": true}\n' });
    expect(state.dirty).toBe(false);
    expect(state.diagnostics).toEqual([]);
  });

  it("prepareSave keeps diagnostics when the engine rejects the document", async () => {
    const diag = { code: "MISSING_OBJECTIVE", message: "at least one objective", where: "problem.objectives" };
    stubFetch({
      "/api/v1/validate": () => jsonResponse({ valid: false, diagnostics: [diag], canonical: null }),
    });
    const state = freshState();
    state.dirty = true;
    const saved = await state.prepareSave();
    expect(saved).toBeNull();
    expect(state.dirty).toBe(true);
    expect(state.diagnostics).toEqual([diag]);
  });
});

describe("failure handling", () => {
  it("keeps the document editable when the service is unreachable", async () => {
    vi.stubGlobal("fetch", vi.fn(() => Promise.reject(new TypeError("ECONNREFUSED"))));
    const state = freshState();
    const before = JSON.stringify(state.document);
    await state.refreshNow();
    expect(state.serviceOk).toBe(false);
    expect(JSON.stringify(state.document)).toBe(before);

    // service comes back: the next refresh flips the flag
    stubFetch({
      "/api/v1/score": () => jsonResponse({ h: 1.0, k: 0, factors: [] }),
      "/api/v1/recommend": () => jsonResponse(NO_RECS),
    });
    await state.refreshNow();
    expect(state.serviceOk).toBe(true);
  });

  it("maps VALIDATION_FAILED details onto diagnostics", async () => {
    const detail = [{ code: "MISSING_METRIC_VALUE", message: "m", where: "problem.action_space.actions[0]" }];
    stubFetch({
      "/api/v1/score": () =>
        jsonResponse({ error: { code: "VALIDATION_FAILED", message: "problem failed validation", detail } }, 400),
      "/api/v1/recommend": () =>
        jsonResponse({ error: { code: "VALIDATION_FAILED", message: "problem failed validation", detail } }, 400),
    });
    const state = freshState();
    await state.refreshNow();
    expect(state.lastError?.code).toBe("VALIDATION_FAILED");
    expect(state.diagnostics).toEqual(detail);
  });

  it("stores engine errors verbatim for display", async () => {
    stubFetch({
      "/api/v1/optimize": () =>
        jsonResponse({ error: { code: "EVALUATION_BUDGET", message: "too big", detail: null } }, 400),
    });
    const state = freshState();
    await state.runOptimize({ population: 2000, generations: 600 });
    expect(state.lastError).toEqual({ code: "EVALUATION_BUDGET", message: "too big", detail: null });
    expect(state.optimizing).toBe(false);
  });
});

describe("trade-off flow", () => {
  it("stores the front and tracks the selected member", async () => {
    const front = {
      members: [
        { origin: "a", objectives: [1, 9], constraint_slacks: [], feasible: true },
        { origin: "b", objectives: [5, 5], constraint_slacks: [], feasible: true },
      ],
      directions: ["minimize", "minimize"],
      warnings: [],
    };
    stubFetch({
      "/api/v1/optimize": () =>
        jsonResponse({ front, tradeoffs: { extremes: [], knee: front.members[1], knee_index: 1 } }),
    });
    const state = freshState();
    await state.runOptimize();
    expect(state.front?.front.members).toHaveLength(2);
    expect(state.front?.tradeoffs?.knee_index).toBe(1);
    state.selectMember(1);
    expect(state.selectedMember).toBe(1);
  });
});
