// End-to-end checks against a live engine, mirroring the workbench
// acceptance walkthrough: no mocks, real fetch. Skipped unless
// PIVOTAL_SERVICE_URL points at a running service, e.g.
//
//   pivotal serve --port 8123 &
//   PIVOTAL_SERVICE_URL=http://127.0.0.1:8123 npx vitest run tests/integration.test.ts

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { WorkbenchState } from "../src/state.js";
import { memberDetailHtml, metricIdsOf } from "../src/render.js";
import { fixtureText } from "./helpers.js";

const SERVICE = process.env.PIVOTAL_SERVICE_URL;

describe.skipIf(!SERVICE)("against a live engine", () => {
  const api = () => new ApiClient(SERVICE!.replace(/\/$/, ""));

  it("toggling property 5 on the empty problem moves the gauge to 0.500", async () => {
    const state = new WorkbenchState(api());
    await state.refreshNow();
    expect(state.gaugeText()).toBe("1.000"); // nothing assessed yet
    state.toggleBinary(5, true);
    await state.refreshNow(); // bypass the debounce; same request path
    expect(state.gaugeText()).toBe("0.500");
  });

  it("loading the asteroid fixture shows H = 0.031", async () => {
    const state = new WorkbenchState(api());
    state.loadText(fixtureText("asteroid"));
    await state.refreshNow();
    expect(state.gaugeText()).toBe("0.031");
    expect(state.recommendations?.recommendations.map((r) => r.strategy.name)).toContain(
      "Early detection before impact",
    );
  });

  it("a selected front member displays the optimize response verbatim", async () => {
    const state = new WorkbenchState(api());
    state.loadText(fixtureText("asteroid"));
    await state.runOptimize();
    const front = state.front;
    expect(front).not.toBeNull();
    expect(front!.front.members.length).toBeGreaterThan(0);

    const kneeIndex = front!.tradeoffs!.knee_index;
    state.selectMember(kneeIndex);
    const member = front!.front.members[kneeIndex]!;
    const html = memberDetailHtml(member, metricIdsOf(state.document));
    expect(html).toContain(
      `<code class="objective-vector">${JSON.stringify(member.objectives)}</code>`,
    );
  });

  it("saving an unchanged fixture returns byte-identical content", async () => {
    const state = new WorkbenchState(api());
    const original = fixtureText("asteroid");
    state.loadText(original);
    const saved = await state.prepareSave();
    expect(saved).not.toBeNull();
    expect(saved!.text).toBe(original);
    expect(saved!.name).toBe("asteroid-defense.dproblem.json");
  });

  it("continuous search replays exactly under the same seed", async () => {
    const client = api();
    const state = new WorkbenchState(client);
    state.loadText(fixtureText("entrepreneur"));
    const options = { population: 16, generations: 10, seed: 9 };
    await state.runOptimize(options);
    const first = JSON.stringify(state.front);
    await state.runOptimize(options);
    expect(JSON.stringify(state.front)).toBe(first);
  });
});
