// Shared test plumbing: a route-based fetch stub and fixture loading.

import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { vi } from "vitest";

export function fixtureText(name: string): string {
  const url = new URL(`../../fixtures/${name}.dproblem.json`, import.meta.url);
  return readFileSync(fileURLToPath(url), "utf8");
}

export function jsonResponse(data: unknown, status = 200): Response {
  return new Response(JSON.stringify(data), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export type Route = (body: unknown) => Response | Promise<Response>;

/**
 * Install a fetch stub keyed by URL path. Routes receive the parsed
 * request body (null for GET). Unrouted paths fail the test loudly.
 */
export function stubFetch(routes: Record<string, Route>): ReturnType<typeof vi.fn> {
  const stub = vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const path = new URL(url).pathname;
    const route = routes[path];
    if (!route) throw new Error(`no stubbed route for ${path}`);
    const body = init?.body ? JSON.parse(String(init.body)) : null;
    return route(body);
  });
  vi.stubGlobal("fetch", stub);
  return stub;
}

/** A promise whose resolution the test controls. */
export function deferred<T>(): { promise: Promise<T>; resolve: (value: T) => void } {
  let resolve!: (value: T) => void;
  const promise = new Promise<T>((r) => {
    resolve = r;
  });
  return { promise, resolve };
}
