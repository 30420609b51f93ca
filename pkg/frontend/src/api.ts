// Thin client for the engine's /api/v1 endpoints.
//
// Each endpoint keeps a request sequence number; when a response lands
// after a newer request to the same endpoint has gone out, the caller
// gets null instead of data, so stale responses can never overwrite
// fresh state.

import type {
  ErrorEnvelope,
  OptimizeResponse,
  ProblemDocument,
  RecommendConfig,
  RecommendResponse,
  ScoreConfig,
  ScoreResponse,
  SearchOptions,
  TaxonomyResponse,
  ValidateResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly detail: unknown = null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** Network-level failure: the service could not be reached at all. */
export class ServiceUnreachableError extends Error {
  constructor(readonly reason: unknown) {
    super("service unreachable");
    this.name = "ServiceUnreachableError";
  }
}

async function errorFrom(response: Response): Promise<ApiError> {
  let code = "HTTP_" + response.status;
  let message = response.statusText || "request failed";
  let detail: unknown = null;
  try {
    const body = (await response.json()) as ErrorEnvelope;
    if (body && body.error) {
      code = body.error.code;
      message = body.error.message;
      detail = body.error.detail;
    }
  } catch {
    // non-JSON error body; keep the HTTP-level description
  }
  return new ApiError(response.status, code, message, detail);
}

export class ApiClient {
  private sequences = new Map<string, number>();

  constructor(readonly baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T | null> {
    const seq = (this.sequences.get(path) ?? 0) + 1;
    this.sequences.set(path, seq);
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, init);
    } catch (cause) {
      if (this.sequences.get(path) !== seq) return null;
      throw new ServiceUnreachableError(cause);
    }
    if (this.sequences.get(path) !== seq) return null; // superseded
    if (!response.ok) throw await errorFrom(response);
    return (await response.json()) as T;
  }

  private post<T>(path: string, document: ProblemDocument, config?: object): Promise<T | null> {
    const body: { document: ProblemDocument; config?: object } = { document };
    if (config !== undefined && Object.keys(config).length > 0) body.config = config;
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  health(): Promise<{ status: string; version: string } | null> {
    return this.request("/api/v1/health");
  }

  taxonomy(): Promise<TaxonomyResponse | null> {
    return this.request("/api/v1/taxonomy");
  }

  validate(document: ProblemDocument): Promise<ValidateResponse | null> {
    return this.post("/api/v1/validate", document);
  }

  score(document: ProblemDocument, config?: ScoreConfig): Promise<ScoreResponse | null> {
    return this.post("/api/v1/score", document, config);
  }

  recommend(
    document: ProblemDocument,
    config?: RecommendConfig,
  ): Promise<RecommendResponse | null> {
    return this.post("/api/v1/recommend", document, config);
  }

  optimize(
    document: ProblemDocument,
    config?: SearchOptions,
  ): Promise<OptimizeResponse | null> {
    return this.post("/api/v1/optimize", document, config);
  }
}
