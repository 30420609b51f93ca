// Wire types shared with the engine's HTTP API. These mirror the
// document schema (docs/schema.md) and endpoint payloads (docs/api.md);
// the engine is the source of truth and the UI never computes scores or
// dominance itself.

export type Direction = "minimize" | "maximize";
export type SpaceKind = "discrete" | "continuous";
export type AssessmentMode = "binary" | "resolution" | "count";

export interface Assessment {
  property_id: number;
  mode: AssessmentMode;
  present?: boolean;
  resolution?: number;
  count?: number;
  rationale?: string;
}

export interface Action {
  id: string;
  name?: string;
  metric_values?: Record<string, number | string>;
  bindings?: Record<string, number>;
}

export interface Variable {
  name: string;
  lower: number;
  upper: number;
}

export interface ActionSpace {
  kind: SpaceKind;
  actions?: Action[];
  variables?: Variable[];
}

export interface Metric {
  id: string;
  name: string;
  direction: Direction;
  definition?: string;
}

export interface Constraint {
  id: string;
  expression: string;
  bound: number;
}

export interface StateDescriptor {
  id: string;
  description?: string;
}

export interface Problem {
  id: string;
  title: string;
  description: string;
  action_space: ActionSpace;
  objectives: Metric[];
  aux_metrics?: Metric[];
  constraints?: Constraint[];
  assessments?: Assessment[];
  states?: StateDescriptor[];
  analyst_profile?: string;
}

export interface ProblemDocument {
  format_version: "1";
  problem: Problem;
}

// Endpoint payloads.

export interface Diagnostic {
  code: string;
  message: string;
  where: string;
}

export interface ValidateResponse {
  valid: boolean;
  diagnostics: Diagnostic[];
  canonical: string | null;
}

export interface ScoreFactor {
  property_id: number;
  resolution: number;
  factor: number;
}

export interface ScoreResponse {
  h: number;
  k: number;
  factors: ScoreFactor[];
}

export interface StrategyInfo {
  id: string;
  name: string;
  enabling_properties: number[];
}

export interface RecommendationInfo {
  strategy: StrategyInfo;
  supporting_properties: { property_id: number; resolution: number }[];
  score: number;
}

export interface GapInfo {
  absent_properties: number[];
  hardest_nut: boolean;
}

export interface RecommendResponse {
  recommendations: RecommendationInfo[];
  gaps: GapInfo;
}

export interface FrontMember {
  origin: string | number[];
  objectives: number[];
  constraint_slacks: number[];
  feasible: boolean;
}

export interface FrontInfo {
  members: FrontMember[];
  directions: Direction[];
  warnings: string[];
}

export interface TradeoffInfo {
  extremes: { objective_index: number; best: FrontMember; worst: FrontMember }[];
  knee: FrontMember;
  knee_index: number;
}

export interface OptimizeResponse {
  front: FrontInfo;
  tradeoffs: TradeoffInfo | null;
}

export interface PropertyInfo {
  id: number;
  name: string;
  cluster: string;
  definition: string;
  epistemic: boolean;
  strategy_ids: string[];
}

export interface TaxonomyResponse {
  properties: PropertyInfo[];
  strategies: StrategyInfo[];
}

export interface ErrorEnvelope {
  error: { code: string; message: string; detail: unknown };
}

export interface ScoreConfig {
  c?: number;
  count_scale?: number;
}

export interface RecommendConfig extends ScoreConfig {
  top?: number;
}

export interface SearchOptions {
  population?: number;
  generations?: number;
  seed?: number;
  mutation_rate?: number;
  mutation_sigma?: number;
  crossover_rate?: number;
}
