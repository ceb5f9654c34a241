/** Wire types mirroring the service's JSON responses. */

export interface FeedbackItemDto {
  parameter: string;
  current_level: string;
  target_level: string;
  message: string;
}

export interface PatternDto {
  items: string[];
  support_count: number;
  group: string;
}

export interface FeedbackReportDto {
  user_id: string;
  target_date: string;
  predicted_sq: number;
  sq_group: string;
  matched_pattern: PatternDto | null;
  items: FeedbackItemDto[];
  status: string;
}

export interface VariableMeta {
  mutable: boolean;
  min?: number;
  max?: number;
  cuts?: number[];
  item_variable?: string;
  categories?: string[];
}

export interface PatternsResponse {
  patterns: Record<string, PatternDto[]>;
  meta: Record<string, VariableMeta>;
}

export interface HealthResponse {
  status: string;
  model_loaded: boolean;
  patterns_loaded: boolean;
  window_t: number;
  users: string[];
}

export type Overrides = Record<string, number | string>;
