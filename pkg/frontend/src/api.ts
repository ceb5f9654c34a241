/** Thin typed client over the service endpoints. The UI never computes SQ or
 * feedback itself; every number it shows came out of one of these calls. */

import type {
  FeedbackReportDto,
  HealthResponse,
  Overrides,
  PatternsResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** What the app needs from the service; PersqApi is the real implementation,
 * tests substitute recorded-response stubs. */
export interface ApiClient {
  getHealth(): Promise<HealthResponse>;
  getPatterns(): Promise<PatternsResponse>;
  getFeedback(userId: string, date: string): Promise<FeedbackReportDto>;
  postWhatIf(
    userId: string,
    baseDate: string,
    overrides: Overrides,
  ): Promise<FeedbackReportDto>;
}

async function parseError(response: Response): Promise<ApiError> {
  let detail = response.statusText || `HTTP ${response.status}`;
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, detail);
}

export class PersqApi implements ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  getHealth(): Promise<HealthResponse> {
    return this.request("/health");
  }

  getPatterns(): Promise<PatternsResponse> {
    return this.request("/patterns");
  }

  getFeedback(userId: string, date: string): Promise<FeedbackReportDto> {
    return this.request(
      `/feedback/${encodeURIComponent(userId)}?date=${encodeURIComponent(date)}`,
    );
  }

  postWhatIf(
    userId: string,
    baseDate: string,
    overrides: Overrides,
  ): Promise<FeedbackReportDto> {
    return this.request("/whatif", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ user_id: userId, base_date: baseDate, overrides }),
    });
  }
}
