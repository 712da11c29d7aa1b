/** Thin typed client for the gateway API. All numbers and orderings come
 * from the server; the UI never recomputes them. */

import type {
  AssessmentResponse,
  ErrorPayload,
  PoolResponse,
  RankMode,
  SearchResponse,
  SuggestResponse,
  TopicsResponse,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;

  constructor(code: string, message: string) {
    super(message);
    this.code = code;
  }
}

export interface SearchParams {
  q: string;
  rank: RankMode;
  k?: number;
  bradMode?: "weighted" | "pure";
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class GatewayClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.base = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.base}${path}`, init);
    const body = (await response.json()) as T | ErrorPayload;
    if (typeof body === "object" && body !== null && "error" in body) {
      const payload = body as ErrorPayload;
      throw new ApiError(payload.error.code, payload.error.message);
    }
    if (!response.ok) {
      throw new ApiError("http_error", `unexpected status ${response.status}`);
    }
    return body as T;
  }

  /** The STR mode is baseline ranking plus automatic query expansion. */
  search(params: SearchParams): Promise<SearchResponse> {
    const query = new URLSearchParams({
      q: params.q,
      rank: params.rank === "str" ? "solr" : params.rank,
      expand: params.rank === "str" ? "str" : "none",
      k: String(params.k ?? 10),
    });
    if (params.bradMode) query.set("brad_mode", params.bradMode);
    return this.request<SearchResponse>(`/search?${query}`);
  }

  suggest(term: string, m = 4): Promise<SuggestResponse> {
    const query = new URLSearchParams({ term, m: String(m) });
    return this.request<SuggestResponse>(`/suggest?${query}`);
  }

  topics(): Promise<TopicsResponse> {
    return this.request<TopicsResponse>("/topics");
  }

  pool(topicId: string, seed?: number): Promise<PoolResponse> {
    const query = new URLSearchParams({ topic: topicId });
    if (seed !== undefined) query.set("seed", String(seed));
    return this.request<PoolResponse>(`/pool?${query}`);
  }

  submitAssessment(
    topicId: string,
    docId: string,
    raterId: string,
    relevant: boolean,
  ): Promise<AssessmentResponse> {
    return this.request<AssessmentResponse>("/assessments", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({
        topic_id: topicId,
        doc_id: docId,
        rater_id: raterId,
        relevant: relevant ? 1 : 0,
      }),
    });
  }
}
