/** Payload shapes of the gateway HTTP API. Field names match the server. */

export type RankMode = "solr" | "str" | "brad" | "auth";

export interface Suggestion {
  controlled_term: string;
  score: number;
  n_ab: number;
}

export interface SuggestResponse {
  term: string;
  suggestions: Suggestion[];
}

export interface ResultRow {
  doc_id: string;
  title: string;
  baseline_score: number;
  rerank_score: number | null;
  rank: number;
  model: string;
  issn: string | null;
  journal: string | null;
  authors: string[];
}

export interface JournalRow {
  issn: string;
  journal_title: string;
  count: number;
  zone: number;
}

export interface AuthorRow {
  author: string;
  betweenness: number;
  degree: number;
  publication_count: number;
}

export interface SearchResponse {
  query: string;
  rank: string;
  expand: string;
  k: number;
  query_terms: string[];
  results: ResultRow[];
  candidate_count: number;
  brad_mode?: string;
  journals?: JournalRow[];
  authors?: AuthorRow[];
  coverage?: number;
  expansion_terms?: Suggestion[];
  expanded_query_terms?: string[];
}

export interface Topic {
  id: string;
  title: string;
  description: string;
  query: string;
}

export interface TopicsResponse {
  topics: Topic[];
}

export interface PoolDoc {
  doc_id: string;
  title: string;
  abstract: string;
}

export interface PoolResponse {
  topic_id: string;
  title: string;
  description: string;
  pool_size: number;
  doc_ids: string[];
  docs: PoolDoc[];
}

export interface StoredJudgment {
  topic_id: string;
  doc_id: string;
  rater_id: string;
  relevant: number;
}

export interface AssessmentResponse {
  status: "new" | "updated";
  judgment: StoredJudgment;
}

export interface ErrorPayload {
  error: {
    code: string;
    message: string;
  };
}
