/** Per-tab session state and request sequencing.
 *
 * Invariants kept here: the rank mode is always one of the four services,
 * selected expansion terms are always a subset of the last suggestion
 * response, and at most one search response is applied at a time (stale
 * responses are discarded by sequence number).
 */

import type { RankMode, Suggestion } from "./types.js";

export const RANK_MODES: readonly RankMode[] = ["solr", "str", "brad", "auth"];

export class SessionState {
  query = "";
  rankMode: RankMode = "solr";
  activeTopic: string | null = null;
  raterId = "";
  assessmentMode = false;

  private suggestions: Suggestion[] = [];
  private selected = new Set<string>();

  setRankMode(mode: string): void {
    if (!RANK_MODES.includes(mode as RankMode)) {
      throw new Error(`unknown rank mode: ${mode}`);
    }
    this.rankMode = mode as RankMode;
  }

  get lastSuggestions(): readonly Suggestion[] {
    return this.suggestions;
  }

  get selectedTerms(): string[] {
    // preserve suggestion (score) order
    return this.suggestions
      .map((s) => s.controlled_term)
      .filter((term) => this.selected.has(term));
  }

  /** Replacing the suggestions prunes selections no longer offered. */
  setSuggestions(suggestions: Suggestion[]): void {
    this.suggestions = suggestions;
    const offered = new Set(suggestions.map((s) => s.controlled_term));
    for (const term of [...this.selected]) {
      if (!offered.has(term)) this.selected.delete(term);
    }
  }

  isSelected(term: string): boolean {
    return this.selected.has(term);
  }

  /** Returns the new selection state of the term. */
  toggleTerm(term: string): boolean {
    if (!this.suggestions.some((s) => s.controlled_term === term)) {
      return false;
    }
    if (this.selected.has(term)) {
      this.selected.delete(term);
      return false;
    }
    this.selected.add(term);
    return true;
  }

  /** Query actually sent: the user's terms OR-ed with the picked descriptors. */
  effectiveQuery(): string {
    const extras = this.selectedTerms.join(" ");
    return extras ? `${this.query} ${extras}`.trim() : this.query;
  }
}

/** Monotone counter; a response is applied only if it is still the latest. */
export class RequestSequencer {
  private latest = 0;

  issue(): number {
    this.latest += 1;
    return this.latest;
  }

  isCurrent(id: number): boolean {
    return id === this.latest;
  }
}
