/** Result list and the journal/author side panels.
 *
 * Rendering is strictly declarative: rows appear exactly in the order the
 * server returned them and every displayed number is the server's value,
 * unmodified. Switching rank mode re-issues the query and re-renders from
 * scratch.
 */

import type { ErrorPayload, SearchResponse } from "./types.js";

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderResults(container: HTMLElement, response: SearchResponse): void {
  container.replaceChildren();

  if (response.expansion_terms && response.expansion_terms.length > 0) {
    const note = el("p", "expansion-note");
    note.appendChild(el("span", "expansion-label", "Query expanded with: "));
    for (const term of response.expansion_terms) {
      note.appendChild(el("span", "expansion-term", term.controlled_term));
    }
    container.appendChild(note);
  }

  if (response.results.length === 0) {
    container.appendChild(el("p", "no-results", "No documents matched."));
    return;
  }

  const list = el("ol", "result-list");
  for (const row of response.results) {
    const item = el("li", "result-row");
    item.dataset.docId = row.doc_id;

    const head = el("div", "result-head");
    head.appendChild(el("span", "result-title", row.title));
    head.appendChild(el("span", "result-model", row.model));
    item.appendChild(head);

    const meta = el("div", "result-meta");
    meta.appendChild(el("span", "result-id", row.doc_id));
    if (row.journal) {
      meta.appendChild(el("span", "result-journal", row.journal));
    }
    if (row.authors.length > 0) {
      meta.appendChild(el("span", "result-authors", row.authors.join("; ")));
    }
    item.appendChild(meta);

    const scores = el("div", "result-scores");
    scores.appendChild(el("span", "baseline-score", `baseline ${row.baseline_score}`));
    if (row.rerank_score !== null) {
      scores.appendChild(el("span", "rerank-score", `rerank ${row.rerank_score}`));
    }
    item.appendChild(scores);

    list.appendChild(item);
  }
  container.appendChild(list);
}

export function renderJournalPanel(container: HTMLElement, response: SearchResponse): void {
  container.replaceChildren();
  const journals = response.journals ?? [];
  if (journals.length === 0) {
    container.appendChild(el("p", "panel-hint", "No journals in this result set."));
    return;
  }
  container.appendChild(el("h3", "panel-title", "Core journals"));
  const table = el("table", "journal-table");
  const head = el("thead", "");
  const headerRow = el("tr", "");
  for (const label of ["Journal", "ISSN", "Articles", "Zone"]) {
    headerRow.appendChild(el("th", "", label));
  }
  head.appendChild(headerRow);
  table.appendChild(head);
  const body = el("tbody", "");
  for (const journal of journals) {
    const row = el("tr", "");
    row.appendChild(el("td", "", journal.journal_title));
    row.appendChild(el("td", "", journal.issn));
    row.appendChild(el("td", "", String(journal.count)));
    row.appendChild(el("td", "", String(journal.zone)));
    body.appendChild(row);
  }
  table.appendChild(body);
  container.appendChild(table);
}

export function renderAuthorPanel(container: HTMLElement, response: SearchResponse): void {
  container.replaceChildren();
  const authors = response.authors ?? [];
  if (authors.length === 0) {
    container.appendChild(el("p", "panel-hint", "No co-authorships in this result set."));
    return;
  }
  container.appendChild(el("h3", "panel-title", "Central authors"));
  const list = el("ol", "author-list");
  for (const author of authors) {
    const item = el("li", "author-row");
    item.appendChild(el("span", "author-name", author.author));
    item.appendChild(el("span", "author-betweenness", String(author.betweenness)));
    item.appendChild(
      el("span", "author-degree", `${author.degree} partners, ${author.publication_count} papers`),
    );
    list.appendChild(item);
  }
  container.appendChild(list);
  if (response.coverage !== undefined) {
    container.appendChild(
      el("p", "coverage-note", `ranking captured ${response.coverage} of the candidate set`),
    );
  }
}

export function renderError(container: HTMLElement, payload: ErrorPayload | { code: string; message: string }): void {
  const info = "error" in payload ? payload.error : payload;
  container.replaceChildren();
  const box = el("div", "error-box");
  box.appendChild(el("strong", "error-code", info.code));
  box.appendChild(el("span", "error-message", ` ${info.message}`));
  container.appendChild(box);
}
