/** Application entry point: wires the controls, the gateway client and the
 * renderers together. At most one search is in flight; superseded responses
 * are dropped by sequence number. */

import { ApiError, GatewayClient } from "./api.js";
import { renderPool, submitJudgment } from "./assess.js";
import { renderTermCloud } from "./cloud.js";
import { apiBase } from "./config.js";
import { RequestSequencer, SessionState } from "./state.js";
import {
  renderAuthorPanel,
  renderError,
  renderJournalPanel,
  renderResults,
} from "./results.js";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function setup(): void {
  const client = new GatewayClient(apiBase());
  const state = new SessionState();
  const sequencer = new RequestSequencer();

  const searchView = byId<HTMLElement>("search-view");
  const assessView = byId<HTMLElement>("assess-view");
  const queryInput = byId<HTMLInputElement>("query");
  const searchForm = byId<HTMLFormElement>("search-form");
  const cloudContainer = byId<HTMLElement>("term-cloud");
  const resultsContainer = byId<HTMLElement>("results");
  const panelContainer = byId<HTMLElement>("side-panel");
  const statusContainer = byId<HTMLElement>("status");
  const modeToggle = byId<HTMLInputElement>("assessment-toggle");
  const topicSelect = byId<HTMLSelectElement>("topic-select");
  const raterInput = byId<HTMLInputElement>("rater-id");
  const poolContainer = byId<HTMLElement>("pool");

  async function runSearch(): Promise<void> {
    state.query = queryInput.value;
    if (!state.query.trim()) return;
    const requestId = sequencer.issue();
    statusContainer.textContent = "searching…";
    try {
      const [searchResponse, suggestResponse] = await Promise.all([
        client.search({ q: state.effectiveQuery(), rank: state.rankMode }),
        client.suggest(state.query),
      ]);
      if (!sequencer.isCurrent(requestId)) return; // superseded
      statusContainer.textContent = "";
      state.setSuggestions(suggestResponse.suggestions);
      renderTermCloud(
        cloudContainer,
        suggestResponse.suggestions,
        (term) => state.isSelected(term),
        (term) => {
          state.toggleTerm(term);
          void runSearch();
        },
      );
      renderResults(resultsContainer, searchResponse);
      panelContainer.replaceChildren();
      if (state.rankMode === "brad") {
        renderJournalPanel(panelContainer, searchResponse);
      } else if (state.rankMode === "auth") {
        renderAuthorPanel(panelContainer, searchResponse);
      }
    } catch (err) {
      if (!sequencer.isCurrent(requestId)) return;
      statusContainer.textContent = "";
      if (err instanceof ApiError) {
        renderError(resultsContainer, { code: err.code, message: err.message });
      } else {
        renderError(resultsContainer, {
          code: "network_error",
          message: err instanceof Error ? err.message : String(err),
        });
      }
    }
  }

  searchForm.addEventListener("submit", (event) => {
    event.preventDefault();
    void runSearch();
  });

  for (const radio of document.querySelectorAll<HTMLInputElement>("input[name=rank-mode]")) {
    radio.addEventListener("change", () => {
      state.setRankMode(radio.value);
      if (queryInput.value.trim()) void runSearch();
    });
  }

  async function enterAssessment(): Promise<void> {
    const topics = await client.topics();
    topicSelect.replaceChildren();
    for (const topic of topics.topics) {
      const option = document.createElement("option");
      option.value = topic.id;
      option.textContent = topic.title;
      topicSelect.appendChild(option);
    }
    if (topics.topics.length > 0) {
      await loadPool(topics.topics[0].id);
    }
  }

  async function loadPool(topicId: string): Promise<void> {
    state.activeTopic = topicId;
    const pool = await client.pool(topicId);
    renderPool(poolContainer, pool, (docId, relevant) => {
      if (!state.activeTopic || !raterInput.value.trim()) {
        statusContainer.textContent = "set a rater id before judging";
        return;
      }
      state.raterId = raterInput.value.trim();
      void submitJudgment(client, poolContainer, state.activeTopic, state.raterId, docId, relevant);
    });
  }

  modeToggle.addEventListener("change", () => {
    state.assessmentMode = modeToggle.checked;
    // assessment hides every model panel and all provenance
    searchView.hidden = state.assessmentMode;
    assessView.hidden = !state.assessmentMode;
    if (state.assessmentMode) void enterAssessment();
  });

  topicSelect.addEventListener("change", () => void loadPool(topicSelect.value));

  void client
    .topics()
    .then((topics) => {
      modeToggle.disabled = topics.topics.length === 0;
    })
    .catch(() => {
      modeToggle.disabled = true;
    });
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", setup);
}
