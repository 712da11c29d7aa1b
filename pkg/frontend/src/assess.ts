/** Blinded assessment mode.
 *
 * Pool documents render in the server's seeded shuffle order with no model
 * panels and no service attribution: an assessor sees title and abstract
 * only. Judgments POST to the gateway; a row is only marked once the server
 * acknowledges, and a rejected or failed request leaves the row unchanged
 * with an inline error (the buttons remain active as the retry affordance).
 */

import { GatewayClient } from "./api.js";
import type { PoolResponse } from "./types.js";

export interface RowMark {
  relevant: boolean;
  status: "new" | "updated";
}

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderPool(
  container: HTMLElement,
  pool: PoolResponse,
  onJudge: (docId: string, relevant: boolean) => void,
): void {
  container.replaceChildren();
  container.appendChild(el("h3", "panel-title", pool.title));
  container.appendChild(el("p", "pool-description", pool.description));
  container.appendChild(
    el("p", "pool-size", `${pool.pool_size} documents to judge`),
  );

  const list = el("ol", "pool-list");
  for (const doc of pool.docs) {
    const item = el("li", "pool-row");
    item.dataset.docId = doc.doc_id;

    item.appendChild(el("div", "pool-doc-title", doc.title));
    item.appendChild(el("div", "pool-doc-abstract", doc.abstract));

    const controls = el("div", "pool-controls");
    const relevantButton = el("button", "judge-relevant", "Relevant") as HTMLButtonElement;
    relevantButton.type = "button";
    relevantButton.addEventListener("click", () => onJudge(doc.doc_id, true));
    const notButton = el("button", "judge-not-relevant", "Not relevant") as HTMLButtonElement;
    notButton.type = "button";
    notButton.addEventListener("click", () => onJudge(doc.doc_id, false));
    controls.appendChild(relevantButton);
    controls.appendChild(notButton);
    controls.appendChild(el("span", "judgment-badge"));
    controls.appendChild(el("span", "judgment-error"));
    item.appendChild(controls);

    list.appendChild(item);
  }
  container.appendChild(list);
}

function rowFor(container: HTMLElement, docId: string): HTMLElement | null {
  for (const row of container.querySelectorAll<HTMLElement>(".pool-row")) {
    if (row.dataset.docId === docId) return row;
  }
  return null;
}

export function markRow(container: HTMLElement, docId: string, mark: RowMark): void {
  const row = rowFor(container, docId);
  if (!row) return;
  const badge = row.querySelector<HTMLElement>(".judgment-badge");
  const error = row.querySelector<HTMLElement>(".judgment-error");
  if (badge) {
    badge.textContent = mark.relevant ? "relevant" : "not relevant";
    badge.classList.toggle("updated", mark.status === "updated");
    if (mark.status === "updated") {
      badge.textContent += " (updated)";
    }
  }
  if (error) error.textContent = "";
}

export function markRowError(container: HTMLElement, docId: string, message: string): void {
  const row = rowFor(container, docId);
  if (!row) return;
  const error = row.querySelector<HTMLElement>(".judgment-error");
  if (error) error.textContent = message;
}

/** POST one judgment and reflect the server's verdict on the row. */
export async function submitJudgment(
  client: GatewayClient,
  container: HTMLElement,
  topicId: string,
  raterId: string,
  docId: string,
  relevant: boolean,
): Promise<void> {
  try {
    const response = await client.submitAssessment(topicId, docId, raterId, relevant);
    markRow(container, docId, {
      relevant: response.judgment.relevant === 1,
      status: response.status,
    });
  } catch (err) {
    const message = err instanceof Error ? err.message : String(err);
    markRowError(container, docId, message);
  }
}
