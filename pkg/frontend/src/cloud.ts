/** Interactive term cloud: suggested descriptors sized by association score.
 *
 * Font size is a monotone (linear) map of the score, so a stronger
 * association never renders smaller. Clicking a term toggles its selection;
 * selected terms are sent as explicit expansion terms on the next search.
 */

import type { Suggestion } from "./types.js";

const MIN_PX = 13;
const MAX_PX = 32;

export function fontSizeFor(score: number, minScore: number, maxScore: number): number {
  if (maxScore <= minScore) {
    return (MIN_PX + MAX_PX) / 2;
  }
  const t = (score - minScore) / (maxScore - minScore);
  return MIN_PX + t * (MAX_PX - MIN_PX);
}

export function renderTermCloud(
  container: HTMLElement,
  suggestions: Suggestion[],
  isSelected: (term: string) => boolean,
  onToggle: (term: string) => void,
): void {
  container.replaceChildren();
  if (suggestions.length === 0) {
    const hint = document.createElement("p");
    hint.className = "cloud-hint";
    hint.textContent = "No term suggestions for this query.";
    container.appendChild(hint);
    return;
  }

  const scores = suggestions.map((s) => s.score);
  const minScore = Math.min(...scores);
  const maxScore = Math.max(...scores);

  for (const suggestion of suggestions) {
    const button = document.createElement("button");
    button.type = "button";
    button.className = "cloud-term";
    button.dataset.term = suggestion.controlled_term;
    button.textContent = suggestion.controlled_term;
    button.style.fontSize = `${fontSizeFor(suggestion.score, minScore, maxScore)}px`;
    button.title = `score ${suggestion.score} · ${suggestion.n_ab} co-occurrences`;
    if (isSelected(suggestion.controlled_term)) {
      button.classList.add("selected");
    }
    button.addEventListener("click", () => {
      onToggle(suggestion.controlled_term);
      button.classList.toggle("selected");
    });
    container.appendChild(button);
  }
}
