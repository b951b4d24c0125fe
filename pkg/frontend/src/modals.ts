import type { UiConfig } from "./config";
import type { StageName, SummaryPayload } from "./types";

/** Instructional modal for a stage; the caller tracks once-per-session. */
export function showStageModal(
  root: HTMLElement,
  stage: Exclude<StageName, "done">,
  cfg: UiConfig,
  onDismiss: () => void,
): void {
  const overlay = document.createElement("div");
  overlay.className = "modal-overlay";
  overlay.dataset.modal = `stage-${stage}`;
  const box = document.createElement("div");
  box.className = "modal stage-modal";
  const title = document.createElement("h2");
  title.textContent = cfg.copy[stage].title;
  const body = document.createElement("p");
  body.textContent = cfg.copy[stage].body;
  const ok = document.createElement("button");
  ok.className = "modal-dismiss";
  ok.textContent = "Got it";
  ok.addEventListener("click", () => {
    overlay.remove();
    onDismiss();
  });
  box.appendChild(title);
  box.appendChild(body);
  box.appendChild(ok);
  overlay.appendChild(box);
  root.appendChild(overlay);
}

/** Summary panel: every round's topic, outlet, conflicts and notes. */
export function showSummaryModal(
  root: HTMLElement,
  summary: SummaryPayload,
  names: Record<string, string>,
): void {
  const overlay = document.createElement("div");
  overlay.className = "modal-overlay";
  overlay.dataset.modal = "summary";
  const box = document.createElement("div");
  box.className = "modal summary-modal";
  const title = document.createElement("h2");
  title.textContent = `Session summary (${summary.rounds.length} round(s))`;
  box.appendChild(title);

  for (const round of summary.rounds) {
    const section = document.createElement("section");
    section.className = "summary-round";
    section.dataset.roundIndex = String(round.index);
    const heading = document.createElement("h3");
    const topic = round.topic ? (names[round.topic] ?? round.topic) : "(no topic)";
    heading.textContent = `Round ${round.index + 1}: ${topic} @ ${round.outlet ?? "-"} [${round.stage}]`;
    section.appendChild(heading);
    if (round.conflicts) {
      const conflicts = document.createElement("p");
      conflicts.textContent = `${round.conflicts.count} conflict(s): ${round.conflicts.conflicts
        .map((c) => names[c.entity] ?? c.entity)
        .join(", ")}`;
      section.appendChild(conflicts);
    }
    const notes = document.createElement("ul");
    for (const note of round.notes) {
      const li = document.createElement("li");
      li.textContent =
        note.article_id !== null
          ? `${note.text} [${note.article_id} ¶${note.paragraph_index}]`
          : note.text;
      notes.appendChild(li);
    }
    section.appendChild(notes);
    box.appendChild(section);
  }

  const close = document.createElement("button");
  close.className = "modal-dismiss";
  close.textContent = "Close";
  close.addEventListener("click", () => overlay.remove());
  box.appendChild(close);
  overlay.appendChild(box);
  root.appendChild(overlay);
}
