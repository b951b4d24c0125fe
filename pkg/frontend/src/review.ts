import type { UiConfig } from "./config";
import { renderHiveSvg } from "./hive";
import type {
  ArticleGroups,
  ArticleListing,
  HighlightedArticle,
  LayoutCell,
  NoteRecord,
} from "./types";
import type { NoteDraft } from "./state";

export interface ReviewData {
  topic: string;
  center: string;
  outlet: string;
  groups: ArticleGroups;
  article: HighlightedArticle | null;
  notes: NoteRecord[];
  noteDraft: NoteDraft;
  userLayout: LayoutCell[] | null;
  dataLayout: LayoutCell[] | null;
  names: Record<string, string>;
}

export interface ReviewHandlers {
  onOpenArticle(articleId: string): void;
  onParagraphClick(paragraphIndex: number): void;
  onNoteTextChange(text: string): void;
  onNoteSubmit(): void;
  onCellClick(topic: string): void;
  onTryAnother(): void;
  onSummary(): void;
}

function listingColumn(
  title: string,
  listings: ArticleListing[],
  cssClass: string,
  onOpen: (id: string) => void,
): HTMLElement {
  const column = document.createElement("div");
  column.className = `article-column ${cssClass}`;
  const heading = document.createElement("h3");
  heading.textContent = `${title} (${listings.length})`;
  column.appendChild(heading);
  const list = document.createElement("ul");
  for (const item of listings) {
    const li = document.createElement("li");
    const button = document.createElement("button");
    button.className = "headline";
    button.dataset.articleId = item.article_id;
    button.textContent = `${item.title} — ${item.published_at.slice(0, 10)}`;
    button.addEventListener("click", () => onOpen(item.article_id));
    li.appendChild(button);
    list.appendChild(li);
  }
  column.appendChild(list);
  return column;
}

/** Paragraph text with sentiment-tinted entity highlight spans. */
function paragraphNode(
  text: string,
  index: number,
  article: HighlightedArticle,
  cfg: UiConfig,
  onClick: (i: number) => void,
): HTMLElement {
  const p = document.createElement("p");
  p.className = "paragraph";
  p.dataset.paragraphIndex = String(index);
  const spans = article.highlights
    .filter((h) => h.paragraph_index === index)
    .sort((a, b) => a.start - b.start);
  let cursor = 0;
  for (const h of spans) {
    if (h.start > cursor) p.appendChild(document.createTextNode(text.slice(cursor, h.start)));
    const mark = document.createElement("span");
    mark.className = `entity-highlight sentiment-${h.sentiment}`;
    mark.dataset.entity = h.entity;
    mark.style.color = cfg.sentimentTextColors[h.sentiment];
    mark.style.fontWeight = "600";
    mark.textContent = text.slice(h.start, h.end);
    p.appendChild(mark);
    cursor = h.end;
  }
  if (cursor < text.length) p.appendChild(document.createTextNode(text.slice(cursor)));
  p.addEventListener("click", () => onClick(index));
  return p;
}

export function renderReview(
  host: HTMLElement,
  data: ReviewData,
  cfg: UiConfig,
  handlers: ReviewHandlers,
): void {
  host.innerHTML = "";
  const wrap = document.createElement("div");
  wrap.className = "review";

  const toolbar = document.createElement("div");
  toolbar.className = "review-toolbar";
  const caption = document.createElement("span");
  caption.textContent = `${data.names[data.topic] ?? data.topic} in ${data.outlet}, alongside ${
    data.names[data.center] ?? data.center
  }`;
  const tryAnother = document.createElement("button");
  tryAnother.className = "try-another";
  tryAnother.textContent = "Try another";
  tryAnother.addEventListener("click", () => handlers.onTryAnother());
  const summary = document.createElement("button");
  summary.className = "summary-button";
  summary.textContent = "Summary";
  summary.addEventListener("click", () => handlers.onSummary());
  toolbar.appendChild(caption);
  toolbar.appendChild(tryAnother);
  toolbar.appendChild(summary);
  wrap.appendChild(toolbar);

  const columns = document.createElement("div");
  columns.className = "review-columns";
  columns.appendChild(
    listingColumn("Positive", data.groups.positive, "positive-column", handlers.onOpenArticle),
  );
  columns.appendChild(
    listingColumn("Negative", data.groups.negative, "negative-column", handlers.onOpenArticle),
  );

  const reader = document.createElement("div");
  reader.className = "article-reader";
  if (data.article) {
    const title = document.createElement("h3");
    title.textContent = data.article.title;
    reader.appendChild(title);
    const meta = document.createElement("p");
    meta.className = "article-meta";
    meta.textContent = `${data.article.outlet} — ${data.article.published_at}`;
    reader.appendChild(meta);
    data.article.paragraphs.forEach((text, i) => {
      reader.appendChild(paragraphNode(text, i, data.article!, cfg, handlers.onParagraphClick));
    });
  } else {
    const placeholder = document.createElement("p");
    placeholder.className = "reader-placeholder";
    placeholder.textContent = "Select a headline to read the article.";
    reader.appendChild(placeholder);
  }
  columns.appendChild(reader);

  const side = document.createElement("div");
  side.className = "review-side";

  const notes = document.createElement("div");
  notes.className = "notes-panel";
  const notesTitle = document.createElement("h3");
  notesTitle.textContent = `Notes (${data.notes.length})`;
  notes.appendChild(notesTitle);
  const notesList = document.createElement("ul");
  notesList.className = "notes-list";
  for (const note of data.notes) {
    const li = document.createElement("li");
    li.className = "note";
    li.textContent = note.text;
    if (note.article_id !== null && note.paragraph_index !== null) {
      const ref = document.createElement("span");
      ref.className = "note-reference";
      ref.textContent = ` [${note.article_id} ¶${note.paragraph_index}]`;
      li.appendChild(ref);
    }
    notesList.appendChild(li);
  }
  notes.appendChild(notesList);

  const draft = document.createElement("div");
  draft.className = "note-draft";
  if (data.noteDraft.reference) {
    const chip = document.createElement("span");
    chip.className = "reference-chip";
    chip.textContent = `ref: ${data.noteDraft.reference.article_id} ¶${data.noteDraft.reference.paragraph_index}`;
    draft.appendChild(chip);
  }
  const textarea = document.createElement("textarea");
  textarea.className = "note-input";
  textarea.value = data.noteDraft.text;
  textarea.placeholder = "Record what you found…";
  textarea.addEventListener("input", () => handlers.onNoteTextChange(textarea.value));
  const addNote = document.createElement("button");
  addNote.className = "add-note";
  addNote.textContent = "Add note";
  addNote.addEventListener("click", () => handlers.onNoteSubmit());
  draft.appendChild(textarea);
  draft.appendChild(addNote);
  notes.appendChild(draft);
  side.appendChild(notes);

  const context = document.createElement("div");
  context.className = "context-hives";
  const contextTitle = document.createElement("h3");
  contextTitle.textContent = "Your line of inquiry";
  context.appendChild(contextTitle);
  const contextHint = document.createElement("p");
  contextHint.textContent = "Click a hexagon to inspect its articles.";
  context.appendChild(contextHint);
  if (data.userLayout) {
    context.appendChild(renderHiveSvg(data.userLayout, data.names, cfg, handlers.onCellClick));
  }
  if (data.dataLayout) {
    context.appendChild(renderHiveSvg(data.dataLayout, data.names, cfg, handlers.onCellClick));
  }
  side.appendChild(context);

  columns.appendChild(side);
  wrap.appendChild(columns);
  host.appendChild(wrap);
}
