import { ApiClient } from "./api";
import type { UiConfig } from "./config";
import { layoutHive } from "./hexmath";
import { renderHiveBuilder, renderHiveCompare } from "./hive";
import { showStageModal, showSummaryModal } from "./modals";
import { renderReview } from "./review";
import { renderScatter } from "./scatter";
import { Store } from "./state";
import type {
  ArticleGroups,
  Category,
  HighlightedArticle,
  Narration,
  RoundPayload,
  StageName,
  TopicRow,
} from "./types";

/**
 * Stage router. All server mutations flow through the session endpoints;
 * the data hive is only ever rendered from a reveal response or a restored
 * summary, never requested ahead of finalization.
 */
export class App {
  readonly api: ApiClient;
  readonly store = new Store();
  private topicsCache: TopicRow[] = [];
  private narration: Narration | null = null;
  private outletChoices: string[] | null = null;
  private groups: ArticleGroups | null = null;
  private article: HighlightedArticle | null = null;

  constructor(
    private root: HTMLElement,
    private cfg: UiConfig,
    api?: ApiClient,
  ) {
    this.api = api ?? new ApiClient(cfg.baseUrl);
  }

  // --- lifecycle -----------------------------------------------------------

  async boot(): Promise<void> {
    const stored = this.loadStoredSession();
    if (stored) {
      try {
        await this.restore(stored);
        await this.render();
        return;
      } catch {
        localStorage.removeItem(this.cfg.storageKey);
      }
    }
    const state = this.store.get();
    const session = await this.api.createSession(state.seg.sx, state.seg.sy, state.threshold);
    this.store.applyRound(session);
    this.rememberSession(session.session_id);
    this.store.applyRound(await this.api.startRound(session.session_id));
    await this.render();
  }

  private loadStoredSession(): string | null {
    try {
      return localStorage.getItem(this.cfg.storageKey);
    } catch {
      return null;
    }
  }

  private rememberSession(sessionId: string): void {
    try {
      localStorage.setItem(this.cfg.storageKey, sessionId);
      const seen = localStorage.getItem(`${this.cfg.storageKey}-modals-${sessionId}`);
      this.store.set({ seenModals: seen ? (JSON.parse(seen) as StageName[]) : [] });
    } catch {
      // storage unavailable: modals simply reappear
    }
  }

  /** Rebuild stage and hive state from the summary endpoint. */
  private async restore(sessionId: string): Promise<void> {
    const summary = await this.api.summary(sessionId);
    const last = summary.rounds.length ? summary.rounds[summary.rounds.length - 1] : null;
    this.rememberSession(sessionId);
    this.store.set({
      sessionId,
      seg: summary.seg,
      threshold: summary.threshold,
      round: last,
      stage: last ? last.stage : "topic_selection",
      userLayout:
        last?.user_hive && last.user_hive.finalized ? layoutHive(last.user_hive) : null,
      dataLayout: last?.data_hive ? layoutHive(last.data_hive) : null,
    });
    if (!last || last.stage === "done") {
      this.store.applyRound(await this.api.startRound(sessionId));
    }
  }

  // --- rendering -----------------------------------------------------------

  async render(): Promise<void> {
    const state = this.store.get();
    this.root.innerHTML = "";

    const header = document.createElement("header");
    header.className = "app-header";
    const title = document.createElement("h1");
    title.textContent = "MediaLens";
    const stageTag = document.createElement("span");
    stageTag.className = "stage-indicator";
    stageTag.dataset.stage = state.stage;
    stageTag.textContent = {
      topic_selection: "1 · Topic Selection",
      belief_elicitation: "2 · Belief Elicitation",
      article_review: "3 · Article Review",
      done: "Done",
    }[state.stage];
    header.appendChild(title);
    header.appendChild(stageTag);
    this.root.appendChild(header);

    if (state.error) {
      const banner = document.createElement("div");
      banner.className = "error-banner";
      const message = document.createElement("span");
      message.textContent = state.error;
      const retry = document.createElement("button");
      retry.className = "retry-button";
      retry.textContent = "Retry";
      retry.addEventListener("click", () => {
        this.store.set({ error: null });
        void this.render();
      });
      banner.appendChild(message);
      banner.appendChild(retry);
      this.root.appendChild(banner);
    }

    const content = document.createElement("main");
    content.className = "stage-content";
    this.root.appendChild(content);

    try {
      if (state.stage === "topic_selection" || state.stage === "done") {
        await this.renderTopicSelection(content);
        this.maybeStageModal("topic_selection");
      } else if (state.stage === "belief_elicitation") {
        this.renderBeliefElicitation(content);
        this.maybeStageModal("belief_elicitation");
      } else if (state.stage === "article_review") {
        await this.renderArticleReview(content);
        this.maybeStageModal("article_review");
      }
    } catch (err) {
      this.store.set({ error: this.describe(err) });
      if (!this.root.querySelector(".error-banner")) await this.render();
    }
  }

  private describe(err: unknown): string {
    if (err instanceof Error) return `Service unreachable or rejected the request: ${err.message}`;
    return "Service unreachable.";
  }

  private maybeStageModal(stage: Exclude<StageName, "done">): void {
    const state = this.store.get();
    if (state.seenModals.includes(stage)) return;
    const seen = [...state.seenModals, stage];
    this.store.set({ seenModals: seen });
    try {
      localStorage.setItem(
        `${this.cfg.storageKey}-modals-${state.sessionId}`,
        JSON.stringify(seen),
      );
    } catch {
      // non-fatal
    }
    showStageModal(this.root, stage, this.cfg, () => undefined);
  }

  // --- stage one -----------------------------------------------------------

  private async renderTopicSelection(content: HTMLElement): Promise<void> {
    const state = this.store.get();
    const [topicsRes, scatterRes] = await Promise.all([
      this.api.topics(state.threshold),
      this.api.scatter(state.threshold, state.seg.sx, state.seg.sy),
    ]);
    this.topicsCache = topicsRes.topics;
    const names: Record<string, string> = { ...this.store.get().names };
    for (const row of topicsRes.topics) names[row.entity] = row.name;
    this.store.set({ names });

    const layoutRow = document.createElement("div");
    layoutRow.className = "stage-one";

    const tablePane = document.createElement("div");
    tablePane.className = "topic-table-pane";
    const table = document.createElement("table");
    table.className = "topic-table";
    const head = document.createElement("tr");
    for (const heading of ["Topic", "Articles"]) {
      const th = document.createElement("th");
      th.textContent = heading;
      head.appendChild(th);
    }
    table.appendChild(head);
    for (const row of this.topicsCache) {
      const tr = document.createElement("tr");
      tr.className = "topic-row";
      tr.dataset.entity = row.entity;
      const name = document.createElement("td");
      name.textContent = row.name;
      const total = document.createElement("td");
      total.textContent = String(row.total);
      tr.appendChild(name);
      tr.appendChild(total);
      tr.addEventListener("click", () => void this.selectTopic(row.entity));
      table.appendChild(tr);
    }
    tablePane.appendChild(table);

    const scatterPane = document.createElement("div");
    scatterPane.className = "scatter-pane";
    renderScatter(
      scatterPane,
      {
        points: scatterRes.points,
        seg: state.seg,
        threshold: state.threshold,
        maxTotal: Math.max(1, ...this.topicsCache.map((t) => t.total)),
      },
      this.cfg,
      {
        onSegChange: (seg) => {
          this.store.set({ seg });
          void this.render();
        },
        onThresholdChange: (threshold) => {
          this.store.set({ threshold });
          void this.render();
        },
        onTopicClick: (entity) => void this.selectTopic(entity),
      },
    );

    const detailPane = document.createElement("div");
    detailPane.className = "narration-pane";
    if (this.narration && this.store.get().selectedTopic) {
      const box = document.createElement("div");
      box.className = "narration";
      const heading = document.createElement("h3");
      heading.textContent = this.narration.name;
      const text = document.createElement("p");
      text.className = "narration-text";
      text.textContent = this.narration.text;
      box.appendChild(heading);
      box.appendChild(text);

      if (this.outletChoices) {
        const prompt = document.createElement("p");
        prompt.textContent = "Which outlet do you want to assess?";
        box.appendChild(prompt);
        for (const outlet of this.outletChoices) {
          const button = document.createElement("button");
          button.className = "outlet-button";
          button.dataset.outlet = outlet;
          button.textContent = outlet;
          button.addEventListener("click", () => void this.chooseOutlet(outlet));
          box.appendChild(button);
        }
      } else {
        const next = document.createElement("button");
        next.className = "whats-next";
        next.textContent = "What's next?";
        next.addEventListener("click", async () => {
          try {
            this.outletChoices = (await this.api.outlets()).outlets;
          } catch (err) {
            this.store.set({ error: this.describe(err) });
          }
          await this.render();
        });
        box.appendChild(next);
      }
      detailPane.appendChild(box);
    } else {
      const hint = document.createElement("p");
      hint.className = "narration-hint";
      hint.textContent = "Hover the dots, then click a topic to see its statistics.";
      detailPane.appendChild(hint);
    }

    layoutRow.appendChild(tablePane);
    layoutRow.appendChild(scatterPane);
    layoutRow.appendChild(detailPane);
    content.appendChild(layoutRow);
  }

  private async selectTopic(entity: string): Promise<void> {
    const state = this.store.get();
    try {
      this.narration = await this.api.narration(entity, state.seg.sx, state.seg.sy);
      this.outletChoices = null;
      this.store.set({ selectedTopic: entity });
    } catch (err) {
      this.store.set({ error: this.describe(err) });
    }
    await this.render();
  }

  private async chooseOutlet(outlet: string): Promise<void> {
    const state = this.store.get();
    if (!state.sessionId || !state.selectedTopic) return;
    try {
      const payload = await this.api.choose(
        state.sessionId,
        state.selectedTopic,
        outlet,
        state.seg,
        state.threshold,
      );
      this.store.applyRound(payload);
    } catch (err) {
      this.store.set({ error: this.describe(err) });
    }
    await this.render();
  }

  // --- stage two -----------------------------------------------------------

  private renderBeliefElicitation(content: HTMLElement): void {
    const state = this.store.get();
    const round = state.round;
    if (!round || !round.user_hive) return;

    const host = document.createElement("div");
    content.appendChild(host);

    if (round.data_hive && round.conflicts && state.userLayout && state.dataLayout) {
      renderHiveCompare(
        host,
        {
          userLayout: state.userLayout,
          dataLayout: state.dataLayout,
          conflicts: round.conflicts,
        },
        state.names,
        this.cfg,
        (topic) => void this.pickConflict(topic),
      );
      return;
    }

    renderHiveBuilder(host, round.user_hive, state.names, this.cfg, {
      onAssign: (topic, region) => void this.assign(topic, region),
      onCenterCycle: (next) => void this.setCenter(next),
      onFinalize: () => void this.finalize(),
      onReveal: () => void this.reveal(),
    });
  }

  private async mutate(fn: (sessionId: string) => Promise<RoundPayload>): Promise<void> {
    const state = this.store.get();
    if (!state.sessionId) return;
    try {
      this.store.applyRound(await fn(state.sessionId));
    } catch (err) {
      this.store.set({ error: this.describe(err) });
    }
    await this.render();
  }

  private assign(topic: string, region: Category): Promise<void> {
    return this.mutate((sid) => this.api.assign(sid, topic, region));
  }

  private setCenter(category: Category): Promise<void> {
    return this.mutate((sid) => this.api.setCenter(sid, category));
  }

  private finalize(): Promise<void> {
    return this.mutate((sid) => this.api.finalize(sid));
  }

  private reveal(): Promise<void> {
    return this.mutate((sid) => this.api.reveal(sid));
  }

  private async pickConflict(topic: string): Promise<void> {
    this.groups = null;
    this.article = null;
    this.store.set({ selectedArticleId: null, noteDraft: { text: "", reference: null } });
    await this.mutate((sid) => this.api.selectConflict(sid, topic));
  }

  // --- stage three ---------------------------------------------------------

  private async renderArticleReview(content: HTMLElement): Promise<void> {
    const state = this.store.get();
    const round = state.round;
    if (!round || !round.topic || !round.outlet) return;
    const selected = round.selected_conflict ?? round.topic;
    if (!this.groups) {
      const coTopic = selected === round.topic ? null : round.topic;
      this.groups = await this.api.articles(selected, coTopic, round.outlet);
    }

    const host = document.createElement("div");
    content.appendChild(host);
    renderReview(
      host,
      {
        topic: selected,
        center: round.topic,
        outlet: round.outlet,
        groups: this.groups,
        article: this.article,
        notes: round.notes,
        noteDraft: state.noteDraft,
        userLayout: state.userLayout,
        dataLayout: state.dataLayout,
        names: state.names,
      },
      this.cfg,
      {
        onOpenArticle: (id) => void this.openArticle(id),
        onParagraphClick: (index) => this.referenceParagraph(index),
        // mutate in place: re-rendering per keystroke would drop focus
        onNoteTextChange: (text) => {
          this.store.get().noteDraft.text = text;
        },
        onNoteSubmit: () => void this.submitNote(),
        onCellClick: (topic) => void this.pickConflict(topic),
        onTryAnother: () => void this.tryAnother(),
        onSummary: () => void this.openSummary(),
      },
    );
  }

  private async openArticle(articleId: string): Promise<void> {
    const round = this.store.get().round;
    const highlight = [round?.topic, round?.selected_conflict].filter(
      (t): t is string => typeof t === "string",
    );
    try {
      this.article = await this.api.article(articleId, [...new Set(highlight)]);
      this.store.set({ selectedArticleId: articleId });
    } catch (err) {
      this.store.set({ error: this.describe(err) });
    }
    await this.render();
  }

  private referenceParagraph(paragraphIndex: number): void {
    const state = this.store.get();
    if (!state.selectedArticleId) return;
    this.store.set({
      noteDraft: {
        text: state.noteDraft.text,
        reference: { article_id: state.selectedArticleId, paragraph_index: paragraphIndex },
      },
    });
    void this.render();
  }

  private async submitNote(): Promise<void> {
    const state = this.store.get();
    const draft = state.noteDraft;
    if (!draft.text.trim()) return;
    await this.mutate((sid) => this.api.addNote(sid, draft.text.trim(), draft.reference));
    this.store.set({ noteDraft: { text: "", reference: null } });
    await this.render();
  }

  private async tryAnother(): Promise<void> {
    const state = this.store.get();
    if (!state.sessionId) return;
    this.groups = null;
    this.article = null;
    this.narration = null;
    this.outletChoices = null;
    try {
      await this.api.complete(state.sessionId);
      this.store.applyRound(await this.api.startRound(state.sessionId));
      this.store.set({ selectedTopic: null, selectedArticleId: null });
    } catch (err) {
      this.store.set({ error: this.describe(err) });
    }
    await this.render();
  }

  private async openSummary(): Promise<void> {
    const state = this.store.get();
    if (!state.sessionId) return;
    try {
      const summary = await this.api.summary(state.sessionId);
      showSummaryModal(this.root, summary, state.names);
    } catch (err) {
      this.store.set({ error: this.describe(err) });
      await this.render();
    }
  }
}
