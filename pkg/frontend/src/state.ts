import type { LayoutCell, RoundPayload, RoundRecord, Seg, StageName } from "./types";

export interface NoteDraft {
  text: string;
  reference: { article_id: string; paragraph_index: number } | null;
}

/**
 * Client view state. It mirrors the server-side round stage and never holds
 * a data hive the server has not revealed (the server strips it from every
 * payload until reveal succeeds).
 */
export interface ViewState {
  sessionId: string | null;
  stage: StageName;
  seg: Seg;
  threshold: number;
  round: RoundRecord | null;
  userLayout: LayoutCell[] | null;
  dataLayout: LayoutCell[] | null;
  names: Record<string, string>;
  selectedTopic: string | null;
  selectedArticleId: string | null;
  dragTopic: string | null;
  noteDraft: NoteDraft;
  seenModals: StageName[];
  error: string | null;
}

export function initialState(): ViewState {
  return {
    sessionId: null,
    stage: "topic_selection",
    seg: { sx: 0.5, sy: 0.5 },
    threshold: 0,
    round: null,
    userLayout: null,
    dataLayout: null,
    names: {},
    selectedTopic: null,
    selectedArticleId: null,
    dragTopic: null,
    noteDraft: { text: "", reference: null },
    seenModals: [],
    error: null,
  };
}

export class Store {
  private state: ViewState = initialState();
  private listeners: Array<(s: ViewState) => void> = [];

  get(): ViewState {
    return this.state;
  }

  set(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  /** Fold a server round payload into the view state. */
  applyRound(payload: RoundPayload): void {
    const round = payload.round;
    this.set({
      sessionId: payload.session_id,
      seg: payload.seg,
      threshold: payload.threshold,
      round,
      stage: round ? round.stage : "topic_selection",
      userLayout: payload.user_layout ?? null,
      dataLayout: payload.data_layout ?? null,
      error: null,
    });
  }

  subscribe(fn: (s: ViewState) => void): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }
}
