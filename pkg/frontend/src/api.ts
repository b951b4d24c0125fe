import type {
  ArticleGroups,
  Category,
  HighlightedArticle,
  Narration,
  RoundPayload,
  ScatterResponse,
  SummaryPayload,
  TopicRow,
} from "./types";

export interface RequestLogEntry {
  method: string;
  path: string;
  at: number;
}

export class ApiError extends Error {
  constructor(
    public code: string,
    message: string,
    public status: number,
  ) {
    super(message);
  }
}

/**
 * Thin typed client. Every request is appended to `log` before it is sent,
 * so tests can assert ordering properties (e.g. no data-hive request before
 * the belief hive is finalized).
 */
export class ApiClient {
  readonly log: RequestLogEntry[] = [];

  constructor(private baseUrl: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    this.log.push({ method, path, at: Date.now() });
    const res = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const data = await res.json().catch(() => ({}));
    if (!res.ok) {
      const err = (data as { error?: { code?: string; message?: string } }).error;
      throw new ApiError(err?.code ?? `http-${res.status}`, err?.message ?? res.statusText, res.status);
    }
    return data as T;
  }

  health(): Promise<{ status: string; ready: boolean }> {
    return this.request("GET", "/health");
  }

  outlets(): Promise<{ outlets: string[] }> {
    return this.request("GET", "/outlets");
  }

  topics(threshold: number): Promise<{ topics: TopicRow[] }> {
    return this.request("GET", `/topics?threshold=${threshold}`);
  }

  scatter(threshold: number, sx: number, sy: number): Promise<ScatterResponse> {
    return this.request("GET", `/scatter?threshold=${threshold}&sx=${sx}&sy=${sy}`);
  }

  narration(entity: string, sx: number, sy: number): Promise<Narration> {
    return this.request(
      "GET",
      `/topics/${encodeURIComponent(entity)}/narration?sx=${sx}&sy=${sy}`,
    );
  }

  /** Exploration-only endpoint; never used while a round is in progress. */
  hiveData(center: string, outlet: string, sx: number, sy: number): Promise<unknown> {
    const params = new URLSearchParams({ center, outlet, sx: String(sx), sy: String(sy) });
    return this.request("GET", `/hive/data?${params}`);
  }

  createSession(sx: number, sy: number, threshold: number): Promise<RoundPayload> {
    return this.request("POST", "/sessions", { sx, sy, threshold });
  }

  startRound(sessionId: string): Promise<RoundPayload> {
    return this.request("POST", `/sessions/${sessionId}/rounds`);
  }

  private roundOp(sessionId: string, op: string, body?: unknown): Promise<RoundPayload> {
    return this.request("POST", `/sessions/${sessionId}/rounds/current/${op}`, body);
  }

  choose(
    sessionId: string,
    topic: string,
    outlet: string,
    seg: { sx: number; sy: number },
    threshold: number,
  ): Promise<RoundPayload> {
    return this.roundOp(sessionId, "choose", { topic, outlet, sx: seg.sx, sy: seg.sy, threshold });
  }

  assign(sessionId: string, topic: string, region: Category): Promise<RoundPayload> {
    return this.roundOp(sessionId, "assign", { topic, region });
  }

  setCenter(sessionId: string, category: Category): Promise<RoundPayload> {
    return this.roundOp(sessionId, "set-center", { category });
  }

  finalize(sessionId: string): Promise<RoundPayload> {
    return this.roundOp(sessionId, "finalize");
  }

  reveal(sessionId: string): Promise<RoundPayload> {
    return this.roundOp(sessionId, "reveal");
  }

  selectConflict(sessionId: string, topic: string): Promise<RoundPayload> {
    return this.roundOp(sessionId, "select-conflict", { topic });
  }

  addNote(
    sessionId: string,
    text: string,
    reference: { article_id: string; paragraph_index: number } | null,
  ): Promise<RoundPayload> {
    return this.roundOp(sessionId, "notes", {
      text,
      article_id: reference?.article_id ?? null,
      paragraph_index: reference?.paragraph_index ?? null,
    });
  }

  complete(sessionId: string): Promise<RoundPayload> {
    return this.roundOp(sessionId, "complete");
  }

  summary(sessionId: string): Promise<SummaryPayload> {
    return this.request("GET", `/sessions/${sessionId}/summary`);
  }

  articles(topic: string, coTopic: string | null, outlet: string | null): Promise<ArticleGroups> {
    const params = new URLSearchParams({ topic });
    if (coTopic) params.set("co_topic", coTopic);
    if (outlet) params.set("outlet", outlet);
    return this.request("GET", `/articles?${params}`);
  }

  article(articleId: string, highlight: string[]): Promise<HighlightedArticle> {
    const params = new URLSearchParams({ highlight: highlight.join(",") });
    return this.request("GET", `/articles/${encodeURIComponent(articleId)}?${params}`);
  }
}
