/** Payload shapes of the coverage service API. */

export type Category = "neutral" | "positive" | "negative" | "mixed";
export type Sentiment = "positive" | "negative" | "neutral";
export type StageName =
  | "topic_selection"
  | "belief_elicitation"
  | "article_review"
  | "done";

export interface Seg {
  sx: number;
  sy: number;
}

export interface TopicRow {
  entity: string;
  name: string;
  total: number;
  pos: number;
  neg: number;
  neu: number;
  score_pos: number;
  score_neg: number;
}

export interface ScatterPoint extends TopicRow {
  category: Category;
  bucket: number;
}

export interface ScatterResponse {
  seg: Seg;
  threshold: number;
  points: ScatterPoint[];
}

export interface Narration extends TopicRow {
  category: Category;
  text: string;
}

export interface HiveRecord {
  center: string;
  center_sentiment: Category;
  outlet: string;
  candidates: string[];
  assignments: Record<string, Category>;
  kind: "user" | "data";
  seg: Seg | null;
  finalized: boolean;
}

export interface LayoutCell {
  entity: string;
  q: number;
  r: number;
  region: Category;
  is_center: boolean;
}

export interface ConflictEntry {
  entity: string;
  user_category: Category;
  data_category: Category;
}

export interface ConflictReport {
  count: number;
  conflicts: ConflictEntry[];
}

export interface NoteRecord {
  text: string;
  created_at: string;
  article_id: string | null;
  paragraph_index: number | null;
}

export interface RoundRecord {
  index: number;
  stage: StageName;
  topic: string | null;
  outlet: string | null;
  user_hive: HiveRecord | null;
  data_hive?: HiveRecord | null;
  conflicts?: ConflictReport | null;
  selected_conflict: string | null;
  notes: NoteRecord[];
}

export interface RoundPayload {
  session_id: string;
  seg: Seg;
  threshold: number;
  round: RoundRecord | null;
  user_layout?: LayoutCell[];
  data_layout?: LayoutCell[];
}

export interface SummaryPayload {
  session_id: string;
  created_at: string;
  seg: Seg;
  threshold: number;
  rounds: RoundRecord[];
}

export interface ArticleListing {
  article_id: string;
  outlet: string;
  title: string;
  published_at: string;
  polarity: Sentiment;
  matched_topics: string[];
}

export interface ArticleGroups {
  positive: ArticleListing[];
  negative: ArticleListing[];
  neutral: ArticleListing[];
}

export interface Highlight {
  paragraph_index: number;
  start: number;
  end: number;
  entity: string;
  sentiment: Sentiment;
}

export interface HighlightedArticle {
  article_id: string;
  title: string;
  outlet: string;
  published_at: string;
  paragraphs: string[];
  highlights: Highlight[];
}
