import type { Category, StageName } from "./types";

/**
 * UI configuration: one color mapping shared by scatter quadrants and hive
 * regions, the fish-eye parameters, and the per-stage copy deck.
 */
export interface UiConfig {
  baseUrl: string;
  storageKey: string;
  regionColors: Record<Category, string>;
  sentimentTextColors: Record<string, string>;
  conflictTextColor: string;
  bucketPalette: string[];
  fisheye: {
    radius: number;
    distortion: number;
    snapRadius: number;
    attraction: number;
  };
  copy: Record<Exclude<StageName, "done">, { title: string; body: string }>;
}

export const DEFAULT_CONFIG: UiConfig = {
  baseUrl: "",
  storageKey: "medialens-session",
  regionColors: {
    neutral: "#b8bcc4",
    positive: "#5aa469",
    negative: "#d1605e",
    mixed: "#8e6fb0",
  },
  sentimentTextColors: {
    positive: "#2e7d43",
    negative: "#b3392f",
    neutral: "#5a5f6a",
  },
  conflictTextColor: "#c0392b",
  bucketPalette: [
    "#dbe9f6",
    "#a8cbe8",
    "#70a7d4",
    "#3f7fbd",
    "#1d5a9e",
    "#0b3d78",
  ],
  fisheye: {
    radius: 80,
    distortion: 2.5,
    snapRadius: 24,
    attraction: 0.35,
  },
  copy: {
    topic_selection: {
      title: "Pick a topic",
      body:
        "Each dot is a topic placed by how positively (x) and negatively (y) " +
        "it is covered. Move the segmentation controller to draw your own " +
        "line between neutral, positive, negative and mixed coverage, filter " +
        "by article count, then click a topic and choose an outlet to assess.",
    },
    belief_elicitation: {
      title: "Build your belief hive",
      body:
        "Drag each topic hexagon into the region matching how you think this " +
        "outlet covered it. Click the center hexagon to set its own tone. " +
        "The data-derived hive stays hidden until you lock in your hive.",
    },
    article_review: {
      title: "Review the articles",
      body:
        "Read positive and negative articles about the topic you picked. " +
        "Entity mentions are tinted by their sentiment. Click a paragraph to " +
        "attach it to a note, and keep notes of what you find.",
    },
  },
};
