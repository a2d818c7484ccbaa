// Response shapes of the platform HTTP API. Field names mirror the wire
// format exactly; the UI renders these values verbatim.

export interface ArticleInfo {
  id: string;
  url: string;
  outlet: string;
  title: string;
  byline: string | null;
  topics: string[];
  rating_class: string | null;
}

export interface ContentIndicators {
  available: boolean;
  clickbait: number;
  readability_fre: number;
  subjectivity: number;
  has_byline: boolean;
}

export interface ContextIndicators {
  available: boolean;
  internal: number;
  external: number;
  scientific: number;
  sci_ref_ratio: number;
  has_references: boolean;
}

export interface SocialIndicators {
  available: boolean;
  reach: number;
  posting_count: number;
  stance_score: number;
  stance_label: string;
}

export interface ReviewAggregate {
  available: boolean;
  reason?: string;
  criterion_means?: Record<string, number>;
  overall?: number;
  review_count?: number;
  as_of?: string;
}

export interface IndicatorReport {
  article: ArticleInfo;
  content: ContentIndicators;
  context: ContextIndicators;
  social: SocialIndicators;
  reviews: ReviewAggregate;
  computed_at: string;
}

export interface ApiError {
  code: string;
  message: string;
  detail: unknown;
}

export interface EvaluateFailure {
  error: ApiError;
}

export interface ExpertReview {
  review_id: string;
  article_id: string;
  expert_id: string;
  scores: Record<string, number>;
  free_text: string | null;
  created_at: string;
}

export interface ReviewsResponse {
  reviews: ExpertReview[];
  aggregate: Omit<ReviewAggregate, "available"> | null;
}

export interface ActivityPoint {
  date: string;
  mean_pct: number | null;
}

export interface ActivitySeries {
  rating_class: string;
  points: ActivityPoint[];
  window: { from: string; to: string };
}

export interface ActivityResponse {
  topic: string;
  series: ActivitySeries[];
}

export interface DensityCurve {
  metric: string;
  grid: number[];
  density: number[];
  bandwidth: number;
  n: number;
  log_scale: boolean;
}

export interface KdeResponse {
  topic: string;
  curve: DensityCurve;
}

export interface Outlet {
  domain: string;
  name: string;
  quality_score: number;
  rating_class: string | null;
}

export const CRITERIA = [
  "factual_accuracy",
  "scientific_understanding",
  "logic_reasoning",
  "precision_clarity",
  "sources_quality",
  "fairness",
  "clickbaitness",
] as const;

export type Criterion = (typeof CRITERIA)[number];
