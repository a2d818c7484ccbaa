// Shared fixtures and a tiny fetch mock for the UI tests.

import { vi } from "vitest";
import type { ActivityResponse, IndicatorReport, KdeResponse } from "../src/types";

export const REPORT: IndicatorReport = {
  article: {
    id: "abc123",
    url: "https://outlet.com/story/1",
    outlet: "outlet.com",
    title: "Vaccine trial begins",
    byline: "Jane Doe",
    topics: ["covid-19", "health"],
    rating_class: "low",
  },
  content: {
    available: true,
    clickbait: 0.18181818181818182,
    readability_fre: 64.30499999999999,
    subjectivity: 0.0625,
    has_byline: true,
  },
  context: {
    available: true,
    internal: 1,
    external: 1,
    scientific: 1,
    sci_ref_ratio: 0.3333333333333333,
    has_references: true,
  },
  social: {
    available: true,
    reach: 3,
    posting_count: 1,
    stance_score: 1,
    stance_label: "Positive",
  },
  reviews: {
    available: true,
    criterion_means: {
      factual_accuracy: 3.5,
      scientific_understanding: 3.5,
      logic_reasoning: 3.5,
      precision_clarity: 3.5,
      sources_quality: 3.5,
      fairness: 3.5,
      clickbaitness: 3.5,
    },
    overall: 3.5,
    review_count: 2,
    as_of: "2020-03-15T12:00:00Z",
  },
  computed_at: "2020-03-15T12:00:00Z",
};

export const ACTIVITY: ActivityResponse = {
  topic: "covid-19",
  series: [
    {
      rating_class: "low",
      points: [
        { date: "2020-02-01", mean_pct: 66.66666666666667 },
        { date: "2020-02-02", mean_pct: null },
        { date: "2020-02-03", mean_pct: 25.0 },
      ],
      window: { from: "2020-02-01", to: "2020-02-03" },
    },
  ],
};

export const KDE: KdeResponse = {
  topic: "covid-19",
  curve: {
    metric: "reactions",
    grid: [0.0, 0.5, 1.0, 1.5],
    density: [0.1, 0.4, 0.4, 0.1],
    bandwidth: 0.25,
    n: 12,
    log_scale: false,
  },
};

export type RouteTable = Record<string, unknown | ((init?: RequestInit) => unknown)>;

/** Install a fetch mock answering from a path-prefix route table. */
export function mockFetch(routes: RouteTable) {
  const fetchMock = vi.fn(async (input: string | URL, init?: RequestInit) => {
    const path = String(input);
    for (const [prefix, handler] of Object.entries(routes)) {
      if (path.startsWith(prefix)) {
        const body = typeof handler === "function" ? handler(init) : handler;
        const status = (body as { __status?: number }).__status ?? 200;
        return {
          ok: status < 400,
          status,
          json: async () => body,
        } as Response;
      }
    }
    throw new Error(`no route for ${path}`);
  });
  vi.stubGlobal("fetch", fetchMock);
  return fetchMock;
}

export async function flush(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
  await new Promise((resolve) => setTimeout(resolve, 0));
}
