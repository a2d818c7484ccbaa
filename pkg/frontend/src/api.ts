// Thin typed client over the platform API. All reads go through dedupedGet,
// which collapses concurrent requests for the same endpoint+params into a
// single fetch.

import type {
  ActivityResponse,
  ApiError,
  EvaluateFailure,
  IndicatorReport,
  KdeResponse,
  Outlet,
  ReviewsResponse,
} from "./types";

export class ApiRequestError extends Error {
  constructor(
    public status: number,
    public body: ApiError,
  ) {
    super(body.message);
  }
}

const inflight = new Map<string, Promise<unknown>>();

async function getJson<T>(path: string): Promise<T> {
  const res = await fetch(path);
  const body = await res.json();
  if (!res.ok) {
    throw new ApiRequestError(res.status, body as ApiError);
  }
  return body as T;
}

function dedupedGet<T>(path: string): Promise<T> {
  const pending = inflight.get(path);
  if (pending) {
    return pending as Promise<T>;
  }
  const request = getJson<T>(path).finally(() => inflight.delete(path));
  inflight.set(path, request);
  return request;
}

export function getArticleReport(articleId: string): Promise<IndicatorReport> {
  return dedupedGet(`/articles/${encodeURIComponent(articleId)}`);
}

export function getReviews(articleId: string): Promise<ReviewsResponse> {
  return dedupedGet(`/articles/${encodeURIComponent(articleId)}/reviews`);
}

export function getOutlets(): Promise<{ outlets: Outlet[] }> {
  return dedupedGet("/outlets");
}

export function getActivity(
  topic: string,
  from: string,
  to: string,
  ratingClass?: string,
): Promise<ActivityResponse> {
  const params = new URLSearchParams({ from, to });
  if (ratingClass) {
    params.set("class", ratingClass);
  }
  return dedupedGet(`/topics/${encodeURIComponent(topic)}/activity?${params}`);
}

export function getKde(
  topic: string,
  metric: "reactions" | "sci_ref_ratio",
  log: boolean,
): Promise<KdeResponse> {
  const params = new URLSearchParams({ metric, log: log ? "1" : "0" });
  return dedupedGet(`/topics/${encodeURIComponent(topic)}/kde?${params}`);
}

export async function evaluateUrl(
  url: string,
): Promise<IndicatorReport | EvaluateFailure> {
  const res = await fetch("/evaluate", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ url }),
  });
  const body = await res.json();
  if (!res.ok) {
    throw new ApiRequestError(res.status, body as ApiError);
  }
  return body as IndicatorReport | EvaluateFailure;
}

export async function postReview(
  articleId: string,
  token: string,
  scores: Record<string, number>,
  freeText: string | null,
): Promise<void> {
  const res = await fetch(
    `/articles/${encodeURIComponent(articleId)}/reviews`,
    {
      method: "POST",
      headers: {
        "Content-Type": "application/json",
        "X-Expert-Token": token,
      },
      body: JSON.stringify({
        scores,
        free_text: freeText,
        created_at: new Date().toISOString().replace(/\.\d{3}Z$/, "Z"),
      }),
    },
  );
  if (!res.ok) {
    throw new ApiRequestError(res.status, (await res.json()) as ApiError);
  }
}
