// Entry point: hash routing between URL evaluation, article detail, and the
// topic dashboard. The expert token lives in session storage only.

import { evaluateUrl, getArticleReport } from "./api";
import { renderErrorReport, renderReport, renderReviewForm } from "./articleView";
import { renderDashboard } from "./dashboard";
import type { IndicatorReport } from "./types";

const TOKEN_KEY = "expert_token";

export function getToken(): string {
  return sessionStorage.getItem(TOKEN_KEY) ?? "";
}

export function setToken(token: string): void {
  sessionStorage.setItem(TOKEN_KEY, token);
}

export async function showArticle(root: HTMLElement, articleId: string): Promise<void> {
  try {
    const report = await getArticleReport(articleId);
    renderReport(root, report);
    renderReviewForm(root, articleId, getToken);
  } catch (err: unknown) {
    const body = (err as { body?: { code: string; message: string } }).body;
    renderErrorReport(root, body ?? { code: "unreachable", message: String(err) });
  }
}

export async function showEvaluation(root: HTMLElement, url: string): Promise<void> {
  const result = await evaluateUrl(url);
  if ("error" in result) {
    renderErrorReport(root, result.error);
    return;
  }
  const report = result as IndicatorReport;
  renderReport(root, report);
  renderReviewForm(root, report.article.id, getToken);
}

function route(root: HTMLElement): void {
  const hash = window.location.hash.slice(1);
  if (hash.startsWith("article/")) {
    void showArticle(root, hash.slice("article/".length));
  } else if (hash.startsWith("topic/")) {
    const topic = hash.slice("topic/".length) || "covid-19";
    const today = new Date().toISOString().slice(0, 10);
    const { refresh } = renderDashboard(root, {
      topic,
      from: "2020-01-15",
      to: today,
      metric: "reactions",
      log: false,
    });
    void refresh();
  } else {
    renderHome(root);
  }
}

function renderHome(root: HTMLElement): void {
  root.innerHTML = `
    <form class="evaluate-form">
      <input name="url" placeholder="https://example.com/article" required>
      <button type="submit">Evaluate</button>
    </form>
    <form class="token-form">
      <input name="token" type="password" placeholder="expert token">
      <button type="submit">Save token</button>
    </form>
    <p><a href="#topic/covid-19">Topic dashboard</a></p>
    <div class="result"></div>
  `;
  root.querySelector(".evaluate-form")!.addEventListener("submit", (event) => {
    event.preventDefault();
    const url = root.querySelector<HTMLInputElement>('input[name="url"]')!.value;
    void showEvaluation(root.querySelector<HTMLElement>(".result")!, url);
  });
  root.querySelector(".token-form")!.addEventListener("submit", (event) => {
    event.preventDefault();
    setToken(root.querySelector<HTMLInputElement>('input[name="token"]')!.value);
  });
}

export function start(): void {
  const root = document.getElementById("app");
  if (!root) {
    throw new Error("missing #app mount point");
  }
  window.addEventListener("hashchange", () => route(root));
  route(root);
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  start();
}
