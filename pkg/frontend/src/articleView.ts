// Article detail: indicator panels plus the seven-criterion review form.
// Every displayed number comes straight from an API field; elements carry
// data-field attributes naming their source so tests can verify fidelity.

import { ApiRequestError, getReviews, postReview } from "./api";
import { CRITERIA, type IndicatorReport, type ReviewsResponse } from "./types";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, v);
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function valueRow(label: string, field: string, value: unknown): HTMLElement {
  const row = el("div", { class: "indicator-row" });
  row.appendChild(el("span", { class: "label" }, label));
  row.appendChild(
    el("span", { class: "value", "data-field": field }, String(value)),
  );
  return row;
}

function panel(title: string, cls: string): HTMLElement {
  const box = el("section", { class: `panel ${cls}` });
  box.appendChild(el("h3", {}, title));
  return box;
}

function unavailable(box: HTMLElement, reason: string): void {
  box.appendChild(el("p", { class: "unavailable" }, reason));
}

export function renderReport(
  container: HTMLElement,
  report: IndicatorReport,
): void {
  container.textContent = "";

  const head = panel("Article", "article");
  head.appendChild(el("h2", { "data-field": "article.title" }, report.article.title));
  head.appendChild(valueRow("Outlet", "article.outlet", report.article.outlet));
  head.appendChild(
    valueRow("Byline", "article.byline", report.article.byline ?? "unknown"),
  );
  head.appendChild(
    valueRow("Topics", "article.topics", report.article.topics.join(", ")),
  );
  head.appendChild(
    valueRow(
      "Outlet class",
      "article.rating_class",
      report.article.rating_class ?? "unranked",
    ),
  );
  container.appendChild(head);

  const content = panel("Content indicators", "content");
  if (report.content.available) {
    content.appendChild(valueRow("Clickbait", "content.clickbait", report.content.clickbait));
    content.appendChild(
      valueRow("Reading ease", "content.readability_fre", report.content.readability_fre),
    );
    content.appendChild(
      valueRow("Subjectivity", "content.subjectivity", report.content.subjectivity),
    );
    content.appendChild(valueRow("Has byline", "content.has_byline", report.content.has_byline));
  } else {
    unavailable(content, "content indicators unavailable");
  }
  container.appendChild(content);

  const context = panel("References", "context");
  if (report.context.available) {
    context.appendChild(valueRow("Internal", "context.internal", report.context.internal));
    context.appendChild(valueRow("External", "context.external", report.context.external));
    context.appendChild(valueRow("Scientific", "context.scientific", report.context.scientific));
    context.appendChild(
      valueRow("Scientific ratio", "context.sci_ref_ratio", report.context.sci_ref_ratio),
    );
  } else {
    unavailable(context, "reference indicators unavailable");
  }
  container.appendChild(context);

  const social = panel("Social context", "social");
  if (report.social.available) {
    social.appendChild(valueRow("Reach", "social.reach", report.social.reach));
    social.appendChild(valueRow("Postings", "social.posting_count", report.social.posting_count));
    social.appendChild(valueRow("Stance", "social.stance_label", report.social.stance_label));
    social.appendChild(
      valueRow("Stance score", "social.stance_score", report.social.stance_score),
    );
  } else {
    unavailable(social, "social signals unavailable");
  }
  container.appendChild(social);

  const reviews = panel("Expert reviews", "reviews");
  renderAggregate(reviews, report.reviews);
  container.appendChild(reviews);
}

function renderAggregate(
  box: HTMLElement,
  aggregate: IndicatorReport["reviews"] | ReviewsResponse["aggregate"],
): void {
  const existing = box.querySelector(".aggregate");
  if (existing) {
    existing.remove();
  }
  const wrap = el("div", { class: "aggregate" });
  if (!aggregate || ("available" in aggregate && !aggregate.available)) {
    wrap.appendChild(el("p", { class: "no-reviews" }, "no reviews yet"));
  } else {
    wrap.appendChild(valueRow("Overall", "reviews.overall", aggregate.overall));
    wrap.appendChild(
      valueRow("Review count", "reviews.review_count", aggregate.review_count),
    );
    for (const [criterion, mean] of Object.entries(aggregate.criterion_means ?? {})) {
      wrap.appendChild(valueRow(criterion, `reviews.criterion_means.${criterion}`, mean));
    }
  }
  box.appendChild(wrap);
}

export function renderErrorReport(
  container: HTMLElement,
  error: { code: string; message: string },
): void {
  container.textContent = "";
  const banner = el("div", { class: "error-banner", role: "alert" });
  banner.appendChild(el("strong", { "data-field": "error.code" }, error.code));
  banner.appendChild(el("span", { "data-field": "error.message" }, error.message));
  container.appendChild(banner);
}

export function renderReviewForm(
  container: HTMLElement,
  articleId: string,
  getToken: () => string,
): HTMLFormElement {
  const form = el("form", { class: "review-form" });
  for (const criterion of CRITERIA) {
    const field = el("label", {}, criterion.replace(/_/g, " "));
    const select = el("select", { name: criterion });
    select.appendChild(el("option", { value: "" }, "—"));
    for (let score = 1; score <= 5; score++) {
      select.appendChild(el("option", { value: String(score) }, String(score)));
    }
    field.appendChild(select);
    form.appendChild(field);
  }
  const freeText = el("textarea", { name: "free_text", placeholder: "Free-text review" });
  form.appendChild(freeText);
  const submit = el("button", { type: "submit", disabled: "" }, "Submit review");
  form.appendChild(submit);
  const status = el("p", { class: "form-status" });
  form.appendChild(status);

  const selects = Array.from(form.querySelectorAll("select"));
  const refreshSubmittable = () => {
    const complete = selects.every((s) => s.value !== "");
    if (complete) {
      submit.removeAttribute("disabled");
      status.textContent = "";
    } else {
      submit.setAttribute("disabled", "");
      const missing = selects.filter((s) => s.value === "").map((s) => s.name);
      status.textContent = `select a score for: ${missing.join(", ")}`;
    }
  };
  form.addEventListener("change", refreshSubmittable);
  refreshSubmittable();

  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    if (submit.hasAttribute("disabled")) {
      return;
    }
    const scores: Record<string, number> = {};
    for (const select of selects) {
      scores[select.name] = Number(select.value);
    }
    try {
      await postReview(articleId, getToken(), scores, freeText.value || null);
      status.textContent = "review submitted";
      const refreshed = await getReviews(articleId);
      const box = container.querySelector<HTMLElement>(".panel.reviews");
      if (box) {
        renderAggregate(
          box,
          refreshed.aggregate
            ? { available: true, ...refreshed.aggregate }
            : { available: false },
        );
      }
    } catch (err) {
      if (err instanceof ApiRequestError) {
        status.textContent = `${err.status}: ${err.body.message}`;
      } else {
        status.textContent = "submission failed";
      }
    }
  });

  container.appendChild(form);
  return form;
}
