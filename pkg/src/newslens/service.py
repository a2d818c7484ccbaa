"""HTTP service: ingestion endpoint, Indicators API, analytics, exports.

Handlers are thin: each one calls the same platform method that in-process
callers use and serializes the result with the shared canonical JSON
encoder, so endpoint output is byte-equal to a direct module call.
"""

from __future__ import annotations

import io
from datetime import date

from fastapi import FastAPI, Header, Request, Response
from fastapi.responses import PlainTextResponse

from .analytics import ActivitySeries, DensityCurve
from .errors import (
    FetchFailed,
    InvalidScore,
    MalformedUrl,
    NewslensError,
    ParseFailed,
    UnknownArticle,
    UnknownClass,
    UnknownExpert,
)
from .models import canonical_json
from .platform import Platform
from .segmentation import RatingClass


def _json_response(obj, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(obj), media_type="application/json", status_code=status_code
    )


def _error_response(exc: NewslensError, status_code: int) -> Response:
    return _json_response(exc.payload(), status_code=status_code)


def activity_csv(series_list: list[ActivitySeries]) -> str:
    """CSV export: date,class,mean_pct with blank cells for gap days."""
    out = io.StringIO()
    out.write("date,class,mean_pct\r\n")
    for series in series_list:
        for day, pct in series.points:
            cell = repr(pct) if pct is not None else ""
            out.write(f"{day.isoformat()},{series.rating_class.value},{cell}\r\n")
    return out.getvalue()


def kde_csv(curve: DensityCurve) -> str:
    out = io.StringIO()
    out.write("x,density\r\n")
    for x, d in zip(curve.grid, curve.density):
        out.write(f"{x!r},{d!r}\r\n")
    return out.getvalue()


def _parse_window(from_: str | None, to: str | None) -> tuple[date, date]:
    if not from_ or not to:
        raise ValueError("from and to query parameters are required (YYYY-MM-DD)")
    return date.fromisoformat(from_), date.fromisoformat(to)


def create_app(platform: Platform) -> FastAPI:
    app = FastAPI(title="newslens", docs_url=None, redoc_url=None)

    @app.exception_handler(NewslensError)
    async def _platform_error(_request: Request, exc: NewslensError):
        return _error_response(exc, 500)

    @app.get("/healthz")
    def healthz():
        return _json_response(platform.health())

    @app.post("/ingest/postings")
    async def ingest_postings(request: Request):
        body = (await request.body()).decode("utf-8")
        outcomes = platform.ingest_lines(body)
        return _json_response({"outcomes": [o.to_dict() for o in outcomes]})

    @app.post("/evaluate")
    async def evaluate(request: Request):
        payload = await request.json()
        url = payload.get("url") if isinstance(payload, dict) else None
        if not url:
            return _json_response(
                {"code": "bad_request", "message": "body must be {\"url\": ...}", "detail": None},
                status_code=400,
            )
        try:
            report = platform.evaluate_url(url)
        except MalformedUrl as exc:
            return _error_response(exc, 400)
        except (FetchFailed, ParseFailed) as exc:
            # Evaluation failure is a result, not a transport failure.
            return _json_response({"error": exc.payload()})
        return Response(content=report, media_type="application/json")

    @app.get("/articles/{article_id}")
    def get_article(article_id: str):
        report = platform.report_for_article(article_id)
        if report is None:
            return _error_response(UnknownArticle(f"article {article_id!r} not found"), 404)
        return Response(content=report, media_type="application/json")

    @app.post("/articles/{article_id}/reviews")
    def post_review(article_id: str, payload: dict, x_expert_token: str = Header(default="")):
        expert_id = platform.expert_for_token(x_expert_token)
        if expert_id is None:
            return _json_response(
                {"code": "unauthorized", "message": "invalid expert token", "detail": None},
                status_code=401,
            )
        body = dict(payload)
        body["article_id"] = article_id
        body["expert_id"] = expert_id
        body.setdefault("review_id", f"{article_id}:{expert_id}")
        try:
            review = platform.submit_review(body)
        except UnknownArticle as exc:
            return _error_response(exc, 404)
        except (InvalidScore, UnknownExpert) as exc:
            return _error_response(exc, 400)
        return _json_response({"status": "accepted", "review": review.to_dict()})

    @app.get("/articles/{article_id}/reviews")
    def get_reviews(article_id: str):
        if platform.get_article(article_id) is None:
            return _error_response(UnknownArticle(f"article {article_id!r} not found"), 404)
        reviews = platform.reviews_for_article(article_id)
        aggregate = platform.review_aggregate(article_id)
        return _json_response(
            {
                "reviews": [r.to_dict() for r in reviews],
                "aggregate": aggregate.to_dict() if aggregate else None,
            }
        )

    @app.get("/topics/{topic}/activity")
    def topic_activity(topic: str, request: Request):
        params = request.query_params
        try:
            window = _parse_window(params.get("from"), params.get("to"))
        except ValueError as exc:
            return _json_response(
                {"code": "bad_request", "message": str(exc), "detail": None}, status_code=400
            )
        snapshot = platform.build_snapshot()
        wanted = params.get("class")
        classes = (
            [wanted]
            if wanted
            else [c.value for c in RatingClass if c in snapshot.outlets_by_class]
        )
        try:
            series = [
                platform.activity_series(topic, cls, window, snapshot) for cls in classes
            ]
        except UnknownClass as exc:
            return _error_response(exc, 404)
        return _json_response({"topic": topic, "series": [s.to_dict() for s in series]})

    @app.get("/topics/{topic}/kde")
    def topic_kde(topic: str, request: Request):
        params = request.query_params
        metric = params.get("metric", "reactions")
        if metric not in ("reactions", "sci_ref_ratio"):
            return _json_response(
                {"code": "bad_request", "message": f"unknown metric {metric!r}", "detail": None},
                status_code=400,
            )
        log_scale = params.get("log", "0") == "1"
        try:
            curve = platform.topic_density(topic, metric, log_scale=log_scale)
        except NewslensError as exc:
            return _error_response(exc, 404)
        return _json_response({"topic": topic, "curve": curve.to_dict()})

    @app.get("/outlets")
    def outlets():
        return _json_response({"outlets": [o.to_dict() for o in platform.outlets()]})

    @app.get("/export/activity")
    def export_activity(request: Request):
        params = request.query_params
        topic = params.get("topic", "")
        try:
            window = _parse_window(params.get("from"), params.get("to"))
        except ValueError as exc:
            return PlainTextResponse(str(exc), status_code=400)
        snapshot = platform.build_snapshot()
        classes = [c for c in RatingClass if c in snapshot.outlets_by_class]
        series = [platform.activity_series(topic, c, window, snapshot) for c in classes]
        return PlainTextResponse(activity_csv(series), media_type="text/csv")

    @app.get("/export/kde")
    def export_kde(request: Request):
        params = request.query_params
        topic = params.get("topic", "")
        metric = params.get("metric", "reactions")
        log_scale = params.get("log", "0") == "1"
        try:
            curve = platform.topic_density(topic, metric, log_scale=log_scale)
        except NewslensError as exc:
            return PlainTextResponse(exc.message, status_code=404)
        return PlainTextResponse(kde_csv(curve), media_type="text/csv")

    return app
