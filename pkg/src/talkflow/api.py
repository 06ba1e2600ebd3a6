"""HTTP/JSON service exposing ingestion, metrics, timelines, seek and
progression to the review dashboard.

Uploads are analyzed synchronously (a full hour of transcript takes well
under a second) and persisted atomically, so a failed upload never leaves a
partial session behind. Media is served with single-range support for
seekable playback. All successful bodies use the canonical JSON encoding,
making repeated reads byte-identical.
"""

from __future__ import annotations

import json
import mimetypes
import tempfile
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, File, Form, Request, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.responses import Response
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import timeline as timeline_mod
from .jsonio import canonical_json
from .metrics import compute_session_metrics
from .store import (
    Cohort,
    ConflictError,
    NotFoundError,
    SessionRecord,
    SessionStore,
    StoreError,
    ValidationError,
)
from .turns import AnalysisConfig, classify_backchannels, segment_turns
from .vtt import parse_vtt


class ApiError(Exception):
    """Error carrying the documented HTTP error body."""

    def __init__(self, status: int, code: str, message: str, detail=None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "code": self.code,
            "message": self.message,
            "detail": self.detail,
        }


def _json_response(data, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(data),
        status_code=status_code,
        media_type="application/json",
    )


def _error_response(err: ApiError) -> Response:
    return _json_response(err.to_dict(), status_code=err.status)


def create_app(
    data_dir,
    config: Optional[AnalysisConfig] = None,
    cors: bool = False,
) -> FastAPI:
    """Build the service around a data directory and an analysis config."""
    store = SessionStore(data_dir)
    cfg = config or AnalysisConfig()
    app = FastAPI(title="talkflow", openapi_url=None)

    if cors:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=["*"],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return _error_response(exc)

    @app.exception_handler(StoreError)
    async def _store_error(request: Request, exc: StoreError):
        return _error_response(_wrap_store_error(exc))

    @app.exception_handler(RequestValidationError)
    async def _request_error(request: Request, exc: RequestValidationError):
        detail = json.loads(json.dumps(exc.errors(), default=str))
        return _error_response(ApiError(400, "validation_failed", "invalid request", detail))

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request: Request, exc: StarletteHTTPException):
        code = "not_found" if exc.status_code == 404 else "internal"
        return _error_response(ApiError(exc.status_code, code, str(exc.detail)))

    @app.exception_handler(Exception)
    async def _unhandled(request: Request, exc: Exception):
        return _error_response(ApiError(500, "internal", "internal error"))

    # -- cohorts --------------------------------------------------------

    @app.get("/cohorts")
    def list_cohorts():
        return _json_response([c.to_dict() for c in store.list_cohorts()])

    @app.post("/cohorts")
    async def create_cohort(request: Request):
        try:
            body = Cohort.from_dict(await request.json())
        except (json.JSONDecodeError, KeyError, TypeError, AttributeError) as exc:
            raise ApiError(400, "validation_failed", f"malformed cohort document: {exc}")
        store.save_cohort(body)
        return _json_response(body.to_dict(), status_code=201)

    @app.get("/cohorts/{cohort_id}")
    def get_cohort(cohort_id: str):
        return _json_response(store.get_cohort(cohort_id).to_dict())

    # -- session ingestion ---------------------------------------------

    @app.post("/cohorts/{cohort_id}/sessions")
    async def upload_session(
        cohort_id: str,
        transcript: UploadFile = File(...),
        metadata: str = Form(...),
        media: Optional[UploadFile] = File(None),
    ):
        meta = _parse_upload_metadata(metadata)
        raw = await transcript.read()
        parsed, issues = parse_vtt(raw, source_name=transcript.filename or "upload.vtt")
        errors = [i for i in issues if i.severity == "error"]
        if errors:
            raise ApiError(
                400,
                "bad_transcript",
                "transcript could not be parsed",
                [i.to_dict() for i in errors],
            )

        session_metrics = compute_session_metrics(parsed, cfg)
        with tempfile.TemporaryDirectory() as tmp:
            transcript_src = Path(tmp) / "transcript.vtt"
            transcript_src.write_bytes(raw)
            media_src = None
            if media is not None and media.filename:
                suffix = Path(media.filename).suffix or ".bin"
                media_src = Path(tmp) / f"media{suffix}"
                media_src.write_bytes(await media.read())
            record = SessionRecord(
                session_id=meta.get("session_id", ""),
                cohort_id=cohort_id,
                group_id=meta["group_id"],
                week_number=meta["week_number"],
                recorded_at=meta["recorded_at"],
                transcript_path=str(transcript_src),
                media_path=str(media_src) if media_src else None,
                speaker_map=meta["speaker_map"],
                metrics=session_metrics.to_dict(),
            )
            session_id = store.save_session(record)

        stored = store.load_session(session_id)
        return _json_response(
            {"session": stored.to_dict(), "warnings": [i.to_dict() for i in issues]},
            status_code=201,
        )

    # -- session views --------------------------------------------------

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return _json_response(store.load_session(session_id).to_dict())

    @app.get("/sessions/{session_id}/metrics")
    def get_metrics(session_id: str):
        return _json_response(store.load_session(session_id).metrics)

    @app.get("/sessions/{session_id}/flow")
    def get_flow(session_id: str):
        return _json_response(store.load_session(session_id).metrics["flow"])

    @app.get("/sessions/{session_id}/timeline")
    def get_timeline(session_id: str):
        record = store.load_session(session_id)
        parsed = _stored_transcript(store, record)
        seq = classify_backchannels(segment_turns(parsed, cfg), cfg)
        order = _stable_speaker_order(store, record, parsed.speakers)
        tracks = timeline_mod.build_timeline(seq, order)
        return _json_response([t.to_dict() for t in tracks])

    @app.get("/sessions/{session_id}/transcript")
    def get_transcript(session_id: str):
        record = store.load_session(session_id)
        return _json_response(_stored_transcript(store, record).to_dict())

    @app.get("/sessions/{session_id}/seek")
    def get_seek(session_id: str, t: int):
        if t < 0:
            raise ApiError(400, "validation_failed", "t must be >= 0")
        record = store.load_session(session_id)
        return _json_response(timeline_mod.seek(_stored_transcript(store, record), t).to_dict())

    @app.get("/sessions/{session_id}/media")
    def get_media(session_id: str, request: Request):
        record = store.load_session(session_id)
        if not record.media_path:
            raise ApiError(404, "not_found", "session has no media attached")
        path = store.resolve(record.media_path)
        if not path.exists():
            raise ApiError(404, "not_found", "media file missing from store")
        return _serve_file_range(path, request.headers.get("range"))

    # -- progression ------------------------------------------------------

    @app.get("/cohorts/{cohort_id}/participants/{participant_id}/progression")
    def get_progression(cohort_id: str, participant_id: str):
        return _json_response(store.progression_report(participant_id, cohort_id).to_dict())

    return app


def _wrap_store_error(exc: StoreError) -> ApiError:
    if isinstance(exc, NotFoundError):
        return ApiError(404, "not_found", str(exc))
    if isinstance(exc, ConflictError):
        return ApiError(409, "conflict", str(exc))
    if isinstance(exc, ValidationError):
        return ApiError(400, "validation_failed", str(exc))
    return ApiError(500, "internal", str(exc))


def _parse_upload_metadata(metadata: str) -> dict:
    try:
        meta = json.loads(metadata)
    except json.JSONDecodeError as exc:
        raise ApiError(400, "validation_failed", f"metadata is not valid JSON: {exc}")
    if not isinstance(meta, dict):
        raise ApiError(400, "validation_failed", "metadata must be a JSON object")
    missing = {"group_id", "week_number", "speaker_map"} - set(meta)
    if missing:
        raise ApiError(400, "validation_failed", f"metadata missing keys: {sorted(missing)}")
    if not isinstance(meta["week_number"], int):
        raise ApiError(400, "validation_failed", "week_number must be an integer")
    if not isinstance(meta["speaker_map"], dict):
        raise ApiError(400, "validation_failed", "speaker_map must be an object")
    meta.setdefault("recorded_at", "")
    if not meta["recorded_at"]:
        from datetime import date

        meta["recorded_at"] = date.today().isoformat()
    return meta


def _stored_transcript(store: SessionStore, record: SessionRecord):
    parsed, _ = parse_vtt(
        store.resolve(record.transcript_path).read_bytes(),
        source_name=Path(record.transcript_path).name,
    )
    return parsed


def _stable_speaker_order(store: SessionStore, record: SessionRecord, speakers: list) -> list:
    """Order speakers by their mapped participant's position in the cohort
    roster so speaker_index (the colour key) is stable across weeks;
    unmapped labels sort after, alphabetically."""
    try:
        cohort = store.get_cohort(record.cohort_id)
        roster = {p.participant_id: i for i, p in enumerate(cohort.participants)}
    except NotFoundError:
        roster = {}

    def key(label: str):
        pid = record.speaker_map.get(label)
        if pid in roster:
            return (0, roster[pid], label)
        return (1, 0, label)

    return sorted(speakers, key=key)


def _serve_file_range(path: Path, range_header: Optional[str]) -> Response:
    """Serve a file honoring single-range byte requests: 206 with
    Content-Range on partial content, 416 when the range is unsatisfiable,
    200 with the full body otherwise (malformed ranges fall back to 200)."""
    size = path.stat().st_size
    content_type = mimetypes.guess_type(path.name)[0] or "application/octet-stream"
    base_headers = {"Accept-Ranges": "bytes"}

    span = _parse_range(range_header, size) if range_header else None
    if range_header and span == "unsatisfiable":
        return Response(
            status_code=416,
            headers={**base_headers, "Content-Range": f"bytes */{size}"},
        )
    if span is None or not isinstance(span, tuple):
        return Response(content=path.read_bytes(), media_type=content_type, headers=base_headers)

    start, end = span
    with open(path, "rb") as fh:
        fh.seek(start)
        body = fh.read(end - start + 1)
    return Response(
        content=body,
        status_code=206,
        media_type=content_type,
        headers={**base_headers, "Content-Range": f"bytes {start}-{end}/{size}"},
    )


def _parse_range(header: str, size: int):
    """Parse a single-range "bytes=..." header. Returns (start, end),
    "unsatisfiable", or None for a malformed/unsupported header."""
    header = header.strip().lower()
    if not header.startswith("bytes=") or "," in header:
        return None
    spec = header[len("bytes=") :].strip()
    if "-" not in spec:
        return None
    first, last = spec.split("-", 1)
    first, last = first.strip(), last.strip()
    try:
        if first:
            start = int(first)
            end = int(last) if last else size - 1
            if start >= size or (last and end < start):
                return "unsatisfiable"
            return (start, min(end, size - 1))
        if last:  # suffix form: last N bytes
            n = int(last)
            if n <= 0:
                return "unsatisfiable"
            return (max(0, size - n), size - 1)
    except ValueError:
        return None
    return None
