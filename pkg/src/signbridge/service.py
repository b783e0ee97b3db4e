"""HTTP facade over the lexicon, exercises and sessions.

Learner routes are anonymous; the only authenticated surface is the admin
pack upload. Responses are JSON; every non-success response carries exactly
one error envelope ``{"error": {"code", "message", "details"}}`` with a
stable code. Media is served with range support so videos can be replayed
and scrubbed.
"""

from __future__ import annotations

import io
import json
import mimetypes
import tempfile
import threading
import time
import zipfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field
from starlette.exceptions import HTTPException as StarletteHTTPException

from .errors import PlatformError, UnknownLocale, UnknownMedia
from .exercises import (
    Exercise,
    ExerciseKind,
    MemoryState,
    OrderingState,
    Presentation,
    Submission,
)
from .lexicon import Language, MediaRef, SignEntry, alphabet
from .pack import ContentStore, Snapshot, effective_default_locale, parse_manifest
from .sessions import Session, SessionEvent, SessionStore

API_PREFIX = "/api"

_STATUS_BY_CODE = {
    "unknown_entity": 404,
    "unknown_locale": 404,
    "not_in_alphabet": 400,
    "empty_lemma": 400,
    "kind_mismatch": 400,
    "ungradable_kind": 400,
    "index_out_of_range": 400,
    "card_already_matched": 400,
    "card_already_face_up": 400,
    "story_too_short": 400,
    "validation_failed": 400,
    "manifest_syntax": 400,
    "manifest_schema": 400,
    "bad_request": 400,
    "unauthorized": 401,
    "admin_disabled": 403,
    "session_closed": 409,
    "session_open": 409,
    "range_not_satisfiable": 416,
    "no_content_loaded": 503,
}

_MEDIA_TYPES = {
    ".mp4": "video/mp4",
    ".webm": "video/webm",
    ".wav": "audio/wav",
    ".mp3": "audio/mpeg",
    ".png": "image/png",
    ".jpg": "image/jpeg",
    ".jpeg": "image/jpeg",
    ".gif": "image/gif",
}


class ServiceError(PlatformError):
    """Service-layer error with an explicit code (auth, missing snapshot, ...)."""

    def __init__(self, code: str, message: str, **details: Any):
        super().__init__(message, **details)
        self.code = code


def error_envelope(code: str, message: str, details: dict | None = None) -> dict:
    body: dict[str, Any] = {"error": {"code": code, "message": message}}
    if details:
        body["error"]["details"] = details
    return body


@dataclass
class ContactStore:
    """Contact-page messages: kept in memory and appended to a JSONL file."""

    path: Path | None = None
    messages: list[dict] = field(default_factory=list)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def add(self, name: str | None, email: str | None, message: str) -> dict:
        record = {
            "id": f"msg-{len(self.messages) + 1}",
            "name": name,
            "email": email,
            "message": message,
            "received_at": time.time(),
        }
        with self._lock:
            self.messages.append(record)
            if self.path is not None:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with self.path.open("a", encoding="utf-8") as handle:
                    handle.write(json.dumps(record, ensure_ascii=False) + "\n")
        return record


@dataclass
class AppState:
    content: ContentStore
    sessions: SessionStore
    contacts: ContactStore
    admin_token: str | None = None
    upload_dir: Path | None = None


def build_state(
    content: ContentStore,
    admin_token: str | None = None,
    upload_dir: Path | None = None,
    contact_log: Path | None = None,
) -> AppState:
    sessions = SessionStore(
        lambda exercise_id: (
            content.snapshot.exercises.get(exercise_id) if content.snapshot else None
        )
    )
    return AppState(
        content=content,
        sessions=sessions,
        contacts=ContactStore(path=contact_log),
        admin_token=admin_token,
        upload_dir=upload_dir,
    )


# -- request bodies -----------------------------------------------------------


class SessionCreateBody(BaseModel):
    exercise_id: str
    seed: int | None = None


class EventBody(BaseModel):
    model_config = {"populate_by_name": True}

    type: str
    card: int | None = None
    from_pos: int | None = Field(default=None, alias="from")
    to_pos: int | None = Field(default=None, alias="to")


class SubmitBody(BaseModel):
    kind: str | None = None  # optional; when present it must match the exercise
    answers: list[str | None] | None = None
    mapping: dict[int, int] | None = None
    arrangement: list[int] | None = None
    option: int | None = None
    checkpoint_answers: list[int | None] | None = None
    story: str | None = None


class ContactBody(BaseModel):
    message: str
    name: str | None = None
    email: str | None = None


# -- view builders ------------------------------------------------------------


def _glyph_view(glyph) -> dict:
    return {"language": glyph.language.value, "letter": glyph.letter, "image": glyph.image.id}


def _media_view(media: MediaRef | None) -> dict | None:
    if media is None:
        return None
    return {"id": media.id, "kind": media.kind.value, "duration_ms": media.duration_ms}


def _entry_view(entry: SignEntry) -> dict:
    return {
        "id": entry.id,
        "language": entry.language.value,
        "lemma": entry.lemma,
        "letter_group": entry.letter_group,
        "gloss": entry.gloss,
        "sign_video": _media_view(entry.sign_video),
        "pronunciation_audio": _media_view(entry.pronunciation_audio),
    }


def _exercise_summary(exercise: Exercise) -> dict:
    return {
        "id": exercise.id,
        "language": exercise.language.value,
        "kind": exercise.kind.value,
        "item_count": _item_count(exercise),
    }


def _item_count(exercise: Exercise) -> int:
    p = exercise.payload
    kind = exercise.kind
    if kind in (ExerciseKind.LETTER_TEXT_ENTRY, ExerciseKind.ORDERING, ExerciseKind.HOVER_REVEAL):
        return len(p.items)
    if kind is ExerciseKind.LETTER_MATCH:
        return len(p.left)
    if kind is ExerciseKind.VIDEO_MULTIPLE_CHOICE:
        return 1
    if kind is ExerciseKind.FIRST_LETTER_MATCH:
        return len(p.letters)
    if kind is ExerciseKind.STORYTELLING:
        return len(p.prompt_videos)
    if kind is ExerciseKind.MEMORY_CARDS:
        return p.deck_size
    return len(p.checkpoints)


def _exercise_play_view(exercise: Exercise, presentation: Presentation) -> dict:
    """Learner-facing exercise content in display order. Never leaks answer keys.

    Items carry their original index as ``id``; submissions refer to those ids,
    so shuffling the display never touches the grading key.
    """
    p = exercise.payload
    kind = exercise.kind
    order = presentation.order
    view = _exercise_summary(exercise)
    view["presentation"] = {"target": presentation.target, "order": list(order)}

    if kind is ExerciseKind.LETTER_TEXT_ENTRY:
        view["items"] = [{"id": i, "image": p.items[i].image.id} for i in order]
    elif kind is ExerciseKind.LETTER_MATCH:
        view["left"] = [{"id": i, "letter": letter} for i, letter in enumerate(p.left)]
        view["right"] = [{"id": i, "image": p.right[i].image.id} for i in order]
    elif kind is ExerciseKind.ORDERING:
        view["items"] = [{"id": i, "image": p.items[i].image.id} for i in order]
    elif kind is ExerciseKind.HOVER_REVEAL:
        # the letter IS the content being revealed; there is no grading key
        view["items"] = [
            {"id": i, "image": p.items[i].image.id, "letter": p.items[i].letter} for i in order
        ]
    elif kind is ExerciseKind.VIDEO_MULTIPLE_CHOICE:
        view["video"] = _media_view(p.video)
        view["options"] = [{"id": i, "text": p.options[i]} for i in order]
    elif kind is ExerciseKind.FIRST_LETTER_MATCH:
        view["letters"] = [
            {"id": i, "letter_image": g.image.id} for i, g in enumerate(p.letters)
        ]
        view["pictures"] = [{"id": i, "image": p.pictures[i].image.id} for i in order]
    elif kind is ExerciseKind.STORYTELLING:
        view["prompt_videos"] = [_media_view(p.prompt_videos[i]) for i in order]
        view["min_length_chars"] = p.min_length_chars
    elif kind is ExerciseKind.MEMORY_CARDS:
        view["deck_size"] = p.deck_size
        view["pair_count"] = len(p.pairs)
    elif kind is ExerciseKind.INTERACTIVE_VIDEO:
        view["video"] = _media_view(p.video)
        view["checkpoints"] = [
            {"id": i, "at_ms": cp.at_ms, "options": [{"id": j, "text": option} for j, option in enumerate(cp.options)]}
            for i, cp in enumerate(p.checkpoints)
        ]
    return view


def _state_view(session: Session) -> dict:
    view: dict[str, Any] = {
        "session_id": session.id,
        "exercise_id": session.exercise.id,
        "kind": session.exercise.kind.value,
        "open": session.open,
        "revealed": session.revealed,
        "elapsed_ms": session.elapsed_ms(),
    }
    state = session.state
    if isinstance(state, OrderingState):
        view["arrangement"] = list(state.arrangement)
        view["move_count"] = state.move_count
    elif isinstance(state, MemoryState):
        pairs = session.exercise.payload.pairs
        revealed_positions = set(state.face_up) | state.matched
        view["deck_size"] = len(state.deck)
        view["face_up"] = sorted(state.face_up)
        view["matched"] = sorted(state.matched)
        view["turn_count"] = state.turn_count
        view["revealed_cards"] = {
            str(pos): _glyph_view(getattr(pairs[state.deck[pos].pair_index], state.deck[pos].side))
            for pos in sorted(revealed_positions)
        }
        view["complete"] = state.complete
    return view


def _summary_view(summary) -> dict:
    return summary.to_dict()


# -- app factory ----------------------------------------------------------------


def create_app(state: AppState) -> FastAPI:
    app = FastAPI(title="signbridge", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def snapshot() -> Snapshot:
        snap = state.content.snapshot
        if snap is None:
            raise ServiceError("no_content_loaded", "no content pack has been imported yet")
        return snap

    @app.exception_handler(PlatformError)
    def handle_platform_error(_request: Request, exc: PlatformError) -> JSONResponse:
        status = _STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(
            status_code=status,
            content=error_envelope(exc.code, exc.message, exc.details or None),
        )

    @app.exception_handler(RequestValidationError)
    def handle_body_error(_request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content=error_envelope("bad_request", "request body failed validation", {"errors": exc.errors()}),
        )

    @app.exception_handler(StarletteHTTPException)
    def handle_http_error(_request: Request, exc: StarletteHTTPException) -> JSONResponse:
        code = "unknown_entity" if exc.status_code == 404 else "bad_request"
        return JSONResponse(status_code=exc.status_code, content=error_envelope(code, str(exc.detail)))

    # -- lexicon ---------------------------------------------------------

    @app.get(API_PREFIX + "/alphabet/{language}")
    def get_alphabet(language: str) -> dict:
        snap = snapshot()
        lang = _parse_language(language)
        letters = []
        for letter in alphabet(lang).letters:
            glyph = snap.lexicon.glyph(lang, letter)
            letters.append({"letter": letter, "glyph_image": glyph.image.id if glyph else None})
        return {"language": lang.value, "letters": letters}

    @app.get(API_PREFIX + "/signs/{language}/{letter}")
    def get_signs(language: str, letter: str) -> dict:
        snap = snapshot()
        lang = _parse_language(language)
        entries = snap.lexicon.entries_by_letter(lang, letter)
        return {
            "language": lang.value,
            "letter": letter,
            "entries": [_entry_view(e) for e in entries],
        }

    @app.get(API_PREFIX + "/entries/{entry_id}")
    def get_entry(entry_id: str) -> dict:
        return _entry_view(snapshot().lexicon.entry_detail(entry_id))

    @app.get(API_PREFIX + "/entries/{entry_id}/translations")
    def get_translations(entry_id: str) -> dict:
        snap = snapshot()
        entry = snap.lexicon.entry_detail(entry_id)
        return {
            "entry": _entry_view(entry),
            "translations": [_entry_view(e) for e in snap.lexicon.translate(entry_id)],
        }

    # -- exercises and sessions -------------------------------------------

    @app.get(API_PREFIX + "/exercises")
    def list_exercises(kind: str | None = None, language: str | None = None) -> dict:
        snap = snapshot()
        kind_filter = _parse_kind(kind) if kind is not None else None
        language_filter = _parse_language(language) if language is not None else None
        exercises = [
            _exercise_summary(e)
            for e in sorted(snap.exercises.values(), key=lambda e: e.id)
            if (kind_filter is None or e.kind is kind_filter)
            and (language_filter is None or e.language is language_filter)
        ]
        return {"exercises": exercises}

    @app.post(API_PREFIX + "/sessions", status_code=201)
    def create_session(body: SessionCreateBody) -> dict:
        snapshot()  # fail fast with 503 before a lookup miss turns into 404
        session = state.sessions.start_session(body.exercise_id, body.seed)
        return {
            "session_id": session.id,
            "seed": session.seed,
            "exercise": _exercise_play_view(session.exercise, session.presentation),
            "state": _state_view(session),
        }

    @app.post(API_PREFIX + "/sessions/{session_id}/events")
    def post_event(session_id: str, body: EventBody) -> dict:
        outcome = state.sessions.apply_event(
            session_id,
            SessionEvent(type=body.type, card=body.card, from_pos=body.from_pos, to_pos=body.to_pos),
        )
        response = {"state": _state_view(outcome.session)}
        if outcome.result is not None:
            result = dict(outcome.result)
            if result.get("hidden"):
                # a failed pair turns face-down server-side immediately, but the
                # learner did see both cards this turn: ship their glyphs so the
                # client can show them briefly
                memory_state: MemoryState = outcome.session.state
                pairs = outcome.session.exercise.payload.pairs
                result["glyphs"] = {
                    str(pos): _glyph_view(
                        getattr(pairs[memory_state.deck[pos].pair_index], memory_state.deck[pos].side)
                    )
                    for pos in result["hidden"]
                }
            response["result"] = result
        return response

    @app.post(API_PREFIX + "/sessions/{session_id}/submit")
    def post_submit(session_id: str, body: SubmitBody) -> dict:
        session = state.sessions.get(session_id)
        submission = _build_submission(session.exercise, body)
        summary = state.sessions.submit(session_id, submission)
        return _summary_view(summary)

    @app.get(API_PREFIX + "/sessions/{session_id}/results")
    def get_results(session_id: str) -> dict:
        return _summary_view(state.sessions.results(session_id))

    # -- media -------------------------------------------------------------

    @app.get(API_PREFIX + "/media/{media_id}")
    def get_media(media_id: str, request: Request) -> Response:
        snap = snapshot()
        media = snap.media.get(media_id)
        if media is None:
            raise UnknownMedia(f"no media with id {media_id!r}", id=media_id)
        if snap.media_root is None:
            raise UnknownMedia("this snapshot has no media directory", id=media_id)
        file_path = snap.media_root / media.uri
        if not file_path.is_file():
            raise UnknownMedia(f"media file for {media_id!r} is missing", id=media_id)
        return _serve_file(file_path, request.headers.get("range"))

    # -- locales -----------------------------------------------------------

    @app.get(API_PREFIX + "/locales")
    def list_locales() -> dict:
        snap = snapshot()
        return {
            "available": sorted(snap.locales),
            "default": effective_default_locale(snap.locales, snap.default_locale),
        }

    @app.get(API_PREFIX + "/locales/{code}")
    def get_locale(code: str) -> Response:
        snap = snapshot()
        if code not in snap.locales:
            raise UnknownLocale(
                f"locale {code!r} is not offered by the active pack",
                available=sorted(snap.locales),
            )
        default = effective_default_locale(snap.locales, snap.default_locale)
        base = dict(snap.locales.get(default, {}))
        catalog = {**base, **snap.locales[code]}
        fallback_keys = sorted(set(base) - set(snap.locales[code]))
        body = {"locale": code, "strings": catalog, "fallback_keys": fallback_keys}
        headers = {}
        if fallback_keys:
            headers["X-Locale-Fallback"] = f"{default}:{len(fallback_keys)}"
        return JSONResponse(content=body, headers=headers)

    # -- contact -------------------------------------------------------------

    @app.post(API_PREFIX + "/contact", status_code=201)
    def post_contact(body: ContactBody) -> dict:
        if not body.message.strip():
            raise ServiceError("bad_request", "message must not be empty")
        record = state.contacts.add(body.name, body.email, body.message)
        return {"id": record["id"], "stored": True}

    # -- admin ----------------------------------------------------------------

    @app.post(API_PREFIX + "/admin/pack")
    async def upload_pack(request: Request) -> dict:
        _check_admin(request)
        payload = await request.body()
        manifest, media_root = _unpack_upload(payload, state.upload_dir)
        snap = state.content.import_pack(manifest, media_root)  # raises ValidationFailed
        return {
            "imported": True,
            "pack_name": snap.pack_name,
            "version": snap.version,
            "entries": snap.lexicon.entry_count(),
            "exercises": len(snap.exercises),
        }

    def _check_admin(request: Request) -> None:
        if state.admin_token is None:
            raise ServiceError("admin_disabled", "no admin token is configured on this server")
        header = request.headers.get("authorization", "")
        if header != f"Bearer {state.admin_token}":
            raise ServiceError("unauthorized", "missing or invalid admin token")

    return app


def _parse_language(value: str) -> Language:
    try:
        return Language(value.upper())
    except ValueError:
        raise ServiceError("bad_request", f"unknown language {value!r}; use GSL or ESL") from None


def _parse_kind(value: str) -> ExerciseKind:
    try:
        return ExerciseKind(value)
    except ValueError:
        raise ServiceError(
            "bad_request",
            f"unknown exercise kind {value!r}",
            known=[k.value for k in ExerciseKind],
        ) from None


def _build_submission(exercise: Exercise, body: SubmitBody) -> Submission:
    kind = _parse_kind(body.kind) if body.kind is not None else exercise.kind
    return Submission(
        exercise_id=exercise.id,
        kind=kind,
        answers=tuple(body.answers) if body.answers is not None else None,
        mapping=dict(body.mapping) if body.mapping is not None else None,
        arrangement=tuple(body.arrangement) if body.arrangement is not None else None,
        option=body.option,
        checkpoint_answers=(
            tuple(body.checkpoint_answers) if body.checkpoint_answers is not None else None
        ),
        story=body.story,
    )


def _serve_file(path: Path, range_header: str | None) -> Response:
    data_size = path.stat().st_size
    media_type = _MEDIA_TYPES.get(path.suffix.lower()) or mimetypes.guess_type(path.name)[0] or "application/octet-stream"
    base_headers = {"Accept-Ranges": "bytes"}
    if range_header is None:
        return Response(path.read_bytes(), media_type=media_type, headers=base_headers)
    start, end = _parse_range(range_header, data_size)
    with path.open("rb") as handle:
        handle.seek(start)
        chunk = handle.read(end - start + 1)
    headers = {
        **base_headers,
        "Content-Range": f"bytes {start}-{end}/{data_size}",
    }
    return Response(chunk, status_code=206, media_type=media_type, headers=headers)


def _parse_range(header: str, size: int) -> tuple[int, int]:
    bad = ServiceError("range_not_satisfiable", f"cannot satisfy range {header!r}", size=size)
    spec = header.strip().lower()
    if not spec.startswith("bytes=") or "," in spec:
        raise bad
    start_text, _, end_text = spec[len("bytes="):].partition("-")
    try:
        if start_text == "":  # suffix form: last N bytes
            length = int(end_text)
            if length <= 0:
                raise bad
            return max(0, size - length), size - 1
        start = int(start_text)
        end = int(end_text) if end_text else size - 1
    except ValueError:
        raise bad from None
    end = min(end, size - 1)
    if start < 0 or start > end or start >= size:
        raise bad
    return start, end


def _unpack_upload(payload: bytes, upload_dir: Path | None):
    """Extract an uploaded pack zip and parse its manifest."""
    from .pack import MANIFEST_FILENAME

    if not payload:
        raise ServiceError("bad_request", "request body must be a zip archive of the pack")
    try:
        archive = zipfile.ZipFile(io.BytesIO(payload))
    except zipfile.BadZipFile:
        raise ServiceError("bad_request", "request body is not a valid zip archive") from None

    if upload_dir is not None:
        upload_dir.mkdir(parents=True, exist_ok=True)
    dest = Path(tempfile.mkdtemp(prefix="pack-", dir=upload_dir))
    names = archive.namelist()
    # tolerate archives that wrap the pack in a single top-level directory
    prefix = ""
    if names and all(n.split("/", 1)[0] == names[0].split("/", 1)[0] and "/" in n for n in names):
        prefix = names[0].split("/", 1)[0] + "/"
    for info in archive.infolist():
        name = info.filename
        if prefix and name.startswith(prefix):
            name = name[len(prefix):]
        if not name or name.endswith("/"):
            continue
        target = dest / name
        if not target.resolve().is_relative_to(dest.resolve()):
            raise ServiceError("bad_request", f"zip member {info.filename!r} escapes the pack directory")
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(archive.read(info))
    manifest_path = dest / MANIFEST_FILENAME
    if not manifest_path.is_file():
        raise ServiceError("bad_request", f"archive does not contain {MANIFEST_FILENAME}")
    manifest = parse_manifest(manifest_path.read_bytes())
    return manifest, dest
