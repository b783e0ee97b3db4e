"""Content packs: the unit an administrator uploads.

A pack is a directory holding ``manifest.json`` plus a ``media/`` tree. The
manifest declares sign entries, translation links, finger-alphabet glyphs,
exercises, a media index and UI locale catalogs. Parsing is purely
structural (syntax/schema errors raise), validation aggregates every content
problem into a report, and importing swaps an immutable snapshot into the
store atomically. Export emits a canonical, byte-stable serialization.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import (
    ManifestSchemaError,
    ManifestSyntaxError,
    ValidationFailed,
    ValidationIssue,
    ValidationReport,
)
from .exercises import (
    Checkpoint,
    Exercise,
    ExerciseKind,
    FirstLetterMatchPayload,
    HoverRevealPayload,
    InteractiveVideoPayload,
    LetterMatchPayload,
    LetterTextEntryPayload,
    MemoryCardsPayload,
    MemoryPair,
    OrderingPayload,
    Picture,
    StorytellingPayload,
    VideoMultipleChoicePayload,
    validate_exercise,
)
from .lexicon import (
    EmptyLemma,
    FingerAlphabetGlyph,
    Language,
    Lexicon,
    MediaKind,
    MediaRef,
    NotInAlphabet,
    SignEntry,
    TranslationLink,
    alphabet,
    first_letter,
)

MANIFEST_FILENAME = "manifest.json"
MEDIA_DIRNAME = "media"


# -- manifest records (structural layer; no cross-invariants enforced) ------


@dataclass(frozen=True)
class ManifestEntry:
    id: str
    language: str
    lemma: str
    letter_group: str
    sign_video: str
    gloss: str | None = None
    pronunciation_audio: str | None = None


@dataclass(frozen=True)
class ManifestLink:
    gsl: str
    esl: str


@dataclass(frozen=True)
class ManifestGlyph:
    language: str
    letter: str
    image: str


@dataclass(frozen=True)
class ManifestMedia:
    id: str
    kind: str
    path: str
    duration_ms: int | None = None


@dataclass(frozen=True)
class ManifestExercise:
    id: str
    language: str
    kind: str
    payload: dict


@dataclass
class PackManifest:
    pack_name: str
    version: str
    entries: list[ManifestEntry] = field(default_factory=list)
    links: list[ManifestLink] = field(default_factory=list)
    glyphs: list[ManifestGlyph] = field(default_factory=list)
    exercises: list[ManifestExercise] = field(default_factory=list)
    media_index: dict[str, ManifestMedia] = field(default_factory=dict)
    locales: dict[str, dict[str, str]] = field(default_factory=dict)
    default_locale: str | None = None
    parse_warnings: list[ValidationIssue] = field(default_factory=list, compare=False)


# -- parsing ----------------------------------------------------------------

_TOP_FIELDS = {
    "pack_name", "version", "entries", "links", "glyphs",
    "exercises", "media", "locales", "default_locale",
}
_ENTRY_FIELDS = {"id", "language", "lemma", "letter_group", "gloss", "sign_video", "pronunciation_audio"}
_LINK_FIELDS = {"gsl", "esl"}
_GLYPH_FIELDS = {"language", "letter", "image"}
_MEDIA_FIELDS = {"kind", "path", "duration_ms"}
_EXERCISE_FIELDS = {"id", "language", "kind", "payload"}


def _require(obj: dict, key: str, kind: type, path: str) -> Any:
    if key not in obj:
        raise ManifestSchemaError(f"{path}.{key}" if path else key)
    value = obj[key]
    if not isinstance(value, kind) or (kind is not bool and isinstance(value, bool)):
        raise ManifestSchemaError(
            f"{path}.{key}" if path else key,
            f"{path + '.' if path else ''}{key} must be {kind.__name__}",
        )
    return value


def _optional_str(obj: dict, key: str, path: str) -> str | None:
    value = obj.get(key)
    if value is None:
        return None
    if not isinstance(value, str):
        raise ManifestSchemaError(f"{path}.{key}", f"{path}.{key} must be a string when present")
    return value


def _warn_unknown(obj: dict, known: set[str], path: str, warnings: list[ValidationIssue]) -> None:
    for key in obj:
        if key not in known:
            warnings.append(
                ValidationIssue("UnknownField", f"{path}.{key}" if path else key, "field is not recognized and was ignored")
            )


def parse_manifest(data: bytes) -> PackManifest:
    """Decode manifest bytes into a structurally-typed manifest.

    Raises ``ManifestSyntaxError`` (with line/column) for malformed text and
    ``ManifestSchemaError`` (naming the field) for wrong shapes. Content
    problems — dangling references, bad letters — are left to
    :func:`validate_pack`.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ManifestSyntaxError(f"manifest is not valid UTF-8: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestSyntaxError(
            f"manifest is not valid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}",
            line=exc.lineno,
            column=exc.colno,
        ) from exc
    if not isinstance(raw, dict):
        raise ManifestSchemaError("", "manifest root must be an object")

    warnings: list[ValidationIssue] = []
    _warn_unknown(raw, _TOP_FIELDS, "", warnings)

    manifest = PackManifest(
        pack_name=_require(raw, "pack_name", str, ""),
        version=_require(raw, "version", str, ""),
        default_locale=_optional_str(raw, "default_locale", ""),
        parse_warnings=warnings,
    )

    for i, item in enumerate(_require(raw, "entries", list, "")):
        path = f"entries[{i}]"
        if not isinstance(item, dict):
            raise ManifestSchemaError(path, f"{path} must be an object")
        _warn_unknown(item, _ENTRY_FIELDS, path, warnings)
        manifest.entries.append(
            ManifestEntry(
                id=_require(item, "id", str, path),
                language=_require(item, "language", str, path),
                lemma=_require(item, "lemma", str, path),
                letter_group=_require(item, "letter_group", str, path),
                sign_video=_require(item, "sign_video", str, path),
                gloss=_optional_str(item, "gloss", path),
                pronunciation_audio=_optional_str(item, "pronunciation_audio", path),
            )
        )

    for i, item in enumerate(_require(raw, "links", list, "")):
        path = f"links[{i}]"
        if not isinstance(item, dict):
            raise ManifestSchemaError(path, f"{path} must be an object")
        _warn_unknown(item, _LINK_FIELDS, path, warnings)
        manifest.links.append(
            ManifestLink(gsl=_require(item, "gsl", str, path), esl=_require(item, "esl", str, path))
        )

    for i, item in enumerate(_require(raw, "glyphs", list, "")):
        path = f"glyphs[{i}]"
        if not isinstance(item, dict):
            raise ManifestSchemaError(path, f"{path} must be an object")
        _warn_unknown(item, _GLYPH_FIELDS, path, warnings)
        manifest.glyphs.append(
            ManifestGlyph(
                language=_require(item, "language", str, path),
                letter=_require(item, "letter", str, path),
                image=_require(item, "image", str, path),
            )
        )

    for media_id, item in _require(raw, "media", dict, "").items():
        path = f"media.{media_id}"
        if not isinstance(item, dict):
            raise ManifestSchemaError(path, f"{path} must be an object")
        _warn_unknown(item, _MEDIA_FIELDS, path, warnings)
        duration = item.get("duration_ms")
        if duration is not None and (not isinstance(duration, int) or isinstance(duration, bool)):
            raise ManifestSchemaError(f"{path}.duration_ms", f"{path}.duration_ms must be an integer")
        manifest.media_index[media_id] = ManifestMedia(
            id=media_id,
            kind=_require(item, "kind", str, path),
            path=_require(item, "path", str, path),
            duration_ms=duration,
        )

    for i, item in enumerate(_require(raw, "exercises", list, "")):
        path = f"exercises[{i}]"
        if not isinstance(item, dict):
            raise ManifestSchemaError(path, f"{path} must be an object")
        _warn_unknown(item, _EXERCISE_FIELDS, path, warnings)
        manifest.exercises.append(
            ManifestExercise(
                id=_require(item, "id", str, path),
                language=_require(item, "language", str, path),
                kind=_require(item, "kind", str, path),
                payload=_require(item, "payload", dict, path),
            )
        )

    for code, catalog in _require(raw, "locales", dict, "").items():
        path = f"locales.{code}"
        if not isinstance(catalog, dict):
            raise ManifestSchemaError(path, f"{path} must be an object")
        for key, value in catalog.items():
            if not isinstance(value, str):
                raise ManifestSchemaError(f"{path}.{key}", f"{path}.{key} must be a string")
        manifest.locales[code] = dict(catalog)

    return manifest


def load_pack_dir(pack_dir: Path) -> tuple[PackManifest, Path]:
    """Read a pack directory; returns the parsed manifest and its media root."""
    manifest_path = Path(pack_dir)
    if manifest_path.is_dir():
        manifest_path = manifest_path / MANIFEST_FILENAME
    data = manifest_path.read_bytes()
    return parse_manifest(data), manifest_path.parent


# -- validation ---------------------------------------------------------------


def _valid_language(value: str, path: str, report: ValidationReport) -> Language | None:
    try:
        return Language(value)
    except ValueError:
        report.error("InvalidLanguage", f"{path}.language", f"{value!r} is not GSL or ESL")
        return None


def _check_media_ref(
    media_id: str,
    expected: MediaKind,
    manifest: PackManifest,
    path: str,
    report: ValidationReport,
) -> bool:
    media = manifest.media_index.get(media_id)
    if media is None:
        report.error("DanglingMedia", path, f"media id {media_id!r} is not in the media index")
        return False
    if media.kind != expected.value:
        report.error(
            "MediaKindMismatch", path, f"media {media_id!r} is {media.kind}, expected {expected.value}"
        )
        return False
    return True


def validate_pack(manifest: PackManifest, media_root: Path | None = None) -> ValidationReport:
    """Aggregate every content problem; the pack is importable iff no errors."""
    report = ValidationReport()
    report.warnings.extend(manifest.parse_warnings)

    # media index sanity
    for media_id, media in manifest.media_index.items():
        path = f"media.{media_id}"
        try:
            kind = MediaKind(media.kind)
        except ValueError:
            report.error("InvalidMediaKind", f"{path}.kind", f"{media.kind!r} is not video/image/audio")
            continue
        if not media.path:
            report.error("EmptyPath", f"{path}.path", "media path must be non-empty")
            continue
        timed = kind in (MediaKind.VIDEO, MediaKind.AUDIO)
        if timed and (media.duration_ms is None or media.duration_ms < 0):
            report.error("MissingDuration", f"{path}.duration_ms", f"{kind.value} media needs a non-negative duration")
        if not timed and media.duration_ms is not None:
            report.error("UnexpectedDuration", f"{path}.duration_ms", "image media cannot carry a duration")
        pure = Path(media.path)
        if pure.is_absolute() or ".." in pure.parts:
            report.error("UnsafePath", f"{path}.path", f"{media.path!r} escapes the pack directory")
        elif media_root is not None and not (media_root / pure).is_file():
            report.error("MissingMediaFile", f"{path}.path", f"{media.path!r} does not exist in the pack")

    # entries
    entry_languages: dict[str, Language] = {}
    seen_entries: set[str] = set()
    for i, entry in enumerate(manifest.entries):
        path = f"entries[{i}]"
        if entry.id in seen_entries:
            report.error("DuplicateId", f"{path}.id", f"entry id {entry.id!r} appears more than once")
        seen_entries.add(entry.id)
        language = _valid_language(entry.language, path, report)
        if language is None:
            continue
        entry_languages[entry.id] = language
        try:
            expected_group = first_letter(entry.lemma, language)
        except EmptyLemma:
            report.error("InvalidLemma", f"{path}.lemma", "lemma is empty after trimming")
            expected_group = None
        except NotInAlphabet:
            report.error(
                "NotInAlphabet", f"{path}.lemma", f"lemma {entry.lemma!r} does not start with an alphabet letter"
            )
            expected_group = None
        if expected_group is not None and entry.letter_group != expected_group:
            report.error(
                "LetterGroupMismatch",
                f"{path}.letter_group",
                f"{entry.letter_group!r} does not match the lemma's first letter {expected_group!r}",
            )
        _check_media_ref(entry.sign_video, MediaKind.VIDEO, manifest, f"{path}.sign_video", report)
        if entry.pronunciation_audio is not None:
            _check_media_ref(
                entry.pronunciation_audio, MediaKind.AUDIO, manifest, f"{path}.pronunciation_audio", report
            )

    # translation links
    seen_links: set[tuple[str, str]] = set()
    for i, link in enumerate(manifest.links):
        path = f"links[{i}]"
        pair = (link.gsl, link.esl)
        if pair in seen_links:
            report.error("DuplicateLink", path, f"link {pair!r} appears more than once")
        seen_links.add(pair)
        for side, entry_id, language in (("gsl", link.gsl, Language.GSL), ("esl", link.esl, Language.ESL)):
            actual = entry_languages.get(entry_id)
            if entry_id not in seen_entries:
                report.error("DanglingLink", f"{path}.{side}", f"entry {entry_id!r} does not exist")
            elif actual is not None and actual is not language:
                report.error(
                    "LinkLanguageMismatch", f"{path}.{side}", f"entry {entry_id!r} is not a {language.value} entry"
                )

    # glyphs
    glyph_letters: dict[Language, set[str]] = {Language.GSL: set(), Language.ESL: set()}
    for i, glyph in enumerate(manifest.glyphs):
        path = f"glyphs[{i}]"
        language = _valid_language(glyph.language, path, report)
        if language is None:
            continue
        if glyph.letter not in alphabet(language):
            report.error("NotInAlphabet", f"{path}.letter", f"{glyph.letter!r} is not a {language.value} letter")
            continue
        if glyph.letter in glyph_letters[language]:
            report.error("DuplicateGlyph", path, f"{language.value}/{glyph.letter} has more than one glyph")
        glyph_letters[language].add(glyph.letter)
        _check_media_ref(glyph.image, MediaKind.IMAGE, manifest, f"{path}.image", report)

    # glyph coverage: required for every language the pack actually uses
    used_languages: set[Language] = set(entry_languages.values())
    for language, letters in glyph_letters.items():
        if letters:
            used_languages.add(language)
    for mex in manifest.exercises:
        try:
            used_languages.add(Language(mex.language))
        except ValueError:
            pass
        if mex.kind == ExerciseKind.MEMORY_CARDS.value:
            used_languages.update((Language.GSL, Language.ESL))
    for language in sorted(used_languages, key=lambda lang: lang.value):
        missing = [letter for letter in alphabet(language).letters if letter not in glyph_letters[language]]
        if missing:
            report.error(
                "GlyphCoverageGap",
                f"glyphs.{language.value}",
                f"missing glyphs for {len(missing)} letter(s): {' '.join(missing)}",
            )

    # exercises
    glyph_table = _build_glyph_table(manifest, report_errors=False)
    seen_exercises: set[str] = set()
    for i, mex in enumerate(manifest.exercises):
        path = f"exercises[{i}]"
        if mex.id in seen_exercises:
            report.error("DuplicateId", f"{path}.id", f"exercise id {mex.id!r} appears more than once")
        seen_exercises.add(mex.id)
        language = _valid_language(mex.language, path, report)
        if language is None:
            continue
        try:
            ExerciseKind(mex.kind)
        except ValueError:
            report.error("InvalidKind", f"{path}.kind", f"{mex.kind!r} is not a known exercise kind")
            continue
        exercise, issues = _resolve_exercise(mex, manifest, glyph_table)
        for issue in issues:
            report.errors.append(ValidationIssue(issue.code, f"{path}.{issue.path}", issue.message))
        if exercise is not None:
            report.merge(validate_exercise(exercise), prefix=path)

    # locales
    if manifest.default_locale is not None and manifest.default_locale not in manifest.locales:
        report.error(
            "UnknownDefaultLocale", "default_locale", f"{manifest.default_locale!r} is not an offered locale"
        )
    default = effective_default_locale(manifest.locales, manifest.default_locale)
    if default is not None:
        base_keys = set(manifest.locales[default])
        for code, catalog in manifest.locales.items():
            missing = base_keys - set(catalog)
            if missing:
                report.warn(
                    "LocaleKeyGap",
                    f"locales.{code}",
                    f"{len(missing)} key(s) missing; the default locale will fill them",
                )

    return report


def effective_default_locale(locales: dict[str, dict[str, str]], declared: str | None) -> str | None:
    if declared is not None and declared in locales:
        return declared
    if "en" in locales:
        return "en"
    return min(locales) if locales else None


# -- resolution (manifest references -> domain objects) ----------------------


def _build_media_ref(media: ManifestMedia) -> MediaRef:
    return MediaRef(id=media.id, kind=MediaKind(media.kind), uri=media.path, duration_ms=media.duration_ms)


def _build_glyph_table(
    manifest: PackManifest, report_errors: bool = True
) -> dict[tuple[Language, str], FingerAlphabetGlyph]:
    """Best-effort domain glyph table; records that fail to resolve are skipped."""
    table: dict[tuple[Language, str], FingerAlphabetGlyph] = {}
    for glyph in manifest.glyphs:
        try:
            language = Language(glyph.language)
            media = manifest.media_index[glyph.image]
            table[(language, glyph.letter)] = FingerAlphabetGlyph(
                language=language, letter=glyph.letter, image=_build_media_ref(media)
            )
        except (ValueError, KeyError):
            if report_errors:
                raise
    return table


class _ResolveFailure(Exception):
    def __init__(self, issues: list[ValidationIssue]):
        self.issues = issues


class _Resolver:
    """Turns a raw exercise payload dict into typed payload objects."""

    def __init__(self, mex: ManifestExercise, manifest: PackManifest, glyphs: dict):
        self.mex = mex
        self.manifest = manifest
        self.glyphs = glyphs
        self.issues: list[ValidationIssue] = []

    def fail(self, code: str, path: str, message: str) -> _ResolveFailure:
        self.issues.append(ValidationIssue(code, path, message))
        return _ResolveFailure(self.issues)

    def glyph(self, letter: Any, language: Language, path: str) -> FingerAlphabetGlyph:
        if not isinstance(letter, str):
            raise self.fail("InvalidPayload", path, "glyph reference must be a letter string")
        glyph = self.glyphs.get((language, letter))
        if glyph is None:
            raise self.fail("UnknownGlyph", path, f"no {language.value} glyph for letter {letter!r}")
        return glyph

    def glyph_list(self, values: Any, language: Language, path: str) -> tuple[FingerAlphabetGlyph, ...]:
        if not isinstance(values, list):
            raise self.fail("InvalidPayload", path, "expected a list of letters")
        return tuple(self.glyph(v, language, f"{path}[{i}]") for i, v in enumerate(values))

    def media(self, media_id: Any, path: str) -> MediaRef:
        if not isinstance(media_id, str):
            raise self.fail("InvalidPayload", path, "media reference must be an id string")
        media = self.manifest.media_index.get(media_id)
        if media is None:
            raise self.fail("DanglingMedia", path, f"media id {media_id!r} is not in the media index")
        try:
            return _build_media_ref(media)
        except ValueError as exc:
            raise self.fail("InvalidMediaRef", path, str(exc))

    def str_list(self, values: Any, path: str) -> tuple[str, ...]:
        if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
            raise self.fail("InvalidPayload", path, "expected a list of strings")
        return tuple(values)

    def int_list(self, values: Any, path: str) -> tuple[int, ...]:
        if not isinstance(values, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in values
        ):
            raise self.fail("InvalidPayload", path, "expected a list of integers")
        return tuple(values)

    def integer(self, value: Any, path: str) -> int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise self.fail("InvalidPayload", path, "expected an integer")
        return value


def _resolve_exercise(
    mex: ManifestExercise,
    manifest: PackManifest,
    glyph_table: dict[tuple[Language, str], FingerAlphabetGlyph],
) -> tuple[Exercise | None, list[ValidationIssue]]:
    r = _Resolver(mex, manifest, glyph_table)
    language = Language(mex.language)
    kind = ExerciseKind(mex.kind)
    p = mex.payload
    try:
        if kind is ExerciseKind.LETTER_TEXT_ENTRY:
            payload = LetterTextEntryPayload(
                items=r.glyph_list(p.get("items"), language, "payload.items"),
                answer_key=r.str_list(p.get("answer_key"), "payload.answer_key"),
            )
        elif kind is ExerciseKind.LETTER_MATCH:
            payload = LetterMatchPayload(
                left=r.str_list(p.get("left"), "payload.left"),
                right=r.glyph_list(p.get("right"), language, "payload.right"),
                answer_key=r.int_list(p.get("answer_key"), "payload.answer_key"),
            )
        elif kind is ExerciseKind.ORDERING:
            payload = OrderingPayload(
                items=r.glyph_list(p.get("items"), language, "payload.items"),
                answer_key=r.int_list(p.get("answer_key"), "payload.answer_key"),
            )
        elif kind is ExerciseKind.HOVER_REVEAL:
            payload = HoverRevealPayload(items=r.glyph_list(p.get("items"), language, "payload.items"))
        elif kind is ExerciseKind.VIDEO_MULTIPLE_CHOICE:
            payload = VideoMultipleChoicePayload(
                video=r.media(p.get("video"), "payload.video"),
                options=r.str_list(p.get("options"), "payload.options"),
                answer_key=r.integer(p.get("answer_key"), "payload.answer_key"),
            )
        elif kind is ExerciseKind.FIRST_LETTER_MATCH:
            raw_pictures = p.get("pictures")
            if not isinstance(raw_pictures, list):
                raise r.fail("InvalidPayload", "payload.pictures", "expected a list of pictures")
            pictures = []
            for i, pic in enumerate(raw_pictures):
                if not isinstance(pic, dict) or not isinstance(pic.get("word"), str):
                    raise r.fail("InvalidPayload", f"payload.pictures[{i}]", "picture needs image and word")
                pictures.append(
                    Picture(image=r.media(pic.get("image"), f"payload.pictures[{i}].image"), word=pic["word"])
                )
            payload = FirstLetterMatchPayload(
                letters=r.glyph_list(p.get("letters"), Language.ESL, "payload.letters"),
                pictures=tuple(pictures),
                answer_key=r.int_list(p.get("answer_key"), "payload.answer_key"),
            )
        elif kind is ExerciseKind.STORYTELLING:
            videos = p.get("prompt_videos")
            if not isinstance(videos, list):
                raise r.fail("InvalidPayload", "payload.prompt_videos", "expected a list of media ids")
            payload = StorytellingPayload(
                prompt_videos=tuple(
                    r.media(v, f"payload.prompt_videos[{i}]") for i, v in enumerate(videos)
                ),
                min_length_chars=r.integer(p.get("min_length_chars", 1), "payload.min_length_chars"),
            )
        elif kind is ExerciseKind.MEMORY_CARDS:
            raw_pairs = p.get("pairs")
            if not isinstance(raw_pairs, list):
                raise r.fail("InvalidPayload", "payload.pairs", "expected a list of pairs")
            pairs = []
            for i, pair in enumerate(raw_pairs):
                if not isinstance(pair, dict):
                    raise r.fail("InvalidPayload", f"payload.pairs[{i}]", "pair needs gsl and esl letters")
                pairs.append(
                    MemoryPair(
                        gsl=r.glyph(pair.get("gsl"), Language.GSL, f"payload.pairs[{i}].gsl"),
                        esl=r.glyph(pair.get("esl"), Language.ESL, f"payload.pairs[{i}].esl"),
                    )
                )
            payload = MemoryCardsPayload(pairs=tuple(pairs))
        elif kind is ExerciseKind.INTERACTIVE_VIDEO:
            raw_checkpoints = p.get("checkpoints")
            if not isinstance(raw_checkpoints, list):
                raise r.fail("InvalidPayload", "payload.checkpoints", "expected a list of checkpoints")
            checkpoints = []
            for i, cp in enumerate(raw_checkpoints):
                if not isinstance(cp, dict):
                    raise r.fail("InvalidPayload", f"payload.checkpoints[{i}]", "checkpoint must be an object")
                checkpoints.append(
                    Checkpoint(
                        at_ms=r.integer(cp.get("at_ms"), f"payload.checkpoints[{i}].at_ms"),
                        options=r.str_list(cp.get("options"), f"payload.checkpoints[{i}].options"),
                        answer_key=r.integer(cp.get("answer_key"), f"payload.checkpoints[{i}].answer_key"),
                    )
                )
            payload = InteractiveVideoPayload(
                video=r.media(p.get("video"), "payload.video"), checkpoints=tuple(checkpoints)
            )
        else:  # pragma: no cover
            raise r.fail("InvalidKind", "kind", f"unhandled kind {kind!r}")
    except _ResolveFailure as failure:
        return None, failure.issues
    return Exercise(id=mex.id, language=language, kind=kind, payload=payload), r.issues


# -- snapshot and store -------------------------------------------------------


@dataclass(frozen=True)
class Snapshot:
    """Immutable content state produced by one pack import."""

    pack_name: str
    version: str
    lexicon: Lexicon
    exercises: dict[str, Exercise]
    media: dict[str, MediaRef]
    locales: dict[str, dict[str, str]]
    default_locale: str | None
    media_root: Path | None


def build_snapshot(manifest: PackManifest, media_root: Path | None = None) -> Snapshot:
    """Resolve a validated manifest into domain objects; assumes zero errors."""
    media = {mid: _build_media_ref(m) for mid, m in manifest.media_index.items()}
    glyph_table = _build_glyph_table(manifest)
    entries = [
        SignEntry(
            id=e.id,
            language=Language(e.language),
            lemma=e.lemma,
            letter_group=e.letter_group,
            sign_video=media[e.sign_video],
            gloss=e.gloss,
            pronunciation_audio=media[e.pronunciation_audio] if e.pronunciation_audio else None,
        )
        for e in manifest.entries
    ]
    links = [TranslationLink(gsl_entry=l.gsl, esl_entry=l.esl) for l in manifest.links]
    exercises: dict[str, Exercise] = {}
    for mex in manifest.exercises:
        exercise, issues = _resolve_exercise(mex, manifest, glyph_table)
        if exercise is None:  # pragma: no cover - guarded by validate_pack
            raise ValueError(f"exercise {mex.id!r} failed to resolve: {issues}")
        exercises[exercise.id] = exercise
    return Snapshot(
        pack_name=manifest.pack_name,
        version=manifest.version,
        lexicon=Lexicon(entries=entries, links=links, glyphs=glyph_table.values()),
        exercises=exercises,
        media=media,
        locales={code: dict(catalog) for code, catalog in manifest.locales.items()},
        default_locale=manifest.default_locale,
        media_root=media_root,
    )


class ContentStore:
    """Holds the active snapshot; imports swap it atomically.

    Readers grab ``store.snapshot`` once per request and keep using that
    object; an import never mutates a published snapshot.
    """

    def __init__(self) -> None:
        self._snapshot: Snapshot | None = None
        self._import_lock = threading.Lock()

    @property
    def snapshot(self) -> Snapshot | None:
        return self._snapshot

    def import_pack(self, manifest: PackManifest, media_root: Path | None = None) -> Snapshot:
        with self._import_lock:
            report = validate_pack(manifest, media_root)
            if not report.ok:
                raise ValidationFailed(report)
            snapshot = build_snapshot(manifest, media_root)
            self._snapshot = snapshot
            return snapshot

    def import_pack_dir(self, pack_dir: Path) -> Snapshot:
        manifest, media_root = load_pack_dir(Path(pack_dir))
        return self.import_pack(manifest, media_root)


# -- canonical export ----------------------------------------------------------


def _payload_dict(exercise: Exercise) -> dict[str, Any]:
    kind = exercise.kind
    p = exercise.payload
    if kind is ExerciseKind.LETTER_TEXT_ENTRY:
        return {"items": [g.letter for g in p.items], "answer_key": list(p.answer_key)}
    if kind is ExerciseKind.LETTER_MATCH:
        return {
            "left": list(p.left),
            "right": [g.letter for g in p.right],
            "answer_key": list(p.answer_key),
        }
    if kind is ExerciseKind.ORDERING:
        return {"items": [g.letter for g in p.items], "answer_key": list(p.answer_key)}
    if kind is ExerciseKind.HOVER_REVEAL:
        return {"items": [g.letter for g in p.items]}
    if kind is ExerciseKind.VIDEO_MULTIPLE_CHOICE:
        return {"video": p.video.id, "options": list(p.options), "answer_key": p.answer_key}
    if kind is ExerciseKind.FIRST_LETTER_MATCH:
        return {
            "letters": [g.letter for g in p.letters],
            "pictures": [{"image": pic.image.id, "word": pic.word} for pic in p.pictures],
            "answer_key": list(p.answer_key),
        }
    if kind is ExerciseKind.STORYTELLING:
        return {
            "prompt_videos": [m.id for m in p.prompt_videos],
            "min_length_chars": p.min_length_chars,
        }
    if kind is ExerciseKind.MEMORY_CARDS:
        return {"pairs": [{"gsl": pair.gsl.letter, "esl": pair.esl.letter} for pair in p.pairs]}
    if kind is ExerciseKind.INTERACTIVE_VIDEO:
        return {
            "video": p.video.id,
            "checkpoints": [
                {"at_ms": cp.at_ms, "options": list(cp.options), "answer_key": cp.answer_key}
                for cp in p.checkpoints
            ],
        }
    raise ValueError(f"unhandled kind {kind!r}")  # pragma: no cover


def snapshot_to_manifest(snapshot: Snapshot) -> PackManifest:
    lexicon = snapshot.lexicon
    manifest = PackManifest(pack_name=snapshot.pack_name, version=snapshot.version)
    manifest.default_locale = snapshot.default_locale
    for entry in lexicon.entries():
        manifest.entries.append(
            ManifestEntry(
                id=entry.id,
                language=entry.language.value,
                lemma=entry.lemma,
                letter_group=entry.letter_group,
                sign_video=entry.sign_video.id,
                gloss=entry.gloss,
                pronunciation_audio=entry.pronunciation_audio.id if entry.pronunciation_audio else None,
            )
        )
    for gsl_id, esl_id in lexicon.links:
        manifest.links.append(ManifestLink(gsl=gsl_id, esl=esl_id))
    for language in Language:
        for glyph in lexicon.glyphs(language):
            manifest.glyphs.append(
                ManifestGlyph(language=language.value, letter=glyph.letter, image=glyph.image.id)
            )
    for exercise in snapshot.exercises.values():
        manifest.exercises.append(
            ManifestExercise(
                id=exercise.id,
                language=exercise.language.value,
                kind=exercise.kind.value,
                payload=_payload_dict(exercise),
            )
        )
    for media_id, ref in snapshot.media.items():
        manifest.media_index[media_id] = ManifestMedia(
            id=media_id, kind=ref.kind.value, path=ref.uri, duration_ms=ref.duration_ms
        )
    manifest.locales = {code: dict(catalog) for code, catalog in snapshot.locales.items()}
    return manifest


def manifest_to_canonical_dict(manifest: PackManifest) -> dict[str, Any]:
    """Content-equal manifests canonicalize to the same dict (ordering normalized)."""

    def entry_dict(e: ManifestEntry) -> dict[str, Any]:
        d: dict[str, Any] = {
            "id": e.id,
            "language": e.language,
            "lemma": e.lemma,
            "letter_group": e.letter_group,
            "sign_video": e.sign_video,
        }
        if e.gloss is not None:
            d["gloss"] = e.gloss
        if e.pronunciation_audio is not None:
            d["pronunciation_audio"] = e.pronunciation_audio
        return d

    canonical: dict[str, Any] = {
        "pack_name": manifest.pack_name,
        "version": manifest.version,
        "entries": [entry_dict(e) for e in sorted(manifest.entries, key=lambda e: e.id)],
        "links": [
            {"gsl": l.gsl, "esl": l.esl}
            for l in sorted(manifest.links, key=lambda l: (l.gsl, l.esl))
        ],
        "glyphs": [
            {"language": g.language, "letter": g.letter, "image": g.image}
            for g in sorted(manifest.glyphs, key=lambda g: (g.language, _glyph_sort_key(g)))
        ],
        "exercises": [
            {"id": x.id, "language": x.language, "kind": x.kind, "payload": x.payload}
            for x in sorted(manifest.exercises, key=lambda x: x.id)
        ],
        "media": {
            media_id: _media_dict(manifest.media_index[media_id])
            for media_id in sorted(manifest.media_index)
        },
        "locales": {code: dict(manifest.locales[code]) for code in sorted(manifest.locales)},
    }
    if manifest.default_locale is not None:
        canonical["default_locale"] = manifest.default_locale
    return canonical


def _glyph_sort_key(glyph: ManifestGlyph) -> int:
    try:
        return alphabet(glyph.language).index(glyph.letter)
    except (ValueError, KeyError, NotInAlphabet):
        return 10_000


def _media_dict(media: ManifestMedia) -> dict[str, Any]:
    d: dict[str, Any] = {"kind": media.kind, "path": media.path}
    if media.duration_ms is not None:
        d["duration_ms"] = media.duration_ms
    return d


def export_pack(snapshot: Snapshot) -> bytes:
    """Canonical manifest bytes; stable across runs for equal content."""
    canonical = manifest_to_canonical_dict(snapshot_to_manifest(snapshot))
    return (json.dumps(canonical, ensure_ascii=False, indent=2, sort_keys=True) + "\n").encode("utf-8")
