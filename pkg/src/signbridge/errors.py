"""Domain exceptions and the shared validation-report primitives.

Every error class carries a stable machine-readable ``code`` that the HTTP
layer and the CLI expose verbatim, so clients can branch on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class PlatformError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: dict[str, Any] = details


class EmptyLemma(PlatformError):
    code = "empty_lemma"


class NotInAlphabet(PlatformError):
    code = "not_in_alphabet"


class UnknownEntry(PlatformError):
    code = "unknown_entity"


class UnknownExercise(PlatformError):
    code = "unknown_entity"


class UnknownSession(PlatformError):
    code = "unknown_entity"


class UnknownMedia(PlatformError):
    code = "unknown_entity"


class UnknownLocale(PlatformError):
    code = "unknown_locale"


class KindMismatch(PlatformError):
    code = "kind_mismatch"


class UngradableKind(PlatformError):
    code = "ungradable_kind"


class IndexOutOfRange(PlatformError):
    code = "index_out_of_range"


class CardAlreadyMatched(PlatformError):
    code = "card_already_matched"


class CardAlreadyFaceUp(PlatformError):
    code = "card_already_face_up"


class SessionClosed(PlatformError):
    code = "session_closed"


class SessionOpen(PlatformError):
    code = "session_open"


class StoryTooShort(PlatformError):
    code = "story_too_short"


class ManifestSyntaxError(PlatformError):
    code = "manifest_syntax"


class ManifestSchemaError(PlatformError):
    code = "manifest_schema"

    def __init__(self, field_path: str, message: str | None = None):
        super().__init__(message or f"invalid or missing field: {field_path}", field=field_path)
        self.field_path = field_path


@dataclass(frozen=True)
class ValidationIssue:
    """One machine-readable finding: a stable code, where it was found, and prose."""

    code: str
    path: str
    message: str

    def to_dict(self) -> dict[str, str]:
        return {"code": self.code, "path": self.path, "message": self.message}


@dataclass
class ValidationReport:
    errors: list[ValidationIssue] = field(default_factory=list)
    warnings: list[ValidationIssue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def error(self, code: str, path: str, message: str) -> None:
        self.errors.append(ValidationIssue(code, path, message))

    def warn(self, code: str, path: str, message: str) -> None:
        self.warnings.append(ValidationIssue(code, path, message))

    def merge(self, other: "ValidationReport", prefix: str = "") -> None:
        """Fold another report into this one, optionally re-rooting its paths."""
        for issue in other.errors:
            self.errors.append(_reroot(issue, prefix))
        for issue in other.warnings:
            self.warnings.append(_reroot(issue, prefix))

    def codes(self) -> set[str]:
        return {issue.code for issue in self.errors}

    def to_dict(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "errors": [issue.to_dict() for issue in self.errors],
            "warnings": [issue.to_dict() for issue in self.warnings],
        }


def _reroot(issue: ValidationIssue, prefix: str) -> ValidationIssue:
    if not prefix:
        return issue
    path = f"{prefix}.{issue.path}" if issue.path else prefix
    return ValidationIssue(issue.code, path, issue.message)


class ValidationFailed(PlatformError):
    code = "validation_failed"

    def __init__(self, report: ValidationReport, message: str = "pack failed validation"):
        super().__init__(message, report=report.to_dict())
        self.report = report
