"""Anonymous learner sessions.

A session pins one exercise (and the content snapshot it came from), tracks
the engine state and counters while the learner plays, and settles exactly
once into a results summary. Sessions live in memory; per-session updates
are serialized with a lock so concurrent duplicate submits cannot produce
two summaries.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field, replace
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Any, Callable

from .errors import (
    KindMismatch,
    SessionClosed,
    SessionOpen,
    StoryTooShort,
    UnknownExercise,
    UnknownSession,
)
from .exercises import (
    Exercise,
    ExerciseKind,
    MemoryState,
    OrderingState,
    Presentation,
    Submission,
    grade,
    initial_state,
    memory_flip,
    ordering_move,
    reveal_solution,
    shuffle_presentation,
)


@dataclass(frozen=True)
class ResultsSummary:
    correct_count: int
    total: int
    percentage: Fraction  # exact; round only for display
    elapsed_ms: int
    revealed: bool
    moves_or_turns: int | None = None
    story_text: str | None = None
    per_item: tuple[str, ...] = ()

    def percentage_display(self) -> float:
        """Percentage rounded half-up to one decimal."""
        quantized = Decimal(self.percentage.numerator) / Decimal(self.percentage.denominator)
        return float(quantized.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))

    def to_dict(self) -> dict[str, Any]:
        return {
            "correct_count": self.correct_count,
            "total": self.total,
            "percentage": self.percentage_display(),
            "elapsed_ms": self.elapsed_ms,
            "revealed": self.revealed,
            "moves_or_turns": self.moves_or_turns,
            "story_text": self.story_text,
            "per_item": list(self.per_item),
        }


@dataclass(frozen=True)
class SessionEvent:
    """One learner action: 'flip' (card), 'move' (from/to) or 'reveal'."""

    type: str
    card: int | None = None
    from_pos: int | None = None
    to_pos: int | None = None


@dataclass
class Session:
    id: str
    exercise: Exercise
    seed: int
    presentation: Presentation
    state: MemoryState | OrderingState | None
    started_at: float  # epoch seconds
    revealed: bool = False
    finished_at: float | None = None
    summary: ResultsSummary | None = None
    _started_mono: float = field(default_factory=time.monotonic, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def open(self) -> bool:
        return self.finished_at is None

    def elapsed_ms(self) -> int:
        if self.summary is not None:
            return self.summary.elapsed_ms
        return max(0, int((time.monotonic() - self._started_mono) * 1000))

    def counter(self) -> int | None:
        if isinstance(self.state, OrderingState):
            return self.state.move_count
        if isinstance(self.state, MemoryState):
            return self.state.turn_count
        return None


@dataclass(frozen=True)
class EventOutcome:
    session: Session
    result: dict[str, Any] | None = None  # flip outcome or revealed solution


_EVENT_KINDS = {
    "flip": ExerciseKind.MEMORY_CARDS,
    "move": ExerciseKind.ORDERING,
}


class SessionStore:
    """Concurrent in-memory session registry with single-settlement submits."""

    def __init__(self, exercise_lookup: Callable[[str], Exercise | None]):
        self._lookup = exercise_lookup
        self._sessions: dict[str, Session] = {}
        self._registry_lock = threading.Lock()

    def start_session(self, exercise_id: str, seed: int | None = None) -> Session:
        exercise = self._lookup(exercise_id)
        if exercise is None:
            raise UnknownExercise(f"no exercise with id {exercise_id!r}", id=exercise_id)
        if seed is None:
            seed = uuid.uuid4().int & 0x7FFFFFFF
        presentation = shuffle_presentation(exercise, seed)
        session = Session(
            id=uuid.uuid4().hex,
            exercise=exercise,
            seed=seed,
            presentation=presentation,
            state=initial_state(exercise, presentation),
            started_at=time.time(),
        )
        with self._registry_lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSession(f"no session with id {session_id!r}", id=session_id)
        return session

    def apply_event(self, session_id: str, event: SessionEvent) -> EventOutcome:
        session = self.get(session_id)
        with session._lock:
            if not session.open:
                raise SessionClosed(f"session {session_id} is already settled", id=session_id)
            if event.type == "reveal":
                solution = reveal_solution(session.exercise)
                session.revealed = True
                return EventOutcome(session, {"solution": solution})
            if event.type not in _EVENT_KINDS:
                raise KindMismatch(f"unknown event type {event.type!r}", type=event.type)
            if session.exercise.kind is not _EVENT_KINDS[event.type]:
                raise KindMismatch(
                    f"{event.type!r} events do not apply to {session.exercise.kind.value}",
                    type=event.type,
                    kind=session.exercise.kind.value,
                )
            if event.type == "flip":
                if event.card is None:
                    raise KindMismatch("flip event needs a card index", type="flip")
                before: MemoryState = session.state
                after = memory_flip(before, event.card)
                session.state = after
                return EventOutcome(session, _flip_result(before, after, event.card))
            # move
            if event.from_pos is None or event.to_pos is None:
                raise KindMismatch("move event needs from/to positions", type="move")
            session.state = ordering_move(session.state, event.from_pos, event.to_pos)
            return EventOutcome(session)

    def submit(self, session_id: str, submission: Submission) -> ResultsSummary:
        session = self.get(session_id)
        with session._lock:
            if not session.open:
                raise SessionClosed(f"session {session_id} is already settled", id=session_id)
            exercise = session.exercise
            if submission.kind is not exercise.kind:
                raise KindMismatch(
                    f"submission is {submission.kind.value}, session plays {exercise.kind.value}",
                    expected=exercise.kind.value,
                    got=submission.kind.value,
                )
            submission = self._settle_stateful_fields(session, submission)
            story_text = None
            if exercise.kind is ExerciseKind.STORYTELLING:
                story_text = submission.story if submission.story is not None else ""
                if len(story_text) < exercise.payload.min_length_chars:
                    raise StoryTooShort(
                        f"story must be at least {exercise.payload.min_length_chars} characters",
                        min_length=exercise.payload.min_length_chars,
                        got=len(story_text),
                    )
            report = grade(exercise, submission)
            elapsed_ms = session.elapsed_ms()
            summary = ResultsSummary(
                correct_count=report.correct_count,
                total=report.total,
                percentage=(
                    Fraction(100 * report.correct_count, report.total)
                    if report.total
                    else Fraction(0)
                ),
                elapsed_ms=elapsed_ms,
                revealed=session.revealed,
                moves_or_turns=session.counter(),
                story_text=story_text,
                per_item=tuple(v.value for v in report.per_item),
            )
            session.summary = summary
            session.finished_at = session.started_at + elapsed_ms / 1000.0
            return summary

    def results(self, session_id: str) -> ResultsSummary:
        session = self.get(session_id)
        if session.summary is None:
            raise SessionOpen(f"session {session_id} has not been submitted yet", id=session_id)
        return session.summary

    @staticmethod
    def _settle_stateful_fields(session: Session, submission: Submission) -> Submission:
        """Server state is authoritative for the stateful mechanics."""
        if isinstance(session.state, MemoryState):
            return replace(submission, matched_pairs=session.state.matched_pair_indices())
        if isinstance(session.state, OrderingState) and submission.arrangement is None:
            return replace(submission, arrangement=session.state.arrangement)
        return submission


def _flip_result(before: MemoryState, after: MemoryState, card: int) -> dict[str, Any]:
    flipped = after.deck[card]
    if len(after.face_up) == 1:
        return {"card": card, "side": flipped.side, "matched": None, "hidden": []}
    other = before.face_up[0]
    matched = card in after.matched
    return {
        "card": card,
        "side": flipped.side,
        "matched": matched,
        "pair": [other, card] if matched else [],
        "hidden": [] if matched else [other, card],
    }
