"""The nine interactive exercise mechanics.

Exercises are plain data (a kind tag plus a kind-specific payload); this
module provides the pure functions around them: structural validation,
seeded presentation shuffling, grading, solution reveal, and the two
state machines (drag-to-reorder and memory cards). Nothing here has side
effects, so every function is safe under arbitrary concurrency.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Mapping, NamedTuple, Sequence

from .errors import (
    CardAlreadyFaceUp,
    CardAlreadyMatched,
    EmptyLemma,
    IndexOutOfRange,
    KindMismatch,
    NotInAlphabet,
    UngradableKind,
    ValidationReport,
)
from .lexicon import (
    FingerAlphabetGlyph,
    Language,
    MediaKind,
    MediaRef,
    alphabet,
    first_letter,
    normalize_lemma,
)


class ExerciseKind(str, Enum):
    LETTER_TEXT_ENTRY = "letter_text_entry"
    LETTER_MATCH = "letter_match"
    ORDERING = "ordering"
    HOVER_REVEAL = "hover_reveal"
    VIDEO_MULTIPLE_CHOICE = "video_multiple_choice"
    FIRST_LETTER_MATCH = "first_letter_match"
    STORYTELLING = "storytelling"
    MEMORY_CARDS = "memory_cards"
    INTERACTIVE_VIDEO = "interactive_video"


UNGRADED_KINDS = frozenset({ExerciseKind.HOVER_REVEAL, ExerciseKind.STORYTELLING})
STATEFUL_KINDS = frozenset({ExerciseKind.ORDERING, ExerciseKind.MEMORY_CARDS})


class Verdict(str, Enum):
    CORRECT = "correct"
    INCORRECT = "incorrect"
    UNGRADED = "ungraded"


# -- payloads -------------------------------------------------------------


@dataclass(frozen=True)
class LetterTextEntryPayload:
    """Show finger-alphabet glyphs; the learner types each letter."""

    items: tuple[FingerAlphabetGlyph, ...]
    answer_key: tuple[str, ...]


@dataclass(frozen=True)
class LetterMatchPayload:
    """Match written letters (left) to handshape glyphs (right)."""

    left: tuple[str, ...]
    right: tuple[FingerAlphabetGlyph, ...]
    answer_key: tuple[int, ...]  # answer_key[i] = right index paired with left[i]


@dataclass(frozen=True)
class OrderingPayload:
    """Arrange glyphs until the finger alphabet reads in alphabetical order."""

    items: tuple[FingerAlphabetGlyph, ...]
    answer_key: tuple[int, ...]  # item indices in solved (alphabetical) order


@dataclass(frozen=True)
class HoverRevealPayload:
    """Glyph board; moving the cursor over a glyph reveals its character."""

    items: tuple[FingerAlphabetGlyph, ...]


@dataclass(frozen=True)
class VideoMultipleChoicePayload:
    video: MediaRef
    options: tuple[str, ...]
    answer_key: int


@dataclass(frozen=True)
class Picture:
    """Image whose (hidden) word label anchors a first-letter pairing."""

    image: MediaRef
    word: str


@dataclass(frozen=True)
class FirstLetterMatchPayload:
    letters: tuple[FingerAlphabetGlyph, ...]
    pictures: tuple[Picture, ...]
    answer_key: tuple[int, ...]  # answer_key[i] = picture index for letters[i]


@dataclass(frozen=True)
class StorytellingPayload:
    prompt_videos: tuple[MediaRef, ...]
    min_length_chars: int = 1


@dataclass(frozen=True)
class MemoryPair:
    gsl: FingerAlphabetGlyph
    esl: FingerAlphabetGlyph


@dataclass(frozen=True)
class MemoryCardsPayload:
    pairs: tuple[MemoryPair, ...]

    @property
    def deck_size(self) -> int:
        return 2 * len(self.pairs)


@dataclass(frozen=True)
class Checkpoint:
    at_ms: int
    options: tuple[str, ...]
    answer_key: int


@dataclass(frozen=True)
class InteractiveVideoPayload:
    video: MediaRef
    checkpoints: tuple[Checkpoint, ...]


PAYLOAD_TYPES: dict[ExerciseKind, type] = {
    ExerciseKind.LETTER_TEXT_ENTRY: LetterTextEntryPayload,
    ExerciseKind.LETTER_MATCH: LetterMatchPayload,
    ExerciseKind.ORDERING: OrderingPayload,
    ExerciseKind.HOVER_REVEAL: HoverRevealPayload,
    ExerciseKind.VIDEO_MULTIPLE_CHOICE: VideoMultipleChoicePayload,
    ExerciseKind.FIRST_LETTER_MATCH: FirstLetterMatchPayload,
    ExerciseKind.STORYTELLING: StorytellingPayload,
    ExerciseKind.MEMORY_CARDS: MemoryCardsPayload,
    ExerciseKind.INTERACTIVE_VIDEO: InteractiveVideoPayload,
}

Payload = (
    LetterTextEntryPayload
    | LetterMatchPayload
    | OrderingPayload
    | HoverRevealPayload
    | VideoMultipleChoicePayload
    | FirstLetterMatchPayload
    | StorytellingPayload
    | MemoryCardsPayload
    | InteractiveVideoPayload
)


@dataclass(frozen=True)
class Exercise:
    id: str
    language: Language
    kind: ExerciseKind
    payload: Payload


# -- validation -----------------------------------------------------------


def validate_exercise(exercise: Exercise) -> ValidationReport:
    """Check every kind-specific structural invariant; report, don't raise."""
    report = ValidationReport()
    expected = PAYLOAD_TYPES[exercise.kind]
    if not isinstance(exercise.payload, expected):
        report.error(
            "PayloadKindMismatch",
            "payload",
            f"kind {exercise.kind.value} expects {expected.__name__}, "
            f"got {type(exercise.payload).__name__}",
        )
        return report
    _VALIDATORS[exercise.kind](exercise, report)
    return report


def _check_glyph_language(
    glyphs: Sequence[FingerAlphabetGlyph],
    language: Language,
    path: str,
    report: ValidationReport,
) -> None:
    for i, glyph in enumerate(glyphs):
        if glyph.language is not language:
            report.error(
                "GlyphLanguageMismatch",
                f"{path}[{i}]",
                f"glyph {glyph.letter!r} is {glyph.language.value}, exercise needs {language.value}",
            )


def _check_bijection(key: Sequence[int], size: int, path: str, report: ValidationReport) -> bool:
    if len(key) != size or sorted(key) != list(range(size)):
        report.error("NotABijection", path, f"answer_key must map {size} items one-to-one")
        return False
    return True


def _validate_letter_text_entry(exercise: Exercise, report: ValidationReport) -> None:
    p: LetterTextEntryPayload = exercise.payload
    if not p.items:
        report.error("TooFewItems", "items", "at least one item required")
    if len(p.answer_key) != len(p.items):
        report.error("LengthMismatch", "answer_key", "answer_key must match item count")
    letters = alphabet(exercise.language)
    for i, expected in enumerate(p.answer_key):
        if expected not in letters:
            report.error(
                "NotInAlphabet",
                f"answer_key[{i}]",
                f"{expected!r} is not a {exercise.language.value} letter",
            )
    _check_glyph_language(p.items, exercise.language, "items", report)


def _validate_letter_match(exercise: Exercise, report: ValidationReport) -> None:
    p: LetterMatchPayload = exercise.payload
    if len(p.left) < 2:
        report.error("TooFewItems", "left", "at least two letters required")
    if len(p.left) != len(p.right):
        report.error("LengthMismatch", "right", "left and right must be the same size")
    if len(set(p.left)) != len(p.left):
        report.error("DuplicateLetters", "left", "left letters must be distinct")
    right_letters = [g.letter for g in p.right]
    if len(set(right_letters)) != len(right_letters):
        report.error("DuplicateLetters", "right", "right glyph letters must be distinct")
    letters = alphabet(exercise.language)
    for i, letter in enumerate(p.left):
        if letter not in letters:
            report.error("NotInAlphabet", f"left[{i}]", f"{letter!r} is not a {exercise.language.value} letter")
    _check_glyph_language(p.right, exercise.language, "right", report)
    _check_bijection(p.answer_key, len(p.left), "answer_key", report)


def _validate_ordering(exercise: Exercise, report: ValidationReport) -> None:
    p: OrderingPayload = exercise.payload
    if len(p.items) < 2:
        report.error("TooFewItems", "items", "at least two items required")
    if sorted(p.answer_key) != list(range(len(p.items))):
        report.error("NotAPermutation", "answer_key", "answer_key must permute the items")
        return
    _check_glyph_language(p.items, exercise.language, "items", report)
    letters = alphabet(exercise.language)
    positions = []
    for idx in p.answer_key:
        letter = p.items[idx].letter
        if letter not in letters:
            return  # GlyphLanguageMismatch already reported
        positions.append(letters.index(letter))
    if positions != sorted(positions) or len(set(positions)) != len(positions):
        report.error(
            "NotAlphabeticalKey",
            "answer_key",
            "solved arrangement must list the glyphs in strict alphabetical order",
        )


def _validate_hover_reveal(exercise: Exercise, report: ValidationReport) -> None:
    p: HoverRevealPayload = exercise.payload
    if not p.items:
        report.error("TooFewItems", "items", "at least one item required")
    _check_glyph_language(p.items, exercise.language, "items", report)


def _validate_video_mcq(exercise: Exercise, report: ValidationReport) -> None:
    p: VideoMultipleChoicePayload = exercise.payload
    if p.video.kind is not MediaKind.VIDEO:
        report.error("WrongMediaKind", "video", "video media required")
    _validate_options(p.options, p.answer_key, "", report)


def _validate_options(options: Sequence[str], answer_key: int, path: str, report: ValidationReport) -> None:
    prefix = f"{path}." if path else ""
    if len(options) < 2:
        report.error("TooFewOptions", f"{prefix}options", "at least two options required")
    if len(set(options)) != len(options):
        report.error("DuplicateOptions", f"{prefix}options", "options must be pairwise distinct")
    if not 0 <= answer_key < len(options):
        report.error(
            "AnswerKeyOutOfRange",
            f"{prefix}answer_key",
            f"answer_key {answer_key} outside 0..{len(options) - 1}",
        )


def _validate_first_letter_match(exercise: Exercise, report: ValidationReport) -> None:
    p: FirstLetterMatchPayload = exercise.payload
    if exercise.language is not Language.ESL:
        report.error("WrongLanguage", "language", "first-letter matching uses the ESL finger alphabet")
    if len(p.letters) < 2:
        report.error("TooFewItems", "letters", "at least two letters required")
    if len(p.letters) != len(p.pictures):
        report.error("LengthMismatch", "pictures", "letters and pictures must be the same size")
    letter_values = [g.letter for g in p.letters]
    if len(set(letter_values)) != len(letter_values):
        report.error("DuplicateLetters", "letters", "letters must be distinct")
    _check_glyph_language(p.letters, Language.ESL, "letters", report)
    for i, picture in enumerate(p.pictures):
        if picture.image.kind is not MediaKind.IMAGE:
            report.error("WrongMediaKind", f"pictures[{i}].image", "image media required")
    if not _check_bijection(p.answer_key, len(p.letters), "answer_key", report):
        return
    if len(p.letters) != len(p.pictures):
        return
    for i, picture_index in enumerate(p.answer_key):
        word = p.pictures[picture_index].word
        try:
            initial = first_letter(word, Language.ESL)
        except (EmptyLemma, NotInAlphabet):
            report.error("InvalidWord", f"pictures[{picture_index}].word", f"{word!r} has no usable first letter")
            continue
        if initial != p.letters[i].letter:
            report.error(
                "FirstLetterMismatch",
                f"answer_key[{i}]",
                f"picture word {word!r} does not start with {p.letters[i].letter!r}",
            )


def _validate_storytelling(exercise: Exercise, report: ValidationReport) -> None:
    p: StorytellingPayload = exercise.payload
    if not p.prompt_videos:
        report.error("TooFewItems", "prompt_videos", "at least one prompt video required")
    for i, media in enumerate(p.prompt_videos):
        if media.kind is not MediaKind.VIDEO:
            report.error("WrongMediaKind", f"prompt_videos[{i}]", "video media required")
    if p.min_length_chars < 0:
        report.error("NegativeMinLength", "min_length_chars", "must be non-negative")


def _validate_memory_cards(exercise: Exercise, report: ValidationReport) -> None:
    p: MemoryCardsPayload = exercise.payload
    if len(p.pairs) < 2:
        report.error("TooFewPairs", "pairs", "at least two pairs required")
    gsl_letters: list[str] = []
    esl_letters: list[str] = []
    for i, pair in enumerate(p.pairs):
        if pair.gsl.language is not Language.GSL:
            report.error("GlyphLanguageMismatch", f"pairs[{i}].gsl", "left card must be a GSL glyph")
        if pair.esl.language is not Language.ESL:
            report.error("GlyphLanguageMismatch", f"pairs[{i}].esl", "right card must be an ESL glyph")
        gsl_letters.append(pair.gsl.letter)
        esl_letters.append(pair.esl.letter)
    if len(set(gsl_letters)) != len(gsl_letters) or len(set(esl_letters)) != len(esl_letters):
        report.error("DuplicatePairLetter", "pairs", "each letter may appear in at most one pair")


def _validate_interactive_video(exercise: Exercise, report: ValidationReport) -> None:
    p: InteractiveVideoPayload = exercise.payload
    if p.video.kind is not MediaKind.VIDEO:
        report.error("WrongMediaKind", "video", "video media required")
    if not p.checkpoints:
        report.error("TooFewItems", "checkpoints", "at least one checkpoint required")
        return
    previous = -1
    for i, checkpoint in enumerate(p.checkpoints):
        if checkpoint.at_ms <= previous:
            report.error(
                "CheckpointsNotIncreasing",
                f"checkpoints[{i}].at_ms",
                "timestamps must be strictly increasing",
            )
        previous = checkpoint.at_ms
        if (
            p.video.kind is MediaKind.VIDEO
            and p.video.duration_ms is not None
            and checkpoint.at_ms >= p.video.duration_ms
        ):
            report.error(
                "CheckpointBeyondDuration",
                f"checkpoints[{i}].at_ms",
                f"{checkpoint.at_ms} ms is not before the video end ({p.video.duration_ms} ms)",
            )
        _validate_options(checkpoint.options, checkpoint.answer_key, f"checkpoints[{i}]", report)


_VALIDATORS = {
    ExerciseKind.LETTER_TEXT_ENTRY: _validate_letter_text_entry,
    ExerciseKind.LETTER_MATCH: _validate_letter_match,
    ExerciseKind.ORDERING: _validate_ordering,
    ExerciseKind.HOVER_REVEAL: _validate_hover_reveal,
    ExerciseKind.VIDEO_MULTIPLE_CHOICE: _validate_video_mcq,
    ExerciseKind.FIRST_LETTER_MATCH: _validate_first_letter_match,
    ExerciseKind.STORYTELLING: _validate_storytelling,
    ExerciseKind.MEMORY_CARDS: _validate_memory_cards,
    ExerciseKind.INTERACTIVE_VIDEO: _validate_interactive_video,
}


# -- presentation shuffling ------------------------------------------------

# What the presentation order permutes, per kind.
PRESENTATION_TARGETS: dict[ExerciseKind, str] = {
    ExerciseKind.LETTER_TEXT_ENTRY: "items",
    ExerciseKind.LETTER_MATCH: "right",
    ExerciseKind.ORDERING: "items",
    ExerciseKind.HOVER_REVEAL: "items",
    ExerciseKind.VIDEO_MULTIPLE_CHOICE: "options",
    ExerciseKind.FIRST_LETTER_MATCH: "pictures",
    ExerciseKind.STORYTELLING: "prompt_videos",
    ExerciseKind.MEMORY_CARDS: "deck",
    ExerciseKind.INTERACTIVE_VIDEO: "checkpoints",
}

# Sequenced content keeps its authored order; only boards and option sets shuffle.
_IDENTITY_KINDS = frozenset({ExerciseKind.STORYTELLING, ExerciseKind.INTERACTIVE_VIDEO})


@dataclass(frozen=True)
class Presentation:
    """Deterministic display order: original indices of the target collection."""

    kind: ExerciseKind
    target: str
    order: tuple[int, ...]


def _presentation_size(exercise: Exercise) -> int:
    p = exercise.payload
    kind = exercise.kind
    if kind is ExerciseKind.LETTER_MATCH:
        return len(p.right)
    if kind is ExerciseKind.VIDEO_MULTIPLE_CHOICE:
        return len(p.options)
    if kind is ExerciseKind.FIRST_LETTER_MATCH:
        return len(p.pictures)
    if kind is ExerciseKind.STORYTELLING:
        return len(p.prompt_videos)
    if kind is ExerciseKind.MEMORY_CARDS:
        return p.deck_size
    if kind is ExerciseKind.INTERACTIVE_VIDEO:
        return len(p.checkpoints)
    return len(p.items)


def shuffle_presentation(exercise: Exercise, seed: int) -> Presentation:
    """Seeded display permutation; the answer key is never touched.

    For the ordering task the result is the starting arrangement and is
    guaranteed not to be the solved order.
    """
    size = _presentation_size(exercise)
    order = list(range(size))
    if exercise.kind not in _IDENTITY_KINDS and size > 1:
        rng = random.Random(f"{exercise.id}:{seed}")
        rng.shuffle(order)
        if exercise.kind is ExerciseKind.ORDERING:
            solved = list(exercise.payload.answer_key)
            while order == solved:
                rng.shuffle(order)
    return Presentation(exercise.kind, PRESENTATION_TARGETS[exercise.kind], tuple(order))


# -- submissions and grading ------------------------------------------------


@dataclass(frozen=True)
class Submission:
    """A learner's answers for one exercise; only the kind-matching field is read."""

    exercise_id: str
    kind: ExerciseKind
    answers: tuple[str | None, ...] | None = None  # letter_text_entry
    mapping: Mapping[int, int] | None = None  # letter_match / first_letter_match
    arrangement: tuple[int, ...] | None = None  # ordering
    option: int | None = None  # video_multiple_choice
    checkpoint_answers: tuple[int | None, ...] | None = None  # interactive_video
    story: str | None = None  # storytelling
    matched_pairs: frozenset[int] | None = None  # memory_cards, from server state


@dataclass(frozen=True)
class GradeReport:
    per_item: tuple[Verdict, ...]
    correct_count: int
    total: int
    revealed: bool = False


def _report(verdicts: Sequence[Verdict], revealed: bool = False) -> GradeReport:
    gradable = [v for v in verdicts if v is not Verdict.UNGRADED]
    return GradeReport(
        per_item=tuple(verdicts),
        correct_count=sum(1 for v in gradable if v is Verdict.CORRECT),
        total=len(gradable),
        revealed=revealed,
    )


def _verdict(condition: bool) -> Verdict:
    return Verdict.CORRECT if condition else Verdict.INCORRECT


def _grade_typed_letters(exercise: Exercise, submission: Submission) -> list[Verdict]:
    p: LetterTextEntryPayload = exercise.payload
    answers = submission.answers or ()
    verdicts = []
    for i, expected in enumerate(p.answer_key):
        typed = answers[i] if i < len(answers) else None
        if typed is None:
            verdicts.append(Verdict.INCORRECT)
            continue
        try:
            typed = normalize_lemma(typed, exercise.language)
        except EmptyLemma:
            verdicts.append(Verdict.INCORRECT)
            continue
        verdicts.append(_verdict(typed == expected))
    return verdicts


def _grade_mapping(answer_key: Sequence[int], mapping: Mapping[int, int] | None) -> list[Verdict]:
    chosen = mapping or {}
    return [_verdict(chosen.get(i) == expected) for i, expected in enumerate(answer_key)]


def grade(exercise: Exercise, submission: Submission) -> GradeReport:
    """Grade a submission; unanswered gradable items count as incorrect."""
    if submission.kind is not exercise.kind:
        raise KindMismatch(
            f"submission is {submission.kind.value}, exercise {exercise.id!r} is {exercise.kind.value}",
            expected=exercise.kind.value,
            got=submission.kind.value,
        )
    kind = exercise.kind
    p = exercise.payload

    if kind is ExerciseKind.HOVER_REVEAL:
        raise UngradableKind("hover boards have nothing to grade", kind=kind.value)
    if kind is ExerciseKind.STORYTELLING:
        return _report([Verdict.UNGRADED])

    if kind is ExerciseKind.LETTER_TEXT_ENTRY:
        return _report(_grade_typed_letters(exercise, submission))
    if kind in (ExerciseKind.LETTER_MATCH, ExerciseKind.FIRST_LETTER_MATCH):
        return _report(_grade_mapping(p.answer_key, submission.mapping))
    if kind is ExerciseKind.ORDERING:
        solved = submission.arrangement is not None and tuple(submission.arrangement) == p.answer_key
        return _report([_verdict(solved)])
    if kind is ExerciseKind.VIDEO_MULTIPLE_CHOICE:
        return _report([_verdict(submission.option == p.answer_key)])
    if kind is ExerciseKind.INTERACTIVE_VIDEO:
        answers = submission.checkpoint_answers or ()
        verdicts = [
            _verdict(i < len(answers) and answers[i] == cp.answer_key)
            for i, cp in enumerate(p.checkpoints)
        ]
        return _report(verdicts)
    if kind is ExerciseKind.MEMORY_CARDS:
        matched = submission.matched_pairs or frozenset()
        return _report([_verdict(i in matched) for i in range(len(p.pairs))])
    raise KindMismatch(f"unhandled exercise kind {kind!r}")  # pragma: no cover


def reveal_solution(exercise: Exercise) -> dict:
    """Answer key in displayable form; ungraded kinds have no solution."""
    kind = exercise.kind
    p = exercise.payload
    if kind in UNGRADED_KINDS:
        raise UngradableKind(f"{kind.value} has no solution to show", kind=kind.value)
    if kind is ExerciseKind.LETTER_TEXT_ENTRY:
        return {"letters": list(p.answer_key)}
    if kind in (ExerciseKind.LETTER_MATCH, ExerciseKind.FIRST_LETTER_MATCH):
        return {"mapping": list(p.answer_key)}
    if kind is ExerciseKind.ORDERING:
        return {
            "arrangement": list(p.answer_key),
            "letters": [p.items[i].letter for i in p.answer_key],
        }
    if kind is ExerciseKind.VIDEO_MULTIPLE_CHOICE:
        return {"option": p.answer_key, "text": p.options[p.answer_key]}
    if kind is ExerciseKind.MEMORY_CARDS:
        return {"pairs": [{"gsl": pair.gsl.letter, "esl": pair.esl.letter} for pair in p.pairs]}
    if kind is ExerciseKind.INTERACTIVE_VIDEO:
        return {
            "checkpoints": [
                {"option": cp.answer_key, "text": cp.options[cp.answer_key]}
                for cp in p.checkpoints
            ]
        }
    raise UngradableKind(f"unhandled exercise kind {kind!r}")  # pragma: no cover


# -- state machines ---------------------------------------------------------


@dataclass(frozen=True)
class OrderingState:
    """Current board of the reorder task: item indices in display order."""

    arrangement: tuple[int, ...]
    move_count: int = 0


def ordering_move(state: OrderingState, from_pos: int, to_pos: int) -> OrderingState:
    """Relocate one item; every gesture counts, including a no-op move."""
    size = len(state.arrangement)
    for name, pos in (("from", from_pos), ("to", to_pos)):
        if not 0 <= pos < size:
            raise IndexOutOfRange(f"{name} position {pos} outside 0..{size - 1}", position=pos)
    items = list(state.arrangement)
    items.insert(to_pos, items.pop(from_pos))
    return OrderingState(arrangement=tuple(items), move_count=state.move_count + 1)


class MemoryCard(NamedTuple):
    pair_index: int
    side: str  # "gsl" | "esl"


@dataclass(frozen=True)
class MemoryState:
    """Memory board: shuffled deck plus which positions are up or matched."""

    deck: tuple[MemoryCard, ...]
    face_up: tuple[int, ...] = ()
    matched: frozenset[int] = field(default_factory=frozenset)
    turn_count: int = 0

    @property
    def complete(self) -> bool:
        return len(self.matched) == len(self.deck)

    def matched_pair_indices(self) -> frozenset[int]:
        return frozenset(self.deck[pos].pair_index for pos in self.matched)


def build_deck(payload: MemoryCardsPayload, order: Sequence[int]) -> tuple[MemoryCard, ...]:
    """Lay out the 2·pairs cards following a presentation order."""
    canonical = []
    for i in range(len(payload.pairs)):
        canonical.append(MemoryCard(i, "gsl"))
        canonical.append(MemoryCard(i, "esl"))
    return tuple(canonical[pos] for pos in order)


def memory_flip(state: MemoryState, card: int) -> MemoryState:
    """Turn one card; the second flip of a turn either matches or hides both."""
    if not 0 <= card < len(state.deck):
        raise IndexOutOfRange(f"card {card} outside 0..{len(state.deck) - 1}", position=card)
    if card in state.matched:
        raise CardAlreadyMatched(f"card {card} is already matched", card=card)
    if card in state.face_up:
        raise CardAlreadyFaceUp(f"card {card} is already face up", card=card)
    turn_count = state.turn_count + 1
    if not state.face_up:
        return replace(state, face_up=(card,), turn_count=turn_count)
    other = state.face_up[0]
    if state.deck[other].pair_index == state.deck[card].pair_index:
        return replace(
            state,
            face_up=(),
            matched=state.matched | {other, card},
            turn_count=turn_count,
        )
    return replace(state, face_up=(), turn_count=turn_count)


EngineState = OrderingState | MemoryState


def initial_state(exercise: Exercise, presentation: Presentation) -> EngineState | None:
    """Fresh engine state for stateful kinds; None for everything else."""
    if exercise.kind is ExerciseKind.ORDERING:
        return OrderingState(arrangement=presentation.order)
    if exercise.kind is ExerciseKind.MEMORY_CARDS:
        return MemoryState(deck=build_deck(exercise.payload, presentation.order))
    return None


def is_complete(state: EngineState, exercise: Exercise) -> bool:
    if exercise.kind is ExerciseKind.MEMORY_CARDS:
        if not isinstance(state, MemoryState):
            raise KindMismatch("memory exercise needs a MemoryState")
        return state.complete
    if exercise.kind is ExerciseKind.ORDERING:
        if not isinstance(state, OrderingState):
            raise KindMismatch("ordering exercise needs an OrderingState")
        return state.arrangement == exercise.payload.answer_key
    raise KindMismatch(f"{exercise.kind.value} has no completion state", kind=exercise.kind.value)
