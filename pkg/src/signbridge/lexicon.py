"""Bilingual sign vocabulary.

Holds the two finger alphabets, lemma normalization, letter-grouped sign
entries, finger-alphabet glyphs, and the symmetric translation links between
the Greek and English sides. Everything here is immutable once built, so a
:class:`Lexicon` can be shared freely across request handlers.
"""

from __future__ import annotations

import unicodedata
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import EmptyLemma, NotInAlphabet, UnknownEntry


class Language(str, Enum):
    """The two content languages of the platform."""

    GSL = "GSL"
    ESL = "ESL"


class MediaKind(str, Enum):
    VIDEO = "video"
    IMAGE = "image"
    AUDIO = "audio"


GREEK_LETTERS: tuple[str, ...] = tuple("ΑΒΓΔΕΖΗΘΙΚΛΜΝΞΟΠΡΣΤΥΦΧΨΩ")
LATIN_LETTERS: tuple[str, ...] = tuple("ABCDEFGHIJKLMNOPQRSTUVWXYZ")


@dataclass(frozen=True)
class Alphabet:
    language: Language
    letters: tuple[str, ...]

    def __contains__(self, letter: object) -> bool:
        return letter in self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def index(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise NotInAlphabet(
                f"{letter!r} is not a letter of the {self.language.value} alphabet",
                letter=letter,
                language=self.language.value,
            ) from None


_ALPHABETS = {
    Language.GSL: Alphabet(Language.GSL, GREEK_LETTERS),
    Language.ESL: Alphabet(Language.ESL, LATIN_LETTERS),
}


def alphabet(language: Language | str) -> Alphabet:
    """Return the fixed canonical alphabet for a language."""
    return _ALPHABETS[Language(language)]


def normalize_lemma(text: str, language: Language | str) -> str:
    """Canonical written form of a lemma: trimmed, upper-cased, accent-folded.

    Greek tonos/dialytika are removed and final sigma folds to Σ (so typed
    answers like "ς" still compare equal); runs of internal whitespace
    collapse to a single space.
    """
    collapsed = " ".join(text.split())
    if not collapsed:
        raise EmptyLemma("lemma is empty after trimming")
    # str.upper() already folds ς to Σ; decomposing afterwards lets us drop
    # the combining accent marks that survive upper-casing (Ά, Ϊ, ...).
    decomposed = unicodedata.normalize("NFD", collapsed.upper())
    bare = "".join(ch for ch in decomposed if unicodedata.category(ch) != "Mn")
    return unicodedata.normalize("NFC", bare)


def first_letter(lemma: str, language: Language | str) -> str:
    """Letter group a lemma belongs to: first character of its normalized form."""
    head = normalize_lemma(lemma, language)[0]
    if head not in alphabet(language):
        raise NotInAlphabet(
            f"{head!r} is not a letter of the {Language(language).value} alphabet",
            letter=head,
            language=Language(language).value,
        )
    return head


@dataclass(frozen=True)
class MediaRef:
    """Reference to one media asset shipped inside a content pack."""

    id: str
    kind: MediaKind
    uri: str
    duration_ms: int | None = None

    def __post_init__(self) -> None:
        if not self.uri:
            raise ValueError(f"media {self.id!r}: uri must be non-empty")
        timed = self.kind in (MediaKind.VIDEO, MediaKind.AUDIO)
        if timed:
            if self.duration_ms is None or self.duration_ms < 0:
                raise ValueError(
                    f"media {self.id!r}: {self.kind.value} needs a non-negative duration_ms"
                )
        elif self.duration_ms is not None:
            raise ValueError(f"media {self.id!r}: images cannot carry duration_ms")


@dataclass(frozen=True)
class SignEntry:
    """One lexeme: written lemma, its sign video, and optional pronunciation."""

    id: str
    language: Language
    lemma: str
    letter_group: str
    sign_video: MediaRef
    gloss: str | None = None
    pronunciation_audio: MediaRef | None = None

    def __post_init__(self) -> None:
        if self.sign_video.kind is not MediaKind.VIDEO:
            raise ValueError(f"entry {self.id!r}: sign_video must reference video media")
        if self.pronunciation_audio is not None and self.pronunciation_audio.kind is not MediaKind.AUDIO:
            raise ValueError(f"entry {self.id!r}: pronunciation_audio must reference audio media")
        expected = first_letter(self.lemma, self.language)
        if self.letter_group != expected:
            raise ValueError(
                f"entry {self.id!r}: letter_group {self.letter_group!r} does not match "
                f"lemma {self.lemma!r} (expected {expected!r})"
            )

    @property
    def normalized_lemma(self) -> str:
        return normalize_lemma(self.lemma, self.language)


@dataclass(frozen=True)
class TranslationLink:
    """Unordered pairing declaring two entries to be translations of each other."""

    gsl_entry: str
    esl_entry: str


@dataclass(frozen=True)
class FingerAlphabetGlyph:
    """Handshape image for one letter of one finger alphabet."""

    language: Language
    letter: str
    image: MediaRef

    def __post_init__(self) -> None:
        if self.image.kind is not MediaKind.IMAGE:
            raise ValueError(f"glyph {self.language.value}/{self.letter}: image media required")
        if self.letter not in alphabet(self.language):
            raise ValueError(
                f"glyph letter {self.letter!r} is not in the {self.language.value} alphabet"
            )


def _lemma_order(entry: SignEntry) -> tuple[str, str]:
    # Plain codepoint order over the normalized lemma; id breaks ties.
    return (entry.normalized_lemma, entry.id)


class Lexicon:
    """Immutable vocabulary snapshot answering all content queries.

    The constructor enforces referential integrity (raises ``ValueError``);
    content packs are validated with report-style errors before a Lexicon is
    ever built, so a raise here means a programming error, not bad content.
    """

    def __init__(
        self,
        entries: Iterable[SignEntry] = (),
        links: Iterable[TranslationLink] = (),
        glyphs: Iterable[FingerAlphabetGlyph] = (),
    ):
        self._entries: dict[str, SignEntry] = {}
        for entry in entries:
            if entry.id in self._entries:
                raise ValueError(f"duplicate entry id {entry.id!r}")
            self._entries[entry.id] = entry

        self._glyphs: dict[tuple[Language, str], FingerAlphabetGlyph] = {}
        for glyph in glyphs:
            key = (glyph.language, glyph.letter)
            if key in self._glyphs:
                raise ValueError(f"duplicate glyph for {glyph.language.value}/{glyph.letter}")
            self._glyphs[key] = glyph

        pairs: set[tuple[str, str]] = set()
        translations: dict[str, list[SignEntry]] = defaultdict(list)
        for link in links:
            gsl = self._entries.get(link.gsl_entry)
            esl = self._entries.get(link.esl_entry)
            if gsl is None or esl is None:
                raise ValueError(f"link ({link.gsl_entry!r}, {link.esl_entry!r}) references a missing entry")
            if gsl.language is not Language.GSL or esl.language is not Language.ESL:
                raise ValueError(f"link ({link.gsl_entry!r}, {link.esl_entry!r}) has sides in the wrong language")
            pair = (link.gsl_entry, link.esl_entry)
            if pair in pairs:
                raise ValueError(f"duplicate translation link {pair!r}")
            pairs.add(pair)
            translations[gsl.id].append(esl)
            translations[esl.id].append(gsl)
        self._links = frozenset(pairs)
        self._translations = {
            entry_id: tuple(sorted(targets, key=_lemma_order))
            for entry_id, targets in translations.items()
        }

        groups: dict[tuple[Language, str], list[SignEntry]] = defaultdict(list)
        for entry in self._entries.values():
            groups[(entry.language, entry.letter_group)].append(entry)
        self._groups = {
            key: tuple(sorted(members, key=_lemma_order)) for key, members in groups.items()
        }

    # -- queries ---------------------------------------------------------

    def entries(self, language: Language | str | None = None) -> tuple[SignEntry, ...]:
        if language is None:
            return tuple(sorted(self._entries.values(), key=_lemma_order))
        lang = Language(language)
        return tuple(
            sorted((e for e in self._entries.values() if e.language is lang), key=_lemma_order)
        )

    def entries_by_letter(self, language: Language | str, letter: str) -> tuple[SignEntry, ...]:
        lang = Language(language)
        if letter not in alphabet(lang):
            raise NotInAlphabet(
                f"{letter!r} is not a letter of the {lang.value} alphabet",
                letter=letter,
                language=lang.value,
            )
        return self._groups.get((lang, letter), ())

    def entry_detail(self, entry_id: str) -> SignEntry:
        entry = self._entries.get(entry_id)
        if entry is None:
            raise UnknownEntry(f"no sign entry with id {entry_id!r}", id=entry_id)
        return entry

    def translate(self, entry_id: str) -> tuple[SignEntry, ...]:
        self.entry_detail(entry_id)
        return self._translations.get(entry_id, ())

    def glyph(self, language: Language | str, letter: str) -> FingerAlphabetGlyph | None:
        return self._glyphs.get((Language(language), letter))

    def glyphs(self, language: Language | str) -> tuple[FingerAlphabetGlyph, ...]:
        lang = Language(language)
        found = (self._glyphs.get((lang, letter)) for letter in alphabet(lang).letters)
        return tuple(g for g in found if g is not None)

    @property
    def links(self) -> frozenset[tuple[str, str]]:
        return self._links

    def entry_count(self, language: Language | str | None = None) -> int:
        if language is None:
            return len(self._entries)
        lang = Language(language)
        return sum(1 for e in self._entries.values() if e.language is lang)
