"""Synthetic demonstration pack.

Builds a complete, valid content pack with placeholder media: solid-color
clips and images with the label burned in. Real sign footage is licensed
content; these stubs let the whole platform (and its test suite) run
without it. Media generation needs Pillow/OpenCV, which are imported
lazily so the rest of the package stays importable without them.
"""

from __future__ import annotations

import json
import wave
from pathlib import Path

from .lexicon import GREEK_LETTERS, LATIN_LETTERS

_FONT_CANDIDATES = (
    "/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf",
    "/usr/share/fonts/TTF/DejaVuSans.ttf",
    "/Library/Fonts/Arial Unicode.ttf",
)

# (id-slug, lemma, letter group, gloss, has audio)
GSL_WORDS = [
    ("anthropos", "ΑΝΘΡΩΠΟΣ", "Α", "human", True),
    ("vivlio", "ΒΙΒΛΙΟ", "Β", "book", True),
    ("gata", "ΓΑΤΑ", "Γ", "cat", True),
    ("dentro", "ΔΕΝΤΡΟ", "Δ", "tree", False),
    ("elefantas", "ΕΛΕΦΑΝΤΑΣ", "Ε", "elephant", False),
    ("zoo", "ΖΩΟ", "Ζ", "animal", False),
    ("thalassa", "ΘΑΛΑΣΣΑ", "Θ", "sea", False),
    ("kalimera", "ΚΑΛΗΜΕΡΑ", "Κ", "good morning", True),
    ("milo", "ΜΗΛΟ", "Μ", "apple", True),
    ("nero", "ΝΕΡΟ", "Ν", "water", True),
    ("spiti", "ΣΠΙΤΙ", "Σ", "house", False),
    ("psomi", "ΨΩΜΙ", "Ψ", "bread", False),
]

ESL_WORDS = [
    ("ant", "ANT", "A", None, False),
    ("animal", "ANIMAL", "A", None, False),
    ("apple", "APPLE", "A", None, True),
    ("book", "BOOK", "B", None, True),
    ("bread", "BREAD", "B", None, False),
    ("cat", "CAT", "C", None, True),
    ("dog", "DOG", "D", None, False),
    ("elephant", "ELEPHANT", "E", None, False),
    ("house", "HOUSE", "H", None, False),
    ("human", "HUMAN", "H", None, True),
    ("sea", "SEA", "S", None, False),
    ("tree", "TREE", "T", None, False),
    ("water", "WATER", "W", None, True),
]

# gsl slug -> esl slug; kalimera, ant and dog stay untranslated on purpose
LINKS = [
    ("anthropos", "human"),
    ("vivlio", "book"),
    ("gata", "cat"),
    ("dentro", "tree"),
    ("elefantas", "elephant"),
    ("zoo", "animal"),
    ("thalassa", "sea"),
    ("milo", "apple"),
    ("nero", "water"),
    ("spiti", "house"),
    ("psomi", "bread"),
]

VIDEO_FPS = 8
VIDEO_FRAMES = 8  # 1000 ms clips
AUDIO_MS = 400


def _font(size: int):
    from PIL import ImageFont

    for candidate in _FONT_CANDIDATES:
        if Path(candidate).exists():
            return ImageFont.truetype(candidate, size)
    return ImageFont.load_default()


def _label_color(label: str) -> tuple[int, int, int]:
    h = sum(label.encode("utf-8")) * 37
    return (80 + h % 150, 80 + (h // 3) % 150, 80 + (h // 7) % 150)


def _label_image(label: str, size: tuple[int, int] = (96, 96)):
    from PIL import Image, ImageDraw

    image = Image.new("RGB", size, _label_color(label))
    draw = ImageDraw.Draw(image)
    font = _font(28 if len(label) <= 3 else 16)
    box = draw.textbbox((0, 0), label, font=font)
    position = ((size[0] - (box[2] - box[0])) // 2, (size[1] - (box[3] - box[1])) // 2)
    draw.text(position, label, fill=(20, 20, 20), font=font)
    return image


def _write_png(path: Path, label: str) -> None:
    _label_image(label).save(path, format="PNG")


def _write_video(path: Path, label: str, frames: int = VIDEO_FRAMES) -> int:
    """Stub clip with the label burned in; returns its duration in ms."""
    import cv2
    import numpy as np

    writer = cv2.VideoWriter(str(path), cv2.VideoWriter_fourcc(*"mp4v"), VIDEO_FPS, (96, 96))
    if not writer.isOpened():
        raise RuntimeError(f"cannot open video writer for {path}")
    base = _label_image(label)
    for i in range(frames):
        frame = np.asarray(base, dtype=np.uint8).copy()
        frame[:4, :, :] = (i * 255 // max(frames - 1, 1))  # progress strip
        writer.write(cv2.cvtColor(frame, cv2.COLOR_RGB2BGR))
    writer.release()
    return frames * 1000 // VIDEO_FPS


def _write_wav(path: Path, label: str, duration_ms: int = AUDIO_MS) -> int:
    import math

    rate = 16000
    samples = rate * duration_ms // 1000
    frequency = 220 + (sum(label.encode("utf-8")) % 440)
    with wave.open(str(path), "wb") as handle:
        handle.setnchannels(1)
        handle.setsampwidth(2)
        handle.setframerate(rate)
        payload = bytearray()
        for n in range(samples):
            value = int(12000 * math.sin(2 * math.pi * frequency * n / rate))
            payload += value.to_bytes(2, "little", signed=True)
        handle.writeframes(bytes(payload))
    return duration_ms


def build_sample_pack(dest: Path, with_media: bool = True) -> Path:
    """Write the sample pack under ``dest``; returns the pack directory."""
    dest = Path(dest)
    media_dir = dest / "media"
    media_dir.mkdir(parents=True, exist_ok=True)

    media: dict[str, dict] = {}

    def add_image(media_id: str, filename: str, label: str) -> str:
        if with_media:
            _write_png(media_dir / filename, label)
        media[media_id] = {"kind": "image", "path": f"media/{filename}"}
        return media_id

    def add_video(media_id: str, filename: str, label: str, frames: int = VIDEO_FRAMES) -> str:
        duration = frames * 1000 // VIDEO_FPS
        if with_media:
            duration = _write_video(media_dir / filename, label, frames)
        media[media_id] = {"kind": "video", "path": f"media/{filename}", "duration_ms": duration}
        return media_id

    def add_audio(media_id: str, filename: str, label: str) -> str:
        duration = AUDIO_MS
        if with_media:
            duration = _write_wav(media_dir / filename, label)
        media[media_id] = {"kind": "audio", "path": f"media/{filename}", "duration_ms": duration}
        return media_id

    glyphs = []
    for language, letters in (("GSL", GREEK_LETTERS), ("ESL", LATIN_LETTERS)):
        for index, letter in enumerate(letters):
            media_id = f"glyph-{language.lower()}-{index:02d}"
            add_image(media_id, f"{media_id}.png", letter)
            glyphs.append({"language": language, "letter": letter, "image": media_id})

    entries = []
    for language, words in (("GSL", GSL_WORDS), ("ESL", ESL_WORDS)):
        for slug, lemma, letter, gloss, has_audio in words:
            entry_id = f"{language.lower()}-{slug}"
            video_id = add_video(f"video-{entry_id}", f"video-{entry_id}.mp4", lemma)
            record = {
                "id": entry_id,
                "language": language,
                "lemma": lemma,
                "letter_group": letter,
                "sign_video": video_id,
            }
            if gloss:
                record["gloss"] = gloss
            if has_audio:
                record["pronunciation_audio"] = add_audio(
                    f"audio-{entry_id}", f"audio-{entry_id}.wav", lemma
                )
            entries.append(record)

    links = [{"gsl": f"gsl-{g}", "esl": f"esl-{e}"} for g, e in LINKS]

    for word in ("APPLE", "CAT", "DOG"):
        add_image(f"picture-{word.lower()}", f"picture-{word.lower()}.png", word)
    interactive_id = add_video("video-interactive-intro", "video-interactive-intro.mp4", "ΓΑΤΑ + ΝΕΡΟ", frames=32)

    exercises = [
        {
            "id": "gsl-type-the-letter",
            "language": "GSL",
            "kind": "letter_text_entry",
            "payload": {
                "items": ["Α", "Β", "Γ", "Δ", "Ε", "Ζ", "Θ", "Κ"],
                "answer_key": ["Α", "Β", "Γ", "Δ", "Ε", "Ζ", "Θ", "Κ"],
            },
        },
        {
            "id": "gsl-match-letter-to-sign",
            "language": "GSL",
            "kind": "letter_match",
            "payload": {
                "left": ["Α", "Β", "Γ", "Δ"],
                "right": ["Γ", "Α", "Δ", "Β"],
                "answer_key": [1, 3, 0, 2],
            },
        },
        {
            "id": "gsl-arrange-alphabet",
            "language": "GSL",
            "kind": "ordering",
            "payload": {
                "items": ["Γ", "Α", "Ε", "Β", "Δ"],
                "answer_key": [1, 3, 0, 4, 2],
            },
        },
        {
            "id": "esl-hover-the-letters",
            "language": "ESL",
            "kind": "hover_reveal",
            "payload": {"items": ["A", "B", "C", "D", "E", "F", "G", "H"]},
        },
        {
            "id": "gsl-what-does-this-sign-mean",
            "language": "GSL",
            "kind": "video_multiple_choice",
            "payload": {
                "video": "video-gsl-gata",
                "options": ["ΓΑΤΑ", "ΣΠΙΤΙ", "ΝΕΡΟ"],
                "answer_key": 0,
            },
        },
        {
            "id": "esl-first-letter-of-the-word",
            "language": "ESL",
            "kind": "first_letter_match",
            "payload": {
                "letters": ["A", "C", "D"],
                "pictures": [
                    {"image": "picture-apple", "word": "APPLE"},
                    {"image": "picture-cat", "word": "CAT"},
                    {"image": "picture-dog", "word": "DOG"},
                ],
                "answer_key": [0, 1, 2],
            },
        },
        {
            "id": "gsl-write-a-story",
            "language": "GSL",
            "kind": "storytelling",
            "payload": {
                "prompt_videos": ["video-gsl-gata", "video-gsl-spiti", "video-gsl-nero"],
                "min_length_chars": 1,
            },
        },
        {
            "id": "memory-greek-english-letters",
            "language": "GSL",
            "kind": "memory_cards",
            "payload": {
                "pairs": [
                    {"gsl": "Α", "esl": "A"},
                    {"gsl": "Β", "esl": "B"},
                    {"gsl": "Γ", "esl": "C"},
                    {"gsl": "Δ", "esl": "D"},
                ]
            },
        },
        {
            "id": "gsl-interactive-video",
            "language": "GSL",
            "kind": "interactive_video",
            "payload": {
                "video": interactive_id,
                "checkpoints": [
                    {"at_ms": 1000, "options": ["ΓΑΤΑ", "ΝΕΡΟ"], "answer_key": 0},
                    {"at_ms": 2500, "options": ["ΣΠΙΤΙ", "ΜΗΛΟ", "ΝΕΡΟ"], "answer_key": 2},
                ],
            },
        },
    ]

    locales = {
        "en": {
            "app.title": "Sign Language Learning",
            "menu.home": "Home",
            "menu.gsl": "Greek Sign Language",
            "menu.esl": "English Sign Language",
            "menu.translate": "GSL to ESL",
            "menu.contact": "Contact",
            "home.intro": "Learn the Greek and English sign alphabets, browse signs by letter, and practice with interactive tasks.",
            "lexicon.alphabet": "Alphabet",
            "lexicon.empty_group": "No words for this letter yet.",
            "lexicon.replay": "Replay video",
            "lexicon.pronunciation": "Play pronunciation",
            "lexicon.no_translation": "No translation available for this word.",
            "practice.title": "Practice",
            "practice.start": "Start",
            "task.check": "Check",
            "task.show_solution": "Show solution",
            "task.submit": "Finish task",
            "task.correct": "Correct!",
            "task.wrong": "Wrong, try again.",
            "task.moves": "Moves",
            "task.turns": "Card turns",
            "task.time": "Time",
            "task.story_placeholder": "Watch the signs, then write your own short story using them.",
            "results.title": "Your results",
            "results.score": "Score",
            "results.time": "Time spent",
            "results.moves": "Moves",
            "results.revealed": "Solution was shown",
            "results.story_saved": "Your story was saved.",
            "contact.title": "Contact the administrator",
            "contact.send": "Send message",
            "contact.sent": "Message stored. Thank you!",
        },
        "el": {
            "app.title": "Εκμάθηση Νοηματικής Γλώσσας",
            "menu.home": "Αρχική",
            "menu.gsl": "Ελληνική Νοηματική Γλώσσα",
            "menu.esl": "Αγγλική Νοηματική Γλώσσα",
            "menu.translate": "ΕΝΓ προς ΑΝΓ",
            "menu.contact": "Επικοινωνία",
            "home.intro": "Μάθετε τα δακτυλικά αλφάβητα, αναζητήστε νοήματα ανά γράμμα και εξασκηθείτε με διαδραστικές ασκήσεις.",
            "lexicon.alphabet": "Αλφάβητο",
            "lexicon.empty_group": "Δεν υπάρχουν λέξεις για αυτό το γράμμα ακόμη.",
            "lexicon.replay": "Επανάληψη βίντεο",
            "lexicon.pronunciation": "Αναπαραγωγή προφοράς",
            "lexicon.no_translation": "Δεν υπάρχει διαθέσιμη μετάφραση.",
            "practice.title": "Εξάσκηση",
            "practice.start": "Έναρξη",
            "task.check": "Έλεγχος",
            "task.show_solution": "Εμφάνιση λύσης",
            "task.submit": "Ολοκλήρωση",
            "task.correct": "Σωστό!",
            "task.wrong": "Λάθος, δοκιμάστε ξανά.",
            "task.moves": "Κινήσεις",
            "task.turns": "Γυρίσματα καρτών",
            "task.time": "Χρόνος",
            "task.story_placeholder": "Δείτε τα νοήματα και γράψτε τη δική σας μικρή ιστορία.",
            "results.title": "Τα αποτελέσματά σας",
            "results.score": "Βαθμολογία",
            "results.time": "Χρόνος",
            "results.moves": "Κινήσεις",
            "results.revealed": "Εμφανίστηκε η λύση",
            "results.story_saved": "Η ιστορία σας αποθηκεύτηκε.",
            "contact.title": "Επικοινωνία με τον διαχειριστή",
            "contact.send": "Αποστολή μηνύματος",
            "contact.sent": "Το μήνυμα αποθηκεύτηκε. Ευχαριστούμε!",
        },
        # deliberately partial: exercises the default-locale fallback
        "de": {
            "app.title": "Gebärdensprache lernen",
            "menu.home": "Startseite",
            "menu.contact": "Kontakt",
            "task.check": "Prüfen",
        },
    }

    manifest = {
        "pack_name": "signbridge-sample",
        "version": "1.0.0",
        "default_locale": "en",
        "entries": entries,
        "links": links,
        "glyphs": glyphs,
        "exercises": exercises,
        "media": media,
        "locales": locales,
    }
    (dest / "manifest.json").write_text(
        json.dumps(manifest, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    return dest
