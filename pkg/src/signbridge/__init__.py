"""Self-hostable active-learning platform for the Greek and English sign languages."""

__version__ = "0.1.0"

from .lexicon import (  # noqa: F401
    Language,
    Lexicon,
    alphabet,
    first_letter,
    normalize_lemma,
)
from .pack import ContentStore, export_pack, parse_manifest, validate_pack  # noqa: F401
