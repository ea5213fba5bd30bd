"""Corpus ingestion: scrub raw messages, tokenize, index the vocabulary.

Raw records are one message per line (UTF-8). Scrubbing lowercases and
removes the token classes that cannot occur in spoken language, then strips
punctuation from whatever remains. Misspellings and other quirks are kept
as-is; they are part of the cover signal.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator
import unicodedata

from .errors import EmptyCorpusError


def _is_punctuation(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def scrub_message(raw: str) -> str:
    """Normalize one raw message into clean lowercase words.

    Whole tokens are dropped when they are @usernames, #hashtags, or URLs
    (contain "://" or start with "www."). Punctuation characters are stripped
    from the surviving tokens; digits stay. Applying scrub_message to its own
    output is a no-op.
    """
    kept = []
    for token in raw.lower().split():
        if token.startswith("@") or token.startswith("#"):
            continue
        if "://" in token or token.startswith("www."):
            continue
        word = "".join(ch for ch in token if not _is_punctuation(ch))
        if word:
            kept.append(word)
    return " ".join(kept)


def tokenize(text: str) -> list[str]:
    """Split scrubbed text on whitespace. No empty tokens, ever."""
    return text.split()


@dataclass(frozen=True, slots=True)
class Message:
    """One scrubbed message: a non-empty token tuple plus its source line."""

    tokens: tuple[str, ...]
    source_id: int


class Corpus:
    """Immutable collection of scrubbed messages with vocabulary counts."""

    def __init__(self, messages: Iterable[Message]):
        self.messages: tuple[Message, ...] = tuple(messages)
        if not self.messages:
            raise EmptyCorpusError("corpus contains no usable messages")
        vocabulary: Counter[str] = Counter()
        for message in self.messages:
            vocabulary.update(message.tokens)
        self.vocabulary = vocabulary
        self.total_tokens = vocabulary.total()

    def __len__(self) -> int:
        return len(self.messages)

    def __iter__(self) -> Iterator[Message]:
        return iter(self.messages)

    @classmethod
    def from_lines(cls, lines: Iterable[str], limit: int | None = None) -> "Corpus":
        """Scrub and tokenize raw lines, skipping any that scrub to nothing.

        source_id is the 1-based line number of the raw record. limit caps
        the number of usable messages kept, not the number of lines read.
        """
        messages = []
        for lineno, line in enumerate(lines, start=1):
            if limit is not None and len(messages) >= limit:
                break
            tokens = tokenize(scrub_message(line))
            if tokens:
                messages.append(Message(tuple(tokens), lineno))
        return cls(messages)


def load_corpus(path, limit: int | None = None) -> Corpus:
    """Read a line-delimited text file into a Corpus. I/O errors propagate."""
    with open(path, encoding="utf-8") as handle:
        return Corpus.from_lines(handle, limit=limit)
