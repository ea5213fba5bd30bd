"""The shared-secret codebook: a bijection from symbols to codewords.

Codewords are drawn from a band of unigram frequency, because how common a
codeword is drives the whole quality trade-off: rare codewords almost never
collide with cover text but stick out statistically, common ones blend in
but show up in covers by accident. The saved codebook file IS the shared
secret; it travels out of band, never on the cover channel.
"""

import json
import math
import random
from dataclasses import dataclass
from functools import cached_property

from .errors import CodebookValidationError, FormatError, InsufficientBandError
from .ngram import NGramModel

CODEBOOK_FORMAT_VERSION = 1
DIGITS = tuple("0123456789")

# Inclusive occurrence-count band; hi=None means unbounded above.
Band = tuple[int, int | None]


def parse_band(text: str) -> Band:
    """Parse "4-6" into (4, 6) and "14+" into (14, None). Bounds inclusive."""
    s = text.strip()
    try:
        if s.endswith("+"):
            lo, hi = int(s[:-1]), None
        else:
            lo_text, sep, hi_text = s.partition("-")
            if not sep:
                raise ValueError
            lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise ValueError(f"band must look like 'lo-hi' or 'lo+', got {text!r}") from None
    if lo < 1 or (hi is not None and hi < lo):
        raise ValueError(f"band bounds out of order: {text!r}")
    return (lo, hi)


def format_band(band: Band) -> str:
    lo, hi = band
    return f"{lo}+" if hi is None else f"{lo}-{hi}"


@dataclass(frozen=True)
class Codebook:
    """Bijective symbol-to-codeword map plus the provenance of its draw."""

    alphabet: tuple[str, ...]
    forward: dict[str, str]
    band: Band
    seed: int

    def __post_init__(self):
        if set(self.forward) != set(self.alphabet):
            raise CodebookValidationError("mapped symbols do not match the alphabet")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise CodebookValidationError("alphabet contains duplicate symbols")
        words = list(self.forward.values())
        if len(set(words)) != len(words):
            raise CodebookValidationError("codewords are not distinct")
        for word in words:
            if not word or word.split() != [word]:
                raise CodebookValidationError(f"codeword {word!r} is not a single token")

    @cached_property
    def inverse(self) -> dict[str, str]:
        return {word: symbol for symbol, word in self.forward.items()}

    def map_symbol(self, symbol: str) -> str:
        try:
            return self.forward[symbol]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} is not in the alphabet") from None

    def unmap_word(self, word: str) -> str | None:
        """Symbol for a codeword, None for any other word."""
        return self.inverse.get(word)


def band_words(model: NGramModel, band: Band) -> list[str]:
    """All vocabulary words whose count falls inside the band, sorted."""
    lo, hi = band
    top = math.inf if hi is None else hi
    return sorted(w for w, c in model.word_counts.items() if lo <= c <= top)


def select_codebook(
    model: NGramModel,
    band: Band,
    alphabet: tuple[str, ...] = DIGITS,
    seed: int = 0,
) -> Codebook:
    """Sample one codeword per symbol, uniformly without replacement.

    The draw is deterministic in (model vocabulary, band, alphabet, seed).
    Raises InsufficientBandError when the band holds fewer words than the
    alphabet has symbols.
    """
    alphabet = tuple(alphabet)
    if not alphabet:
        raise ValueError("alphabet must contain at least one symbol")
    if len(set(alphabet)) != len(alphabet):
        raise ValueError("alphabet contains duplicate symbols")
    lo, hi = band
    if lo < 1 or (hi is not None and hi < lo):
        raise ValueError(f"invalid band {format_band(band)}")
    candidates = band_words(model, band)
    if len(candidates) < len(alphabet):
        raise InsufficientBandError(band, needed=len(alphabet), found=len(candidates))
    chosen = random.Random(seed).sample(candidates, len(alphabet))
    return Codebook(
        alphabet=alphabet,
        forward=dict(zip(alphabet, chosen)),
        band=(lo, hi),
        seed=seed,
    )


def save_codebook(codebook: Codebook, path) -> None:
    doc = {
        "version": CODEBOOK_FORMAT_VERSION,
        "alphabet": list(codebook.alphabet),
        "forward": codebook.forward,
        "band": list(codebook.band),
        "seed": codebook.seed,
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(doc, handle, sort_keys=True, indent=2)
        handle.write("\n")


def load_codebook(path) -> Codebook:
    """Read a codebook written by save_codebook.

    Malformed files raise FormatError; files that parse but violate an
    invariant (duplicate codewords, alphabet mismatch) raise
    CodebookValidationError.
    """
    with open(path, encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise FormatError(f"codebook file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("version") != CODEBOOK_FORMAT_VERSION:
        raise FormatError("unsupported or missing codebook format version")
    try:
        alphabet = tuple(str(s) for s in doc["alphabet"])
        forward = {str(k): str(v) for k, v in doc["forward"].items()}
        lo, hi = doc["band"]
        band = (int(lo), None if hi is None else int(hi))
        seed = int(doc["seed"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"codebook file is missing or corrupt: {exc}") from exc
    return Codebook(alphabet=alphabet, forward=forward, band=band, seed=seed)
