"""Encoder and decoder for the insertion code.

The encoder hides a secret by inserting one codeword per symbol into a cover
message drawn from the corpus. Each codeword goes into the inter-word slot
whose newly created n-grams are most frequent in the model, scanning left to
right so the receiver recovers symbol order with a single pass. Decoding is
a plain scan: every token that is a codeword contributes its symbol.

Correct decoding therefore requires that the cover itself contains no
codewords. With validate=True (the default) steganize rejects such covers
and re-draws, which also makes the round trip exact by construction. With
validate=False it embeds into the first cover drawn, so accidental codewords
corrupt the decoded secret; the evaluation harness uses that mode to measure
raw error rates.
"""

import math
import random
from dataclasses import dataclass
from typing import Sequence

from .codebook import Codebook
from .corpus import Corpus, Message
from .errors import SteganizeError
from .ngram import NGramModel

# A cover must offer at least two inter-word slots before any insertion.
MIN_COVER_TOKENS = 3
DEFAULT_MAX_ATTEMPTS = 1000

Secret = tuple[str, ...]


@dataclass(frozen=True)
class StegoResult:
    """One successful embedding.

    inserted_positions are indexes into stego.tokens, strictly increasing;
    attempts counts covers drawn, including the accepted one; density is
    inserted codewords over total stego tokens.
    """

    stego: Message
    cover: Message
    inserted_positions: tuple[int, ...]
    attempts: int
    density: float

    def to_doc(self) -> dict:
        return {
            "stego": " ".join(self.stego.tokens),
            "cover": " ".join(self.cover.tokens),
            "inserted_positions": list(self.inserted_positions),
            "attempts": self.attempts,
            "density": self.density,
        }


def contains_codeword(tokens: Sequence[str], codebook: Codebook) -> bool:
    return any(token in codebook.inverse for token in tokens)


def insertion_score(
    model: NGramModel, tokens: Sequence[str], position: int, word: str
) -> float:
    """How well `word` fits between tokens[position-1] and tokens[position].

    Sums log(1 + count) over every n-gram (2 <= n <= max_n) of the modified
    sequence that covers the inserted word. Unigrams are skipped: they score
    the word, not the position.
    """
    if not 1 <= position <= len(tokens) - 1:
        raise ValueError(
            f"position {position} outside 1..{len(tokens) - 1}: "
            "insertions go between existing words"
        )
    trial = list(tokens)
    trial.insert(position, word)
    score = 0.0
    for n in range(2, model.max_n + 1):
        table = model.counts[n]
        first = max(0, position - n + 1)
        last = min(position, len(trial) - n)
        for i in range(first, last + 1):
            score += math.log1p(table.get(tuple(trial[i : i + n]), 0))
    return score


def best_position(
    model: NGramModel, tokens: Sequence[str], word: str, min_position: int = 1
) -> int:
    """Highest-scoring insertion slot at or after min_position.

    Ties break toward the smallest index. Raises ValueError when no slot
    exists at or after min_position.
    """
    first = max(min_position, 1)
    last = len(tokens) - 1
    if first > last:
        raise ValueError(f"no insertion slot at or after position {min_position}")
    best = first
    best_score = -math.inf
    for position in range(first, last + 1):
        score = insertion_score(model, tokens, position, word)
        if score > best_score:
            best, best_score = position, score
    return best


def insert_codewords(
    model: NGramModel, tokens: Sequence[str], words: Sequence[str]
) -> tuple[tuple[str, ...], tuple[int, ...]]:
    """Insert words left to right, each strictly after the previous one.

    Returns the modified token tuple and the final index of every inserted
    word. Indexes stay valid because later insertions always land to the
    right of earlier ones.
    """
    out = list(tokens)
    positions = []
    min_position = 1
    for word in words:
        position = best_position(model, out, word, min_position)
        out.insert(position, word)
        positions.append(position)
        min_position = position + 1
    return tuple(out), tuple(positions)


def decode(tokens: Sequence[str], codebook: Codebook) -> Secret:
    """Extract the symbol sequence: one symbol per codeword token, in order."""
    return tuple(
        symbol
        for token in tokens
        if (symbol := codebook.unmap_word(token)) is not None
    )


def steganize(
    secret: Sequence[str],
    codebook: Codebook,
    model: NGramModel,
    covers: Corpus,
    seed: int,
    validate: bool = True,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> StegoResult:
    """Embed a secret into a randomly drawn cover message.

    Draws uniformly (seeded) from covers with at least MIN_COVER_TOKENS
    tokens, then inserts the codeword for each secret symbol in order. An
    empty secret returns the cover unchanged. With validate=True, covers
    already containing codewords are rejected and the round trip is checked
    before returning; with validate=False the first draw is used as-is.
    Raises SteganizeError when the attempt budget runs out.
    """
    symbols: Secret = tuple(secret)
    unknown = [s for s in symbols if s not in codebook.forward]
    if unknown:
        raise ValueError(f"secret symbols {unknown!r} are not in the alphabet")
    if max_attempts < 1:
        raise ValueError("max_attempts must be >= 1")
    words = [codebook.forward[s] for s in symbols]
    eligible = [m for m in covers.messages if len(m.tokens) >= MIN_COVER_TOKENS]
    if not eligible:
        raise SteganizeError(0, f"no covers with >= {MIN_COVER_TOKENS} tokens")
    rng = random.Random(seed)
    for attempt in range(1, max_attempts + 1):
        cover = eligible[rng.randrange(len(eligible))]
        if validate and contains_codeword(cover.tokens, codebook):
            continue
        stego_tokens, positions = insert_codewords(model, cover.tokens, words)
        if validate and decode(stego_tokens, codebook) != symbols:
            continue
        return StegoResult(
            stego=Message(stego_tokens, cover.source_id),
            cover=cover,
            inserted_positions=positions,
            attempts=attempt,
            density=len(positions) / len(stego_tokens),
        )
    raise SteganizeError(max_attempts)
