"""N-gram frequency model over a corpus.

Counts every n-gram of order 1..max_n inside message boundaries (no grams
span two messages) and answers the frequency queries the encoder and the
distinguisher share: raw counts, smoothed unigram distributions, and a
length-normalized plausibility score. All logarithms are natural.
"""

import json
import math
from collections import Counter
from typing import Iterable, Mapping, Sequence

from .corpus import Corpus
from .errors import FormatError

MODEL_FORMAT_VERSION = 1

# Orders above 3 are almost all singletons at the corpus sizes this tool
# targets (~1e5 short messages) and add nothing but memory.
DEFAULT_MAX_N = 3

Gram = tuple[str, ...]


class NGramModel:
    """Frozen count tables: counts[n] maps an n-gram tuple to its count."""

    def __init__(self, max_n: int, counts: dict[int, Counter], totals: dict[int, int]):
        self.max_n = max_n
        self.counts = counts
        self.totals = totals
        self.word_counts: Counter[str] = Counter(
            {gram[0]: c for gram, c in counts[1].items()}
        )

    @property
    def vocab_size(self) -> int:
        return len(self.word_counts)

    def count(self, gram: Sequence[str]) -> int:
        """Count of a gram; unseen grams count 0."""
        n = len(gram)
        if not 1 <= n <= self.max_n:
            raise ValueError(f"gram length {n} outside 1..{self.max_n}")
        return self.counts[n].get(tuple(gram), 0)

    def unigram_distribution(
        self, smoothing: float = 0.0, vocabulary: Iterable[str] | None = None
    ) -> dict[str, float]:
        """Maximum-likelihood unigram distribution with additive smoothing.

        p(w) = (count(w) + smoothing) / (total_tokens + smoothing * |V|).
        Pass a vocabulary that covers both corpora (and smoothing > 0) when
        the distribution will be compared against another corpus.
        """
        vocab = self.word_counts.keys() if vocabulary is None else vocabulary
        return smoothed_distribution(self.word_counts, self.totals[1], vocab, smoothing)

    def plausibility_score(self, tokens: Sequence[str]) -> float:
        """Mean log(1 + count) over every n-gram of the token sequence.

        Higher means the sequence is built from patterns the corpus actually
        uses. Normalizing by the gram count keeps sequences of different
        lengths comparable; log(1 + count) keeps unseen grams finite.
        """
        toks = tuple(tokens)
        if not toks:
            raise ValueError("cannot score an empty token sequence")
        total = 0.0
        grams = 0
        for n in range(1, self.max_n + 1):
            table = self.counts[n]
            for i in range(len(toks) - n + 1):
                total += math.log1p(table.get(toks[i : i + n], 0))
                grams += 1
        return total / grams


def build_model(corpus: Corpus, max_n: int = DEFAULT_MAX_N) -> NGramModel:
    """Count all n-grams of order 1..max_n, message by message."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    counts: dict[int, Counter] = {n: Counter() for n in range(1, max_n + 1)}
    for message in corpus.messages:
        toks = message.tokens
        for n in range(1, max_n + 1):
            table = counts[n]
            for i in range(len(toks) - n + 1):
                table[toks[i : i + n]] += 1
    totals = {n: counts[n].total() for n in range(1, max_n + 1)}
    return NGramModel(max_n, counts, totals)


def smoothed_distribution(
    counts: Mapping[str, int],
    total: int,
    vocabulary: Iterable[str],
    smoothing: float = 0.0,
) -> dict[str, float]:
    """Additively smoothed distribution of `counts` over `vocabulary`."""
    if smoothing < 0:
        raise ValueError("smoothing must be >= 0")
    vocab = list(vocabulary)
    denominator = total + smoothing * len(vocab)
    if denominator <= 0:
        raise ValueError("distribution has no probability mass")
    return {w: (counts.get(w, 0) + smoothing) / denominator for w in vocab}


def save_model(model: NGramModel, path) -> None:
    """Write the model as JSON. Counts round-trip exactly (they are ints)."""
    doc = {
        "version": MODEL_FORMAT_VERSION,
        "max_n": model.max_n,
        "totals": {str(n): model.totals[n] for n in model.totals},
        "counts": {
            str(n): sorted(
                [" ".join(gram), count] for gram, count in model.counts[n].items()
            )
            for n in model.counts
        },
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(doc, handle, sort_keys=True, separators=(",", ":"))


def load_model(path) -> NGramModel:
    """Read a model written by save_model. Malformed files raise FormatError."""
    with open(path, encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise FormatError(f"model file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("version") != MODEL_FORMAT_VERSION:
        raise FormatError("unsupported or missing model format version")
    try:
        max_n = int(doc["max_n"])
        counts: dict[int, Counter] = {}
        totals: dict[int, int] = {}
        for n in range(1, max_n + 1):
            table = Counter()
            for gram_text, count in doc["counts"][str(n)]:
                table[tuple(gram_text.split(" "))] = int(count)
            counts[n] = table
            totals[n] = int(doc["totals"][str(n)])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"model file is missing or corrupt: {exc}") from exc
    return NGramModel(max_n, counts, totals)
