"""Measurement harness for the three quality axes of the insertion code.

Decodability: how often the receiver recovers the exact secret. Density:
what fraction of stego tokens are codewords. Detectability: how well a
statistical observer separates stego messages from covers. Every experiment
is driven by per-trial seeds derived from one master seed, so reruns with
the same inputs reproduce results exactly, in any execution order.
"""

import hashlib
import math
import random
from collections import Counter
from dataclasses import dataclass
from statistics import fmean
from typing import Mapping, Sequence

from .codebook import DIGITS, Band, Codebook, format_band, select_codebook
from .codec import (
    MIN_COVER_TOKENS,
    StegoResult,
    contains_codeword,
    decode,
    insert_codewords,
    steganize,
)
from .corpus import Corpus, Message
from .errors import InsufficientBandError, SteganizeError
from .ngram import NGramModel, smoothed_distribution

DEFAULT_DRAW_ATTEMPTS = 1000


def derive_seed(master: int, *labels) -> int:
    """Stable child seed for a labeled subtask of a master-seeded run."""
    material = ":".join([str(master), *map(str, labels)])
    digest = hashlib.sha256(material.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def density(result: StegoResult) -> float:
    """Fraction of stego tokens that are inserted codewords."""
    if not result.stego.tokens:
        raise ValueError("stego message has no tokens")
    return len(result.inserted_positions) / len(result.stego.tokens)


def random_secret(rng: random.Random, alphabet: Sequence[str], length: int) -> tuple:
    return tuple(rng.choice(alphabet) for _ in range(length))


@dataclass(frozen=True)
class EvalReport:
    """Summary of one decodability run."""

    trials: int
    errors: int
    decodability: float
    mean_density: float
    kl_nats: float | None = None
    distinguisher_accuracy: float | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.errors <= self.trials:
            raise ValueError("errors must lie in 0..trials")
        if not 0.0 <= self.decodability <= 1.0:
            raise ValueError("decodability must lie in [0, 1]")


def estimate_decodability(
    corpus: Corpus,
    model: NGramModel,
    codebook: Codebook,
    secret_len: int = 2,
    trials: int = 1000,
    seed: int = 0,
    validate: bool = True,
) -> EvalReport:
    """Round-trip random secrets and count the rounds that go wrong.

    An error is any round where the decoded sequence differs from the secret
    or steganize exhausts its attempt budget. With validate=True the only
    possible errors are exhaustions; with validate=False accidental
    codewords in covers produce real decode errors.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if secret_len < 0:
        raise ValueError("secret_len must be >= 0")
    secret_rng = random.Random(derive_seed(seed, "secrets"))
    errors = 0
    densities = []
    for trial in range(trials):
        secret = random_secret(secret_rng, codebook.alphabet, secret_len)
        try:
            result = steganize(
                secret,
                codebook,
                model,
                corpus,
                seed=derive_seed(seed, "trial", trial),
                validate=validate,
            )
        except SteganizeError:
            errors += 1
            continue
        densities.append(result.density)
        if decode(result.stego.tokens, codebook) != secret:
            errors += 1
    return EvalReport(
        trials=trials,
        errors=errors,
        decodability=1.0 - errors / trials,
        mean_density=fmean(densities) if densities else 0.0,
    )


def kl_divergence(p: Mapping[str, float], q: Mapping[str, float]) -> float:
    """Kullback-Leibler divergence sum(p * ln(p/q)) in nats.

    Requires identical supports and q > 0 wherever p > 0; zero-probability
    p entries contribute nothing.
    """
    if set(p) != set(q):
        raise ValueError("p and q must share the same support")
    total = 0.0
    for word, p_w in p.items():
        if p_w == 0.0:
            continue
        q_w = q[word]
        if q_w <= 0.0:
            raise ValueError(f"q({word!r}) = 0 where p > 0: divergence is infinite")
        total += p_w * math.log(p_w / q_w)
    return total


@dataclass(frozen=True)
class BandExperimentRow:
    """Raw decode-error tally for one codeword frequency band."""

    band: Band
    trials: int
    errors: int
    failures: int = 0
    skipped: bool = False
    reason: str | None = None

    def to_doc(self) -> dict:
        return {
            "band": format_band(self.band),
            "trials": self.trials,
            "errors": self.errors,
            "failures": self.failures,
            "skipped": self.skipped,
            "reason": self.reason,
        }


def run_band_experiment(
    corpus: Corpus,
    model: NGramModel,
    bands: Sequence[Band],
    alphabet: tuple[str, ...] = DIGITS,
    trials: int = 2000,
    secret_len: int = 2,
    seed: int = 0,
) -> list[BandExperimentRow]:
    """Measure raw decode errors as codeword frequency rises.

    Each band gets its own codebook and `trials` rounds of
    steganize(validate=False) followed by decode. Errors count exact-sequence
    mismatches; failures count attempt-budget exhaustions, separately. Bands
    too thin to fill a codebook are reported as skipped, not raised.
    """
    if not bands:
        raise ValueError("need at least one band")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rows = []
    for index, band in enumerate(bands):
        try:
            codebook = select_codebook(
                model, band, alphabet, seed=derive_seed(seed, "band", index)
            )
        except InsufficientBandError as exc:
            rows.append(
                BandExperimentRow(band, trials=0, errors=0, skipped=True, reason=str(exc))
            )
            continue
        secret_rng = random.Random(derive_seed(seed, "band", index, "secrets"))
        errors = 0
        failures = 0
        for trial in range(trials):
            secret = random_secret(secret_rng, codebook.alphabet, secret_len)
            try:
                result = steganize(
                    secret,
                    codebook,
                    model,
                    corpus,
                    seed=derive_seed(seed, "band", index, "trial", trial),
                    validate=False,
                )
            except SteganizeError:
                failures += 1
                continue
            if decode(result.stego.tokens, codebook) != secret:
                errors += 1
        rows.append(BandExperimentRow(band, trials=trials, errors=errors, failures=failures))
    return rows


@dataclass(frozen=True)
class DensityPoint:
    """Distribution shift measured at one target codeword density."""

    target_density: float
    trials: int
    kl_nats: float | None
    realized_density: float | None = None
    skipped: bool = False
    reason: str | None = None

    def to_doc(self) -> dict:
        return {
            "target_density": self.target_density,
            "trials": self.trials,
            "kl_nats": self.kl_nats,
            "realized_density": self.realized_density,
            "skipped": self.skipped,
            "reason": self.reason,
        }


def _insert_count(cover_len: int, target_density: float) -> int:
    """Codewords needed so k / (cover_len + k) lands nearest the target."""
    if target_density == 0.0:
        return 0
    exact = target_density * cover_len / (1.0 - target_density)
    return max(1, round(exact))


def _draw_clean_cover(
    rng: random.Random,
    eligible: Sequence[Message],
    codebook: Codebook,
    max_attempts: int,
) -> Message:
    """Uniform cover draw, rejecting covers that already hold codewords."""
    for _ in range(max_attempts):
        cover = eligible[rng.randrange(len(eligible))]
        if not contains_codeword(cover.tokens, codebook):
            return cover
    raise SteganizeError(max_attempts, "every drawn cover contained a codeword")


def run_density_experiment(
    corpus: Corpus,
    model: NGramModel,
    codebook: Codebook,
    densities: Sequence[float],
    trials: int = 500,
    seed: int = 0,
    smoothing: float = 1.0,
) -> list[DensityPoint]:
    """Trace distribution shift against codeword density.

    One cover sample of `trials` messages is drawn up front and reused for
    every density point, so differences between points come from insertions,
    not from resampling. For each point, every cover gets enough random
    codewords to approximate the target density (0.0 means none: the control
    point, whose divergence is pure sampling noise). The score per point is
    kl_divergence(corpus distribution, stego-set distribution), both
    additively smoothed over the union vocabulary.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    for target in densities:
        if not 0.0 <= target < 1.0:
            raise ValueError(f"target density {target} outside [0, 1)")
    eligible = [m for m in corpus.messages if len(m.tokens) >= MIN_COVER_TOKENS]
    points = []
    try:
        if not eligible:
            raise SteganizeError(0, f"no covers with >= {MIN_COVER_TOKENS} tokens")
        cover_rng = random.Random(derive_seed(seed, "covers"))
        covers = [
            _draw_clean_cover(cover_rng, eligible, codebook, DEFAULT_DRAW_ATTEMPTS)
            for _ in range(trials)
        ]
    except SteganizeError as exc:
        return [
            DensityPoint(target, trials=0, kl_nats=None, skipped=True, reason=str(exc))
            for target in densities
        ]
    for index, target in enumerate(densities):
        secret_rng = random.Random(derive_seed(seed, "density", index))
        stego_counts: Counter[str] = Counter()
        inserted_total = 0
        token_total = 0
        for cover in covers:
            wanted = _insert_count(len(cover.tokens), target)
            secret = random_secret(secret_rng, codebook.alphabet, wanted)
            words = [codebook.forward[s] for s in secret]
            stego_tokens, positions = insert_codewords(model, cover.tokens, words)
            stego_counts.update(stego_tokens)
            inserted_total += len(positions)
            token_total += len(stego_tokens)
        vocabulary = sorted(corpus.vocabulary.keys() | stego_counts.keys())
        p = smoothed_distribution(
            corpus.vocabulary, corpus.total_tokens, vocabulary, smoothing
        )
        q = smoothed_distribution(stego_counts, token_total, vocabulary, smoothing)
        points.append(
            DensityPoint(
                target_density=target,
                trials=trials,
                kl_nats=kl_divergence(p, q),
                realized_density=inserted_total / token_total,
            )
        )
    return points


def build_pairs(
    corpus: Corpus,
    model: NGramModel,
    codebook: Codebook,
    n_pairs: int,
    seed: int = 0,
    secret_len: int = 2,
    min_density: float | None = None,
) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Build (cover, stego) pairs for the distinguisher.

    secret_len fixes the number of inserted codewords per pair; secret_len=0
    yields identical pairs, the blind-guess baseline. min_density, when set,
    overrides secret_len and sizes each secret so the stego density reaches
    at least that value.
    """
    if n_pairs < 1:
        raise ValueError("n_pairs must be >= 1")
    if min_density is not None and not 0.0 <= min_density < 1.0:
        raise ValueError("min_density must lie in [0, 1)")
    eligible = [m for m in corpus.messages if len(m.tokens) >= MIN_COVER_TOKENS]
    if not eligible:
        raise SteganizeError(0, f"no covers with >= {MIN_COVER_TOKENS} tokens")
    pairs = []
    for index in range(n_pairs):
        rng = random.Random(derive_seed(seed, "pair", index))
        cover = _draw_clean_cover(rng, eligible, codebook, DEFAULT_DRAW_ATTEMPTS)
        if min_density is None:
            wanted = secret_len
        else:
            wanted = math.ceil(min_density * len(cover.tokens) / (1.0 - min_density))
        secret = random_secret(rng, codebook.alphabet, wanted)
        words = [codebook.forward[s] for s in secret]
        stego_tokens, _ = insert_codewords(model, cover.tokens, words)
        pairs.append((cover.tokens, stego_tokens))
    return pairs


def distinguisher_accuracy(
    model: NGramModel,
    pairs: Sequence[tuple[Sequence[str], Sequence[str]]],
    seed: int = 0,
) -> float:
    """Accuracy of a plausibility-threshold observer on (cover, stego) pairs.

    Each pair is shown in seeded random order and the member with the lower
    plausibility score is classified as the stego. 0.5 means the observer is
    blind; the scheme's detectability is the advantage above 0.5.
    """
    if not pairs:
        raise ValueError("need at least one pair")
    rng = random.Random(seed)
    correct = 0
    for cover_tokens, stego_tokens in pairs:
        stego_first = rng.random() < 0.5
        first, second = (
            (stego_tokens, cover_tokens) if stego_first else (cover_tokens, stego_tokens)
        )
        guess_first = model.plausibility_score(first) < model.plausibility_score(second)
        correct += guess_first == stego_first
    return correct / len(pairs)
