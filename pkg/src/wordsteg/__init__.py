"""wordsteg: hide short symbol strings inside natural-looking cover messages.

The toolkit counts n-gram statistics over a message corpus, draws a secret
codebook from a chosen word-frequency band, inserts one codeword per secret
symbol into a cover at the least-conspicuous positions, and measures how
decodable, dense, and detectable the results are.
"""

__version__ = "0.1.0"

from .codebook import (
    DIGITS,
    Band,
    Codebook,
    band_words,
    format_band,
    load_codebook,
    parse_band,
    save_codebook,
    select_codebook,
)
from .codec import (
    DEFAULT_MAX_ATTEMPTS,
    MIN_COVER_TOKENS,
    Secret,
    StegoResult,
    best_position,
    contains_codeword,
    decode,
    insert_codewords,
    insertion_score,
    steganize,
)
from .corpus import Corpus, Message, load_corpus, scrub_message, tokenize
from .errors import (
    CodebookValidationError,
    EmptyCorpusError,
    FormatError,
    InsufficientBandError,
    SteganizeError,
    WordstegError,
)
from .evaluate import (
    BandExperimentRow,
    DensityPoint,
    EvalReport,
    build_pairs,
    density,
    derive_seed,
    distinguisher_accuracy,
    estimate_decodability,
    kl_divergence,
    run_band_experiment,
    run_density_experiment,
)
from .ngram import (
    DEFAULT_MAX_N,
    NGramModel,
    build_model,
    load_model,
    save_model,
    smoothed_distribution,
)

__all__ = [
    "__version__",
    "Band",
    "BandExperimentRow",
    "Codebook",
    "CodebookValidationError",
    "Corpus",
    "DEFAULT_MAX_ATTEMPTS",
    "DEFAULT_MAX_N",
    "DIGITS",
    "DensityPoint",
    "EmptyCorpusError",
    "EvalReport",
    "FormatError",
    "InsufficientBandError",
    "Message",
    "MIN_COVER_TOKENS",
    "NGramModel",
    "Secret",
    "SteganizeError",
    "StegoResult",
    "WordstegError",
    "band_words",
    "best_position",
    "build_model",
    "build_pairs",
    "contains_codeword",
    "decode",
    "density",
    "derive_seed",
    "distinguisher_accuracy",
    "estimate_decodability",
    "format_band",
    "insert_codewords",
    "insertion_score",
    "kl_divergence",
    "load_codebook",
    "load_corpus",
    "load_model",
    "parse_band",
    "run_band_experiment",
    "run_density_experiment",
    "save_codebook",
    "save_model",
    "scrub_message",
    "select_codebook",
    "smoothed_distribution",
    "steganize",
    "tokenize",
]
