"""Command-line interface.

One binary, five verbs: build-model, gen-codebook, encode, decode, and eval
(with band, density, and distinguish subcommands). Exit codes: 0 success,
2 usage or I/O problems, 3 insufficient band occupancy, 4 steganization
failure. Every artifact written by --out embeds the seed, the settings, and
the tool version; rerunning a command with the same inputs rewrites the
same bytes except for the created_utc stamp.
"""

import argparse
import csv
import json
import sys
from datetime import datetime, timezone

from . import __version__
from .codebook import (
    DIGITS,
    band_words,
    format_band,
    load_codebook,
    parse_band,
    save_codebook,
    select_codebook,
)
from .codec import DEFAULT_MAX_ATTEMPTS, decode, steganize
from .corpus import load_corpus, scrub_message, tokenize
from .errors import InsufficientBandError, SteganizeError, WordstegError
from .evaluate import (
    build_pairs,
    distinguisher_accuracy,
    run_band_experiment,
    run_density_experiment,
)
from .ngram import DEFAULT_MAX_N, build_model, load_model, save_model


def _artifact(seed: int | None, config: dict, results) -> dict:
    return {
        "tool": "wordsteg",
        "tool_version": __version__,
        "seed": seed,
        "config": config,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "results": results,
    }


def _write_json(path, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(doc, handle, sort_keys=True, indent=2)
        handle.write("\n")


def _write_csv(path, fieldnames: list[str], rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def _emit_experiment(out_base: str | None, doc: dict, fieldnames: list[str]) -> None:
    """Write <base>.json and <base>.csv for an experiment, if requested."""
    if out_base is None:
        return
    _write_json(f"{out_base}.json", doc)
    _write_csv(f"{out_base}.csv", fieldnames, doc["results"])


def _print_rows(rows: list[dict], fieldnames: list[str], fmt: str) -> None:
    if fmt == "json":
        json.dump(rows, sys.stdout, sort_keys=True, indent=2)
        sys.stdout.write("\n")
    elif fmt == "csv":
        writer = csv.DictWriter(sys.stdout, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    else:
        widths = {f: max(len(f), *(len(str(r[f])) for r in rows)) for f in fieldnames}
        print("  ".join(f.ljust(widths[f]) for f in fieldnames))
        for row in rows:
            print("  ".join(str(row[f]).ljust(widths[f]) for f in fieldnames))


def cmd_build_model(args) -> int:
    corpus = load_corpus(args.corpus, limit=args.limit)
    model = build_model(corpus, max_n=args.max_n)
    save_model(model, args.out)
    print(
        f"messages={len(corpus)} vocabulary={model.vocab_size} "
        f"tokens={corpus.total_tokens} max_n={model.max_n}"
    )
    return 0


def cmd_gen_codebook(args) -> int:
    model = load_model(args.model)
    band = parse_band(args.band)
    occupancy = len(band_words(model, band))
    codebook = select_codebook(model, band, tuple(args.alphabet), seed=args.seed)
    save_codebook(codebook, args.out)
    print(
        f"band={format_band(band)} occupancy={occupancy} "
        f"selected={len(codebook.alphabet)} out={args.out}"
    )
    return 0


def cmd_encode(args) -> int:
    codebook = load_codebook(args.codebook)
    model = load_model(args.model)
    corpus = load_corpus(args.corpus, limit=args.limit)
    result = steganize(
        tuple(args.secret),
        codebook,
        model,
        corpus,
        seed=args.seed,
        validate=not args.no_validate,
        max_attempts=args.max_attempts,
    )
    print(" ".join(result.stego.tokens))
    if args.out:
        config = {
            "codebook": args.codebook,
            "corpus": args.corpus,
            "model": args.model,
            "secret_len": len(args.secret),
            "validate": not args.no_validate,
            "max_attempts": args.max_attempts,
        }
        _write_json(args.out, _artifact(args.seed, config, result.to_doc()))
    return 0


def cmd_decode(args) -> int:
    codebook = load_codebook(args.codebook)
    text = " ".join(args.text) if args.text else sys.stdin.read()
    symbols = decode(tokenize(scrub_message(text)), codebook)
    print("".join(symbols))
    return 0


def cmd_eval_band(args) -> int:
    corpus = load_corpus(args.corpus)
    model = load_model(args.model)
    bands = [parse_band(b) for b in args.bands.split(",")]
    rows = run_band_experiment(
        corpus,
        model,
        bands,
        alphabet=tuple(args.alphabet),
        trials=args.trials,
        secret_len=args.secret_len,
        seed=args.seed,
    )
    docs = [row.to_doc() for row in rows]
    fields = ["band", "trials", "errors", "failures", "skipped", "reason"]
    config = {
        "corpus": args.corpus,
        "model": args.model,
        "bands": args.bands,
        "alphabet": args.alphabet,
        "trials": args.trials,
        "secret_len": args.secret_len,
    }
    _emit_experiment(args.out, _artifact(args.seed, config, docs), fields)
    _print_rows(docs, fields, args.format)
    return 0


def cmd_eval_density(args) -> int:
    corpus = load_corpus(args.corpus)
    model = load_model(args.model)
    codebook = load_codebook(args.codebook)
    densities = [float(d) for d in args.densities.split(",")]
    points = run_density_experiment(
        corpus,
        model,
        codebook,
        densities,
        trials=args.trials,
        seed=args.seed,
        smoothing=args.smoothing,
    )
    docs = [point.to_doc() for point in points]
    fields = [
        "target_density",
        "realized_density",
        "trials",
        "kl_nats",
        "skipped",
        "reason",
    ]
    config = {
        "corpus": args.corpus,
        "model": args.model,
        "codebook": args.codebook,
        "densities": args.densities,
        "trials": args.trials,
        "smoothing": args.smoothing,
    }
    _emit_experiment(args.out, _artifact(args.seed, config, docs), fields)
    _print_rows(docs, fields, args.format)
    return 0


def cmd_eval_distinguish(args) -> int:
    corpus = load_corpus(args.corpus)
    model = load_model(args.model)
    codebook = load_codebook(args.codebook)
    pairs = build_pairs(
        corpus,
        model,
        codebook,
        n_pairs=args.trials,
        seed=args.seed,
        secret_len=args.secret_len,
        min_density=args.min_density,
    )
    accuracy = distinguisher_accuracy(model, pairs, seed=args.seed)
    doc = {
        "pairs": len(pairs),
        "correct": round(accuracy * len(pairs)),
        "accuracy": accuracy,
        "advantage": abs(2.0 * accuracy - 1.0),
    }
    fields = ["pairs", "correct", "accuracy", "advantage"]
    config = {
        "corpus": args.corpus,
        "model": args.model,
        "codebook": args.codebook,
        "secret_len": args.secret_len,
        "min_density": args.min_density,
        "trials": args.trials,
    }
    _emit_experiment(args.out, _artifact(args.seed, config, [doc]), fields)
    _print_rows([doc], fields, args.format)
    return 0


def _add_eval_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--corpus", required=True, help="line-delimited corpus file")
    parser.add_argument("--model", required=True, help="model file from build-model")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", help="base path; writes <out>.json and <out>.csv")
    parser.add_argument(
        "--format",
        choices=["table", "json", "csv"],
        default="table",
        help="stdout format for the summary",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wordsteg",
        description="Hide short symbol strings in natural-language cover messages.",
    )
    parser.add_argument(
        "--version", action="version", version=f"wordsteg {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-model", help="count n-grams over a corpus")
    p.add_argument("--corpus", required=True, help="line-delimited corpus file")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--limit", type=int, help="use at most this many messages")
    p.add_argument("--out", required=True, help="where to write the model JSON")
    p.set_defaults(func=cmd_build_model)

    p = sub.add_parser("gen-codebook", help="draw codewords from a frequency band")
    p.add_argument("--model", required=True)
    p.add_argument("--band", required=True, help="inclusive band, e.g. 4-6 or 14+")
    p.add_argument("--alphabet", default="".join(DIGITS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="where to write the codebook JSON")
    p.set_defaults(func=cmd_gen_codebook)

    p = sub.add_parser("encode", help="hide a secret in a drawn cover message")
    p.add_argument("--secret", required=True, help="symbol string, e.g. 21")
    p.add_argument("--codebook", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, help="use at most this many messages")
    p.add_argument("--max-attempts", type=int, default=DEFAULT_MAX_ATTEMPTS)
    p.add_argument(
        "--no-validate",
        action="store_true",
        help="skip cover rejection and the round-trip check",
    )
    p.add_argument("--out", help="also write the full result as JSON")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="extract the secret from stego text")
    p.add_argument("--codebook", required=True)
    p.add_argument("text", nargs="*", help="stego text; omit to read stdin")
    p.set_defaults(func=cmd_decode)

    ev = sub.add_parser("eval", help="measurement harness")
    ev_sub = ev.add_subparsers(dest="experiment", required=True)

    p = ev_sub.add_parser("band", help="decode errors per codeword frequency band")
    _add_eval_common(p)
    p.add_argument("--bands", default="4-6,6-8,8-12,14+", help="comma-separated bands")
    p.add_argument("--alphabet", default="".join(DIGITS))
    p.add_argument("--trials", type=int, default=2000, help="rounds per band")
    p.add_argument("--secret-len", type=int, default=2)
    p.set_defaults(func=cmd_eval_band)

    p = ev_sub.add_parser("density", help="distribution shift per codeword density")
    _add_eval_common(p)
    p.add_argument("--codebook", required=True)
    p.add_argument(
        "--densities", default="0.0,0.05,0.1,0.2,0.3", help="comma-separated targets"
    )
    p.add_argument("--trials", type=int, default=500, help="covers per density point")
    p.add_argument("--smoothing", type=float, default=1.0)
    p.set_defaults(func=cmd_eval_density)

    p = ev_sub.add_parser(
        "distinguish", help="accuracy of a plausibility-threshold observer"
    )
    _add_eval_common(p)
    p.add_argument("--codebook", required=True)
    p.add_argument("--trials", type=int, default=200, help="number of pairs")
    p.add_argument("--secret-len", type=int, default=2)
    p.add_argument(
        "--min-density",
        type=float,
        help="size each secret to reach at least this density",
    )
    p.set_defaults(func=cmd_eval_distinguish)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InsufficientBandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SteganizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (WordstegError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    raise SystemExit(main())
