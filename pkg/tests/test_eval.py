import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordsteg import (
    DIGITS,
    EvalReport,
    build_pairs,
    density,
    derive_seed,
    distinguisher_accuracy,
    estimate_decodability,
    kl_divergence,
    run_band_experiment,
    run_density_experiment,
    select_codebook,
    steganize,
)


def test_derive_seed_is_stable_and_label_sensitive():
    assert derive_seed(1, "a") == derive_seed(1, "a")
    assert derive_seed(1, "a") != derive_seed(1, "b")
    assert derive_seed(1, "a") != derive_seed(2, "a")
    assert derive_seed(1, "a", 0) != derive_seed(1, "a", 1)


def test_density_matches_inserted_fraction(small_corpus, small_model):
    codebook = select_codebook(small_model, (4, 8), DIGITS, seed=1)
    result = steganize("123", codebook, small_model, small_corpus, seed=6)
    expected = 3 / len(result.stego.tokens)
    assert density(result) == pytest.approx(expected)
    assert result.density == pytest.approx(expected)


def test_kl_of_identical_distributions_is_zero():
    p = {"a": 0.2, "b": 0.5, "c": 0.3}
    assert kl_divergence(p, p) == 0.0


def test_kl_hand_computed_two_point_value():
    assert kl_divergence({"a": 1.0, "b": 0.0}, {"a": 0.5, "b": 0.5}) == pytest.approx(
        math.log(2), abs=1e-12
    )


def test_kl_ignores_zero_probability_entries():
    p = {"a": 1.0, "b": 0.0}
    q = {"a": 0.9, "b": 0.1}
    assert kl_divergence(p, q) == pytest.approx(math.log(1 / 0.9))


def test_kl_rejects_support_mismatch():
    with pytest.raises(ValueError):
        kl_divergence({"a": 1.0}, {"b": 1.0})


def test_kl_rejects_zero_q_where_p_positive():
    with pytest.raises(ValueError):
        kl_divergence({"a": 0.5, "b": 0.5}, {"a": 1.0, "b": 0.0})


@given(
    weights=st.lists(
        st.tuples(
            st.floats(min_value=0.01, max_value=10.0),
            st.floats(min_value=0.01, max_value=10.0),
        ),
        min_size=2,
        max_size=12,
    )
)
def test_kl_is_nonnegative(weights):
    p_total = sum(w for w, _ in weights)
    q_total = sum(w for _, w in weights)
    p = {str(i): w / p_total for i, (w, _) in enumerate(weights)}
    q = {str(i): w / q_total for i, (_, w) in enumerate(weights)}
    assert kl_divergence(p, q) >= -1e-12


def test_eval_report_validates_ranges():
    with pytest.raises(ValueError):
        EvalReport(trials=0, errors=0, decodability=1.0, mean_density=0.0)
    with pytest.raises(ValueError):
        EvalReport(trials=5, errors=6, decodability=0.0, mean_density=0.0)
    with pytest.raises(ValueError):
        EvalReport(trials=5, errors=0, decodability=1.5, mean_density=0.0)


def test_decodability_is_perfect_with_validation(small_corpus, small_model):
    codebook = select_codebook(small_model, (4, 8), DIGITS, seed=1)
    report = estimate_decodability(
        small_corpus, small_model, codebook, secret_len=2, trials=80, seed=0
    )
    assert report.errors == 0
    assert report.decodability == 1.0
    assert 0.0 < report.mean_density < 1.0


def test_decodability_drops_without_validation(small_corpus, small_model):
    # Codewords this common appear in most covers, so blind embedding
    # produces plenty of decode errors.
    codebook = select_codebook(small_model, (30, None), DIGITS, seed=1)
    report = estimate_decodability(
        small_corpus,
        small_model,
        codebook,
        secret_len=2,
        trials=150,
        seed=0,
        validate=False,
    )
    assert report.errors > 0
    assert report.decodability < 1.0


def test_decodability_with_empty_secrets(small_corpus, small_model):
    codebook = select_codebook(small_model, (4, 8), DIGITS, seed=1)
    report = estimate_decodability(
        small_corpus, small_model, codebook, secret_len=0, trials=10, seed=0
    )
    assert report.decodability == 1.0
    assert report.mean_density == 0.0


def test_band_experiment_reports_each_band(small_corpus, small_model):
    bands = [(2, 4), (30, None)]
    rows = run_band_experiment(
        small_corpus, small_model, bands, DIGITS, trials=150, secret_len=2, seed=0
    )
    assert [row.band for row in rows] == bands
    assert all(row.trials == 150 and not row.skipped for row in rows)
    assert rows[0].errors <= rows[1].errors
    assert rows[1].errors > 0


def test_band_experiment_skips_impossible_bands(small_corpus, small_model):
    rows = run_band_experiment(
        small_corpus,
        small_model,
        [(10_000, None), (2, 4)],
        DIGITS,
        trials=20,
        secret_len=1,
        seed=0,
    )
    assert rows[0].skipped and rows[0].reason
    assert rows[0].trials == 0 and rows[0].errors == 0
    assert not rows[1].skipped


def test_band_experiment_is_deterministic(small_corpus, small_model):
    kwargs = dict(trials=40, secret_len=2, seed=17)
    first = run_band_experiment(
        small_corpus, small_model, [(2, 4), (8, None)], DIGITS, **kwargs
    )
    again = run_band_experiment(
        small_corpus, small_model, [(2, 4), (8, None)], DIGITS, **kwargs
    )
    assert first == again


def test_density_experiment_tracks_targets(small_corpus, small_model):
    # Rare codewords, so packing them in can only push the stego set away
    # from the corpus distribution.
    codebook = select_codebook(small_model, (4, 8), DIGITS, seed=2)
    points = run_density_experiment(
        small_corpus,
        small_model,
        codebook,
        [0.0, 0.1, 0.3],
        trials=60,
        seed=0,
        smoothing=1.0,
    )
    assert [p.target_density for p in points] == [0.0, 0.1, 0.3]
    assert points[0].realized_density == 0.0
    assert all(p.kl_nats >= 0.0 for p in points)
    for point, target in zip(points[1:], (0.1, 0.3)):
        assert point.realized_density == pytest.approx(target, abs=0.05)
    assert points[2].kl_nats > points[0].kl_nats


def test_density_experiment_is_deterministic(small_corpus, small_model):
    codebook = select_codebook(small_model, (8, None), DIGITS, seed=2)
    args = (small_corpus, small_model, codebook, [0.0, 0.2])
    first = run_density_experiment(*args, trials=30, seed=3)
    again = run_density_experiment(*args, trials=30, seed=3)
    assert first == again


def test_density_experiment_rejects_bad_targets(small_corpus, small_model):
    codebook = select_codebook(small_model, (8, None), DIGITS, seed=2)
    with pytest.raises(ValueError):
        run_density_experiment(small_corpus, small_model, codebook, [1.0], trials=5)
    with pytest.raises(ValueError):
        run_density_experiment(small_corpus, small_model, codebook, [-0.1], trials=5)


def test_density_experiment_unsmoothed_sparse_sample_raises(small_corpus, small_model):
    # A small sample misses vocabulary words, so with no smoothing the
    # divergence is undefined and the domain error surfaces.
    codebook = select_codebook(small_model, (8, None), DIGITS, seed=2)
    with pytest.raises(ValueError):
        run_density_experiment(
            small_corpus, small_model, codebook, [0.1], trials=5, smoothing=0.0
        )


def test_build_pairs_identical_when_secret_len_zero(small_corpus, small_model):
    codebook = select_codebook(small_model, (4, 8), DIGITS, seed=1)
    pairs = build_pairs(small_corpus, small_model, codebook, 12, seed=0, secret_len=0)
    assert len(pairs) == 12
    assert all(cover == stego for cover, stego in pairs)


def test_build_pairs_reaches_min_density(small_corpus, small_model):
    codebook = select_codebook(small_model, (4, 8), DIGITS, seed=1)
    pairs = build_pairs(
        small_corpus, small_model, codebook, 12, seed=0, min_density=0.3
    )
    for cover, stego in pairs:
        inserted = len(stego) - len(cover)
        assert inserted / len(stego) >= 0.3


def test_distinguisher_is_blind_on_identical_pairs(small_corpus, small_model):
    pairs = [(m.tokens, m.tokens) for m in small_corpus.messages]
    accuracy = distinguisher_accuracy(small_model, pairs, seed=5)
    assert 0.35 <= accuracy <= 0.65


def test_distinguisher_spots_rare_word_insertions(small_corpus, small_model):
    codebook = select_codebook(small_model, (4, 6), DIGITS, seed=1)
    pairs = build_pairs(
        small_corpus, small_model, codebook, 60, seed=0, min_density=0.3
    )
    accuracy = distinguisher_accuracy(small_model, pairs, seed=1)
    assert accuracy > 0.7


def test_distinguisher_rejects_empty_input(small_model):
    with pytest.raises(ValueError):
        distinguisher_accuracy(small_model, [], seed=0)


def test_distinguisher_is_deterministic(small_corpus, small_model):
    pairs = [(m.tokens, m.tokens) for m in small_corpus.messages[:50]]
    first = distinguisher_accuracy(small_model, pairs, seed=9)
    again = distinguisher_accuracy(small_model, pairs, seed=9)
    assert first == again
