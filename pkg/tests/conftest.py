import pytest

from wordsteg import Codebook, Corpus, build_model

from synthcorpus import synth_lines

TOY_LINES = ["the cat sat", "the cat ran", "a cat sat"]


@pytest.fixture()
def toy_corpus():
    return Corpus.from_lines(TOY_LINES)


@pytest.fixture()
def toy_model(toy_corpus):
    return build_model(toy_corpus, max_n=2)


@pytest.fixture()
def two_word_codebook():
    # The running example used throughout the docs: 2 -> good, 1 -> really.
    return Codebook(
        alphabet=("1", "2"),
        forward={"2": "good", "1": "really"},
        band=(1, None),
        seed=0,
    )


@pytest.fixture(scope="session")
def desk_corpus():
    return Corpus.from_lines(synth_lines())


@pytest.fixture(scope="session")
def desk_model(desk_corpus):
    return build_model(desk_corpus, max_n=3)


@pytest.fixture(scope="session")
def small_corpus():
    return Corpus.from_lines(synth_lines(n_messages=400, seed=3, vocab_size=500))


@pytest.fixture(scope="session")
def small_model(small_corpus):
    return build_model(small_corpus, max_n=3)


@pytest.fixture(scope="session")
def small_corpus_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("corpus") / "small.txt"
    lines = synth_lines(n_messages=800, seed=7, vocab_size=900)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
