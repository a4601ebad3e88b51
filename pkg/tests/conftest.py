import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # tests/oracles.py

from nerperturb.backend.client import BackendClient
from nerperturb.backend.stub import StubConfig, serve_stub
from nerperturb.corpus import read_conll
from nerperturb.wordnet import load_wordnet

DATA = Path(__file__).parent / "data"

POISON = "glorp"  # never occurs in the toy corpus
STUB_EMBED_DIM = 512


def load_lexicon() -> dict[str, str]:
    lexicon = {}
    for line in (DATA / "toy_lexicon.tsv").read_text(encoding="utf-8").splitlines():
        form, tag = line.split("\t")
        lexicon[form] = tag
    return lexicon


def load_vocab() -> tuple[str, ...]:
    return tuple((DATA / "stub_vocab.txt").read_text(encoding="utf-8").split())


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def toy_corpus():
    return read_conll(DATA / "toy50.conll")


@pytest.fixture(scope="session")
def toy_wordnet():
    return load_wordnet(DATA / "wordnet_toy")


@pytest.fixture(scope="session")
def stub_config() -> StubConfig:
    return StubConfig(
        vocab=load_vocab(),
        lexicon=load_lexicon(),
        poison_token=POISON,
        embed_dim=STUB_EMBED_DIM,
    )


@pytest.fixture(scope="session")
def stub_server(stub_config):
    server = serve_stub(stub_config)
    yield server
    server.close()


@pytest.fixture(scope="session")
def backend(stub_server) -> BackendClient:
    return BackendClient(stub_server.url)
