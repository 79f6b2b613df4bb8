import os

import pytest
from hypothesis import HealthCheck, settings

from memtag.corpus import read_corpus
from memtag.synth import SynthConfig, synth_corpus

settings.register_profile(
    "suite", deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
F1_PATH = os.path.join(DATA_DIR, "f1.tagged")

# The first sentence of the WSJ as printed in the case-representation
# tables, with the lexicon tags those tables assume ("old" is jj-np there:
# more often jj than np in the full corpus).
PV_SENTENCE = (
    "Pierre/np Vinken/np ,/, 61/cd years/nns old/jj ,/, will/md join/vb "
    "the/dt board/nn as/in a/dt nonexecutive/jj director/nn nov./np 29/cd ./.")
PV_LEXICON = {
    "Pierre": {"np": 1}, "Vinken": {"np": 1}, ",": {",": 2}, "61": {"cd": 1},
    "years": {"nns": 1}, "old": {"jj": 2, "np": 1}, "will": {"md": 1},
    "join": {"vb": 1}, "the": {"dt": 1}, "board": {"nn": 1}, "as": {"in": 1},
    "a": {"dt": 1}, "nonexecutive": {"jj": 1}, "director": {"nn": 1},
    "nov.": {"np": 1}, "29": {"cd": 1}, ".": {".": 1},
}


@pytest.fixture(scope="session")
def f1():
    return read_corpus(F1_PATH)


@pytest.fixture(scope="session")
def synth_small():
    return synth_corpus(SynthConfig(n_tokens=8_000, seed=11))


@pytest.fixture(scope="session")
def synth_medium():
    return synth_corpus(SynthConfig(n_tokens=30_000, seed=7))


@pytest.fixture(scope="session")
def synth_100k():
    return synth_corpus(SynthConfig(n_tokens=105_000, seed=3))


@pytest.fixture(scope="session")
def synth_300k():
    return synth_corpus(SynthConfig(n_tokens=300_000, seed=5))
