from __future__ import annotations

import pytest

from braceforge.enumeration import corpus, corpus_braces
from braceforge.harness import constructed_examples


@pytest.fixture(scope="session")
def corpus8():
    return corpus(8)


@pytest.fixture(scope="session")
def corpus8_braces(corpus8):
    return corpus_braces(8)


@pytest.fixture(scope="session")
def examples():
    return constructed_examples()


@pytest.fixture(scope="session")
def small_braces():
    return corpus_braces(6)
