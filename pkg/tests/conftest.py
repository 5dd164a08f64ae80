import random

import pytest

from tautmat.corpus import builtin_matroid, corpus


@pytest.fixture
def rng():
    return random.Random(0xA5A5)


def fresh_rng(salt=0):
    return random.Random(0xA5A5 ^ salt)


@pytest.fixture
def small_corpus():
    """Every corpus matroid on at most 5 elements."""
    return corpus(5)


@pytest.fixture
def u24():
    return builtin_matroid("uniform_2_4")


@pytest.fixture
def k4():
    return builtin_matroid("k4")


@pytest.fixture
def fano():
    return builtin_matroid("fano")


@pytest.fixture
def vamos():
    return builtin_matroid("vamos")
