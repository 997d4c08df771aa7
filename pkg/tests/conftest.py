import pytest

from ucsets import enumerate_union_closed, random_family

RANDOM_CORPUS_SIZE = 1000
RANDOM_CORPUS_M = 16
RANDOM_CORPUS_GENERATORS = 10
RANDOM_CORPUS_SEED = 42


@pytest.fixture(scope="session")
def separating_corpora():
    """Exhaustive separating union-closed corpora, m -> list, for m 0..4."""
    return {
        m: list(enumerate_union_closed(m, family_filter="separating"))
        for m in range(5)
    }


@pytest.fixture(scope="session")
def validated_corpora():
    """Exhaustive validated union-closed corpora, m -> list, for m 1..4."""
    return {
        m: list(enumerate_union_closed(m, family_filter="validated"))
        for m in range(1, 5)
    }


@pytest.fixture(scope="session")
def random_corpus():
    """The seeded 1000-family random corpus (m=16, generators=10, base seed 42)."""
    return [
        random_family(RANDOM_CORPUS_M, RANDOM_CORPUS_GENERATORS,
                      RANDOM_CORPUS_SEED + i)
        for i in range(RANDOM_CORPUS_SIZE)
    ]
