import itertools

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")


def all_words(letters: bytes, max_len: int):
    """Every non-empty string over ``letters`` up to ``max_len`` symbols."""
    for n in range(1, max_len + 1):
        for w in itertools.product(letters, repeat=n):
            yield bytes(w)


@pytest.fixture(scope="session")
def small_words():
    return list(all_words(b"ab", 8)) + list(all_words(b"abc", 5))
