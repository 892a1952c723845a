import numpy as np
import pytest

from sqrtnfa import Nfa, RandomSpec, random_nfa, sqrt_nfa, witness


@pytest.fixture(scope="session")
def witness6() -> Nfa:
    return witness(6)


@pytest.fixture(scope="session")
def cube6(witness6) -> Nfa:
    return sqrt_nfa(witness6)


@pytest.fixture(scope="session")
def small_random():
    """Deterministic pool of small automata for oracle cross-checks."""
    return [
        random_nfa(RandomSpec(seed=200 + i, max_states=4, alphabet_size=3))
        for i in range(200)
    ]


def random_word(rng: np.random.Generator, sigma: int, max_len: int) -> tuple[int, ...]:
    length = int(rng.integers(0, max_len + 1))
    return tuple(int(rng.integers(0, sigma)) for _ in range(length))
