import numpy as np
import pytest

from noisygrover.circuit import build_grover_circuit, sample_noise


@pytest.fixture(scope="session")
def circuit_cache():
    cache = {}

    def get(L, target=None):
        key = (L, target)
        if key not in cache:
            cache[key] = build_grover_circuit(L, target)
        return cache[key]

    return get


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)


def make_noise(circuit, seed, delta=0.0):
    return sample_noise(circuit.num_gates, seed, delta)
