import numpy as np
import pytest

from gifrc.gaussian import GaussianSystem, MIQuery


def random_system(rng, n_sources=None, square=True):
    """Random dense Gaussian system; square systems have nonsingular conditionals."""
    ns = int(rng.integers(2, 7)) if n_sources is None else n_sources
    sources = [(f"s{i}", float(rng.uniform(0.3, 2.5))) for i in range(ns)]
    n_obs = ns if square else int(rng.integers(2, ns + 1))
    coeffs = rng.standard_normal((n_obs, ns))
    observables = [(f"o{i}", coeffs[i]) for i in range(n_obs)]
    return GaussianSystem(sources, observables)


def random_query(rng, system, with_given=True):
    names = list(system.observable_names)
    perm = [names[i] for i in rng.permutation(len(names))]
    na = int(rng.integers(1, len(perm)))
    nb = int(rng.integers(1, len(perm) - na + 1))
    given = tuple(perm[na + nb :]) if with_given else ()
    return MIQuery(tuple(perm[:na]), tuple(perm[na : na + nb]), given)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
