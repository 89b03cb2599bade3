"""Shared oracles and instance generators.

Every oracle here goes through numpy's generic dense inverse, never through
the library's own factorized solves, so a test failure cannot be explained
by both sides sharing a bug.
"""

import numpy as np
import pytest

from netsurgeon import (
    Network,
    StructuralIntervention,
    certify,
    load_fixture,
    spectral_radius,
)


def dense_inverse(net, delta):
    return np.linalg.inv(np.eye(net.n) - delta * net.adjacency)


def oracle_b(net, delta, theta=None):
    t = np.ones(net.n) if theta is None else np.asarray(theta, dtype=float)
    return dense_inverse(net, delta) @ t


def eig_lambda_max(net):
    if net.n == 0:
        return 0.0
    return float(np.linalg.eigvalsh(net.adjacency)[-1])


def random_graph(rng, n, p=0.4):
    """Erdos-Renyi instance with numeric labels 1..n."""
    a = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                a[i, j] = a[j, i] = 1.0
    return Network(tuple(str(i + 1) for i in range(n)), a)


def random_connected_graph(rng, n, extra=0.25):
    """Random spanning tree plus extra links with the given probability."""
    a = np.zeros((n, n))
    for j in range(1, n):
        i = int(rng.integers(0, j))
        a[i, j] = a[j, i] = 1.0
    for i in range(n):
        for j in range(i + 1, n):
            if a[i, j] == 0 and rng.random() < extra:
                a[i, j] = a[j, i] = 1.0
    return Network(tuple(str(i + 1) for i in range(n)), a)


def safe_delta(rng, *nets, frac_lo=0.3, frac_hi=0.9):
    """A delta certified for every given network, at a random slack."""
    lam = max([spectral_radius(net) for net in nets] + [1.0])
    return float(rng.uniform(frac_lo, frac_hi)) / lam


def certified_instance(rng, n_lo=4, n_hi=12, connected=False):
    """Random (spec, net) with theta drawn from [0.5, 2]^n."""
    n = int(rng.integers(n_lo, n_hi + 1))
    net = random_connected_graph(rng, n) if connected else random_graph(rng, n)
    delta = safe_delta(rng, net)
    theta = rng.uniform(0.5, 2.0, size=n)
    return certify(net, delta, theta)


def random_legal_intervention(rng, net, max_touched=4):
    """Random sign-mixed change touching at most max_touched nodes."""
    nodes = rng.permutation(net.n)[: int(rng.integers(2, max_touched + 1))]
    entries = []
    seen = set()
    for _ in range(int(rng.integers(1, 4))):
        i, j = rng.choice(nodes, size=2, replace=False)
        i, j = int(min(i, j)), int(max(i, j))
        if (i, j) in seen:
            continue
        seen.add((i, j))
        sign = -1 if net.adjacency[i, j] else 1
        entries.append((i, j, sign))
    return StructuralIntervention(frozenset(entries))


@pytest.fixture(scope="session")
def regular10():
    return load_fixture("regular10")


@pytest.fixture(scope="session")
def star7():
    return load_fixture("star7")


@pytest.fixture(scope="session")
def twohub9():
    return load_fixture("twohub9")


@pytest.fixture(scope="session")
def twocycles8():
    return load_fixture("twocycles8")


def dyad(delta=0.25):
    net = Network.from_edges([("a", "b")])
    return certify(net, delta)


def path(n, delta=0.25):
    net = Network.from_edges([(str(i), str(i + 1)) for i in range(1, n)])
    return certify(net, delta)
