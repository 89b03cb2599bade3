import numpy as np
import pytest

from netsurgeon import (
    InputError,
    Network,
    SpectralConditionError,
    StructuralIntervention,
    certify,
    certify_congestion,
    certify_global_substitution,
    certify_multi_activity,
    congestion_equilibrium,
    global_substitution_equilibrium,
    katz_bonacich,
    multi_activity_equilibrium,
    spectral_radius,
    structural_effect,
)

from .conftest import random_connected_graph, safe_delta


def foc_residual_multi(spec, xa, xb):
    g = spec.network.adjacency
    ra = xa - spec.theta_a - spec.delta * (g @ xa) + spec.beta * xb
    rb = xb - spec.theta_b - spec.delta * (g @ xb) + spec.beta * xa
    return max(np.max(np.abs(ra)), np.max(np.abs(rb)))


class TestMultiActivity:
    def _spec(self, beta, delta=0.1, seed=0):
        rng = np.random.default_rng(seed)
        net = random_connected_graph(rng, 7)
        ta = rng.uniform(0.5, 2.0, 7)
        tb = rng.uniform(0.5, 2.0, 7)
        return certify_multi_activity(net, delta, beta, ta, tb)

    def test_first_order_conditions(self):
        for beta in (-0.4, -0.1, 0.0, 0.2, 0.5):
            spec = self._spec(beta, seed=int((beta + 1) * 10))
            eq = multi_activity_equilibrium(spec)
            assert foc_residual_multi(spec, eq["activity_a"], eq["activity_b"]) <= 1e-9

    def test_beta_zero_decouples(self):
        spec = self._spec(0.0, seed=3)
        eq = multi_activity_equilibrium(spec)
        plain_a = certify(spec.network, spec.delta, spec.theta_a)
        plain_b = certify(spec.network, spec.delta, spec.theta_b)
        np.testing.assert_allclose(eq["activity_a"], plain_a.solve(spec.theta_a), atol=1e-10)
        np.testing.assert_allclose(eq["activity_b"], plain_b.solve(spec.theta_b), atol=1e-10)

    def test_identical_characteristics_give_identical_activities(self):
        rng = np.random.default_rng(5)
        net = random_connected_graph(rng, 6)
        theta = rng.uniform(0.5, 2.0, 6)
        spec = certify_multi_activity(net, 0.08, 0.3, theta, theta)
        eq = multi_activity_equilibrium(spec)
        np.testing.assert_allclose(eq["activity_a"], eq["activity_b"], atol=1e-12)

    def test_certification_shrinks_with_mixing_cost(self):
        net = Network.from_edges([("a", "b")])  # lambda = 1
        certify_multi_activity(net, 0.55, 0.0, np.ones(2), np.ones(2))
        with pytest.raises(SpectralConditionError):
            certify_multi_activity(net, 0.55, 0.5, np.ones(2), np.ones(2))
        with pytest.raises(InputError):
            certify_multi_activity(net, 0.1, 1.0, np.ones(2), np.ones(2))

    def test_structural_intervention_consistency(self):
        # updating each constituent game locally must equal the full re-solve
        rng = np.random.default_rng(9)
        net = Network.from_edges(
            [(str(i), str(i + 1)) for i in range(1, 7)] + [("2", "5"), ("3", "6")]
        )
        ta = rng.uniform(0.5, 2.0, 7)
        tb = rng.uniform(0.5, 2.0, 7)
        beta = 0.25
        delta = 0.05
        iv = StructuralIntervention.from_label_pairs(
            net, add=[("1", "7")], remove=[("2", "5")]
        )
        post_net = iv.applied_to(net)

        sum_spec = certify(net, delta / (1 + beta), ta + tb)
        diff_spec = certify(net, delta / (1 - beta), ta - tb)
        new_sum = structural_effect(sum_spec, iv).post_b
        new_diff = structural_effect(diff_spec, iv).post_b
        xa = 0.5 * new_sum / (1 + beta) + 0.5 * new_diff / (1 - beta)
        xb = 0.5 * new_sum / (1 + beta) - 0.5 * new_diff / (1 - beta)

        direct = multi_activity_equilibrium(
            certify_multi_activity(post_net, delta, beta, ta, tb)
        )
        np.testing.assert_allclose(xa, direct["activity_a"], atol=1e-9)
        np.testing.assert_allclose(xb, direct["activity_b"], atol=1e-9)


class TestCongestion:
    def test_gamma_zero_is_plain_centrality(self):
        rng = np.random.default_rng(11)
        net = random_connected_graph(rng, 6)
        delta = safe_delta(rng, net)
        x = congestion_equilibrium(certify_congestion(net, delta, 0.0))
        np.testing.assert_allclose(x, katz_bonacich(certify(net, delta)).b, atol=1e-10)

    def test_first_order_conditions(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            net = random_connected_graph(rng, int(rng.integers(4, 9)))
            delta = 0.3 / spectral_radius(net)
            gamma = float(rng.uniform(0.0, 0.05))
            theta = rng.uniform(0.5, 2.0, net.n)
            spec = certify_congestion(net, delta, gamma, theta)
            x = congestion_equilibrium(spec)
            g = net.adjacency
            res = x - theta - delta * (g @ x) + gamma * (g @ (g @ x))
            assert np.max(np.abs(res)) <= 1e-9

    def test_real_root_split_matches_direct_inverse(self):
        net = Network.from_edges([("1", "2"), ("2", "3"), ("3", "4")])
        delta, gamma = 0.3, 0.02  # two real roots, both certified
        disc = np.sqrt(delta**2 - 4 * gamma)
        b1, b2 = (delta + disc) / 2, (delta - disc) / 2
        g = net.adjacency
        lhs = np.linalg.inv(np.eye(4) - delta * g + gamma * (g @ g))
        split = (
            b1 / (b1 - b2) * np.linalg.inv(np.eye(4) - b1 * g)
            - b2 / (b1 - b2) * np.linalg.inv(np.eye(4) - b2 * g)
        )
        np.testing.assert_allclose(lhs, split, atol=1e-10)
        # the library's own cross-check runs on the same regime without tripping
        x = congestion_equilibrium(certify_congestion(net, delta, gamma))
        np.testing.assert_allclose(x, lhs @ np.ones(4), atol=1e-10)

    def test_complex_root_regime_still_solves(self):
        net = Network.from_edges([("1", "2"), ("2", "3")])
        spec = certify_congestion(net, 0.2, 0.05)  # delta^2 < 4 gamma
        x = congestion_equilibrium(spec)
        g = net.adjacency
        lhs = np.eye(3) - 0.2 * g + 0.05 * (g @ g)
        np.testing.assert_allclose(lhs @ x, np.ones(3), atol=1e-10)

    def test_definiteness_guard(self):
        net = Network.from_edges(
            [(str(i), str(j)) for i in range(1, 6) for j in range(i + 1, 6)]
        )  # complete, lambda = 4
        with pytest.raises(InputError):
            certify_congestion(net, 0.6, 0.02)
        with pytest.raises(InputError):
            certify_congestion(net, -0.1, 0.02)
        with pytest.raises(InputError):
            certify_congestion(net, 0.1, -0.01)


class TestGlobalSubstitution:
    def test_phi_zero_is_plain_centrality(self):
        rng = np.random.default_rng(17)
        net = random_connected_graph(rng, 6)
        delta = safe_delta(rng, net)
        x = global_substitution_equilibrium(certify_global_substitution(net, delta, 0.0))
        np.testing.assert_allclose(x, katz_bonacich(certify(net, delta)).b, atol=1e-10)

    def test_first_order_conditions(self):
        rng = np.random.default_rng(19)
        for _ in range(10):
            net = random_connected_graph(rng, int(rng.integers(4, 9)))
            phi = float(rng.uniform(0.0, 0.6))
            delta = float(rng.uniform(0.2, 0.8)) * (1 - phi) / spectral_radius(net)
            spec = certify_global_substitution(net, delta, phi)
            x = global_substitution_equilibrium(spec)
            n = net.n
            system = (1 - phi) * np.eye(n) - delta * net.adjacency + phi * np.ones((n, n))
            np.testing.assert_allclose(system @ x, np.ones(n), atol=1e-9)

    def test_global_pressure_lowers_activity(self):
        net = Network.from_edges([("a", "b"), ("b", "c")])
        free = global_substitution_equilibrium(certify_global_substitution(net, 0.1, 0.0))
        taxed = global_substitution_equilibrium(certify_global_substitution(net, 0.1, 0.4))
        assert np.all(taxed < free)

    def test_certification_bounds(self):
        net = Network.from_edges([("a", "b")])
        with pytest.raises(InputError):
            certify_global_substitution(net, 0.2, 1.0)
        with pytest.raises(InputError):
            certify_global_substitution(net, 0.2, -0.1)
        with pytest.raises(SpectralConditionError):
            certify_global_substitution(net, 0.6, 0.5)  # stretched weight 1.2 > 1
