"""Equilibria for three variant payoff models on the same network machinery.

Each variant reduces to one or two plain synergy games with transformed
weights, so solutions reuse the centrality solver and the intervention
calculus applies unchanged. Variants: two interdependent activities with a
cross-activity cost, congestion through distance-two substitution, and
local complementarity with uniform global substitution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .graphs import (
    InputError,
    InternalCheckError,
    Network,
    SPECTRAL_MARGIN,
    SpectralConditionError,
    spectral_radius,
)

PD_FLOOR = 1e-9
# The split divides by the root gap, so rounding error in the two plain
# solves is amplified by 1/gap; below this separation the 1e-9 agreement
# check would only measure that amplification.
ROOT_SPLIT_FLOOR = 1e-5


def _solve_plain(net: Network, weight: float, rhs: np.ndarray) -> np.ndarray:
    system = np.eye(net.n) - weight * net.adjacency
    try:
        return cho_solve(cho_factor(system, lower=True), rhs)
    except np.linalg.LinAlgError as exc:
        raise InternalCheckError(
            f"solve failed at certified weight {weight:g}: {exc}"
        ) from exc


@dataclass(frozen=True, eq=False)
class MultiActivitySpec:
    """Two activities per player, complementary in links, costly to mix."""

    network: Network
    theta_a: np.ndarray = field(repr=False)
    theta_b: np.ndarray = field(repr=False)
    delta: float
    beta: float
    lambda_max: float


def certify_multi_activity(
    net: Network, delta: float, beta: float, theta_a, theta_b
) -> MultiActivitySpec:
    if not -1.0 < beta < 1.0:
        raise InputError(f"cross-activity cost must lie in (-1, 1), got {beta:g}")
    if delta < 0:
        raise InputError(f"delta must be nonnegative, got {delta:g}")
    lam = spectral_radius(net)
    if delta * lam >= (1.0 - abs(beta)) * (1.0 - SPECTRAL_MARGIN):
        raise SpectralConditionError(delta, lam / (1.0 - abs(beta)))
    ta = np.asarray(theta_a, dtype=float)
    tb = np.asarray(theta_b, dtype=float)
    if ta.shape != (net.n,) or tb.shape != (net.n,):
        raise InputError(f"characteristics must have shape ({net.n},)")
    return MultiActivitySpec(net, ta, tb, float(delta), float(beta), lam)


def multi_activity_equilibrium(spec: MultiActivitySpec) -> dict:
    """Both activity profiles, from the sum game and the difference game.

    Sums of the two activities play a game at weight delta/(1+beta);
    differences at delta/(1-beta). Averaging recovers each activity.
    """
    b_sum = _solve_plain(
        spec.network, spec.delta / (1.0 + spec.beta), spec.theta_a + spec.theta_b
    )
    b_diff = _solve_plain(
        spec.network, spec.delta / (1.0 - spec.beta), spec.theta_a - spec.theta_b
    )
    half_sum = 0.5 * b_sum / (1.0 + spec.beta)
    half_diff = 0.5 * b_diff / (1.0 - spec.beta)
    return {"activity_a": half_sum + half_diff, "activity_b": half_sum - half_diff}


@dataclass(frozen=True, eq=False)
class CongestionSpec:
    """Neighbors complement, two-step neighbors congest."""

    network: Network
    theta: np.ndarray = field(repr=False)
    delta: float
    gamma: float
    smallest_eigenvalue: float


def certify_congestion(net: Network, delta: float, gamma: float, theta=None) -> CongestionSpec:
    if delta < 0 or gamma < 0:
        raise InputError(f"delta and gamma must be nonnegative, got {delta:g}, {gamma:g}")
    if theta is None:
        theta = np.ones(net.n)
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (net.n,):
        raise InputError(f"theta must have shape ({net.n},)")
    a = net.adjacency
    system = np.eye(net.n) - delta * a + gamma * (a @ a)
    smallest = float(np.linalg.eigvalsh(system)[0])
    if smallest <= PD_FLOOR:
        raise InputError(
            f"game system is not positive definite: smallest eigenvalue {smallest:.3g}"
        )
    return CongestionSpec(net, theta, float(delta), float(gamma), smallest)


def congestion_equilibrium(spec: CongestionSpec) -> np.ndarray:
    """Solve the congestion game directly; cross-check the two-game split.

    With distinct real roots of z^2 - delta z + gamma, the solution is a
    weighted difference of two plain games; the split is skipped when roots
    are complex or nearly repeated, and otherwise must agree with the
    direct solve.
    """
    a = spec.network.adjacency
    system = np.eye(spec.network.n) - spec.delta * a + spec.gamma * (a @ a)
    x = cho_solve(cho_factor(system, lower=True), spec.theta)
    disc = spec.delta * spec.delta - 4.0 * spec.gamma
    if disc > 0 and np.sqrt(disc) > ROOT_SPLIT_FLOOR:
        root = float(np.sqrt(disc))
        beta1 = 0.5 * (spec.delta + root)
        beta2 = 0.5 * (spec.delta - root)
        lam = spectral_radius(spec.network)
        if beta1 * lam < 1.0 - SPECTRAL_MARGIN:
            y1 = _solve_plain(spec.network, beta1, spec.theta)
            y2 = _solve_plain(spec.network, beta2, spec.theta)
            split = (beta1 * y1 - beta2 * y2) / (beta1 - beta2)
            gap = float(np.max(np.abs(split - x)))
            if gap > 1e-9:
                raise InternalCheckError(f"congestion split disagrees by {gap:.3g}")
    return x


@dataclass(frozen=True, eq=False)
class GlobalSubstitutionSpec:
    """Local link complementarity plus a uniform rivalry with everyone."""

    network: Network
    delta: float
    phi: float
    lambda_max: float


def certify_global_substitution(net: Network, delta: float, phi: float) -> GlobalSubstitutionSpec:
    if phi < 0 or phi >= 1:
        raise InputError(f"global substitution weight must lie in [0, 1), got {phi:g}")
    if delta < 0:
        raise InputError(f"delta must be nonnegative, got {delta:g}")
    lam = spectral_radius(net)
    stretched = delta / (1.0 - phi)
    if stretched * lam >= 1.0 - SPECTRAL_MARGIN:
        raise SpectralConditionError(stretched, lam)
    spec = GlobalSubstitutionSpec(net, float(delta), float(phi), lam)
    if _rescaled_denominator(spec)[0] <= 1e-12:
        raise InputError("global rivalry too strong: equilibrium denominator vanishes")
    return spec


def _rescaled_denominator(spec: GlobalSubstitutionSpec) -> tuple[float, np.ndarray]:
    b = _solve_plain(spec.network, spec.delta / (1.0 - spec.phi), np.ones(spec.network.n))
    return 1.0 - spec.phi + spec.phi * float(b.sum()), b


def global_substitution_equilibrium(spec: GlobalSubstitutionSpec) -> np.ndarray:
    """Equilibrium with unit characteristics: a rescaled stretched-weight game."""
    den, b = _rescaled_denominator(spec)
    if den <= 1e-12:
        raise InternalCheckError("certified spec lost its positive denominator")
    return b / den
