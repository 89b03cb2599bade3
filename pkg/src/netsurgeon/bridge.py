"""Bridge scores between separate components and values of single links.

A bridge's worth is a closed form in four per-component scalars: the two
endpoints' centralities and self-loop counts. The same algebra prices any
single link inside one network, present or absent. All scores are stated
for unit characteristics, where score times the synergy weight equals the
realized aggregate change exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import (
    GameSpec,
    InputError,
    InternalCheckError,
    Network,
    NodeSet,
    certify,
    label_key,
)

NEAR_TIE = 1e-9
FRONTIER_SLACK = 1e-12


@dataclass(frozen=True)
class BridgeScore:
    """A scored candidate link from one component to another."""

    i: str
    j: str
    index: float
    predicted_delta_aggregate: float

    def check_prediction(self, spec1: GameSpec, spec2: GameSpec, tol: float = 1e-9) -> None:
        """Re-solve the physically joined game and compare; raises on mismatch."""
        joined = joined_network(spec1.network, spec2.network, bridge=(self.i, self.j))
        before = float(spec1.solve(spec1.theta).sum() + spec2.solve(spec2.theta).sum())
        spec = certify(joined, spec1.delta)
        after = float(spec.solve(spec.theta).sum())
        gap = abs(after - before - self.predicted_delta_aggregate)
        if gap > tol:
            raise InternalCheckError(
                f"bridge ({self.i},{self.j}) prediction off by {gap:.3g} "
                f"against the joined-game solve"
            )

    def to_json_dict(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "index": float(self.index),
            "predicted_delta_aggregate": float(self.predicted_delta_aggregate),
        }


@dataclass(frozen=True)
class LinkValue:
    """Value of one link of a network: potential (absent) or existing."""

    i: str
    j: str
    kind: str
    value: float

    def to_json_dict(self) -> dict:
        return {"i": self.i, "j": self.j, "kind": self.kind, "value": float(self.value)}


def joined_network(net1: Network, net2: Network, bridge: tuple[str, str] | None = None) -> Network:
    """Disjoint union of two networks, optionally plus one connecting link."""
    if set(net1.labels) & set(net2.labels):
        raise InputError(
            f"components share labels {sorted(set(net1.labels) & set(net2.labels))}; "
            "relabel before joining"
        )
    edges = net1.edges() + net2.edges()
    if bridge is not None:
        u, v = bridge
        net1.index_of(u)
        net2.index_of(v)
        edges.append((u, v))
    isolated = [lab for net in (net1, net2) for lab in net.labels]
    return Network.from_edges(edges, isolated)


def _endpoint_stats(spec: GameSpec) -> tuple[np.ndarray, np.ndarray]:
    b = spec.solve(np.ones(spec.n))
    m_diag = np.diag(spec.solve(np.eye(spec.n)))
    return b, m_diag


def _bridge_value(delta: float, b_i: float, m_ii: float, b_j: float, m_jj: float) -> float:
    den = 1.0 - delta * delta * m_ii * m_jj
    if den <= FRONTIER_SLACK:
        raise InputError("bridging these endpoints pushes the joined game outside the certified range")
    return (delta * m_jj * b_i * b_i + delta * m_ii * b_j * b_j + 2.0 * b_i * b_j) / den


def _require_unit_theta(spec: GameSpec, what: str) -> None:
    if not spec.theta_is_ones():
        raise InputError(f"{what} is defined for theta = 1")


def bridge_index(spec1: GameSpec, spec2: GameSpec, i: str, j: str) -> BridgeScore:
    """Score the link joining node i of the first component to j of the second."""
    if spec1.delta != spec2.delta:
        raise InputError(
            f"components must share one synergy weight, got {spec1.delta:g} and {spec2.delta:g}"
        )
    _require_unit_theta(spec1, "the bridge index")
    _require_unit_theta(spec2, "the bridge index")
    b1, m1 = _endpoint_stats(spec1)
    b2, m2 = _endpoint_stats(spec2)
    ii = spec1.network.index_of(i)
    jj = spec2.network.index_of(j)
    value = _bridge_value(spec1.delta, b1[ii], m1[ii], b2[jj], m2[jj])
    return BridgeScore(i, j, value, spec1.delta * value)


def pareto_frontier(spec: GameSpec) -> NodeSet:
    """Nodes not strictly beaten on the (centrality, self-loop) pair.

    A node is dropped only when some other node is at least as good in both
    coordinates and better than rounding noise in one. Regular graphs tie
    everywhere and keep every node.
    """
    _require_unit_theta(spec, "the bridge-endpoint frontier")
    b, m = _endpoint_stats(spec)
    keep = []
    for i in range(spec.n):
        beaten = any(
            b[t] >= b[i] - FRONTIER_SLACK
            and m[t] >= m[i] - FRONTIER_SLACK
            and (b[t] > b[i] + FRONTIER_SLACK or m[t] > m[i] + FRONTIER_SLACK)
            for t in range(spec.n)
            if t != i
        )
        if not beaten:
            keep.append(i)
    return NodeSet.of(keep, spec.n)


def rank_bridges(spec1: GameSpec, spec2: GameSpec) -> list[BridgeScore]:
    """All frontier-to-frontier candidate links, best first.

    Only frontier endpoints can host the best bridge, so non-frontier pairs
    are never scored. Near-ties order by label pair.
    """
    if spec1.delta != spec2.delta:
        raise InputError(
            f"components must share one synergy weight, got {spec1.delta:g} and {spec2.delta:g}"
        )
    _require_unit_theta(spec1, "the key-bridge search")
    _require_unit_theta(spec2, "the key-bridge search")
    b1, m1 = _endpoint_stats(spec1)
    b2, m2 = _endpoint_stats(spec2)
    front1 = pareto_frontier(spec1)
    front2 = pareto_frontier(spec2)
    scored = []
    for ii in front1:
        for jj in front2:
            u, v = spec1.network.labels[ii], spec2.network.labels[jj]
            value = _bridge_value(spec1.delta, b1[ii], m1[ii], b2[jj], m2[jj])
            scored.append(BridgeScore(u, v, value, spec1.delta * value))
    pair_key = lambda sc: (label_key(sc.i), label_key(sc.j))
    scored.sort(key=lambda sc: (-sc.index, pair_key(sc)))
    out: list[BridgeScore] = []
    k = 0
    while k < len(scored):
        t = k + 1
        while t < len(scored) and (
            scored[t - 1].index - scored[t].index
            <= NEAR_TIE * max(1.0, abs(scored[k].index))
        ):
            t += 1
        out.extend(sorted(scored[k:t], key=pair_key))
        k = t
    return out


def key_bridge(spec1: GameSpec, spec2: GameSpec) -> BridgeScore:
    """Best single link between the two components."""
    return rank_bridges(spec1, spec2)[0]


def link_value_potential(spec: GameSpec, i: str, j: str) -> LinkValue:
    """Value of creating the absent link (i, j) inside one network.

    The synergy weight times this value is exactly the aggregate gain from
    adding the link. The network with the link added must itself certify.
    """
    _require_unit_theta(spec, "the potential-link value")
    ii, jj = spec.network.index_of(i), spec.network.index_of(j)
    if ii == jj:
        raise InputError(f"no self-link on node {i!r}")
    if spec.network.adjacency[ii, jj]:
        raise InputError(f"link ({i},{j}) already present; use the existing-link value")
    plus = spec.network.adjacency.copy()
    plus[ii, jj] = plus[jj, ii] = 1.0
    certify(Network(spec.network.labels, plus), spec.delta)
    b, m_cols = _pair_stats(spec, ii, jj)
    b_i, b_j = b[ii], b[jj]
    m_ii, m_jj, m_ij = m_cols[ii, 0], m_cols[jj, 1], m_cols[jj, 0]
    den = (1.0 - spec.delta * m_ij) ** 2 - spec.delta**2 * m_ii * m_jj
    if den <= FRONTIER_SLACK:
        raise InternalCheckError(
            f"nonpositive denominator for certified link ({i},{j})"
        )
    num = (
        spec.delta * m_ii * b_j * b_j
        + spec.delta * m_jj * b_i * b_i
        + 2.0 * (1.0 - spec.delta * m_ij) * b_i * b_j
    )
    u, v = sorted((i, j), key=label_key)
    return LinkValue(u, v, "potential", num / den)


def link_value_existing(spec: GameSpec, i: str, j: str) -> LinkValue:
    """Value of an existing link (i, j): the aggregate loss from cutting it,
    divided by the synergy weight."""
    _require_unit_theta(spec, "the existing-link value")
    ii, jj = spec.network.index_of(i), spec.network.index_of(j)
    if ii == jj:
        raise InputError(f"no self-link on node {i!r}")
    if not spec.network.adjacency[ii, jj]:
        raise InputError(f"link ({i},{j}) not present; use the potential-link value")
    b, m_cols = _pair_stats(spec, ii, jj)
    b_i, b_j = b[ii], b[jj]
    m_ii, m_jj, m_ij = m_cols[ii, 0], m_cols[jj, 1], m_cols[jj, 0]
    den = (1.0 + spec.delta * m_ij) ** 2 - spec.delta**2 * m_ii * m_jj
    if den <= FRONTIER_SLACK:
        # Removal only shrinks the certified range, so this cannot happen.
        raise InternalCheckError(f"nonpositive denominator for existing link ({i},{j})")
    num = 2.0 * (1.0 + spec.delta * m_ij) * b_i * b_j - (
        spec.delta * m_ii * b_j * b_j + spec.delta * m_jj * b_i * b_i
    )
    u, v = sorted((i, j), key=label_key)
    return LinkValue(u, v, "existing", num / den)


def _pair_stats(spec: GameSpec, ii: int, jj: int) -> tuple[np.ndarray, np.ndarray]:
    """Unweighted centralities plus the two influence columns for (ii, jj)."""
    b = spec.solve(np.ones(spec.n))
    m_cols = spec.solve(np.eye(spec.n)[:, [ii, jj]])
    return b, m_cols
