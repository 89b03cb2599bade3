"""Group intercentrality and the key-group search.

The intercentrality of a set S prices its removal: it equals the drop in
aggregate play when S leaves the game, yet is computed from the intact
network through one |S| x |S| solve. Search strategies: exhaustive over all
size-k subsets, greedy one node at a time, and a dominance filter that
discards provably inferior candidates before scoring.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graphs import GameSpec, InputError, InternalCheckError, Network, NodeSet, certify

ENUMERATION_CAP = 10_000_000

# Two scores this close count as tied and fall through to the lexicographic
# rule, so automorphic nodes rank identically despite rounding noise.
NEAR_TIE = 1e-9

DOMINANCE_SLACK = 1e-12


@dataclass(frozen=True)
class GroupScore:
    """Removal value of a node set, split into direct and indirect parts."""

    group: NodeSet
    intercentrality: float
    direct_effect: float
    indirect_effect: float

    def check_definition(self, spec: GameSpec, tol: float = 1e-9) -> None:
        """Verify against a literal subgame solve; raises on disagreement."""
        rest = self.group.complement(spec.n)
        full = float(spec.solve(spec.theta).sum())
        if len(rest) == 0:
            residual = 0.0
        else:
            idx = list(rest.members)
            sub = Network(
                tuple(spec.network.labels[i] for i in idx),
                spec.network.adjacency[np.ix_(idx, idx)].copy(),
            )
            residual = float(certify(sub, spec.delta, spec.theta[idx]).solve(spec.theta[idx]).sum())
        if abs(full - residual - self.intercentrality) > tol:
            raise InternalCheckError(
                f"intercentrality {self.intercentrality:.12g} disagrees with subgame "
                f"difference {full - residual:.12g} for group {self.group.members}"
            )

    def to_json_dict(self, net: Network) -> dict:
        return {
            "group": list(self.group.labels(net)),
            "intercentrality": float(self.intercentrality),
            "direct_effect": float(self.direct_effect),
            "indirect_effect": float(self.indirect_effect),
        }


def _score(m_ss, b_theta_s, b_unw_s) -> tuple[float, float]:
    try:
        v = np.linalg.solve(m_ss, b_theta_s)
    except np.linalg.LinAlgError as exc:
        # Principal submatrices of the SPD influence matrix stay SPD.
        raise InternalCheckError(f"singular principal influence block: {exc}") from exc
    return float(b_unw_s @ v), float(b_theta_s.sum())


def intercentrality(spec: GameSpec, s: NodeSet) -> GroupScore:
    """Removal value of s, from the intact network only."""
    if len(s) == 0:
        raise InputError("group must be nonempty")
    if s.members[-1] >= spec.n:
        raise InputError(f"node index {s.members[-1]} out of range for n={spec.n}")
    b_theta = spec.solve(spec.theta)
    b_unw = b_theta if spec.theta_is_ones() else spec.solve(np.ones(spec.n))
    idx = list(s.members)
    m_ss = spec.solve(np.eye(spec.n)[:, idx])[idx, :]
    d, direct = _score(m_ss, b_theta[idx], b_unw[idx])
    return GroupScore(s, d, direct, d - direct)


def _ranked(scores: list[GroupScore]) -> list[GroupScore]:
    scores.sort(key=lambda gs: (-gs.intercentrality, gs.group.members))
    out: list[GroupScore] = []
    i = 0
    while i < len(scores):
        j = i + 1
        while j < len(scores) and (
            scores[j - 1].intercentrality - scores[j].intercentrality
            <= NEAR_TIE * max(1.0, abs(scores[i].intercentrality))
        ):
            j += 1
        out.extend(sorted(scores[i:j], key=lambda gs: gs.group.members))
        i = j
    return out


def _colex_combinations(n: int, k: int):
    """Size-k subsets of range(n), ordered by largest element first."""
    if k == 0:
        yield ()
        return
    for last in range(k - 1, n):
        for rest in _colex_combinations(last, k - 1):
            yield rest + (last,)


def key_group_exhaustive(
    spec: GameSpec, k: int, cap: int = ENUMERATION_CAP, workers: int = 1
) -> list[GroupScore]:
    """Score every size-k subset; full ranking, best first.

    Larger groups always score higher than their subsets, so only subsets of
    size exactly k are candidates for the size-at-most-k optimum.
    """
    if not 1 <= k <= spec.n:
        raise InputError(f"k must be between 1 and {spec.n}, got {k}")
    count = math.comb(spec.n, k)
    if count > cap:
        raise InputError(
            f"{count} subsets exceed the enumeration cap ({cap}); use the greedy mode"
        )
    b_theta = spec.solve(spec.theta)
    b_unw = b_theta if spec.theta_is_ones() else spec.solve(np.ones(spec.n))
    m_full = spec.solve(np.eye(spec.n))

    def evaluate(chunk):
        local = []
        for comb in chunk:
            idx = list(comb)
            d, direct = _score(m_full[np.ix_(idx, idx)], b_theta[idx], b_unw[idx])
            local.append(GroupScore(NodeSet(comb), d, direct, d - direct))
        return local

    combos = list(_colex_combinations(spec.n, k))
    if workers > 1 and len(combos) > 1:
        chunks = [combos[i::workers] for i in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(evaluate, chunks))
        scores = [gs for part in parts for gs in part]
    else:
        scores = evaluate(combos)
    return _ranked(scores)


def key_group_greedy(spec: GameSpec, k: int) -> GroupScore:
    """Pick the best single node k times, each step in the residual network.

    The returned score is measured in the original network, so it compares
    directly with exhaustive output. Can be strictly suboptimal: the best
    pair need not contain the best singleton.
    """
    if not 1 <= k <= spec.n:
        raise InputError(f"k must be between 1 and {spec.n}, got {k}")
    chosen: list[int] = []
    cur = spec
    to_orig = list(range(spec.n))
    for step in range(k):
        b_theta = cur.solve(cur.theta)
        b_unw = b_theta if cur.theta_is_ones() else cur.solve(np.ones(cur.n))
        m_diag = np.diag(cur.solve(np.eye(cur.n)))
        single = b_unw * b_theta / m_diag
        best = float(single.max())
        pick = int(np.flatnonzero(single >= best - NEAR_TIE * max(1.0, abs(best)))[0])
        chosen.append(to_orig[pick])
        if step + 1 == k:
            break
        keep = [t for t in range(cur.n) if t != pick]
        to_orig = [to_orig[t] for t in keep]
        sub = Network(
            tuple(cur.network.labels[t] for t in keep),
            cur.network.adjacency[np.ix_(keep, keep)].copy(),
        )
        cur = certify(sub, spec.delta, cur.theta[keep])
    return intercentrality(spec, NodeSet.of(chosen, spec.n))


def _covers(m_full, b, high: NodeSet, low: NodeSet) -> bool:
    """True when high's profile dominates low's, so d_low <= d_high.

    Alignment pairs the t-th largest centrality of one group with the t-th
    largest of the other; domination must then hold entrywise for both the
    centralities and the influence blocks.
    """
    ih = sorted(high.members, key=lambda t: (-b[t], t))
    il = sorted(low.members, key=lambda t: (-b[t], t))
    if np.any(b[il] > b[ih] + DOMINANCE_SLACK):
        return False
    if np.any(m_full[np.ix_(il, il)] < m_full[np.ix_(ih, ih)] - DOMINANCE_SLACK):
        return False
    return True


def dominance_prune(spec: GameSpec, candidates: list[NodeSet]) -> list[NodeSet]:
    """Drop candidates that some other candidate provably outscores.

    Needs unit characteristics; the monotonicity argument behind the filter
    does not cover weighted theta. Mutually dominating (hence tied)
    groups keep only the lexicographically smallest. Conservative: never
    drops every optimizer, may keep prunable sets.
    """
    if not spec.theta_is_ones():
        raise InputError("dominance pruning requires theta = 1")
    if not candidates:
        return []
    sizes = {len(c) for c in candidates}
    if len(sizes) != 1:
        raise InputError(f"candidates must share one size, got sizes {sorted(sizes)}")
    if 0 in sizes:
        raise InputError("candidates must be nonempty")
    for c in candidates:
        if c.members[-1] >= spec.n:
            raise InputError(f"node index {c.members[-1]} out of range for n={spec.n}")
    b = spec.solve(np.ones(spec.n))
    m_full = spec.solve(np.eye(spec.n))
    kept = []
    for x, s in enumerate(candidates):
        dropped = False
        for y, t in enumerate(candidates):
            if x == y or not _covers(m_full, b, t, s):
                continue
            if _covers(m_full, b, s, t):
                if t.members < s.members or (t.members == s.members and y < x):
                    dropped = True
                    break
            else:
                dropped = True
                break
        if not dropped:
            kept.append(s)
    return kept
