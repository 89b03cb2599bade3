"""Graph representation, edge-list parsing, and spectral certification.

Networks are labeled, undirected, simple 0/1 graphs stored densely. Node
indices are the ranks of the labels under natural order (all-digit labels
compare numerically and come first, the rest lexicographically), so every
downstream argmax and tie-break is deterministic across runs and matches
how people number nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.linalg import cho_factor, cho_solve

# Safety margin on the spectral condition delta * lambda_max < 1. Keeps
# (I - delta G) well conditioned for every downstream solve.
SPECTRAL_MARGIN = 1e-9

POWER_TOL = 1e-12
POWER_MAX_ITER = 10_000


class NetsurgeonError(Exception):
    """Base class for all library errors."""


class InputError(NetsurgeonError, ValueError):
    """Invalid user input: bad files, illegal parameters, failed preconditions."""


class GraphFormatError(InputError):
    """Malformed edge-list text; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SpectralConditionError(InputError):
    """delta * lambda_max(G) exceeds the certified range."""

    def __init__(self, delta: float, lambda_max: float):
        self.delta = delta
        self.lambda_max = lambda_max
        self.max_delta = (1.0 - SPECTRAL_MARGIN) / lambda_max if lambda_max > 0 else float("inf")
        super().__init__(
            f"spectral condition violated: delta={delta:g} with lambda_max={lambda_max:.6g} "
            f"requires delta < {self.max_delta:.6g}"
        )


class InternalCheckError(NetsurgeonError):
    """An internal identity or guard failed; signals a bug, not bad input."""


def label_key(label: str) -> tuple[int, int, str]:
    """Natural sort key for node labels.

    All-digit labels compare by numeric value and precede everything else;
    remaining labels compare lexicographically. Keeps "10" after "2" so
    tie-breaks on numerically named nodes match the obvious ordering.
    """
    if label.isdigit():
        return (0, int(label), label)
    return (1, 0, label)


@dataclass(frozen=True, eq=False)
class Network:
    """Undirected simple graph over string labels in natural order."""

    labels: tuple[str, ...]
    adjacency: np.ndarray = field(repr=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self) -> int:
        return hash(self.labels)

    def __post_init__(self):
        a = self.adjacency
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise InputError("duplicate node labels")
        if tuple(sorted(self.labels, key=label_key)) != self.labels:
            raise InputError("labels must be given in natural order")
        if a.shape != (n, n):
            raise InputError(f"adjacency shape {a.shape} does not match {n} labels")
        if not np.array_equal(a, a.T):
            raise InputError("adjacency must be symmetric")
        if np.any(np.diag(a) != 0):
            raise InputError("self-loops are not allowed")
        if not np.all((a == 0) | (a == 1)):
            raise InputError("adjacency entries must be 0 or 1")
        a.flags.writeable = False

    @staticmethod
    def from_edges(edges, isolated=()) -> "Network":
        """Build a Network from (label, label) pairs plus optional isolated nodes."""
        names = set(isolated)
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop on node {u!r}")
            names.add(u)
            names.add(v)
        labels = tuple(sorted(names, key=label_key))
        index = {lab: i for i, lab in enumerate(labels)}
        a = np.zeros((len(labels), len(labels)))
        for u, v in edges:
            a[index[u], index[v]] = 1.0
            a[index[v], index[u]] = 1.0
        return Network(labels, a)

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index_of(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise InputError(f"unknown node label {label!r}") from None

    def degree(self, i: int) -> int:
        return int(self.adjacency[i].sum())

    def edges(self) -> list[tuple[str, str]]:
        """Edges as (min-label, max-label) pairs, ascending."""
        out = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.adjacency[i, j]:
                    out.append((self.labels[i], self.labels[j]))
        return sorted(out, key=lambda e: (label_key(e[0]), label_key(e[1])))

    def serialize(self) -> str:
        lines = [f"{u} {v}" for u, v in self.edges()]
        touched = {u for e in self.edges() for u in e}
        lines.extend(lab for lab in self.labels if lab not in touched)
        return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Network:
    """Parse "u v" lines into a Network.

    `#` starts a comment; a line holding a single label declares an isolated
    node; duplicate edges collapse. Self-loops are rejected.
    """
    edges = []
    isolated = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            isolated.append(parts[0])
        elif len(parts) == 2:
            u, v = parts
            if u == v:
                raise GraphFormatError(f"self-loop on node {u!r}", lineno)
            edges.append((u, v))
        else:
            raise GraphFormatError(f"expected 'u v', got {raw.strip()!r}", lineno)
    if not edges and not isolated:
        raise InputError("empty edge list")
    return Network.from_edges(edges, isolated)


def load_network(path) -> Network:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_edge_list(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read graph file {path}: {exc.strerror or exc}") from exc


def spectral_radius(net: Network) -> float:
    """Largest eigenvalue of the adjacency matrix.

    Power iteration with a Rayleigh-quotient convergence test. The iteration
    runs on A + I: the shift keeps the dominant eigenvalue strictly dominant
    on bipartite graphs (where -lambda_max ties +lambda_max) without moving
    the Perron vector, and the all-ones start always overlaps that vector.
    """
    a = net.adjacency
    n = net.n
    if n == 0 or not a.any():
        return 0.0
    x = np.ones(n) / np.sqrt(n)
    rayleigh = 0.0
    for _ in range(POWER_MAX_ITER):
        y = a @ x + x
        norm = np.linalg.norm(y)
        x = y / norm
        new = float(x @ (a @ x + x))
        if abs(new - rayleigh) < POWER_TOL:
            return new - 1.0
        rayleigh = new
    return rayleigh - 1.0


@dataclass(frozen=True)
class NodeSet:
    """Sorted, duplicate-free internal node indices."""

    members: tuple[int, ...]

    def __post_init__(self):
        m = self.members
        if list(m) != sorted(set(m)):
            raise InputError(f"node set must be sorted and duplicate-free, got {m}")
        if m and (m[0] < 0):
            raise InputError(f"negative node index in {m}")

    @staticmethod
    def of(indices, n: int | None = None) -> "NodeSet":
        s = NodeSet(tuple(sorted(set(int(i) for i in indices))))
        if n is not None and s.members and s.members[-1] >= n:
            raise InputError(f"node index {s.members[-1]} out of range for n={n}")
        return s

    @staticmethod
    def of_labels(net: Network, labels) -> "NodeSet":
        return NodeSet.of((net.index_of(lab) for lab in labels), net.n)

    def complement(self, n: int) -> "NodeSet":
        inside = set(self.members)
        return NodeSet(tuple(i for i in range(n) if i not in inside))

    def labels(self, net: Network) -> tuple[str, ...]:
        return tuple(net.labels[i] for i in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, i) -> bool:
        return i in self.members


@dataclass(frozen=True, eq=False)
class GameSpec:
    """A certified game: network, characteristics theta, synergy delta.

    Construct through certify(); direct construction skips the spectral check.
    The Cholesky factorization of (I - delta G) is cached and shared by every
    solve against this spec (read-only, safe across threads).
    """

    network: Network
    theta: np.ndarray = field(repr=False)
    delta: float
    lambda_max: float

    @cached_property
    def _factor(self):
        n = self.network.n
        return cho_factor(np.eye(n) - self.delta * self.network.adjacency, lower=True)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Solve (I - delta G) x = rhs; rhs may be a vector or a matrix of columns."""
        try:
            return cho_solve(self._factor, rhs)
        except np.linalg.LinAlgError as exc:  # pragma: no cover - barred by certification
            raise InternalCheckError(f"solve failed on certified spec: {exc}") from exc

    @property
    def n(self) -> int:
        return self.network.n

    def with_theta(self, theta: np.ndarray) -> "GameSpec":
        theta = _check_theta(theta, self.n)
        spec = GameSpec(self.network, theta, self.delta, self.lambda_max)
        # Same network and delta, so the cached factorization carries over.
        spec.__dict__["_factor"] = self._factor
        return spec

    def theta_is_ones(self) -> bool:
        return bool(np.all(self.theta == 1.0))


def _check_theta(theta, n: int) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (n,):
        raise InputError(f"theta must have shape ({n},), got {theta.shape}")
    out = theta.copy()
    out.flags.writeable = False
    return out


def certify(net: Network, delta: float, theta=None) -> GameSpec:
    """Certify delta * lambda_max(G) < 1 - margin and build the GameSpec.

    theta defaults to the all-ones vector.
    """
    if delta <= 0:
        raise InputError(f"delta must be positive, got {delta:g}")
    lam = spectral_radius(net)
    if delta * lam >= 1.0 - SPECTRAL_MARGIN:
        raise SpectralConditionError(delta, lam)
    if theta is None:
        theta = np.ones(net.n)
    return GameSpec(net, _check_theta(theta, net.n), float(delta), lam)


def embed(values: np.ndarray, support: NodeSet, n: int) -> np.ndarray:
    """Scatter values on a support set into a full-length vector."""
    out = np.zeros(n)
    out[list(support.members)] = values
    return out
