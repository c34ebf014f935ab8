"""McKay graphs of binary subgroups of SU(2) and affine ADE recognition."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .characters import CharacterTable, round_multiplicities
from .errors import NotBinaryGroup

UNRECOGNIZED = "Unrecognized"

# arm lengths (nodes hanging off the single branch node) of the exceptional types
_EXCEPTIONAL_ARMS = {(2, 2, 2): "AffineE6", (1, 3, 3): "AffineE7", (1, 2, 5): "AffineE8"}


@dataclass(frozen=True, eq=False)
class McKayGraph:
    nodes: tuple[tuple[str, int], ...]
    adjacency: np.ndarray
    ade_type: str

    @property
    def dims(self) -> np.ndarray:
        return np.array([d for _, d in self.nodes], dtype=np.int64)

    def to_json(self) -> dict:
        return {
            "nodes": [{"name": nm, "dim": d} for nm, d in self.nodes],
            "adjacency": self.adjacency.tolist(),
            "ade_type": self.ade_type,
        }


def defining_character(t: CharacterTable) -> np.ndarray:
    """Character 2 cos(theta/2) of the defining 2-dim representation."""
    return 2.0 * np.cos(np.array(t.group.class_angles) / 2.0)


def mckay_graph(t: CharacterTable) -> McKayGraph:
    if not t.group.is_binary:
        raise NotBinaryGroup(f"{t.group.name} does not contain -1 of SU(2)")
    chi = t.chi
    raw = ((defining_character(t) * chi) * t.sizes) @ chi.conj().T / t.group.order
    adj, _ = round_multiplicities(raw)
    adj.setflags(write=False)
    nodes = tuple((r.name, r.dim) for r in t.irreps)
    return McKayGraph(nodes, adj, classify_affine_ade(adj))


def _connected(adj: np.ndarray) -> bool:
    n = len(adj)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in np.nonzero(adj[v])[0]:
            if int(u) not in seen:
                seen.add(int(u))
                stack.append(int(u))
    return len(seen) == n


def _arm_length(adj, start: int, prev: int) -> int:
    """Number of nodes on a path hanging off ``prev`` through ``start``."""
    length = 1
    while True:
        nxt = [int(u) for u in np.nonzero(adj[start])[0] if u != prev]
        if not nxt:
            return length
        if len(nxt) > 1:
            return -1
        prev, start = start, nxt[0]
        length += 1


def classify_affine_ade(a) -> str:
    """Name the affine simply-laced Dynkin diagram with adjacency ``a``.

    Returns e.g. "AffineA(3)", "AffineD(5)", "AffineE6", or "Unrecognized".
    Finite (non-affine) diagrams are Unrecognized.
    """
    adj = np.asarray(a, dtype=np.int64)
    n = len(adj)
    if n == 0 or adj.shape != (n, n) or np.any(adj != adj.T) or np.any(adj < 0):
        return UNRECOGNIZED
    if np.any(np.diag(adj) != 0):
        return UNRECOGNIZED
    if n == 2 and adj[0, 1] == 2:
        return "AffineA(1)"
    if np.any(adj > 1) or not _connected(adj):
        return UNRECOGNIZED
    deg = adj.sum(axis=1)
    edges = int(adj.sum()) // 2
    if edges == n:
        if n >= 3 and np.all(deg == 2):
            return f"AffineA({n - 1})"
        return UNRECOGNIZED
    if edges != n - 1:
        return UNRECOGNIZED
    counts = Counter(int(d) for d in deg)
    if max(counts) > 4:
        return UNRECOGNIZED
    if counts[4] == 1:
        return "AffineD(4)" if n == 5 else UNRECOGNIZED
    branch = [int(v) for v in np.nonzero(deg == 3)[0]]
    if len(branch) == 1:
        b = branch[0]
        arms = tuple(sorted(_arm_length(adj, int(u), b) for u in np.nonzero(adj[b])[0]))
        return _EXCEPTIONAL_ARMS.get(arms, UNRECOGNIZED)
    if len(branch) == 2:
        # both branch nodes carry two single-node arms
        for b in branch:
            leaves = [u for u in np.nonzero(adj[b])[0] if deg[u] == 1]
            if len(leaves) != 2:
                return UNRECOGNIZED
        return f"AffineD({n - 1})"
    return UNRECOGNIZED


def cartan_null_check(g: McKayGraph, dims=None) -> bool:
    """True iff (2I - A) annihilates the dimension vector, in exact integers."""
    d = g.dims if dims is None else np.asarray(dims, dtype=np.int64)
    cartan = 2 * np.eye(len(d), dtype=np.int64) - g.adjacency
    return bool(np.all(cartan @ d == 0))


def to_dot(g: McKayGraph) -> str:
    lines = ["graph mckay {", f"  // ade_type: {g.ade_type}"]
    for i, (name, dim) in enumerate(g.nodes):
        label = f"{name}({dim})".replace('"', '\\"')
        lines.append(f'  n{i} [label="{label}"];')
    n = len(g.nodes)
    for i in range(n):
        for j in range(i + 1, n):
            m = int(g.adjacency[i, j])
            if m == 1:
                lines.append(f"  n{i} -- n{j};")
            elif m >= 2:
                lines.append(f"  n{i} -- n{j} [label={m}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
