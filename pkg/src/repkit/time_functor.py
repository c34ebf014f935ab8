"""Label-level time functor in both signatures, with its colax and
module-functor checks, injective homomorphism search and ample diagrams."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .characters import CharacterTable, round_multiplicities
from .errors import DegenerateImmirzi, InvalidSpec, SearchBudgetExceeded
from .groups import FiniteGroup, product_group
from .module_action import action_matrix, admissible_spins, spin, su2_character_at, su2_fusion

SEARCH_BUDGET = 10**8
MAX_SOURCE_ORDER = 60
AMPLE_SIZES = (4, 5)


@dataclass(frozen=True)
class EuclideanLabel:
    twice_jL: int
    twice_jR: int

    def to_json(self) -> dict:
        return {"twice_jL": self.twice_jL, "twice_jR": self.twice_jR}


@dataclass(frozen=True)
class LorentzianLabel:
    twice_k: int
    rho: float

    @property
    def k(self) -> float:
        return self.twice_k / 2

    def to_json(self) -> dict:
        return {"twice_k": self.twice_k, "k": self.k, "rho": self.rho}


@dataclass(frozen=True)
class ImmirziParam:
    gamma: float

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise InvalidSpec(f"Immirzi parameter must be finite, got {self.gamma!r}")


def ft_euclidean(j) -> EuclideanLabel:
    """Spin j goes to the SO(4) label (j, j)."""
    j = spin(j)
    return EuclideanLabel(j.twice_j, j.twice_j)


def ft_euclidean_sum(spins) -> list[EuclideanLabel]:
    """Apply the functor to a direct sum, summand by summand."""
    return [ft_euclidean(j) for j in spins]


def ft_lorentzian(k, gamma: ImmirziParam | float) -> LorentzianLabel:
    """Spin k goes to the SL(2,C) principal-series label (k, gamma k)."""
    if not isinstance(gamma, ImmirziParam):
        gamma = ImmirziParam(float(gamma))
    if gamma.gamma == 0:
        raise DegenerateImmirzi("gamma = 0 is degenerate")
    k = spin(k)
    return LorentzianLabel(k.twice_j, gamma.gamma * (k.twice_j / 2))


@dataclass(frozen=True)
class ColaxReport:
    n_abc: int
    image_mult: int
    injective: bool

    def to_json(self) -> dict:
        return {"n": self.n_abc, "image": self.image_mult, "injective": self.injective}


def colax_check(a, b, c) -> ColaxReport:
    """Compare c in a (x) b against (c, c) in (a, a) (x) (b, b).

    The SO(4) tensor product splits over the left and right SU(2) factors,
    so the image multiplicity is a product of one fusion number per factor.
    """
    n = su2_fusion(a, b, c)
    left = su2_fusion(a, b, c)
    right = su2_fusion(a, b, c)
    image = left * right
    return ColaxReport(n, image, n == 0 or image >= n)


@dataclass
class ProductModuleReport:
    group: str
    twice_j_max: int
    # (twice_j, m, c, left, right)
    entries: list[tuple[int, int, int, int, int]] = field(default_factory=list)

    @property
    def counterexamples(self) -> list[tuple[int, int, int, int, int]]:
        """Entries breaking left <= right."""
        return [e for e in self.entries if e[3] > e[4]]

    @property
    def strict(self) -> list[tuple[int, int, int, int, int]]:
        """Entries where the injection is proper (left < right)."""
        return [e for e in self.entries if e[3] != e[4]]

    @property
    def ok(self) -> bool:
        return not self.counterexamples and all(
            (e[3] == e[4]) == (e[3] in (0, 1)) for e in self.entries)

    def to_json(self) -> dict:
        return {"group": self.group, "twice_j_max": self.twice_j_max,
                "entries": len(self.entries),
                "counterexamples": [list(e) for e in self.counterexamples],
                "strict": [list(e) for e in self.strict], "ok": self.ok}


def product_module_check(t: CharacterTable, j_max) -> ProductModuleReport:
    """Compare the action of j on m, pushed into Rep(G x G) by m -> m (x) m,
    with the action of the image (j, j) on m (x) m.

    Left multiplicities of c (x) c come from the action matrices of G; right
    ones are character inner products over the classes of G x G.
    """
    g = t.group
    pg = product_group(g, g)
    k = len(t.irreps)
    sizes = np.array(pg.class_sizes, dtype=float)
    angles = np.array([c.angles for c in pg.classes])
    left_idx, right_idx = np.divmod(np.arange(len(pg.classes)), k)
    report = ProductModuleReport(g.name, spin(j_max).twice_j)
    for j in admissible_spins(t, j_max):
        m_j = action_matrix(t, j).m
        fj = su2_character_at(j, angles[:, 0]) * su2_character_at(j, angles[:, 1])
        for m in range(k):
            mu_m = t.chi[m, left_idx] * t.chi[m, right_idx]
            lhs_char = fj * mu_m
            boxes = t.chi[:, left_idx] * t.chi[:, right_idx]  # c (x) c for every c
            raw = (boxes.conj() @ (sizes * lhs_char)) / pg.order
            right, _ = round_multiplicities(raw)
            for c in range(k):
                report.entries.append((j.twice_j, m, c, int(m_j[m, c]), int(right[c])))
    return report


@dataclass
class HomSearchResult:
    count: int
    witnesses: list[tuple[int, ...]]

    def to_json(self) -> dict:
        return {"count": self.count, "witnesses": [list(w) for w in self.witnesses]}


def _spanning_tree(g: FiniteGroup, gens: tuple[int, ...]):
    """BFS order with (parent, generator index) for every non-identity element."""
    parent = np.full(g.order, -1)
    via = np.full(g.order, -1)
    order = [0]
    seen = {0}
    i = 0
    while i < len(order):
        x = order[i]
        for gi, s in enumerate(gens):
            y = int(g.mul(x, s))
            if y not in seen:
                seen.add(y)
                parent[y], via[y] = x, gi
                order.append(y)
        i += 1
    if len(order) != g.order:
        raise InvalidSpec(f"{g.name}: generators do not generate the group")
    return order, parent, via


def find_injective_homs(g: FiniteGroup, h: FiniteGroup, batch: int = 65536) -> HomSearchResult:
    """All injective homomorphisms g -> h, as images of g's generators.

    Candidates send each generator to an element of the same order. Each
    candidate is extended along a spanning tree, checked on every Cayley
    graph edge, then verified on the full multiplication table.
    """
    if g.order > MAX_SOURCE_ORDER:
        raise InvalidSpec(f"source group order {g.order} exceeds {MAX_SOURCE_ORDER}")
    gens = g.generators
    tree, parent, via = _spanning_tree(g, gens)
    g_ord = g.element_orders()
    h_ord = h.element_orders()
    pools = [np.nonzero(h_ord == g_ord[s])[0] for s in gens]
    shape = tuple(len(p) for p in pools)
    total = math.prod(shape)
    if total > SEARCH_BUDGET:
        raise SearchBudgetExceeded(f"{total} candidate tuples exceed {SEARCH_BUDGET}")

    ids = np.arange(g.order)
    g_table = g.mult_table
    witnesses = []
    for start in range(0, total, batch):
        flat = np.arange(start, min(start + batch, total))
        picks = np.unravel_index(flat, shape)
        imgs = np.stack([pools[i][picks[i]] for i in range(len(gens))], axis=1)
        phi = np.zeros((len(flat), g.order), dtype=np.int64)
        for y in tree[1:]:
            phi[:, y] = h.mul(phi[:, parent[y]], imgs[:, via[y]])
        ok = np.ones(len(flat), dtype=bool)
        for gi, s in enumerate(gens):
            ok &= np.all(phi[:, g_table[ids, s]] == h.mul(phi, imgs[:, gi:gi + 1]), axis=1)
        ok &= np.all(np.diff(np.sort(phi, axis=1), axis=1) != 0, axis=1)
        for row in np.nonzero(ok)[0]:
            p = phi[row]
            if np.array_equal(p[g_table], h.mul(p[:, None], p[None, :])):
                witnesses.append(tuple(int(v) for v in imgs[row]))
    return HomSearchResult(len(witnesses), witnesses)


@dataclass(frozen=True)
class Diagram:
    """Multigraph on ``vertex_count`` vertices; loops are not allowed."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.vertex_count < 1:
            raise InvalidSpec("a diagram needs at least one vertex")
        norm = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidSpec(f"loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InvalidSpec(f"edge ({u}, {v}) out of range")
            norm.append((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def complete(cls, n: int) -> Diagram:
        return cls(n, tuple(itertools.combinations(range(n), 2)))

    @classmethod
    def from_json(cls, data: dict) -> Diagram:
        return cls(int(data["vertices"]), tuple(tuple(e) for e in data.get("edges", [])))

    def add_edge(self, u: int, v: int) -> Diagram:
        return Diagram(self.vertex_count, self.edges + ((u, v),))


def is_ample(d: Diagram) -> bool:
    """A complete graph on 4 or 5 vertices, possibly with extra edges."""
    if d.vertex_count not in AMPLE_SIZES:
        return False
    present = set(d.edges)
    return all(pair in present for pair in itertools.combinations(range(d.vertex_count), 2))


def is_colax_and_ample(colax_reports, diagrams) -> bool:
    """Every colax report injective and every diagram in the family ample."""
    return all(r.injective for r in colax_reports) and all(is_ample(d) for d in diagrams)
