"""Character tables, fusion multiplicities and irrep dimension profiles."""
from __future__ import annotations

import functools
import os
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec, NonIntegralMultiplicity, NumericalDegeneracy
from .groups import FiniteGroup, GroupSpec, Kind, build_group, catalog

GAP_TOL = 1e-8
ORTHO_TOL = 1e-8
ROUND_TOL = 1e-6
MAX_RETRIES = 8
GENERATION_PROFILE = (1, 1, 1, 3)


def default_seed() -> int:
    """Diagonalization seed; ``REPKIT_SEED`` overrides the default of 0."""
    return int(os.environ.get("REPKIT_SEED", "0"))


@dataclass(frozen=True)
class Irrep:
    index: int
    dim: int
    name: str


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: FiniteGroup
    irreps: tuple[Irrep, ...]
    chi: np.ndarray

    @property
    def dims(self) -> np.ndarray:
        return np.array([r.dim for r in self.irreps], dtype=np.int64)

    @property
    def sizes(self) -> np.ndarray:
        return np.array(self.group.class_sizes, dtype=float)

    @property
    def names(self) -> list[str]:
        return [r.name for r in self.irreps]

    @property
    def trivial(self) -> Irrep:
        return self.irreps[0]

    def irrep(self, key) -> Irrep:
        """Look up an irrep by Irrep, index or name."""
        if isinstance(key, Irrep):
            return key
        if isinstance(key, (int, np.integer)):
            return self.irreps[int(key)]
        for r in self.irreps:
            if r.name == key:
                return r
        raise KeyError(f"{self.group.name} has no irrep named {key!r}")

    def inner(self, f: np.ndarray, g: np.ndarray) -> complex:
        """Class-function inner product (1/|G|) sum_c |c| f(c) conj(g(c))."""
        return complex(np.sum(self.sizes * f * np.conj(g)) / self.group.order)

    def decompose(self, f: np.ndarray) -> np.ndarray:
        """Multiplicity of every irrep in the class function ``f``."""
        raw = (self.chi.conj() @ (self.sizes * f)) / self.group.order
        return round_multiplicities(raw)[0]


@dataclass(frozen=True, eq=False)
class FusionTensor:
    n: np.ndarray
    residual: float

    def __getitem__(self, idx):
        return self.n[idx]


def round_multiplicities(values) -> tuple[np.ndarray, float]:
    """Round character inner products to nonnegative integers.

    Returns the integers and the largest rounding residual; raises
    NonIntegralMultiplicity past ROUND_TOL."""
    values = np.asarray(values)
    rounded = np.rint(values.real)
    residual = float(np.max(np.abs(values - rounded), initial=0.0))
    if residual > ROUND_TOL:
        raise NonIntegralMultiplicity(f"rounding residual {residual:.3g} exceeds {ROUND_TOL}")
    if np.any(rounded < 0):
        raise NonIntegralMultiplicity("negative multiplicity")
    return rounded.astype(np.int64), residual


def class_structure_constants(g: FiniteGroup) -> np.ndarray:
    """Integer a[r, s, t] with C_r C_s = sum_t a[r, s, t] C_t for class sums."""
    k = len(g.classes)
    ids = np.arange(g.order)
    cls = g.class_of
    inv = g.inverse
    a = np.zeros((k, k, k), dtype=np.int64)
    for t, c in enumerate(g.classes):
        # x in C_r, y = x^-1 z in C_s with z the representative of C_t
        ys = cls[g.mul(inv[ids], c.representative)]
        np.add.at(a[:, :, t], (cls, ys), 1)
    return a


def _eigen_characters(a: np.ndarray, sizes: np.ndarray, order: int,
                      seed: int, gap_tol: float) -> np.ndarray:
    # In the basis C_t / sqrt|C_t| multiplication by C_r has adjoint
    # multiplication by the inverse class, so N_r^T = N_{r*}.
    root = np.sqrt(sizes)
    n = np.einsum("rst,t,s->rts", a.astype(float), root, 1.0 / root)
    rng = np.random.default_rng(seed)
    alpha = rng.uniform(-1.0, 1.0, len(sizes)) / sizes
    beta = rng.uniform(-1.0, 1.0, len(sizes)) / sizes
    sym = n + np.transpose(n, (0, 2, 1))
    anti = n - np.transpose(n, (0, 2, 1))
    h = np.tensordot(alpha, sym, axes=1) + 1j * np.tensordot(beta, anti, axes=1)
    w, v = np.linalg.eigh(h)
    scale = max(1.0, float(np.max(np.abs(w))))
    if len(w) > 1 and np.min(np.diff(w)) <= gap_tol * scale:
        raise NumericalDegeneracy(f"eigenvalue gap {np.min(np.diff(w)):.3g}")
    phase = v[0] / np.abs(v[0])
    y = v / phase
    return (np.conj(y) * np.sqrt(order / sizes)[:, None]).T


def _snap_to_roots_of_unity(g: FiniteGroup, chi: np.ndarray) -> np.ndarray:
    """Rebuild every value as an integer sum of roots of unity.

    The values chi(x^k), k = 0..o-1, fix how often each o-th root of unity
    is an eigenvalue of x. Summing those roots again drops the eigensolver
    noise, so the table no longer depends on the seed.
    """
    out = np.empty_like(chi)
    for c, cl in enumerate(g.classes):
        x = cl.representative
        powers = [0]
        y = x
        while y != 0:
            powers.append(y)
            y = int(g.mul(y, x))
        o = len(powers)
        counts = np.fft.fft(chi[:, g.class_of[powers]], axis=1) / o
        ints = np.rint(counts.real)
        if np.max(np.abs(counts - ints)) > ROUND_TOL:
            raise NumericalDegeneracy("eigenvalue counts are not integral")
        out[:, c] = ints @ np.exp(2j * np.pi * np.arange(o) / o)
    return out


def orthogonality_residuals(chi: np.ndarray, sizes, order: int) -> tuple[float, float]:
    """Largest deviation of the row and column orthogonality relations."""
    sizes = np.asarray(sizes, dtype=float)
    rows = (chi * sizes) @ chi.conj().T - order * np.eye(len(chi))
    cols = chi.conj().T @ chi - np.diag(order / sizes)
    return float(np.max(np.abs(rows))), float(np.max(np.abs(cols)))


def _sort_key(row: np.ndarray, dim: int):
    # descending lexicographic on the rounded values puts the trivial row first
    vals = np.round(row, 9) + (0.0 + 0.0j)
    return (dim, tuple(v for z in vals for v in (-z.real, -z.imag)))


def _names(g: FiniteGroup, dims: list[int], chi: np.ndarray) -> list[str]:
    seen: dict[int, int] = {}
    names = []
    for d in dims:
        k = seen.get(d, 0)
        seen[d] = k + 1
        names.append(str(d) + "'" * k if k <= 2 else f"{d}_{k}")
    if g.spec.kind is Kind.TETRA:
        # 1' takes positive imaginary part on the first 3-cycle class
        three_cycle = next(i for i, c in enumerate(g.classes)
                           if abs(c.angle - 2 * np.pi / 3) < 1e-9)
        ones = [i for i, d in enumerate(dims) if d == 1][1:]
        for i in ones:
            names[i] = "1'" if chi[i, three_cycle].imag > 0 else "1''"
    return names


@functools.lru_cache(maxsize=512)
def _table_cached(g: FiniteGroup, seed: int, gap_tol: float) -> CharacterTable:
    sizes = np.array(g.class_sizes, dtype=float)
    a = class_structure_constants(g)
    last = None
    for attempt in range(MAX_RETRIES + 1):
        try:
            chi = _eigen_characters(a, sizes, g.order, seed + attempt, gap_tol)
        except NumericalDegeneracy as exc:
            last = exc
            continue
        if max(orthogonality_residuals(chi, sizes, g.order)) > ORTHO_TOL:
            last = NumericalDegeneracy("orthogonality check failed")
            continue
        raw_dims = chi[:, 0].real
        dims = np.rint(raw_dims).astype(np.int64)
        if np.max(np.abs(raw_dims - dims)) > ORTHO_TOL:
            last = NumericalDegeneracy("non-integral irrep dimension")
            continue
        try:
            chi = _snap_to_roots_of_unity(g, chi)
        except NumericalDegeneracy as exc:
            last = exc
            continue
        order = sorted(range(len(dims)), key=lambda i: _sort_key(chi[i], dims[i]))
        chi = chi[order]
        dims = [int(dims[i]) for i in order]
        chi.setflags(write=False)
        names = _names(g, dims, chi)
        irreps = tuple(Irrep(i, d, nm) for i, (d, nm) in enumerate(zip(dims, names)))
        return CharacterTable(g, irreps, chi)
    raise NumericalDegeneracy(
        f"{g.name}: class-sum eigenspaces not separated after {MAX_RETRIES} retries ({last})")


def character_table(g: FiniteGroup | GroupSpec | str, seed: int | None = None,
                    gap_tol: float = GAP_TOL) -> CharacterTable:
    """Character table by simultaneous diagonalization of class sums.

    Rows are sorted by dimension, then by descending rounded character
    vector, so the trivial character is always row 0.
    """
    if not isinstance(g, FiniteGroup):
        g = build_group(g)
    return _table_cached(g, default_seed() if seed is None else seed, gap_tol)


def fusion_tensor(t: CharacterTable) -> FusionTensor:
    """n[a, b, c] = multiplicity of c in a (x) b."""
    chi = t.chi
    k = len(chi)
    pair = (chi[:, None, :] * chi[None, :, :]).reshape(k * k, -1)
    raw = (pair @ (t.sizes[:, None] * chi.conj().T)) / t.group.order
    n, residual = round_multiplicities(raw.reshape(k, k, k))
    n.setflags(write=False)
    return FusionTensor(n, residual)


def tensor_multiplicity(t: CharacterTable, a, b, c) -> int:
    a, b, c = t.irrep(a), t.irrep(b), t.irrep(c)
    raw = t.inner(t.chi[a.index] * t.chi[b.index], t.chi[c.index])
    return int(round_multiplicities([raw])[0][0])


def dimension_profile(t: CharacterTable) -> list[int]:
    return sorted(r.dim for r in t.irreps)


def search_generation_groups(max_order: int) -> list[GroupSpec]:
    """SO(3) catalog groups whose irreps are exactly three 1-dim and one 3-dim."""
    if max_order > 120:
        raise InvalidSpec("search_generation_groups is limited to max_order <= 120")
    hits = []
    for spec in catalog(max_order, binary=False):
        g = build_group(spec)
        if len(g.classes) != len(GENERATION_PROFILE):
            continue  # irrep count equals class count
        if tuple(dimension_profile(character_table(g))) == GENERATION_PROFILE:
            hits.append(spec)
    return hits


def table_to_json(t: CharacterTable) -> dict:
    def r9(x):
        return round(float(x), 9) + 0.0

    return {
        "group": t.group.name,
        "order": t.group.order,
        "classes": [{"size": c.size, "angle": r9(c.angle)} for c in t.group.classes],
        "irreps": [{"name": r.name, "dim": r.dim} for r in t.irreps],
        "chi": [[[r9(z.real), r9(z.imag)] for z in row] for row in t.chi],
    }
