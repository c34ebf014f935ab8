"""Finite subgroups of SO(3) and their binary covers in SU(2).

Every catalog group is realized concretely as a set of unit quaternions,
closed breadth-first from the generators listed in ``data/generators.cfg``.
SO(3) groups identify ``q`` with ``-q``. Products of two groups (the
SO(4) left/right construction) are stored through their factors and
never materialize a multiplication table unless asked to.
"""
from __future__ import annotations

import ast
import enum
import functools
import math
import operator
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ClosureOverflow, InvalidSpec

MAX_ORDER = 14_400
DECIMALS = 12
ANGLE_TOL = 1e-9


class Kind(str, enum.Enum):
    CYCLIC = "Cyclic"
    DIHEDRAL = "Dihedral"
    TETRA = "Tetra"
    OCTA = "Octa"
    ICOSA = "Icosa"
    BINARY_CYCLIC = "BinaryCyclic"
    BINARY_DIHEDRAL = "BinaryDihedral"
    BINARY_TETRA = "BinaryTetra"
    BINARY_OCTA = "BinaryOcta"
    BINARY_ICOSA = "BinaryIcosa"
    PRODUCT = "Product"


_FAMILIES = {Kind.CYCLIC, Kind.DIHEDRAL, Kind.BINARY_CYCLIC, Kind.BINARY_DIHEDRAL}
_BINARY = {Kind.BINARY_CYCLIC, Kind.BINARY_DIHEDRAL, Kind.BINARY_TETRA,
           Kind.BINARY_OCTA, Kind.BINARY_ICOSA}
_FIXED_ORDER = {Kind.TETRA: 12, Kind.OCTA: 24, Kind.ICOSA: 60,
                Kind.BINARY_TETRA: 24, Kind.BINARY_OCTA: 48, Kind.BINARY_ICOSA: 120}
_SHORT = {Kind.CYCLIC: "Z", Kind.DIHEDRAL: "D", Kind.TETRA: "T", Kind.OCTA: "O",
          Kind.ICOSA: "I"}


@dataclass(frozen=True)
class GroupSpec:
    """Name of a catalog group, e.g. ``GroupSpec(Kind.BINARY_DIHEDRAL, 3)``."""

    kind: Kind
    n: int = 0
    factors: tuple[GroupSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.PRODUCT:
            if len(self.factors) != 2:
                raise InvalidSpec("Product needs exactly two factors")
            if self.depth > 2:
                raise InvalidSpec("Product nesting depth is limited to 2")
        elif self.factors:
            raise InvalidSpec(f"{self.kind.value} takes no factors")
        elif self.kind in _FAMILIES:
            if not isinstance(self.n, int) or self.n < 1:
                raise InvalidSpec(f"{self.kind.value} needs n >= 1, got {self.n!r}")
        elif self.n not in (0, None):
            raise InvalidSpec(f"{self.kind.value} takes no parameter")

    @property
    def depth(self) -> int:
        if self.kind is not Kind.PRODUCT:
            return 0
        return 1 + max(f.depth for f in self.factors)

    @property
    def order(self) -> int:
        """Catalog order, known before any closure is run."""
        k = self.kind
        if k is Kind.PRODUCT:
            return self.factors[0].order * self.factors[1].order
        if k in _FIXED_ORDER:
            return _FIXED_ORDER[k]
        return {Kind.CYCLIC: 1, Kind.DIHEDRAL: 2, Kind.BINARY_CYCLIC: 2,
                Kind.BINARY_DIHEDRAL: 4}[k] * self.n

    @property
    def binary(self) -> bool:
        return self.kind in _BINARY

    @property
    def name(self) -> str:
        if self.kind is Kind.PRODUCT:
            return f"Product({self.factors[0].name}, {self.factors[1].name})"
        if self.kind in _FAMILIES:
            return f"{self.kind.value}({self.n})"
        return self.kind.value

    @property
    def short(self) -> str:
        """CLI spelling: Z5, D4, T, 2T, 2D3, TxT."""
        if self.kind is Kind.PRODUCT:
            return "x".join(f.short for f in self.factors)
        base = self.kind.value.removeprefix("Binary")
        s = _SHORT[Kind(base)]
        if self.kind in _FAMILIES:
            s += str(self.n)
        return "2" + s if self.binary else s

    def __str__(self):
        return self.name

    @classmethod
    def product(cls, a: GroupSpec, b: GroupSpec) -> GroupSpec:
        return cls(Kind.PRODUCT, 0, (a, b))


_ALIASES = {"A4": "T", "S4": "O", "A5": "I"}
_TOKEN = re.compile(r"^(2?)([ZD])(\d+)$|^(2?)([TOI])$")


def parse_group_spec(text: str) -> GroupSpec:
    """Parse the short notation: Z<n>, D<n>, T, O, I, a "2" prefix for the
    binary cover, and "x" between factors for products (left associative).
    A4, S4, A5 are accepted for T, O, I."""
    parts = text.strip().split("x")
    if len(parts) > 1:
        spec = parse_group_spec(parts[0])
        for p in parts[1:]:
            spec = GroupSpec.product(spec, parse_group_spec(p))
        return spec
    tok = _ALIASES.get(parts[0], parts[0])
    m = _TOKEN.match(tok)
    if not m:
        raise InvalidSpec(f"unrecognized group spec {text!r}")
    if m.group(2):
        binary, letter, n = m.group(1), m.group(2), int(m.group(3))
    else:
        binary, letter, n = m.group(4), m.group(5), 0
    base = {"Z": Kind.CYCLIC, "D": Kind.DIHEDRAL, "T": Kind.TETRA,
            "O": Kind.OCTA, "I": Kind.ICOSA}[letter]
    kind = Kind("Binary" + base.value) if binary else base
    return GroupSpec(kind, n)


def catalog(max_order: int, binary: bool | None = None) -> list[GroupSpec]:
    """All non-product catalog groups of order <= max_order, in a fixed order."""
    out = []
    kinds = [k for k in Kind if k is not Kind.PRODUCT]
    if binary is not None:
        kinds = [k for k in kinds if (k in _BINARY) == binary]
    for kind in kinds:
        if kind in _FAMILIES:
            n = 1
            while GroupSpec(kind, n).order <= max_order:
                out.append(GroupSpec(kind, n))
                n += 1
        elif _FIXED_ORDER[kind] <= max_order:
            out.append(GroupSpec(kind))
    return out


# --- quaternion arithmetic -------------------------------------------------

@dataclass(frozen=True)
class Quaternion:
    w: float
    x: float
    y: float
    z: float

    def __mul__(self, other: Quaternion) -> Quaternion:
        return Quaternion(*qmul(self.array, other.array))

    @property
    def array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def canonical(self, projective: bool = False) -> Quaternion:
        return Quaternion(*canonicalize(self.array, projective).reshape(4).tolist())


def qmul(a, b):
    """Hamilton product, broadcasting over leading axes."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = np.moveaxis(a, -1, 0)
    bw, bx, by, bz = np.moveaxis(b, -1, 0)
    return np.stack([
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    ], axis=-1)


def canonicalize(q, projective: bool = False) -> np.ndarray:
    """Round to the 12-digit grid. With ``projective`` pick the sign of
    +-q whose first nonzero coordinate is positive."""
    q = np.round(np.asarray(q, dtype=float), DECIMALS) + 0.0
    if projective:
        q = np.atleast_2d(q)
        nz = q != 0.0
        first = np.argmax(nz, axis=-1)
        lead = np.take_along_axis(q, first[..., None], axis=-1)
        q = np.where(lead < 0, -q, q) + 0.0
    return q


# --- generator config ------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_FUNCS = {"sqrt": math.sqrt, "cos": math.cos, "sin": math.sin}


def _eval_field(text: str, n: int) -> float:
    names = {"pi": math.pi, "phi": (1 + math.sqrt(5)) / 2, "n": n}

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Name) and node.id in names:
            return float(names[node.id])
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1):
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise InvalidSpec(f"unsupported expression in generator field: {text!r}")

    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise InvalidSpec(f"bad generator field {text!r}") from exc
    return ev(tree)


def parse_generator_config(text: str) -> dict[str, list[list[str]]]:
    blocks: dict[str, list[list[str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            Kind(current)  # unknown headers fail loudly
            blocks[current] = []
            continue
        fields = line.split()
        if current is None or len(fields) != 4:
            raise InvalidSpec(f"generator config line {lineno}: expected 4 fields")
        blocks[current].append(fields)
    return blocks


@functools.lru_cache(maxsize=None)
def _default_config() -> dict[str, list[list[str]]]:
    text = resources.files("repkit").joinpath("data/generators.cfg").read_text()
    return parse_generator_config(text)


def load_generator_config(path: str | Path) -> dict[str, list[list[str]]]:
    return parse_generator_config(Path(path).read_text())


def generators_for(spec: GroupSpec, config=None) -> np.ndarray:
    config = _default_config() if config is None else config
    try:
        rows = config[spec.kind.value]
    except KeyError:
        raise InvalidSpec(f"no generators configured for {spec.kind.value}") from None
    gens = np.array([[_eval_field(f, spec.n) for f in row] for row in rows], dtype=float)
    norms = np.linalg.norm(gens, axis=1)
    if np.any(np.abs(norms - 1) > 1e-6):
        raise InvalidSpec(f"{spec.kind.value}: generators are not unit quaternions")
    return gens / norms[:, None]


# --- groups ----------------------------------------------------------------

@dataclass(frozen=True)
class ConjClass:
    representative: int
    size: int
    angle: float
    # per-factor angles for product groups
    angles: tuple[float, ...] = ()


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A concrete finite group. Element 0 is the identity."""

    spec: GroupSpec
    order: int
    inverse: np.ndarray
    classes: tuple[ConjClass, ...]
    class_of: np.ndarray
    is_binary: bool
    generators: tuple[int, ...]
    quaternions: np.ndarray | None = None
    factors: tuple[FiniteGroup, ...] = ()
    _table: np.ndarray | None = field(default=None, repr=False)

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, x, y):
        """Product of element ids; broadcasts over numpy arrays."""
        if self._table is not None:
            return self._table[x, y]
        a, b = self.factors
        xa, xb = np.divmod(x, b.order)
        ya, yb = np.divmod(y, b.order)
        return a.mul(xa, ya) * b.order + b.mul(xb, yb)

    @functools.cached_property
    def mult_table(self) -> np.ndarray:
        if self._table is not None:
            return self._table
        ids = np.arange(self.order)
        t = self.mul(ids[:, None], ids[None, :])
        t.setflags(write=False)
        return t

    @property
    def class_sizes(self) -> list[int]:
        return [c.size for c in self.classes]

    @property
    def class_angles(self) -> list[float]:
        return [c.angle for c in self.classes]

    def element_orders(self) -> np.ndarray:
        ids = np.arange(self.order)
        orders = np.ones(self.order, dtype=np.int64)
        power = ids.copy()
        pending = power != 0
        k = 1
        while pending.any():
            k += 1
            power = self.mul(power, ids)
            hit = pending & (power == 0)
            orders[hit] = k
            pending &= ~hit
        return orders


MATCH_TOL = 1e-9


def _signed(q: np.ndarray, projective: bool) -> np.ndarray:
    """Full-precision representative matching the sign choice of canonicalize."""
    q = np.atleast_2d(q)
    if not projective:
        return q
    r = canonicalize(q)
    first = np.argmax(r != 0.0, axis=-1)
    lead = np.take_along_axis(r, first[..., None], axis=-1)
    return np.where(lead < 0, -q, q)


def _match(elems: np.ndarray, p: np.ndarray, projective: bool):
    """Index of the element equal to each row of ``p`` (within MATCH_TOL), or -1.

    Rounded-grid keys alone split values that straddle a rounding boundary,
    so elements are identified by distance.
    """
    dots = p @ elems.T
    if projective:
        dots = np.abs(dots)
    idx = np.argmax(dots, axis=-1)
    best = elems[idx]
    dist = np.linalg.norm(best - p, axis=-1)
    if projective:
        dist = np.minimum(dist, np.linalg.norm(best + p, axis=-1))
    return np.where(dist < MATCH_TOL, idx, -1)


def _closure(gens: np.ndarray, projective: bool, bound: int) -> np.ndarray:
    # Arithmetic runs on full-precision values, never on rounded ones.
    gens = _signed(gens, projective)
    elems = np.zeros((bound, 4))
    elems[0, 0] = 1.0
    size = 1
    i = 0
    while i < size:
        for p in _signed(qmul(elems[i][None, :], gens), projective):
            if _match(elems[:size], p[None, :], projective)[0] < 0:
                if size >= bound:
                    raise ClosureOverflow(
                        f"closure exceeded the catalog order {bound}")
                elems[size] = p
                size += 1
        i += 1
    return elems[:size]


def _lookup_table(quats: np.ndarray, projective: bool) -> np.ndarray:
    n = len(quats)
    prods = qmul(quats[:, None, :], quats[None, :, :]).reshape(-1, 4)
    table = _match(quats, prods, projective)
    if np.any(table < 0):
        raise ClosureOverflow("products left the closed element set")
    return table.reshape(n, n).astype(np.int64)


def _angle(q: np.ndarray, binary: bool) -> float:
    # atan2 stays accurate near w = +-1, where acos loses half the digits
    v = math.hypot(q[1], q[2], q[3])
    if binary:
        return 2.0 * math.atan2(v, q[0])
    return 2.0 * math.atan2(v, abs(q[0]))


def _conjugacy_orbits(order: int, mul, inverse: np.ndarray) -> list[np.ndarray]:
    ids = np.arange(order)
    seen = np.zeros(order, dtype=bool)
    orbits = []
    for x in range(order):
        if seen[x]:
            continue
        orbit = np.unique(mul(mul(ids, x), inverse))
        seen[orbit] = True
        orbits.append(orbit)
    return orbits


def conjugacy_classes(g: FiniteGroup) -> list[ConjClass]:
    """Classes in canonical order: ascending angle, size, representative id
    (product groups: pairs of factor classes in factor order)."""
    return list(g.classes)


def _sorted_classes(orbits, quats, binary):
    out = []
    for orbit in orbits:
        angles = [_angle(quats[e], binary) for e in orbit]
        if max(angles) - min(angles) > ANGLE_TOL:
            raise ClosureOverflow("conjugate elements with different rotation angles")
        out.append((round(angles[0], 9), len(orbit), int(orbit[0]), orbit, angles[0]))
    out.sort(key=lambda t: t[:3])
    classes = tuple(ConjClass(rep, size, ang) for _, size, rep, _, ang in out)
    class_of = np.empty(len(quats), dtype=np.int64)
    for i, t in enumerate(out):
        class_of[t[3]] = i
    return classes, class_of


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@functools.lru_cache(maxsize=None)
def _build_cached(spec: GroupSpec) -> FiniteGroup:
    return _build(spec, None)


def build_group(spec: GroupSpec | str, config=None) -> FiniteGroup:
    """Close the configured generators of ``spec`` into a concrete group.

    ``config`` is a parsed generator config (see ``load_generator_config``);
    the packaged catalog is used when omitted and results are cached.
    """
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    if spec.order > MAX_ORDER:
        raise ClosureOverflow(f"{spec.name} has order {spec.order} > {MAX_ORDER}")
    if config is None:
        return _build_cached(spec)
    return _build(spec, config)


def _build(spec: GroupSpec, config) -> FiniteGroup:
    if spec.kind is Kind.PRODUCT:
        return product_group(build_group(spec.factors[0], config),
                             build_group(spec.factors[1], config))
    binary = spec.binary
    projective = not binary
    gens = generators_for(spec, config)
    quats = _closure(gens, projective, spec.order)
    if len(quats) != spec.order:
        raise InvalidSpec(f"{spec.name}: generators close to order {len(quats)}, "
                          f"expected {spec.order}")
    table = _lookup_table(quats, projective)
    inverse = np.argmin(table, axis=1)
    orbits = _conjugacy_orbits(spec.order, lambda x, y: table[x, y], inverse)
    classes, class_of = _sorted_classes(orbits, quats, binary)
    gen_ids = tuple(int(i) for i in _match(quats, _signed(gens, projective), projective))
    is_binary = bool(binary and _match(quats, np.array([[-1.0, 0, 0, 0]]), False)[0] >= 0)
    return FiniteGroup(
        spec=spec, order=spec.order, inverse=_frozen(inverse), classes=classes,
        class_of=_frozen(class_of), is_binary=is_binary, generators=gen_ids,
        quaternions=_frozen(canonicalize(_signed(quats, projective))),
        _table=_frozen(table),
    )


def product_group(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Direct product; element (x, y) has id ``x * |b| + y``."""
    order = a.order * b.order
    if order > MAX_ORDER:
        raise ClosureOverflow(f"product order {order} exceeds {MAX_ORDER}")
    spec = GroupSpec.product(a.spec, b.spec)
    inverse = (a.inverse[:, None] * b.order + b.inverse[None, :]).reshape(-1)
    classes = []
    for ca in a.classes:
        for cb in b.classes:
            classes.append(ConjClass(ca.representative * b.order + cb.representative,
                                     ca.size * cb.size, ca.angle, (ca.angle, cb.angle)))
    kb = len(b.classes)
    class_of = (a.class_of[:, None] * kb + b.class_of[None, :]).reshape(-1)
    gens = tuple(x * b.order for x in a.generators) + tuple(b.generators)
    return FiniteGroup(
        spec=spec, order=order, inverse=_frozen(inverse), classes=tuple(classes),
        class_of=_frozen(class_of), is_binary=False, generators=gens, factors=(a, b),
    )
