"""The action of Rep(SU(2)) on Rep(G) by restriction and tensor product.

Spins are carried as twice-spin integers so half-integers stay exact.
Non-binary groups only admit integer spins.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .characters import CharacterTable, round_multiplicities
from .errors import HalfIntegerOnNonBinary, InvalidSpec
from .groups import Kind

LIMIT_TOL = 1e-9


@dataclass(frozen=True, order=True)
class SpinLabel:
    twice_j: int

    def __post_init__(self):
        if int(self.twice_j) != self.twice_j or self.twice_j < 0:
            raise InvalidSpec(f"twice_j must be a nonnegative integer, got {self.twice_j!r}")
        object.__setattr__(self, "twice_j", int(self.twice_j))

    @property
    def j(self) -> Fraction:
        return Fraction(self.twice_j, 2)

    @property
    def dim(self) -> int:
        return self.twice_j + 1

    @property
    def is_integer(self) -> bool:
        return self.twice_j % 2 == 0

    def __str__(self):
        return str(self.j)


def spin(j) -> SpinLabel:
    """SpinLabel from a spin value: ``spin(1.5)``, ``spin("3/2")``, or a label."""
    if isinstance(j, SpinLabel):
        return j
    twice = Fraction(j) * 2
    if twice.denominator != 1:
        raise InvalidSpec(f"{j!r} is not a half-integer")
    return SpinLabel(int(twice))


@dataclass(frozen=True, eq=False)
class ActionMatrix:
    j: SpinLabel
    m: np.ndarray


@dataclass
class ModuleAxiomReport:
    group: str
    twice_j_max: int
    checked: int = 0
    violations: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"group": self.group, "twice_j_max": self.twice_j_max,
                "checked": self.checked, "violations": [list(v) for v in self.violations],
                "ok": self.ok}


def su2_character_at(j: SpinLabel, theta):
    """sin((2j+1) theta/2) / sin(theta/2), with the limits at 0 and 2 pi."""
    j = spin(j)
    theta = np.asarray(theta, dtype=float)
    half = np.sin(theta / 2.0)
    small = np.abs(half) < LIMIT_TOL
    safe = np.where(small, 1.0, half)
    value = np.sin(j.dim * theta / 2.0) / safe
    # near 0 the limit is 2j+1, near 2 pi it is (-1)^(2j) (2j+1)
    sign = np.where(np.cos(theta / 2.0) > 0, 1.0, (-1.0) ** j.twice_j)
    value = np.where(small, sign * j.dim, value)
    return float(value) if value.ndim == 0 else value


def _check_admissible(t: CharacterTable, j: SpinLabel) -> None:
    if t.group.spec.kind is Kind.PRODUCT:
        raise InvalidSpec(f"{t.group.name} is not a subgroup of SU(2)")
    if not t.group.is_binary and not j.is_integer:
        raise HalfIntegerOnNonBinary(
            f"spin {j} does not restrict to the SO(3) group {t.group.name}")


def admissible_spins(t: CharacterTable, j_max) -> list[SpinLabel]:
    step = 1 if t.group.is_binary else 2
    return [SpinLabel(k) for k in range(0, spin(j_max).twice_j + 1, step)]


def spin_character(t: CharacterTable, j) -> np.ndarray:
    j = spin(j)
    _check_admissible(t, j)
    return su2_character_at(j, np.array(t.group.class_angles))


def restrict_spin(t: CharacterTable, j) -> np.ndarray:
    """Multiplicity of each irrep of G in the spin-j representation."""
    return t.decompose(spin_character(t, j))


def action_matrix(t: CharacterTable, j) -> ActionMatrix:
    """m[rho, sigma] = multiplicity of sigma in Res(j) (x) rho."""
    j = spin(j)
    chi = t.chi
    f = spin_character(t, j)
    raw = ((f * chi) * t.sizes) @ chi.conj().T / t.group.order
    m, _ = round_multiplicities(raw)
    m.setflags(write=False)
    return ActionMatrix(j, m)


def su2_fusion(j1, j2, j3) -> int:
    """1 iff j3 occurs in j1 (x) j2."""
    a, b, c = spin(j1).twice_j, spin(j2).twice_j, spin(j3).twice_j
    return int(abs(a - b) <= c <= a + b and (a + b + c) % 2 == 0)


def verify_module_axiom(t: CharacterTable, j_max) -> ModuleAxiomReport:
    """Check M_{j1} M_{j2} = sum_{j3} N_{j1 j2}^{j3} M_{j3} for admissible j1, j2 <= j_max."""
    spins = admissible_spins(t, j_max)
    report = ModuleAxiomReport(t.group.name, spin(j_max).twice_j)
    cache: dict[int, np.ndarray] = {}

    def mat(tj: int) -> np.ndarray:
        if tj not in cache:
            cache[tj] = action_matrix(t, SpinLabel(tj)).m
        return cache[tj]

    for s1 in spins:
        for s2 in spins:
            lhs = mat(s1.twice_j) @ mat(s2.twice_j)
            rhs = np.zeros_like(lhs)
            for tj3 in range(abs(s1.twice_j - s2.twice_j), s1.twice_j + s2.twice_j + 1, 2):
                rhs += su2_fusion(s1, s2, SpinLabel(tj3)) * mat(tj3)
            report.checked += 1
            if not np.array_equal(lhs, rhs):
                report.violations.append((s1.twice_j, s2.twice_j))
    return report


def restriction_table(t: CharacterTable, j_max) -> tuple[list[SpinLabel], np.ndarray]:
    """Rows: admissible spins up to j_max; columns: irreps of G."""
    _check_admissible(t, SpinLabel(0))
    spins = admissible_spins(t, j_max)
    angles = np.array(t.group.class_angles)
    values = np.array([su2_character_at(s, angles) for s in spins])
    raw = (values * t.sizes) @ t.chi.conj().T / t.group.order
    return spins, round_multiplicities(raw)[0]


def induction_row(t: CharacterTable, rho, j_max) -> dict[int, int]:
    """Multiplicity of each spin j <= j_max in Ind(rho), keyed by twice_j.

    By Frobenius reciprocity this is the multiplicity of rho in Res(j),
    read as a column of the restriction table."""
    rho = t.irrep(rho)
    spins, table = restriction_table(t, j_max)
    return {s.twice_j: int(table[i, rho.index]) for i, s in enumerate(spins)}


def action_to_json(t: CharacterTable, mats: list[ActionMatrix]) -> dict:
    return {
        "group": t.group.name,
        "irreps": t.names,
        "matrices": {str(a.j.twice_j): a.m.tolist() for a in mats},
    }
