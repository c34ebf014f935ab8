import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import repkit.time_functor as tf
from repkit.characters import character_table
from repkit.errors import DegenerateImmirzi, InvalidSpec, SearchBudgetExceeded
from repkit.groups import build_group
from repkit.module_action import SpinLabel
from repkit.time_functor import (Diagram, EuclideanLabel, ImmirziParam, colax_check,
                                 find_injective_homs, ft_euclidean, ft_euclidean_sum,
                                 ft_lorentzian, is_ample, is_colax_and_ample, product_module_check)


def so4_weight_multiplicity(a, b, c):
    """Oracle: multiplicity of (c, c) in (a, a) (x) (b, b) from 2D weight counts."""
    weights = {}
    for p1 in range(-a, a + 1, 2):
        for q1 in range(-a, a + 1, 2):
            for p2 in range(-b, b + 1, 2):
                for q2 in range(-b, b + 1, 2):
                    key = (p1 + p2, q1 + q2)
                    weights[key] = weights.get(key, 0) + 1

    def w(p, q):
        return weights.get((p, q), 0)

    return w(c, c) - w(c + 2, c) - w(c, c + 2) + w(c + 2, c + 2)


def su2_weight_multiplicity(a, b, c):
    weights = {}
    for p in range(-a, a + 1, 2):
        for q in range(-b, b + 1, 2):
            weights[p + q] = weights.get(p + q, 0) + 1
    return weights.get(c, 0) - weights.get(c + 2, 0)


# --- functor on labels ------------------------------------------------------

def test_euclidean_examples():
    assert ft_euclidean(0.5) == EuclideanLabel(1, 1)
    assert ft_euclidean(SpinLabel(7)).to_json() == {"twice_jL": 7, "twice_jR": 7}
    for tj in range(21):
        assert ft_euclidean(SpinLabel(tj)) == EuclideanLabel(tj, tj)


def test_euclidean_on_sums():
    spins = [SpinLabel(1), SpinLabel(4), SpinLabel(1)]
    assert ft_euclidean_sum(spins) == [ft_euclidean(j) for j in spins]
    assert ft_euclidean_sum([]) == []


def test_lorentzian_examples():
    label = ft_lorentzian(1, 0.2375)
    assert label.twice_k == 2 and label.k == 1.0
    assert label.rho == pytest.approx(0.2375, abs=1e-12)
    assert ft_lorentzian(0, 3.0).rho == 0.0
    assert ft_lorentzian(1.5, ImmirziParam(-2.0)).rho == -3.0


@given(st.integers(0, 40), st.floats(-1e6, 1e6).filter(lambda g: g != 0))
def test_lorentzian_rho_is_gamma_k(twice_k, gamma):
    label = ft_lorentzian(SpinLabel(twice_k), gamma)
    assert abs(label.rho - gamma * twice_k / 2) <= 1e-12 * max(1.0, abs(gamma * twice_k))


def test_degenerate_immirzi():
    with pytest.raises(DegenerateImmirzi):
        ft_lorentzian(1, 0)
    with pytest.raises(DegenerateImmirzi):
        ft_lorentzian(1, -0.0)
    with pytest.raises(InvalidSpec):
        ImmirziParam(math.inf)


# --- colax ------------------------------------------------------------------

def test_colax_examples():
    r = colax_check(0.5, 0.5, 0)
    assert (r.n_abc, r.image_mult, r.injective) == (1, 1, True)
    r = colax_check(1, 1, 1)
    assert r.to_json() == {"n": 1, "image": 1, "injective": True}
    r = colax_check(0.5, 0.5, 1.5)
    assert (r.n_abc, r.image_mult, r.injective) == (0, 0, True)


def test_colax_matches_weight_oracle():
    for a in range(7):
        for b in range(7):
            for c in range(a + b + 3):
                r = colax_check(SpinLabel(a), SpinLabel(b), SpinLabel(c))
                assert r.n_abc == su2_weight_multiplicity(a, b, c)
                assert r.image_mult == so4_weight_multiplicity(a, b, c)


@given(st.integers(0, 10), st.integers(0, 10), st.integers(0, 10))
def test_colax_square(a, b, c):
    r = colax_check(SpinLabel(a), SpinLabel(b), SpinLabel(c))
    assert r.image_mult == r.n_abc ** 2
    assert r.injective == (r.n_abc == 0 or r.image_mult >= r.n_abc)


def test_colax_and_ample():
    reports = [colax_check(SpinLabel(1), SpinLabel(1), SpinLabel(c)) for c in range(4)]
    assert is_colax_and_ample(reports, [Diagram.complete(4), Diagram.complete(5)])
    assert not is_colax_and_ample(reports, [Diagram.complete(3)])
    assert is_colax_and_ample([], [])


# --- product module ---------------------------------------------------------

@pytest.mark.parametrize("spec", ["T", "Z3"])
def test_product_module(spec):
    report = product_module_check(character_table(spec), 2)
    assert report.ok
    assert not report.counterexamples
    for _, _, _, left, right in report.entries:
        assert left <= right
        assert (left == right) == (left in (0, 1))


def test_product_module_cyclic_three_small_spins():
    # through j = 1 every action entry is 0 or 1, so nothing is strict
    report = product_module_check(character_table("Z3"), 1)
    assert {e[3] for e in report.entries} <= {0, 1}
    assert report.strict == []


def test_product_module_cyclic_three_has_strict_entries_at_spin_two():
    report = product_module_check(character_table("Z3"), 2)
    assert {e[3] for e in report.entries if e[0] == 4} == {1, 2}
    assert all(e[3] == 2 and e[4] == 4 for e in report.strict)


def test_product_module_entry_count():
    report = product_module_check(character_table("T"), 2)
    assert len(report.entries) == 3 * 4 * 4
    assert report.to_json()["entries"] == 48


def test_product_module_right_side_is_squared_for_abelian():
    # for abelian G the right side is left squared
    report = product_module_check(character_table("Z4"), 3)
    assert all(right == left * left for *_, left, right in report.entries)


# --- injective homomorphisms ------------------------------------------------

@pytest.mark.parametrize("src,dst,count", [
    ("T", "O", 24),     # one A4 in S4, times |Aut(A4)| = 24
    ("T", "T", 24),     # automorphisms of A4
    ("T", "I", 120),    # five A4 subgroups in A5
    ("T", "Z12", 0),
    ("T", "2T", 0),     # 2T has a single involution
    ("Z2", "O", 9),     # involutions of S4
    ("Z3", "T", 8),     # elements of order 3 in A4
    ("D3", "O", 24),    # four S3 subgroups in S4, times |Aut(S3)| = 6
    ("Z1", "I", 1),
])
def test_injective_hom_counts(src, dst, count):
    assert find_injective_homs(build_group(src), build_group(dst)).count == count


def test_identity_is_a_witness():
    g = build_group("T")
    result = find_injective_homs(g, g)
    assert tuple(g.generators) in result.witnesses


def test_witness_images_keep_element_orders():
    g, h = build_group("D3"), build_group("O")
    for w in find_injective_homs(g, h).witnesses:
        assert all(h.element_orders()[x] == g.element_orders()[s]
                   for x, s in zip(w, g.generators))


def test_small_batches_agree():
    g, h = build_group("T"), build_group("O")
    assert find_injective_homs(g, h, batch=7).witnesses == find_injective_homs(g, h).witnesses


def test_search_budget(monkeypatch):
    monkeypatch.setattr(tf, "SEARCH_BUDGET", 10)
    with pytest.raises(SearchBudgetExceeded):
        find_injective_homs(build_group("T"), build_group("O"))


def test_source_order_bound():
    with pytest.raises(InvalidSpec):
        find_injective_homs(build_group("2I"), build_group("2I"))


# --- ample diagrams ---------------------------------------------------------

def test_ample_examples():
    assert is_ample(Diagram.complete(4))
    assert is_ample(Diagram.complete(5))
    assert is_ample(Diagram.complete(4).add_edge(0, 1))
    assert is_ample(Diagram.complete(5).add_edge(3, 1).add_edge(3, 1))
    assert not is_ample(Diagram.complete(3))
    assert not is_ample(Diagram(5, ((0, 1), (1, 2), (2, 3), (3, 4))))
    assert not is_ample(Diagram.complete(6))
    assert not is_ample(Diagram(1))


def random_diagram(rng):
    n = int(rng.integers(1, 6))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if not pairs:
        return Diagram(n)
    m = int(rng.integers(0, 2 * len(pairs) + 1))
    picks = rng.integers(0, len(pairs), m)
    base = tuple(pairs) if rng.random() < 0.3 else ()
    return Diagram(n, base + tuple(pairs[i] for i in picks))


def test_ample_is_monotone():
    rng = np.random.default_rng(2024)
    checked = ample = 0
    for _ in range(1000):
        d = random_diagram(rng)
        if d.vertex_count < 2:
            continue
        u, v = rng.choice(d.vertex_count, 2, replace=False)
        if is_ample(d):
            ample += 1
            assert is_ample(d.add_edge(int(u), int(v)))
        checked += 1
    assert checked > 500 and ample > 50


def test_diagram_validation():
    with pytest.raises(InvalidSpec):
        Diagram(3, ((1, 1),))
    with pytest.raises(InvalidSpec):
        Diagram(3, ((0, 3),))
    with pytest.raises(InvalidSpec):
        Diagram(0)
    d = Diagram.from_json({"vertices": 3, "edges": [[2, 0], [1, 0]]})
    assert d.edges == ((0, 1), (0, 2))
