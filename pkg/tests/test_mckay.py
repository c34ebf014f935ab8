import numpy as np
import pytest
import sympy

from repkit.characters import character_table
from repkit.errors import NotBinaryGroup
from repkit.groups import catalog
from repkit.mckay import (McKayGraph, cartan_null_check, classify_affine_ade, mckay_graph,
                          to_dot)


def adjacency(n, edges):
    a = np.zeros((n, n), dtype=int)
    for u, v in edges:
        a[u, v] += 1
        a[v, u] += 1
    return a


def star(arms):
    """Center 0 with paths of the given lengths attached."""
    edges, nxt = [], 1
    for length in arms:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
    return adjacency(nxt, edges)


def cycle(n):
    return adjacency(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return adjacency(n, [(i, i + 1) for i in range(n - 1)])


def affine_d(n):
    # n + 1 nodes: a path 2..n-2 with leaves 0, 1 and n-1, n at its ends
    edges = [(i, i + 1) for i in range(2, n - 2)]
    edges += [(0, 2), (1, 2), (n - 2, n - 1), (n - 2, n)]
    return adjacency(n + 1, edges)


@pytest.mark.parametrize("spec,ade,nodes,dims", [
    ("2T", "AffineE6", 7, [1, 1, 1, 2, 2, 2, 3]),
    ("2O", "AffineE7", 8, [1, 1, 2, 2, 2, 3, 3, 4]),
    ("2I", "AffineE8", 9, [1, 2, 2, 3, 3, 4, 4, 5, 6]),
])
def test_exceptional(spec, ade, nodes, dims):
    g = mckay_graph(character_table(spec))
    assert g.ade_type == ade
    assert len(g.nodes) == nodes
    assert sorted(g.dims.tolist()) == dims


@pytest.mark.parametrize("n", range(1, 7))
def test_binary_cyclic_is_a_cycle(n):
    g = mckay_graph(character_table(f"2Z{n}"))
    assert g.ade_type == f"AffineA({2 * n - 1})"
    assert len(g.nodes) == 2 * n
    assert set(g.dims.tolist()) == {1}
    if n > 1:
        assert np.all(g.adjacency.sum(axis=1) == 2)


@pytest.mark.parametrize("n", range(2, 7))
def test_binary_dihedral(n):
    assert mckay_graph(character_table(f"2D{n}")).ade_type == f"AffineD({n + 2})"


def test_binary_dihedral_one_is_cyclic_of_order_four():
    # 2D1 is Z4, so its diagram is the 4-cycle (affine D3 coincides with affine A3)
    assert mckay_graph(character_table("2D1")).ade_type == "AffineA(3)"


def test_not_binary():
    with pytest.raises(NotBinaryGroup):
        mckay_graph(character_table("T"))
    with pytest.raises(NotBinaryGroup):
        mckay_graph(character_table("2TxZ1"))


@pytest.mark.parametrize("spec", catalog(120, binary=True), ids=str)
def test_affine_invariants(spec):
    g = mckay_graph(character_table(spec))
    a = g.adjacency
    assert np.array_equal(a, a.T)
    assert np.all(np.diag(a) == 0)
    assert g.ade_type != "Unrecognized"
    assert cartan_null_check(g)
    assert abs(np.max(np.linalg.eigvalsh(a.astype(float))) - 2) < 1e-8
    # connected: (I + A)^(n-1) has no zero entries
    n = len(a)
    reach = np.linalg.matrix_power(np.eye(n, dtype=bool) | (a > 0), max(n - 1, 1))
    assert reach.all()


@pytest.mark.parametrize("spec", catalog(48, binary=True), ids=str)
def test_dims_span_the_integer_kernel(spec):
    g = mckay_graph(character_table(spec))
    cartan = sympy.Matrix(2 * np.eye(len(g.nodes), dtype=int) - g.adjacency)
    kernel = cartan.nullspace()
    assert len(kernel) == 1
    v = kernel[0] / min(x for x in kernel[0] if x != 0)
    assert [int(x) for x in v] == g.dims.tolist() or [-int(x) for x in v] == g.dims.tolist()


@pytest.mark.parametrize("adj,expected", [
    (star([2, 2, 2]), "AffineE6"),
    (star([1, 3, 3]), "AffineE7"),
    (star([1, 2, 5]), "AffineE8"),
    (cycle(3), "AffineA(2)"),
    (cycle(8), "AffineA(7)"),
    (np.array([[0, 2], [2, 0]]), "AffineA(1)"),
    (star([1, 1, 1, 1]), "AffineD(4)"),
    (affine_d(5), "AffineD(5)"),
    (affine_d(9), "AffineD(9)"),
    (path(3), "Unrecognized"),
    (star([1, 2, 2]), "Unrecognized"),   # finite E6
    (star([1, 2, 4]), "Unrecognized"),   # finite E8
    (star([2, 2, 3]), "Unrecognized"),   # hyperbolic
    (star([1, 1, 3]), "Unrecognized"),   # finite D6
    (adjacency(4, [(0, 1), (2, 3)]), "Unrecognized"),
    (np.array([[2]]), "Unrecognized"),
    (np.array([[0]]), "Unrecognized"),
    (adjacency(3, [(0, 1), (0, 1), (1, 2)]), "Unrecognized"),
    (star([1, 1, 1, 1, 1]), "Unrecognized"),
])
def test_classifier(adj, expected):
    assert classify_affine_ade(adj) == expected


def test_classifier_ignores_labelling():
    rng = np.random.default_rng(3)
    a = star([1, 2, 5])
    for _ in range(5):
        p = rng.permutation(len(a))
        assert classify_affine_ade(a[p][:, p]) == "AffineE8"


def test_cartan_null_check_examples():
    g = mckay_graph(character_table("2T"))
    assert sorted(g.dims.tolist()) == [1, 1, 1, 2, 2, 2, 3]
    assert cartan_null_check(g)
    c = mckay_graph(character_table("2Z2"))
    assert c.ade_type == "AffineA(3)" and cartan_null_check(c)
    bumped = g.dims.copy()
    bumped[0] += 1
    assert not cartan_null_check(g, bumped)


def test_dot_binary_tetra():
    text = to_dot(mckay_graph(character_table("2T")))
    assert "// ade_type: AffineE6" in text
    assert text.count("[label=") == 7
    assert text.count(" -- ") == 6
    assert text.startswith("graph mckay {") and text.endswith("}\n")


def test_dot_single_node():
    g = McKayGraph((("1", 1),), np.zeros((1, 1), dtype=int), "Unrecognized")
    text = to_dot(g)
    assert text.count("[label=") == 1 and " -- " not in text


def test_dot_double_edge():
    g = mckay_graph(character_table("2Z1"))
    assert g.ade_type == "AffineA(1)"
    text = to_dot(g)
    assert text.count('[label="') == 2
    assert "n0 -- n1 [label=2];" in text


def test_dot_is_deterministic():
    a = to_dot(mckay_graph(character_table("2O")))
    b = to_dot(mckay_graph(character_table("2O", seed=5)))
    assert a == b
