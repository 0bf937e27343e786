import numpy as np
import pytest

from corpora import planted
from vigraph import gf
from vigraph.blocks import BlockTutteMatrix, square_on_edges, square_on_edges_array, structured_mul
from vigraph.decomposition import build_decomposition
from vigraph.errors import InputError
from vigraph.gf import FieldSpec
from vigraph.graph import complete_graph, cycle_graph, petersen_graph

F = FieldSpec.of_degree(20)


def test_dense_round_trip_and_symmetry():
    for seed, g, d in planted(30, 40):
        b = BlockTutteMatrix.random_tutte(g, d, F, np.random.default_rng(seed))
        a = b.dense()
        assert np.array_equal(a, a.T)
        assert not np.any(np.diag(a))
        assert np.array_equal(a != 0, g.dense().astype(bool))
        assert np.array_equal(BlockTutteMatrix.adjacency(g, d).dense(), g.dense())


def test_structured_mul_identity_and_zero():
    g = petersen_graph()
    d = build_decomposition(g, [0, 1, 2, 3], 10)
    b = BlockTutteMatrix.random_tutte(g, d, F, np.random.default_rng(0))
    assert np.array_equal(structured_mul(b, gf.identity(10)), b.dense())
    assert not structured_mul(b, np.zeros((10, 10), np.int64)).any()
    with pytest.raises(InputError):
        structured_mul(b, np.zeros((9, 10), np.int64))
    with pytest.raises(InputError):
        structured_mul(b, gf.identity(10), side="middle")


def test_structured_mul_integer_adjacency_matches_dense():
    rng = np.random.default_rng(4)
    for _, g, d in planted(30, 60):
        b = BlockTutteMatrix.adjacency(g, d)
        m = rng.integers(0, 5, size=(g.n, g.n))
        assert np.array_equal(structured_mul(b, m), g.dense() @ m)
        assert np.array_equal(structured_mul(b, m, "right"), m @ g.dense())


def test_structured_mul_rectangular():
    rng = np.random.default_rng(8)
    for seed, g, d in planted(20, 40):
        b = BlockTutteMatrix.random_tutte(g, d, F, rng)
        m = F.random(rng, (g.n, 3))
        assert np.array_equal(structured_mul(b, m), gf.mat_mul(F, b.dense(), m))


@pytest.mark.parametrize(
    "g, expected",
    [(complete_graph(3), 1), (cycle_graph(4), 0), (petersen_graph(), 0), (complete_graph(5), 3)],
)
def test_square_on_edges_examples(g, expected):
    d = build_decomposition(g, [0], g.n)
    values = square_on_edges(g, d)
    assert set(values) == set(g.edges)
    assert set(values.values()) == {expected}


def test_square_on_edges_counts_common_neighbours():
    for _, g, d in planted(100, 40):
        got = square_on_edges_array(g, d)
        want = [len(set(g.neighbors(u)) & set(g.neighbors(v))) for u, v in g.edges]
        assert got.tolist() == want
