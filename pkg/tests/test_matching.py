import numpy as np
import pytest

from corpora import matching_corpus, planted
from vigraph import gf, matching
from vigraph.decomposition import build_decomposition
from vigraph.errors import InternalError, ProbabilisticFailure
from vigraph.gf import FieldSpec
from vigraph.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    star_graph,
)
from vigraph.matching import Matching, TutteInstance
from vigraph.oracles import is_matching, matchable_case, oracle_max_matching

F32 = FieldSpec.of_degree(32)


def whole(g):
    return build_decomposition(g, [], max(g.n, 1))


def instance(g, d=None, seed=0):
    return TutteInstance.random(g, d or whole(g), F32, seed)


@pytest.mark.parametrize("g, rank", [(complete_graph(2), 2), (complete_graph(3), 2), (petersen_graph(), 10)])
def test_tutte_rank_examples(g, rank):
    assert matching.tutte_rank(instance(g)) == rank


def test_instance_entries_sit_on_edges():
    for seed, g, d in planted(20, 30):
        inst = instance(g, d, seed)
        a = inst.dense()
        assert np.array_equal(a != 0, g.dense().astype(bool))
        assert np.array_equal(a, a.T)


def test_rank_parity_and_bounds():
    for seed, g, d in planted(80, 40, start=100):
        inst = instance(g, d, seed)
        r = matching.tutte_rank(inst)
        assert r % 2 == 0
        assert r == gf.rank(F32, inst.dense())
        assert r // 2 == len(oracle_max_matching(g))


def test_has_perfect_matching_examples():
    assert matching.has_perfect_matching(cycle_graph(6), whole(cycle_graph(6)))
    assert not matching.has_perfect_matching(cycle_graph(7), whole(cycle_graph(7)))
    assert not matching.has_perfect_matching(star_graph(3), whole(star_graph(3)))
    assert matching.has_perfect_matching(Graph(0), whole(Graph(0)))


def test_schur_chain_determinant_conservation():
    for seed, g, d in planted(60, 16, start=40, make=matchable_case):
        inst = instance(g, d, seed)
        nonzero = gf.det(F32, inst.dense()) != 0
        assert matching.tutte_determinant_nonzero(inst) == nonzero


def test_find_perfect_matching_examples():
    found = matching.find_perfect_matching(cycle_graph(6), whole(cycle_graph(6)))
    assert found.size == 3
    found.verify(cycle_graph(6), perfect=True)
    assert matching.find_perfect_matching(cycle_graph(5), whole(cycle_graph(5))) is None
    g = complete_bipartite(4, 4)
    d = build_decomposition(g, [0, 1, 2, 3], 5)
    stats = {}
    found = matching.find_perfect_matching(g, d, stats=stats)
    found.verify(g, perfect=True)
    assert stats["attempts"] == 1
    assert 0 < stats["failure_bound"] < 1e-4


def test_find_perfect_matching_on_matchable_corpus():
    for seed, g, d in planted(80, 50, make=matchable_case):
        found = matching.find_perfect_matching(g, d, F32, seed)
        assert found is not None
        assert is_matching(g, found.edges, perfect=True)


def test_zero_retries_is_probabilistic_failure():
    with pytest.raises(ProbabilisticFailure):
        matching.find_perfect_matching(cycle_graph(4), whole(cycle_graph(4)), retries=0)


@pytest.mark.parametrize("g, size", [(star_graph(5), 1), (path_graph(4), 2), (petersen_graph(), 5), (Graph(3), 0)])
def test_max_matching_examples(g, size):
    found = matching.max_matching(g, whole(g))
    assert found.size == size
    found.verify(g)


def test_max_matching_matches_oracle():
    for seed, g, d in matching_corpus(120, 60, start=3000):
        found = matching.max_matching(g, d, F32, seed)
        assert found.size == len(oracle_max_matching(g))
        assert is_matching(g, found.edges)


def test_dense_perfect_matching():
    g = petersen_graph()
    a = instance(g).dense()
    pairs = matching.dense_perfect_matching(F32, a)
    assert is_matching(g, pairs, perfect=True)
    assert matching.dense_perfect_matching(F32, np.zeros((2, 2), np.int64)) is None
    assert matching.dense_perfect_matching(F32, np.zeros((3, 3), np.int64)) is None


def test_delete_edges_crossing_without_cross_entries_is_noop():
    g = Graph(4, [(0, 1), (2, 3)])
    a = instance(g).dense()
    out, survivors = matching.delete_edges_crossing(F32, a, gf.inverse(F32, a), [0, 1], [2, 3])
    assert np.array_equal(out, a) and survivors == []


def test_delete_edges_crossing_keeps_required_edge():
    # every perfect matching of the path uses the end edge 0-1, none needs 1-2
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    a = instance(g).dense()
    out, survivors = matching.delete_edges_crossing(F32, a, gf.inverse(F32, a), [0], [1])
    assert survivors == [(0, 1)]
    assert np.array_equal(out, a)
    out, survivors = matching.delete_edges_crossing(F32, a, gf.inverse(F32, a), [1], [2])
    assert survivors == [] and out[1, 2] == out[2, 1] == 0


def test_delete_edges_crossing_leaves_a_matching():
    rng = np.random.default_rng(21)
    for trial in range(40):
        half = int(rng.integers(1, 7))
        u_set, w_set = list(range(half)), list(range(half, 2 * half))
        edges = {(u, w) for u in u_set for w in w_set if rng.random() < 0.5}
        edges |= {(u, half + u) for u in u_set}
        g = Graph(2 * half, edges)
        a = instance(g, seed=trial).dense()
        out, survivors = matching.delete_edges_crossing(F32, a, gf.inverse(F32, a), u_set, w_set)
        assert gf.det(F32, out) != 0
        assert is_matching(g, survivors, perfect=True)
        # a pruned graph keeps a perfect matching
        pruned = Graph(g.n, survivors)
        assert matching.has_perfect_matching(pruned, whole(pruned))


def test_restrict_keeps_entries():
    g = petersen_graph()
    inst = instance(g)
    sub = inst.restrict([0, 1, 2, 5, 6, 7])
    keep = [0, 1, 2, 5, 6, 7]
    assert np.array_equal(sub.dense(), inst.dense()[np.ix_(keep, keep)])


def test_matching_value_type(tmp_path):
    m = Matching(((3, 1), (0, 2)))
    assert m.edges == ((0, 2), (1, 3))
    assert m.size == 2 and m.saturated == frozenset(range(4))
    assert m.to_text() == "0 2\n1 3\n"
    assert Matching.from_text(m.to_text()) == m
    path = tmp_path / "m.txt"
    m.write(path)
    assert path.read_text() == "0 2\n1 3\n"
    with pytest.raises(InternalError):
        Matching(((0, 1), (1, 2))).verify(path_graph(3))
    with pytest.raises(InternalError):
        Matching(((0, 1),)).verify(path_graph(4), perfect=True)
