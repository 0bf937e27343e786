import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from vigraph import cycles, gf, matching
from vigraph.apsp import apsp
from vigraph.decomposition import build_decomposition, greedy_separator, validate_separator
from vigraph.gf import FieldSpec
from vigraph.graph import Graph
from vigraph.oracles import oracle_apsp, oracle_max_matching

F20 = FieldSpec.of_degree(20)
SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, max_n=14):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def decomposed(draw, max_n=14):
    g = draw(graphs(max_n))
    sep, k = greedy_separator(g)
    return g, build_decomposition(g, sep, k)


elements = st.integers(0, F20.order - 1)


@SETTINGS
@given(graphs(), st.data())
def test_validity_is_monotone_in_k(g, data):
    sep = data.draw(st.lists(st.integers(0, max(g.n - 1, 0)), unique=True, max_size=g.n)) if g.n else []
    k = data.draw(st.integers(1, g.n + 1))
    if validate_separator(g, sep, k):
        assert validate_separator(g, sep, k + 1)


@SETTINGS
@given(decomposed())
def test_decomposition_invariants(gd):
    g, d = gd
    d.check(g)
    covered = sorted(list(d.separator) + [v for part in d.parts for v in part])
    assert covered == list(range(g.n))
    sep = set(d.separator)
    for u, v in g.edges:
        if u not in sep and v not in sep:
            assert d.part_of[u] == d.part_of[v]


@SETTINGS
@given(elements, elements, elements)
def test_field_axioms(a, b, c):
    f = F20
    assert f.mul(a, b) == f.mul(b, a)
    assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, a) == 0 and f.mul(a, 1) == a
    if a:
        assert f.mul(a, f.inv(a)) == 1


@SETTINGS
@given(st.integers(1, 8), st.integers(0, 2**31))
def test_inverse_round_trip(n, seed):
    a = F20.random(np.random.default_rng(seed), (n, n))
    if gf.det(F20, a):
        assert np.array_equal(gf.mat_mul(F20, a, gf.inverse(F20, a)), gf.identity(n))
    else:
        assert gf.rank(F20, a) < n


@SETTINGS
@given(decomposed(max_n=12), st.integers(0, 2**31))
def test_tutte_rank_is_even_and_twice_matching(gd, seed):
    g, d = gd
    r = matching.tutte_rank(matching.TutteInstance.random(g, d, FieldSpec.of_degree(32), seed))
    assert r % 2 == 0
    assert r == 2 * len(oracle_max_matching(g))


@SETTINGS
@given(decomposed(max_n=20), st.sampled_from(["naive", "bd"]))
def test_apsp_equals_oracle(gd, kernel):
    g, d = gd
    assert np.array_equal(apsp(g, d, kernel).entries, oracle_apsp(g))


@SETTINGS
@given(decomposed(max_n=16))
def test_girth_at_most_even_girth(gd):
    g, d = gd
    rep, even = cycles.girth(g, d), cycles.even_girth(g, d)
    if even is not None:
        assert rep is not None and rep.length <= even.length
        assert even.length % 2 == 0
    if rep is not None:
        rep.verify(g)
