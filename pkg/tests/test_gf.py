import numpy as np
import pytest

from vigraph import gf
from vigraph.errors import InputError, PreconditionError, SingularMatrixError
from vigraph.gf import FieldSpec, field_for_size
from vigraph.graph import path_graph
from vigraph.matching import TutteInstance
from vigraph.decomposition import build_decomposition

F16 = FieldSpec.of_degree(16)


def poly_mulmod(a: int, b: int, m: int) -> int:
    """Schoolbook product followed by long division, one bit at a time."""
    prod = 0
    for i in range(b.bit_length()):
        if b >> i & 1:
            prod ^= a << i
    while prod.bit_length() >= m.bit_length():
        prod ^= m << (prod.bit_length() - m.bit_length())
    return prod


def test_small_field_example():
    f = FieldSpec(3, 0b1011)
    assert f.mul(0b10, 0b100) == 0b11


@pytest.mark.parametrize("q", [3, 8, 16, 20, 32])
def test_standard_moduli_irreducible(q):
    assert gf.is_irreducible(gf.default_modulus(q))


def test_reducible_modulus_rejected():
    with pytest.raises(InputError):
        FieldSpec(4, 0b10101)
    with pytest.raises(InputError):
        FieldSpec(4, 0b1011)


@pytest.mark.parametrize("q", [8, 20, 32])
def test_field_axioms(q):
    f = FieldSpec.of_degree(q)
    rng = np.random.default_rng(q)
    a, b, c = (f.random(rng, 10_000) for _ in range(3))
    assert not np.any(a ^ a)
    assert np.array_equal(f.vmul(f.vmul(a, b), c), f.vmul(a, f.vmul(b, c)))
    assert np.array_equal(f.vmul(a, b ^ c), f.vmul(a, b) ^ f.vmul(a, c))
    assert np.array_equal(f.vmul(np.ones_like(a), a), a)
    for x, y in zip(a[:200].tolist(), b[:200].tolist()):
        assert f.mul(x, y) == poly_mulmod(x, y, f.modulus)
        if x:
            assert f.mul(x, f.inv(x)) == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_field_for_size():
    assert field_for_size(10).q == 20
    assert field_for_size(2000).q == 32
    assert field_for_size(300).q == 27


def test_basic_matrix_facts():
    rng = np.random.default_rng(0)
    assert np.array_equal(gf.inverse(F16, gf.identity(5)), gf.identity(5))
    assert gf.rank(F16, np.zeros((4, 6), dtype=np.int64)) == 0
    a = F16.random(rng, (6, 6))
    b = F16.random(rng, (6, 6))
    assert gf.det(F16, gf.mat_mul(F16, a, b)) == F16.mul(gf.det(F16, a), gf.det(F16, b))


def test_inverse_of_singular_carries_rank():
    a = np.array([[1, 2, 3], [2, 4, 6], [0, 0, 1]], dtype=np.int64)
    a[1] = a[0]
    with pytest.raises(SingularMatrixError) as info:
        gf.inverse(F16, a)
    assert info.value.rank == 2


def test_tutte_rank_of_four_path():
    g = path_graph(4)
    inst = TutteInstance.random(g, build_decomposition(g, [], 4), F16, 3)
    assert gf.rank(F16, inst.dense()) == 4


def test_row_basis_spans():
    rng = np.random.default_rng(5)
    for _ in range(30):
        r = int(rng.integers(1, 6))
        a = gf.mat_mul(F16, F16.random(rng, (8, r)), F16.random(rng, (r, 7)))
        basis = gf.row_basis(F16, a)
        assert len(basis) == gf.rank(F16, a) == gf.rank(F16, a[basis])


def test_skew_rank_is_even_and_basis_block_nonsingular():
    rng = np.random.default_rng(6)
    for _ in range(40):
        n = int(rng.integers(1, 10))
        a = np.triu(F16.random(rng, (n, n)) * (rng.random((n, n)) < 0.3), 1)
        a ^= a.T
        r = gf.rank(F16, a)
        assert r % 2 == 0
        x = gf.row_basis(F16, a)
        assert gf.det(F16, gf.submatrix(a, x)) != 0 or r == 0


def test_schur_examples():
    a = np.array([[1, 0, 0], [0, 5, 7], [0, 7, 9]], dtype=np.int64)
    assert np.array_equal(gf.schur_complement(F16, a, [0]), a[1:, 1:])
    two = np.array([[1, 1], [1, 0]], dtype=np.int64)
    assert gf.schur_complement(F16, two, [0]).tolist() == [[1]]
    with pytest.raises(PreconditionError):
        gf.schur_complement(F16, two, [1])


def test_harvey_examples():
    rng = np.random.default_rng(9)
    m = F16.random(rng, (4, 4))
    while gf.det(F16, m) == 0:
        m = F16.random(rng, (4, 4))
    inv = gf.inverse(F16, m)
    assert np.array_equal(gf.harvey_update(F16, inv, np.zeros((2, 2), np.int64), [0, 1], [2, 3]), inv)

    # rank-one update of the 2x2 identity against direct re-inversion
    u, v = 3, 5
    delta = np.array([[F16.mul(u, v)]], dtype=np.int64)
    got = gf.harvey_update(F16, gf.identity(2), delta, [0], [1])
    ident = gf.identity(2)
    ident[0, 1] ^= delta[0, 0]
    assert np.array_equal(got, gf.inverse(F16, ident))

    # a change that makes the matrix singular is rejected, not raised
    one = gf.identity(1)
    assert gf.harvey_update(F16, one, one, [0], [0]) is None
    with pytest.raises(InputError):
        gf.harvey_update(F16, inv, np.zeros((1, 2), np.int64), [0], [1])


def test_harvey_on_principal_block():
    rng = np.random.default_rng(11)
    m = F16.random(rng, (8, 8))
    while gf.det(F16, m) == 0:
        m = F16.random(rng, (8, 8))
    inv = gf.inverse(F16, m)
    block = [1, 3, 4, 6]
    s_loc, t_loc = [0, 1], [2, 3]
    delta = F16.random(rng, (2, 2))
    changed = m.copy()
    changed[np.ix_([1, 3], [4, 6])] ^= delta
    got = gf.harvey_update(F16, inv[np.ix_(block, block)], delta, s_loc, t_loc)
    if gf.det(F16, changed) == 0:
        assert got is None
    else:
        assert np.array_equal(got, gf.inverse(F16, changed)[np.ix_(block, block)])


def test_pfaffian_examples():
    assert gf.pfaffian_small(F16, np.array([[0, 9], [9, 0]])) == 9
    assert gf.pfaffian_small(F16, np.zeros((6, 6), np.int64)) == 0
    assert gf.pfaffian_small(F16, np.zeros((3, 3), np.int64)) == 0
    with pytest.raises(InputError):
        gf.pfaffian_small(F16, np.zeros((14, 14), np.int64))


def test_hex_round_trip():
    a = F16.random(np.random.default_rng(2), (3, 4))
    text = gf.to_hex(a)
    assert text.count("\n") == 3
    assert np.array_equal(gf.from_hex(text), a)


def test_validate_rejects_out_of_field():
    with pytest.raises(InputError):
        FieldSpec.of_degree(8).validate(np.array([256]))
