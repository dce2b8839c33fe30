import pytest
from hypothesis import given, settings, strategies as st

from monocat.linalg import (Field, QQ, VectorSpace, compose, identity, kernel,
                            make_map, NotInvertible, quotient_by_rows, rank,
                            solve_iso, tensor, zero_map)

F3 = Field(3)
F5 = Field(5)


def _space(field, n):
    return VectorSpace.make(field, n)


class TestCompose:
    def test_identity_neutral(self):
        V = _space(QQ, 3)
        f = make_map(V, V, [[1, 2, 0], [0, 1, 5], [7, 0, 1]])
        assert compose(identity(V), f).matrix == f.matrix
        assert compose(f, identity(V)).matrix == f.matrix

    def test_zero_annihilates(self):
        V = _space(QQ, 2)
        f = make_map(V, V, [[1, 2], [3, 4]])
        assert compose(f, zero_map(V, V)).is_zero()

    def test_mod3_product(self):
        # [[1,2],[0,1]]·[[1,0],[1,1]] = [[0,2],[1,1]] over F_3
        V = _space(F3, 2)
        f = make_map(V, V, [[1, 2], [0, 1]])
        g = make_map(V, V, [[1, 0], [1, 1]])
        expected = make_map(V, V, [[0, 2], [1, 1]])
        assert compose(f, g).matrix == expected.matrix

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            compose(make_map(_space(QQ, 2), _space(QQ, 2), [[1, 0], [0, 1]]),
                    make_map(_space(QQ, 3), _space(QQ, 3),
                             [[1, 0, 0], [0, 1, 0], [0, 0, 1]]))


class TestKernel:
    def test_zero_map_full_kernel(self):
        V = _space(QQ, 3)
        ker, incl = kernel(zero_map(V, V))
        assert ker.dim == 3
        assert compose(zero_map(V, V), incl).is_zero()

    def test_identity_trivial_kernel(self):
        V = _space(QQ, 2)
        ker, _ = kernel(identity(V))
        assert ker.dim == 0

    def test_rank_one(self):
        V = _space(QQ, 2)
        f = make_map(V, V, [[1, 2], [2, 4]])
        ker, incl = kernel(f)
        assert ker.dim == 1
        assert compose(f, incl).is_zero()
        assert rank(incl) == 1


class TestSolveIso:
    def test_identity(self):
        V = _space(QQ, 3)
        assert solve_iso(identity(V)).matrix == identity(V).matrix

    def test_involution(self):
        V = _space(QQ, 2)
        swap = make_map(V, V, [[0, 1], [1, 0]])
        assert solve_iso(swap).matrix == swap.matrix

    def test_non_square(self):
        with pytest.raises(NotInvertible):
            solve_iso(make_map(_space(QQ, 3), _space(QQ, 2),
                               [[1, 0, 0], [0, 1, 0]]))

    def test_singular(self):
        V = _space(F3, 2)
        with pytest.raises(NotInvertible):
            solve_iso(make_map(V, V, [[1, 2], [2, 1]]))


class TestTensor:
    def test_identity_tensor(self):
        V, W = _space(QQ, 2), _space(QQ, 3)
        t = tensor(identity(V), identity(W))
        assert t.matrix == identity(t.source).matrix
        assert t.source.dim == 6

    def test_zero_tensor(self):
        V = _space(QQ, 2)
        f = make_map(V, V, [[1, 2], [3, 4]])
        assert tensor(f, zero_map(V, V)).is_zero()


def _random_map_strategy(field, n):
    entry = st.integers(min_value=0, max_value=(field.char or 7) - 1)
    return st.lists(st.lists(entry, min_size=n, max_size=n),
                    min_size=n, max_size=n)


@settings(max_examples=40, deadline=None)
@given(_random_map_strategy(F5, 2), _random_map_strategy(F5, 2),
       _random_map_strategy(F5, 2), _random_map_strategy(F5, 2))
def test_tensor_interchange(a, b, c, d):
    V = _space(F5, 2)
    f, fp = make_map(V, V, a), make_map(V, V, b)
    g, gp = make_map(V, V, c), make_map(V, V, d)
    lhs = compose(tensor(f, g), tensor(fp, gp))
    rhs = tensor(compose(f, fp), compose(g, gp))
    assert lhs.matrix == rhs.matrix


@settings(max_examples=40, deadline=None)
@given(_random_map_strategy(F3, 3), _random_map_strategy(F3, 3),
       _random_map_strategy(F3, 3))
def test_compose_associative(a, b, c):
    V = _space(F3, 3)
    f, g, h = (make_map(V, V, m) for m in (a, b, c))
    assert compose(compose(f, g), h).matrix == compose(f, compose(g, h)).matrix


@settings(max_examples=40, deadline=None)
@given(_random_map_strategy(F5, 3))
def test_rank_nullity(a):
    V = _space(F5, 3)
    f = make_map(V, V, a)
    ker, _ = kernel(f)
    assert rank(f) + ker.dim == V.dim


def test_quotient_projection_section():
    V = _space(QQ, 4)
    rows = [tuple(QQ(x) for x in r) for r in [(1, 1, 0, 0), (0, 0, 1, -1)]]
    quot, proj, section = quotient_by_rows(V, rows)
    assert quot.dim == 2
    assert compose(proj, section).matrix == identity(quot).matrix
    for row in rows:
        assert all(not x for x in proj(row))
