import itertools

import pytest
from hypothesis import given, strategies as st

from ydext.algebra import (BalancedTensor, Bimodule, apply_bimodule_map, check_algebra, check_bimodule, make_algebra,
                           regular_bimodule, tensor_over)
from ydext.catalog import dual_numbers, split_quadratic, truncated_polynomial
from ydext.linalg import QQ, Matrix, rank


def test_make_algebra_examples():
    k = make_algebra(1, [[[1]]], [1])
    assert check_algebra(k).passed
    a = dual_numbers()
    assert a.mul(a.basis(1), a.basis(1)) == {}
    assert check_algebra(a).passed
    b = split_quadratic()
    assert b.mul(b.basis(1), b.basis(1)) == {0: 1}
    assert check_algebra(b).passed


def test_make_algebra_shape_errors():
    with pytest.raises(ValueError):
        make_algebra(2, [[[1, 0]]], [1, 0])
    with pytest.raises(ValueError):
        make_algebra(1, [[[1]]], [1, 0])


def test_non_associative_table_names_a_triple():
    # basis 1, x, y with x x = y, x y = x, all other products of x, y zero
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for i in range(3):
        c[0][i][i] = c[i][0][i] = 1
    c[1][1][2] = 1
    c[1][2][1] = 1
    rep = check_algebra(make_algebra(3, c, [1, 0, 0]))
    assert not rep.passed
    name, triple = rep.failures[0]
    assert name == "associativity" and len(triple) == 3


def test_opposite_and_tensor():
    a = truncated_polynomial(3)
    assert check_algebra(a.opposite()).passed
    ae = a.tensor(a.opposite())
    assert ae.dim == 9 and check_algebra(ae).passed


def test_regular_bimodule_and_tensor_dims():
    a = dual_numbers()
    reg = regular_bimodule(a)
    assert check_bimodule(reg).passed
    t = tensor_over(reg, reg, a)
    assert t.dim == 2
    assert check_bimodule(t.bimodule).passed
    k = make_algebra(1, [[[1]]], [1])
    assert tensor_over(regular_bimodule(k), regular_bimodule(k), k).dim == 1


def test_m_tensor_a_is_m():
    a = truncated_polynomial(3)
    reg = regular_bimodule(a)
    free = tensor_over(reg, reg, a)
    # M = A (x)_A A as a bimodule, tensored again with A
    again = tensor_over(free.bimodule, reg, a)
    assert again.dim == free.dim == 3


def test_multiplication_is_balanced():
    a = dual_numbers()
    reg = regular_bimodule(a)
    t = tensor_over(reg, reg, a)
    mult = Matrix(a.dim, a.dim * a.dim, tuple(a.table[i][j] for i in range(a.dim) for j in range(a.dim)))
    for rel in t.space.relations.basis:
        assert mult.apply(rel) == {}


def test_apply_bimodule_map():
    a = dual_numbers()
    reg = regular_bimodule(a)
    acts = {"left": (reg.left_act, reg.left_act), "right": (reg.right_act, reg.right_act)}
    assert apply_bimodule_map(Matrix.identity(2), acts).respects == ("left", "right")
    apply_bimodule_map(Matrix.zero(2, 2), acts)
    swap = Matrix.from_rows([[0, 1], [1, 0]])
    with pytest.raises(ValueError, match="not equivariant"):
        apply_bimodule_map(swap, acts)


def _kron(f: Matrix, g: Matrix) -> Matrix:
    cols = []
    for i, j in itertools.product(range(f.cols), range(g.cols)):
        col = {}
        for a, x in f.columns[i].items():
            for b, y in g.columns[j].items():
                col[a * g.rows + b] = x * y
        cols.append(col)
    return Matrix(f.rows * g.rows, f.cols * g.cols, tuple(cols))


@given(st.integers(0, 2), st.integers(0, 2))
def test_tensor_is_functorial(i, j):
    a = truncated_polynomial(3)
    reg = regular_bimodule(a)
    t = tensor_over(reg, reg, a).tensor
    f = a.left_mult(i)   # right A-linear
    g = a.right_mult(j)  # left A-linear
    lhs = t.space.projection @ _kron(f, g)
    rhs = t.induced([f, g]) @ t.space.projection
    assert lhs == rhs


def test_tensor_associativity_comparison_is_invertible():
    a = dual_numbers()
    m = regular_bimodule(a)
    mn = tensor_over(m, m, a)
    left = tensor_over(mn.bimodule, m, a)
    np_ = tensor_over(m, m, a)
    right = tensor_over(m, np_.bimodule, a)
    assert left.dim == right.dim
    cols = []
    for k in range(left.dim):
        q, p = left.tensor.rep(k)
        i, j = mn.tensor.rep(q)
        inner = np_.tensor.project_tuple((j, p))
        cols.append(right.tensor.project_pure([{i: QQ.one}, inner]))
    comp = Matrix(right.dim, left.dim, tuple(cols))
    assert rank(comp) == left.dim


def test_bimodule_checker_detects_noncommuting_actions():
    a = dual_numbers()
    reg = regular_bimodule(a)
    bad = Bimodule(a, a, 2, reg.left_act, (reg.right_act[0], Matrix.from_rows([[0, 1], [1, 0]])))
    assert not check_bimodule(bad).passed


def test_balanced_tensor_three_factors():
    a = dual_numbers()
    reg = regular_bimodule(a)
    t = BalancedTensor((2, 2, 2), [(reg.right_act, reg.left_act), (reg.right_act, reg.left_act)])
    assert t.dim == 2
