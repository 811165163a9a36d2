import pytest
import sympy
from fractions import Fraction
from hypothesis import given, strategies as st

from ydext.linalg import (QQ, Echelon, Field, Matrix, ModP, Subspace, image, kernel, quotient, quotient_by, rank,
                          rref, solve)

F7 = Field(7)

small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return rows


def mat(rows, field=QQ):
    return Matrix.from_rows(rows, field)


def test_field_parsing_and_coercion():
    assert Field.parse("QQ") == QQ
    assert Field.parse("F(7)") == F7
    assert QQ("3/4") * 4 == 3
    assert F7("1/2") * 2 == F7(1)
    assert F7(10) == F7(3)
    with pytest.raises(ValueError):
        Field.parse("R")
    with pytest.raises(ValueError):
        Field(8)


def test_modp_arithmetic():
    a, b = ModP(3, 7), ModP(5, 7)
    assert (a + b).v == 1 and (a - b).v == 5 and (a * b).v == 1
    assert (a / b * b) == a
    assert -a == ModP(4, 7)
    with pytest.raises(ZeroDivisionError):
        a / ModP(0, 7)


def test_rref_examples():
    assert rref(Matrix.identity(3)) == Matrix.identity(3)
    assert rref(Matrix.zero(2, 4)) == Matrix.zero(2, 4)
    assert rref(mat([[2, 4], [1, 2]])) == mat([[1, 2], [0, 0]])


def test_kernel_examples():
    assert kernel(Matrix.identity(4)).dim == 0
    assert kernel(Matrix.zero(2, 3)).dim == 3
    k = kernel(mat([[1, 1, 0], [0, 0, 1]]))
    assert k == Subspace.span(3, [{0: QQ(1), 1: QQ(-1)}])


def test_solve_examples():
    b = {0: QQ(2), 2: QQ(-1)}
    assert solve(Matrix.identity(3), b) == b
    assert solve(Matrix.zero(2, 2), {0: QQ(1)}) is None
    m = mat([[1, 2]])
    x = solve(m, {0: QQ(5)})
    assert m.apply(x) == {0: QQ(5)}


def test_quotient_examples():
    q0 = quotient(3, Subspace.span(3, []))
    assert q0.dim == 3 and q0.projection == Matrix.identity(3)
    full = quotient_by(3, [{0: QQ(1)}, {1: QQ(1)}, {2: QQ(1)}])
    assert full.dim == 0
    q = quotient_by(3, [{0: QQ(1), 1: QQ(-1)}])
    assert q.dim == 2
    assert q.project({0: QQ(1), 1: QQ(-1)}) == {}


@given(matrices())
def test_rank_nullity(rows):
    m = mat(rows)
    assert rank(m) + kernel(m).dim == m.cols
    assert rank(m) == sympy.Matrix(rows).rank()


@given(matrices())
def test_rank_nullity_mod_p(rows):
    m = mat(rows, F7)
    assert rank(m) + kernel(m, F7).dim == m.cols


@given(matrices())
def test_kernel_vectors_are_killed(rows):
    m = mat(rows)
    for v in kernel(m).basis:
        assert m.apply(v) == {}


@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_is_exact(rows, rhs):
    m = mat(rows)
    b = {i: QQ(x) for i, x in enumerate(rhs[: m.rows]) if x}
    x = solve(m, b)
    consistent = sympy.Matrix(rows).rank() == sympy.Matrix(rows).row_join(
        sympy.Matrix([rhs[i] for i in range(m.rows)])).rank()
    assert (x is not None) == consistent
    if x is not None:
        assert m.apply(x) == b


@given(matrices())
def test_quotient_projection_idempotent(rows):
    m = mat(rows)
    rel = image(m)
    q = quotient(m.rows, rel)
    assert q.dim == m.rows - rel.dim
    reps = q.representatives
    for k in range(q.dim):
        assert q.project(reps.columns[k]) == {k: 1}
    for v in rel.basis:
        assert q.project(v) == {}


@given(matrices())
def test_subspace_equality_is_canonical(rows):
    m = mat(rows)
    a = Subspace.span(m.rows, m.columns)
    b = Subspace.span(m.rows, list(reversed(m.columns)) + [c for c in m.columns])
    assert a == b and hash(a) == hash(b)


def test_echelon_incremental():
    e = Echelon()
    assert e.add({0: QQ(2), 1: QQ(2)})
    assert not e.add({0: QQ(1), 1: QQ(1)})
    assert e.contains({0: QQ(-3), 1: QQ(-3)})
    assert e.rank == 1


def test_matrix_algebra():
    a = mat([[1, 2], [3, 4]])
    b = mat([[0, 1], [1, 0]])
    assert a @ b == mat([[2, 1], [4, 3]])
    assert (a - a).is_zero()
    assert a.transpose() == mat([[1, 3], [2, 4]])
    assert (a + b).dense() == [[1, 3], [4, 4]]
    assert Fraction(1, 2) == Fraction(str(QQ("1/2")))
