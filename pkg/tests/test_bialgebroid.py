import pytest

from ydext.bialgebroid import check_bialgebroid, enveloping, from_bialgebra, with_counit
from ydext.catalog import (cyclic_group_bialgebroid, dual_numbers, dual_numbers_enveloping, ground_bialgebroid,
                           primitive_dual_numbers, split_quadratic, truncated_polynomial)
from ydext.linalg import QQ, Field, Matrix


def test_enveloping_of_ground_field():
    from ydext.bialgebroid import ground_algebra
    U = enveloping(ground_algebra(QQ))
    assert U.dim == 1 and U.base.dim == 1
    assert check_bialgebroid(U).passed


@pytest.mark.parametrize("algebra", [dual_numbers(), split_quadratic(), truncated_polynomial(3)])
def test_enveloping_passes(algebra):
    U = enveloping(algebra)
    assert U.dim == algebra.dim ** 2
    assert check_bialgebroid(U).passed


def test_enveloping_counit_and_anchors():
    a = truncated_polynomial(3)
    U = enveloping(a)
    n = a.dim
    for i in range(n):
        for j in range(n):
            assert U.eps(U.total.basis(i * n + j)) == a.table[i][j]
        e = a.basis(i)
        assert U.eps(U.s(e)) == e and U.eps(U.t(e)) == e


def test_enveloping_coproduct_legs():
    a = dual_numbers()
    U = enveloping(a)
    uu = U.uu
    for i in range(2):
        for j in range(2):
            k = i * 2 + j
            assert U.delta[k] == uu.project_pure([U.s(a.basis(i)), U.t(a.basis(j))])


def test_group_algebra_and_ground():
    assert check_bialgebroid(cyclic_group_bialgebroid(2)).passed
    assert check_bialgebroid(cyclic_group_bialgebroid(3)).passed
    assert check_bialgebroid(ground_bialgebroid()).passed


def test_primitive_dual_numbers_only_in_characteristic_two():
    assert check_bialgebroid(primitive_dual_numbers(Field(2))).passed
    with pytest.raises(ValueError, match="bialgebra axiom failure"):
        primitive_dual_numbers(QQ)
    rep = check_bialgebroid(primitive_dual_numbers(QQ, check=False))
    assert "coproduct multiplicative" in rep.failed_names()


def test_corrupted_counit_is_named():
    U = dual_numbers_enveloping()
    cols = list(U.counit.columns)
    cols[1] = {0: QQ(1)}
    rep = check_bialgebroid(with_counit(U, Matrix(2, 4, tuple(cols))))
    assert "counit" in rep.failed_names()
    assert all(w is not None for _, w in rep.failures)


def test_from_bialgebra_rejects_bad_coproduct():
    from ydext.catalog import cyclic_group_algebra
    h = cyclic_group_algebra(2)
    with pytest.raises(ValueError):
        from_bialgebra(h, [{0: 1}, {0: 1}], [1, 1])
