"""Small named algebras and bialgebroids used as fixtures."""

from __future__ import annotations

from .algebra import FiniteAlgebra, make_algebra
from .bialgebroid import LeftBialgebroid, enveloping, from_bialgebra
from .linalg import QQ, Field


def truncated_polynomial(n: int, field: Field = QQ) -> FiniteAlgebra:
    """k[x]/(x^n) with basis 1, x, ..., x^{n-1}."""
    c = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i + j < n:
                c[i][j][i + j] = 1
    return make_algebra(n, c, [1] + [0] * (n - 1), field, "k[x]/(x^%d)" % n)


def dual_numbers(field: Field = QQ) -> FiniteAlgebra:
    a = truncated_polynomial(2, field)
    return FiniteAlgebra(a.field, a.dim, a.table, a.unit, "k[x]/(x^2)")


def split_quadratic(field: Field = QQ) -> FiniteAlgebra:
    """k[x]/(x^2 - 1)."""
    c = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
    return make_algebra(2, c, [1, 0], field, "k[x]/(x^2-1)")


def cyclic_group_algebra(n: int, field: Field = QQ) -> FiniteAlgebra:
    c = [[[1 if (i + j) % n == k else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    return make_algebra(n, c, [1] + [0] * (n - 1), field, "k[C%d]" % n)


def cyclic_group_bialgebroid(n: int, field: Field = QQ) -> LeftBialgebroid:
    """k[C_n] with group-like basis, as a bialgebroid over k."""
    h = cyclic_group_algebra(n, field)
    cop = [{g * n + g: 1} for g in range(n)]
    return from_bialgebra(h, cop, [1] * n)


def primitive_dual_numbers(field: Field, check: bool = True) -> LeftBialgebroid:
    """k[x]/(x^2) with x primitive; a bialgebra only in characteristic 2."""
    h = dual_numbers(field)
    cop = [{0: 1}, {1 * 2 + 0: 1, 0 * 2 + 1: 1}]
    return from_bialgebra(h, cop, [1, 0], check=check)


def dual_numbers_enveloping(field: Field = QQ) -> LeftBialgebroid:
    return enveloping(dual_numbers(field))


def ground_bialgebroid(field: Field = QQ) -> LeftBialgebroid:
    h = make_algebra(1, [[[1]]], [1], field, "k")
    return from_bialgebra(h, [{0: 1}], [1])


def graded_group_coefficients(sign_x: bool, field: Field = QQ):
    """Coefficients over U = k[C_2]: Z = k[C_2] with trivial action and coaction by degree,
    X one-dimensional with trivial coaction, acted on by the sign character when ``sign_x``.

    With the trivial action on X this is a commuting pair; with the sign action it is not
    (the braidings differ at x (x) z_g).  Returns (x, z) unchecked; Delta_X is only
    supplied in the trivial case, where X is the unit comonoid k.
    """
    from .linalg import Matrix
    from .yd import (LeftCoaction, RightCoaction, UModule, YDLeftLeft, YDLeftRight, left_coaction_space,
                     right_coaction_space)

    U = cyclic_group_bialgebroid(2, field)
    one = field.one
    zmod = UModule(U, 2, tuple(Matrix.identity(2, field) for _ in range(2)), "k[C2]")
    zsp = left_coaction_space(U, zmod)
    zco = LeftCoaction(zsp, tuple(zsp.project_pure([{g: one}, {g: one}]) for g in range(2)))
    mu = Matrix(2, 4, tuple({(i + j) % 2: one} for i in range(2) for j in range(2)))
    z = YDLeftLeft(zmod, zco, mu, {0: one}, "Z")
    chars = (one, -one if sign_x else one)
    xmod = UModule(U, 1, tuple(Matrix(1, 1, ({0: c},)) for c in chars), "sgn" if sign_x else "k")
    xsp = right_coaction_space(U, xmod)
    xco = RightCoaction(xsp, (xsp.project_pure([{0: one}, U.one()]),))
    probe = YDLeftRight(xmod, xco, None, None, "X")
    if sign_x:
        return probe, z
    delta = (probe.xx.pair({0: one}, {0: one}),)
    return YDLeftRight(xmod, xco, delta, Matrix.identity(1, field), "X"), z
