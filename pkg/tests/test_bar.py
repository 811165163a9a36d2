import random

import pytest
from hypothesis import given, strategies as st

from oracles import dense_rank, hochschild_dims, structure_table
from ydext.bar import (BarResolution, CochainError, cochain_from_normalized, coboundary_space, delta, hom_basis,
                       random_cochain, restrict, solve_coboundary, solve_cocycles, zero_cochain)
from ydext.catalog import dual_numbers, ground_bialgebroid, truncated_polynomial
from ydext.config import EngineConfig, ResourceError
from ydext.linalg import Matrix, Subspace
from ydext.operad import OperadContext, e_element, mu, unit_element
from ydext.yd import unit_coefficients

seeds = st.integers(0, 10 ** 6)


def test_ground_bar_alternates():
    pair = unit_coefficients(ground_bialgebroid())
    bar = BarResolution(pair.x.module)
    assert bar.d(0) == Matrix.identity(1)
    for m in range(1, 5):
        assert bar.bar_dim(m) == 1
        assert bar.d(m) == (Matrix.identity(1) if m % 2 == 0 else Matrix.zero(1, 1))


def test_dual_bar_is_a_resolution(dual_ctx):
    bar = dual_ctx.bar
    for m in range(1, 5):
        assert (bar.d(m - 1) @ bar.d(m)).is_zero()
    assert bar.exactness_defect(4) == [0, 0, 0, 0, 0]
    assert [bar.bar_dim(m) for m in range(3)] == [4, 8, 16]


def test_dense_rank_oracle_matches(dual_ctx):
    from ydext.linalg import rank
    for m in range(4):
        assert rank(dual_ctx.bar.d(m)) == dense_rank(dual_ctx.bar.d(m))


def test_normalized_cochain_space_dimension(dual_ctx):
    # classically C^n(A, A) = Hom_k(A^{(x) n}, A) has dimension 2^(n+1)
    for n in range(4):
        assert len(hom_basis(dual_ctx.bar, n, dual_ctx.Z)) == 2 ** (n + 1)


def test_ext_dims_match_classical_oracle(dual_ctx):
    table = structure_table(dual_numbers())
    oracle = hochschild_dims(table, 4)
    assert oracle[:4] == [2, 1, 1, 1]
    ours = [len(solve_cocycles(dual_ctx.bar, n, dual_ctx.Z)) - coboundary_space(dual_ctx.bar, n, dual_ctx.Z).dim
            for n in range(5)]
    assert ours == oracle


def test_ext_dims_cubic_match_classical_oracle(cubic_ctx):
    table = structure_table(truncated_polynomial(3))
    oracle = hochschild_dims(table, 3)
    ours = [len(solve_cocycles(cubic_ctx.bar, n, cubic_ctx.Z)) - coboundary_space(cubic_ctx.bar, n, cubic_ctx.Z).dim
            for n in range(4)]
    assert ours == oracle == [3, 2, 2, 2]


def test_delta_of_zero(dual_ctx):
    assert delta(zero_cochain(dual_ctx.bar, 2, dual_ctx.Z)).is_zero()


def test_delta_of_operad_unit_is_the_multiplication(dual_ctx):
    assert delta(unit_element(dual_ctx)) == mu(dual_ctx)
    assert delta(mu(dual_ctx)).is_zero()
    # A is commutative, so the 0-cochain e is a cocycle
    assert delta(e_element(dual_ctx)).is_zero()


@given(seeds, st.integers(0, 3))
def test_delta_squares_to_zero(dual_ctx, seed, n):
    c = random_cochain(dual_ctx.bar, n, dual_ctx.Z, seed)
    assert delta(delta(c)).is_zero()


@given(seeds, st.integers(0, 3))
def test_random_cochains_are_linear_and_deterministic(dual_ctx, seed, n):
    a = random_cochain(dual_ctx.bar, n, dual_ctx.Z, random.Random(seed))
    b = random_cochain(dual_ctx.bar, n, dual_ctx.Z, random.Random(seed))
    assert a == b
    assert a.linearity_witness() is None


def test_normalized_round_trip(dual_ctx):
    m = mu(dual_ctx)
    rebuilt = cochain_from_normalized(dual_ctx.bar, 2, dual_ctx.Z, restrict(m))
    assert rebuilt == m
    z = cochain_from_normalized(dual_ctx.bar, 1, dual_ctx.Z, Matrix.zero(2, dual_ctx.bar.norm_dim(1)))
    assert z.is_zero()


def test_multiplication_from_a_callable(dual_ctx):
    ctx = dual_ctx
    U = ctx.U

    def values(us, w):
        # mu(1, u1, u2, w) = u1 u2 w in the unit coefficients
        return ctx.Z.act_vec(U.mul(us[0], us[1]), w)

    assert cochain_from_normalized(ctx.bar, 2, ctx.Z, values) == mu(ctx)


def test_unbalanced_values_are_rejected(dual_ctx):
    n = dual_ctx.bar.norm_dim(1)
    cols = tuple({0: dual_ctx.field(1)} for _ in range(n))
    with pytest.raises(CochainError):
        cochain_from_normalized(dual_ctx.bar, 1, dual_ctx.Z, Matrix(2, n, cols))


@given(seeds, st.integers(1, 3))
def test_coboundaries_are_solved(dual_ctx, seed, n):
    h = random_cochain(dual_ctx.bar, n - 1, dual_ctx.Z, seed)
    c = delta(h)
    g = solve_coboundary(c)
    assert g is not None and delta(g) == c


def test_coboundaries_are_cocycles(dual_ctx):
    for n in range(1, 4):
        zs = [c.flat() for c in solve_cocycles(dual_ctx.bar, n, dual_ctx.Z)]
        space = Subspace.span(dual_ctx.Z.dim * dual_ctx.bar.norm_dim(n), zs)
        assert space.contains_space(coboundary_space(dual_ctx.bar, n, dual_ctx.Z))


def test_degree_cap_is_enforced():
    pair = unit_coefficients(ground_bialgebroid())
    bar = BarResolution(pair.x.module, EngineConfig(max_degree=2))
    bar.d(2)
    with pytest.raises(ResourceError):
        bar.d(3)


def test_u_dim_cap_is_enforced(cubic_ctx):
    with pytest.raises(ResourceError):
        OperadContext(cubic_ctx.pair, EngineConfig())
