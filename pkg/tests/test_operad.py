import itertools
import random

import pytest
from hypothesis import given, strategies as st

from ydext.bar import Cochain, delta, random_cochain, zero_cochain
from ydext.catalog import ground_bialgebroid
from ydext.config import WIDE
from ydext.linalg import Matrix, vaxpy
from ydext.operad import (OperadContext, braided_cup_commutator, bracket, classical_cochain, coaction_rewrite_witness,
                          cup, cup_explicit, cup_value, degree_zero_residual, differential_via_bracket, e_element,
                          external_cup, external_insert, external_product, gerstenhaber_product, homotopy_residual, insert,
                          insert_value, leibniz_residual, mu, sigma_face_residual, tau_face_residual, unit_element,
                          verify_operad)
from ydext.yd import unit_coefficients

seeds = st.integers(0, 10 ** 6)
low = st.integers(0, 2)


def rc(ctx, n, seed, bar=None, target=None):
    return random_cochain(bar or ctx.bar, n, target or ctx.Z, seed)


def test_multiplication_identities(dual_ctx):
    m, one, e = mu(dual_ctx), unit_element(dual_ctx), e_element(dual_ctx)
    assert insert(dual_ctx, m, m, 1) == insert(dual_ctx, m, m, 2)
    assert insert(dual_ctx, m, e, 1) == one == insert(dual_ctx, m, e, 2)


def test_verify_operad_small(dual_ctx):
    rep = verify_operad(dual_ctx, degree_cap=3, trials=12, seed=5)
    assert rep.passed, rep.summary()
    counts = dict(rep.notes)["branch counts"]
    assert sum(counts.values()) == 12


def test_verify_operad_ground_is_instant():
    ctx = OperadContext(unit_coefficients(ground_bialgebroid()), WIDE)
    assert verify_operad(ctx, degree_cap=3, trials=30).passed


@given(seeds, st.integers(1, 3))
def test_unitality(dual_ctx, seed, p):
    phi = rc(dual_ctx, p, seed)
    one = unit_element(dual_ctx)
    for i in range(1, p + 1):
        assert insert(dual_ctx, phi, one, i) == phi
    assert insert(dual_ctx, one, phi, 1) == phi


def test_insert_position_out_of_range(dual_ctx):
    phi = rc(dual_ctx, 2, 0)
    with pytest.raises(ValueError):
        insert(dual_ctx, phi, phi, 3)
    with pytest.raises(ValueError):
        insert(dual_ctx, phi, phi, 0)


def test_external_insert_of_degree_zero_vanishes(dual_ctx):
    phi0 = rc(dual_ctx, 0, 1)
    psi = rc(dual_ctx, 1, 2)
    assert external_product(dual_ctx, phi0, psi).is_zero()
    with pytest.raises(ValueError):
        external_insert(dual_ctx, phi0, psi, 1)
    prod = gerstenhaber_product(dual_ctx, phi0, psi)
    assert prod.degree == 0 and prod.is_zero()


def test_external_cup_with_zero(dual_ctx):
    phi = rc(dual_ctx, 1, 3)
    z = zero_cochain(dual_ctx.bar, 1, dual_ctx.Z)
    assert external_cup(dual_ctx, phi, z).is_zero()
    assert braided_cup_commutator(dual_ctx, z, z).is_zero()


def test_augmentation_cup_is_the_braiding(dual_ctx):
    X = dual_ctx.X
    L = Cochain(dual_ctx.bar, 0, X, Matrix.identity(X.dim))
    lhs = external_cup(dual_ctx, L, L)
    assert lhs.values == dual_ctx.tau_xx


@given(seeds, low, low)
def test_leibniz_rule(dual_ctx, seed, j, i):
    phi = rc(dual_ctx, j, seed)
    psi = rc(dual_ctx, i, seed + 1)
    assert leibniz_residual(dual_ctx, phi, psi).is_zero()


@given(seeds, low, low)
def test_homotopy_formula(dual_ctx, seed, j, q):
    phi = rc(dual_ctx, j, seed)
    psi = rc(dual_ctx, q, seed + 1)
    assert homotopy_residual(dual_ctx, phi, psi).is_zero()


@given(seeds, low)
def test_homotopy_formula_degree_zero(dual_ctx, seed, q):
    assert degree_zero_residual(dual_ctx, rc(dual_ctx, 0, seed), rc(dual_ctx, q, seed + 1)).is_zero()


@given(seeds, low, low)
def test_face_identities(dual_ctx, seed, j, q):
    phi = rc(dual_ctx, j, seed)
    psi = rc(dual_ctx, q, seed + 1)
    assert tau_face_residual(dual_ctx, phi, psi).is_zero()
    assert sigma_face_residual(dual_ctx, phi, psi).is_zero()


def test_coaction_rewrite(dual_ctx, cubic_ctx):
    assert coaction_rewrite_witness(dual_ctx) is None
    assert coaction_rewrite_witness(cubic_ctx) is None


@given(seeds, st.integers(0, 3))
def test_differential_is_a_bracket(dual_ctx, seed, n):
    phi = rc(dual_ctx, n, seed)
    assert differential_via_bracket(dual_ctx, phi) == delta(phi)


@given(seeds, low, low)
def test_cup_formulas_agree(dual_ctx, seed, p, q):
    phi, psi = rc(dual_ctx, p, seed), rc(dual_ctx, q, seed + 1)
    assert cup(dual_ctx, phi, psi) == cup_explicit(dual_ctx, phi, psi)


@given(seeds, low)
def test_e_is_a_cup_unit(dual_ctx, seed, p):
    phi = rc(dual_ctx, p, seed)
    e = e_element(dual_ctx)
    assert cup(dual_ctx, e, phi) == phi == cup(dual_ctx, phi, e)


@given(seeds, low, low)
def test_cup_leibniz(dual_ctx, seed, p, q):
    phi, psi = rc(dual_ctx, p, seed), rc(dual_ctx, q, seed + 1)
    lhs = delta(cup(dual_ctx, phi, psi))
    rhs = cup(dual_ctx, delta(phi), psi)
    t = cup(dual_ctx, phi, delta(psi))
    rhs = rhs + t if p % 2 == 0 else rhs - t
    assert lhs == rhs


@given(seeds)
def test_bracket_of_a_one_cochain_with_itself(dual_ctx, seed):
    phi = rc(dual_ctx, 1, seed)
    assert bracket(dual_ctx, phi, phi).is_zero()


@given(seeds, st.integers(1, 2), st.integers(0, 2))
def test_formulas_are_u_linear(dual_ctx, seed, p, q):
    """The value formulas at an arbitrary first argument equal the action on the normalized value."""
    ctx = dual_ctx
    rng = random.Random(seed)
    phi, psi = rc(ctx, p, seed), rc(ctx, q, seed + 1)
    u0 = ctx.e(rng.randrange(ctx.U.dim))
    i = rng.randint(1, p)
    us = [ctx.e(rng.randrange(ctx.U.dim)) for _ in range(p + q - 1)]
    w = rng.randrange(ctx.X.dim)
    one = ctx.U.one()
    got = insert_value(ctx, phi, psi, i, u0, us, w)
    assert got == ctx.Z.act_vec(u0, insert_value(ctx, phi, psi, i, one, us, w))
    us = us + [ctx.e(rng.randrange(ctx.U.dim))]
    got = cup_value(ctx, phi, psi, u0, us, w)
    assert got == ctx.Z.act_vec(u0, cup_value(ctx, phi, psi, one, us, w))


# classical reductions -------------------------------------------------------------

def _classical(ctx, phi):
    """phi as a function of basis indices of A."""
    return lambda args: classical_cochain(ctx, phi, args)


def _eval_linear(ctx, f, before, vec, after):
    out = {}
    for k, x in vec.items():
        vaxpy(out, f(list(before) + [k] + list(after)), x)
    return out


@pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_insertion_is_classical(cubic_ctx, p, q):
    ctx = cubic_ctx
    A = ctx.U.base
    phi, psi = rc(ctx, p, 10 + p), rc(ctx, q, 20 + q)
    f, g = _classical(ctx, phi), _classical(ctx, psi)
    for i in range(1, p + 1):
        h = _classical(ctx, insert(ctx, phi, psi, i))
        for args in itertools.product(range(A.dim), repeat=p + q - 1):
            inner = g(args[i - 1:i - 1 + q])
            expected = _eval_linear(ctx, f, args[:i - 1], inner, args[i - 1 + q:])
            assert h(list(args)) == expected


@pytest.mark.parametrize("p,q", [(0, 1), (1, 1), (2, 1), (1, 2)])
def test_cup_is_classical(cubic_ctx, p, q):
    ctx = cubic_ctx
    A = ctx.U.base
    phi, psi = rc(ctx, p, 30 + p), rc(ctx, q, 40 + q)
    f, g = _classical(ctx, phi), _classical(ctx, psi)
    h = _classical(ctx, cup(ctx, phi, psi))
    for args in itertools.product(range(A.dim), repeat=p + q):
        assert h(list(args)) == A.mul(f(list(args[:p])), g(list(args[p:])))


def test_hh1_bracket_is_the_derivation_commutator(cubic_ctx):
    """On k[x]/(x^3) the degree-1 classes are derivations; the bracket must be their commutator."""
    from ydext.cohomology import ExtGroups
    ctx = cubic_ctx
    A = ctx.U.base
    groups = ExtGroups(ctx, 2)
    reps = list(groups.degree(1).reps)
    assert len(reps) == 2

    def matrix_of(c):
        return Matrix(A.dim, A.dim, tuple(classical_cochain(ctx, c, [k]) for k in range(A.dim)))

    for a, b in itertools.product(reps, repeat=2):
        Da, Db = matrix_of(a), matrix_of(b)
        for k in range(A.dim):
            for i in range(A.dim):
                for j in range(A.dim):
                    lhs = Da.apply(A.table[i][j])
                    rhs = A.mul(Da.columns[i], A.basis(j))
                    vaxpy(rhs, A.mul(A.basis(i), Da.columns[j]))
                    assert lhs == rhs  # a is a derivation
        commutator = Da @ Db - Db @ Da
        # A is commutative, so there are no 1-coboundaries and the class is the cochain itself
        assert groups.degree(1).coboundaries.dim == 0
        assert matrix_of(bracket(ctx, a, b)) == commutator
