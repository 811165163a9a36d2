import pytest

from ydext.catalog import (cyclic_group_bialgebroid, dual_numbers_enveloping, graded_group_coefficients,
                           ground_bialgebroid, truncated_polynomial)
from ydext.bialgebroid import enveloping
from ydext.linalg import Matrix
from ydext.yd import (CoefficientError, CommutingPairError, LeftCoaction, YDLeftLeft, base_module, braiding_sigma,
                      braiding_tau, check_braided_comonoid, check_braided_monoid, check_commuting_pair,
                      check_module, check_tensor_action, check_yd_left_left, check_yd_left_right,
                      commuting_pair_witness, hexagon_sigma_witness, hexagon_tau_witness, is_module_map,
                      monoidal_product, trivial_module, unit_coefficients, unit_left_yd, unit_right_yd)

BIALGEBROIDS = [dual_numbers_enveloping(), enveloping(truncated_polynomial(3)), cyclic_group_bialgebroid(2),
                ground_bialgebroid()]


@pytest.mark.parametrize("U", BIALGEBROIDS, ids=lambda u: u.name)
def test_unit_coefficients_pass_every_checker(U):
    pair = unit_coefficients(U)
    assert pair.certificate["pairs_checked"] == U.base.dim ** 2
    assert check_module(pair.x.module).passed
    assert check_tensor_action(pair.x.xx).passed


def test_ground_unit_coefficients_are_one_dimensional():
    pair = unit_coefficients(ground_bialgebroid())
    assert pair.x.dim == pair.z.dim == 1


def test_source_leg_unit_coaction_fails():
    rep = check_yd_left_right(unit_right_yd(dual_numbers_enveloping(), "source"))
    assert not rep.passed
    assert "yd2" in rep.failed_names()


def test_corrupted_multiplication_fails_module_algebra():
    U = dual_numbers_enveloping()
    z = unit_left_yd(U)
    cols = list(z.mu.columns)
    cols[3] = {0: U.field(1)}  # x * x = 1
    bad = YDLeftLeft(z.module, z.coaction, Matrix(2, 4, tuple(cols)), z.unit, "A")
    rep = check_braided_monoid(bad)
    assert "module-algebra" in rep.failed_names()


def test_twisted_coaction_breaks_the_pair():
    U = dual_numbers_enveloping()
    z = unit_left_yd(U)
    co = LeftCoaction(z.coaction.space, tuple({k: 2 * v for k, v in c.items()} for c in z.coaction.coords))
    twisted = YDLeftLeft(z.module, co, z.mu, z.unit, "A")
    assert not check_yd_left_left(twisted).passed
    with pytest.raises(CommutingPairError) as info:
        check_commuting_pair(unit_right_yd(U), twisted)
    assert info.value.witness == (0, 0)


def test_graded_group_pair_commutes_with_trivial_x():
    x, z = graded_group_coefficients(False)
    for rep in (check_yd_left_left(z), check_yd_left_right(x), check_braided_monoid(z), check_braided_comonoid(x)):
        assert rep.passed, rep.summary()
    assert commuting_pair_witness(x, z) is None


def test_sign_representation_gives_a_witness():
    x, z = graded_group_coefficients(True)
    assert check_yd_left_right(x).passed and check_yd_left_left(z).passed
    assert commuting_pair_witness(x, z) == (0, 1)
    with pytest.raises(CommutingPairError):
        check_commuting_pair(x, z)


def test_unit_object_commutes_with_everything():
    x, z = graded_group_coefficients(True)
    U = x.bialgebroid
    assert commuting_pair_witness(x, unit_left_yd(U)) is None
    assert commuting_pair_witness(unit_right_yd(U), z) is None


def test_braidings_are_module_maps():
    U = dual_numbers_enveloping()
    pair = unit_coefficients(U)
    A = base_module(U)
    s = braiding_sigma(pair.z, A)
    t = braiding_tau(A, pair.x)
    za, az = monoidal_product(pair.z.module, A), monoidal_product(A, pair.z.module)
    assert (s.rows, s.cols) == (az.dim, za.dim) == (2, 2)
    assert is_module_map(s, za, az) is None
    ax, xa = monoidal_product(A, pair.x.module), monoidal_product(pair.x.module, A)
    assert is_module_map(t, ax, xa) is None


def test_sigma_differs_from_tau_for_the_sign_pair():
    x, z = graded_group_coefficients(True)
    s = braiding_sigma(z, x.module)
    t = braiding_tau(z.module, x)
    assert s != t


def test_hexagons():
    x, z = graded_group_coefficients(True)
    U = x.bialgebroid
    m, n = trivial_module(U, 2), x.module
    assert hexagon_sigma_witness(z, m, n) is None
    assert hexagon_tau_witness(m, n, x) is None
    pair = unit_coefficients(dual_numbers_enveloping())
    A = pair.x.module
    assert hexagon_sigma_witness(pair.z, A, A) is None
    assert hexagon_tau_witness(A, A, pair.x) is None


def test_unit_coefficients_reject_bad_counit():
    from ydext.bialgebroid import with_counit
    U = dual_numbers_enveloping()
    cols = list(U.counit.columns)
    cols[1] = {0: U.field(1)}
    with pytest.raises((CoefficientError, CommutingPairError)):
        unit_coefficients(with_counit(U, Matrix(2, 4, tuple(cols))))
