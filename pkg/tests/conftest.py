import pytest
from hypothesis import HealthCheck, settings

from ydext.catalog import dual_numbers_enveloping, truncated_polynomial
from ydext.bialgebroid import enveloping
from ydext.config import WIDE
from ydext.operad import OperadContext
from ydext.yd import unit_coefficients

settings.register_profile("ydext", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile("ydext")


@pytest.fixture(scope="session")
def dual_u():
    return dual_numbers_enveloping()


@pytest.fixture(scope="session")
def dual_ctx(dual_u):
    """Hochschild setting for k[x]/(x^2): U = A^e, X = Z = A, with wide resource caps."""
    return OperadContext(unit_coefficients(dual_u), WIDE)


@pytest.fixture(scope="session")
def cubic_ctx():
    """Hochschild setting for k[x]/(x^3) (dim U = 9)."""
    return OperadContext(unit_coefficients(enveloping(truncated_polynomial(3))), WIDE)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
