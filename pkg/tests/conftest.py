import os

import pytest
from hypothesis import HealthCheck, settings

from invfact import FieldDescriptor, MonomialAutomorphism, Ring, check_cyclic

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", deadline=None, max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


class Z3Example:
    """Z/3 on k[A^+-1, B^+-1], A -> B, B -> (AB)^-1, over an algebraically closed field of characteristic 3."""

    def __init__(self):
        self.field = FieldDescriptor.parse("Fp:3:closed")
        self.ring = Ring(self.field, ("A", "B"))
        self.sigma = MonomialAutomorphism(self.ring, [[0, -1], [1, -1]])
        self.action = check_cyclic(self.sigma, 3)
        A, B = self.ring.gens()
        self.A, self.B = A, B
        # elementary symmetric functions of X1, X2, X3 at X1 = AB, X2 = B, X3 = 1
        self.e1 = A * B + B + 1
        self.e2 = A * B**2 + A * B + B
        self.e3 = A * B**2
        self.delta = (B - A * B) * (1 - A * B) * (1 - B)
        e1, e2, e3 = self.e1, self.e2, self.e3
        self.generators = {
            "e1^3/e3": e1**3 / e3,
            "Delta/e3": self.delta / e3,
            "e2^3/e3^2": e2**3 / e3**2,
            "e1e2/e3": e1 * e2 / e3,
        }


@pytest.fixture(scope="session")
def z3():
    return Z3Example()


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
