from fractions import Fraction

import pytest
from hypothesis import settings

from soacc.coxeter import CoxeterSystem, builtin_system

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def systems():
    return {name: CoxeterSystem(builtin_system(name)) for name in ("A1", "A2", "A3", "A4", "B2", "I2(5)", "I2(inf)")}


def frac(x):
    return Fraction(x)
