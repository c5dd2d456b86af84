import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from hbcomp.mate import mate_from_a, pythagorean_mate  # noqa: E402
from hbcomp.polyrat import RatFunc  # noqa: E402

C_CUBIC = 3.0 * 3.0**0.5 / 16.0


@pytest.fixture(scope="session")
def m_half():
    """b = (1 + z)/2, a = (1 - z)/2."""
    return pythagorean_mate(RatFunc([0.5, 0.5]))


@pytest.fixture(scope="session")
def m_cubic():
    """a = c (z - 1)(z + 1)^2."""
    return mate_from_a(RatFunc([-C_CUBIC, -C_CUBIC, C_CUBIC, C_CUBIC]))


@pytest.fixture(scope="session")
def m_sq_minus():
    """b = (1 - z^2)/2."""
    return pythagorean_mate(RatFunc([0.5, 0.0, -0.5]))


@pytest.fixture(scope="session")
def m_sq_plus():
    """b = (1 + z^2)/2."""
    return pythagorean_mate(RatFunc([0.5, 0.0, 0.5]))
