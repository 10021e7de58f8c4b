from __future__ import annotations

import pytest

from nclandau.landau import PhysicalParams, magnetic_length


@pytest.fixture
def p12():
    return PhysicalParams(B=12.0)


@pytest.fixture
def l_b(p12):
    return magnetic_length(p12)
