import os
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from holonomy_lab.hermitian import make_space
from holonomy_lab.quat import QMatrix, QVector, Quat
from holonomy_lab.symmetric import EXEMPLAR_G

settings.register_profile("default", max_examples=40, deadline=None)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
quats = st.builds(Quat, small_fractions, small_fractions, small_fractions, small_fractions)


def qvectors(n):
    return st.lists(quats, min_size=n, max_size=n).map(lambda cs: QVector(tuple(cs)))


def qmatrices(n):
    return st.lists(st.lists(quats, min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda rows: QMatrix(tuple(tuple(r) for r in rows)))


@pytest.fixture(scope="session")
def space1():
    return make_space(1)


@pytest.fixture(scope="session")
def space2():
    return make_space(2)


@pytest.fixture(scope="session")
def space2G():
    """n = 2 with the off-diagonal Gram matrix [[1, -k/2], [k/2, 1]]."""
    return make_space(2, EXEMPLAR_G)


@pytest.fixture(params=["n1", "n2", "n2G"])
def any_space(request, space1, space2, space2G):
    return {"n1": space1, "n2": space2, "n2G": space2G}[request.param]
