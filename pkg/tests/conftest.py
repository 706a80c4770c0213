import hypothesis
import numpy as np
import pytest

from calculus.syntax import parse

np.seterr(all="warn")

hypothesis.settings.register_profile("dev", max_examples=25, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False, deadline=None)
# pytest --hypothesis-profile=ci selects the larger profile
hypothesis.settings.load_profile("dev")


@pytest.fixture
def susp():
    """Parse suspension-calculus text."""
    return lambda text: parse(text, "susp")


@pytest.fixture
def lsig():
    return lambda text: parse(text, "lsig")


@pytest.fixture
def lu():
    return lambda text: parse(text, "lu")


@pytest.fixture
def ls():
    return lambda text: parse(text, "ls")
