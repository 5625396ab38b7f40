"""
Shared fixtures
Small groups from every family, built once per session
"""
import os
from pathlib import Path

import pytest

os.environ.setdefault("BEAUVILLE_CONFIG", str(Path(__file__).parent / "config.yaml"))

from pbeauville.config import Limits, get_settings  # noqa: E402
from pbeauville.engine.pcgroup import build_group  # noqa: E402
from pbeauville.engine.presentation import packaged_presentation  # noqa: E402
from pbeauville.families.constructors import construct  # noqa: E402
from pbeauville.families.params import make_params  # noqa: E402


@pytest.fixture(scope="session")
def q8():
    return construct(make_params("class2_five_tuple", p=2, alpha=1, beta=1, gamma=1, rho=0, sigma=0))


@pytest.fixture(scope="session")
def d8():
    return construct(make_params("class2_five_tuple", p=2, alpha=1, beta=1, gamma=1, rho=1, sigma=1))


@pytest.fixture(scope="session")
def c5xc5():
    return construct(make_params("abelian", p=5, e=1))


@pytest.fixture(scope="session")
def c3xc3():
    return construct(make_params("abelian", p=3, e=1))


@pytest.fixture(scope="session")
def triangle2():
    return construct(make_params("triangle_quotient", e=2))


@pytest.fixture(scope="session")
def untabled_triangle2():
    """The same group with rank tables disabled, so arithmetic goes through collection."""
    settings = get_settings().model_copy(update={"limits": Limits(table_order=1)})
    return construct(make_params("triangle_quotient", e=2), settings=settings)


@pytest.fixture(scope="session")
def metacyclic521():
    return construct(make_params("metacyclic", p=5, e=2, i=1))


@pytest.fixture(scope="session")
def metacyclic321():
    return construct(make_params("metacyclic", p=3, e=2, i=1))


@pytest.fixture(scope="session")
def class2_mixed():
    return construct(make_params("class2_beauville", p=5, e=3, i=2, j=2, k=1))


@pytest.fixture(scope="session")
def packaged_q8():
    return build_group(packaged_presentation("q8"))
