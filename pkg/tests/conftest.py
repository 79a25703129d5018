import pytest

from twinax.constructions import build_named


@pytest.fixture(scope="session")
def minkowski3():
    return build_named("minkowski", 3).model


@pytest.fixture(scope="session")
def newtonian3():
    return build_named("newtonian", 3).model


@pytest.fixture(scope="session")
def thm41_3():
    return build_named("thm41", 3).model


@pytest.fixture(scope="session")
def thm55_3():
    return build_named("thm55", 3).model


@pytest.fixture(scope="session")
def hemisphere3():
    return build_named("hemisphere", 3).model


@pytest.fixture(scope="session")
def all_named_models():
    return {name: build_named(name, 3) for name in
            ("minkowski", "newtonian", "thm41", "thm55", "hemisphere")}
