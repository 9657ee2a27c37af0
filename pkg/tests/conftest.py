import pytest

from groupkit import build_group
from groupkit.words import parse_subset


@pytest.fixture(scope="session")
def z12():
    return build_group({"kind": "cyclic", "n": 12})


@pytest.fixture(scope="session")
def d12():
    return build_group({"kind": "dihedral", "n": 6})


@pytest.fixture(scope="session")
def s3():
    return build_group({"kind": "symmetric", "n": 3})


@pytest.fixture()
def empty_mid_pair(d12):
    """The dihedral subgroup pair with an empty middle director."""
    return parse_subset(d12, "1,a^3,ba^3,b"), parse_subset(d12, "1,a^3,ba,ba^4")


@pytest.fixture()
def proper_mid_pair(d12):
    """The dihedral subgroup pair whose middle director is exactly HK."""
    return parse_subset(d12, "1,ab"), parse_subset(d12, "1,a^3,b,ba^3")
