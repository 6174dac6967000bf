import pytest
from hypothesis import HealthCheck, settings

from ellipdiv import EdsSequence, parse_curve, parse_point

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# (curve, point) literals; the first two are the flagship pairs
PAIRS = {
    "37a": ("0,0,1,-1,0", "0,0"),
    "split": ("0,-1,0,-6,0", "-1,2"),
    "wild": ("1,0,0,4,1", "15/4,-83/8"),
    "389a": ("0,1,1,-2,0", "-1,1"),
    "53a": ("1,-1,1,0,0", "0,0"),
    "43a": ("0,1,1,0,0", "0,0"),
    "5077a": ("0,0,1,-7,6", "0,2"),
    "mordell": ("0,0,0,0,-2", "3,5"),
    "m2": ("0,0,0,-2,0", "2,2"),
}


def make(name):
    c, p = PAIRS[name]
    return EdsSequence(parse_curve(c), parse_point(p))


@pytest.fixture(scope="session")
def seqs():
    return {name: make(name) for name in PAIRS}


@pytest.fixture(scope="session")
def s37(seqs):
    return seqs["37a"]


@pytest.fixture(scope="session")
def ssplit(seqs):
    return seqs["split"]
