import math

import pytest
from hypothesis import HealthCheck, settings

from eigenbox.spectrum import Cuboid

settings.register_profile(
    "eigenbox",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("eigenbox")

PI2 = math.pi**2


def pool_cuboids() -> list[Cuboid]:
    """Small fixed pool spanning the search domain: cube, rational sides,
    generic irrational sides, and a thin box."""
    return [
        Cuboid(1.0, 1.0, 1.0),
        Cuboid.from_sides(0.5, 1.0),
        Cuboid.from_sides(0.7, 0.9),
        Cuboid.from_sides(0.6180339887498949, 1.0),
        Cuboid.from_sides(0.9, 1.02),
        Cuboid.from_sides(0.2, 0.5),
    ]


@pytest.fixture(scope="session")
def cuboid_pool():
    return pool_cuboids()
