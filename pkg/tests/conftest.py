import math
import random

from hypothesis import settings

from jonesasym.knots import ConnectedSum, FigureEight, Mirror, Torus

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

LEAVES = [FigureEight(), Torus(2, 3), Torus(2, 5), Torus(3, 4), Torus(3, 5)]


def random_knot(rng: random.Random, depth: int = 2):
    """Random expression over the supported families."""
    roll = rng.random()
    if depth == 0 or roll < 0.4:
        return rng.choice(LEAVES)
    if roll < 0.7:
        return Mirror(random_knot(rng, depth - 1))
    return ConnectedSum(tuple(random_knot(rng, depth - 1) for _ in range(rng.randint(2, 3))))


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


TAU = 2 * math.pi
