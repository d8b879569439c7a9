import math
import random

import pytest

from cdcodes.algebra import TwistedDihedralAlgebra
from cdcodes.field import field_from_order


_ALG_CACHE: dict[tuple[int, int, int], TwistedDihedralAlgebra] = {}


def get_algebra(q: int, n: int, tw: int = -1) -> TwistedDihedralAlgebra:
    """Shared algebra instances so cached decompositions are reused."""
    key = (q, n, tw)
    if key not in _ALG_CACHE:
        _ALG_CACHE[key] = TwistedDihedralAlgebra(field_from_order(q), n, tw)
    return _ALG_CACHE[key]


@pytest.fixture
def rng():
    return random.Random(0xC0DE5)


def odd_coprime_grid(q: int, n_max: int):
    return [n for n in range(3, n_max + 1, 2) if math.gcd(n, q) == 1]
