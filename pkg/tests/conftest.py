import random

import pytest

from binrings.forms import BinaryForm
from binrings.binring import is_irreducible_form


@pytest.fixture
def rng():
    return random.Random(0xBEEF)


def random_form(rng, n, bound=20, lead_nonzero=True):
    while True:
        c = tuple(rng.randint(-bound, bound) for _ in range(n + 1))
        if all(x == 0 for x in c):
            continue
        if lead_nonzero and c[0] == 0:
            continue
        return BinaryForm(n, c)


def random_irreducible_form(rng, n, bound=20):
    while True:
        f = random_form(rng, n, bound)
        if is_irreducible_form(f):
            return f
