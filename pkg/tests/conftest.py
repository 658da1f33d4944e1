import os
import random

import pytest

# One seed drives every randomized suite; override to shake the tests.
SEED = int(os.environ.get("CUBICRIGID_TEST_SEED", "20260811"))


@pytest.fixture
def rng():
    return random.Random(SEED)


def random_bivar(rng, max_deg=4, max_coeff=9, terms=5):
    """Small random integer polynomial (possibly zero)."""
    from cubicrigid.exactpoly import BivarPoly
    out = {}
    for _ in range(rng.randint(0, terms)):
        key = (rng.randint(0, max_deg), rng.randint(0, max_deg))
        out[key] = rng.randint(-max_coeff, max_coeff)
    return BivarPoly(out)


def random_mod_bivar(rng, p, max_deg=4, terms=5):
    from cubicrigid.exactpoly import ModBivarPoly
    out = {}
    for _ in range(rng.randint(0, terms)):
        key = (rng.randint(0, max_deg), rng.randint(0, max_deg))
        out[key] = rng.randint(0, p - 1)
    return ModBivarPoly(p, out)
