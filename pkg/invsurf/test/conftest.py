import os
from fractions import Fraction

import numpy as np
import pytest

from invsurf.distinguished import (construct_distinguished, sqrt235_gamma,
                                   seventh_idempotent)
from invsurf.exact import RATIONALS, FieldElem, create_tower
from invsurf.parse_io import load_field_spec, load_lines
from invsurf.poly import MPoly, PolyVectorField

DATA = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data')

N_RANDOM = 200


def data_path(name):
    return os.path.join(DATA, name)


def random_fraction(rng, size=5, den=3):
    return Fraction(int(rng.integers(-size, size + 1)), int(rng.integers(1, den + 1)))


def random_elem(rng, tower, density=0.5):
    coords = [random_fraction(rng) if rng.random() < density else 0
              for _ in range(tower.degree)]
    return FieldElem(tower, coords)


def random_nonzero_elem(rng, tower):
    while True:
        x = random_elem(rng, tower)
        if not x.is_zero():
            return x


def random_poly(rng, nvars, degree, tower=RATIONALS, nterms=4):
    terms = {}
    for _ in range(nterms):
        d = int(rng.integers(0, degree + 1))
        cuts = sorted(int(c) for c in rng.integers(0, d + 1, size=nvars - 1))
        exp = tuple(b - a for a, b in zip([0] + cuts, cuts + [d]))
        terms[exp] = random_elem(rng, tower)
    return MPoly(nvars, terms, tower)


def random_field(rng, n, m, tower=RATIONALS, nterms=3):
    return PolyVectorField([random_poly(rng, n, m, tower, nterms) for _ in range(n)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope='session')
def k235():
    return create_tower([2, 3, 5])


@pytest.fixture(scope='session')
def sqrt235_field():
    return load_field_spec(data_path('sqrt235_field.json'))


@pytest.fixture(scope='session')
def sqrt235_lines(sqrt235_field):
    return load_lines(data_path('sqrt235_lines.json'), sqrt235_field.tower)


@pytest.fixture(scope='session')
def sqrt235_df():
    df = construct_distinguished(sqrt235_gamma())
    seventh_idempotent(df)
    return df
