import random
from math import gcd, isqrt

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from gausscomp.forms import BinaryForm, UnimodularMap

DISCS = [-4, -23, -47, -71, -163, -231, 12, 40, 229]


def nondegenerate(a, b, c):
    D = b * b - 4 * a * c
    return D != 0 and not (D > 0 and isqrt(D) ** 2 == D)


def primitive(a, b, c):
    return gcd(gcd(a, b), c) == 1


def random_form(rng, bound, definite=None):
    """Random primitive nondegenerate form; definite=True forces a positive definite one."""
    while True:
        a, b, c = (rng.randint(-bound, bound) for _ in range(3))
        if definite:
            a, c = abs(a) + 1, abs(c) + 1
            if b * b - 4 * a * c >= 0:
                continue
        if nondegenerate(a, b, c) and primitive(a, b, c):
            return BinaryForm(a, b, c)


def random_unimodular(rng, bound=9, det=1):
    while True:
        p, q, r = (rng.randint(-bound, bound) for _ in range(3))
        if p and (det + q * r) % p == 0:
            return p, q, r, (det + q * r) // p


@pytest.fixture
def rng():
    return random.Random(20261016)


coeff = st.integers(-10**4, 10**4)
forms = st.tuples(coeff, coeff, coeff).filter(
    lambda t: nondegenerate(*t) and primitive(*t)).map(lambda t: BinaryForm(*t))
definite_forms = st.tuples(st.integers(1, 500), st.integers(-500, 500), st.integers(1, 500)).filter(
    lambda t: t[1] ** 2 - 4 * t[0] * t[2] < 0 and primitive(*t)).map(lambda t: BinaryForm(*t))
indefinite_forms = forms.filter(lambda f: f.disc > 0)
small = st.integers(-300, 300)
small_forms = st.tuples(small, small, small).filter(
    lambda t: nondegenerate(*t) and primitive(*t)).map(lambda t: BinaryForm(*t))


def _compose_steps(steps, flip):
    m = UnimodularMap(1, 0, 0, 1)
    for upper, k in steps:
        m = m @ (UnimodularMap(1, k, 0, 1) if upper else UnimodularMap(1, 0, k, 1))
    if flip:
        m = m @ UnimodularMap(1, 0, 0, -1)
    return m


def unimodular(det=None):
    """Products of elementary matrices, optionally times diag(1, -1)."""
    steps = st.lists(st.tuples(st.booleans(), st.integers(-6, 6)), max_size=6)
    flips = st.just(det == -1) if det is not None else st.booleans()
    return st.builds(_compose_steps, steps, flips)


settings.register_profile("default", deadline=None)
settings.load_profile("default")
