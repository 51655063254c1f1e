"""Shared seeded generators for property-style tests."""

import random

from deligne_simpson.jnf import JnfTuple, JordanForm, as_partition


def random_partition(rng: random.Random, n: int):
    parts = []
    left = n
    while left:
        b = rng.randint(1, left)
        parts.append(b)
        left -= b
    return as_partition(parts)


def random_jordan_form(rng: random.Random, n: int) -> JordanForm:
    blocks = {}
    left = n
    idx = 1
    while left:
        m = rng.randint(1, left)
        blocks["e%d" % idx] = random_partition(rng, m)
        left -= m
        idx += 1
    return JordanForm(blocks)


def random_jnf_tuple(rng: random.Random, n: int, p: int) -> JnfTuple:
    return JnfTuple([random_jordan_form(rng, n) for _ in range(p + 1)])
