"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately take different computational paths from the
library: the quadruple oracle finds parabolas by exhaustive search over all
q^2 (q-1) candidates instead of the closed-form parametrization, and the
linear-rank oracle computes subspace ranks by Gaussian elimination over
GF(2). Expected values frozen in the tests were produced by these oracles.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from entroscope import JointDistribution, make_distribution
from entroscope.profile import EntropyProfile


# ---------------------------------------------------------------------------
# small standard distributions


def coin() -> JointDistribution:
    return make_distribution([((0,), "1/2"), ((1,), "1/2")], [("x", 2)])


def coin_pair(names=("x", "y")) -> JointDistribution:
    h = Fraction(1, 4)
    return make_distribution(
        [((0, 0), h), ((0, 1), h), ((1, 0), h), ((1, 1), h)],
        [(names[0], 2), (names[1], 2)])


def independent_bits(names) -> JointDistribution:
    n = len(names)
    p = Fraction(1, 2 ** n)
    outcomes = [(bits, p) for bits in itertools.product((0, 1), repeat=n)]
    return make_distribution(outcomes, [(nm, 2) for nm in names])


def crossover_pair(crossover=Fraction(1, 4)) -> JointDistribution:
    """x fair bit, y = x flipped with the given probability."""
    same = (1 - crossover) / 2
    diff = crossover / 2
    return make_distribution(
        [((0, 0), same), ((0, 1), diff), ((1, 0), diff), ((1, 1), same)],
        [("x", 2), ("y", 2)])


@pytest.fixture(scope="session")
def quadruples():
    """Brute-force quadruple distributions, cached for the session."""
    from entroscope import quadruple_distribution

    cache = {}

    def get(q):
        if q not in cache:
            cache[q] = quadruple_distribution(q)
        return cache[q]

    return get


@pytest.fixture(scope="session")
def quadruple_profiles(quadruples):
    from entroscope import profile_of

    cache = {}

    def get(q):
        if q not in cache:
            cache[q] = profile_of(quadruples(q))
        return cache[q]

    return get


# ---------------------------------------------------------------------------
# random generators (seeded, deterministic)


def random_distribution(rng: random.Random, n_vars=4, max_alphabet=4,
                        max_weight=16) -> JointDistribution:
    sizes = [rng.randint(1, max_alphabet) for _ in range(n_vars)]
    cells = list(itertools.product(*(range(s) for s in sizes)))
    support = [c for c in cells if rng.random() < 0.7]
    if not support:
        support = [rng.choice(cells)]
    weights = [rng.randint(1, max_weight) for _ in support]
    total = sum(weights)
    outcomes = [(c, Fraction(w, total)) for c, w in zip(support, weights)]
    names = [(f"x{i + 1}", s) for i, s in enumerate(sizes)]
    return make_distribution(outcomes, names)


def random_expression(rng: random.Random, order=("a", "b", "c", "d")):
    """Random rational combination of H/I atoms over the order."""
    from entroscope.profile import expand_entropy, expand_mutual_info, zero_expression

    n = len(order)
    e = zero_expression(order)
    for _ in range(rng.randint(1, 6)):
        coef = Fraction(rng.choice([x for x in range(-9, 10) if x]),
                        rng.randint(1, 9))
        idx = list(range(n))
        rng.shuffle(idx)
        cut1 = rng.randint(1, n - 1)
        s = [order[i] for i in idx[:cut1]]
        rest = idx[cut1:]
        if rng.random() < 0.5 and rest:
            cut2 = rng.randint(1, len(rest))
            t = [order[i] for i in rest[:cut2]]
            u = [order[i] for i in rest[cut2:]] if rng.random() < 0.5 else []
            e = e + coef * expand_mutual_info(order, s, t, u)
        else:
            given = [order[i] for i in rest] if rng.random() < 0.5 and rest else []
            e = e + coef * expand_entropy(order, s, given)
    return e


# ---------------------------------------------------------------------------
# independent oracles


def oracle_quadruple_support(q: int) -> set:
    """Support of the construction, found by exhaustive parabola search.

    For every line and point pair, scan all q^2 (q-1) parabolas and keep
    those passing through both points, requiring a repeated intersection
    root when the points coincide. No closed-form parametrization is used.
    """
    support = set()
    for c0 in range(q):
        for c1 in range(q):
            for xa in range(q):
                ya = (c0 + c1 * xa) % q
                for xb in range(q):
                    yb = (c0 + c1 * xb) % q
                    for d2 in range(1, q):
                        for d0 in range(q):
                            for d1 in range(q):
                                if (d0 + d1 * xa + d2 * xa * xa - ya) % q:
                                    continue
                                if (d0 + d1 * xb + d2 * xb * xb - yb) % q:
                                    continue
                                if xa == xb:
                                    # repeated root: quadratic is d2 (x-xa)^2
                                    if (d1 - c1 + 2 * d2 * xa) % q:
                                        continue
                                ea = xa * q + ya
                                eb = xb * q + yb
                                ec = c0 * q + c1
                                ed = (d2 - 1) * q * q + d0 * q + d1
                                support.add((ea, eb, ec, ed))
    return support


def gf2_rank(rows) -> int:
    """Rank of a set of GF(2) row vectors given as int bitmasks."""
    rank = 0
    basis = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
            basis.sort(reverse=True)
            rank += 1
    return rank


def random_linear_rank_profile(rng: random.Random, dim=6,
                               order=("a", "b", "c", "d")) -> EntropyProfile:
    """Profile of a linear polymatroid: H(S) = rank of the columns assigned
    to the variables in S, over GF(2). Entropic (a uniform linear code
    realizes it) and Ingleton-satisfying for every role assignment."""
    n = len(order)
    vecs = {v: [rng.getrandbits(dim) for _ in range(rng.randint(0, 3))]
            for v in order}
    coords = np.empty(2 ** n - 1)
    for mask in range(1, 2 ** n):
        rows = []
        for i in range(n):
            if mask >> i & 1:
                rows.extend(vecs[order[i]])
        coords[mask - 1] = gf2_rank(rows)
    return EntropyProfile(order, coords)
