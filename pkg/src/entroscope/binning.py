"""Finite-N random binning for a pair (x, y), with exact bookkeeping.

A binning code hashes N-fold sequences of x into m bins, with
m = round(2^(N (H(x|y) + delta))) for a configured rate slack delta >= 0.
The induced system ((x, y) power, hash) is a finite distribution built with
exact rational probabilities, so every reported quantity is an exact
entropy of a constructed distribution - there is no sampling error
anywhere; randomness enters only through the seeded choice of the hash
table. Reports show how H(X|X',Y)/N decays with N (the hash plus side
information almost resolves X), while H(X'|X) = 0 holds exactly in every
run because the hash is a function of X.

Alphabet sizes are kept small on purpose: the hash domain |x-alphabet|^N is
capped (default 1e6 states, ENTROSCOPE_BUDGET overrides) because the whole
point is exact computation, not Monte Carlo.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from typing import Sequence

from .distributions import (
    JointDistribution,
    apply_function,
    entropy,
    iid_power,
    is_functionally_determined,
)
from .errors import BudgetExceeded, FormatError, UnknownVariable

DEFAULT_STATE_CAP = 10 ** 6


def state_cap() -> int:
    raw = os.environ.get("ENTROSCOPE_BUDGET")
    if raw is None:
        return DEFAULT_STATE_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise FormatError(f"ENTROSCOPE_BUDGET must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise FormatError("ENTROSCOPE_BUDGET must be positive")
    return value


def _pair_names(d: JointDistribution, x: str | None, y: str | None):
    names = d.names
    if x is None and y is None:
        if len(names) != 2:
            raise UnknownVariable(
                f"distribution has variables {names}; pass x= and y= to pick the pair")
        return names
    if x is None or y is None or x == y:
        raise UnknownVariable("need two distinct variable names for x and y")
    d.index_of(x)
    d.index_of(y)
    return x, y


@dataclass(frozen=True)
class BinningCode:
    """Deterministic hash table from packed x-sequences to bins."""

    n_copies: int
    bins: int
    delta: float
    seed: int
    x_name: str
    y_name: str
    x_alphabet: int
    table: tuple

    def __call__(self, packed: int) -> int:
        return self.table[packed]


def bin_count(h_x_given_y: float, n_copies: int, delta: float) -> int:
    return max(1, round(2 ** (n_copies * (h_x_given_y + delta))))


def build_code(d: JointDistribution, n_copies: int, delta: float,
               seed: int, x: str | None = None, y: str | None = None) -> BinningCode:
    """Uniform random binning of x-sequences at rate H(x|y) + delta.

    The same seed always yields the same table; distinct seeds are
    independent experiments.
    """
    if n_copies < 1:
        raise ValueError(f"n_copies must be >= 1, got {n_copies}")
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    x, y = _pair_names(d, x, y)
    s = d.variables[d.index_of(x)][1]
    domain = s ** n_copies
    cap = state_cap()
    if domain > cap:
        raise BudgetExceeded(domain, cap)
    h_x_given_y = entropy(d, (x, y)) - entropy(d, (y,))
    m = bin_count(h_x_given_y, n_copies, delta)
    rng = random.Random(seed)
    table = tuple(rng.randrange(m) for _ in range(domain))
    return BinningCode(n_copies, m, delta, seed, x, y, s, table)


@dataclass(frozen=True)
class BinningRow:
    """One (seed, N) run; rates are per-copy (divided by N)."""

    seed: int
    n_copies: int
    bins: int
    h_hash: float            # H(X')/N
    i_hash_y: float          # I(X';Y)/N
    h_x_given_hash_y: float  # H(X|X',Y)/N
    hash_is_function_of_x: bool


def hashed_system(d: JointDistribution, code: BinningCode) -> JointDistribution:
    """The exact joint of (x-power, y-power, hash) for this code."""
    dn = iid_power(d, code.n_copies)
    hash_name = f"{code.x_name}_hash"
    return apply_function(dn, (code.x_name,), code, hash_name)


def sw_report(d: JointDistribution, n_list: Sequence[int], delta: float,
              seed: int, x: str | None = None, y: str | None = None) -> list:
    """Exact per-copy rates of the binning experiment at each N."""
    x, y = _pair_names(d, x, y)
    rows = []
    for n_copies in n_list:
        code = build_code(d, n_copies, delta, seed, x, y)
        system = hashed_system(d, code)
        hname = f"{x}_hash"
        h_hash = entropy(system, (hname,))
        h_y = entropy(system, (y,))
        h_hash_y = entropy(system, (hname, y))
        h_xhy = entropy(system, (x, hname, y))
        rows.append(BinningRow(
            seed=seed,
            n_copies=n_copies,
            bins=code.bins,
            h_hash=h_hash / n_copies,
            i_hash_y=(h_hash + h_y - h_hash_y) / n_copies,
            h_x_given_hash_y=(h_xhy - h_hash_y) / n_copies,
            hash_is_function_of_x=is_functionally_determined(system, (hname,), (x,)),
        ))
    return rows


CSV_HEADER = "seed,N,m,H_hash,I_hash_y,H_x_given_hash_y"


def rows_to_csv(rows) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(f"{r.seed},{r.n_copies},{r.bins},{r.h_hash!r},"
                     f"{r.i_hash_y!r},{r.h_x_given_hash_y!r}")
    return "\n".join(lines) + "\n"


def mean_residual_by_n(d: JointDistribution, n_list: Sequence[int], delta: float,
                       seeds: Sequence[int], x: str | None = None,
                       y: str | None = None) -> dict:
    """Mean H(X|X',Y)/N over seeds, per N; the o(N)/N trend statistic.

    The N-fold power is seed-independent, so it is built once per N and
    shared across all seeded hash tables.
    """
    x, y = _pair_names(d, x, y)
    seeds = tuple(seeds)
    hname = f"{x}_hash"
    out = {}
    for n_copies in n_list:
        dn = iid_power(d, n_copies)
        total = 0.0
        for seed in seeds:
            code = build_code(d, n_copies, delta, seed, x, y)
            system = apply_function(dn, (x,), code, hname)
            residual = entropy(system, (x, hname, y)) - entropy(system, (hname, y))
            total += residual / n_copies
        out[n_copies] = total / len(seeds)
    return out
