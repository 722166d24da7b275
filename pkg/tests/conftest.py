"""Shared fixtures: reference channels, matroid corpora, seeded generators."""

from __future__ import annotations

import itertools
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from macmatroid import (
    Channel,
    F2Matrix,
    linear_deterministic,
    uniform_matroid,
    vector_matroid,
)

from oracles import rref_matrices


def all_f2_matrices(nrows: int, ncols: int):
    for rows in itertools.product(range(1 << ncols), repeat=nrows):
        yield F2Matrix(rows, ncols)


def make_channel(m, rows, q=2):
    rows = [[Fraction(p) for p in row] for row in rows]
    return Channel(m, q, len(rows[0]), rows)


@pytest.fixture(scope="session")
def parity_channel():
    return linear_deterministic(F2Matrix.from_text("11"))


@pytest.fixture(scope="session")
def identity2_channel():
    return linear_deterministic(F2Matrix.from_text("10;01"))


@pytest.fixture(scope="session")
def adder_channel():
    # Y = X1 + X2 over the integers, outputs {0, 1, 2}
    rows = {
        0b00: [1, 0, 0],
        0b01: [0, 1, 0],
        0b10: [0, 1, 0],
        0b11: [0, 0, 1],
    }
    return make_channel(2, [rows[x] for x in range(4)])


@pytest.fixture(scope="session")
def u24():
    return uniform_matroid(2, 4)


@pytest.fixture(scope="session")
def criterion1_matrices():
    """All F2 matrices with 1..3 rows and 1..5 columns, plus 0-row edge cases."""
    out = [F2Matrix((), c) for c in range(1, 6)]
    for r in range(1, 4):
        for c in range(1, 6):
            out.extend(all_f2_matrices(r, c))
    return out


@pytest.fixture(scope="session")
def binary_matroids_by_m():
    """Every binary matroid on m labelled elements, m <= 6, one per subspace."""
    return {
        m: [vector_matroid(F2Matrix(rows, m)) for rows in rref_matrices(m)]
        for m in range(7)
    }


def random_rational_dist(rng: random.Random, size: int, scale: int = 8):
    weights = [rng.randrange(scale) for _ in range(size)]
    if not any(weights):
        weights[rng.randrange(size)] = 1
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


def random_channel(rng: random.Random, m: int, ny: int) -> Channel:
    rows = [random_rational_dist(rng, ny) for _ in range(1 << m)]
    return Channel(m, 2, ny, rows)


def alias_outputs(W: Channel, splits) -> Channel:
    """Split every output y into len(splits[y]) aliases with the given exact
    fractions; preserves all mutual informations (aliases share posteriors)."""
    offsets = []
    total = 0
    for y in range(W.output_size):
        offsets.append(total)
        total += len(splits[y])
    rows = []
    for x in range(W.q**W.m):
        row = [Fraction(0)] * total
        for y in range(W.output_size):
            p = W.rows[x][y]
            for k, frac in enumerate(splits[y]):
                row[offsets[y] + k] = p * frac
        rows.append(row)
    return Channel(W.m, W.q, total, rows)


def add_junk_output(W: Channel, junk) -> Channel:
    """Append an input-independent coordinate: Y' = (Y, N) with N ~ junk."""
    j = len(junk)
    rows = []
    for x in range(W.q**W.m):
        row = []
        for y in range(W.output_size):
            for n in range(j):
                row.append(W.rows[x][y] * junk[n])
        rows.append(row)
    return Channel(W.m, W.q, W.output_size * j, rows)


def flip_output_bits(W: Channel, p: Fraction) -> Channel:
    """Push every output index through independent bitwise flips with
    probability p (outputs must be 2^k-valued)."""
    k = (W.output_size - 1).bit_length()
    assert W.output_size == 1 << k

    def pattern_prob(e: int) -> Fraction:
        ones = e.bit_count()
        return p**ones * (1 - p) ** (k - ones)

    rows = []
    for x in range(W.q**W.m):
        row = [Fraction(0)] * W.output_size
        for y in range(W.output_size):
            py = W.rows[x][y]
            if not py:
                continue
            for e in range(W.output_size):
                row[y ^ e] += py * pattern_prob(e)
        rows.append(row)
    return Channel(W.m, W.q, W.output_size, rows)
