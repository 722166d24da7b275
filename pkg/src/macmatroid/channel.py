"""Finite multiple-access channels as exact conditional probability tables.

Probabilities are exact rationals end to end: a joint distribution is a
table of integer weights over one common denominator, so marginalization is
integer addition and only the final logarithms are evaluated in floating
point.  Mutual information is in bits, with the 0·log 0 = 0 convention.

Input vectors are encoded little-endian in base q (user 1 is the least
significant digit), matching the subset bitmask convention for q = 2.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .gf2 import F2Matrix
from .matroid import SetFunction
from .subsets import complement, full_mask, iter_subsets

MAX_INPUT_SPACE = 256
MAX_OUTPUTS = 65536

_ZERO = Fraction(0)
_ONE = Fraction(1)


class TooLarge(ValueError):
    """Channel dimensions exceed the exhaustive-analysis caps."""


_LOG2_CACHE: dict = {0: 0.0}  # weight 0 never contributes; guard value


def _log2(n: int) -> float:
    v = _LOG2_CACHE.get(n)
    if v is None:
        if n.bit_length() <= 512:
            v = math.log2(n)
        else:
            shift = n.bit_length() - 64
            v = math.log2(n >> shift) + shift
        if len(_LOG2_CACHE) < (1 << 20):
            _LOG2_CACHE[n] = v
    return v


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ValueError(f"probabilities must be exact rationals, got {value!r}")


class Channel:
    """m-user MAC W(y|x) with exact rational entries.

    ``rows[x][y]`` is W(y|x); the row index x runs over the q^m input
    vectors, little-endian in base q.  Every row must sum to exactly 1.
    """

    def __init__(self, m: int, q: int, output_size: int, rows):
        if m < 0 or q < 2:
            raise ValueError(f"invalid dimensions m={m}, q={q}")
        if q**m > MAX_INPUT_SPACE:
            raise TooLarge(f"input space {q}^{m} exceeds {MAX_INPUT_SPACE}")
        if output_size < 1 or output_size > MAX_OUTPUTS:
            raise TooLarge(f"output size {output_size} outside [1, {MAX_OUTPUTS}]")
        rows = tuple(tuple(_to_fraction(p) for p in row) for row in rows)
        if len(rows) != q**m:
            raise ValueError(f"need {q ** m} rows, got {len(rows)}")
        for x, row in enumerate(rows):
            if len(row) != output_size:
                raise ValueError(f"row {x} has {len(row)} entries, expected {output_size}")
            total = _ZERO
            for p in row:
                if p < 0 or p > 1:
                    raise ValueError(f"entry {p} of row {x} outside [0, 1]")
                total += p
            if total != 1:
                raise ValueError(f"row {x} sums to {total}, not 1")
        self.m = m
        self.q = q
        self.output_size = output_size
        self.rows = rows

    @cached_property
    def _integerized(self):
        """Sparse view: (entries [(x, y, weight)], common denominator)."""
        denom = 1
        for row in self.rows:
            for p in row:
                denom = math.lcm(denom, p.denominator)
        entries = []
        for x, row in enumerate(self.rows):
            for y, p in enumerate(row):
                if p:
                    entries.append((x, y, p.numerator * (denom // p.denominator)))
        return entries, denom

    def __eq__(self, other):
        return (
            isinstance(other, Channel)
            and (self.m, self.q, self.output_size) == (other.m, other.q, other.output_size)
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Channel(m={self.m}, q={self.q}, outputs={self.output_size})"


class JointDistribution:
    """Exact joint distribution on {0..nu-1} x {0..nv-1}.

    Stored as sparse integer weights over one common denominator; marginal
    weight vectors are precomputed.
    """

    def __init__(self, table):
        table = [[_to_fraction(p) for p in row] for row in table]
        if not table or not table[0]:
            raise ValueError("joint table must be non-empty")
        denom = 1
        for row in table:
            for p in row:
                if p < 0:
                    raise ValueError(f"negative probability {p}")
                denom = math.lcm(denom, p.denominator)
        weights = {}
        for u, row in enumerate(table):
            for v, p in enumerate(row):
                if p:
                    weights[(u, v)] = p.numerator * (denom // p.denominator)
        self._init(len(table), len(table[0]), weights, denom)

    def _init(self, nu, nv, weights, denom):
        total = sum(weights.values())
        if total != denom:
            raise ValueError(f"probabilities sum to {Fraction(total, denom)}, not 1")
        self.nu = nu
        self.nv = nv
        self.weights = weights
        self.denom = denom
        marg_u = [0] * nu
        marg_v = [0] * nv
        for (u, v), w in weights.items():
            marg_u[u] += w
            marg_v[v] += w
        self.marg_u = marg_u
        self.marg_v = marg_v

    @classmethod
    def _from_weights(cls, nu, nv, weights, denom) -> "JointDistribution":
        self = object.__new__(cls)
        self._init(nu, nv, weights, denom)
        return self

    def prob(self, u: int, v: int) -> Fraction:
        return Fraction(self.weights.get((u, v), 0), self.denom)

    def support_v(self) -> list:
        return [v for v in range(self.nv) if self.marg_v[v]]

    def posterior_u(self, v: int) -> list:
        """P(U = u | V = v) as exact fractions."""
        wv = self.marg_v[v]
        if not wv:
            raise ValueError(f"output {v} has zero probability")
        return [Fraction(self.weights.get((u, v), 0), wv) for u in range(self.nu)]


def mutual_information(joint: JointDistribution) -> float:
    """I(U;V) in bits: sum of p(u,v) log2 p(u,v)/(p(u)p(v))."""
    denom = joint.denom
    log_d = _log2(denom)
    marg_u, marg_v = joint.marg_u, joint.marg_v
    acc = 0.0
    for (u, v), w in joint.weights.items():
        acc += w * (_log2(w) + log_d - _log2(marg_u[u]) - _log2(marg_v[v]))
    return acc / denom


def entropy_weights(weights: Iterable[int], denom: int) -> float:
    """Entropy in bits of integer weights over a common denominator."""
    acc = 0.0
    for w in weights:
        if w:
            acc += w * _log2(w)
    return _log2(denom) - acc / denom


def conditional_entropy_u_given_v(joint: JointDistribution) -> float:
    """H(U|V) in bits, via H(U,V) - H(V)."""
    h_joint = entropy_weights(joint.weights.values(), joint.denom)
    h_v = entropy_weights(joint.marg_v, joint.denom)
    return h_joint - h_v


def uniform_inputs(m: int, q: int = 2) -> list:
    p = Fraction(1, q)
    return [[p] * q for _ in range(m)]


def _input_weights(m: int, q: int, dists) -> tuple:
    """Integerize m per-user input distributions; returns (wx table, denom)."""
    dists = [[_to_fraction(p) for p in d] for d in dists]
    if len(dists) != m:
        raise ValueError(f"need {m} input distributions, got {len(dists)}")
    denom = 1
    per_user = []
    for i, d in enumerate(dists):
        if len(d) != q:
            raise ValueError(f"input distribution {i} has {len(d)} entries, expected {q}")
        if sum(d) != 1:
            raise ValueError(f"input distribution {i} does not sum to 1")
        du = math.lcm(*(p.denominator for p in d))
        per_user.append([p.numerator * (du // p.denominator) for p in d])
        denom *= du
    wx = []
    for x in range(q**m):
        w = 1
        rest = x
        for i in range(m):
            rest, digit = rest // q, rest % q
            w *= per_user[i][digit]
        wx.append(w)
    return wx, denom


def _subset_maps(m: int, q: int, s_mask: int):
    """Index maps x -> (digits on S packed, digits off S packed) for base q."""
    if q == 2:
        not_s = complement(s_mask, m)
        return (lambda x: x & s_mask), (lambda x: x & not_s)
    powers = [q**i for i in range(m)]

    def on_s(x: int) -> int:
        out = 0
        for i in range(m):
            if (s_mask >> i) & 1:
                out += ((x // powers[i]) % q) * powers[i]
        return out

    def off_s(x: int) -> int:
        out = 0
        for i in range(m):
            if not (s_mask >> i) & 1:
                out += ((x // powers[i]) % q) * powers[i]
        return out

    return on_s, off_s


def _check_caps(W: Channel) -> None:
    if W.q**W.m > MAX_INPUT_SPACE:
        raise TooLarge(f"input space {W.q}^{W.m} exceeds {MAX_INPUT_SPACE}")
    if W.output_size > MAX_OUTPUTS:
        raise TooLarge(f"output size {W.output_size} exceeds {MAX_OUTPUTS}")


def mif(W: Channel, dists) -> SetFunction:
    """Mutual information function S -> I(X[S]; Y, X[S^c]) in bits.

    Inputs are independent across users with the given per-user
    distributions.  The joint for each S keys atoms by (x restricted to S,
    (y, x restricted to S^c)); the pair is in bijection with (x, y), so no
    atom aggregation is needed and one pass per subset suffices.
    """
    _check_caps(W)
    m, q = W.m, W.q
    wx, d_in = _input_weights(m, q, dists)
    entries, d_w = W._integerized
    denom = d_in * d_w
    log_d = _log2(denom)
    space = q**m
    # fold input weights into the sparse channel view, dropping zero-prob inputs
    items = []
    for x, y, w in entries:
        wxw = wx[x]
        if wxw:
            items.append((x, y, wxw * w))
    values = []
    for s in iter_subsets(m):
        if s == 0:
            values.append(0.0)
            continue
        on_s, off_s = _subset_maps(m, q, s)
        wu = [0] * space
        wv: dict = {}
        atoms = []
        for x, y, w in items:
            u = on_s(x)
            vkey = y * space + off_s(x)
            wu[u] += w
            if vkey in wv:
                wv[vkey] += w
            else:
                wv[vkey] = w
            atoms.append((u, vkey, w))
        acc = 0.0
        for u, vkey, w in atoms:
            acc += w * (_log2(w) + log_d - _log2(wu[u]) - _log2(wv[vkey]))
        values.append(acc / denom)
    return SetFunction(m, tuple(values))


def umif(W: Channel) -> SetFunction:
    """Uniform mutual information function: MIF at i.i.d. uniform inputs."""
    return mif(W, uniform_inputs(W.m, W.q))


def _pushforward_joint(W: Channel, u_of_x, nu: int) -> JointDistribution:
    """Joint of (u(X), Y) under i.i.d. uniform inputs."""
    _check_caps(W)
    entries, d_w = W._integerized
    space = W.q**W.m
    denom = d_w * space
    weights: dict = {}
    for x, y, w in entries:
        key = (u_of_x(x), y)
        if key in weights:
            weights[key] += w
        else:
            weights[key] = w
    return JointDistribution._from_weights(nu, W.output_size, weights, denom)


def single_user_joint(W: Channel, i: int) -> JointDistribution:
    """Joint of (X_i, Y) under uniform inputs; user i is 1-based."""
    if not 1 <= i <= W.m:
        raise ValueError(f"user {i} outside 1..{W.m}")
    if W.q != 2:
        raise ValueError("single-user marginals implemented for q = 2 only")
    bit = 1 << (i - 1)
    return _pushforward_joint(W, lambda x: (x & bit) and 1, 2)


def linear_form_mi(W: Channel, s_mask: int) -> float:
    """I(xor of X_i over i in S ; Y) in bits, under uniform inputs."""
    if W.q != 2:
        raise ValueError("linear forms are defined for q = 2 channels")
    joint = _pushforward_joint(W, lambda x: (x & s_mask).bit_count() & 1, 2)
    return mutual_information(joint)


def transformed_mi(W: Channel, A: F2Matrix) -> float:
    """I(A·X ; Y) in bits under uniform inputs, via the pushforward joint."""
    if W.q != 2:
        raise ValueError("linear transforms are defined for q = 2 channels")
    if A.cols != W.m:
        raise ValueError(f"matrix has {A.cols} columns, channel has {W.m} users")
    nu = 1 << A.nrows
    return mutual_information(_pushforward_joint(W, A.apply, nu))


def full_input_mi(W: Channel) -> float:
    """I(X[E]; Y) in bits under uniform inputs."""
    space = W.q**W.m
    return mutual_information(_pushforward_joint(W, lambda x: x, space))


def linear_deterministic(A: F2Matrix) -> Channel:
    """Deterministic channel Y = A·X over F2; outputs are vectors in F2^rows."""
    m = A.cols
    if (1 << m) > MAX_INPUT_SPACE:
        raise TooLarge(f"input space 2^{m} exceeds {MAX_INPUT_SPACE}")
    out_size = 1 << A.nrows
    if out_size > MAX_OUTPUTS:
        raise TooLarge(f"output space 2^{A.nrows} exceeds {MAX_OUTPUTS}")
    rows = []
    for x in range(1 << m):
        y = A.apply(x)
        rows.append(tuple(_ONE if yy == y else _ZERO for yy in range(out_size)))
    return Channel(m, 2, out_size, rows)


def additive_noise(probs) -> Channel:
    """Channel Y = X xor Z on F2^m for noise distribution P_Z (length 2^m)."""
    probs = [_to_fraction(p) for p in probs]
    size = len(probs)
    m = (size - 1).bit_length()
    if size != 1 << m:
        raise ValueError(f"noise table length {size} is not a power of two")
    if sum(probs) != 1:
        raise ValueError("noise distribution does not sum to 1")
    if any(p < 0 for p in probs):
        raise ValueError("negative noise probability")
    if size > MAX_INPUT_SPACE:
        raise TooLarge(f"noise space 2^{m} exceeds {MAX_INPUT_SPACE}")
    rows = [tuple(probs[y ^ x] for y in range(size)) for x in range(size)]
    return Channel(m, 2, size, rows)
