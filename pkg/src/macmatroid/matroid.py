"""Matroids and polymatroids as dense rank tables.

A matroid on {1..m} is stored as the full table of its rank function,
indexed by subset bitmask.  Construction validates the rank axioms

    (R1)  r(S) <= |S|  (and r(S) >= 0),
    (R2)  monotonicity,
    (R3)  submodularity,

and everything downstream (duals, minors, derived families, isomorphism)
is computed from the table.  Ground sets are capped at 16 elements so that
the dense table and exhaustive scans stay exact and cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .subsets import MAX_GROUND, complement, full_mask, iter_subsets, render, submasks


class AxiomViolation(Exception):
    """A rank table violates one of the axioms R1, R2 or R3."""

    def __init__(self, axiom: str, witness: Sequence[int], m: int, detail: str = ""):
        self.axiom = axiom
        self.witness = tuple(witness)
        self.m = m
        shown = ", ".join(render(w, m) for w in self.witness)
        message = f"{axiom} violated at [{shown}]"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class GroundTooLarge(ValueError):
    """Ground set too large for an exhaustive operation."""


@dataclass(frozen=True)
class SetFunction:
    """Dense function on all subsets of {1..m}, indexed by bitmask."""

    m: int
    values: tuple

    def __post_init__(self):
        if not 0 <= self.m <= MAX_GROUND:
            raise ValueError(f"ground size {self.m} outside [0, {MAX_GROUND}]")
        if len(self.values) != 1 << self.m:
            raise ValueError(
                f"need {1 << self.m} values for m={self.m}, got {len(self.values)}"
            )

    def __getitem__(self, mask: int):
        return self.values[mask]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def _as_values(table) -> tuple:
    if isinstance(table, SetFunction):
        return tuple(table.values)
    return tuple(table)


def _check_rank_axioms(m: int, rank: Sequence[int]) -> None:
    """Raise AxiomViolation for the first violated axiom, in order R1, R2, R3.

    R2 and R3 are checked in their local forms (covers and quadruples), which
    are equivalent to the global inequalities for arbitrary set functions.
    """
    size = 1 << m
    for s in range(size):
        r = rank[s]
        if r < 0 or r > s.bit_count():
            raise AxiomViolation("R1", (s,), m, f"rank {r} vs cardinality {s.bit_count()}")
    bits = [1 << i for i in range(m)]
    for s in range(size):
        rs = rank[s]
        for b in bits:
            if not s & b and rank[s | b] < rs:
                raise AxiomViolation("R2", (s, s | b), m)
    for s in range(size):
        rs = rank[s]
        out = [b for b in bits if not s & b]
        for b1, b2 in combinations(out, 2):
            if rank[s | b1] + rank[s | b2] < rank[s | b1 | b2] + rs:
                raise AxiomViolation("R3", (s | b1, s | b2), m)


class Matroid:
    """Matroid on {1..m} stored as its dense rank table."""

    __slots__ = ("m", "rank")

    def __init__(self, m: int, rank: Sequence[int]):
        if not 0 <= m <= MAX_GROUND:
            raise ValueError(f"ground size {m} outside [0, {MAX_GROUND}]")
        table = []
        for v in rank:
            if isinstance(v, float):
                if not v.is_integer():
                    raise ValueError(f"rank table entry {v} is not an integer")
                v = int(v)
            table.append(int(v))
        table = tuple(table)
        if len(table) != 1 << m:
            raise ValueError(f"rank table has {len(table)} entries, expected {1 << m}")
        _check_rank_axioms(m, table)
        self.m = m
        self.rank = table

    @classmethod
    def _from_valid(cls, m: int, rank: tuple) -> "Matroid":
        # Internal: table already known to satisfy the axioms.
        self = object.__new__(cls)
        self.m = m
        self.rank = tuple(rank)
        return self

    @property
    def full_rank(self) -> int:
        return self.rank[full_mask(self.m)]

    def is_independent(self, mask: int) -> bool:
        return self.rank[mask] == mask.bit_count()

    def __eq__(self, other):
        return (
            isinstance(other, Matroid) and self.m == other.m and self.rank == other.rank
        )

    def __hash__(self):
        return hash((self.m, self.rank))

    def __repr__(self):
        return f"Matroid(m={self.m}, rank_full={self.full_rank})"


def matroid_from_rank(m: int, table) -> Matroid:
    """Build a matroid from a dense integer rank table, validating R1-R3."""
    return Matroid(m, _as_values(table))


def uniform_matroid(r: int, n: int) -> Matroid:
    """Uniform matroid of rank r on {1..n}: rank(S) = min(|S|, r)."""
    if not 0 <= r <= n <= MAX_GROUND:
        raise ValueError(f"need 0 <= r <= n <= {MAX_GROUND}, got r={r}, n={n}")
    table = tuple(min(s.bit_count(), r) for s in iter_subsets(n))
    return Matroid._from_valid(n, table)


@dataclass(frozen=True)
class Families:
    """Derived set families of a matroid, as frozensets of bitmasks."""

    independents: frozenset
    bases: frozenset
    circuits: frozenset


def families(M: Matroid) -> Families:
    """Independent sets, bases and circuits, enumerated from the rank table."""
    rank = M.rank
    r_full = M.full_rank
    independents = frozenset(
        s for s in iter_subsets(M.m) if rank[s] == s.bit_count()
    )
    bases = frozenset(s for s in independents if s.bit_count() == r_full)
    circuits = set()
    for s in iter_subsets(M.m):
        if s in independents:
            continue
        # minimal dependent: every single-element deletion is independent
        if all((s ^ (1 << i)) in independents for i in range(M.m) if (s >> i) & 1):
            circuits.add(s)
    return Families(independents, bases, frozenset(circuits))


def dual(M: Matroid) -> Matroid:
    """Dual matroid: rank*(S) = rank(S^c) + |S| - rank(E)."""
    m, rank = M.m, M.rank
    full = full_mask(m)
    r_full = rank[full]
    table = tuple(
        rank[full ^ s] + s.bit_count() - r_full for s in iter_subsets(m)
    )
    return Matroid._from_valid(m, table)


def _positions(mask: int) -> list:
    return [i for i in range(mask.bit_length()) if (mask >> i) & 1]


def _restrict_table(m: int, rank: Sequence[int], s_mask: int) -> tuple:
    """Rank table of the restriction to s_mask, relabelled to {1..|S|} ascending."""
    pos = _positions(s_mask)
    k = len(pos)
    table = []
    for t in range(1 << k):
        expanded = 0
        for j in range(k):
            if (t >> j) & 1:
                expanded |= 1 << pos[j]
        table.append(rank[expanded])
    return tuple(table)


def restrict(M: Matroid, s_mask: int) -> Matroid:
    """Restriction M|S on ground set S, relabelled to {1..|S|} in ascending order."""
    return Matroid._from_valid(
        s_mask.bit_count(), _restrict_table(M.m, M.rank, s_mask)
    )


def contract(M: Matroid, s_mask: int) -> Matroid:
    """Contraction M/S on ground set E-S, computed as (M* | S^c)*."""
    return dual(restrict(dual(M), complement(s_mask, M.m)))


def _rank_profile(m: int, table: Sequence[int]) -> tuple:
    """Sorted (cardinality, rank) multiset; permutation-invariant fingerprint."""
    return tuple(sorted((s.bit_count(), table[s]) for s in range(1 << m)))


def _element_fingerprint(m: int, table: Sequence[int], i: int) -> tuple:
    return tuple(
        sorted((s.bit_count(), table[s]) for s in range(1 << m) if (s >> i) & 1)
    )


def _tables_isomorphic(m: int, t1: Sequence[int], t2: Sequence[int]) -> bool:
    """Exhaustive permutation search with fingerprint pruning and incremental checks."""
    if m == 0:
        return True
    if _rank_profile(m, t1) != _rank_profile(m, t2):
        return False
    fp1 = [_element_fingerprint(m, t1, i) for i in range(m)]
    fp2 = [_element_fingerprint(m, t2, j) for j in range(m)]
    candidates = [[j for j in range(m) if fp2[j] == fp1[i]] for i in range(m)]
    if any(not c for c in candidates):
        return False

    # image[s] holds the image mask of s and is valid for s inside the
    # assigned prefix; stale entries from abandoned branches are rewritten
    # before any deeper level reads them.
    image = [0] * (1 << m)

    def extend(i: int, used: int) -> bool:
        if i == m:
            return True
        bit_i = 1 << i
        for j in candidates[i]:
            bit_j = 1 << j
            if used & bit_j:
                continue
            ok = True
            for sub in range(1 << i):  # all subsets of {0..i-1}
                new = sub | bit_i
                img = image[sub] | bit_j
                if t1[new] != t2[img]:
                    ok = False
                    break
                image[new] = img
            if ok and extend(i + 1, used | bit_j):
                return True
        return False

    return extend(0, 0)


def is_isomorphic(M1: Matroid, M2: Matroid) -> bool:
    """Whether some ground-set permutation maps one rank table onto the other.

    Exhaustive over permutations (with pruning); capped at m <= 8.
    """
    if M1.m != M2.m:
        return False
    if M1.m > 8:
        raise GroundTooLarge(f"isomorphism testing capped at m <= 8, got {M1.m}")
    return _tables_isomorphic(M1.m, M1.rank, M2.rank)


@dataclass(frozen=True)
class MinorWitness:
    """Sets realizing a minor: contract contract_set, then restrict to restrict_set."""

    restrict_set: int
    contract_set: int


def has_minor(M: Matroid, N: Matroid):
    """Search for N as a minor of M; returns a MinorWitness or None.

    Any minor is a single contraction followed by a single restriction, so the
    scan over disjoint (contract, restrict) pairs is exhaustive.
    """
    m, n = M.m, N.m
    if n > m:
        return None
    if n > 8:
        raise GroundTooLarge(f"minor isomorphism capped at target m <= 8, got {n}")
    rank = M.rank
    n_profile = _rank_profile(n, N.rank)
    n_full = N.full_rank
    for c_mask in iter_subsets(m):
        if m - c_mask.bit_count() < n:
            continue
        rc = rank[c_mask]
        rest = complement(c_mask, m)
        rest_pos = _positions(rest)
        for combo in combinations(rest_pos, n):
            s_mask = 0
            for p in combo:
                s_mask |= 1 << p
            # minor rank table on combo, relabelled ascending
            table = []
            for t in range(1 << n):
                expanded = 0
                for j in range(n):
                    if (t >> j) & 1:
                        expanded |= 1 << combo[j]
                table.append(rank[expanded | c_mask] - rc)
            if table[-1] != n_full:
                continue
            if _rank_profile(n, table) != n_profile:
                continue
            if _tables_isomorphic(n, table, N.rank):
                return MinorWitness(restrict_set=s_mask, contract_set=c_mask)
    return None


@dataclass(frozen=True)
class PolymatroidCheck:
    """Outcome of a polymatroid (β-rank) validation; falsy when violated."""

    ok: bool
    axiom: str | None = None
    witness: tuple | None = None
    slack: float = 0.0

    def __bool__(self) -> bool:
        return self.ok


def is_polymatroid(f, tol: float = 0.0) -> PolymatroidCheck:
    """Check normalization, monotonicity and submodularity up to additive tol.

    Monotonicity and submodularity are scanned exhaustively over all subset
    pairs for m <= 10; above that the equivalent local characterizations
    (covers / quadruples) are used to keep the scan polynomial in the table.
    """
    if isinstance(f, SetFunction):
        m, values = f.m, f.values
    else:
        values = tuple(f)
        m = (len(values) - 1).bit_length()
        if len(values) != 1 << m:
            raise ValueError(f"table length {len(values)} is not a power of two")
    if abs(values[0]) > tol:
        return PolymatroidCheck(False, "R1", (0,), float(abs(values[0])))
    size = 1 << m
    if m <= 10:
        for t in range(size):
            vt = values[t]
            for s in submasks(t):
                if values[s] > vt + tol:
                    return PolymatroidCheck(False, "R2", (s, t), float(values[s] - vt))
        for a in range(size):
            va = values[a]
            for b in range(size):
                gap = values[a | b] + values[a & b] - va - values[b]
                if gap > tol:
                    return PolymatroidCheck(False, "R3", (a, b), float(gap))
    else:
        bits = [1 << i for i in range(m)]
        for s in range(size):
            vs = values[s]
            for b in bits:
                if not s & b and vs > values[s | b] + tol:
                    return PolymatroidCheck(
                        False, "R2", (s, s | b), float(vs - values[s | b])
                    )
        for s in range(size):
            vs = values[s]
            out = [b for b in bits if not s & b]
            for b1, b2 in combinations(out, 2):
                gap = values[s | b1 | b2] + vs - values[s | b1] - values[s | b2]
                if gap > tol:
                    return PolymatroidCheck(False, "R3", (s | b1, s | b2), float(gap))
    return PolymatroidCheck(True)


def rate_region_inequalities(f) -> list:
    """The 2^m - 1 inequalities sum_{i in S} R_i <= f(S), S nonempty.

    Returned as (subset_mask, bound) pairs in ascending mask order; together
    they cut out the polyhedron of achievable rate tuples.
    """
    if not isinstance(f, SetFunction):
        raise TypeError("rate_region_inequalities expects a SetFunction")
    return [(s, f.values[s]) for s in range(1, 1 << f.m)]
