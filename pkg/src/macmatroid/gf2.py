"""F2 linear algebra on word-packed rows, vector matroids, binary representability.

Rows and vectors are int bitmasks: bit (j-1) of a row is the entry in column
j, matching the subset convention (column j of a matrix is ground element j).
Elimination is word-wise XOR, which keeps the representability scans cheap.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .matroid import Matroid, families
from .subsets import MAX_GROUND, full_mask


class LabelMismatch(ValueError):
    """Matrix columns do not realize the given matroid under identity labels."""


class F2Matrix:
    """Matrix over F2; ``rows`` is the tuple of row bitmasks, ``cols`` the width."""

    __slots__ = ("rows", "cols")

    def __init__(self, rows: Iterable[int], cols: int):
        rows = tuple(int(r) for r in rows)
        if cols < 0:
            raise ValueError("negative column count")
        for r in rows:
            if r < 0 or r >> cols:
                raise ValueError(f"row {r:b} does not fit in {cols} columns")
        self.rows = rows
        self.cols = cols

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_text(cls, text: str) -> "F2Matrix":
        """Parse '101;011' (rows ';'-separated, column 1 leftmost)."""
        parts = text.split(";")
        if parts == [""]:
            raise ValueError("empty matrix text")
        width = len(parts[0])
        rows = []
        for part in parts:
            if len(part) != width:
                raise ValueError(f"ragged matrix text: row {part!r} vs width {width}")
            mask = 0
            for j, ch in enumerate(part):
                if ch == "1":
                    mask |= 1 << j
                elif ch != "0":
                    raise ValueError(f"invalid matrix character {ch!r}")
            rows.append(mask)
        return cls(rows, width)

    def to_text(self) -> str:
        return ";".join(
            "".join("1" if (r >> j) & 1 else "0" for j in range(self.cols))
            for r in self.rows
        )

    def column(self, j: int) -> int:
        """Column j (0-based) as a bitmask over row indices."""
        mask = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                mask |= 1 << i
        return mask

    def apply(self, x: int) -> int:
        """Matrix-vector product A·x over F2; x and result are bitmasks."""
        y = 0
        for i, r in enumerate(self.rows):
            if (r & x).bit_count() & 1:
                y |= 1 << i
        return y

    def __eq__(self, other):
        return (
            isinstance(other, F2Matrix)
            and self.cols == other.cols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.cols, self.rows))

    def __repr__(self):
        return f"F2Matrix({self.to_text()!r}, cols={self.cols})"


def _eliminate(rows: Sequence[int], cols: int):
    """Row reduce; returns (reduced nonzero rows, pivot column list)."""
    work = list(rows)
    pivots = []
    row = 0
    for c in range(cols):
        piv = None
        for i in range(row, len(work)):
            if (work[i] >> c) & 1:
                piv = i
                break
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        for i in range(len(work)):
            if i != row and (work[i] >> c) & 1:
                work[i] ^= work[row]
        pivots.append(c)
        row += 1
    return work[:row], pivots


def f2_rank(A: F2Matrix, cols_mask: int | None = None) -> int:
    """Rank over F2 of the column submatrix selected by ``cols_mask``."""
    if cols_mask is None:
        cols_mask = full_mask(A.cols)
    masked = [r & cols_mask for r in A.rows]
    rank = 0
    for c in range(A.cols):
        if not (cols_mask >> c) & 1:
            continue
        piv = None
        for i in range(rank, len(masked)):
            if (masked[i] >> c) & 1:
                piv = i
                break
        if piv is None:
            continue
        masked[rank], masked[piv] = masked[piv], masked[rank]
        pr = masked[rank]
        for i in range(len(masked)):
            if i != rank and (masked[i] >> c) & 1:
                masked[i] ^= pr
        rank += 1
        if rank == len(masked):
            break
    return rank


class F2Subspace:
    """Subspace of F2^n with a canonical reduced-echelon basis."""

    __slots__ = ("n", "basis")

    def __init__(self, n: int, vectors: Iterable[int] = ()):
        reduced, _ = _eliminate(list(vectors), n)
        self.n = n
        self.basis = tuple(reduced)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, vec: int) -> bool:
        v = vec
        for b in self.basis:
            low = b & -b
            if v & low:
                v ^= b
        return v == 0

    def members(self) -> list:
        """All 2^dim vectors, ascending."""
        vecs = [0]
        for b in self.basis:
            vecs += [v ^ b for v in vecs]
        return sorted(vecs)

    def __eq__(self, other):
        return (
            isinstance(other, F2Subspace)
            and self.n == other.n
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.n, self.basis))

    def __repr__(self):
        return f"F2Subspace(n={self.n}, dim={self.dim})"


def kernel(A: F2Matrix) -> F2Subspace:
    """Null space {x : A·x = 0}; dimension is cols - rank."""
    reduced, pivots = _eliminate(A.rows, A.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(A.cols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for k, p in enumerate(pivots):
            if (reduced[k] >> free) & 1:
                vec |= 1 << p
        basis.append(vec)
    return F2Subspace(A.cols, basis)


def standard_form(A: F2Matrix):
    """Row reduce and permute columns into [I_R | A'].

    Returns ``(matrix, column_order)`` where ``column_order[k]`` is the
    0-based original column now sitting at position k.
    """
    if A.cols == 0 and A.nrows == 0:
        return F2Matrix((), 0), ()
    reduced, pivots = _eliminate(A.rows, A.cols)
    order = list(pivots) + [c for c in range(A.cols) if c not in set(pivots)]
    rows = []
    for r in reduced:
        out = 0
        for new_pos, old_col in enumerate(order):
            if (r >> old_col) & 1:
                out |= 1 << new_pos
        rows.append(out)
    return F2Matrix(rows, A.cols), tuple(order)


def vector_matroid(A: F2Matrix) -> Matroid:
    """Column matroid M[A]: rank(S) = rank of the columns selected by S."""
    if A.cols > MAX_GROUND:
        raise ValueError(f"vector matroid capped at {MAX_GROUND} columns")
    table = tuple(f2_rank(A, s) for s in range(1 << A.cols))
    return Matroid._from_valid(A.cols, table)


def is_binary_tutte(M: Matroid) -> bool:
    """Binary iff no minor is the rank-2 uniform matroid on four elements."""
    from .matroid import GroundTooLarge, has_minor, uniform_matroid

    if M.m > 10:
        raise GroundTooLarge(f"excluded-minor scan capped at m <= 10, got {M.m}")
    if M.m < 4:
        return True
    return has_minor(M, uniform_matroid(2, 4)) is None


def _peels_into_circuits(mask: int, circuits: Sequence[int], memo: dict) -> bool:
    """Whether mask is a disjoint union of circuits (backtracking over peels)."""
    if mask == 0:
        return True
    known = memo.get(mask)
    if known is not None:
        return known
    result = False
    for c in circuits:
        if c & ~mask:
            continue
        if _peels_into_circuits(mask ^ c, circuits, memo):
            result = True
            break
    memo[mask] = result
    return result


def is_binary_whitney(M: Matroid) -> bool:
    """Binary iff every symmetric difference of two circuits is a disjoint
    union of circuits."""
    circuits = sorted(families(M).circuits)
    memo: dict = {}
    for i, c1 in enumerate(circuits):
        for c2 in circuits[i + 1 :]:
            if not _peels_into_circuits(c1 ^ c2, circuits, memo):
                return False
    return True


def _lex_first_basis(M: Matroid) -> int:
    """Greedy smallest-elements basis; lexicographically first by the exchange
    property."""
    basis = 0
    rank = M.rank
    for i in range(M.m):
        if rank[basis | (1 << i)] > rank[basis]:
            basis |= 1 << i
    return basis


def find_representation(M: Matroid):
    """Synthesize an F2 representation with columns labelled by ground element.

    Picks the lexicographically first basis B, gives basis elements unit
    columns, gives every other element the B-incidence vector of its
    fundamental circuit, then verifies the whole rank table.  Returns None
    when verification fails (the matroid is not binary).
    """
    m = M.m
    r_full = M.full_rank
    basis = _lex_first_basis(M)
    basis_pos = {}
    k = 0
    for i in range(m):
        if (basis >> i) & 1:
            basis_pos[i] = k
            k += 1
    rows = [0] * r_full
    rank = M.rank
    for e in range(m):
        bit_e = 1 << e
        if basis & bit_e:
            rows[basis_pos[e]] |= bit_e
            continue
        # fundamental circuit of e w.r.t. basis: b participates iff B - b + e
        # is again a basis
        for b, pos in basis_pos.items():
            if rank[(basis ^ (1 << b)) | bit_e] == r_full:
                rows[pos] |= bit_e
    A = F2Matrix(rows, m)
    if vector_matroid(A).rank == rank:
        return A
    return None


def circuit_space(M: Matroid, A: F2Matrix) -> bool:
    """Whether the F2 span of circuit incidence vectors equals kernel(A).

    Requires A to realize M under the identity labelling (column j is
    ground element j); raises LabelMismatch otherwise.
    """
    if A.cols != M.m or vector_matroid(A).rank != M.rank:
        raise LabelMismatch("matrix does not realize the matroid with identity labels")
    span = F2Subspace(M.m, sorted(families(M).circuits))
    return span == kernel(A)
