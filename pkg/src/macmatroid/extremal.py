"""Integer-valued UMIF detection, channel synthesis from binary matroids,
star-assignment feasibility, kernel recovery, and the two-user bridge with
its m-user recursions.

An m-user binary channel whose uniform mutual information function is
integer valued realizes a binary matroid; conversely every binary matroid is
realized by the deterministic channel of one of its representations, and the
posteriors of any such extremal channel are uniform on the cosets of the
representation kernel.  The functions here implement both directions and the
checks that certify them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .channel import (
    Channel,
    full_input_mi,
    linear_deterministic,
    transformed_mi,
    umif,
)
from .gf2 import F2Matrix, F2Subspace, f2_rank, find_representation, kernel
from .matroid import Matroid, SetFunction, families, matroid_from_rank
from .subsets import complement, full_mask, iter_subsets, render


class NotBinary(ValueError):
    """The matroid has no F2 representation."""


class InfeasibleVector(ValueError):
    """Triple outside the polymatroid-feasible set of two-user profiles."""


class Inconsistent(Exception):
    """The recursion derived conflicting values; input not channel-realizable."""


class NotExtremal(Exception):
    """A channel violates the structure forced on integer-UMIF channels."""

    def __init__(self, output, reason: str):
        self.output = output
        self.reason = reason
        where = "" if output is None else f" at output {output}"
        super().__init__(f"not extremal{where}: {reason}")


# Feasible two-user profiles.  UMIF_PROFILES holds the nonempty-subset UMIF
# triples (I(X1;Y X2), I(X2;Y X1), I(X1 X2;Y)); FORM_PROFILES holds the
# matching linear-form triples (I(X1;Y), I(X2;Y), I(X1+X2;Y)).
UMIF_PROFILES_2 = ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1), (1, 1, 2))
FORM_PROFILES_2 = ((0, 0, 0), (0, 1, 0), (1, 0, 0), (0, 0, 1), (1, 1, 1))

_UMIF_TO_FORMS = dict(zip(UMIF_PROFILES_2, FORM_PROFILES_2))
_FORMS_TO_UMIF = dict(zip(FORM_PROFILES_2, UMIF_PROFILES_2))


def bridge_umif_to_forms(triple) -> tuple:
    """Map a feasible two-user UMIF triple to its linear-form triple."""
    key = tuple(triple)
    try:
        return _UMIF_TO_FORMS[key]
    except KeyError:
        raise InfeasibleVector(f"{key} is not a feasible UMIF triple") from None


def bridge_forms_to_umif(triple) -> tuple:
    """Inverse of :func:`bridge_umif_to_forms`."""
    key = tuple(triple)
    try:
        return _FORMS_TO_UMIF[key]
    except KeyError:
        raise InfeasibleVector(f"{key} is not a feasible linear-form triple") from None


@dataclass(frozen=True)
class UmifRounding:
    """Result of rounding a UMIF to integers against a tolerance."""

    umif: SetFunction
    rounded: tuple
    residuals: tuple
    max_residual: float
    worst_subset: int
    matroid: Matroid | None


def integer_umif_matroid(W: Channel, tol: float = 1e-6) -> UmifRounding:
    """Round the UMIF of W to integers; attach the matroid when it is one.

    ``matroid`` is None when some value sits further than ``tol`` from an
    integer.  If every value rounds cleanly but the rounded table violates a
    rank axiom, AxiomViolation propagates (the tolerance was too loose).
    """
    f = umif(W)
    rounded = []
    residuals = []
    for v in f.values:
        r = int(v + 0.5) if v >= 0 else 0
        rounded.append(r)
        residuals.append(abs(v - r))
    max_res = max(residuals)
    worst = residuals.index(max_res)
    matroid = None
    if max_res < tol:
        matroid = matroid_from_rank(W.m, rounded)
    return UmifRounding(
        umif=f,
        rounded=tuple(rounded),
        residuals=tuple(residuals),
        max_residual=max_res,
        worst_subset=worst,
        matroid=matroid,
    )


def bumac_channel(M: Matroid) -> Channel:
    """Deterministic channel realizing a binary matroid as its UMIF."""
    A = find_representation(M)
    if A is None:
        raise NotBinary(f"matroid of rank {M.full_rank} on {M.m} elements is not binary")
    return linear_deterministic(A)


@dataclass(frozen=True)
class StarInfeasible:
    """No consistent uniform-posterior assignment exists; falsy sentinel.

    ``witness`` is a nonzero independent set forced into the circuit span
    (None only in the defensive dimension-mismatch branch).
    """

    witness: int | None
    reason: str

    def __bool__(self) -> bool:
        return False


def star_feasibility(M: Matroid):
    """Span the circuits over F2 and test the star-assignment constraints.

    Returns the span as an F2Subspace when its dimension is m - rank(E) and
    it avoids every nonempty independent set; otherwise a StarInfeasible
    carrying a violating vector.  Pairs of circuits whose symmetric
    difference is independent are preferred as witnesses.
    """
    fam = families(M)
    circuits = sorted(fam.circuits)
    span = F2Subspace(M.m, circuits)
    for i, c1 in enumerate(circuits):
        for c2 in circuits[i + 1 :]:
            d = c1 ^ c2
            if d and M.is_independent(d):
                return StarInfeasible(d, "independent set in the circuit span")
    for v in span.members():
        if v and M.is_independent(v):
            return StarInfeasible(v, "independent set in the circuit span")
    expected = M.m - M.full_rank
    if span.dim != expected:
        return StarInfeasible(None, f"circuit span has dimension {span.dim}, expected {expected}")
    return span


@dataclass(frozen=True)
class RecoveredKernel:
    """Kernel recovered from per-output posteriors of an extremal channel."""

    subspace: F2Subspace
    star: Fraction
    rank: int
    cosets: tuple  # (output y, posterior-support representative x0) per output
    max_deviation: float


def recover_kernel(W: Channel, tol: float = 1e-6) -> RecoveredKernel:
    """Read the representation kernel off the posteriors of W.

    For every output y in support, the posterior p0(x) = W(y|x)/sum_z W(y|z)
    must be uniform with value 2^(rank - m) on a set of 2^(m - rank) inputs,
    and all supports must be translates of one common subspace.  Raises
    NotExtremal naming the first failing output otherwise.
    """
    if W.q != 2:
        raise ValueError("kernel recovery is defined for q = 2 channels")
    rounding = integer_umif_matroid(W, tol)
    if rounding.matroid is None:
        raise NotExtremal(
            None,
            f"UMIF residual {rounding.max_residual:.6g} at subset "
            f"{render(rounding.worst_subset, W.m)} exceeds tol {tol:.6g}",
        )
    m = W.m
    rank = rounding.matroid.full_rank
    star = Fraction(1, 1 << (m - rank))
    support_size = 1 << (m - rank)
    common: set | None = None
    cosets = []
    max_dev = 0.0
    for y in range(W.output_size):
        column = [W.rows[x][y] for x in range(1 << m)]
        total = sum(column)
        if not total:
            continue
        posterior = [p / total for p in column]
        support = [x for x in range(1 << m) if posterior[x] > tol]
        if len(support) != support_size:
            raise NotExtremal(
                y, f"posterior support has {len(support)} inputs, expected {support_size}"
            )
        for x in support:
            dev = abs(posterior[x] - star)
            if dev > tol:
                raise NotExtremal(
                    y,
                    f"posterior {posterior[x]} at input {render(x, m)} deviates "
                    f"from {star} by {float(dev):.6g}",
                )
            if float(dev) > max_dev:
                max_dev = float(dev)
        x0 = min(support)
        translated = {x ^ x0 for x in support}
        if common is None:
            for a in translated:
                for b in translated:
                    if a ^ b not in translated:
                        raise NotExtremal(y, "posterior support is not a coset")
            common = translated
        elif translated != common:
            raise NotExtremal(y, "posterior supports are cosets of different subspaces")
        cosets.append((y, x0))
    if common is None:
        raise NotExtremal(None, "channel has empty output support")
    subspace = F2Subspace(m, sorted(common))
    return RecoveredKernel(
        subspace=subspace,
        star=star,
        rank=rank,
        cosets=tuple(cosets),
        max_deviation=max_dev,
    )


@dataclass(frozen=True)
class EquivalenceReport:
    """Residuals of I(A·X;Y) and I(X;Y) against rank(A)."""

    rank: int
    mi_transformed: float
    mi_full: float
    residual_transformed: float
    residual_full: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual_transformed < self.tol and self.residual_full < self.tol


def verify_equivalence(W: Channel, A: F2Matrix, tol: float = 1e-6) -> EquivalenceReport:
    """Check I(A·X;Y) = rank(A) = I(X;Y) under uniform inputs."""
    rank = f2_rank(A)
    mi_t = transformed_mi(W, A)
    mi_f = full_input_mi(W)
    return EquivalenceReport(
        rank=rank,
        mi_transformed=mi_t,
        mi_full=mi_f,
        residual_transformed=abs(mi_t - rank),
        residual_full=abs(mi_f - rank),
        tol=tol,
    )


def _as_int_table(f, m: int) -> tuple:
    values = tuple(f.values) if isinstance(f, SetFunction) else tuple(f)
    if len(values) != 1 << m:
        raise ValueError(f"table length {len(values)} vs m={m}")
    out = []
    for v in values:
        if isinstance(v, float):
            if not v.is_integer():
                raise ValueError(f"table entry {v} is not an integer")
            v = int(v)
        out.append(int(v))
    return tuple(out)


def linear_forms_from_umif(f, m: int) -> SetFunction:
    """Derive every I(xor_{i in S} X_i; Y) bit from an integer UMIF table.

    Follows the two-user bridge recursion: a linear form over T given side
    information X[S] is split at its highest element into the pair
    (xor over T-t, X_t), whose conditioned triple is assembled by the chain
    rule and mapped through the bridge.  Raises Inconsistent when a derived
    triple is infeasible or disagrees with an already-known component, which
    happens exactly when the table is not realizable by a binary channel.
    """
    table = _as_int_table(f, m)
    full = full_mask(m)
    if table[0] != 0:
        raise Inconsistent("UMIF table must vanish on the empty set")

    def block(a_mask: int, b_mask: int) -> int:
        # I(X[A]; Y X[B]) for disjoint A, B, by the chain rule on the table
        return table[complement(b_mask, m)] - table[complement(a_mask | b_mask, m)]

    memo: dict = {}

    def form_given(t_mask: int, s_mask: int) -> int:
        # I(xor_{i in T} X_i ; Y X[S]) with T nonempty, disjoint from S
        key = (t_mask, s_mask)
        known = memo.get(key)
        if known is not None:
            return known
        if t_mask.bit_count() == 1:
            val = block(t_mask, s_mask)
            if val not in (0, 1):
                raise Inconsistent(
                    f"single-user value {val} outside {{0,1}} at "
                    f"T={render(t_mask, m)}, S={render(s_mask, m)}"
                )
        else:
            t_hi = 1 << (t_mask.bit_length() - 1)
            rest = t_mask ^ t_hi
            lifted = form_given(rest, s_mask | t_hi)
            base = form_given(rest, s_mask)
            single = block(t_hi, s_mask)
            triple = (lifted, single + lifted - base, single + lifted)
            try:
                forms = bridge_umif_to_forms(triple)
            except InfeasibleVector as exc:
                raise Inconsistent(str(exc)) from None
            if forms[0] != base or forms[1] != single:
                raise Inconsistent(
                    f"bridge output {forms} contradicts known forms "
                    f"({base}, {single}) at T={render(t_mask, m)}, S={render(s_mask, m)}"
                )
            val = forms[2]
        memo[key] = val
        return val

    values = [0]
    for s in range(1, 1 << m):
        values.append(form_given(s, 0))
    return SetFunction(m, tuple(values))


def umif_from_linear_forms(g, m: int) -> SetFunction:
    """Reconstruct the integer UMIF table from the linear-form bits.

    Conditioned forms I(xor_T X; Y X[K]) are built by induction on |K| via
    the inverse bridge (every choice of the transferred element must agree),
    then each UMIF value is assembled from single-user conditioned forms by
    the chain rule.
    """
    bits = _as_int_table(g, m)
    if bits[0] != 0:
        raise Inconsistent("the empty linear form carries no information")
    for s, b in enumerate(bits):
        if b not in (0, 1):
            raise Inconsistent(f"form value {b} at {render(s, m)} outside {{0,1}}")

    # cond[(t, k)] = I(xor_T X; Y X[K]), T nonempty and disjoint from K
    cond: dict = {}
    for t in range(1, 1 << m):
        cond[(t, 0)] = bits[t]
    for k in sorted(range(1, 1 << m), key=int.bit_count):
        comp = complement(k, m)
        js = [1 << i for i in range(m) if (k >> i) & 1]
        for t in range(1, 1 << m):
            if t & k:
                continue
            val = None
            for bit_j in js:
                k_prev = k ^ bit_j
                triple = (
                    cond[(t, k_prev)],
                    cond[(bit_j, k_prev)],
                    cond[(t | bit_j, k_prev)],
                )
                try:
                    derived = bridge_forms_to_umif(triple)[0]
                except InfeasibleVector as exc:
                    raise Inconsistent(str(exc)) from None
                if val is None:
                    val = derived
                elif val != derived:
                    raise Inconsistent(
                        f"conflicting values {val} vs {derived} for "
                        f"T={render(t, m)} given {render(k, m)}"
                    )
            cond[(t, k)] = val
    values = []
    for s in iter_subsets(m):
        acc = 0
        k = complement(s, m)
        for i in range(m):
            bit = 1 << i
            if s & bit:
                acc += cond[(bit, k)]
                k |= bit
        values.append(acc)
    return SetFunction(m, tuple(values))


@dataclass(frozen=True)
class ExtremalCertificate:
    """Full certificate tying a channel to its matroid, matrix and kernel."""

    matroid: Matroid
    matrix: F2Matrix
    kernel_basis: tuple
    residuals: tuple
    residual_max: float
    star: Fraction
    equivalence: EquivalenceReport


def certify_extremal(W: Channel, tol: float = 1e-6) -> ExtremalCertificate:
    """Run the full extremal pipeline and cross-check every piece.

    Detects the integer UMIF, synthesizes the representation, recovers the
    kernel from posteriors, and verifies that the kernel matches kernel(A)
    and that the transformed/full mutual informations equal rank(A).
    """
    rounding = integer_umif_matroid(W, tol)
    if rounding.matroid is None:
        raise NotExtremal(
            None,
            f"UMIF residual {rounding.max_residual:.6g} at subset "
            f"{render(rounding.worst_subset, W.m)} exceeds tol {tol:.6g}",
        )
    M = rounding.matroid
    A = find_representation(M)
    if A is None:
        raise NotExtremal(None, "integer UMIF matroid is not binary")
    recovered = recover_kernel(W, tol)
    if recovered.subspace != kernel(A):
        raise NotExtremal(None, "recovered kernel differs from the representation kernel")
    report = verify_equivalence(W, A, tol)
    if not report.passed:
        raise NotExtremal(
            None,
            f"information residuals {report.residual_transformed:.6g}/"
            f"{report.residual_full:.6g} exceed tol {tol:.6g}",
        )
    return ExtremalCertificate(
        matroid=M,
        matrix=A,
        kernel_basis=recovered.subspace.basis,
        residuals=rounding.residuals,
        residual_max=rounding.max_residual,
        star=recovered.star,
        equivalence=report,
    )
