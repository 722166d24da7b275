"""Quantitative robustness for channels whose UMIF is only nearly integral.

Posterior concentration for a uniform input bit: when I(X;Y) is small, the
posterior of X given Y is close to uniform for most outputs.  The stated
mass bound 1 - 2·ln2·sqrt(eps) rests on a linear form of Pinsker's
inequality; the derived variant uses the quadratic form with threshold
eps^(1/4) and is the one the test suite asserts.  Both are computed and
reported side by side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .channel import (
    Channel,
    JointDistribution,
    conditional_entropy_u_given_v,
    linear_form_mi,
    mutual_information,
)
from .extremal import UmifRounding, integer_umif_matroid
from .matroid import Matroid
from .subsets import render


class NonUniformInput(ValueError):
    """The input bit is required to be exactly uniform."""


class PremiseViolated(ValueError):
    """The information-theoretic premise of a bound does not hold."""


class NotQuasiExtremal(Exception):
    """Some UMIF value or linear form sits too far from an integer."""

    def __init__(self, subset: int, residual: float, m: int, what: str = "UMIF value"):
        self.subset = subset
        self.residual = residual
        self.m = m
        super().__init__(
            f"{what} at subset {render(subset, m)} has residual {residual:.6g}"
        )


def _require_uniform_bit(joint: JointDistribution) -> None:
    if joint.nu != 2:
        raise NonUniformInput(f"expected a binary input, got {joint.nu} symbols")
    if joint.marg_u[0] != joint.marg_u[1]:
        raise NonUniformInput(
            f"input marginal {Fraction(joint.marg_u[0], joint.denom)} is not uniform"
        )


def posterior_deviation_mass(joint: JointDistribution, a) -> Fraction:
    """Mass of outputs whose posterior is at L1 distance >= a from uniform.

    The input bit must be exactly uniform; L1 norms are exact rationals.
    """
    _require_uniform_bit(joint)
    mass = 0
    for v in range(joint.nv):
        wv = joint.marg_v[v]
        if not wv:
            continue
        w0 = joint.weights.get((0, v), 0)
        # || posterior - uniform ||_1 = |2 p0 - 1| exactly
        if Fraction(abs(2 * w0 - wv), wv) >= a:
            mass += wv
    return Fraction(mass, joint.denom)


@dataclass(frozen=True)
class ConcentrationVariant:
    threshold: float
    deviating_mass: Fraction
    bound: float
    passed: bool


@dataclass(frozen=True)
class ConcentrationReport:
    """Both concentration bounds evaluated on one joint distribution."""

    epsilon: float
    mutual_info: float
    stated: ConcentrationVariant
    derived: ConcentrationVariant


def check_pinsker_concentration(joint: JointDistribution, epsilon: float) -> ConcentrationReport:
    """Evaluate the posterior-concentration bounds under I(X;Y) < epsilon.

    stated:  threshold eps^(1/2), mass bound 1 - 2·ln2·eps^(1/2)
    derived: threshold eps^(1/4), mass bound 1 - (2·ln2·eps)^(1/2)/eps^(1/4)
    """
    _require_uniform_bit(joint)
    mi = mutual_information(joint)
    if mi >= epsilon:
        raise PremiseViolated(f"I(X;Y) = {mi:.6g} is not below epsilon = {epsilon:.6g}")
    ln2 = math.log(2.0)
    variants = []
    for threshold, bound in (
        (math.sqrt(epsilon), 1.0 - 2.0 * ln2 * math.sqrt(epsilon)),
        (epsilon**0.25, 1.0 - math.sqrt(2.0 * ln2 * epsilon) / epsilon**0.25),
    ):
        mass = posterior_deviation_mass(joint, threshold)
        variants.append(
            ConcentrationVariant(
                threshold=threshold,
                deviating_mass=mass,
                bound=bound,
                passed=(1 - mass) >= bound,
            )
        )
    return ConcentrationReport(
        epsilon=epsilon, mutual_info=mi, stated=variants[0], derived=variants[1]
    )


def near_determinism_mass(joint: JointDistribution, epsilon: float) -> Fraction:
    """Mass of outputs y with P(X=0|y)·P(X=1|y) <= epsilon, given h(X|Y) < epsilon.

    No closed-form lower bound is asserted; callers check the trend toward 1
    as the conditional entropy goes to 0.
    """
    _require_uniform_bit(joint)
    h = conditional_entropy_u_given_v(joint)
    if h >= epsilon:
        raise PremiseViolated(f"h(X|Y) = {h:.6g} is not below epsilon = {epsilon:.6g}")
    eps = Fraction(epsilon) if not isinstance(epsilon, Fraction) else epsilon
    mass = 0
    for v in range(joint.nv):
        wv = joint.marg_v[v]
        if not wv:
            continue
        w0 = joint.weights.get((0, v), 0)
        w1 = wv - w0
        if Fraction(w0 * w1, wv * wv) <= eps:
            mass += wv
    return Fraction(mass, joint.denom)


@dataclass(frozen=True)
class FormClassification:
    subset: int
    value: float
    bit: int
    distance: float


@dataclass(frozen=True)
class QuasiReport:
    """Near-integer classification of a channel's UMIF and linear forms."""

    matroid: Matroid
    rounding: UmifRounding
    max_residual: float
    forms: tuple
    max_form_distance: float


def quasi_integer_classify(W: Channel, epsilon: float) -> QuasiReport:
    """Round the UMIF within epsilon and classify every linear form to {0,1}.

    Raises NotQuasiExtremal naming the first subset whose UMIF value (or
    linear form, distance 0.5) cannot be classified.
    """
    if not 0 < epsilon <= 0.5:
        raise ValueError(f"epsilon must lie in (0, 0.5], got {epsilon}")
    rounding = integer_umif_matroid(W, tol=epsilon)
    if rounding.matroid is None:
        raise NotQuasiExtremal(rounding.worst_subset, rounding.max_residual, W.m)
    forms = []
    worst = 0.0
    worst_subset = 0
    for s in range(1 << W.m):
        value = linear_form_mi(W, s) if s else 0.0
        bit = 1 if value > 0.5 else 0
        distance = abs(value - bit)
        forms.append(FormClassification(s, value, bit, distance))
        if distance > worst:
            worst = distance
            worst_subset = s
    if worst >= 0.5:
        raise NotQuasiExtremal(worst_subset, worst, W.m, what="linear form")
    return QuasiReport(
        matroid=rounding.matroid,
        rounding=rounding,
        max_residual=rounding.max_residual,
        forms=tuple(forms),
        max_form_distance=worst,
    )
