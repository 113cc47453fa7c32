"""Gaps, geometric mean probability, information values, evidence, doubt.

Bits (log base 2) for information and evidence; nats for doubt so that the
imaginary part of a negative-gap doubt is exactly pi.  Every log-valued
function takes a ``base`` argument for callers who want other units.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import UndefinedQuantityError
from .question_groups import AskableQuestion, PureQuestion
from .worlds import Proposition, WorldDistribution, condition, prob

BITS = 2.0
NATS = math.e


def _log(x: float, base: float) -> float:
    if x <= 0.0:
        return -math.inf
    return math.log(x) / math.log(base)


def gap_askable(dist: WorldDistribution, q: AskableQuestion) -> float:
    """Signed gap 2P(A) - 1."""
    return 2.0 * prob(dist, q.asked) - 1.0


def gap_pure(dist: WorldDistribution, q: PureQuestion) -> float:
    """Unsigned gap |P(A) - P(not A)|; the identity question has gap 1."""
    return abs(2.0 * prob(dist, q.canon) - 1.0)


def cells(dist: WorldDistribution, props: Sequence[Proposition]) -> np.ndarray:
    """Probabilities of the 2^m signed conjunctions of ``props``.

    Cell index bit j is 1 when proposition j is negated.
    """
    m = len(props)
    out = np.empty(2 ** m)
    for idx, signs in enumerate(itertools.product((False, True), repeat=m)):
        truth = np.ones(dist.size, dtype=bool)
        for prop, neg in zip(props, signs[::-1]):
            truth &= ~prop.truth if neg else prop.truth
        out[idx] = float(dist.probs[truth].sum())
    return out


def gmp(dist: WorldDistribution, questions: Sequence[PureQuestion]) -> float:
    """Geometric mean of the 2^m cell probabilities of the given questions."""
    if len(questions) < 1:
        raise ValueError("gmp needs at least one question")
    c = cells(dist, [q.canon for q in questions])
    if np.any(c <= 0.0):
        return 0.0
    return float(np.exp(np.mean(np.log(c))))


def info_value(dist: WorldDistribution, questions: Sequence[PureQuestion], base: float = BITS) -> float:
    """i(s) = -log gmp(s); +inf for a settled subject."""
    g = gmp(dist, questions)
    if g <= 0.0:
        return math.inf
    return -_log(g, base)


def gap_from_gmp(g: float) -> float:
    """Invert gmp = sqrt(1 - gap^2)/2 for a single question."""
    if not 0.0 <= g <= 0.5:
        raise ValueError("gmp of a single question lies in [0, 1/2]")
    return math.sqrt(max(0.0, 1.0 - 4.0 * g * g))


def evidence(dist: WorldDistribution, q: AskableQuestion, base: float = BITS) -> float:
    """Weight of evidence against A: log P(not A)/P(A)."""
    p = prob(dist, q.asked)
    if p <= 0.0:
        return math.inf
    if p >= 1.0:
        return -math.inf
    return _log((1.0 - p) / p, base)


def evidence_weight(dist: WorldDistribution, q: AskableQuestion, given: Proposition,
                    base: float = BITS) -> float:
    """e(B -> A) = log P(B|A)/P(B|not A), the evidence B supplies for A."""
    like_yes = prob(condition(dist, q.asked), given)
    like_no = prob(condition(dist, ~q.asked), given)
    if like_yes <= 0.0 or like_no <= 0.0:
        raise UndefinedQuantityError("zero conditional likelihood")
    return _log(like_yes / like_no, base)


def evidence_update(dist: WorldDistribution, q: AskableQuestion, given: Proposition,
                    base: float = BITS) -> float:
    """e(A?|B) = e(A?) - e(B -> A)."""
    return evidence(dist, q, base) - evidence_weight(dist, q, given, base)


@dataclass(frozen=True)
class DoubtValue:
    """Complex doubt -ln|gap| + i*pi*[gap < 0], imaginary part kept in {0, pi}."""

    real_part: float
    imag_part: float

    def as_complex(self) -> complex:
        return complex(self.real_part, self.imag_part)

    def __add__(self, other: "DoubtValue") -> "DoubtValue":
        imag = math.fmod(self.imag_part + other.imag_part, 2.0 * math.pi)
        if math.isclose(imag, 0.0, abs_tol=1e-12) or math.isclose(imag, 2 * math.pi, abs_tol=1e-12):
            imag = 0.0
        return DoubtValue(self.real_part + other.real_part, imag)

    def gap(self) -> float:
        """Recover the signed gap, exp(-d)."""
        return (cmath.exp(-self.as_complex())).real


def doubt_from_gap(g: float) -> DoubtValue:
    if g == 0.0:
        return DoubtValue(math.inf, 0.0)
    return DoubtValue(-math.log(abs(g)), math.pi if g < 0.0 else 0.0)


def doubt(dist: WorldDistribution, q: AskableQuestion) -> DoubtValue:
    """d(A?) = -log gap(A?) in nats, with imaginary part pi when the gap is negative."""
    return doubt_from_gap(gap_askable(dist, q))


def pure_doubt(dist: WorldDistribution, q: PureQuestion, base: float = NATS) -> float:
    """d(a) = -log gap(a) for a pure question; real, +inf at gap 0."""
    g = gap_pure(dist, q)
    if g <= 0.0:
        return math.inf
    return -_log(g, base)
