"""Actions on probability distributions: give, raise, and their sequences.

``give(X)`` conditions on X.  ``raise(x)`` replaces P by the equal mixture of
P(.|X) and P(.|notX), setting P(X) to 1/2.  Raising a subject mixes the
conditionals on all of its signed conjunction cells with equal weight.
Null branches are resolved through the distribution's extension kernel.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ActionError, NotTildeError, NullConditioningError, QuestionsError
from .question_groups import Answer, AskableQuestion, PureQuestion, Subject
from .tilde import UNCONSTRAINED, tilde_closed_form, tilde_conditional
from .worlds import Proposition, WorldDistribution, WorldSet, condition, entropy, prob


@dataclass(frozen=True)
class Give:
    prop: Proposition

    def apply(self, dist: WorldDistribution) -> WorldDistribution:
        return give(dist, self.prop)


@dataclass(frozen=True)
class RaiseQuestion:
    question: PureQuestion

    def apply(self, dist: WorldDistribution) -> WorldDistribution:
        return raise_question(dist, self.question)


@dataclass(frozen=True)
class RaiseSubject:
    subject: Subject

    def apply(self, dist: WorldDistribution) -> WorldDistribution:
        return raise_subject(dist, self.subject)


Action = Union[Give, RaiseQuestion, RaiseSubject]


def as_action(step) -> Action:
    """Accept a bare Proposition, PureQuestion or Subject as shorthand."""
    if isinstance(step, (Give, RaiseQuestion, RaiseSubject)):
        return step
    if isinstance(step, Proposition):
        return Give(step)
    if isinstance(step, PureQuestion):
        return RaiseQuestion(step)
    if isinstance(step, Subject):
        return RaiseSubject(step)
    raise TypeError(f"cannot interpret {step!r} as an action")


@dataclass(frozen=True)
class ActionSequence:
    """Actions applied left to right, as written right of the conditional bar."""

    steps: tuple[Action, ...]

    @classmethod
    def of(cls, *steps) -> "ActionSequence":
        return cls(tuple(as_action(s) for s in steps))

    def __len__(self) -> int:
        return len(self.steps)

    def apply(self, dist: WorldDistribution) -> WorldDistribution:
        return apply_sequence(dist, self)


def give(dist: WorldDistribution, prop: Proposition) -> WorldDistribution:
    """P(W) -> P(W|X)."""
    return condition(dist, prop)


def _mix(dists: Sequence[WorldDistribution], template: WorldDistribution) -> WorldDistribution:
    probs = np.mean([d.probs for d in dists], axis=0)
    return template.with_probs(probs)


def raise_question(dist: WorldDistribution, q: PureQuestion) -> WorldDistribution:
    """P(W) -> (P(W|X) + P(W|notX))/2.

    Raising the identity question is the identity action.
    """
    if q.size != dist.size:
        raise QuestionsError("question and distribution live on different world sets")
    if q.is_identity():
        return dist
    x = q.canon
    try:
        branches = [condition(dist, x), condition(dist, ~x)]
    except NullConditioningError as exc:
        raise NullConditioningError(f"raise undefined: {exc}") from exc
    return _mix(branches, dist)


def subject_cells(worlds: WorldSet, s: Subject) -> list[Proposition]:
    """The 2^m signed conjunctions of the generators in ``s``."""
    worlds.require_generators()
    gens = [worlds.generator(i) for i in s.members()]
    out = []
    for signs in itertools.product((True, False), repeat=len(gens)):
        cell = worlds.true()
        for g, positive in zip(gens, signs):
            cell = cell & (g if positive else ~g)
        out.append(cell)
    return out


def raise_subject(dist: WorldDistribution, s: Subject) -> WorldDistribution:
    """Uniform mixture of the conditionals on every cell of the subject."""
    if s.is_identity():
        return dist
    worlds = dist.world_set()
    if worlds.generator_count is None or worlds.generator_count != s.n:
        raise QuestionsError("subject and distribution disagree on the generator count")
    try:
        branches = [condition(dist, c) for c in subject_cells(worlds, s)]
    except NullConditioningError as exc:
        raise NullConditioningError(f"raise undefined: {exc}") from exc
    return _mix(branches, dist)


def apply_sequence(dist: WorldDistribution, seq: ActionSequence | Iterable) -> WorldDistribution:
    """Left fold of the actions; failures report the 0-based step index."""
    steps = seq.steps if isinstance(seq, ActionSequence) else tuple(as_action(s) for s in seq)
    current = dist
    for i, step in enumerate(steps):
        try:
            current = step.apply(current)
        except QuestionsError as exc:
            raise ActionError(f"step {i} ({type(step).__name__}) failed: {exc}") from exc
    return current


def info_content(dist: WorldDistribution) -> float:
    """log2 |worlds| - H(P): information relative to the uniform distribution."""
    return max(0.0, math.log2(dist.size) - entropy(dist))


@dataclass(frozen=True)
class Outcome:
    answer: Answer
    weight: float
    dist: WorldDistribution | None


def ask(dist: WorldDistribution, q: AskableQuestion) -> tuple[Outcome, Outcome]:
    """Branch on the answer; an impossible answer carries weight 0 and no distribution."""
    out = []
    for ans, prop in ((Answer.YES, q.asked), (Answer.NO, ~q.asked)):
        w = prob(dist, prop)
        out.append(Outcome(ans, w, give(dist, prop) if w > 0.0 else None))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# the tilde action rule
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TildeActionReport:
    pa: float
    pb: float
    pab: float
    status: str  # "raised", "not guaranteed" or "interior"
    pb_after: float | None
    marginal_after_a: tuple[float, float, float, float] | None
    marginal_after_ab: tuple[float, float, float, float] | None
    marginals_match: bool | None
    joint_difference: float | None

    @property
    def raises_b(self) -> bool:
        return self.pb_after is not None and abs(self.pb_after - 0.5) <= 1e-9


def _cells_of(d: WorldDistribution) -> tuple[float, float, float, float]:
    p = d.probs
    return (float(p[3]), float(p[1]), float(p[2]), float(p[0]))


def tilde_action_check(dist: WorldDistribution, a: PureQuestion, b: PureQuestion,
                       tol: float = 1e-9) -> TildeActionReport:
    """Raise a on the (A, B) marginal of a tilde-related pair and inspect B.

    When P(A) is 0 or 1 the null side of A has no conditional of its own; the
    tilde limit rule P(B|null side) = P(notB) supplies it.  If B is settled
    too, that rule is silent and the report says "not guaranteed".
    """
    A, B = a.canon, b.canon
    pa, pb = prob(dist, A), prob(dist, B)
    pab = prob(dist, A & B)
    x = tilde_closed_form(pa, pb).x
    if abs(pab - x) > tol:
        raise NotTildeError(f"P(AB) = {pab!r} but the tilde value is {x!r}")

    cells = [1.0 - pa - pb + pab, pa - pab, pb - pab, pab]
    marginal = WorldDistribution(np.clip(cells, 0.0, None), generator_count=2)
    worlds = WorldSet.from_generators(2)
    a2 = worlds.generator(0)
    b2 = worlds.generator(1)

    null_side = None
    if pa >= 1.0 - 1e-12:
        null_side = ~a2
    elif pa <= 1e-12:
        null_side = a2
    if null_side is not None:
        rule = tilde_conditional(0.0, pb)
        if rule is UNCONSTRAINED:
            return TildeActionReport(pa, pb, pab, "not guaranteed", None, None, None, None, None)
        cond = np.zeros(4)
        # P(B | null side) = P(notB), spread over the null side's two cells
        for w in range(4):
            if null_side.truth[w]:
                cond[w] = rule if b2.truth[w] else 1.0 - rule
        marginal = marginal.with_extension(null_side, WorldDistribution(cond, generator_count=2))
        # a null single-world cell has only one possible conditional
        for w in range(4):
            if marginal.probs[w] == 0.0:
                cell = worlds.from_worlds([w])
                marginal = marginal.with_extension(cell, WorldDistribution.point(4, w, 2))

    after_a = raise_question(marginal, PureQuestion(a2))
    after_ab = raise_subject(marginal, Subject.of([0, 1], 2))
    pb_after = prob(after_a, b2)
    pa_after = prob(after_a, a2)
    marginals_match = (
        abs(pa_after - prob(after_ab, a2)) <= tol and abs(pb_after - prob(after_ab, b2)) <= tol
    )
    status = "raised" if null_side is not None else "interior"
    return TildeActionReport(
        pa, pb, pab, status, pb_after, _cells_of(after_a), _cells_of(after_ab),
        marginals_match, float(np.max(np.abs(after_a.probs - after_ab.probs))),
    )
