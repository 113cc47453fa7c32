"""Entangled spin pairs, non-local questions and the Bell inequality.

A correlated pair has S_d (or, for the singlet, not S_d) given along every
axis d, where S_d = "both particles give the same answer along d".  The
joint probability of answers s1 along d1 and s2 along d2 is
(1 + sign * s1 * s2 * cos(theta12)) / 4.  Measuring particle 1 gives X1,
which with S_d fixes X2, and raises every other s_d.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import actions
from .errors import QuestionsError
from .measures import gap_askable, gap_pure
from .question_groups import AskableQuestion, PureQuestion, rank, star_askable, star_pure
from .two_state import BlochState, Direction, gap_along
from .worlds import WorldDistribution, WorldSet, prob

SIGNS = (1, -1)


@dataclass(frozen=True)
class Correlated:
    """sign = -1 is the singlet; +1 the aligned state with every S_d given."""

    sign: int

    def __post_init__(self):
        if self.sign not in SIGNS:
            raise ValueError("sign must be +1 or -1")


@dataclass(frozen=True)
class Product:
    v1: BlochState
    v2: BlochState


PairState = Union[Correlated, Product]
SINGLET = Correlated(-1)
ALIGNED = Correlated(1)


def _sign(s) -> int:
    # bools first: False == 0 would otherwise slip through as an integer
    if isinstance(s, bool):
        return 1 if s else -1
    if s == "+" or (not isinstance(s, str) and s == 1):
        return 1
    if s == "-" or (not isinstance(s, str) and s == -1):
        return -1
    raise ValueError(f"answer sign must be +1 or -1, got {s!r}")


def joint_prob(state: PairState, d1: Direction, s1, d2: Direction, s2) -> float:
    """P(particle 1 gives s1 along d1 and particle 2 gives s2 along d2)."""
    s1, s2 = _sign(s1), _sign(s2)
    if isinstance(state, Correlated):
        return 0.25 * (1.0 + state.sign * s1 * s2 * d1.dot(d2))
    p1 = 0.5 * (1.0 + s1 * gap_along(state.v1, d1))
    p2 = 0.5 * (1.0 + s2 * gap_along(state.v2, d2))
    return p1 * p2


def pair_distribution(state: PairState, d1: Direction, d2: Direction) -> WorldDistribution:
    """Four-world joint of X1 = "up along d1" (bit 0) and X2 = "up along d2" (bit 1)."""
    p = np.empty(4)
    for w in range(4):
        s1 = 1 if w & 1 else -1
        s2 = 1 if w & 2 else -1
        p[w] = joint_prob(state, d1, s1, d2, s2)
    return WorldDistribution(np.clip(p, 0.0, None), generator_count=2)


def correlation(state: PairState, d1: Direction, d2: Direction) -> float:
    """c = P(same) - P(different) = gap(X1? * X2?) on the pair joint."""
    dist = pair_distribution(state, d1, d2)
    w = WorldSet.from_generators(2)
    q = star_askable(AskableQuestion(w.generator(0)), AskableQuestion(w.generator(1)))
    return gap_askable(dist, q)


def measure_first(state: PairState, d: Direction, answer) -> Product:
    """Give X1 along d; S_d then fixes particle 2 and the other s questions are raised."""
    if not isinstance(state, Correlated):
        raise QuestionsError("the pair is already in a product state")
    s = _sign(answer)
    v1 = BlochState.pure(d if s > 0 else -d)
    v2 = BlochState.pure(d if s * state.sign > 0 else -d)
    return Product(v1, v2)


def marginal_second(state: PairState, d2: Direction, s2) -> float:
    """P(particle 2 gives s2 along d2) with particle 1 left alone."""
    s2 = _sign(s2)
    if isinstance(state, Correlated):
        return 0.5
    return 0.5 * (1.0 + s2 * gap_along(state.v2, d2))


def marginal_second_after(state: PairState, d1: Direction, d2: Direction, s2) -> float:
    """Particle-2 marginal after particle 1 is measured along d1, averaged over its answer."""
    total = 0.0
    for s1 in SIGNS:
        p1 = joint_prob(state, d1, s1, d1, 1) + joint_prob(state, d1, s1, d1, -1)
        if p1 > 0.0:
            total += p1 * marginal_second(measure_first(state, d1, s1), d2, s2)
    return total


# ---------------------------------------------------------------------------
# Bell inequality
# ---------------------------------------------------------------------------

# Experimenter 1's answers on (x, y, w) for rows N1..N8; experimenter 2 is opposite
TABLE_ROWS = tuple(
    tuple(1 if c == "+" else -1 for c in row)
    for row in ("+++", "++-", "+-+", "+--", "-++", "-+-", "--+", "---")
)


@dataclass(frozen=True)
class LhvTable:
    counts: tuple[int, int, int, int, int, int, int, int]

    def __post_init__(self):
        if len(self.counts) != 8 or any(int(c) != c or c < 0 for c in self.counts):
            raise ValueError("an LHV table holds eight non-negative integers")

    def count(self, axis1: str, s1: int, axis2: str, s2: int) -> int:
        """N(axis1_1 s1, axis2_2 s2) summed over the table rows."""
        idx = {"x": 0, "y": 1, "w": 2}
        total = 0
        for n, row in zip(self.counts, TABLE_ROWS):
            if row[idx[axis1]] == s1 and -row[idx[axis2]] == s2:
                total += n
        return total


@dataclass(frozen=True)
class LhvResult:
    lhs: int
    rhs: int
    holds: bool


def lhv_inequality(table: LhvTable) -> LhvResult:
    """(N1 + N3) + (N4 + N8) >= N3 + N4."""
    n = table.counts
    lhs = (n[0] + n[2]) + (n[3] + n[7])
    rhs = n[2] + n[3]
    return LhvResult(lhs, rhs, lhs >= rhs)


@dataclass(frozen=True)
class BellProbs:
    p_xy: float
    p_xw: float
    p_wy: float
    violated: bool

    @property
    def lhs(self) -> float:
        return self.p_xw + self.p_wy


def bell_axes(w_angle: float) -> tuple[Direction, Direction, Direction]:
    return Direction.in_plane(0.0), Direction.in_plane(90.0), Direction.in_plane(w_angle)


def quantum_bell_probs(w_angle: float) -> BellProbs:
    """Singlet P(x1+, y2+), P(x1+, w2-), P(w1-, y2+) with w at ``w_angle`` degrees."""
    x, y, w = bell_axes(w_angle)
    p_xy = joint_prob(SINGLET, x, 1, y, 1)
    p_xw = joint_prob(SINGLET, x, 1, w, -1)
    p_wy = joint_prob(SINGLET, w, -1, y, 1)
    return BellProbs(p_xy, p_xw, p_wy, p_xw + p_wy < p_xy)


@dataclass(frozen=True)
class BellSample:
    name: str
    exact: float
    frequency: float
    stderr: float

    @property
    def sigmas(self) -> float:
        return abs(self.frequency - self.exact) / self.stderr if self.stderr > 0 else 0.0


def sample_bell(w_angle: float, trials: int, seed: int = 0) -> list[BellSample]:
    """Monte Carlo over singlet outcome cells for the three Bell pairs."""
    if trials < 0:
        raise ValueError("trials must be non-negative")
    rng = np.random.default_rng(seed)
    x, y, w = bell_axes(w_angle)
    pairs = (("p_xy", x, y, (1, 1)), ("p_xw", x, w, (1, -1)), ("p_wy", w, y, (-1, 1)))
    out = []
    for name, d1, d2, target in pairs:
        outcomes = [(s1, s2) for s1 in SIGNS for s2 in SIGNS]
        cells = np.array([joint_prob(SINGLET, d1, s1, d2, s2) for s1, s2 in outcomes])
        cells = np.clip(cells, 0.0, None)
        cells /= cells.sum()
        counts = rng.multinomial(trials, cells) if trials else np.zeros(4, dtype=int)
        k = outcomes.index(target)
        exact = float(cells[k])
        freq = counts[k] / trials if trials else math.nan
        se = math.sqrt(exact * (1.0 - exact) / trials) if trials else math.nan
        out.append(BellSample(name, exact, float(freq), se))
    return out


# ---------------------------------------------------------------------------
# non-local rank check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NonlocalRankReport:
    n: int
    rank_sx: int
    samples: int
    max_rank1_gap_growth: float
    subtraction_holds: bool
    rank2_rank: int
    target_before: float
    target_after: float

    @property
    def rank2_target_rises(self) -> bool:
        return self.target_after > 0.5 + 1e-12 and self.target_after > self.target_before


def rank1_questions(worlds: WorldSet) -> list[PureQuestion]:
    """Every non-identity star-combination of the generator questions."""
    n = worlds.require_generators()
    out = []
    for mask in range(1, 2 ** n):
        q = PureQuestion.identity(worlds)
        for i in range(n):
            if mask >> i & 1:
                q = star_pure(q, PureQuestion(worlds.generator(i)))
        out.append(q)
    return out


def random_product_distribution(n: int, rng: np.random.Generator) -> WorldDistribution:
    return WorldDistribution.product(rng.uniform(0.0, 1.0, n))


def max_rank1_gap_growth(dist: WorldDistribution, raised: PureQuestion,
                         questions: Sequence[PureQuestion]) -> float:
    after = actions.raise_question(dist, raised)
    return max(gap_pure(after, r) - gap_pure(dist, r) for r in questions)


def nonlocal_rank_check(n: int = 3, samples: int = 200, seed: int = 0) -> NonlocalRankReport:
    """s_x = x1 * x2 is rank 1 and only subtracts; q(X1 Y2) is rank 2 and can add.

    Generator 0 is X1 and generator 1 is X2; with N >= 3 generator 2 plays Y2,
    otherwise the rank-2 example uses X2 itself.
    """
    if n < 2:
        raise ValueError("need at least the two generators X1 and X2")
    worlds = WorldSet.from_generators(n)
    x1, x2 = worlds.generator(0), worlds.generator(1)
    s_x = star_pure(PureQuestion(x1), PureQuestion(x2))
    r1 = rank1_questions(worlds)
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for _ in range(samples):
        d = random_product_distribution(n, rng)
        worst = max(worst, max_rank1_gap_growth(d, s_x, r1))

    target = worlds.generator(2) if n >= 3 else x2
    q2 = PureQuestion(x1 & target)
    uniform = WorldDistribution.uniform(worlds.size, n)
    after = actions.raise_question(uniform, q2)
    return NonlocalRankReport(
        n=n,
        rank_sx=rank(s_x),
        samples=samples,
        max_rank1_gap_growth=float(worst),
        subtraction_holds=worst <= 1e-12,
        rank2_rank=rank(q2),
        target_before=prob(uniform, target),
        target_after=prob(after, target),
    )
