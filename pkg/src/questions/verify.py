"""Verification suites: one list of numeric checks per module.

Each check records what was measured and the tolerance it was held to, so
the CLI can print a table and a JSON document from the same data.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import actions, complex_props as cp, entanglement as ent, tilde, two_state as ts
from .measures import (
    doubt, evidence, evidence_update, gap_askable, gap_from_gmp, gap_pure, gmp, info_value,
)
from .question_groups import (
    AskableQuestion, PureQuestion, Subject, anf, group_census, rank, star_askable, star_pure,
)
from .worlds import (
    WorldDistribution, WorldSet, balance_sum, condition, info, mutual_info_pair, prob,
)

TILDE_GOLDEN = 0.12299828119582
MAX_DISCREPANCY = 0.0674


@dataclass(frozen=True)
class Check:
    id: str
    description: str
    passed: bool
    measured: float | str | None
    tolerance: float | None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class VerificationReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if all(c.passed for c in self.checks) else 1

    def table(self) -> str:
        lines = [f"suite: {self.suite}"]
        width = max((len(c.id) for c in self.checks), default=2)
        for c in self.checks:
            lines.append(f"  {c.status.upper():4}  {c.id:<{width}}  {c.description}"
                         f"  [measured {_fmt(c.measured)}, tol {_fmt(c.tolerance)}]")
        passed = sum(c.passed for c in self.checks)
        lines.append(f"{passed}/{len(self.checks)} checks passed")
        return "\n".join(lines)

    def to_json(self) -> str:
        checks = []
        for c in self.checks:
            d = asdict(c)
            d["status"] = c.status
            d["measured"] = _jsonable(c.measured)
            checks.append(d)
        return json.dumps({"suite": self.suite, "exit_code": self.exit_code, "checks": checks},
                          sort_keys=True)


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def _close(cid: str, desc: str, measured: float, expected: float, tol: float) -> Check:
    err = abs(measured - expected)
    return Check(cid, desc, bool(err <= tol), float(measured), tol)


def _bound(cid: str, desc: str, worst: float, tol: float) -> Check:
    return Check(cid, desc, bool(worst <= tol), float(worst), tol)


def _flag(cid: str, desc: str, ok: bool, measured=None) -> Check:
    return Check(cid, desc, bool(ok), measured, None)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_worlds(seed: int = 0) -> list[Check]:
    out = []
    w1 = WorldSet(2)
    half = WorldDistribution([0.5, 0.5])
    out.append(_close("worlds.info_half", "i(A) = 1 bit at P(A) = 1/2",
                      info(half, w1.from_worlds([1])), 1.0, 1e-12))
    n = np.arange(1, 101)
    w = WorldSet(100)
    even = w.proposition(lambda i: (i + 1) % 2 == 0)
    primes = {p for p in range(2, 101) if all(p % d for d in range(2, int(p ** 0.5) + 1))}
    prime = w.proposition(lambda i: int(n[i]) in primes)
    val = mutual_info_pair(WorldDistribution.uniform(100), even, prime)
    out.append(_close("worlds.even_prime", "i(even, prime) on 1..100 = 1 + 2 - log2(100)",
                      val, 3.0 - math.log2(100.0), 1e-12))
    rng = np.random.default_rng(seed)
    worst = 0.0
    w2 = WorldSet.from_generators(2)
    a, b = w2.generator(0), w2.generator(1)
    for _ in range(200):
        d = WorldDistribution.product(rng.uniform(0.05, 0.95, 2))
        worst = max(worst, abs(mutual_info_pair(d, a, b)), abs(balance_sum(d, a, b)))
    out.append(_bound("worlds.independence_zero", "i(A,B) = 0 and balance = 0 under independence",
                      worst, 1e-12))
    return out


def suite_groups(seed: int = 0) -> list[Check]:
    out = []
    c2 = group_census(2)
    c3 = group_census(3)
    out.append(_flag("groups.q2", "|Q(2)| = 8", c2.q_size == 8, c2.q_size))
    out.append(_flag("groups.q3", "|Q(3)| = 128", c3.q_size == 128, c3.q_size))
    out.append(_flag("groups.q1_3", "|Q1(3)| = 8", c3.q1_size == 8, c3.q1_size))
    out.append(_flag("groups.gens3", "generators(3) = 7", c3.generator_count == 7,
                     c3.generator_count))
    out.append(_flag("groups.s2_3", "|S2(3)| = 8", c3.subject_sizes.get(2) == 8,
                     c3.subject_sizes.get(2)))
    laws = all(c.closure and c.associativity and c.involution and c.identity for c in (c2, c3))
    out.append(_flag("groups.laws", "closure, associativity, involution exhaustive for N <= 3", laws))
    w = WorldSet.from_generators(3)
    a, b = w.generator(0), w.generator(1)
    out.append(_flag("groups.rank_conj", "rank(q(AB)) = 2", rank(PureQuestion(a & b)) == 2))
    out.append(_flag("groups.rank_star", "rank(a * b) = 1",
                     rank(star_pure(PureQuestion(a), PureQuestion(b))) == 1))
    form = anf(a | b)
    out.append(_flag("groups.anf_or", "ANF(A or B) = A + B + AB",
                     form.monomials == frozenset({1, 2, 3}) and not form.constant, str(form)))
    return out


def suite_measures(seed: int = 0) -> list[Check]:
    out = []
    rng = np.random.default_rng(seed)
    w = WorldSet.from_generators(3)
    gens = [AskableQuestion(g) for g in w.generators()]
    worst_signed = worst_pure = worst_gmp = worst_id = 0.0
    for _ in range(300):
        d = WorldDistribution.product(rng.uniform(0.0, 1.0, 3))
        for i in range(3):
            for j in range(i + 1, 3):
                p, q = gens[i], gens[j]
                worst_signed = max(worst_signed, abs(
                    gap_askable(d, star_askable(p, q)) - gap_askable(d, p) * gap_askable(d, q)))
                worst_pure = max(worst_pure, abs(
                    gap_pure(d, star_pure(p.pure(), q.pure())) - gap_pure(d, p.pure()) * gap_pure(d, q.pure())))
                worst_gmp = max(worst_gmp, abs(
                    gmp(d, [p.pure(), q.pure()]) - gmp(d, [p.pure()]) * gmp(d, [q.pure()])))
        for g in gens:
            worst_id = max(worst_id, abs(gmp(d, [g.pure()]) - 0.5 * math.sqrt(
                max(0.0, 1.0 - gap_pure(d, g.pure()) ** 2))))
    out.append(_bound("measures.gap_signed", "gap(A?*B?) = gap(A?)gap(B?) under independence",
                      worst_signed, 1e-12))
    out.append(_bound("measures.gap_pure", "gap(a*b) = gap(a)gap(b) under independence",
                      worst_pure, 1e-12))
    out.append(_bound("measures.gmp_product", "gmp(ab) = gmp(a)gmp(b) under independence",
                      worst_gmp, 1e-12))
    out.append(_bound("measures.gmp_gap", "gmp = sqrt(1 - gap^2)/2", worst_id, 1e-12))
    out.append(_close("measures.gap_from_gmp", "gap_from_gmp(0.4) = 0.6", gap_from_gmp(0.4), 0.6, 1e-12))
    w1 = WorldSet(2)
    A = AskableQuestion(w1.from_worlds([1]))
    out.append(_close("measures.evidence", "e(A?) = 2 bits at P(A) = 0.2",
                      evidence(WorldDistribution([0.8, 0.2]), A), 2.0, 1e-12))
    out.append(_close("measures.info_value", "i(a) = 1 bit at gmp 1/2",
                      info_value(WorldDistribution([0.5, 0.5]), [A.pure()]), 1.0, 1e-12))
    w2 = WorldSet.from_generators(2)
    # P(B|A)/P(B|notA) = 0.8/0.2 = 4 lowers the evidence against A by 2 bits
    d = WorldDistribution([0.4, 0.1, 0.1, 0.4], 2)
    A2 = AskableQuestion(w2.generator(0))
    shift = evidence(d, A2) - evidence_update(d, A2, w2.generator(1))
    out.append(_close("measures.evidence_update", "likelihood ratio 4 moves e by 2 bits",
                      shift, 2.0, 1e-12))
    dv = doubt(WorldDistribution([0.75, 0.25]), A)
    out.append(_close("measures.doubt", "d(A?) = ln 2 + i pi at gap -1/2",
                      abs(dv.as_complex() - complex(math.log(2.0), math.pi)), 0.0, 1e-12))
    return out


def suite_tilde(seed: int = 0) -> list[Check]:
    out = []
    x = tilde.tilde_x(0.25, 0.25)
    out.append(_close("tilde.golden", "x(0.25,0.25) = 0.12299828119582 +- 1e-11", x, TILDE_GOLDEN, 1e-11))
    out.append(_close("tilde.coincide", "x(0.5, 0.9) = 0.45", tilde.tilde_x(0.5, 0.9), 0.45, 1e-12))
    roots = tilde.quartic_roots_oracle(0.25, 0.25).roots
    ok = len(roots) == 2 and min(abs(r - 0.0625) for r in roots) < 1e-9 and min(
        abs(r - x) for r in roots) < 1e-9
    out.append(_flag("tilde.oracle", "quartic roots at (0.25,0.25) are {ab, tilde}", ok,
                     str([round(r, 12) for r in roots])))
    d = tilde.tilde_distribution(0.3, 0.7)
    w = WorldSet.from_generators(2)
    out.append(_bound("tilde.balance", "four-term balance vanishes on the tilde joint",
                      abs(balance_sum(d, w.generator(0), w.generator(1))), 1e-8))
    _, disc = tilde.discrepancy_grid(0.002)
    out.append(_close("tilde.max_discrepancy", "max |x - ab| = 0.0674", float(np.max(np.abs(disc))),
                      MAX_DISCREPANCY, 5e-4))
    out.append(_close("tilde.limit", "P(B|A) -> P(notB) as P(A) -> 0",
                      tilde.tilde_conditional(1e-6, 0.3), 0.7, 1e-3))
    out.append(_flag("tilde.unconstrained", "P(B|A) free at P(A) = 0, P(B) = 1",
                     tilde.tilde_conditional(0.0, 1.0) is tilde.UNCONSTRAINED))
    out.append(_bound("tilde.v_law", "V(notA) = -V(A)* on a 101x101 grid",
                      cp.tilde_v_negation_residual(101), 1e-9))
    return out


def suite_actions(seed: int = 0) -> list[Check]:
    out = []
    rng = np.random.default_rng(seed)
    w = WorldSet.from_generators(3)
    X = w.generator(0)
    x = PureQuestion(X)
    d = WorldDistribution(rng.dirichlet(np.ones(8)), 3)
    # once X is given, notX is null; the prior's P(.|notX) serves as its kernel
    d_ext = d.with_extension(~X, condition(d, ~X))
    out.append(_close("actions.give_raise", "P(X | X x) = 1/2",
                      prob(actions.apply_sequence(d_ext, [X, x]), X), 0.5, 0.0))
    out.append(_close("actions.raise_give", "P(X | x X) = 1",
                      prob(actions.apply_sequence(d, [x, X]), X), 1.0, 0.0))
    r1 = ent.rank1_questions(w)
    worst = -math.inf
    for _ in range(200):
        base = WorldDistribution.product(rng.uniform(0.0, 1.0, 3))
        for q in r1:
            worst = max(worst, ent.max_rank1_gap_growth(base, q, r1))
    out.append(_bound("actions.pure_subtraction",
                      "raising a rank-1 question never grows a rank-1 gap (product distributions)",
                      worst, 1e-12))
    rep = actions.tilde_action_check(tilde.tilde_distribution(1.0, 0.3), PureQuestion(
        WorldSet.from_generators(2).generator(0)), PureQuestion(WorldSet.from_generators(2).generator(1)))
    out.append(_close("actions.tilde_rule", "raising a settled A drives P(B) to 1/2",
                      rep.pb_after, 0.5, 1e-9))
    out.append(_flag("actions.tilde_marginals", "P(.|a) and P(.|ab) agree on the A and B marginals",
                     bool(rep.marginals_match)))
    return out


def suite_complex(seed: int = 0) -> list[Check]:
    out = []
    cube = cp.check_constraint(lambda z: z ** 3, samples=10_000, seed=seed)
    out.append(_bound("complex.cube", "z^3 respects f(-z*) = -f(z)*", cube.max_residual, 1e-9))
    root = cp.check_constraint(cp.question_cbrt, samples=10_000, seed=seed)
    out.append(_bound("complex.cbrt", "half-plane cube root respects the constraint",
                      root.max_residual, 1e-9))
    sq = cp.check_constraint(lambda z: z ** 2, samples=10_000, seed=seed)
    out.append(Check("complex.square", "z^2 violates the constraint", not sq.passed,
                     sq.max_residual, 1e-9))
    fam = True
    for n in range(6):
        for m in range(6 - n):
            for with_i in (False, True):
                t = cp.family_member(n, m, with_i, strict=False)
                fam &= cp.check_constraint(t, samples=500, seed=seed).passed == t.valid
    out.append(_flag("complex.family", "z^n z*^m parity rule for n+m <= 5", fam))
    g = cp.PropertyFunction.from_askable(cp.PropertyFunction.askable_gap(), 0.7)
    out.append(_bound("complex.whole", "whole property obeys g(notA) = e^{i(2phi+pi)} g(A)*",
                      g.law_residual(), 1e-12))
    return out


def suite_quantum(seed: int = 0) -> list[Check]:
    out = []
    rng = np.random.default_rng(seed)
    worst_born = worst_trip = worst_gamma = 0.0
    for _ in range(500):
        p1, p2 = ts.random_state_vector(rng), ts.random_state_vector(rng)
        v1, v2 = ts.bloch_from_state(p1), ts.bloch_from_state(p2)
        worst_born = max(worst_born, abs(ts.born_probability(p1, p2) - ts.prob_yes(v1, v2.direction())))
        back = ts.bloch_from_state(ts.state_from_bloch(v1))
        worst_trip = max(worst_trip, float(np.max(np.abs(back.array - v1.array))))
        d1, d2 = v1.direction(), v2.direction()
        sep = math.acos(max(-1.0, min(1.0, d1.dot(d2))))
        got = ts.circle_angle(d1, d2, ts.hilbert_add_as_geometry(p1, p2))
        want = ts.hilbert_circle_angle(ts.overlap_phase(p1, p2), sep)
        worst_gamma = max(worst_gamma, abs(math.remainder(got - want, 2 * math.pi)))
    out.append(_bound("quantum.born", "|<phi|psi>|^2 = (1 + gap)/2", worst_born, 1e-12))
    out.append(_bound("quantum.roundtrip", "Bloch -> state -> Bloch", worst_trip, 1e-12))
    out.append(_bound("quantum.hilbert_circle",
                      "Hilbert sum sits on the symmetric circle at the predicted angle", worst_gamma, 1e-9))
    a = ts.StateVector(1.0 + 0j, 0j)
    b = ts.StateVector(1 / math.sqrt(2) + 0j, 1 / math.sqrt(2) + 0j)
    mid = ts.hilbert_add_as_geometry(a, b)
    out.append(_flag("quantum.real_overlap", "real overlap: sum = add_with_angle(.., 0)",
                     mid.allclose(ts.add_with_angle(ts.Z_AXIS, ts.X_AXIS, 0.0))))
    bud = ts.measurement_budget(ts.BlochState.pure(ts.Z_AXIS), ts.X_AXIS, True)
    out.append(_close("quantum.budget", "pure state measured on a new axis: 1 bit lost, 1 gained",
                      abs(bud.lost - 1.0) + abs(bud.gained - 1.0), 0.0, 1e-12))
    return out


def suite_bell(seed: int = 0) -> list[Check]:
    out = []
    p = ent.quantum_bell_probs(225.0)
    out.append(_close("bell.p_xy", "P(x1+, y2+) = 0.25", p.p_xy, 0.25, 1e-12))
    out.append(_close("bell.p_xw", "P(x1+, w2-) = 0.5 cos^2(5pi/8)", p.p_xw,
                      0.5 * math.cos(5 * math.pi / 8) ** 2, 1e-12))
    out.append(_close("bell.p_wy", "P(w1-, y2+) = 0.5 cos^2(3pi/8)", p.p_wy,
                      0.5 * math.cos(3 * math.pi / 8) ** 2, 1e-12))
    out.append(Check("bell.violation", "0.0732 + 0.0732 < 0.25", p.violated, p.lhs, None))
    rng = np.random.default_rng(seed)
    ok = all(ent.lhv_inequality(ent.LhvTable(tuple(int(c) for c in rng.integers(0, 50, 8)))).holds
             for _ in range(1000))
    out.append(_flag("bell.lhv", "LHV inequality holds on fuzzed count tables", ok))
    worst = 0.0
    for _ in range(200):
        d1, d2 = ts.random_direction(rng), ts.random_direction(rng)
        for state in (ent.SINGLET, ent.ALIGNED):
            worst = max(worst, abs(ent.marginal_second_after(state, d1, d2, 1)
                                   - ent.marginal_second(state, d2, 1)))
    out.append(_bound("bell.no_signaling", "particle-2 marginal ignores particle-1 measurement",
                      worst, 1e-12))
    rep = ent.nonlocal_rank_check(3, samples=100, seed=seed)
    out.append(_flag("bell.sx_rank", "rank(x1 * x2) = 1", rep.rank_sx == 1, rep.rank_sx))
    out.append(_bound("bell.sx_subtracts", "raising s_x grows no rank-1 gap",
                      rep.max_rank1_gap_growth, 1e-12))
    out.append(Check("bell.rank2_adds", "raising q(X1 Y2) on uniform makes Y2 more probable",
                     rep.rank2_target_rises, rep.target_after, None))
    return out


SUITES: dict[str, Callable[[int], list[Check]]] = {
    "worlds": suite_worlds,
    "groups": suite_groups,
    "measures": suite_measures,
    "tilde": suite_tilde,
    "actions": suite_actions,
    "complex": suite_complex,
    "quantum": suite_quantum,
    "bell": suite_bell,
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name: str, seed: int = 0) -> VerificationReport:
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    report = VerificationReport(name)
    names = list(SUITES) if name == "all" else [name]
    for n in names:
        report.checks.extend(SUITES[n](seed))
    return report
