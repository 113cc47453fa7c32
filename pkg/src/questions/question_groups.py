"""Pure questions Q(N), askable questions K(N), subjects S(N), and ANF.

Truth tables are the storage format throughout.  A pure question keeps the
member of its complement pair that is false at world 0; an askable question
keeps the proposition it asks.  Subjects are bitmasks over generator indices.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable

import numpy as np

from . import kernels
from .errors import (
    EnumerationTooLargeError,
    GeneratorStructureError,
    RankMismatchError,
    SizeMismatchError,
)
from .worlds import Proposition, WorldSet

MAX_CENSUS_N = 4


class Answer(enum.Enum):
    YES = "yes"
    NO = "no"


def _require_n(prop: Proposition) -> int:
    n = prop.generator_count
    if n is None:
        size = prop.size
        if size & (size - 1) == 0:
            n = size.bit_length() - 1
        else:
            raise GeneratorStructureError(f"{size} worlds is not a power of two")
    return n


class PureQuestion:
    """q(A) = {A, not A}, stored through its canonical representative."""

    __slots__ = ("canon",)

    def __init__(self, prop: Proposition):
        canon = ~prop if prop.truth[0] else prop
        object.__setattr__(self, "canon", canon)

    def __setattr__(self, name, value):
        raise AttributeError("PureQuestion is immutable")

    @classmethod
    def identity(cls, worlds: WorldSet) -> "PureQuestion":
        return cls(worlds.false())

    @property
    def size(self) -> int:
        return self.canon.size

    def representatives(self) -> tuple[Proposition, Proposition]:
        return self.canon, ~self.canon

    def is_identity(self) -> bool:
        return self.canon.is_false()

    def __mul__(self, other: "PureQuestion") -> "PureQuestion":
        return star_pure(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, PureQuestion) and self.canon == other.canon

    def __hash__(self) -> int:
        return hash(("q", self.canon))

    def __repr__(self) -> str:
        return f"PureQuestion({self.canon!r})"


class AskableQuestion:
    """A? = (A, not A); the ordered pair is determined by A."""

    __slots__ = ("asked",)

    def __init__(self, prop: Proposition):
        object.__setattr__(self, "asked", prop)

    def __setattr__(self, name, value):
        raise AttributeError("AskableQuestion is immutable")

    @classmethod
    def identity(cls, worlds: WorldSet) -> "AskableQuestion":
        return cls(worlds.true())

    @property
    def size(self) -> int:
        return self.asked.size

    def negate(self) -> "AskableQuestion":
        return AskableQuestion(~self.asked)

    def pure(self) -> PureQuestion:
        return PureQuestion(self.asked)

    @property
    def sign(self) -> int:
        """+1 when the asked proposition holds at world 0, else -1.

        Together with :meth:`pure` this realizes K(N) = Q(N) x Z2: the sign of
        A? * B? is the product of the signs.
        """
        return 1 if self.asked.truth[0] else -1

    def __mul__(self, other: "AskableQuestion") -> "AskableQuestion":
        return star_askable(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, AskableQuestion) and self.asked == other.asked

    def __hash__(self) -> int:
        return hash(("?", self.asked))

    def __repr__(self) -> str:
        return f"AskableQuestion({self.asked!r})"


@dataclass(frozen=True)
class Subject:
    """A subset of the N generator questions, as an N-bit mask."""

    mask: int
    n: int

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.mask < 2 ** self.n:
            raise ValueError("subject mask out of range")

    @classmethod
    def of(cls, members: Iterable[int], n: int) -> "Subject":
        mask = 0
        for i in members:
            if not 0 <= i < n:
                raise ValueError(f"generator index {i} out of range")
            mask |= 1 << i
        return cls(mask, n)

    @classmethod
    def identity(cls, n: int) -> "Subject":
        return cls(0, n)

    def members(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.mask >> i & 1)

    @property
    def degree(self) -> int:
        return bin(self.mask).count("1")

    def is_identity(self) -> bool:
        return self.mask == 0

    def label(self) -> str:
        if self.mask == 0:
            return "I"
        return "".join(_letter(i) for i in self.members())

    def __repr__(self) -> str:
        return f"Subject({self.label()})"


def _letter(i: int) -> str:
    return chr(ord("a") + i) if i < 26 else f"g{i}"


@dataclass(frozen=True)
class AnfForm:
    """Negation-free conjunctions joined by XOR (or, in the dual, XNOR).

    ``monomials`` holds generator masks; the empty mask never appears because
    the constant is kept separately.  In the XOR form the value is
    ``constant ^ m1 ^ ... ^ mk``.  In the XNOR form it is the chain
    ``constant xnor m1 xnor ... xnor mk``, where True is the identity.
    """

    monomials: frozenset[int]
    constant: bool
    n: int
    connective: str = "xor"

    def __post_init__(self):
        if self.connective not in ("xor", "xnor"):
            raise ValueError("connective must be 'xor' or 'xnor'")
        if 0 in self.monomials:
            raise ValueError("the constant term is stored in `constant`")

    @property
    def degree(self) -> int:
        return max((bin(m).count("1") for m in self.monomials), default=0)

    def _xor_constant(self) -> bool:
        if self.connective == "xor":
            return self.constant
        return self.constant ^ (len(self.monomials) % 2 == 1)

    def to_xor(self) -> "AnfForm":
        return AnfForm(self.monomials, self._xor_constant(), self.n, "xor")

    def to_xnor(self) -> "AnfForm":
        """Dual form with the same truth table.

        Each XNOR flips the running value, so the constant changes exactly
        when the number of monomials is odd.
        """
        c = self._xor_constant() ^ (len(self.monomials) % 2 == 1)
        return AnfForm(self.monomials, c, self.n, "xnor")

    def dual(self) -> "AnfForm":
        return self.to_xnor() if self.connective == "xor" else self.to_xor()

    def evaluate(self, world: int) -> bool:
        acc = self._xor_constant()
        for m in self.monomials:
            if world & m == m:
                acc = not acc
        return acc

    def to_proposition(self) -> Proposition:
        w = np.arange(2 ** self.n)
        truth = np.full(w.size, self._xor_constant(), dtype=bool)
        for m in self.monomials:
            truth ^= (w & m) == m
        return Proposition(truth, self.n)

    def terms(self) -> list[str]:
        def name(m):
            return "".join(_letter(i).upper() for i in range(self.n) if m >> i & 1)

        ordered = sorted(self.monomials, key=lambda m: (bin(m).count("1"), m))
        const = "True" if self.constant else "False"
        return [const] + [name(m) for m in ordered]

    def __str__(self) -> str:
        return f" {self.connective} ".join(self.terms())


# ---------------------------------------------------------------------------
# group operations
# ---------------------------------------------------------------------------

def _same_size(x, y) -> None:
    if x.size != y.size:
        raise SizeMismatchError(f"world sets differ: {x.size} vs {y.size}")


def star_pure(p: PureQuestion, q: PureQuestion) -> PureQuestion:
    """q(A) * q(B) = q(A xor B)."""
    _same_size(p, q)
    return PureQuestion(p.canon ^ q.canon)


def star_askable(p: AskableQuestion, q: AskableQuestion) -> AskableQuestion:
    """A? * B? = (A xnor B)?, the question of whether both have the same answer."""
    _same_size(p, q)
    return AskableQuestion(p.asked.xnor(q.asked))


def circ_subject(s: Subject, t: Subject) -> Subject:
    """Symmetric difference of subject matter."""
    if s.n != t.n:
        raise SizeMismatchError("subjects over different generator counts")
    return Subject(s.mask ^ t.mask, s.n)


def generator_question(worlds: WorldSet, i: int) -> PureQuestion:
    return PureQuestion(worlds.generator(i))


def conjunction(worlds: WorldSet, mask: int) -> Proposition:
    """The negation-free conjunction of the generators in ``mask`` (True for 0)."""
    n = worlds.require_generators()
    w = np.arange(worlds.size)
    return Proposition((w & mask) == mask, n)


def subject_question(worlds: WorldSet, s: Subject) -> PureQuestion:
    """The star-combination of the generator questions in ``s`` (Q1 image)."""
    q = PureQuestion.identity(worlds)
    for i in s.members():
        q = star_pure(q, generator_question(worlds, i))
    return q


# ---------------------------------------------------------------------------
# ANF, rank, subjects
# ---------------------------------------------------------------------------

def anf(prop: Proposition) -> AnfForm:
    """XOR-form algebraic normal form via the GF(2) Moebius transform."""
    n = _require_n(prop)
    coeff = kernels.mobius(np.ascontiguousarray(prop.truth.astype(np.uint8)))
    monomials = frozenset(int(m) for m in np.nonzero(coeff)[0] if m != 0)
    return AnfForm(monomials, bool(coeff[0]), n, "xor")


def rank(q: PureQuestion) -> int:
    """ANF degree of the canonical representative; rank(I) = 0."""
    return anf(q.canon).degree


def quotient_subject(q: PureQuestion, m: int) -> frozenset[Subject]:
    """Image of q in S_m = Q_m / Q_{m-1}: its degree-m ANF monomials."""
    if m < 1:
        raise RankMismatchError("quotient rank must be at least 1")
    form = anf(q.canon)
    if form.degree != m:
        raise RankMismatchError(f"question has rank {form.degree}, not {m}")
    return frozenset(Subject(mono, form.n) for mono in form.monomials if bin(mono).count("1") == m)


@dataclass(frozen=True)
class SubjectPredicateAnswer:
    subject: frozenset[Subject]
    predicate: AnfForm
    answer: bool

    def recombine(self) -> Proposition:
        monos = set(self.predicate.monomials) | {s.mask for s in self.subject}
        return AnfForm(frozenset(monos), self.answer, self.predicate.n).to_proposition()


def subject_predicate_answer(prop: Proposition) -> SubjectPredicateAnswer:
    """Split a proposition's ANF into top-degree, lower-degree and constant parts."""
    form = anf(prop)
    top = form.degree
    subject = frozenset(
        Subject(m, form.n) for m in form.monomials if top > 0 and bin(m).count("1") == top
    )
    rest = frozenset(m for m in form.monomials if bin(m).count("1") < top)
    return SubjectPredicateAnswer(subject, AnfForm(rest, False, form.n), form.constant)


def answer(q: AskableQuestion, ans: Answer | bool) -> Proposition:
    """Yes selects the asked proposition, No its negation."""
    yes = ans is Answer.YES or ans is True
    return q.asked if yes else ~q.asked


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------

@dataclass
class GroupCensus:
    n: int
    q_size: int
    q1_size: int
    generator_count: int
    generators_independent: bool
    complete: bool
    q_m_sizes: dict[int, int]
    subject_sizes: dict[int, int]
    k_size: int
    closure: bool
    associativity: bool
    involution: bool
    identity: bool
    exhaustive: bool
    expected: dict[str, int] = field(default_factory=dict)

    def matches_formulas(self) -> bool:
        return (
            self.q_size == self.expected["q_size"]
            and self.q1_size == self.expected["q1_size"]
            and self.generator_count == self.expected["generator_count"]
            and all(self.subject_sizes[m] == 2 ** comb(self.n, m) for m in self.subject_sizes)
        )


def _span(gens: list[int]) -> np.ndarray:
    """All XOR combinations of the given truth-table integers."""
    elems = np.zeros(1, dtype=np.int64)
    for g in gens:
        elems = np.unique(np.concatenate([elems, elems ^ g]))
    return elems


def _conj_table(n: int, mask: int) -> int:
    table = 0
    for w in range(2 ** n):
        if w & mask == mask:
            table |= 1 << w
    return table


def _anf_key(table: int, n: int, degree: int) -> tuple[int, ...]:
    bits = np.array([(table >> w) & 1 for w in range(2 ** n)], dtype=np.uint8)
    coeff = kernels.mobius(bits)
    return tuple(int(m) for m in np.nonzero(coeff)[0] if bin(int(m)).count("1") == degree)


def group_census(n: int, seed: int = 0, samples: int = 200_000) -> GroupCensus:
    """Enumerate Q(N) from its conjunction generators and check the group laws.

    Closure, associativity and involution are exhaustive for N <= 3 and use
    ``samples`` random pairs/triples for N = 4.
    """
    if n < 0:
        raise ValueError("N must be non-negative")
    if n > MAX_CENSUS_N:
        raise EnumerationTooLargeError(f"enumeration too large for N = {n} (max {MAX_CENSUS_N})")
    size = 2 ** n
    full = (1 << size) - 1

    def canon(t):
        return np.where(t & 1, t ^ full, t)

    masks = list(range(1, size))
    gens = [int(canon(np.int64(_conj_table(n, m)))) for m in masks]
    q = _span(gens)
    q_size = int(q.size)
    generators_independent = q_size == 2 ** len(gens)
    complete = q_size == 2 ** (size - 1) and bool(np.all((q & 1) == 0))

    q1 = _span([int(canon(np.int64(_conj_table(n, 1 << i)))) for i in range(n)])

    q_m_sizes: dict[int, int] = {0: 1}
    subject_sizes: dict[int, int] = {}
    for m in range(1, n + 1):
        layer = [int(canon(np.int64(_conj_table(n, mk)))) for mk in masks if bin(mk).count("1") <= m]
        qm = _span(layer)
        q_m_sizes[m] = int(qm.size)
        cosets = {_anf_key(int(t), n, m) for t in qm} if qm.size <= 2 ** 15 else None
        count = len(cosets) if cosets is not None else q_m_sizes[m] // q_m_sizes[m - 1]
        subject_sizes[m] = count

    # askable group: generated under XNOR by the conjunction questions and False?
    k = np.array([full], dtype=np.int64)
    for g in [_conj_table(n, mk) for mk in masks] + [0]:
        k = np.unique(np.concatenate([k, ~(k ^ g) & full]))
    k_size = int(k.size)

    exhaustive = n <= 3
    rng = np.random.default_rng(seed)
    if exhaustive:
        a = q[:, None]
        b = q[None, :]
        prod = canon(a ^ b)
        closure = bool(np.isin(prod, q).all())
        involution = bool(np.all(canon(q ^ q) == 0))
        identity = bool(np.all(canon(q ^ 0) == q))
        x = q[:, None, None]
        y = q[None, :, None]
        z = q[None, None, :]
        associativity = bool(np.array_equal(canon(canon(x ^ y) ^ z), canon(x ^ canon(y ^ z))))
    else:
        a = rng.choice(q, samples)
        b = rng.choice(q, samples)
        c = rng.choice(q, samples)
        closure = bool(np.isin(canon(a ^ b), q).all())
        involution = bool(np.all(canon(q ^ q) == 0))
        identity = bool(np.all(canon(q ^ 0) == q))
        associativity = bool(
            np.array_equal(canon(canon(a ^ b) ^ c), canon(a ^ canon(b ^ c)))
        )

    expected = {
        "q_size": 2 ** (size - 1),
        "q1_size": 2 ** n,
        "generator_count": size - 1,
    }
    return GroupCensus(
        n=n,
        q_size=q_size,
        q1_size=int(q1.size),
        generator_count=len(gens),
        generators_independent=generators_independent,
        complete=complete,
        q_m_sizes=q_m_sizes,
        subject_sizes=subject_sizes,
        k_size=k_size,
        closure=closure,
        associativity=associativity,
        involution=involution,
        identity=identity,
        exhaustive=exhaustive,
        expected=expected,
    )


def all_propositions(worlds: WorldSet) -> Iterable[Proposition]:
    """Every truth table on a small world set (2^size of them)."""
    n = worlds.generator_count
    for bits in itertools.product((False, True), repeat=worlds.size):
        yield Proposition(np.array(bits[::-1]), n)
