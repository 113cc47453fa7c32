"""Finite world sets, propositions as truth tables, and distributions.

A proposition is a boolean vector over worlds.  When the world set is the
set of 2^N assignments of N generator propositions, world ``w`` assigns
generator ``i`` the value of bit ``i`` of ``w``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    GeneratorStructureError,
    NormalizationError,
    NullConditioningError,
    SizeMismatchError,
    UndefinedQuantityError,
)

NORM_TOL = 1e-12
RENORM_TOL = 1e-9


@dataclass(frozen=True)
class WorldSet:
    """A finite set of ``size`` worlds, optionally built from N generators."""

    size: int
    generator_count: int | None = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("a world set needs at least one world")
        if self.generator_count is not None and self.size != 2 ** self.generator_count:
            raise ValueError(
                f"size {self.size} is not 2^{self.generator_count}"
            )

    @classmethod
    def from_generators(cls, n: int) -> "WorldSet":
        if n < 0:
            raise ValueError("generator count must be non-negative")
        return cls(2 ** n, n)

    def require_generators(self) -> int:
        if self.generator_count is None:
            raise GeneratorStructureError("world set has no generator structure")
        return self.generator_count

    def generator(self, i: int) -> "Proposition":
        n = self.require_generators()
        if not 0 <= i < n:
            raise IndexError(f"generator {i} out of range for N={n}")
        return Proposition(((np.arange(self.size) >> i) & 1).astype(bool), self.generator_count)

    def generators(self) -> list["Proposition"]:
        return [self.generator(i) for i in range(self.require_generators())]

    def true(self) -> "Proposition":
        return Proposition(np.ones(self.size, dtype=bool), self.generator_count)

    def false(self) -> "Proposition":
        return Proposition(np.zeros(self.size, dtype=bool), self.generator_count)

    def proposition(self, rule: Callable[[int], bool]) -> "Proposition":
        """Proposition true exactly in the worlds ``w`` with ``rule(w)``."""
        return Proposition(
            np.array([bool(rule(w)) for w in range(self.size)]), self.generator_count
        )

    def from_worlds(self, worlds: Iterable[int]) -> "Proposition":
        truth = np.zeros(self.size, dtype=bool)
        truth[list(worlds)] = True
        return Proposition(truth, self.generator_count)


class Proposition:
    """Immutable truth table over a finite world set.

    ``generator_count`` is carried along when the world set has generator
    structure so ANF and rank can be computed without extra arguments.
    """

    __slots__ = ("_truth", "_key", "generator_count")

    def __init__(self, truth: Sequence[bool] | np.ndarray, generator_count: int | None = None):
        arr = np.array(truth, dtype=bool).ravel()
        arr.setflags(write=False)
        if generator_count is not None and arr.size != 2 ** generator_count:
            raise ValueError("truth table length does not match the generator count")
        object.__setattr__(self, "_truth", arr)
        object.__setattr__(self, "_key", np.packbits(arr).tobytes() + arr.size.to_bytes(4, "little"))
        object.__setattr__(self, "generator_count", generator_count)

    def __setattr__(self, name, value):
        raise AttributeError("Proposition is immutable")

    @property
    def truth(self) -> np.ndarray:
        return self._truth

    @property
    def size(self) -> int:
        return int(self._truth.size)

    def worlds(self) -> np.ndarray:
        return np.nonzero(self._truth)[0]

    def as_int(self) -> int:
        """Truth table packed into an integer, bit w for world w."""
        return int(sum(1 << int(w) for w in self.worlds()))

    def _check(self, other: "Proposition") -> None:
        if not isinstance(other, Proposition):
            raise TypeError("expected a Proposition")
        if other.size != self.size:
            raise SizeMismatchError(f"world sets differ: {self.size} vs {other.size}")

    def _meta(self, other: "Proposition") -> int | None:
        return self.generator_count if self.generator_count is not None else other.generator_count

    def __invert__(self) -> "Proposition":
        return Proposition(~self._truth, self.generator_count)

    def __and__(self, other: "Proposition") -> "Proposition":
        self._check(other)
        return Proposition(self._truth & other._truth, self._meta(other))

    def __or__(self, other: "Proposition") -> "Proposition":
        self._check(other)
        return Proposition(self._truth | other._truth, self._meta(other))

    def __xor__(self, other: "Proposition") -> "Proposition":
        self._check(other)
        return Proposition(self._truth ^ other._truth, self._meta(other))

    def xnor(self, other: "Proposition") -> "Proposition":
        self._check(other)
        return Proposition(~(self._truth ^ other._truth), self._meta(other))

    def implies(self, other: "Proposition") -> bool:
        self._check(other)
        return bool(np.all(~self._truth | other._truth))

    def is_true(self) -> bool:
        return bool(self._truth.all())

    def is_false(self) -> bool:
        return not bool(self._truth.any())

    def __eq__(self, other) -> bool:
        return isinstance(other, Proposition) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        bits = "".join("1" if t else "0" for t in self._truth[:64])
        more = "..." if self.size > 64 else ""
        return f"Proposition({bits}{more})"


class WorldDistribution:
    """Probability vector over worlds, with an optional extension kernel.

    ``extension`` maps null propositions to the conditional distribution that
    should be used when conditioning on them.  The kernel is carried unchanged
    through every transformation, so a proposition that becomes null after
    being negated-by-conditioning can still be conditioned on later.
    """

    __slots__ = ("_probs", "_extension", "generator_count")

    def __init__(
        self,
        probs: Sequence[float] | np.ndarray,
        generator_count: int | None = None,
        extension: Mapping[Proposition, "WorldDistribution"] | None = None,
    ):
        p = np.array(probs, dtype=float).ravel()
        if p.size == 0:
            raise NormalizationError("empty probability vector")
        if not np.all(np.isfinite(p)):
            raise NormalizationError("probabilities must be finite")
        if np.any(p < -NORM_TOL):
            raise NormalizationError("negative probability")
        p = np.where(p < 0.0, 0.0, p)
        total = float(p.sum())
        if abs(total - 1.0) > RENORM_TOL:
            raise NormalizationError(f"probabilities sum to {total!r}")
        if abs(total - 1.0) > 0.0:
            p = p / total
        p.setflags(write=False)
        if generator_count is not None and p.size != 2 ** generator_count:
            raise ValueError("distribution length does not match the generator count")
        ext: dict[Proposition, WorldDistribution] = {}
        for prop, cond in (extension or {}).items():
            if prop.size != p.size or cond.size != p.size:
                raise SizeMismatchError("extension kernel on a different world set")
            if abs(prob(cond, prop) - 1.0) > NORM_TOL * 10:
                raise NormalizationError("extension conditional must give its proposition probability 1")
            ext[prop] = cond
        object.__setattr__(self, "_probs", p)
        object.__setattr__(self, "_extension", ext)
        object.__setattr__(self, "generator_count", generator_count)

    def __setattr__(self, name, value):
        raise AttributeError("WorldDistribution is immutable")

    # construction helpers -------------------------------------------------

    @classmethod
    def uniform(cls, size: int, generator_count: int | None = None) -> "WorldDistribution":
        return cls(np.full(size, 1.0 / size), generator_count)

    @classmethod
    def point(cls, size: int, world: int, generator_count: int | None = None) -> "WorldDistribution":
        p = np.zeros(size)
        p[world] = 1.0
        return cls(p, generator_count)

    @classmethod
    def product(cls, marginals: Sequence[float]) -> "WorldDistribution":
        """Independent generators with P(generator i) = marginals[i]."""
        n = len(marginals)
        w = np.arange(2 ** n)
        p = np.ones(2 ** n)
        for i, m in enumerate(marginals):
            if not 0.0 <= m <= 1.0:
                raise NormalizationError("marginal outside [0, 1]")
            bit = (w >> i) & 1
            p *= np.where(bit == 1, m, 1.0 - m)
        return cls(p, n)

    @classmethod
    def on(cls, worlds: WorldSet, probs) -> "WorldDistribution":
        d = cls(probs, worlds.generator_count)
        if d.size != worlds.size:
            raise SizeMismatchError("probability vector does not match the world set")
        return d

    # accessors -------------------------------------------------------------

    @property
    def probs(self) -> np.ndarray:
        return self._probs

    @property
    def size(self) -> int:
        return int(self._probs.size)

    @property
    def extension(self) -> dict[Proposition, "WorldDistribution"]:
        return dict(self._extension)

    def world_set(self) -> WorldSet:
        return WorldSet(self.size, self.generator_count)

    def extension_for(self, prop: Proposition) -> "WorldDistribution | None":
        return self._extension.get(prop)

    def with_extension(self, prop: Proposition, conditional: "WorldDistribution") -> "WorldDistribution":
        ext = dict(self._extension)
        ext[prop] = conditional
        return WorldDistribution(self._probs, self.generator_count, ext)

    def with_probs(self, probs) -> "WorldDistribution":
        """Same world set and kernel, new probability vector."""
        return WorldDistribution(probs, self.generator_count, self._extension)

    def allclose(self, other: "WorldDistribution", atol: float = 1e-12) -> bool:
        return self.size == other.size and bool(np.allclose(self._probs, other._probs, rtol=0, atol=atol))

    def __eq__(self, other) -> bool:
        return isinstance(other, WorldDistribution) and self.size == other.size and bool(
            np.array_equal(self._probs, other._probs)
        )

    def __hash__(self) -> int:
        return hash(self._probs.tobytes())

    def __repr__(self) -> str:
        return f"WorldDistribution({np.array2string(self._probs, precision=6)})"


def _check_sizes(dist: WorldDistribution, *props: Proposition) -> None:
    for prop in props:
        if prop.size != dist.size:
            raise SizeMismatchError(
                f"proposition on {prop.size} worlds, distribution on {dist.size}"
            )


def prob(dist: WorldDistribution, prop: Proposition) -> float:
    """P(prop)."""
    _check_sizes(dist, prop)
    return float(dist.probs[prop.truth].sum())


def info(dist: WorldDistribution, prop: Proposition) -> float:
    """i(A) = -log2 P(A) in bits; +inf when P(A) = 0."""
    p = prob(dist, prop)
    if p <= 0.0:
        return math.inf
    return max(0.0, -math.log2(p))


def mutual_info_pair(dist: WorldDistribution, a: Proposition, b: Proposition) -> float:
    """i(A,B) = log2(P(AB) / (P(A)P(B))) in bits.

    Undefined when either marginal is zero; -inf when the conjunction is
    impossible but both marginals are positive.
    """
    pa = prob(dist, a)
    pb = prob(dist, b)
    if pa <= 0.0 or pb <= 0.0:
        raise UndefinedQuantityError("i(A,B) undefined when P(A) or P(B) is zero")
    pab = prob(dist, a & b)
    if pab <= 0.0:
        return -math.inf
    # exact independence gives exactly zero rather than a rounding residue
    if pab == pa * pb:
        return 0.0
    return math.log2(pab / (pa * pb))


def balance_sum(dist: WorldDistribution, a: Proposition, b: Proposition) -> float:
    """i(A,B) + i(A,notB) + i(notA,B) + i(notA,notB), in bits."""
    cells = [
        prob(dist, a & b),
        prob(dist, a & ~b),
        prob(dist, ~a & b),
        prob(dist, ~a & ~b),
    ]
    if min(cells) <= 0.0:
        raise UndefinedQuantityError("balance undefined: a conjunction has probability zero")
    pa = cells[0] + cells[1]
    pb = cells[0] + cells[2]
    num = cells[0] * cells[1] * cells[2] * cells[3]
    den = (pa * (1.0 - pa) * pb * (1.0 - pb)) ** 2
    return math.log2(num / den)


def entropy(dist: WorldDistribution) -> float:
    """Shannon entropy of the full distribution, in bits."""
    p = dist.probs[dist.probs > 0.0]
    return float(-(p * np.log2(p)).sum())


def condition(dist: WorldDistribution, prop: Proposition) -> WorldDistribution:
    """P(W | prop), falling back to the extension kernel when P(prop) = 0."""
    p = prob(dist, prop)
    if p > 0.0:
        if not np.any(dist.probs[~prop.truth] > 0.0):
            # already given: conditioning changes nothing, so skip the rounding
            return dist
        out = np.where(prop.truth, dist.probs, 0.0) / p
        return dist.with_probs(out)
    ext = dist.extension_for(prop)
    if ext is None:
        raise NullConditioningError(
            "conditioning on null proposition (P = 0) without an extension kernel"
        )
    return dist.with_probs(ext.probs)
