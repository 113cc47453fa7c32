"""The sphere of askable questions as a two-state system.

An askable measurement question is a unit direction d.  A state is a Bloch
vector v with |v| <= 1, and the gap of the question along d is v . d.  State
vectors are amplitude pairs; the Bloch vector of (a, b) is
(2 Re(a* b), 2 Im(a* b), |a|^2 - |b|^2) after normalization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .actions import info_content
from .errors import DegenerateInputError
from .question_groups import Answer
from .worlds import WorldDistribution

UNIT_TOL = 1e-12
DEGENERATE_TOL = 1e-9


def _as_vec(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float).reshape(3)
    return arr


@dataclass(frozen=True)
class Direction:
    """Unit 3-vector labelling an askable measurement question."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if abs(math.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2) - 1.0) > 1e-9:
            raise ValueError("direction must be a unit vector")

    @classmethod
    def from_vector(cls, v) -> "Direction":
        arr = _as_vec(v)
        norm = float(np.linalg.norm(arr))
        if norm == 0.0:
            raise DegenerateInputError("zero vector has no direction")
        arr = arr / norm
        return cls(float(arr[0]), float(arr[1]), float(arr[2]))

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "Direction":
        """Polar angle theta from +z, azimuth phi from +x."""
        return cls.from_vector(
            [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
        )

    @classmethod
    def in_plane(cls, degrees: float) -> "Direction":
        """Direction in the x-y plane at ``degrees`` from +x towards +y."""
        r = math.radians(degrees)
        return cls.from_vector([math.cos(r), math.sin(r), 0.0])

    @property
    def array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def angles(self) -> tuple[float, float]:
        return math.acos(max(-1.0, min(1.0, self.z))), math.atan2(self.y, self.x)

    def __neg__(self) -> "Direction":
        return Direction(-self.x, -self.y, -self.z)

    def dot(self, other: "Direction") -> float:
        return float(self.array @ other.array)

    def allclose(self, other: "Direction", atol: float = 1e-9) -> bool:
        return bool(np.allclose(self.array, other.array, rtol=0, atol=atol))


X_AXIS = Direction(1.0, 0.0, 0.0)
Y_AXIS = Direction(0.0, 1.0, 0.0)
Z_AXIS = Direction(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class BlochState:
    """State of knowledge about the sphere of questions: |v| <= 1."""

    v: tuple[float, float, float]

    def __post_init__(self):
        if float(np.linalg.norm(self.v)) > 1.0 + UNIT_TOL:
            raise ValueError("Bloch vector longer than 1")

    @classmethod
    def of(cls, v) -> "BlochState":
        arr = _as_vec(v)
        return cls((float(arr[0]), float(arr[1]), float(arr[2])))

    @classmethod
    def pure(cls, d: Direction) -> "BlochState":
        return cls((d.x, d.y, d.z))

    @classmethod
    def mixed(cls) -> "BlochState":
        return cls((0.0, 0.0, 0.0))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.v)

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.v))

    @property
    def is_pure(self) -> bool:
        return abs(self.length - 1.0) <= 1e-9

    def direction(self) -> Direction:
        return Direction.from_vector(self.v)


@dataclass(frozen=True)
class StateVector:
    """Amplitude pair a|0> + b|1>, defined up to a non-zero complex factor."""

    amp0: complex
    amp1: complex

    def __post_init__(self):
        if self.amp0 == 0 and self.amp1 == 0:
            raise DegenerateInputError("the zero vector is not a state")

    @property
    def array(self) -> np.ndarray:
        return np.array([self.amp0, self.amp1], dtype=complex)

    @property
    def norm(self) -> float:
        return float(math.sqrt(abs(self.amp0) ** 2 + abs(self.amp1) ** 2))

    def normalized(self) -> "StateVector":
        n = self.norm
        return StateVector(self.amp0 / n, self.amp1 / n)

    def inner(self, other: "StateVector") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.array, other.array))

    def scaled(self, c: complex) -> "StateVector":
        return StateVector(self.amp0 * c, self.amp1 * c)

    def __add__(self, other: "StateVector") -> "StateVector":
        return StateVector(self.amp0 + other.amp0, self.amp1 + other.amp1)


KET0 = StateVector(1.0 + 0j, 0j)
KET1 = StateVector(0j, 1.0 + 0j)


def gap_along(state: BlochState, d: Direction) -> float:
    """gap(X?) = v . d, the cosine projection."""
    return float(state.array @ d.array)


def prob_yes(state: BlochState, d: Direction) -> float:
    return 0.5 * (1.0 + gap_along(state, d))


def born_probability(psi: StateVector, phi: StateVector) -> float:
    """|<phi|psi>|^2 / (|phi|^2 |psi|^2)."""
    amp = phi.inner(psi)
    return float(abs(amp) ** 2 / (phi.norm ** 2 * psi.norm ** 2))


def bloch_from_state(psi: StateVector) -> BlochState:
    a, b = psi.normalized().array
    ab = np.conj(a) * b
    v = np.array([2 * ab.real, 2 * ab.imag, abs(a) ** 2 - abs(b) ** 2])
    n = float(np.linalg.norm(v))
    if n > 1.0:
        v = v / n
    return BlochState.of(v)


def state_from_bloch(v) -> StateVector:
    """cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, with real amp0 >= 0."""
    arr = v.array if isinstance(v, (BlochState, Direction)) else _as_vec(v)
    if abs(float(np.linalg.norm(arr)) - 1.0) > 1e-9:
        raise ValueError("state_from_bloch needs a unit vector")
    x, y, z = (float(c) for c in arr)
    a = math.sqrt(max(0.0, (1.0 + z) / 2.0))
    if a > 1e-4:
        b = complex(x, y) / (2.0 * a)
    else:
        b = complex(math.cos(math.atan2(y, x)), math.sin(math.atan2(y, x))) * math.sqrt(
            max(0.0, (1.0 - z) / 2.0)
        )
    return StateVector(complex(a, 0.0), b)


def _check_pair(p1: np.ndarray, p2: np.ndarray) -> None:
    if np.linalg.norm(p1 - p2) < DEGENERATE_TOL or np.linalg.norm(p1 + p2) < DEGENERATE_TOL:
        raise DegenerateInputError("degenerate pair: coincident or antipodal points")


def symmetric_circle(p1: Direction, p2: Direction) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(midpoint m, axis n, tangent n x m) of the circle equidistant from p1, p2."""
    a, b = p1.array, p2.array
    _check_pair(a, b)
    m = (a + b) / np.linalg.norm(a + b)
    n = (a - b) / np.linalg.norm(a - b)
    return m, n, np.cross(n, m)


def add_with_angle(p1: Direction, p2: Direction, phi: float) -> Direction:
    """P1 +_phi P2: the shortest-arc midpoint turned by phi about (P1 - P2).

    The rotation is right-handed about the unit vector from P2 to P1.
    """
    m, _, t = symmetric_circle(p1, p2)
    return Direction.from_vector(m * math.cos(phi) + t * math.sin(phi))


def circle_angle(p1: Direction, p2: Direction, p3: Direction) -> float:
    """Angle of p3 around the symmetric circle, measured from the midpoint."""
    m, _, t = symmetric_circle(p1, p2)
    v = p3.array
    return math.atan2(float(v @ t), float(v @ m))


def hilbert_circle_angle(alpha: float, separation: float) -> float:
    """Where the Hilbert sum lands on the symmetric circle.

    For two states whose Bloch points are ``separation`` apart and whose
    overlap has phase ``alpha``, |psi1> + |psi2> sits at angle gamma with
    tan(gamma) = sin(alpha) sin(s/2) / (cos(alpha) + cos(s/2)).
    """
    h = 0.5 * separation
    return math.atan2(math.sin(alpha) * math.sin(h), math.cos(alpha) + math.cos(h))


def hilbert_add_as_geometry(psi1: StateVector, psi2: StateVector) -> Direction:
    """Bloch direction of |psi1> + |psi2>."""
    d1 = bloch_from_state(psi1).direction()
    d2 = bloch_from_state(psi2).direction()
    _check_pair(d1.array, d2.array)
    total = StateVector(psi1.amp0 + psi2.amp0, psi1.amp1 + psi2.amp1)
    if total.norm < DEGENERATE_TOL * max(psi1.norm, psi2.norm):
        raise DegenerateInputError("states cancel")
    return bloch_from_state(total).direction()


def overlap_phase(psi1: StateVector, psi2: StateVector) -> float:
    """arg <psi1|psi2>."""
    amp = psi1.inner(psi2)
    return math.atan2(amp.imag, amp.real)


def arc_midpoint_state(psi1: StateVector, psi2: StateVector) -> StateVector:
    """|psi1> + exp(-i arg<psi1|psi2>) |psi2>, normalized inputs."""
    a = psi1.normalized()
    b = psi2.normalized()
    alpha = overlap_phase(a, b)
    return a + b.scaled(complex(math.cos(alpha), -math.sin(alpha)))


# ---------------------------------------------------------------------------
# measurement
# ---------------------------------------------------------------------------

def measure(state: BlochState, d: Direction, answer: Answer | bool) -> BlochState:
    """Raise every question (v -> 0), then give the answer along d."""
    yes = answer is Answer.YES or answer is True
    return BlochState.pure(d if yes else -d)


def sample_measure(state: BlochState, d: Direction, seed: int | np.random.Generator = 0
                   ) -> tuple[Answer, BlochState]:
    """Draw the answer with P(Yes) = (1 + v.d)/2 from a seeded generator."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    yes = bool(rng.random() < prob_yes(state, d))
    ans = Answer.YES if yes else Answer.NO
    return ans, measure(state, d, ans)


def binary_marginal(state: BlochState, d: Direction) -> WorldDistribution:
    """Two-world distribution (No, Yes) of the question along d."""
    p = min(1.0, max(0.0, prob_yes(state, d)))
    return WorldDistribution([1.0 - p, p])


def state_information(state: BlochState) -> float:
    """Information in the state: info_content along its own axis (0 when mixed)."""
    if state.length <= 1e-15:
        return 0.0
    return info_content(binary_marginal(state, state.direction()))


@dataclass(frozen=True)
class MeasurementBudget:
    lost: float
    gained: float
    after: BlochState


def measurement_budget(state: BlochState, d: Direction, answer: Answer | bool) -> MeasurementBudget:
    """Bits removed by raising everything and bits added by giving the answer."""
    raised = BlochState.mixed()
    after = measure(state, d, answer)
    lost = state_information(state) - state_information(raised)
    gained = info_content(binary_marginal(after, d)) - info_content(binary_marginal(raised, d))
    return MeasurementBudget(lost, gained, after)


def random_state_vector(rng: np.random.Generator) -> StateVector:
    """Haar-random normalized state from complex Gaussian amplitudes."""
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    z = z / np.linalg.norm(z)
    return StateVector(complex(z[0]), complex(z[1]))


def random_direction(rng: np.random.Generator) -> Direction:
    return Direction.from_vector(rng.normal(size=3))
