"""Single-qubit Pauli channel and the states it acts on.

The channel applies one of the three Pauli errors (bit flip, combined
bit+phase flip, phase flip) with probabilities ``p1, p2, p3`` and leaves
the qubit untouched otherwise. Everything here is expressed in the Bloch
parameterization: a qubit state is a real 3-vector with norm at most one,
and the channel acts on it as a diagonal linear scaling. Density matrices
are never materialized; the Bloch picture closes the dynamics.

The module also covers the channel's action on one half of a two-qubit
singlet, which it turns into a mixture of the four Bell states with
weights given directly by the error probabilities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

# Tolerance for the simplex constraint p1 + p2 + p3 <= 1. Estimates produced
# elsewhere may lie outside the simplex on purpose; validity is enforced only
# here, at channel construction.
SIMPLEX_TOL = 1e-12

# Tolerance on the squared Bloch norm, absorbing float drift from repeated
# channel applications.
BLOCH_NORM_TOL = 1e-9


class PauliAxis(Enum):
    """The three Pauli measurement axes, in the fixed order (X, Y, Z)."""

    X = 1
    Y = 2
    Z = 3


class BellState(Enum):
    """The four Bell states. The entangled scheme starts from PSI_MINUS."""

    PHI_MINUS = "phi_minus"
    PHI_PLUS = "phi_plus"
    PSI_PLUS = "psi_plus"
    PSI_MINUS = "psi_minus"


#: Fixed outcome order for Bell-measurement tallies and sampling.
BELL_ORDER: tuple[BellState, ...] = (
    BellState.PHI_MINUS,
    BellState.PHI_PLUS,
    BellState.PSI_PLUS,
    BellState.PSI_MINUS,
)


@dataclass(frozen=True)
class ChannelParams:
    """Error probabilities (p1, p2, p3) of a Pauli channel.

    p1 is the bit-flip probability, p2 the combined bit+phase flip, p3 the
    phase flip. The no-error probability p4 = 1 - p1 - p2 - p3 is derived.
    Construction rejects invalid parameters outright; there is no clamping.
    """

    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        for name in ("p1", "p2", "p3"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(
                    f"channel parameter {name} must be a finite non-negative "
                    f"probability, got {getattr(self, name)!r}"
                )
            object.__setattr__(self, name, value)
        total = self.p1 + self.p2 + self.p3
        if total > 1.0 + SIMPLEX_TOL:
            raise ValueError(
                "channel parameters exceed the probability simplex: "
                f"p1 + p2 + p3 = {total!r} > 1"
            )

    @property
    def p4(self) -> float:
        """Probability that the qubit passes through unchanged."""
        return max(0.0, 1.0 - self.p1 - self.p2 - self.p3)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.p1, self.p2, self.p3)


@dataclass(frozen=True)
class BlochVector:
    """A qubit state as a real 3-vector with |s| <= 1 (up to tolerance)."""

    s1: float
    s2: float
    s3: float

    def __post_init__(self):
        for name in ("s1", "s2", "s3"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"Bloch component {name} must be finite")
            object.__setattr__(self, name, value)
        norm_sq = self.s1 ** 2 + self.s2 ** 2 + self.s3 ** 2
        if norm_sq > 1.0 + BLOCH_NORM_TOL:
            raise ValueError(
                f"Bloch vector lies outside the unit ball: |s|^2 = {norm_sq!r}"
            )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.s1, self.s2, self.s3)

    def norm(self) -> float:
        return math.sqrt(self.s1 ** 2 + self.s2 ** 2 + self.s3 ** 2)


@dataclass(frozen=True)
class BellDistribution:
    """Probabilities of the four Bell-measurement outcomes."""

    probs: Mapping[BellState, float]

    def __post_init__(self):
        missing = [state for state in BellState if state not in self.probs]
        if missing:
            raise ValueError(f"distribution is missing Bell states: {missing}")
        total = 0.0
        for state in BELL_ORDER:
            q = self.probs[state]
            if q < -SIMPLEX_TOL or q > 1.0 + SIMPLEX_TOL:
                raise ValueError(
                    f"probability of {state.name} out of range: {q!r}"
                )
            total += q
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"Bell probabilities sum to {total!r}, not 1")

    def __getitem__(self, state: BellState) -> float:
        return self.probs[state]

    def as_tuple(self) -> tuple[float, float, float, float]:
        """Probabilities in the fixed order (phi-, phi+, psi+, psi-)."""
        return tuple(self.probs[state] for state in BELL_ORDER)


def bloch_scaling_factors(p: ChannelParams) -> tuple[float, float, float]:
    """Per-axis scaling the channel applies to a Bloch vector.

    The X component shrinks by 1 - 2(p2 + p3), Y by 1 - 2(p1 + p3), and
    Z by 1 - 2(p1 + p2); the identity part of the state is untouched.
    """
    return (
        1.0 - 2.0 * (p.p2 + p.p3),
        1.0 - 2.0 * (p.p1 + p.p3),
        1.0 - 2.0 * (p.p1 + p.p2),
    )


def apply_channel_bloch(p: ChannelParams, s: BlochVector) -> BlochVector:
    """Send a qubit state through the channel.

    Pure diagonal scaling in the Bloch picture; trace preservation is
    automatic because there is no affine offset.
    """
    c1, c2, c3 = bloch_scaling_factors(p)
    return BlochVector(c1 * s.s1, c2 * s.s2, c3 * s.s3)


def measurement_down_probability(p: ChannelParams, axis: PauliAxis) -> float:
    """Probability of the -1 outcome when measuring along ``axis``.

    Applies to a probe prepared as the +1 eigenstate of that axis and sent
    through the channel: the two error branches that anticommute with the
    measured operator flip the outcome. These are the binomial success
    probabilities of the separable scheme.
    """
    if axis is PauliAxis.X:
        return p.p2 + p.p3
    if axis is PauliAxis.Y:
        return p.p1 + p.p3
    return p.p1 + p.p2


def bell_output_distribution(p: ChannelParams) -> BellDistribution:
    """Bell-measurement outcome probabilities for a singlet probe.

    Each single-qubit error maps the singlet to exactly one Bell state, so
    the outcome distribution reads off the channel parameters directly:
    phi- with p1, phi+ with p2, psi+ with p3, and psi- otherwise.
    """
    return BellDistribution(
        {
            BellState.PHI_MINUS: p.p1,
            BellState.PHI_PLUS: p.p2,
            BellState.PSI_PLUS: p.p3,
            BellState.PSI_MINUS: p.p4,
        }
    )
