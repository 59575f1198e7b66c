"""Count-based estimators for the channel parameters, plus their samplers.

Two measurement schemes are covered. The separable scheme sends m probe
qubits through the channel for each of three reference states and records
how many measurements along the matching Pauli axis come out -1; a linear
inversion of the three empirical frequencies gives the estimate. The
entangled scheme spends one channel use per shared singlet pair and tallies
the four Bell-measurement outcomes; the first three relative frequencies
are the estimate directly.

Estimates are deliberately not clipped to the probability simplex: the
separable inversion can produce negative components, and the exact error
formulas average the unclipped estimator.

Samplers take an explicit ``numpy.random.Generator`` so every experiment is
reproducible from a recorded seed; no global random state is touched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import (
    BELL_ORDER,
    ChannelParams,
    PauliAxis,
    bell_output_distribution,
    measurement_down_probability,
)


@dataclass(frozen=True)
class MeasuredProbabilities:
    """Per-axis probabilities of the -1 outcome in the separable scheme."""

    P1: float
    P2: float
    P3: float

    def __post_init__(self):
        for name in ("P1", "P2", "P3"):
            value = float(getattr(self, name))
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class SeparableCounts:
    """Tallies of -1 outcomes for the three axes, out of m probes each."""

    i1: int
    i2: int
    i3: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"probes per reference state must be >= 1, got {self.m}")
        for name in ("i1", "i2", "i3"):
            count = getattr(self, name)
            if not 0 <= count <= self.m:
                raise ValueError(
                    f"count {name}={count} outside [0, m={self.m}]"
                )


@dataclass(frozen=True)
class BellCounts:
    """Tallies of the four Bell outcomes (phi-, phi+, psi+, psi-)."""

    i1: int
    i2: int
    i3: int
    i4: int
    n_prime: int

    def __post_init__(self):
        if self.n_prime < 1:
            raise ValueError(f"number of ebits must be >= 1, got {self.n_prime}")
        counts = (self.i1, self.i2, self.i3, self.i4)
        if any(c < 0 for c in counts):
            raise ValueError(f"Bell counts must be non-negative, got {counts}")
        if sum(counts) != self.n_prime:
            raise ValueError(
                f"Bell counts sum to {sum(counts)}, expected n_prime={self.n_prime}"
            )


@dataclass(frozen=True)
class EstimateResult:
    """A parameter estimate, optionally scored against the true parameters.

    ``p_est`` is unconstrained and may lie outside the simplex. The
    quadratic error sum_j (p_j - p_j_est)^2 is present only when the truth
    was supplied at estimation time.
    """

    p_est: tuple[float, float, float]
    quadratic_error: float | None = None

    def __post_init__(self):
        if self.quadratic_error is not None and self.quadratic_error < 0.0:
            raise ValueError("quadratic error cannot be negative")


def quadratic_deviation(
    p_est: tuple[float, float, float], p_true: ChannelParams
) -> float:
    """Sum of squared componentwise deviations of an estimate from truth."""
    return (
        (p_true.p1 - p_est[0]) ** 2
        + (p_true.p2 - p_est[1]) ** 2
        + (p_true.p3 - p_est[2]) ** 2
    )


def invert_probabilities(P: MeasuredProbabilities) -> tuple[float, float, float]:
    """Recover the channel parameters from the three -1 probabilities.

    Exact linear inversion: p = (P3-P1+P2, P1-P2+P3, P2-P3+P1) / 2. For
    inconsistent inputs the output can leave the simplex; it is returned
    as-is.
    """
    return (
        0.5 * (P.P3 - P.P1 + P.P2),
        0.5 * (P.P1 - P.P2 + P.P3),
        0.5 * (P.P2 - P.P3 + P.P1),
    )


def estimate_separable(
    counts: SeparableCounts, p_true: ChannelParams | None = None
) -> EstimateResult:
    """Estimate from separable-scheme counts by linear inversion.

    Equals ``invert_probabilities`` applied to the empirical frequencies
    i_j / m; negative components are preserved unclipped.
    """
    scale = 1.0 / (2.0 * counts.m)
    est = (
        scale * (counts.i3 - counts.i1 + counts.i2),
        scale * (counts.i1 - counts.i2 + counts.i3),
        scale * (counts.i2 - counts.i3 + counts.i1),
    )
    error = None if p_true is None else quadratic_deviation(est, p_true)
    return EstimateResult(est, error)


def estimate_entangled(
    counts: BellCounts, p_true: ChannelParams | None = None
) -> EstimateResult:
    """Estimate from Bell-outcome counts; always lies inside the simplex."""
    n = counts.n_prime
    est = (counts.i1 / n, counts.i2 / n, counts.i3 / n)
    error = None if p_true is None else quadratic_deviation(est, p_true)
    return EstimateResult(est, error)


def sample_separable_counts(
    p: ChannelParams, m: int, rng: np.random.Generator
) -> SeparableCounts:
    """Draw one realization of the separable scheme with m probes per axis.

    The three tallies are independent binomial draws, taken in the fixed
    axis order X, Y, Z, so identical generator states give identical counts.
    """
    if m < 1:
        raise ValueError(f"probes per reference state must be >= 1, got {m}")
    draws = [
        int(rng.binomial(m, measurement_down_probability(p, axis)))
        for axis in (PauliAxis.X, PauliAxis.Y, PauliAxis.Z)
    ]
    return SeparableCounts(draws[0], draws[1], draws[2], m)


def sample_bell_counts(
    p: ChannelParams, n_prime: int, rng: np.random.Generator
) -> BellCounts:
    """Draw one realization of the entangled scheme with n_prime ebits.

    A single multinomial draw over the Bell outcome distribution in the
    fixed order (phi-, phi+, psi+, psi-).
    """
    if n_prime < 1:
        raise ValueError(f"number of ebits must be >= 1, got {n_prime}")
    pvals = np.asarray(bell_output_distribution(p).as_tuple(), dtype=np.float64)
    # Normalize away float residue so the sum is exactly 1 for the sampler.
    pvals /= pvals.sum()
    i1, i2, i3, i4 = (int(c) for c in rng.multinomial(n_prime, pvals))
    return BellCounts(i1, i2, i3, i4, n_prime)


def seed_for_task(master_seed: int, task_index: int) -> int:
    """Derive an independent per-task seed from a master seed.

    Uses master_seed XOR (task_index * 0x9E3779B97F4A7C15) modulo 2**64,
    a fixed splitting rule that lets parallel tasks reproduce the exact
    streams of a sequential run.
    """
    if not 0 <= master_seed < 2 ** 64:
        raise ValueError("master seed must fit in an unsigned 64-bit integer")
    if task_index < 0:
        raise ValueError("task index must be non-negative")
    mask = (1 << 64) - 1
    return (master_seed ^ ((task_index * 0x9E3779B97F4A7C15) & mask)) & mask


def generator_for_task(master_seed: int, task_index: int) -> np.random.Generator:
    """Seeded PCG64 generator for one task of a multi-task experiment."""
    return np.random.Generator(np.random.PCG64(seed_for_task(master_seed, task_index)))


# Generator family used throughout; recorded in run manifests.
GENERATOR_ID = "numpy.random.PCG64"
