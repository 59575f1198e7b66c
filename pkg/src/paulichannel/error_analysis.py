"""Exact expected estimation errors and the entanglement advantage.

For both measurement schemes the expected quadratic error of the estimator
has a closed form:

    separable, m probes per reference state:
        f(m, p) = (3 / 2m) * [sum_i p_i (1 - p_i) - p1 p2 - p2 p3 - p1 p3]
    entangled, n' singlet pairs:
        g(n', p) = (1 / n') * sum_i p_i (1 - p_i)

Each closed form is paired with an independent brute-force enumeration over
all measurement outcomes (triple-binomial and multinomial expectations);
the pair cross-checks the algebra and catches regressions in either route.

Comparing the schemes at equal resources gives the advantage of the
entangled one. With n qubits total (n = 3m = 2n') the difference
f - g = (1 / 2n) * [5 (1-s) s + e2] is non-negative everywhere on the
simplex, where s = p1+p2+p3 and e2 = p1 p2 + p1 p3 + p2 p3. With k channel
uses (k = 3m = n') it is (1 / 2k) * [7 (1-s) s + 5 e2], larger still.
Scaling either by its budget gives a budget-independent surface whose
maxima are found by exhaustive lattice search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .channel import ChannelParams, PauliAxis, measurement_down_probability

# Enumeration caps: (cap+1)^3 triple-binomial terms and ~cap^3/6 multinomial
# compositions stay comfortably sub-second while far exceeding the sizes the
# cross-checks need.
SEPARABLE_ENUM_CAP = 64
ENTANGLED_ENUM_CAP = 64


class Scheme(Enum):
    SEPARABLE = "separable"
    ENTANGLED = "entangled"


class ErrorMethod(Enum):
    ENUMERATION = "enumeration"
    CLOSED_FORM = "closed_form"


class BudgetMode(Enum):
    """How resources are counted when comparing the two schemes."""

    QUBITS = "qubits"
    CHANNEL_USES = "uses"


@dataclass(frozen=True)
class ResourceBudget:
    """A total resource count with the fair-comparison allocation rule.

    In QUBITS mode the total n splits as n = 3m = 2n' (m probes per
    reference state for the separable scheme, n' singlet pairs for the
    entangled one), so n must be divisible by 6. In CHANNEL_USES mode the
    total k satisfies k = 3m = n' and must be divisible by 3.
    """

    mode: BudgetMode
    total: int

    def __post_init__(self):
        if self.total < 1:
            raise ValueError(f"budget must be positive, got {self.total}")
        if self.mode is BudgetMode.QUBITS and self.total % 6 != 0:
            raise ValueError(
                f"qubit budget must be divisible by 6, got {self.total}"
            )
        if self.mode is BudgetMode.CHANNEL_USES and self.total % 3 != 0:
            raise ValueError(
                f"channel-use budget must be divisible by 3, got {self.total}"
            )

    @property
    def per_state(self) -> int:
        """Probes per reference state, m."""
        return self.total // 3

    @property
    def ebits(self) -> int:
        """Singlet pairs, n'."""
        return self.total // 2 if self.mode is BudgetMode.QUBITS else self.total


@dataclass(frozen=True)
class ErrorReport:
    scheme: Scheme
    expected_error: float
    method: ErrorMethod

    def __post_init__(self):
        if self.expected_error < 0.0:
            raise ValueError("expected error cannot be negative")


def exact_error_separable_closed(p: ChannelParams, m: int) -> float:
    """Expected quadratic error of the separable scheme, closed form."""
    if m < 1:
        raise ValueError(f"probes per reference state must be >= 1, got {m}")
    bracket = (
        p.p1 * (1.0 - p.p1)
        + p.p2 * (1.0 - p.p2)
        + p.p3 * (1.0 - p.p3)
        - p.p1 * p.p2
        - p.p2 * p.p3
        - p.p1 * p.p3
    )
    return (3.0 / (2.0 * m)) * bracket


def exact_error_separable_enum(p: ChannelParams, m: int) -> float:
    """Expected quadratic error of the separable scheme, by enumeration.

    Averages the estimator's quadratic deviation over all (m+1)**3 count
    triples of the three independent binomials. Serves as the brute-force
    cross-check of :func:`exact_error_separable_closed`.
    """
    if m < 1:
        raise ValueError(f"probes per reference state must be >= 1, got {m}")
    if m > SEPARABLE_ENUM_CAP:
        raise ValueError(
            f"enumeration supports m <= {SEPARABLE_ENUM_CAP}, got {m}; "
            "use the closed form for larger budgets"
        )
    weights = [
        binomial_pmf(m, measurement_down_probability(p, axis))
        for axis in (PauliAxis.X, PauliAxis.Y, PauliAxis.Z)
    ]
    return float(
        _kernels.separable_error_sum(weights[0], weights[1], weights[2],
                                     p.p1, p.p2, p.p3)
    )


def exact_error_entangled_closed(p: ChannelParams, n_prime: int) -> float:
    """Expected quadratic error of the entangled scheme, closed form."""
    if n_prime < 1:
        raise ValueError(f"number of ebits must be >= 1, got {n_prime}")
    total = (
        p.p1 * (1.0 - p.p1)
        + p.p2 * (1.0 - p.p2)
        + p.p3 * (1.0 - p.p3)
    )
    return total / n_prime


def exact_error_entangled_enum(p: ChannelParams, n_prime: int) -> float:
    """Expected quadratic error of the entangled scheme, by enumeration.

    Multinomial expectation over all outcome compositions of n' Bell
    measurements; the brute-force cross-check of
    :func:`exact_error_entangled_closed`.
    """
    if n_prime < 1:
        raise ValueError(f"number of ebits must be >= 1, got {n_prime}")
    if n_prime > ENTANGLED_ENUM_CAP:
        raise ValueError(
            f"enumeration supports n' <= {ENTANGLED_ENUM_CAP}, got {n_prime}; "
            "use the closed form for larger budgets"
        )
    return float(_kernels.entangled_error_sum(p.p1, p.p2, p.p3, n_prime))


def _symmetric_terms(p: ChannelParams) -> tuple[float, float]:
    s = p.p1 + p.p2 + p.p3
    e2 = p.p1 * p.p2 + p.p1 * p.p3 + p.p2 * p.p3
    return s, e2


def delta_qubit_budget(p: ChannelParams, n: int) -> float:
    """Advantage of the entangled scheme at an equal qubit budget n.

    Returns f(n/3, p) - g(n/2, p) in its simplified form
    (1/2n) * [5 (1-s) s + e2] and verifies the simplification against the
    difference of the two closed forms before returning.
    """
    if n < 1:
        raise ValueError(f"budget must be positive, got {n}")
    if n % 6 != 0:
        raise ValueError(f"qubit budget must be divisible by 6, got {n}")
    s, e2 = _symmetric_terms(p)
    value = (0.5 / n) * (5.0 * (1.0 - s) * s + e2)
    direct = exact_error_separable_closed(p, n // 3) - exact_error_entangled_closed(
        p, n // 2
    )
    if abs(value - direct) > 1e-12:
        raise AssertionError(
            f"advantage simplification out of tolerance: {value!r} vs {direct!r}"
        )
    return value


def delta_channel_uses(p: ChannelParams, k: int) -> float:
    """Advantage of the entangled scheme at an equal number of channel uses k.

    Returns f(k/3, p) - g(k, p) in its simplified form
    (1/2k) * [7 (1-s) s + 5 e2].
    """
    if k < 1:
        raise ValueError(f"budget must be positive, got {k}")
    if k % 3 != 0:
        raise ValueError(f"channel-use budget must be divisible by 3, got {k}")
    s, e2 = _symmetric_terms(p)
    return (0.5 / k) * (7.0 * (1.0 - s) * s + 5.0 * e2)


def scaled_delta(p: ChannelParams, mode: BudgetMode) -> float:
    """Budget-independent advantage: n * delta or k * delta respectively."""
    lin, cross = _delta_coefficients(mode)
    s, e2 = _symmetric_terms(p)
    return 0.5 * (lin * (1.0 - s) * s + cross * e2)


def find_delta_maximum(
    mode: BudgetMode, grid_steps: int, p2_slice: float | None = None
) -> tuple[tuple[float, float, float], float]:
    """Exhaustively maximize the scaled advantage on a simplex lattice.

    The lattice is p_i = j_i / grid_steps with the simplex constraint; when
    ``p2_slice`` is given the middle parameter is pinned to that value and
    the search runs over (p1, p3) only. The scaled objective does not
    depend on the budget, so no resource count is needed. Ties resolve to
    the lexicographically smallest lattice point; lattice resolution bounds
    the argmax error at O(1/grid_steps).

    Returns ``((p1, p2, p3), value)`` at the best lattice point.
    """
    if grid_steps < 2:
        raise ValueError(f"grid-steps must be >= 2, got {grid_steps}")
    lin, cross = _delta_coefficients(mode)
    t = np.arange(grid_steps + 1, dtype=np.float64) / grid_steps
    if p2_slice is None:
        j1, j2, j3, value = _kernels.grid_search_full(lin, cross, t)
        return (float(t[j1]), float(t[j2]), float(t[j3])), float(value)
    if not 0.0 <= p2_slice <= 1.0:
        raise ValueError(f"slice value must lie in [0, 1], got {p2_slice}")
    limit = int(math.floor((1.0 - p2_slice) * grid_steps + 1e-9))
    j1, j3, value = _kernels.grid_search_slice(lin, cross, t, p2_slice, limit)
    return (float(t[j1]), float(p2_slice), float(t[j3])), float(value)


def _delta_coefficients(mode: BudgetMode) -> tuple[float, float]:
    if mode is BudgetMode.QUBITS:
        return 5.0, 1.0
    return 7.0, 5.0


def log_factorials(n: int) -> np.ndarray:
    """log(k!) for k = 0..n via the log-gamma function."""
    return np.array([math.lgamma(k + 1.0) for k in range(n + 1)])


def binomial_pmf(n: int, prob: float) -> np.ndarray:
    """Binomial(n, prob) pmf over counts 0..n, evaluated in log space.

    Log-gamma coefficients keep relative error near machine epsilon and
    avoid factorial overflow. The degenerate endpoints prob = 0 and
    prob = 1 return exact point masses (the 0**0 = 1 convention).
    """
    if not 0.0 <= prob <= 1.0:
        raise ValueError(f"success probability must lie in [0, 1], got {prob}")
    pmf = np.zeros(n + 1)
    if prob == 0.0:
        pmf[0] = 1.0
        return pmf
    if prob == 1.0:
        pmf[n] = 1.0
        return pmf
    lf = log_factorials(n)
    k = np.arange(n + 1)
    log_pmf = (
        lf[n] - lf[k] - lf[n - k]
        + k * math.log(prob)
        + (n - k) * math.log1p(-prob)
    )
    return np.exp(log_pmf)
