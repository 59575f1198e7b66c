"""Monte Carlo experiments and closed-form parameter sweeps.

``run_experiment`` repeats sample-then-estimate rounds for one or both
schemes and reports the mean quadratic error with its standard error, next
to the exact expected error as reference and the z-score of their
discrepancy. Each trial draws from a PCG64 generator seeded as

    trial_seed = master_seed XOR (trial_index * 0x9E3779B97F4A7C15) mod 2**64

so any partition of the trial range over parallel workers reproduces the
sequential run bit for bit: per-trial results depend only on
(master_seed, trial_index), and the reduction always runs over the
assembled trial-ordered array. When both schemes run, each uses a fresh
generator from the same trial seed, so per-scheme results are identical to
single-scheme runs with the same configuration.

``run_sweep`` evaluates a closed-form quantity on a simplex lattice and
returns a (rows, 4) table of (p1, p2, p3, value) in lexicographic lattice
order, matching the layout the command-line tool writes out.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channel import ChannelParams
from .error_analysis import (
    BudgetMode,
    ResourceBudget,
    Scheme,
    exact_error_entangled_closed,
    exact_error_separable_closed,
)
from .estimation import (
    estimate_entangled,
    estimate_separable,
    generator_for_task,
    sample_bell_counts,
    sample_separable_counts,
)


class SchemeSelection(Enum):
    SEPARABLE = "separable"
    ENTANGLED = "entangled"
    BOTH = "both"


@dataclass(frozen=True)
class ExperimentConfig:
    """One Monte Carlo experiment: channel, scheme(s), resources, seed.

    Resources come either from a coupled ``budget`` (required for BOTH,
    where the fair-comparison split applies) or, for single-scheme runs,
    directly as ``per_state`` probes or ``ebits`` pairs.
    """

    p_true: ChannelParams
    scheme: SchemeSelection
    trials: int
    master_seed: int
    budget: ResourceBudget | None = None
    per_state: int | None = None
    ebits: int | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ValueError("master seed must fit in an unsigned 64-bit integer")
        direct = [v for v in (self.per_state, self.ebits) if v is not None]
        if self.budget is not None and direct:
            raise ValueError(
                "give either a coupled budget or a direct allocation, not both"
            )
        if self.scheme is SchemeSelection.BOTH:
            if self.budget is None:
                raise ValueError(
                    "comparing both schemes requires a coupled qubit or "
                    "channel-use budget"
                )
        elif self.scheme is SchemeSelection.SEPARABLE:
            if self.budget is None and self.per_state is None:
                raise ValueError("separable runs need a budget or per-state count")
            if self.ebits is not None:
                raise ValueError("ebits does not apply to a separable-only run")
            if self.per_state is not None and self.per_state < 1:
                raise ValueError(f"per-state count must be >= 1, got {self.per_state}")
        else:
            if self.budget is None and self.ebits is None:
                raise ValueError("entangled runs need a budget or ebit count")
            if self.per_state is not None:
                raise ValueError("per-state does not apply to an entangled-only run")
            if self.ebits is not None and self.ebits < 1:
                raise ValueError(f"ebit count must be >= 1, got {self.ebits}")

    @property
    def separable_m(self) -> int | None:
        """Probes per reference state, when the separable scheme runs."""
        if self.scheme is SchemeSelection.ENTANGLED:
            return None
        if self.budget is not None:
            return self.budget.per_state
        return self.per_state

    @property
    def entangled_n(self) -> int | None:
        """Singlet pairs, when the entangled scheme runs."""
        if self.scheme is SchemeSelection.SEPARABLE:
            return None
        if self.budget is not None:
            return self.budget.ebits
        return self.ebits


@dataclass(frozen=True)
class SchemeSummary:
    """Monte Carlo result for one scheme next to its exact reference."""

    scheme: Scheme
    mean_error: float
    std_error: float
    trials: int
    reference: float
    z_score: float


@dataclass(frozen=True)
class ExperimentSummary:
    separable: SchemeSummary | None
    entangled: SchemeSummary | None

    def __iter__(self):
        return iter(
            s for s in (self.separable, self.entangled) if s is not None
        )


def _separable_trial_errors(
    p: tuple[float, float, float], m: int, master_seed: int, start: int, stop: int
) -> np.ndarray:
    params = ChannelParams(*p)
    out = np.empty(stop - start)
    for k in range(start, stop):
        rng = generator_for_task(master_seed, k)
        counts = sample_separable_counts(params, m, rng)
        out[k - start] = estimate_separable(counts, params).quadratic_error
    return out


def _entangled_trial_errors(
    p: tuple[float, float, float], n: int, master_seed: int, start: int, stop: int
) -> np.ndarray:
    params = ChannelParams(*p)
    out = np.empty(stop - start)
    for k in range(start, stop):
        rng = generator_for_task(master_seed, k)
        counts = sample_bell_counts(params, n, rng)
        out[k - start] = estimate_entangled(counts, params).quadratic_error
    return out


_TRIAL_FUNCS = {
    Scheme.SEPARABLE: _separable_trial_errors,
    Scheme.ENTANGLED: _entangled_trial_errors,
}


def _collect_errors(
    scheme: Scheme, cfg: ExperimentConfig, size: int, workers: int
) -> np.ndarray:
    func = _TRIAL_FUNCS[scheme]
    p = cfg.p_true.as_tuple()
    if workers <= 1:
        return func(p, size, cfg.master_seed, 0, cfg.trials)
    bounds = np.linspace(0, cfg.trials, workers + 1, dtype=int)
    chunks = [
        (p, size, cfg.master_seed, int(a), int(b))
        for a, b in zip(bounds[:-1], bounds[1:])
        if b > a
    ]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(func, *zip(*chunks)))
    return np.concatenate(results)


def _summarize(scheme: Scheme, errors: np.ndarray, reference: float) -> SchemeSummary:
    trials = len(errors)
    mean = float(errors.sum() / trials)
    if trials > 1:
        std_error = float(math.sqrt(np.var(errors, ddof=1) / trials))
    else:
        std_error = 0.0
    if std_error > 0.0:
        z = (mean - reference) / std_error
    elif mean == reference:
        z = 0.0
    else:
        z = math.copysign(math.inf, mean - reference)
    return SchemeSummary(
        scheme=scheme,
        mean_error=mean,
        std_error=std_error,
        trials=trials,
        reference=reference,
        z_score=z,
    )


def run_experiment(cfg: ExperimentConfig, workers: int = 1) -> ExperimentSummary:
    """Run the configured Monte Carlo experiment.

    ``workers`` > 1 distributes trials over a process pool; results are
    bit-identical to the sequential run regardless of the worker count.
    """
    separable = entangled = None
    m = cfg.separable_m
    if m is not None:
        errors = _collect_errors(Scheme.SEPARABLE, cfg, m, workers)
        reference = exact_error_separable_closed(cfg.p_true, m)
        separable = _summarize(Scheme.SEPARABLE, errors, reference)
    n = cfg.entangled_n
    if n is not None:
        errors = _collect_errors(Scheme.ENTANGLED, cfg, n, workers)
        reference = exact_error_entangled_closed(cfg.p_true, n)
        entangled = _summarize(Scheme.ENTANGLED, errors, reference)
    return ExperimentSummary(separable=separable, entangled=entangled)


class SweepQuantity(Enum):
    SEPARABLE_ERROR = "separable-error"
    ENTANGLED_ERROR = "entangled-error"
    DELTA_QUBITS = "delta-qubits"
    DELTA_USES = "delta-uses"


@dataclass(frozen=True)
class SweepSpec:
    """A closed-form quantity evaluated over a simplex lattice.

    ``p2_slice`` pins the middle parameter (None sweeps the full simplex).
    With ``scale_by_budget`` the budget-independent scaled quantity is
    emitted (m*f, n'*g, n*delta, or k*delta) and no budget may be given.
    """

    quantity: SweepQuantity
    grid_steps: int
    p2_slice: float | None = None
    scale_by_budget: bool = False

    def __post_init__(self):
        if self.grid_steps < 2:
            raise ValueError(f"grid-steps must be >= 2, got {self.grid_steps}")
        if self.p2_slice is not None and not 0.0 <= self.p2_slice <= 1.0:
            raise ValueError(
                f"slice value must lie in [0, 1], got {self.p2_slice}"
            )


def _sweep_lattice(spec: SweepSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Lattice coordinates in lexicographic (j1, j2, j3) order."""
    g = spec.grid_steps
    t = np.arange(g + 1, dtype=np.float64) / g
    blocks = []
    if spec.p2_slice is None:
        for j1 in range(g + 1):
            r = g - j1
            counts = np.arange(r + 1, 0, -1)
            j2 = np.repeat(np.arange(r + 1), counts)
            starts = np.cumsum(counts) - counts
            j3 = np.arange(counts.sum()) - np.repeat(starts, counts)
            blocks.append((np.full(j2.shape, j1), j2, j3))
        j1, j2, j3 = (np.concatenate(cols) for cols in zip(*blocks))
        return t[j1], t[j2], t[j3]
    limit = int(math.floor((1.0 - spec.p2_slice) * g + 1e-9))
    for j1 in range(limit + 1):
        j3 = np.arange(limit - j1 + 1)
        blocks.append((np.full(j3.shape, j1), j3))
    j1, j3 = (np.concatenate(cols) for cols in zip(*blocks))
    return t[j1], np.full(j1.shape, spec.p2_slice), t[j3]


def _validate_sweep_budget(spec: SweepSpec, budget: int | None) -> int | None:
    if spec.scale_by_budget:
        if budget is not None:
            raise ValueError("scaled sweeps are budget-independent; omit the budget")
        return None
    if budget is None:
        raise ValueError(
            "unscaled sweeps need a budget (per-state probes, ebits, qubits, "
            "or channel uses, depending on the quantity)"
        )
    if budget < 1:
        raise ValueError(f"budget must be positive, got {budget}")
    if spec.quantity is SweepQuantity.DELTA_QUBITS and budget % 6 != 0:
        raise ValueError(f"qubit budget must be divisible by 6, got {budget}")
    if spec.quantity is SweepQuantity.DELTA_USES and budget % 3 != 0:
        raise ValueError(f"channel-use budget must be divisible by 3, got {budget}")
    return budget


def run_sweep(spec: SweepSpec, budget: int | None = None) -> np.ndarray:
    """Evaluate the requested quantity on the lattice.

    ``budget`` is the scheme-appropriate resource count: probes per
    reference state for SEPARABLE_ERROR, singlet pairs for ENTANGLED_ERROR,
    total qubits (divisible by 6) for DELTA_QUBITS, and total channel uses
    (divisible by 3) for DELTA_USES. Scaled sweeps take no budget.

    Returns an array of shape (rows, 4) with columns p1, p2, p3, value in
    lexicographic lattice order.
    """
    budget = _validate_sweep_budget(spec, budget)
    p1, p2, p3 = _sweep_lattice(spec)
    s = p1 + p2 + p3
    e2 = p1 * p2 + p1 * p3 + p2 * p3
    variances = p1 * (1.0 - p1) + p2 * (1.0 - p2) + p3 * (1.0 - p3)
    if spec.quantity is SweepQuantity.SEPARABLE_ERROR:
        value = 1.5 * (variances - e2)
        if budget is not None:
            value = value / budget
    elif spec.quantity is SweepQuantity.ENTANGLED_ERROR:
        value = variances.copy()
        if budget is not None:
            value = value / budget
    elif spec.quantity is SweepQuantity.DELTA_QUBITS:
        value = 0.5 * (5.0 * (1.0 - s) * s + e2)
        if budget is not None:
            value = value / budget
    else:
        value = 0.5 * (7.0 * (1.0 - s) * s + 5.0 * e2)
        if budget is not None:
            value = value / budget
    return np.column_stack([p1, p2, p3, value])
