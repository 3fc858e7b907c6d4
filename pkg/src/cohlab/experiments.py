"""Reproducible Monte Carlo campaigns confronting sampled coherence
statistics with their closed-form predictions.

Determinism contract
--------------------
Trial ``i`` of a campaign draws from ``RandomStream(master_seed, i)`` (or a
documented per-work-item index), per-trial values are materialized in
trial order, and every reduction runs over that ordered array (means via
exact compensated summation).  Worker threads only fill disjoint chunks
whose partition depends on the problem alone, so reports are byte-identical
for any ``threads`` setting.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import analytics, measures
from .errors import (
    InvalidArgumentError,
    InvalidDimensionError,
    UnsupportedDimensionError,
    VacuousGuaranteeError,
)
from .sampler import (
    Decomposition,
    ginibre,
    positive_qr,
    sample_pure_in_subspace,
    sample_random_decomposition,
    sample_random_subspace,
)
from .streams import RandomStream, new_generator

MEASURE_KINDS = ("cr", "l1", "purity", "trdist")

_MEASURE_KERNELS = {
    "cr": measures.entropy_from_probs,
    "l1": measures.l1_from_probs,
    "purity": measures.purity_from_probs,
    "trdist": measures.trdist_mm_from_probs,
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Identity of a concentration campaign; everything a report depends on."""

    dim: int
    trials: int
    master_seed: int
    epsilons: tuple[float, ...] = ()
    histogram_bins: int = 50
    measure_kind: str = "cr"

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidDimensionError(f"dimension must be >= 1, got {self.dim}")
        if self.trials < 1:
            raise InvalidArgumentError(f"trials must be >= 1, got {self.trials}")
        if self.histogram_bins < 2:
            raise InvalidArgumentError(
                f"histogram_bins must be >= 2, got {self.histogram_bins}"
            )
        if self.measure_kind not in MEASURE_KINDS:
            raise InvalidArgumentError(
                f"measure_kind must be one of {MEASURE_KINDS}, got {self.measure_kind!r}"
            )
        eps = tuple(float(e) for e in self.epsilons)
        if any(e <= 0.0 for e in eps):
            raise InvalidArgumentError("epsilons must be strictly positive")
        if any(b <= a for a, b in zip(eps, eps[1:])):
            raise InvalidArgumentError("epsilons must be sorted strictly ascending")
        object.__setattr__(self, "epsilons", eps)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "trials": self.trials,
            "master_seed": self.master_seed,
            "epsilons": list(self.epsilons),
            "histogram_bins": self.histogram_bins,
            "measure_kind": self.measure_kind,
        }


@dataclass
class ConcentrationReport:
    """Empirical statistics of one campaign next to their analytic targets.

    For the l1 measure no closed-form mean exists; ``analytic_mean`` then
    holds the dimension-only upper bound (``analytic_kind`` is
    ``"l1_upper_bound"``) and tail frequencies are centered on the
    empirical mean (``tails_center`` is ``"empirical"``).  Tail entries
    carry the Levy bound for the measure, or None where no Lipschitz
    constant is established (l1, and cr below d = 3).
    """

    config: ExperimentConfig
    empirical_mean: float
    empirical_stderr: float
    empirical_variance: float
    analytic_mean: float
    analytic_kind: str
    tails_center: str
    histogram: list[tuple[float, float, int]]
    tails: list[tuple[float, float, float | None, float | None]]
    scaled_mean: float | None

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "empirical_mean": self.empirical_mean,
            "empirical_stderr": self.empirical_stderr,
            "empirical_variance": self.empirical_variance,
            "analytic_mean": self.analytic_mean,
            "analytic_kind": self.analytic_kind,
            "tails_center": self.tails_center,
            "histogram": [[lo, hi, count] for lo, hi, count in self.histogram],
            "tails": [[eps, freq, raw, eff] for eps, freq, raw, eff in self.tails],
            "scaled_mean": self.scaled_mean,
        }

    def scaled_histogram(self) -> list[tuple[float, float, int]]:
        """Histogram with bin edges divided by ln d (cr campaigns only)."""
        if self.config.measure_kind != "cr" or self.config.dim < 2:
            raise InvalidArgumentError("scaled histograms only apply to cr at d >= 2")
        log_d = math.log(self.config.dim)
        return [(lo / log_d, hi / log_d, count) for lo, hi, count in self.histogram]

    def tail_bound_flags(self) -> list[tuple[float, float, float]]:
        """Tail entries exceeding a non-vacuous bound (statistical red flags)."""
        return [
            (eps, freq, eff)
            for eps, freq, _, eff in self.tails
            if eff is not None and eff < 1.0 and freq > eff
        ]


def _chunk_size(dim: int) -> int:
    # fixed function of the problem so chunk boundaries (and therefore
    # reductions) cannot depend on the worker count
    return max(16, min(4096, (1 << 21) // max(2 * dim, 1)))


def _unitary_chunk(dim: int) -> int:
    return max(8, min(2048, (1 << 20) // max(dim * dim, 1)))


def _run_chunked(starts: Sequence[int], fill, threads: int) -> None:
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(fill, starts))
    else:
        for start in starts:
            fill(start)


def _haar_prob_rows(master_seed: int, start: int, stop: int, dim: int) -> np.ndarray:
    """Diagonal probabilities of Haar states for trials [start, stop).

    Trial i draws from stream (master_seed, i); the result row equals
    ``diagonal_part(sample_haar_pure(dim, RandomStream(master_seed, i)))``.
    """
    z = np.empty((stop - start, 2 * dim))
    for row, trial in enumerate(range(start, stop)):
        z[row] = new_generator(master_seed, trial).standard_normal(2 * dim)
    amps = z.view(np.complex128)
    w = amps.real**2 + amps.imag**2
    amps /= np.sqrt(w.sum(axis=1))[:, None]
    return amps.real**2 + amps.imag**2


def _haar_unitary_rows(master_seed: int, start: int, stop: int, dim: int) -> np.ndarray:
    """Stacked Haar unitaries for trials [start, stop), one per stream."""
    z = np.empty((stop - start, dim, 2 * dim))
    for row, trial in enumerate(range(start, stop)):
        z[row] = new_generator(master_seed, trial).standard_normal((dim, 2 * dim))
    return positive_qr(z.view(np.complex128) / np.sqrt(2.0))


def _trial_values(config: ExperimentConfig, threads: int) -> np.ndarray:
    kernel = _MEASURE_KERNELS[config.measure_kind]
    values = np.empty(config.trials)
    size = _chunk_size(config.dim)

    def fill(start: int) -> None:
        stop = min(start + size, config.trials)
        probs = _haar_prob_rows(config.master_seed, start, stop, config.dim)
        values[start:stop] = kernel(probs)

    _run_chunked(range(0, config.trials, size), fill, threads)
    return values


def _analytic_target(kind: str, dim: int) -> tuple[float, str]:
    if kind == "cr":
        return analytics.expected_cr(dim), "mean"
    if kind == "purity":
        return analytics.expected_classical_purity(dim), "mean"
    if kind == "trdist":
        return analytics.expected_trace_distance(dim), "mean"
    return analytics.typical_l1_upper(dim), "l1_upper_bound"


def _tail_bound(kind: str, dim: int, eps: float) -> analytics.BoundValue | None:
    if kind == "cr":
        return analytics.levy_bound_cr(dim, eps) if dim >= 3 else None
    if kind == "purity":
        return analytics.levy_bound_purity(dim, eps)
    if kind == "trdist":
        return analytics.levy_bound_trdist(dim, eps)
    return None  # no Levy bound is stated for the l1 measure


def run_concentration(config: ExperimentConfig, threads: int = 1) -> ConcentrationReport:
    """Run one concentration campaign of ``config.trials`` independent trials.

    Tail frequencies count ``|value - center| > eps`` where the center is
    the analytic mean (the theorems' centering), except for l1 where it is
    the empirical mean.  cr histograms use the fixed range [0, ln d] so
    campaigns across dimensions are comparable after scaling.
    """
    values = _trial_values(config, threads)
    n = config.trials
    mean = math.fsum(values) / n
    variance = math.fsum((values - mean) ** 2) / (n - 1) if n > 1 else 0.0
    stderr = math.sqrt(variance / n)

    analytic_mean, analytic_kind = _analytic_target(config.measure_kind, config.dim)
    center = mean if analytic_kind == "l1_upper_bound" else analytic_mean
    tails_center = "empirical" if analytic_kind == "l1_upper_bound" else "analytic"

    tails = []
    for eps in config.epsilons:
        freq = float(np.count_nonzero(np.abs(values - center) > eps)) / n
        bound = _tail_bound(config.measure_kind, config.dim, eps)
        if bound is None:
            tails.append((eps, freq, None, None))
        else:
            tails.append((eps, freq, bound.raw, bound.effective))

    if config.measure_kind == "cr":
        lo, hi = 0.0, math.log(config.dim)
        if hi <= lo:  # d = 1: all values are exactly 0
            hi = 1.0
    else:
        lo, hi = float(values.min()), float(values.max())
        if hi <= lo:
            hi = lo + 1.0
    counts, edges = np.histogram(values, bins=config.histogram_bins, range=(lo, hi))
    histogram = [
        (float(edges[i]), float(edges[i + 1]), int(counts[i]))
        for i in range(counts.size)
    ]

    scaled = None
    if config.measure_kind == "cr" and config.dim >= 2:
        scaled = mean / math.log(config.dim)

    return ConcentrationReport(
        config=config,
        empirical_mean=mean,
        empirical_stderr=stderr,
        empirical_variance=variance,
        analytic_mean=analytic_mean,
        analytic_kind=analytic_kind,
        tails_center=tails_center,
        histogram=histogram,
        tails=tails,
        scaled_mean=scaled,
    )


def reproduce_fig1(
    dims: Sequence[int],
    trials: int = 10**5,
    master_seed: int = 0,
    histogram_bins: int = 50,
    threads: int = 1,
) -> list[ConcentrationReport]:
    """One cr campaign per dimension, for scaled-coherence frequency plots.

    Defaults to 1e5 trials per dimension; histograms span [0, ln d] so the
    curves are directly comparable after dividing the edges by ln d.
    """
    if not dims:
        raise InvalidArgumentError("dims must be nonempty")
    return [
        run_concentration(
            ExperimentConfig(
                dim=d,
                trials=trials,
                master_seed=master_seed,
                histogram_bins=histogram_bins,
                measure_kind="cr",
            ),
            threads=threads,
        )
        for d in dims
    ]


@dataclass
class SubspaceFloorReport:
    """Sampled check of the coherent-subspace floor on one random subspace.

    ``violations`` counts sampled states with C_r below the threshold
    H_d - 1 - eps.  This is a sampled necessary check of the guarantee,
    not its net-based sufficient construction (net sizes are beyond
    astronomical; see :func:`cohlab.analytics.net_log_size`).
    """

    dim: int
    eps: float
    sub_dim: int
    small_d_warning: bool
    threshold: float
    n_states: int
    min_observed_cr: float
    violations: int
    master_seed: int

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "eps": self.eps,
            "sub_dim": self.sub_dim,
            "small_d_warning": self.small_d_warning,
            "threshold": self.threshold,
            "n_states": self.n_states,
            "min_observed_cr": self.min_observed_cr,
            "violations": self.violations,
            "master_seed": self.master_seed,
        }


def run_subspace_floor(
    dim: int,
    eps: float,
    n_states: int,
    master_seed: int,
    threads: int = 1,
) -> SubspaceFloorReport:
    """Sample one random subspace and many Haar states inside it.

    The subspace draws from stream (master_seed, 0); state j draws from
    stream (master_seed, j + 1).  Raises
    :class:`~cohlab.errors.VacuousGuaranteeError` when the dimension
    formula yields s = 0.
    """
    if n_states < 1:
        raise InvalidArgumentError(f"n_states must be >= 1, got {n_states}")
    sdim = analytics.subspace_dimension(dim, eps)
    if sdim.s < 1:
        raise VacuousGuaranteeError(
            f"subspace dimension formula gives s = 0 at dim={dim}, eps={eps:.6g}; "
            f"a nontrivial guarantee (s >= 2) requires "
            f"d >= {analytics.MIN_DIM_FOR_NONTRIVIAL_SUBSPACE}"
        )
    threshold = analytics.subspace_threshold(dim, eps)
    basis = sample_random_subspace(dim, sdim.s, RandomStream(master_seed, 0))
    frame_t = basis.columns.T.copy()

    values = np.empty(n_states)
    size = _chunk_size(dim)

    def fill(start: int) -> None:
        stop = min(start + size, n_states)
        coeff = np.empty((stop - start, 2 * sdim.s))
        for row, state_idx in enumerate(range(start, stop)):
            coeff[row] = new_generator(master_seed, state_idx + 1).standard_normal(
                2 * sdim.s
            )
        camps = coeff.view(np.complex128)
        w = camps.real**2 + camps.imag**2
        camps /= np.sqrt(w.sum(axis=1))[:, None]
        amps = camps @ frame_t
        values[start:stop] = measures.entropy_from_probs(amps.real**2 + amps.imag**2)

    _run_chunked(range(0, n_states, size), fill, threads)

    return SubspaceFloorReport(
        dim=dim,
        eps=eps,
        sub_dim=sdim.s,
        small_d_warning=sdim.small_d_warning,
        threshold=threshold,
        n_states=n_states,
        min_observed_cr=float(values.min()),
        violations=int(np.count_nonzero(values < threshold)),
        master_seed=master_seed,
    )


@dataclass
class DecompositionCheckReport:
    """Sampled convex-roof check: ensemble averages of states in a random
    subspace against the coherence floor."""

    dim: int
    eps: float
    sub_dim: int
    threshold: float
    n_ensembles: int
    ensemble_size: int
    m_out: int
    n_redecompositions: int
    min_average: float
    violations: int
    master_seed: int

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "eps": self.eps,
            "sub_dim": self.sub_dim,
            "threshold": self.threshold,
            "n_ensembles": self.n_ensembles,
            "ensemble_size": self.ensemble_size,
            "m_out": self.m_out,
            "n_redecompositions": self.n_redecompositions,
            "min_average": self.min_average,
            "violations": self.violations,
            "master_seed": self.master_seed,
        }


def run_decomposition_check(
    dim: int,
    eps: float,
    n_ensembles: int,
    m_out: int,
    master_seed: int,
    ensemble_size: int = 2,
    n_redecompositions: int = 5,
) -> DecompositionCheckReport:
    """Check that sampled decomposition averages stay above the floor.

    Mixed states are built as random ensembles of Haar states inside one
    random subspace (stream 0); ensemble e consumes stream e + 1 for its
    states, weights, and re-decompositions.  Every member of every sampled
    re-decomposition lies in the subspace, so each average diagonal entropy
    should exceed H_d - 1 - eps; ``violations`` counts sampled averages
    below it.
    """
    if n_ensembles < 1:
        raise InvalidArgumentError(f"n_ensembles must be >= 1, got {n_ensembles}")
    if ensemble_size < 1:
        raise InvalidArgumentError(f"ensemble_size must be >= 1, got {ensemble_size}")
    if m_out < ensemble_size:
        raise InvalidArgumentError(
            f"m_out must be >= ensemble_size {ensemble_size}, got {m_out}"
        )
    if n_redecompositions < 0:
        raise InvalidArgumentError("n_redecompositions must be >= 0")
    sdim = analytics.subspace_dimension(dim, eps)
    if sdim.s < 2:
        raise VacuousGuaranteeError(
            f"mixed-state ensembles need a subspace of dimension s >= 2, got "
            f"s = {sdim.s} at dim={dim}, eps={eps:.6g}; this requires "
            f"d >= {analytics.MIN_DIM_FOR_NONTRIVIAL_SUBSPACE}"
        )
    threshold = analytics.subspace_threshold(dim, eps)
    basis = sample_random_subspace(dim, sdim.s, RandomStream(master_seed, 0))

    averages = []
    for ensemble_idx in range(n_ensembles):
        stream = RandomStream(master_seed, ensemble_idx + 1)
        states = [
            sample_pure_in_subspace(basis, stream) for _ in range(ensemble_size)
        ]
        raw_w = stream.generator.standard_exponential(ensemble_size)
        dec = Decomposition(weights=raw_w / raw_w.sum(), states=states)
        averages.append(measures.decomposition_average_coherence(dec))
        for _ in range(n_redecompositions):
            redec = sample_random_decomposition(dec, m_out, stream)
            averages.append(measures.decomposition_average_coherence(redec))

    averages_arr = np.asarray(averages)
    return DecompositionCheckReport(
        dim=dim,
        eps=eps,
        sub_dim=sdim.s,
        threshold=threshold,
        n_ensembles=n_ensembles,
        ensemble_size=ensemble_size,
        m_out=m_out,
        n_redecompositions=n_redecompositions,
        min_average=float(averages_arr.min()),
        violations=int(np.count_nonzero(averages_arr < threshold)),
        master_seed=master_seed,
    )


@dataclass
class MatrixIntegralReport:
    """Monte Carlo twirl of the dephasing map against its closed form."""

    dim: int
    n_unitaries: int
    master_seed: int
    max_abs_deviation: float
    tolerance: float
    ok: bool

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "n_unitaries": self.n_unitaries,
            "master_seed": self.master_seed,
            "max_abs_deviation": self.max_abs_deviation,
            "tolerance": self.tolerance,
            "ok": self.ok,
        }


def run_matrix_integral_check(
    dim: int,
    n_unitaries: int,
    master_seed: int,
    x: np.ndarray | None = None,
) -> MatrixIntegralReport:
    """Average U^dag Pi(U X U^dag) U over Haar unitaries, entrywise.

    For the dephasing map Pi the Haar twirl has the closed form
    (Tr X * I + X) / (d + 1).  X defaults to the first basis projector;
    any Hermitian d x d matrix may be supplied.  Dense averaging, so only
    2 <= d <= 16 is supported.  The tolerance is the 5/sqrt(n) Monte Carlo
    scale.
    """
    if not 2 <= dim <= 16:
        raise UnsupportedDimensionError(
            f"dense matrix averaging supports 2 <= d <= 16, got {dim}"
        )
    if n_unitaries < 1:
        raise InvalidArgumentError(f"n_unitaries must be >= 1, got {n_unitaries}")
    if x is None:
        x = np.zeros((dim, dim), dtype=np.complex128)
        x[0, 0] = 1.0
    else:
        x = np.ascontiguousarray(x, dtype=np.complex128)
        if x.shape != (dim, dim):
            raise InvalidArgumentError(f"x must be {dim} x {dim}, got {x.shape}")
        if np.abs(x - x.conj().T).max() > 1e-12:
            raise InvalidArgumentError("x must be Hermitian")

    closed_form = (np.trace(x).real * np.eye(dim) + x) / (dim + 1.0)

    total = np.zeros((dim, dim), dtype=np.complex128)
    size = _unitary_chunk(dim)
    for start in range(0, n_unitaries, size):
        stop = min(start + size, n_unitaries)
        u = _haar_unitary_rows(master_seed, start, stop, dim)
        m = u @ x @ u.conj().transpose(0, 2, 1)
        pdiag = np.diagonal(m, axis1=-2, axis2=-1).real
        total += np.einsum("nji,nj,njk->ik", u.conj(), pdiag, u)

    deviation = float(np.abs(total / n_unitaries - closed_form).max())
    tolerance = 5.0 / math.sqrt(n_unitaries)
    return MatrixIntegralReport(
        dim=dim,
        n_unitaries=n_unitaries,
        master_seed=master_seed,
        max_abs_deviation=deviation,
        tolerance=tolerance,
        ok=deviation < tolerance,
    )


@dataclass
class InequalitySweepReport:
    """Violation counts of the deterministic per-state inequalities."""

    dim: int
    trials: int
    master_seed: int
    l1_purity_violations: int
    fannes_violations: int
    cr_range_violations: int
    atol: float

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "trials": self.trials,
            "master_seed": self.master_seed,
            "l1_purity_violations": self.l1_purity_violations,
            "fannes_violations": self.fannes_violations,
            "cr_range_violations": self.cr_range_violations,
            "atol": self.atol,
        }


def _binary_entropy_rows(t: np.ndarray) -> np.ndarray:
    safe_t = np.where(t > 0.0, t, 1.0)
    safe_1mt = np.where(t < 1.0, 1.0 - t, 1.0)
    return -(t * np.log(safe_t) + (1.0 - t) * np.log(safe_1mt))


def run_inequality_sweep(
    dim: int,
    trials: int,
    master_seed: int,
    threads: int = 1,
    atol: float = 1e-10,
) -> InequalitySweepReport:
    """Count violations of three per-state theorems over sampled states.

    Checks, per Haar state: C_l1 <= sqrt(d(d-1)(1-P)); C_r >= the Fannes
    floor; 0 <= C_r <= ln d.  All counts are expected to be exactly zero
    (``atol`` absorbs float rounding only).
    """
    if dim < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {dim}")
    if trials < 1:
        raise InvalidArgumentError(f"trials must be >= 1, got {trials}")
    log_d = math.log(dim)
    size = _chunk_size(dim)
    starts = list(range(0, trials, size))
    partials: list[tuple[int, int, int] | None] = [None] * len(starts)

    def fill(chunk_idx: int) -> None:
        start = starts[chunk_idx]
        stop = min(start + size, trials)
        probs = _haar_prob_rows(master_seed, start, stop, dim)
        c_r = measures.entropy_from_probs(probs)
        c_l1 = measures.l1_from_probs(probs)
        purity = measures.purity_from_probs(probs)
        trdist = measures.trdist_mm_from_probs(probs)
        l1_bound = np.sqrt(dim * (dim - 1) * np.clip(1.0 - purity, 0.0, None))
        if dim == 1:
            floor = np.zeros_like(c_r)
        else:
            t = trdist / 2.0
            floor = (1.0 - t) * log_d - _binary_entropy_rows(t)
        partials[chunk_idx] = (
            int(np.count_nonzero(c_l1 > l1_bound + atol)),
            int(np.count_nonzero(c_r < floor - atol)),
            int(np.count_nonzero((c_r < -atol) | (c_r > log_d + atol))),
        )

    _run_chunked(range(len(starts)), fill, threads)
    totals = [sum(p[i] for p in partials) for i in range(3)]
    return InequalitySweepReport(
        dim=dim,
        trials=trials,
        master_seed=master_seed,
        l1_purity_violations=totals[0],
        fannes_violations=totals[1],
        cr_range_violations=totals[2],
        atol=atol,
    )


def first_prob_samples(dim: int, trials: int, master_seed: int) -> np.ndarray:
    """First diagonal probability of each sampled Haar state, in trial order."""
    if dim < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {dim}")
    out = np.empty(trials)
    size = _chunk_size(dim)
    for start in range(0, trials, size):
        stop = min(start + size, trials)
        out[start:stop] = _haar_prob_rows(master_seed, start, stop, dim)[:, 0]
    return out


def ks_distance_u11(dim: int, trials: int, master_seed: int) -> float:
    """Kolmogorov-Smirnov distance of sampled |U_11| to its exact law.

    The magnitude of a Haar-unitary entry has CDF 1 - (1 - r^2)^(d-1).
    """
    if dim < 2:
        raise InvalidDimensionError(f"the entry law needs d >= 2, got {dim}")
    r = np.empty(trials)
    size = _unitary_chunk(dim)
    for start in range(0, trials, size):
        stop = min(start + size, trials)
        u = _haar_unitary_rows(master_seed, start, stop, dim)
        r[start:stop] = np.abs(u[:, 0, 0])
    r.sort()
    cdf = 1.0 - (1.0 - r * r) ** (dim - 1)
    grid = np.arange(trials, dtype=np.float64)
    d_plus = float(((grid + 1.0) / trials - cdf).max())
    d_minus = float((cdf - grid / trials).max())
    return max(d_plus, d_minus)


@dataclass
class CheckResult:
    """One named pass/fail outcome of a verification suite."""

    name: str
    passed: bool
    detail: str


def verify_integral(d_max: int = 10**4) -> list[CheckResult]:
    """Cross-formula identities: Beta route for all d <= d_max, quadrature to 50."""
    max_beta_diff = 0.0
    for d in range(2, d_max + 1):
        diff = abs(analytics.expected_cr(d) - analytics.expected_cr_via_beta(d))
        if diff > max_beta_diff:
            max_beta_diff = diff
    max_quad_diff = 0.0
    for d in range(2, 51):
        diff = abs(analytics.expected_cr(d) - analytics.expected_cr_via_quadrature(d))
        if diff > max_quad_diff:
            max_quad_diff = diff
    return [
        CheckResult(
            name=f"beta-identity[2..{d_max}]",
            passed=max_beta_diff <= 1e-10,
            detail=f"max |closed - beta route| = {max_beta_diff:.3e} (tol 1e-10)",
        ),
        CheckResult(
            name="quadrature-identity[2..50]",
            passed=max_quad_diff <= 1e-6,
            detail=f"max |closed - quadrature| = {max_quad_diff:.3e} (tol 1e-6)",
        ),
    ]


def verify_matrix(
    master_seed: int,
    dims: Sequence[int] = (2, 4, 8),
    n_unitaries: int = 10**5,
) -> list[CheckResult]:
    """Monte Carlo dephasing twirl against (Tr X I + X)/(d+1) per dimension."""
    results = []
    for d in dims:
        report = run_matrix_integral_check(d, n_unitaries, master_seed)
        results.append(
            CheckResult(
                name=f"matrix-integral[d={d}]",
                passed=report.ok,
                detail=(
                    f"max entrywise deviation {report.max_abs_deviation:.3e} "
                    f"(tol {report.tolerance:.3e}, n={n_unitaries})"
                ),
            )
        )
    return results


def verify_inequalities(
    master_seed: int,
    dims: Sequence[int] = (2, 3, 10, 100),
    trials: int = 10**4,
) -> list[CheckResult]:
    """Per-state theorem sweeps; every violation count must be zero."""
    results = []
    for d in dims:
        report = run_inequality_sweep(d, trials, master_seed)
        total = (
            report.l1_purity_violations
            + report.fannes_violations
            + report.cr_range_violations
        )
        results.append(
            CheckResult(
                name=f"inequalities[d={d}]",
                passed=total == 0,
                detail=(
                    f"violations l1/purity={report.l1_purity_violations} "
                    f"fannes={report.fannes_violations} "
                    f"cr-range={report.cr_range_violations} over {trials} states"
                ),
            )
        )
    return results


def verify_moments(
    master_seed: int,
    dims: Sequence[int] = (2, 10, 100),
    trials: int = 10**5,
    ks_trials: int = 10**5,
    max_sigma: float = 4.0,
    ks_tolerance: float = 0.01,
) -> list[CheckResult]:
    """Outcome-probability moments against Beta(1, d-1), plus the |U_11| law."""
    results = []
    for d in dims:
        p1 = first_prob_samples(d, trials, master_seed)
        for k in (1, 2):
            sample = p1 if k == 1 else p1 * p1
            mean = float(sample.mean())
            stderr = float(sample.std(ddof=1)) / math.sqrt(trials)
            target = analytics.haar_prob_moment(d, k)
            z = abs(mean - target) / stderr
            results.append(
                CheckResult(
                    name=f"moment[d={d},k={k}]",
                    passed=z <= max_sigma,
                    detail=(
                        f"mean {mean:.6e} vs {target:.6e}, "
                        f"z = {z:.2f} (max {max_sigma})"
                    ),
                )
            )
    ks = ks_distance_u11(2, ks_trials, master_seed)
    results.append(
        CheckResult(
            name="ks-u11[d=2]",
            passed=ks < ks_tolerance,
            detail=f"KS distance {ks:.4f} (tol {ks_tolerance}) over {ks_trials} unitaries",
        )
    )
    return results
