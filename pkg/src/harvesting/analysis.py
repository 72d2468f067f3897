"""Parameter sweeps, separation finders and extremum detection.

Rates in this module are always aσ = 2πTσ, so accelerated and thermal
scenarios evaluated at the same rate share the Unruh temperature.
"""

from __future__ import annotations

import concurrent.futures
import logging
import math
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from enum import StrEnum
from itertools import pairwise

import numpy as np

from .exceptions import ContractError, HarvestError, NoHarvestingError, UnboundedRangeError
from .harvest import DEFAULT_TOL, MIN_SEPARATION, DetectorParams, HarvestOutcome, Scenario, ScenarioKind, evaluate_scenario

logger = logging.getLogger(__name__)

THRESHOLD_PER_COUPLING = 1e-8
L_START = 0.1
L_CAP = 1e3
L_TOL = 1e-3
# Separation grid used to locate the sign change of the concurrence gap.
CRIT_LOG_POINTS = 12
CRIT_STEP = 0.05
DENSE_STEP = 1e-2


class SweepAxis(StrEnum):
    SEPARATION = "separation"
    RATE = "rate"


@dataclass(frozen=True)
class SweepSpec:
    """A one-parameter family of scenario evaluations.

    ``fixed`` is the rate when sweeping the separation and the separation
    when sweeping the rate.
    """

    scenario_kind: ScenarioKind
    det: DetectorParams
    axis: SweepAxis
    grid: tuple[float, ...]
    fixed: float
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        object.__setattr__(self, "scenario_kind", ScenarioKind(self.scenario_kind))
        object.__setattr__(self, "axis", SweepAxis(self.axis))
        object.__setattr__(self, "grid", tuple(float(v) for v in self.grid))
        if not self.grid:
            raise ContractError("sweep grid is empty")
        if any(b <= a for a, b in pairwise(self.grid)):
            raise ContractError("sweep grid must be strictly increasing")
        if not self.tol > 0:
            raise ContractError("tol must be positive")

    def point(self, value: float) -> tuple[float, float]:
        """``(rate, separation)`` at one grid value."""
        if self.axis is SweepAxis.SEPARATION:
            return self.fixed, value
        return value, self.fixed


@dataclass(frozen=True)
class SweepRow:
    axis_value: float
    p: float
    x_abs: float
    concurrence: float
    err: float

    @property
    def failed(self) -> bool:
        return math.isinf(self.err)

    @classmethod
    def from_outcome(cls, axis_value: float, outcome: HarvestOutcome) -> SweepRow:
        return cls(axis_value, outcome.p, outcome.x_abs, outcome.concurrence, outcome.err.concurrence)

    @classmethod
    def sentinel(cls, axis_value: float) -> SweepRow:
        nan = math.nan
        return cls(axis_value, nan, nan, nan, math.inf)


@dataclass(frozen=True)
class RootResult:
    value: float
    bracket: tuple[float, float]
    residual: float
    iterations: int


class ExtremumKind(StrEnum):
    MAXIMUM = "max"
    MINIMUM = "min"


@dataclass(frozen=True)
class Extremum:
    index: int
    kind: ExtremumKind
    abscissa: float
    value: float


# -----------------------------------------------------------------------------
# Point evaluation
# -----------------------------------------------------------------------------


def evaluate_point(kind: ScenarioKind, det: DetectorParams, rate: float, separation: float, tol: float = DEFAULT_TOL) -> HarvestOutcome:
    return evaluate_scenario(det, Scenario.from_acceleration(kind, rate, separation), tol=tol)


def row_task(task: tuple[ScenarioKind, DetectorParams, float, float, float, float]) -> SweepRow:
    kind, det, rate, separation, tol, axis_value = task
    try:
        return SweepRow.from_outcome(axis_value, evaluate_point(kind, det, rate, separation, tol))
    except HarvestError as exc:
        logger.warning("%s at rate=%g L=%g failed: %s", kind, rate, separation, exc)
        return SweepRow.sentinel(axis_value)


def parallel_map(fn: Callable, tasks: Sequence, threads: int = 1) -> list:
    """Apply ``fn`` to every task on a process pool, keeping task order.

    ``threads=1`` runs inline. ``fn`` and the tasks must be picklable.
    """
    if threads < 1:
        raise ContractError(f"threads must be at least 1, got {threads}")
    if threads == 1 or len(tasks) <= 1:
        return [fn(task) for task in tasks]

    results: list = [None] * len(tasks)
    with concurrent.futures.ProcessPoolExecutor(max_workers=min(threads, len(tasks))) as executor:
        future_to_index = {executor.submit(fn, task): i for i, task in enumerate(tasks)}
        for done, future in enumerate(concurrent.futures.as_completed(future_to_index), start=1):
            results[future_to_index[future]] = future.result()
            logger.debug("%d/%d tasks done", done, len(tasks))
    return results


def evaluate_points(
    kind: ScenarioKind,
    det: DetectorParams,
    points: Iterable[tuple[float, float, float]],
    *,
    tol: float = DEFAULT_TOL,
    threads: int = 1,
) -> list[SweepRow]:
    """Evaluate ``(axis_value, rate, separation)`` triples into rows, in input order."""
    tasks = [(ScenarioKind(kind), det, rate, sep, tol, axis_value) for axis_value, rate, sep in points]
    return parallel_map(row_task, tasks, threads)


def run_sweep(spec: SweepSpec, *, threads: int = 1) -> list[SweepRow]:
    """One row per grid value, in grid order; failed points carry ``err = inf``."""
    points = [(value, *spec.point(value)) for value in spec.grid]
    rows = evaluate_points(spec.scenario_kind, spec.det, points, tol=spec.tol, threads=threads)
    failed = sum(row.failed for row in rows)
    if failed:
        logger.warning("%d of %d sweep points failed", failed, len(rows))
    return rows


# -----------------------------------------------------------------------------
# Finders
# -----------------------------------------------------------------------------


def _bisect(predicate: Callable[[float], bool], lo: float, hi: float, tol: float) -> tuple[float, float, int]:
    """Shrink ``[lo, hi]`` keeping ``predicate(lo)`` true and ``predicate(hi)`` false."""
    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            lo = mid
        else:
            hi = mid
        iterations += 1
    return lo, hi, iterations


def find_l_max(
    scenario_kind: ScenarioKind,
    det: DetectorParams,
    rate: float,
    *,
    tol: float = DEFAULT_TOL,
    threshold: float | None = None,
) -> RootResult:
    """Largest separation at which the concurrence still exceeds ``threshold``.

    ``threshold`` defaults to 1e-8·λ². A rate of 0 selects the static
    vacuum pair whatever ``scenario_kind`` says.

    Raises:
        NoHarvestingError: no harvesting already at L = 0.1.
        UnboundedRangeError: still harvesting at L = 1e3.
    """
    kind = ScenarioKind(scenario_kind) if rate > 0 else ScenarioKind.VACUUM_STATIC
    threshold = THRESHOLD_PER_COUPLING * det.strength if threshold is None else threshold

    def excess(L: float) -> float:
        return evaluate_point(kind, det, rate, L, tol).concurrence - threshold

    if excess(L_START) <= 0:
        raise NoHarvestingError(f"{kind} at rate {rate} harvests nothing at L={L_START}")

    lo, hi = L_START, 2.0 * L_START
    while excess(hi) > 0:
        lo, hi = hi, 2.0 * hi
        if hi > L_CAP:
            raise UnboundedRangeError(f"{kind} at rate {rate} still harvests at L={lo}")
        logger.debug("L_max bracket grown to (%g, %g)", lo, hi)

    lo, hi, iterations = _bisect(lambda L: excess(L) > 0, lo, hi, L_TOL)
    value = 0.5 * (lo + hi)
    return RootResult(value, (lo, hi), abs(excess(value)), iterations)


def _crit_grid(step: float) -> Iterator[float]:
    """Log-spaced separations from MIN_SEPARATION up to ``step``, then every ``step`` up to L_CAP."""
    yield from (float(L) for L in np.geomspace(MIN_SEPARATION, step, CRIT_LOG_POINTS, endpoint=False))
    L = step
    while L <= L_CAP:
        yield L
        L += step


def find_l_crit(
    det: DetectorParams,
    a: float,
    *,
    tol: float = DEFAULT_TOL,
    step: float = CRIT_STEP,
) -> RootResult | None:
    """Separation below which accelerated detectors out-harvest thermal ones at T = a/2π.

    The scan starts at the smallest admissible separation. Returns ``None``
    when the accelerated concurrence never exceeds the thermal one on the
    harvesting-achievable range.
    """
    if not a > 0:
        raise ContractError(f"acceleration must be positive, got {a}")
    if not step > MIN_SEPARATION:
        raise ContractError(f"scan step must exceed {MIN_SEPARATION}, got {step}")

    def gap(L: float) -> tuple[float, bool]:
        acc = evaluate_point(ScenarioKind.PARALLEL_ACC, det, a, L, tol).concurrence
        th = evaluate_point(ScenarioKind.THERMAL_STATIC, det, a, L, tol).concurrence
        return acc - th, acc > 0 or th > 0

    last_positive = None
    for L in _crit_grid(step):
        value, harvesting = gap(L)
        if value > 0:
            last_positive = L
        elif last_positive is not None:
            lo, hi, iterations = _bisect(lambda x: gap(x)[0] > 0, last_positive, L, min(L_TOL, 0.01 * last_positive))
            root = 0.5 * (lo + hi)
            return RootResult(root, (lo, hi), abs(gap(root)[0]), iterations)
        if not harvesting:
            break
    logger.info("no critical separation at Ω=%g, a=%g", det.gap, a)
    return None


def l_max_task(task: tuple[ScenarioKind, DetectorParams, float, float]) -> RootResult | None:
    kind, det, rate, tol = task
    try:
        return find_l_max(kind, det, rate, tol=tol)
    except HarvestError as exc:
        logger.warning("L_max for %s at rate %g unavailable: %s", kind, rate, exc)
        return None


def l_crit_task(task: tuple[DetectorParams, float, float]) -> RootResult | None:
    det, rate, tol = task
    try:
        return find_l_crit(det, rate, tol=tol)
    except HarvestError as exc:
        logger.warning("L_crit at rate %g unavailable: %s", rate, exc)
        return None


def l_max_curve(
    scenario_kind: ScenarioKind, det: DetectorParams, rates: Sequence[float], *, tol: float = DEFAULT_TOL, threads: int = 1
) -> list[RootResult | None]:
    return parallel_map(l_max_task, [(ScenarioKind(scenario_kind), det, float(r), tol) for r in rates], threads)


def l_crit_curve(
    det: DetectorParams, rates: Sequence[float], *, tol: float = DEFAULT_TOL, threads: int = 1
) -> list[RootResult | None]:
    return parallel_map(l_crit_task, [(det, float(r), tol) for r in rates], threads)


def dense_scan(f: Callable[[float], float], lo: float, hi: float, step: float = DENSE_STEP) -> list[tuple[float, float]]:
    """Sample ``f`` on a uniform grid, endpoints included."""
    if not (hi > lo and step > 0):
        raise ContractError("dense_scan needs lo < hi and a positive step")
    count = int(math.floor((hi - lo) / step + 1e-9))
    return [(lo + i * step, f(lo + i * step)) for i in range(count + 1)]


def first_crossing(samples: Sequence[tuple[float, float]]) -> float | None:
    """Abscissa of the first sample that is <= 0 after a positive one."""
    seen_positive = False
    for x, y in samples:
        if y > 0:
            seen_positive = True
        elif seen_positive:
            return x
    return None


# -----------------------------------------------------------------------------
# Extrema
# -----------------------------------------------------------------------------


def detect_extrema(series: Sequence[tuple[float, float]], errors: Sequence[float] | None = None) -> list[Extremum]:
    """Interior extrema of a sampled curve.

    Steps no larger than twice the largest per-point error count as flat;
    an extremum sits where the remaining steps change sign, at the extreme
    sample between them.
    """
    if len(series) < 3:
        raise ContractError("at least three points are needed to detect extrema")
    xs = [float(x) for x, _ in series]
    ys = [float(y) for _, y in series]
    if any(b <= a for a, b in pairwise(xs)):
        raise ContractError("abscissae must be strictly increasing")
    noise = 2.0 * max(errors) if errors else 0.0

    steps = []
    for i, (left, right) in enumerate(pairwise(ys)):
        delta = right - left
        if abs(delta) > noise:
            steps.append((i, 1 if delta > 0 else -1))

    extrema = []
    for (i0, s0), (i1, s1) in pairwise(steps):
        if s0 == s1:
            continue
        window = range(i0 + 1, i1 + 1)
        if s0 > 0:
            pick = max(window, key=lambda j: ys[j])
            kind = ExtremumKind.MAXIMUM
        else:
            pick = min(window, key=lambda j: ys[j])
            kind = ExtremumKind.MINIMUM
        extrema.append(Extremum(pick, kind, xs[pick], ys[pick]))
    return extrema
