"""Floating-point cross-validation of symbolic verdicts.

Integrates dz/ds = e^{i*phi} * z * p(z) along rays s in [0, R] of the complex
time plane with an adaptive Dormand-Prince 5(4) pair, watching for blowup
(|z_i| > 1e8) and near-zero (|z_i| < 1e-8) events; thresholds are checked
before every right-hand-side evaluation so negative exponents never divide by
a vanishing coordinate.  A disc scan aggregates rays at equally spaced
angles.  The proximity-function estimator averages log+|f| over circle
samples, which for entire f estimates the Nevanlinna characteristic.

Numeric evidence never overrides a symbolic verdict; disagreements are
diagnostics for the caller.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .laurent import OdeSystem

BLOWUP_THRESHOLD = 1e8
NEAR_ZERO_THRESHOLD = 1e-8

_MAX_STEPS = 2_000_000


@dataclass(frozen=True)
class RaySpec:
    """One integration ray: initial point, direction angle, radius, tolerances.

    max_step, when given, lowers the step ceiling below the default R/64
    (useful for resolution studies); it can never raise it, so Completed
    outcomes always carry at least 64 interior samples.
    """

    initial: tuple
    angle: float = 0.0
    radius: float = 5.0
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_step: float | None = None

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if not 0 < self.rel_tol < 1 or not 0 < self.abs_tol < 1:
            raise ValueError("tolerances must lie in (0, 1)")
        if self.max_step is not None and self.max_step <= 0:
            raise ValueError("max_step must be positive")
        if any(c == 0 for c in self.initial):
            raise ValueError("initial components must be nonzero")


@dataclass(frozen=True)
class Completed:
    samples: tuple


@dataclass(frozen=True)
class Blowup:
    t_star: float
    component: int
    samples: tuple
    suspected: bool = False


@dataclass(frozen=True)
class NearZero:
    t_star: float
    component: int
    samples: tuple


RayOutcome = Completed | Blowup | NearZero


class _ThresholdHit(Exception):
    def __init__(self, kind: str, component: int):
        super().__init__(kind)
        self.kind = kind
        self.component = component


def _compile(sys: OdeSystem):
    """Per component: list of (complex coefficient, exponent tuple)."""
    return [
        [(complex(c), exp) for exp, c in p.terms.items()]
        for p in sys.p
    ]


def _check_thresholds(z) -> None:
    for i, zi in enumerate(z):
        if abs(zi) > BLOWUP_THRESHOLD:
            raise _ThresholdHit("blowup", i)
    for i, zi in enumerate(z):
        if abs(zi) < NEAR_ZERO_THRESHOLD:
            raise _ThresholdHit("near_zero", i)


def _rhs(compiled, phase: complex, z) -> tuple:
    _check_thresholds(z)
    out = []
    for i, terms in enumerate(compiled):
        acc = 0j
        for coeff, exp in terms:
            v = coeff
            for zj, e in zip(z, exp):
                if e:
                    v *= zj ** e
            acc += v
        out.append(phase * z[i] * acc)
    return tuple(out)


# Dormand-Prince 5(4): 5th-order propagation with embedded 4th-order estimate.
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_ERR = (
    71 / 57600,
    0.0,
    -71 / 16695,
    71 / 1920,
    -17253 / 339200,
    22 / 525,
    -1 / 40,
)


def _combine(z, h, ks, coeffs):
    n = len(z)
    out = list(z)
    for c, k in zip(coeffs, ks):
        if c:
            for i in range(n):
                out[i] += h * c * k[i]
    return tuple(out)


def _rk_step(compiled, phase, z, h):
    """One trial step; returns (z_new, error_estimate) or raises _ThresholdHit."""
    ks = [_rhs(compiled, phase, z)]
    for stage in range(1, 7):
        state = _combine(z, h, ks, _A[stage])
        ks.append(_rhs(compiled, phase, state))
    z_new = _combine(z, h, ks, _B5)
    err = tuple(
        h * sum(c * k[i] for c, k in zip(_ERR, ks))
        for i in range(len(z))
    )
    return z_new, err


def _inf_norm(v) -> float:
    return max((abs(x) for x in v), default=0.0)


def _finite(v) -> bool:
    return all(math.isfinite(x.real) and math.isfinite(x.imag) for x in v)


def _event_outcome(kind: str, component: int, t: float, samples) -> RayOutcome:
    if kind == "blowup":
        return Blowup(t_star=t, component=component, samples=tuple(samples))
    return NearZero(t_star=t, component=component, samples=tuple(samples))


def _first_event(z):
    for i, zi in enumerate(z):
        if abs(zi) > BLOWUP_THRESHOLD:
            return "blowup", i
    for i, zi in enumerate(z):
        if abs(zi) < NEAR_ZERO_THRESHOLD:
            return "near_zero", i
    return None


def integrate_ray(sys: OdeSystem, ray: RaySpec) -> RayOutcome:
    """Integrate along one ray until the radius, an event, or step underflow.

    Step acceptance: inf-norm of the embedded error estimate at most
    abs_tol + rel_tol * inf-norm of the state.  The maximum step is R/64, so
    a Completed outcome carries at least 64 interior samples.  Controller
    step underflow (below 1e-14 * R) without a threshold crossing is reported
    as a suspected blowup at the current abscissa.
    """
    if len(ray.initial) != sys.n:
        raise ValueError(f"initial point has {len(ray.initial)} components, expected {sys.n}")
    compiled = _compile(sys)
    phase = cmath.exp(1j * ray.angle)
    radius = ray.radius
    hmax = radius / 64
    if ray.max_step is not None:
        hmax = min(hmax, ray.max_step)
    hmin = 1e-14 * radius
    # A threshold hit during a stage evaluation at this step size or below
    # pins the crossing to within 1e-10 * R: report it as the event itself.
    event_floor = 1e-10 * radius

    t = 0.0
    z = tuple(complex(c) for c in ray.initial)
    samples = [(0.0, z)]
    event = _first_event(z)
    if event:
        return _event_outcome(event[0], event[1], 0.0, samples)

    h = min(hmax, radius / 1024)
    steps = 0
    while radius - t > 1e-13 * radius:
        steps += 1
        if steps > _MAX_STEPS:
            raise RuntimeError("integration exceeded the step budget")
        h_step = min(h, radius - t)
        accepted = False
        try:
            z_new, err = _rk_step(compiled, phase, z, h_step)
            if _finite(z_new) and _finite(err):
                scale = ray.abs_tol + ray.rel_tol * _inf_norm(z)
                err_norm = _inf_norm(err)
                accepted = err_norm <= scale
                if err_norm == 0.0:
                    factor = 5.0
                else:
                    factor = min(5.0, max(0.2, 0.9 * (scale / err_norm) ** 0.2))
            else:
                factor = 0.5
        except _ThresholdHit as hit:
            if h_step <= event_floor:
                return _event_outcome(hit.kind, hit.component, t + h_step, samples)
            factor = 0.5
        if accepted:
            t += h_step
            z = z_new
            samples.append((t, z))
            event = _first_event(z)
            if event:
                return _event_outcome(event[0], event[1], t, samples)
        h = min(h_step * factor, hmax)
        if h < hmin:
            worst = max(range(len(z)), key=lambda i: abs(z[i]))
            return Blowup(t_star=t, component=worst, samples=tuple(samples), suspected=True)
    return Completed(tuple(samples))


@dataclass(frozen=True)
class DiscScanResult:
    """Aggregated ray outcomes over equally spaced angles."""

    angles: tuple
    outcomes: tuple
    min_modulus: tuple
    max_modulus: tuple

    @property
    def events(self) -> tuple:
        """The non-Completed outcomes, as (angle, outcome) pairs."""
        return tuple(
            (angle, outcome)
            for angle, outcome in zip(self.angles, self.outcomes)
            if not isinstance(outcome, Completed)
        )


def disc_scan(
    sys: OdeSystem,
    initial: Sequence[complex],
    radius: float,
    nrays: int,
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-12,
) -> DiscScanResult:
    """Run integrate_ray at angles 2*pi*j/nrays; rays are independent."""
    if nrays < 1:
        raise ValueError("nrays must be at least 1")
    initial = tuple(complex(c) for c in initial)
    angles = tuple(2 * math.pi * j / nrays for j in range(nrays))
    outcomes = tuple(
        integrate_ray(sys, RaySpec(initial, angle, radius, rel_tol, abs_tol))
        for angle in angles
    )
    n = sys.n
    mins = [math.inf] * n
    maxs = [0.0] * n
    for outcome in outcomes:
        for _, z in outcome.samples:
            for i in range(n):
                m = abs(z[i])
                if m < mins[i]:
                    mins[i] = m
                if m > maxs[i]:
                    maxs[i] = m
    return DiscScanResult(angles, outcomes, tuple(mins), tuple(maxs))


def estimate_m(samples: Sequence[complex], r: float) -> float:
    """Mean of log+|f| over equally spaced circle samples of radius r.

    This is the proximity function m(r, f); for entire f it equals the
    Nevanlinna characteristic since the pole-counting term vanishes.  With
    equally spaced angles the arc-length weight r*dtheta cancels the 1/(2*pi*r)
    prefactor exactly, so the value does not depend on r; the radius argument
    is kept for bookkeeping symmetry with the definition.
    """
    if len(samples) < 8:
        raise ValueError("need at least 8 circle samples")
    if r <= 0:
        raise ValueError("radius must be positive")
    total = 0.0
    for value in samples:
        mod = abs(value)
        if mod > 1.0:
            total += math.log(mod)
    return total / len(samples)


@dataclass(frozen=True)
class UnitCheckReport:
    """Per-component zero-freeness evidence from a disc scan."""

    units: tuple
    scan: DiscScanResult

    @property
    def conclusive(self) -> bool:
        return not any(isinstance(o, Blowup) for o in self.scan.outcomes)


def unit_check(
    sys: OdeSystem,
    initial: Sequence[complex],
    radius: float,
    nrays: int,
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-12,
) -> UnitCheckReport:
    """True per component iff no near-zero event touched it during the scan.

    Blowup events make the report inconclusive (the scan is returned so the
    caller can inspect them); they do not flip the per-component flags.
    """
    scan = disc_scan(sys, initial, radius, nrays, rel_tol, abs_tol)
    flagged = {
        o.component for o in scan.outcomes if isinstance(o, NearZero)
    }
    units = tuple(i not in flagged for i in range(sys.n))
    return UnitCheckReport(units, scan)
