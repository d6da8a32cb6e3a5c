"""Method-of-lines evolution with step control, diagnostics and blow-up watch.

The reformulated equation is first order and nonstiff once the inverse
elliptic operator has smoothed the right-hand side, so a classical
explicit RK4 step under an advective CFL condition is enough.  The step
size is adjusted to land exactly on sample and snapshot times, so no
interpolation enters the reported records.

A run ends in one of four states: Completed (reached t_end),
BlowUpSuspected (a monitored quantity crossed its threshold, wave-breaking
style), NonFinite (overflow/NaN during a step), or it is still Running.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable

from .errors import InvalidControls, InvalidField, InvalidMu
from .models import ModelCoefficients, tendency, tendency_direct, transport_field, validate
from .spectral import (
    SpectralField,
    mean,
    sobolev_norm,
    spectral_tail,
    sup_norm,
    sup_norm_dx,
)


class RunStatus(enum.Enum):
    RUNNING = "Running"
    COMPLETED = "Completed"
    BLOWUP_SUSPECTED = "BlowUpSuspected"
    NONFINITE = "NonFinite"


@dataclass(frozen=True)
class SimulationState:
    t: float
    u: SpectralField
    dt: float
    status: RunStatus = RunStatus.RUNNING


@dataclass(frozen=True)
class DiagnosticsRecord:
    """Monitored quantities at one sample time.

    tail is the largest coefficient magnitude in the top third of modes
    (the resolution monitor); sup_u accompanies sup_ux so both candidate
    blow-up quantities are on record.
    """

    t: float
    mean: float
    l2: float
    hs: float
    sup_ux: float
    tail: float
    sup_u: float


@dataclass(frozen=True)
class BlowupThresholds:
    sup_ux_max: float = 1e4
    hs_max: float = 1e8
    tail_rel_max: float = 1e-2


@dataclass(frozen=True)
class BlowupDecision:
    status: RunStatus
    trigger: str | None = None
    value: float | None = None
    t: float | None = None


@dataclass(frozen=True)
class IntegrationControls:
    """Knobs for `integrate`; dt=None selects the CFL step."""

    cfl: float = 0.5
    dt: float | None = None
    sample_interval: float = 0.05
    snapshot_times: tuple[float, ...] = ()
    thresholds: BlowupThresholds = field(default_factory=BlowupThresholds)
    s_exponent: float = 2.0
    max_steps: int = 20_000_000


@dataclass(frozen=True)
class IntegrationResult:
    state: SimulationState
    records: list[DiagnosticsRecord]
    snapshots: list[tuple[float, SpectralField]]
    stiff: bool = False
    blowup: BlowupDecision | None = None


def diagnose(t: float, u: SpectralField, s_exponent: float = 2.0) -> DiagnosticsRecord:
    return DiagnosticsRecord(
        t=t,
        mean=mean(u),
        l2=sobolev_norm(u, 0.0),
        hs=sobolev_norm(u, s_exponent),
        sup_ux=sup_norm_dx(u),
        tail=spectral_tail(u),
        sup_u=sup_norm(u),
    )


def detect_blowup(
    state: SimulationState,
    thresholds: BlowupThresholds | None = None,
    s_exponent: float = 2.0,
) -> BlowupDecision:
    """Classify the current state: Running, BlowUpSuspected or NonFinite.

    Non-finite fields take precedence over threshold crossings; the
    decision names the triggering quantity and the time.
    """
    thresholds = thresholds or BlowupThresholds()
    if state.status is RunStatus.NONFINITE:
        return BlowupDecision(RunStatus.NONFINITE, t=state.t)
    sup_ux = sup_norm_dx(state.u)
    if not math.isfinite(sup_ux):
        return BlowupDecision(RunStatus.NONFINITE, trigger="sup_ux", t=state.t)
    if sup_ux > thresholds.sup_ux_max:
        return BlowupDecision(RunStatus.BLOWUP_SUSPECTED, "sup_ux", sup_ux, state.t)
    hs = sobolev_norm(state.u, s_exponent)
    if hs > thresholds.hs_max:
        return BlowupDecision(RunStatus.BLOWUP_SUSPECTED, "hs", hs, state.t)
    tail = spectral_tail(state.u)
    l2 = sobolev_norm(state.u, 0.0)
    if tail > thresholds.tail_rel_max * l2 and l2 > 0.0:
        return BlowupDecision(RunStatus.BLOWUP_SUSPECTED, "spectral_tail", tail, state.t)
    return BlowupDecision(RunStatus.RUNNING, t=state.t)


# ---------------------------------------------------------------------------
# stepping
# ---------------------------------------------------------------------------

def _rk4(u: SpectralField, rhs: Callable[[SpectralField], SpectralField], dt: float):
    """One classical RK4 step; returns None if an intermediate went non-finite."""
    try:
        k1 = rhs(u)
        k2 = rhs(u + (0.5 * dt) * k1)
        k3 = rhs(u + (0.5 * dt) * k2)
        k4 = rhs(u + dt * k3)
        return u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    except InvalidField:
        return None


def step_rk4(state: SimulationState, coeffs: ModelCoefficients, dt: float) -> SimulationState:
    """Advance one RK4 step of the nonlocal tendency.

    The tendency has exactly zero mean, and the RK4 update is a linear
    combination of stages, so the mean of u is preserved to round-off.
    """
    if dt <= 0.0:
        raise InvalidControls(f"dt must be positive, got {dt}")
    if state.status is not RunStatus.RUNNING:
        raise InvalidControls(f"cannot step a state with status {state.status.value}")
    u_new = _rk4(state.u, lambda v: tendency(v, coeffs), dt)
    if u_new is None:
        return replace(state, dt=dt, status=RunStatus.NONFINITE)
    return SimulationState(state.t + dt, u_new, dt, RunStatus.RUNNING)


def _event_times(t_end: float, sample_interval: float, snapshot_times) -> list[tuple[float, bool, bool]]:
    """Sorted (time, is_sample, is_snapshot) stops the integrator lands on."""
    samples = set()
    k = 1
    while k * sample_interval < t_end - 1e-12:
        samples.add(round(k * sample_interval, 15))
        k += 1
    samples.add(round(t_end, 15))
    snaps = {round(ts, 15) for ts in snapshot_times if ts > 0.0}
    return [(ev, ev in samples, ev in snaps) for ev in sorted(samples | snaps)]


def integrate(
    u0: SpectralField,
    coeffs: ModelCoefficients,
    t_end: float,
    controls: IntegrationControls | None = None,
) -> IntegrationResult:
    """Evolve u0 to t_end with diagnostics at every sample time.

    The CFL step is dt = cfl * dx / max(1, sup|a(u)|), capped by the
    sample interval and shortened to land exactly on sample/snapshot
    times.  Models with mu = 0 (pure dispersive local form) fall back to
    `tendency_direct` with a dt ~ dx^3 stability bound; such runs are
    marked stiff and cost accordingly.
    """
    controls = controls or IntegrationControls()
    if t_end <= 0.0:
        raise InvalidControls(f"t_end must be positive, got {t_end}")
    if controls.cfl <= 0.0:
        raise InvalidControls(f"cfl must be positive, got {controls.cfl}")
    if controls.sample_interval <= 0.0:
        raise InvalidControls("sample_interval must be positive")
    if controls.dt is not None and controls.dt <= 0.0:
        raise InvalidControls("fixed dt must be positive")
    for ts in controls.snapshot_times:
        if not 0.0 <= ts <= t_end:
            raise InvalidControls(f"snapshot time {ts} outside [0, {t_end}]")

    grid = u0.grid
    stiff = coeffs.mu == 0.0
    if coeffs.mu < 0.0:
        raise InvalidMu(f"mu must be nonnegative, got {coeffs.mu}")
    if stiff or coeffs.has_extended_terms:
        rhs = lambda v: tendency_direct(v, coeffs)
    else:
        validate(coeffs)
        rhs = lambda v: tendency(v, coeffs)

    def dt_bound(u: SpectralField) -> float:
        if controls.dt is not None:
            return min(controls.dt, controls.sample_interval)
        if stiff:
            xi_max = math.pi * grid.n_points
            bound = math.inf
            if coeffs.alpha2 != 0.0:
                # RK4 imaginary-axis stability for the leading dispersive term
                bound = 2.8 / (abs(coeffs.alpha2) * xi_max ** 3)
            speed = abs(coeffs.alpha1) + abs(coeffs.alpha3) * sup_norm(u)
            bound = min(bound, grid.spacing / max(1.0, speed))
        else:
            bound = grid.spacing / max(1.0, sup_norm(transport_field(u, coeffs)))
        return min(controls.cfl * bound, controls.sample_interval)

    records = [diagnose(0.0, u0, controls.s_exponent)]
    snapshots: list[tuple[float, SpectralField]] = []
    if any(ts == 0.0 for ts in controls.snapshot_times):
        snapshots.append((0.0, u0))

    t = 0.0
    u = u0
    dt_last = 0.0
    blowup: BlowupDecision | None = None
    status = RunStatus.RUNNING
    steps = 0

    for ev, is_sample, is_snap in _event_times(
        t_end, controls.sample_interval, controls.snapshot_times
    ):
        while t < ev - 1e-13 and status is RunStatus.RUNNING:
            steps += 1
            if steps > controls.max_steps:
                raise InvalidControls(
                    f"step budget {controls.max_steps} exhausted at t={t:.6g}"
                )
            dt_last = min(dt_bound(u), ev - t)
            u_new = _rk4(u, rhs, dt_last)
            if u_new is None:
                status = RunStatus.NONFINITE
                break
            t = ev if ev - (t + dt_last) < 1e-13 else t + dt_last
            u = u_new
            decision = detect_blowup(
                SimulationState(t, u, dt_last), controls.thresholds, controls.s_exponent
            )
            if decision.status is not RunStatus.RUNNING:
                status = decision.status
                blowup = decision if decision.status is RunStatus.BLOWUP_SUSPECTED else None
                records.append(diagnose(t, u, controls.s_exponent))
                break
        if status is not RunStatus.RUNNING:
            break
        if is_sample:
            records.append(diagnose(ev, u, controls.s_exponent))
        if is_snap:
            snapshots.append((ev, u))

    if status is RunStatus.RUNNING and t >= t_end - 1e-13:
        status = RunStatus.COMPLETED
    state = SimulationState(t, u, dt_last, status)
    return IntegrationResult(state, records, snapshots, stiff=stiff, blowup=blowup)
