"""Stroboscopic check of the adiabatic theorem for slowly modulated drives.

The parameter is frozen during each drive period and advanced between
periods, so ``M`` periods along a path produce the state

    psi_M = U(x_M) ... U(x_2) U(x_1) psi_0,

with ``x_k`` at normalized arclength ``k/M``.  As ``M`` grows, an initial
eigenvector should end up in the eigenspace the lifted frame predicts.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NotNormalized
from .frames import FLOQUET, frame_at
from .paths import lift_path


def normalized_state(psi):
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if abs(np.linalg.norm(psi) - 1.0) > 1e-12:
        raise NotNormalized(f"state norm is {np.linalg.norm(psi)!r}, expected 1")
    return psi


def eigenvector(projector):
    """A unit vector spanning the range of a rank-1 projector."""
    p = np.asarray(projector)
    k = int(np.argmax(np.real(np.diag(p))))
    v = p[:, k] / np.sqrt(np.real(p[k, k]))
    return v / np.linalg.norm(v)


def evolve_state(family, path, psi0, periods):
    """Apply one Floquet operator per period along ``path``.

    Returns the final state vector.  The norm is renormalized away from
    rounding drift only after checking it stayed within 1e-12.
    """
    if family.kind != FLOQUET:
        raise ValueError("stroboscopic evolution needs a Floquet family")
    if periods < 1:
        raise ValueError("need at least one period")
    psi = normalized_state(psi0).copy()
    points = path.points_at(np.arange(1, periods + 1) / periods)
    for x in points:
        psi = family(x) @ psi
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-12:
        raise ArithmeticError(f"norm drifted to {norm!r} during evolution")
    return psi / norm


def adiabatic_fidelity(psi, projector):
    """``<psi|P|psi>`` clipped to [0, 1]."""
    psi = normalized_state(psi)
    value = np.real(np.vdot(psi, np.asarray(projector) @ psi))
    return float(min(1.0, max(0.0, value)))


@dataclass(frozen=True)
class EvolutionReport:
    final_state: np.ndarray
    fidelity: float
    steps: int
    min_gap_seen: float
    initial_slot: int
    target_slot: int
    evolved_slot: int  # slot of the end-point reference frame the state landed in, -1 if none above 0.9

    @property
    def infidelity(self):
        return 1.0 - self.fidelity


def _slot_of(psi, frame):
    fids = [adiabatic_fidelity(psi, p) for p in frame.projectors]
    return int(np.argmax(fids)), max(fids)


def verify_transport(family, path, periods, slot=0, initial=None, lift=None):
    """Evolve the eigenvector in ``slot`` and compare with the lifted frame.

    ``target_slot`` is where the lift sends ``slot`` within the reference
    frame over the end point (``lift.permutation(slot)``); ``evolved_slot``
    is where the evolved state actually is, by fidelity above 0.9.
    """
    if initial is None:
        initial = frame_at(family, path.start)
    if lift is None:
        lift = lift_path(family, path, initial)
    psi0 = eigenvector(initial[slot])
    psi = evolve_state(family, path, psi0, periods)
    fidelity = adiabatic_fidelity(psi, lift.final_frame[slot])
    reference = initial if path.is_closed else frame_at(family, path.end)
    landed, best = _slot_of(psi, reference)
    return EvolutionReport(
        final_state=psi,
        fidelity=fidelity,
        steps=periods,
        min_gap_seen=lift.min_gap_seen,
        initial_slot=slot,
        target_slot=lift.permutation(slot),
        evolved_slot=landed if best > 0.9 else -1,
    )


@dataclass(frozen=True)
class ConvergenceScan:
    periods: tuple
    infidelities: tuple
    slope: float
    reports: tuple

    def rows(self):
        return list(zip(self.periods, self.infidelities))

    def strictly_decreasing(self):
        inf = self.infidelities
        return all(b < a for a, b in zip(inf, inf[1:]))


def convergence_scan(family, path, periods_list, slot=0, initial=None):
    """Infidelity against the lifted target for each number of periods.

    ``slope`` is the least-squares slope of log infidelity against log M
    over the entries with nonzero infidelity (NaN if fewer than two).
    """
    periods_list = [int(m) for m in periods_list]
    if not periods_list:
        raise ValueError("periods_list must not be empty")
    if any(b <= a for a, b in zip(periods_list, periods_list[1:])):
        raise ValueError("periods_list must be strictly increasing")
    if initial is None:
        initial = frame_at(family, path.start)
    lift = lift_path(family, path, initial)
    reports = tuple(verify_transport(family, path, m, slot, initial, lift) for m in periods_list)
    infid = tuple(max(0.0, r.infidelity) for r in reports)
    mask = np.array(infid) > 0.0
    if mask.sum() >= 2:
        slope = float(np.polyfit(np.log(np.array(periods_list)[mask]), np.log(np.array(infid)[mask]), 1)[0])
    else:
        slope = float("nan")
    return ConvergenceScan(tuple(periods_list), infid, slope, reports)
