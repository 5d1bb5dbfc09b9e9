"""Paths in parameter space and their lifts to eigenframes.

A :class:`Path` is a piecewise-linear curve through its samples.  Lifting
continues an initial eigenframe along the curve so that every slot varies
continuously; for a closed path the lift returns to the fiber it started in,
and the resulting reordering is the monodromy permutation of the loop.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    AmbiguousMatch,
    DegeneracyOnPath,
    DegenerateSpectrum,
    DepthExceeded,
    EndpointMismatch,
    InvalidPath,
    NonAbelianGenerators,
    NotClosed,
    PunctureHit,
    PunctureOnPath,
    TheoremViolation,
)
from .frames import (
    FLOQUET,
    GAP_MIN,
    EigenFrame,
    Permutation,
    apply_permutation,
    frame_at,
    match_frames,
)

#: A lift step is accepted only if every slot keeps at least this overlap
#: with its predecessor; coarser steps are bisected.
STEP_OVERLAP = 0.9

MAX_DEPTH = 40


class Path:
    """Piecewise-linear path through an ordered list of sample points.

    Consecutive samples must differ, except for a constant path whose
    samples are all the same point.  The path is closed when its first and
    last samples are exactly equal.
    """

    def __init__(self, samples, name=None):
        s = np.array(samples, dtype=float)
        if s.ndim == 1:
            s = s[:, None]
        if s.ndim != 2 or s.shape[0] < 2:
            raise InvalidPath("a path needs at least two samples")
        if not np.all(np.isfinite(s)):
            raise InvalidPath("path samples must be finite")
        steps = np.linalg.norm(np.diff(s, axis=0), axis=1)
        if np.any(steps == 0.0) and not np.all(steps == 0.0):
            raise InvalidPath("consecutive samples must be distinct")
        s.setflags(write=False)
        self.samples = s
        self.name = name

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Path{label} {len(self)} samples, d={self.dim}>"

    def __len__(self):
        return self.samples.shape[0]

    def __eq__(self, other):
        return isinstance(other, Path) and np.array_equal(self.samples, other.samples)

    __hash__ = None

    @property
    def dim(self):
        return self.samples.shape[1]

    @property
    def start(self):
        return self.samples[0]

    @property
    def end(self):
        return self.samples[-1]

    @property
    def is_closed(self):
        return bool(np.array_equal(self.samples[0], self.samples[-1]))

    @property
    def is_constant(self):
        return bool(np.all(self.samples == self.samples[0]))

    def cumulative_length(self):
        steps = np.linalg.norm(np.diff(self.samples, axis=0), axis=1)
        return np.concatenate([[0.0], np.cumsum(steps)])

    def length(self):
        return float(self.cumulative_length()[-1])

    def points_at(self, s):
        """Points at normalized arclength ``s`` in [0, 1] (array-valued)."""
        s = np.clip(np.atleast_1d(np.asarray(s, dtype=float)), 0.0, 1.0)
        cum = self.cumulative_length()
        if cum[-1] == 0.0:
            return np.repeat(self.samples[:1], len(s), axis=0)
        target = s * cum[-1]
        seg = np.clip(np.searchsorted(cum, target, side="right") - 1, 0, len(self) - 2)
        frac = (target - cum[seg]) / (cum[seg + 1] - cum[seg])
        pts = self.samples[seg] + frac[:, None] * (self.samples[seg + 1] - self.samples[seg])
        # endpoints exactly, so closed paths stay closed under resampling
        pts[s == 0.0] = self.samples[0]
        pts[s == 1.0] = self.samples[-1]
        return pts

    def refined(self, factor=2):
        """Same curve with every segment split into ``factor`` pieces."""
        if factor < 1:
            raise ValueError("refinement factor must be >= 1")
        s = self.samples
        t = np.arange(factor) / factor
        inner = s[:-1, None, :] + t[None, :, None] * (s[1:] - s[:-1])[:, None, :]
        return Path(np.vstack([inner.reshape(-1, self.dim), s[-1:]]), name=self.name)


def concat(first, second, name=None):
    """``first`` followed by ``second``; the junction sample appears once."""
    if not np.array_equal(first.end, second.start):
        raise EndpointMismatch(
            f"path ends at {first.end.tolist()} but the next starts at {second.start.tolist()}"
        )
    return Path(np.vstack([first.samples, second.samples[1:]]), name=name)


def reverse(path, name=None):
    return Path(path.samples[::-1], name=name if name is not None else path.name)


def line(start, end, n=2, name=None):
    t = np.linspace(0.0, 1.0, n)[:, None]
    start, end = np.asarray(start, float), np.asarray(end, float)
    pts = start + t * (end - start)
    pts[0], pts[-1] = start, end
    return Path(pts, name=name)


def polar_curve(theta, radius, center=(0.0, 0.0), name=None):
    """Planar path ``center + r (cos theta, sin theta)`` from sampled angle and radius."""
    theta = np.asarray(theta, dtype=float)
    radius = np.broadcast_to(np.asarray(radius, dtype=float), theta.shape)
    c = np.asarray(center, dtype=float)
    trig = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    # snap rounding residue so arcs ending on an axis meet there exactly
    trig[np.abs(trig) < 8 * np.finfo(float).eps] = 0.0
    pts = c + radius[:, None] * trig
    return Path(pts, name=name)


def arc(radius, start_angle, end_angle, n=256, center=(0.0, 0.0), name=None):
    return polar_curve(np.linspace(start_angle, end_angle, n), radius, center, name)


def circle(radius, n=256, center=(0.0, 0.0), start_angle=0.0, turns=1, name=None):
    """Closed circle traversed ``turns`` times (negative for clockwise)."""
    if turns == 0:
        raise InvalidPath("a circle needs a nonzero number of turns")
    theta = start_angle + np.linspace(0.0, 2 * np.pi * turns, n * abs(turns))
    path = polar_curve(theta, radius, center)
    return _closed(path.samples, name)


def _closed(samples, name=None):
    pts = np.array(samples)
    pts[-1] = pts[0]
    return Path(pts, name=name)


def random_loop(rng, winding, r_min=0.6, r_max=5.5, n=200, modes=3, center=(0.0, 0.0), name=None):
    """Random star-shaped closed loop with prescribed winding about ``center``.

    The polar angle advances by ``2 pi winding`` plus a periodic wiggle and
    the radius is a random trigonometric polynomial kept inside
    ``[r_min, r_max]``.  For ``winding == 0`` the loop sweeps an angular
    window back and forth and is contractible in the punctured plane.
    """
    t = np.linspace(0.0, 1.0, n)
    k = np.arange(1, modes + 1)
    theta0 = rng.uniform(-np.pi, np.pi)
    wiggle_amp = rng.uniform(0.0, 0.4, modes) / k
    wiggle_phase = rng.uniform(0.0, 2 * np.pi, modes)
    wiggle = np.sum(wiggle_amp[:, None] * np.sin(2 * np.pi * k[:, None] * t + wiggle_phase[:, None]), axis=0)
    wiggle -= wiggle[0]
    if winding == 0:
        theta = theta0 + rng.uniform(0.5, 2.5) * np.sin(np.pi * t) ** 2 * rng.choice([-1, 1]) + wiggle
    else:
        theta = theta0 + 2 * np.pi * winding * t + wiggle
    r_amp = rng.normal(size=modes) / k
    r_phase = rng.uniform(0.0, 2 * np.pi, modes)
    bump = np.sum(r_amp[:, None] * np.cos(2 * np.pi * k[:, None] * t + r_phase[:, None]), axis=0)
    span = np.ptp(bump) or 1.0
    lo = rng.uniform(r_min, 0.5 * (r_min + r_max))
    hi = rng.uniform(0.5 * (lo + r_max), r_max)
    radius = lo + (hi - lo) * (bump - bump.min()) / span
    path = polar_curve(theta, radius, center)
    return _closed(path.samples, name)


def random_open_path(rng, start_angle, end_angle, start_radius, end_radius, turns=0,
                     r_min=0.6, r_max=5.5, n=200, modes=3, name=None):
    """Random planar path between two fixed polar endpoints about the origin.

    ``turns`` adds whole extra revolutions, which changes the homotopy class
    in the punctured plane while keeping both endpoints.
    """
    t = np.linspace(0.0, 1.0, n)
    k = np.arange(1, modes + 1)
    envelope = np.sin(np.pi * t)
    theta = start_angle + (end_angle - start_angle + 2 * np.pi * turns) * t
    theta = theta + envelope * np.sum(
        (rng.uniform(-0.3, 0.3, modes) / k)[:, None] * np.sin(np.pi * k[:, None] * t), axis=0
    )
    base = start_radius + (end_radius - start_radius) * t
    bump = envelope * np.sum(
        (rng.normal(size=modes) / k)[:, None] * np.sin(np.pi * k[:, None] * t), axis=0
    )
    radius = np.clip(base + bump, r_min, r_max)
    start = start_radius * np.array([np.cos(start_angle), np.sin(start_angle)])
    end = end_radius * np.array([np.cos(end_angle), np.sin(end_angle)])
    pts = polar_curve(theta, radius).samples.copy()
    pts[0], pts[-1] = start, end
    return Path(pts, name=name)


# -- homotopy data in punctured planes -------------------------------------

def winding_number(loop, puncture=(0.0, 0.0), tol=1e-9):
    """Signed number of turns a closed planar loop makes about ``puncture``.

    Raises
    ------
    NotClosed, PunctureOnPath
    """
    if not loop.is_closed:
        raise NotClosed("winding number needs a closed loop")
    if loop.dim != 2:
        raise ValueError("winding numbers are defined for planar loops only")
    rel = loop.samples - np.asarray(puncture, dtype=float)
    a, b = rel[:-1], rel[1:]
    seg = b - a
    seg_len2 = np.einsum("ij,ij->i", seg, seg)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.clip(np.where(seg_len2 > 0, -np.einsum("ij,ij->i", a, seg) / seg_len2, 0.0), 0.0, 1.0)
    closest = np.linalg.norm(a + t[:, None] * seg, axis=1)
    if np.any(np.linalg.norm(rel, axis=1) <= tol) or np.any(closest <= tol):
        raise PunctureOnPath(f"loop passes within {tol} of the puncture {list(puncture)}")
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    dot = np.einsum("ij,ij->i", a, b)
    turns = np.sum(np.arctan2(cross, dot)) / (2 * np.pi)
    w = int(round(turns))
    if abs(turns - w) > 1e-6:
        raise ArithmeticError(f"winding sum {turns} is not an integer")
    return w


def predict_monodromy(windings, generators):
    """Product of ``generator_i ** winding_i`` over the punctures.

    Raises
    ------
    NonAbelianGenerators
        When the generators do not commute, winding numbers alone do not fix
        the order of the factors.
    """
    if len(windings) != len(generators):
        raise ValueError("need one generator per puncture")
    if not generators:
        raise ValueError("at least one generator is required")
    for i, g in enumerate(generators):
        for h in generators[i + 1:]:
            if g @ h != h @ g:
                raise NonAbelianGenerators(f"generators {g} and {h} do not commute")
    result = Permutation.identity(generators[0].size)
    for w, g in zip(windings, generators):
        result = result @ g ** w
    return result


# -- lifting ---------------------------------------------------------------

@dataclass(frozen=True)
class TrajectoryStep:
    arclength: float
    point: np.ndarray
    frame: EigenFrame


@dataclass(frozen=True)
class LiftResult:
    """Outcome of continuing a frame along a path.

    ``permutation`` places ``final_frame`` relative to a reference frame over
    the end point: ``final_frame == apply_permutation(reference, permutation)``.
    The reference is the initial frame for closed paths (so the permutation
    is the monodromy) and the ascending-eigenvalue frame otherwise.
    """

    final_frame: EigenFrame
    permutation: Permutation
    steps_used: int
    min_gap_seen: float
    min_overlap_seen: float
    trajectory: Optional[list] = field(default=None, repr=False)


def lift_path(family, path, initial, gap_min=GAP_MIN, step_overlap=STEP_OVERLAP,
              max_depth=MAX_DEPTH, record=False):
    """Continue ``initial`` along ``path`` keeping every slot continuous.

    Each segment is attempted in one step.  A step is accepted when every
    slot keeps an overlap of at least ``step_overlap`` with its predecessor
    and its eigenvalue moves by less than half the local gap; otherwise it
    is bisected, down to ``max_depth`` halvings.  The eigenvalue condition
    keeps the lift from slipping through a level crossing where the
    projectors happen to stay smooth.

    Raises
    ------
    DegeneracyOnPath
        A point on the path has a degenerate spectrum, or bisection stalls
        next to one.
    DepthExceeded
        Bisection stalled with the spectrum still gapped.
    """
    if not np.allclose(initial.point, path.start, rtol=0.0, atol=1e-12):
        raise EndpointMismatch("initial frame does not sit over the first sample of the path")
    check = _frame_on_path(family, path.start, gap_min)
    match_frames(initial, check)

    carried = initial
    min_gap = initial.gap()
    min_overlap = 1.0
    steps = 0
    cum = path.cumulative_length()
    trajectory = [TrajectoryStep(0.0, path.start, initial)] if record else None

    for k in range(len(path) - 1):
        x0, x1 = path.samples[k], path.samples[k + 1]
        if np.array_equal(x0, x1):
            continue
        seg_len = cum[k + 1] - cum[k]
        stack = [(1.0, 0)]
        t0 = 0.0
        while stack:
            t1, depth = stack.pop()
            target = x0 + t1 * (x1 - x0) if t1 < 1.0 else x1
            new = _frame_on_path(family, target, gap_min)
            min_gap = min(min_gap, new.gap())
            try:
                sigma, overlap = match_frames(carried, new)
                ok = overlap >= step_overlap and _eigenvalues_continue(carried, new, sigma)
            except AmbiguousMatch:
                ok = False
            if not ok:
                if depth >= max_depth:
                    if min_gap < 1e3 * gap_min:
                        raise DegeneracyOnPath(
                            f"continuation stalls near {target.tolist()} (gap {min_gap:.3e})",
                            point=target, gap=min_gap,
                        )
                    raise DepthExceeded(f"bisection depth {max_depth} exceeded near {target.tolist()}")
                mid = 0.5 * (t0 + t1)
                stack.append((t1, depth + 1))
                stack.append((mid, depth + 1))
                continue
            carried = apply_permutation(new, sigma.inverse())
            min_overlap = min(min_overlap, overlap)
            steps += 1
            t0 = t1
            if record:
                trajectory.append(TrajectoryStep(float(cum[k] + t1 * seg_len), target, carried))

    if path.is_closed:
        reference = initial
    else:
        reference = _frame_on_path(family, path.end, gap_min)
    sigma, _ = match_frames(reference, carried)
    return LiftResult(carried, sigma, steps, float(min_gap), float(min_overlap), trajectory)


def _eigenvalues_continue(carried, new, sigma):
    """Each slot's eigenvalue moved less than half the smaller of the two gaps."""
    before = carried.eigenvalues[list(sigma.images)]
    shift = np.abs(new.eigenvalues - before)
    if new.kind == FLOQUET:
        shift = np.minimum(shift, 2 * np.pi - shift)
    return bool(np.max(shift) < 0.5 * min(carried.gap(), new.gap()))


def _frame_on_path(family, point, gap_min):
    try:
        return frame_at(family, point, gap_min=gap_min)
    except DegenerateSpectrum as exc:
        raise DegeneracyOnPath(str(exc), point=np.asarray(point), gap=exc.gap) from exc
    except PunctureHit as exc:
        raise DegeneracyOnPath(str(exc), point=np.asarray(point), gap=0.0) from exc


def monodromy(family, loop, initial=None, **kwargs):
    """Permutation of ``initial`` produced by lifting the closed ``loop``.

    ``initial`` defaults to the ascending-eigenvalue frame at the base point.
    """
    if not loop.is_closed:
        raise NotClosed("monodromy needs a closed loop")
    if initial is None:
        initial = frame_at(family, loop.start)
    return lift_path(family, loop, initial, **kwargs).permutation


@dataclass(frozen=True)
class Comparison:
    discrepancy: Permutation
    composite_monodromy: Permutation
    lift1: LiftResult
    lift2: LiftResult

    @property
    def agrees(self):
        return self.discrepancy == self.composite_monodromy


def compare_paths(family, c1, c2, initial=None, strict=False, **kwargs):
    """Compare two paths with common endpoints.

    ``discrepancy`` is ``sigma(c2)^-1 o sigma(c1)`` from two independent
    lifts; ``composite_monodromy`` is the monodromy of ``c1`` followed by
    ``c2`` reversed.  The two must coincide; with ``strict`` a mismatch
    raises :class:`TheoremViolation`.
    """
    if not (np.array_equal(c1.start, c2.start) and np.array_equal(c1.end, c2.end)):
        raise EndpointMismatch("paths to compare must share both endpoints")
    if initial is None:
        initial = frame_at(family, c1.start)
    r1 = lift_path(family, c1, initial, **kwargs)
    r2 = lift_path(family, c2, initial, **kwargs)
    discrepancy = r2.permutation.inverse() @ r1.permutation
    loop = concat(c1, reverse(c2))
    composite = lift_path(family, loop, initial, **kwargs).permutation
    result = Comparison(discrepancy, composite, r1, r2)
    if strict and not result.agrees:
        raise TheoremViolation(
            f"direct discrepancy {discrepancy} differs from loop monodromy {composite}"
        )
    return result


def equivariance_holds(family, path, initial, tau, atol=1e-10, **kwargs):
    """Check that relabeling the initial frame by ``tau`` relabels the lift by ``tau``."""
    base = lift_path(family, path, initial, **kwargs).final_frame
    moved = lift_path(family, path, apply_permutation(initial, tau), **kwargs).final_frame
    return apply_permutation(base, tau).same_as(moved, atol=atol)

