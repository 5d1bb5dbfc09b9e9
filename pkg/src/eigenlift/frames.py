"""Ordered eigenprojector frames and the symmetric group acting on them.

An :class:`EigenFrame` is the tuple ``(P_0, ..., P_{N-1})`` of rank-1
eigenprojectors at one parameter point, in a definite order.  Reordering a
frame by a :class:`Permutation` moves it around its fiber; all ``N!``
reorderings of one frame make up the fiber over that point.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg
from .errors import (
    AmbiguousMatch,
    DegenerateSpectrum,
    PunctureHit,
    SizeMismatch,
    TooLarge,
)

HERMITIAN = "hermitian"
FLOQUET = "floquet"

#: Smallest eigenvalue separation (circular distance for eigenphases) that
#: still counts as non-degenerate.
GAP_MIN = 1e-6

#: Distance below which a point is considered to sit on a puncture.
PUNCTURE_TOL = 1e-12

MAX_FIBER_N = 6


@dataclass(frozen=True)
class Permutation:
    """An element of the symmetric group on ``0..N-1``.

    ``images[n]`` is the image ``sigma(n)``.  ``s @ t`` is the composition
    ``s o t``, i.e. ``(s @ t)(n) == s(t(n))``.
    """

    images: tuple

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n, i, j):
        images = list(range(n))
        images[i], images[j] = j, i
        return cls(tuple(images))

    @classmethod
    def cycle(cls, n, shift=1):
        """The cyclic shift ``k -> k + shift (mod n)``."""
        return cls(tuple((k + shift) % n for k in range(n)))

    @property
    def size(self):
        return len(self.images)

    def __call__(self, n):
        return self.images[n]

    def __len__(self):
        return len(self.images)

    def __matmul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.size != self.size:
            raise SizeMismatch(f"cannot compose S_{self.size} with S_{other.size}")
        return Permutation(tuple(self.images[k] for k in other.images))

    def inverse(self):
        inv = [0] * self.size
        for n, m in enumerate(self.images):
            inv[m] = n
        return Permutation(tuple(inv))

    def __pow__(self, k):
        result = Permutation.identity(self.size)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(int(k))):
            result = result @ base
        return result

    def is_identity(self):
        return all(n == m for n, m in enumerate(self.images))

    def order(self):
        return math.lcm(*(len(c) for c in self.cycles())) if self.size else 1

    def cycles(self):
        """Disjoint cycle decomposition, fixed points included."""
        seen, out = set(), []
        for start in range(self.size):
            if start in seen:
                continue
            cyc, k = [], start
            while k not in seen:
                seen.add(k)
                cyc.append(k)
                k = self.images[k]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in nontrivial)


@dataclass(frozen=True)
class SpectralFamily:
    """A map from parameter points to Hermitian or unitary matrices.

    Parameters
    ----------
    kind : {"hermitian", "floquet"}
    evaluator : callable
        ``evaluator(point) -> (N, N) complex ndarray``.  Must be stateless.
    dim : int
        Dimension of the parameter space.
    punctures : sequence of points
        Excluded points of the parameter space.
    name : str
    """

    kind: str
    evaluator: Callable
    dim: int
    punctures: tuple = ()
    name: str = ""

    def __post_init__(self):
        if self.kind not in (HERMITIAN, FLOQUET):
            raise ValueError(f"unknown family kind {self.kind!r}")
        object.__setattr__(
            self, "punctures", tuple(_as_point(p, self.dim) for p in self.punctures)
        )

    def __call__(self, point):
        return self.evaluator(point)

    def check_point(self, point):
        point = _as_point(point, self.dim)
        for puncture in self.punctures:
            if np.linalg.norm(point - puncture) <= PUNCTURE_TOL:
                raise PunctureHit(f"point {point.tolist()} is a puncture of {self.name or self.kind}")
        return point


def _as_point(point, dim=None):
    p = np.array(point, dtype=float).reshape(-1)
    if dim is not None and p.shape[0] != dim:
        raise SizeMismatch(f"expected a {dim}-dimensional point, got {p.shape[0]}")
    if not np.all(np.isfinite(p)):
        raise ValueError("parameter point has non-finite coordinates")
    p.setflags(write=False)
    return p


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class EigenFrame:
    """Ordered eigenprojectors ``(P_0, ..., P_{N-1})`` over one point.

    ``eigenvalues`` are energies for Hermitian families and eigenphases on
    (-pi, pi] for Floquet families.
    """

    point: np.ndarray
    projectors: np.ndarray
    eigenvalues: np.ndarray
    kind: str = HERMITIAN

    def __post_init__(self):
        object.__setattr__(self, "point", _as_point(self.point))
        object.__setattr__(self, "projectors", _frozen(np.asarray(self.projectors, dtype=complex)))
        object.__setattr__(self, "eigenvalues", _frozen(np.asarray(self.eigenvalues, dtype=float)))

    @property
    def size(self):
        return len(self.eigenvalues)

    def __len__(self):
        return self.size

    def __getitem__(self, n):
        return self.projectors[n]

    def operator(self):
        """Reassemble the matrix ``sum_k e_k P_k`` (``e^{i theta_k}`` for Floquet)."""
        weights = np.exp(1j * self.eigenvalues) if self.kind == FLOQUET else self.eigenvalues
        return np.einsum("k,kij->ij", weights, self.projectors)

    def gap(self):
        """Smallest eigenvalue separation, circular for eigenphases."""
        return spectral_gap(self.eigenvalues, self.kind)

    def same_as(self, other, atol=1e-10):
        """Slot-by-slot equality of projectors over the same point."""
        return (
            self.size == other.size
            and np.array_equal(self.point, other.point)
            and bool(np.max(np.abs(self.projectors - other.projectors)) <= atol)
        )

    def completeness_error(self):
        return float(np.max(np.abs(self.projectors.sum(axis=0) - np.eye(self.size))))

    def orthogonality_error(self):
        n = self.size
        prod = np.einsum("aij,bjk->abik", self.projectors, self.projectors)
        expected = np.zeros_like(prod)
        expected[np.arange(n), np.arange(n)] = self.projectors
        return float(np.max(np.abs(prod - expected)))


def spectral_gap(eigenvalues, kind=HERMITIAN):
    e = np.sort(np.asarray(eigenvalues, dtype=float))
    if len(e) < 2:
        return math.inf
    diffs = np.diff(e)
    if kind == FLOQUET:
        diffs = np.append(diffs, 2 * np.pi - (e[-1] - e[0]))
    return float(np.min(diffs))


def frame_at(family, point, order=None, gap_min=GAP_MIN):
    """Eigenframe of ``family`` at ``point``.

    Parameters
    ----------
    order : Permutation, optional
        Applied to the ascending-eigenvalue frame.  ``None`` keeps ascending
        order (ascending principal eigenphase for Floquet families).

    Raises
    ------
    PunctureHit, DegenerateSpectrum
    """
    point = family.check_point(point)
    m = family(point)
    if family.kind == FLOQUET:
        values, projectors = linalg.unitary_eig(m)
    else:
        values, projectors = linalg.hermitian_eig(m)
    gap = spectral_gap(values, family.kind)
    if gap <= gap_min:
        raise DegenerateSpectrum(
            f"spectral gap {gap:.3e} <= {gap_min:.1e} at {point.tolist()}", gap=gap
        )
    frame = EigenFrame(point, projectors, values, family.kind)
    if order is not None:
        frame = apply_permutation(frame, order)
    return frame


def apply_permutation(frame, sigma):
    """Reorder ``frame`` so that slot ``n`` holds the old slot ``sigma(n)``.

    With this action ``apply_permutation(apply_permutation(f, s1), s2)``
    equals ``apply_permutation(f, s1 @ s2)``.
    """
    if sigma.size != frame.size:
        raise SizeMismatch(f"permutation of size {sigma.size} on a frame of size {frame.size}")
    idx = list(sigma.images)
    return EigenFrame(frame.point, frame.projectors[idx], frame.eigenvalues[idx], frame.kind)


def enumerate_fiber(frame):
    """All ``N!`` orderings of ``frame``, paired with the permutation producing each."""
    if frame.size > MAX_FIBER_N:
        raise TooLarge(f"fiber enumeration limited to N <= {MAX_FIBER_N}")
    perms = [Permutation(p) for p in itertools.permutations(range(frame.size))]
    return [(s, apply_permutation(frame, s)) for s in perms]


def overlap_matrix(a, b):
    """``O[i, j] = Tr(P^a_i P^b_j)``, real and doubly stochastic."""
    return np.real(np.einsum("iab,jba->ij", a.projectors, b.projectors))


def match_frames(a, b, threshold=0.5):
    """Permutation relating two frames of the same size.

    Returns ``(sigma, min_overlap)`` with ``b ~ apply_permutation(a, sigma)``:
    slot ``n`` of ``b`` is closest to slot ``sigma(n)`` of ``a``.  Each slot
    of ``b`` picks its best partner in ``a``; the assignment is accepted only
    if every chosen overlap exceeds ``threshold`` (for complete rank-1 sets at
    most one partner can exceed 1/2, so the greedy choice is the optimum).

    Raises
    ------
    AmbiguousMatch
        Some slot has no partner with overlap above ``threshold``.
    """
    if a.size != b.size:
        raise SizeMismatch(f"frames of size {a.size} and {b.size}")
    o = overlap_matrix(a, b)
    best = np.argmax(o, axis=0)
    chosen = o[best, np.arange(b.size)]
    if np.any(chosen <= threshold) or len(set(best.tolist())) != b.size:
        raise AmbiguousMatch(
            f"frame match ambiguous (min best overlap {float(np.min(chosen)):.3f})", overlaps=o
        )
    return Permutation(tuple(best.tolist())), float(min(1.0, np.min(chosen)))

