"""Synthetic spectral families used alongside the spin model."""

import numpy as np

from . import linalg
from .errors import NotHermitian, OriginExcluded
from .frames import FLOQUET, HERMITIAN, SpectralFamily


def linear_hermitian_family(matrices, punctures=(), name="linear Hermitian"):
    """``H(x) = H_0 + sum_i x_i H_i`` for Hermitian coefficient matrices.

    The parameter dimension is ``len(matrices) - 1``.
    """
    mats = [linalg.as_matrix(m) for m in matrices]
    if len(mats) < 2:
        raise ValueError("need H_0 and at least one coefficient matrix")
    if len({m.shape for m in mats}) != 1:
        raise ValueError("coefficient matrices differ in shape")
    for k, m in enumerate(mats):
        if not linalg.is_hermitian(m, 1e-12):
            raise NotHermitian(f"coefficient matrix {k} is not Hermitian")
    stack = np.stack(mats)
    stack.setflags(write=False)

    def evaluate(point):
        return stack[0] + np.tensordot(np.asarray(point, dtype=float), stack[1:], axes=1)

    return SpectralFamily(HERMITIAN, evaluate, dim=len(mats) - 1, punctures=punctures, name=name)


def random_hermitian_family(rng, n, dim=2, scale=1.0):
    """Linear family with Gaussian random Hermitian coefficients (GUE-like)."""
    mats = []
    for k in range(dim + 1):
        x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = 0.5 * (x + x.conj().T)
        if k == 0:
            h = h + np.diag(np.arange(n) * 3.0)
        mats.append(scale * h)
    return linear_hermitian_family(mats)


def clock_family(n, twist=None):
    """N-level Floquet family whose loop around the origin cycles all levels.

    ``U(x, y) = V(r) D(phi) X V(r)^dag`` with ``X`` the cyclic shift,
    ``D(phi) = diag(1, ..., 1, e^{i phi})`` and ``V(r) = exp(-i r G)`` for a
    fixed Hermitian ``twist`` ``G``.  Since ``(D X)^n = e^{i phi}``, the
    eigenphases are ``(phi + 2 pi k)/n``: always ``2 pi/n`` apart, and
    shifted by one level after a full turn of ``phi``.
    """
    if n < 2:
        raise ValueError("clock family needs at least two levels")
    shift = np.roll(np.eye(n, dtype=complex), 1, axis=0)
    if twist is None:
        twist = np.zeros((n, n), dtype=complex)
        for k in range(n - 1):
            twist[k, k + 1] = twist[k + 1, k] = 0.3
    twist = linalg.as_matrix(twist)
    w, v = linalg.jacobi_eigh(twist)

    def evaluate(point):
        x, y = float(point[0]), float(point[1])
        r = np.hypot(x, y)
        if r == 0.0:
            raise OriginExcluded("the clock family excludes the origin")
        phi = np.arctan2(y, x)
        d = np.ones(n, dtype=complex)
        d[-1] = np.exp(1j * phi)
        vr = (v * np.exp(-1j * r * w)) @ v.conj().T
        return vr @ (d[:, None] * shift) @ vr.conj().T

    return SpectralFamily(FLOQUET, evaluate, dim=2, punctures=((0.0, 0.0),), name=f"{n}-level clock")
