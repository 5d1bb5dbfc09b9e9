"""Periodically kicked spin-1/2 in an in-plane static field.

One period of the drive is a precession about the static field ``B`` in the
xy-plane followed by a kick of strength ``lambda`` on the spin-down level:

    U = exp(-i lambda (1 - sigma_z)/2) exp(-i B . sigma / 2),

with the kick strength locked to the field angle, ``lambda = phi``.  Because
``U`` is 2 pi periodic in ``lambda`` the operator is single valued on the
punctured field plane, while its eigenvectors are not: carrying them once
around the origin exchanges the two eigenprojectors.

Units have hbar = 1 and a unit drive period.
"""

import numpy as np

from . import linalg
from .errors import DegeneratePoint, NotNormalized, OriginExcluded
from .frames import FLOQUET, SpectralFamily
from .paths import Path, arc, polar_curve

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])
IDENTITY = np.eye(2, dtype=complex)

ORIGIN = (0.0, 0.0)

#: |sin(Delta/2)| below which the analytic Bloch vector is refused.
BLOCH_GUARD = 1e-8

#: Preset radius (in field units) and outward bulge of the deformed arc.
PRESET_RADIUS = np.pi
PRESET_BULGE = 1.5


def cylindrical(point):
    """``(B, phi)`` of a field point, ``phi`` on (-pi, pi]."""
    bx, by = float(point[0]), float(point[1])
    b = np.hypot(bx, by)
    if b == 0.0:
        raise OriginExcluded("the spin model excludes zero field")
    phi = np.arctan2(by, bx)
    if phi <= -np.pi:
        phi = np.pi
    return b, phi


def floquet_operator(point):
    """One-period evolution operator at field ``point = (Bx, By)``.

    Raises
    ------
    OriginExcluded
    """
    b, phi = cylindrical(point)
    n_dot_sigma = (point[0] * SIGMA_X + point[1] * SIGMA_Y) / b
    precession = np.cos(b / 2) * IDENTITY - 1j * np.sin(b / 2) * n_dot_sigma
    kick = np.diag([1.0, np.exp(-1j * phi)])
    return kick @ precession


def floquet_operator_from_exponentials(point):
    """Same operator built from matrix exponentials of the two generators."""
    b, phi = cylindrical(point)
    kick = linalg.unitary_from_hermitian((IDENTITY - SIGMA_Z) / 2, phi)
    field = (point[0] * SIGMA_X + point[1] * SIGMA_Y) / 2
    return kick @ linalg.unitary_from_hermitian(field, 1.0)


def analytic_delta(point):
    """Quasienergy splitting ``Delta = 2 arccos(cos(phi/2) cos(B/2))`` in [0, 2 pi]."""
    b, phi = cylindrical(point)
    cos_half = np.cos(phi / 2) * np.cos(b / 2)
    # sin(Delta/2) without the cancellation of sqrt(1 - cos^2) near Delta = 0
    sin_half = np.sqrt(np.sin(phi / 2) ** 2 + (np.cos(phi / 2) * np.sin(b / 2)) ** 2)
    return float(2 * np.arctan2(sin_half, cos_half))


def analytic_eigenphases(point):
    """Eigenphases ``-(phi + Delta)/2`` and ``-(phi - Delta)/2``, wrapped to (-pi, pi].

    The first belongs to ``P(a)``, the second to ``P(-a)`` with ``a`` from
    :func:`analytic_bloch`.
    """
    _, phi = cylindrical(point)
    delta = analytic_delta(point)
    raw = np.array([-(phi + delta) / 2, -(phi - delta) / 2])
    return linalg.principal_angle(np.exp(1j * raw))


def analytic_bloch(point):
    """Bloch vector ``a`` with ``P(a)`` and ``P(-a)`` the eigenprojectors.

    Raises
    ------
    DegeneratePoint
        The two quasienergies (nearly) coincide, so ``a`` is undefined.
    """
    b, phi = cylindrical(point)
    delta = analytic_delta(point)
    s = np.sin(delta / 2)
    if abs(s) < BLOCH_GUARD:
        raise DegeneratePoint(
            f"quasienergy gap Delta={delta:.3e} at {list(map(float, point))}: Bloch vector undefined",
            gap=min(delta, 2 * np.pi - delta),
        )
    e_rho = np.array([np.cos(phi), np.sin(phi), 0.0])
    e_phi = np.array([-np.sin(phi), np.cos(phi), 0.0])
    e_z = np.array([0.0, 0.0, 1.0])
    a = (np.sin(b / 2) * (np.cos(phi / 2) * e_rho - np.sin(phi / 2) * e_phi)
         - np.sin(phi / 2) * np.cos(b / 2) * e_z) / s
    return a


def bloch_projector(a):
    """``P(a) = (1 + a . sigma)/2`` for a unit vector ``a``."""
    a = np.asarray(a, dtype=float)
    if a.shape != (3,) or abs(np.linalg.norm(a) - 1.0) > 1e-10:
        raise NotNormalized(f"Bloch vector must be a unit 3-vector, got {a}")
    return 0.5 * (IDENTITY + np.einsum("i,ijk->jk", a, PAULI))


def projector_to_bloch(p):
    """Inverse of :func:`bloch_projector`: ``a_i = Tr(P sigma_i)``."""
    p = np.asarray(p, dtype=complex)
    if p.shape != (2, 2):
        raise ValueError("expected a 2x2 projector")
    linalg.check_projector(p)
    a = np.real(np.einsum("jk,ikj->i", p, PAULI))
    return a / np.linalg.norm(a)


def spin_family():
    """The kicked spin as a :class:`SpectralFamily` on the punctured plane."""
    return SpectralFamily(FLOQUET, floquet_operator, dim=2, punctures=(ORIGIN,), name="kicked spin-1/2")


def preset_paths(n=256):
    """The three reference paths from ``(pi, 0)`` to ``(-pi, 0)``.

    ``C_a``
        Upper semicircle of radius pi, counterclockwise through ``(0, pi)``.
    ``C_a'``
        Upper arc bulging outward to radius 1.5 pi halfway; homotopic to
        ``C_a`` in the punctured plane.
    ``C_c``
        Lower semicircle, clockwise through ``(0, -pi)``.
    """
    if n < 2:
        raise ValueError("presets need at least two samples")
    theta = np.linspace(0.0, np.pi, n)
    upper = arc(PRESET_RADIUS, 0.0, np.pi, n).samples.copy()
    lower = arc(PRESET_RADIUS, 0.0, -np.pi, n).samples.copy()
    bulged = polar_curve(theta, PRESET_RADIUS * (1 + (PRESET_BULGE - 1) * np.sin(theta))).samples.copy()
    start, end = np.array([np.pi, 0.0]), np.array([-np.pi, 0.0])
    out = {}
    for name, pts in (("C_a", upper), ("C_a'", bulged), ("C_c", lower)):
        pts[0], pts[-1] = start, end
        out[name] = Path(pts, name=name)
    return out


PRESET_GEOMETRY = {
    "C_a": "upper semicircle, radius pi",
    "C_a'": "upper arc, radius pi*(1 + 0.5 sin t), t in [0, pi]",
    "C_c": "lower semicircle, radius pi",
}
