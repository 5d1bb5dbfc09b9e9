"""Small dense complex linear algebra.

Eigendecompositions here are written out by hand (cyclic Jacobi) rather than
delegated to LAPACK: the matrices are tiny, the results have to be
bit-reproducible from call to call, and the unitary case needs the
commuting-pair construction below, which LAPACK does not offer directly.
"""

import numpy as np

from .errors import NotAProjector, NotHermitian, NotUnitary

#: Eigenvalues of the Hermitian part closer than this are one block in
#: :func:`unitary_eig`; the anti-Hermitian part separates them.
DEGENERACY_BLOCK_TOL = 1e-8

_MAX_SWEEPS = 100


def dagger(m):
    return np.conj(np.swapaxes(m, -1, -2))


def as_matrix(m):
    """Return ``m`` as a finite square complex128 array, or raise ValueError."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def is_hermitian(m, tol=1e-10):
    m = np.asarray(m)
    return bool(np.max(np.abs(m - dagger(m)), initial=0.0) <= tol)


def is_unitary(m, tol=1e-10):
    m = np.asarray(m)
    eye = np.eye(m.shape[0])
    return bool(np.max(np.abs(dagger(m) @ m - eye), initial=0.0) <= tol)


def is_projector(p, herm_tol=1e-12, idem_tol=1e-10, trace_tol=1e-10):
    """True if ``p`` is a rank-1 orthogonal projector to the given tolerances."""
    p = np.asarray(p)
    if not is_hermitian(p, herm_tol):
        return False
    if np.max(np.abs(p @ p - p)) > idem_tol:
        return False
    return bool(abs(np.trace(p) - 1.0) <= trace_tol)


def check_projector(p):
    if not is_projector(p):
        raise NotAProjector("matrix is not a rank-1 orthogonal projector")
    return p


def jacobi_eigh(h):
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Parameters
    ----------
    h : (N, N) array_like
        Hermitian matrix.  Only its Hermitian part is used.

    Returns
    -------
    w : (N,) ndarray
        Eigenvalues in ascending order.
    v : (N, N) ndarray
        Orthonormal eigenvectors as columns, ``h @ v[:, k] == w[k] * v[:, k]``.
    """
    a = np.array(h, dtype=np.complex128)
    a = 0.5 * (a + dagger(a))
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = np.linalg.norm(a)
    if n > 1 and scale > 0.0:
        iu = np.triu_indices(n, 1)
        for _ in range(_MAX_SWEEPS):
            off = np.linalg.norm(a[iu])
            if off <= 1e-15 * scale:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    r = abs(apq)
                    if r <= 1e-300:
                        continue
                    phase = apq / r
                    theta = 0.5 * (a[q, q].real - a[p, p].real) / r
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                    c = 1.0 / np.sqrt(t * t + 1.0)
                    s = t * c
                    # J = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) plane
                    j = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                    idx = [p, q]
                    a[:, idx] = a[:, idx] @ j
                    a[idx, :] = dagger(j) @ a[idx, :]
                    a[p, q] = a[q, p] = 0.0
                    v[:, idx] = v[:, idx] @ j
        else:
            raise RuntimeError("Jacobi iteration did not converge")
    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def projectors_from_vectors(v):
    """Stack of rank-1 projectors ``|v_k><v_k|`` for the columns of ``v``."""
    return np.einsum("ik,jk->kij", v, np.conj(v))


def hermitian_eig(h):
    """Eigenvalues and eigenprojectors of a Hermitian matrix.

    Returns
    -------
    eigenvalues : (N,) ndarray
        Ascending.
    projectors : (N, N, N) ndarray
        ``projectors[k]`` projects onto the eigenvector of ``eigenvalues[k]``.

    Raises
    ------
    NotHermitian
    """
    h = as_matrix(h)
    if not is_hermitian(h, 1e-10):
        raise NotHermitian("matrix is not Hermitian to 1e-10")
    w, v = jacobi_eigh(h)
    return w, projectors_from_vectors(v)


def principal_angle(z):
    """Argument of ``z`` on the branch (-pi, pi]."""
    theta = np.arctan2(np.imag(z), np.real(z))
    return np.where(theta <= -np.pi, np.pi, theta)


def unitary_eigvecs(u):
    """Eigenvectors of a unitary via its commuting Hermitian pair.

    ``A = (U + U^dag)/2`` is diagonalized first; eigenvalues of ``A`` that
    agree to :data:`DEGENERACY_BLOCK_TOL` form a block inside which
    ``B = (U - U^dag)/2i`` is diagonalized.
    """
    a = 0.5 * (u + dagger(u))
    b = (u - dagger(u)) / 2j
    wa, v = jacobi_eigh(a)
    n = len(wa)
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and wa[stop] - wa[stop - 1] <= DEGENERACY_BLOCK_TOL:
            stop += 1
        if stop - start > 1:
            vg = v[:, start:stop]
            _, wg = jacobi_eigh(dagger(vg) @ b @ vg)
            v[:, start:stop] = vg @ wg
        start = stop
    return v


def unitary_eig(u):
    """Eigenphases and eigenprojectors of a unitary matrix.

    Returns
    -------
    eigenphases : (N,) ndarray
        Angles on (-pi, pi], ascending.
    projectors : (N, N, N) ndarray

    Raises
    ------
    NotUnitary
    """
    u = as_matrix(u)
    if not is_unitary(u, 1e-10):
        raise NotUnitary("matrix is not unitary to 1e-10")
    v = unitary_eigvecs(u)
    z = np.einsum("ik,ij,jk->k", np.conj(v), u, v)
    theta = principal_angle(z)
    order = np.argsort(theta, kind="stable")
    return theta[order], projectors_from_vectors(v[:, order])


def unitary_from_hermitian(h, t):
    """``exp(-i h t)`` assembled from the spectral decomposition of ``h``."""
    h = as_matrix(h)
    if not is_hermitian(h, 1e-10):
        raise NotHermitian("matrix is not Hermitian to 1e-10")
    w, v = jacobi_eigh(h)
    return (v * np.exp(-1j * w * t)) @ dagger(v)
