"""Adiabatic transport of eigenprojector frames along parameter paths.

Lifts paths in the parameter space of Hermitian or Floquet operator families
to continuously ordered eigenprojector frames, reads off the permutation of
eigenspaces a path induces, and relates loop permutations to winding numbers
around punctures.  The kicked spin-1/2 of :mod:`eigenlift.spin` is the worked
example.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .frames import (
    FLOQUET,
    GAP_MIN,
    HERMITIAN,
    EigenFrame,
    Permutation,
    SpectralFamily,
    apply_permutation,
    enumerate_fiber,
    frame_at,
    match_frames,
    overlap_matrix,
)
from .linalg import hermitian_eig, unitary_eig, unitary_from_hermitian
from .paths import (
    Comparison,
    LiftResult,
    Path,
    circle,
    compare_paths,
    concat,
    lift_path,
    monodromy,
    predict_monodromy,
    reverse,
    winding_number,
)
