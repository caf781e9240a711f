"""Finite frames over the quaternions.

Quaternionic matrix arithmetic, spectral decompositions through the complex
embedding, an existence test and a constructive synthesis for frames with a
prescribed frame spectrum and vector norms, and a path search that stays
inside a fixed (spectrum, norms) stratum.
"""

from . import _backend
from .admissibility import (
    AdmissibilityCertificate,
    diag_of,
    hull_membership_oracle,
    is_admissible,
    pad_spectrum,
    recenter,
    recenter_diag,
)
from .errors import (
    DegenerateDrawError,
    DimensionError,
    NegativeEigenvalueError,
    NotAdmissibleError,
    NotHermitianError,
    PairingError,
    PathNotFound,
    QFramesError,
    RankError,
    SizeError,
    SpectrumMismatch,
    StructureError,
)
from .frames import (
    Frame,
    NormSpec,
    SpectrumSpec,
    analysis,
    column_norms_sq,
    frame_bounds,
    frame_operator,
    frame_spectrum,
    gram,
    gram_to_frame,
    is_parseval,
    is_tight,
    synthesis,
)
from .homotopy import (
    FramePath,
    PathOptions,
    PathReport,
    align_path_to_fixed_S,
    find_path,
    verify_path,
)
from .kernels import BACKEND
from .qmat import (
    adjoint,
    embed_complex,
    frobenius,
    inner_product,
    is_hermitian,
    is_symplectic,
    matmul,
    qeye,
    real_trace,
    unembed_complex,
)
from .quaternion import Quaternion, qconj, qdiv, qmod, qmul
from .spectral import EigenDecomposition, SVDecomposition, eigh_q, eigvalsh_q, svd_q
from .synthesis import (
    SynthesisOptions,
    random_frame_in_stratum,
    random_symplectic,
    schur_horn_matrix,
    synthesize_frame,
)

__version__ = "0.1.0"

__all__ = [
    name
    for name, obj in list(globals().items())
    if not name.startswith("_") and not isinstance(obj, type(_backend))
]
