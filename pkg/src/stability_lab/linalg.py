"""Dense complex matrix kernel.

Everything here works on square ``complex128`` numpy arrays.  The pieces the
rest of the package leans on:

* :func:`evaluate_word` -- plug a unitary tuple into a relator word,
* :func:`eig_normal` -- eigenvalues of a normal matrix via its commuting
  Hermitian pair (real part, imaginary part), clustered so that conjugate
  spectral pairs are separated correctly,
* :func:`operator_norm` -- largest singular value,
* :func:`arg_det` -- argument and log-magnitude of the determinant from an
  LU factorization, immune to overflow/underflow of the determinant itself,
* :func:`tensor_identity` -- Kronecker product with an identity block.

Matrix dimensions are bounded by a configurable cap (default 4096,
overridable through the ``STABILITY_LAB_MAX_DIM`` environment variable):
the kernels are O(n^3) and meant for desk-scale experiments.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (
    ConvergenceError,
    DimensionCapError,
    MatrixError,
    NormalityError,
    SingularMatrixError,
)
from .relators import Word

DEFAULT_MAX_DIM = 4096
#: absolute pivot floor for arg_det; a true underflow guard, not an accuracy knob
PIVOT_FLOOR = 1e-300
DEFAULT_UNITARITY_TOL = 1e-8
_H_CLUSTER_REL_TOL = 1e-8


def max_dim() -> int:
    """Current matrix dimension cap (env STABILITY_LAB_MAX_DIM overrides)."""
    raw = os.environ.get("STABILITY_LAB_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError:
        raise DimensionCapError(f"STABILITY_LAB_MAX_DIM={raw!r} is not an integer") from None
    if value < 1:
        raise DimensionCapError(f"STABILITY_LAB_MAX_DIM={value} must be positive")
    return value


def as_matrix(m) -> np.ndarray:
    """Validate and convert to a square, finite complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise MatrixError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise MatrixError("empty matrix")
    if a.shape[0] > max_dim():
        raise DimensionCapError(f"dimension {a.shape[0]} exceeds cap {max_dim()}")
    if not np.isfinite(a).all():
        raise MatrixError("matrix has non-finite entries")
    return a


def adjoint(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def operator_norm(m) -> float:
    """Largest singular value of ``m``."""
    a = as_matrix(m)
    try:
        return float(np.linalg.norm(a, 2))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"operator norm SVD failed: {exc}") from exc


def unitarity_defect(m) -> float:
    """``|| m* m - 1 ||`` in operator norm."""
    a = as_matrix(m)
    return operator_norm(adjoint(a) @ a - np.eye(a.shape[0]))


@dataclass(frozen=True)
class UnitaryTuple:
    """Matrices assigned to the generators of a presentation.

    All members share one dimension and must be unitary to within
    ``unitarity_tol`` in operator norm.
    """

    matrices: tuple[np.ndarray, ...]
    labels: tuple[str, ...] = field(default=())
    unitarity_tol: float = DEFAULT_UNITARITY_TOL

    def __post_init__(self):
        if not self.matrices:
            raise MatrixError("a unitary tuple needs at least one matrix")
        mats = tuple(as_matrix(m).copy() for m in self.matrices)
        for m in mats:
            m.flags.writeable = False
        object.__setattr__(self, "matrices", mats)
        dim = mats[0].shape[0]
        for m in mats:
            if m.shape[0] != dim:
                raise MatrixError("matrices in a tuple must share one dimension")
        labels = tuple(self.labels) or tuple(f"g{i}" for i in range(len(mats)))
        if len(labels) != len(mats):
            raise MatrixError("label count does not match matrix count")
        object.__setattr__(self, "labels", labels)
        if self.unitarity_tol < 0:
            raise MatrixError("unitarity_tol must be nonnegative")
        worst = max(unitarity_defect(m) for m in mats)
        if worst > self.unitarity_tol:
            raise MatrixError(
                f"unitarity defect {worst:.3e} exceeds tolerance {self.unitarity_tol:.3e}"
            )

    @property
    def dim(self) -> int:
        return self.matrices[0].shape[0]

    def __len__(self) -> int:
        return len(self.matrices)


def evaluate_word(w: Word, t: UnitaryTuple) -> np.ndarray:
    """Left-to-right product of tuple matrices raised to the word's letter
    exponents.

    Negative exponents use the conjugate transpose, which is the inverse up
    to the tuple's unitarity tolerance.  The empty word evaluates to the
    identity.
    """
    mats = t.matrices
    for g, _ in w.letters:
        if g >= len(mats):
            raise MatrixError(f"word references generator {g}, tuple has {len(mats)} matrices")
    acc = np.eye(t.dim, dtype=np.complex128)
    for g, e in w.letters:
        base = mats[g] if e > 0 else adjoint(mats[g])
        acc = acc @ np.linalg.matrix_power(base, abs(e))
    return acc


def eig_normal(m, normality_tol: float = 1e-8) -> np.ndarray:
    """Eigenvalues of a normal matrix, sorted by principal argument and
    then by modulus.

    Uses the commuting Hermitian pair H = (M+M*)/2, K = (M-M*)/(2i):
    diagonalize H, then diagonalize K restricted to each cluster of nearly
    equal H-eigenvalues (cluster tolerance ``1e-8 * ||M||``).  Conjugate
    eigenvalue pairs of a unitary matrix collide in H and are separated by
    the K stage.  Only normal input is supported; anything else raises.
    """
    a = as_matrix(m)
    n = a.shape[0]
    astar = adjoint(a)
    ncheck = operator_norm(astar @ a - a @ astar)
    if ncheck > normality_tol:
        raise NormalityError(
            f"matrix is not normal: ||M*M - MM*|| = {ncheck:.3e} > {normality_tol:.3e}"
        )
    h = (a + astar) / 2
    k = (a - astar) / 2j
    try:
        h_vals, q = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"Hermitian eigensolver failed: {exc}") from exc
    k_rot = adjoint(q) @ k @ q
    cluster_tol = _H_CLUSTER_REL_TOL * operator_norm(a)
    eigenvalues = np.empty(n, dtype=np.complex128)
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and h_vals[stop] - h_vals[stop - 1] <= cluster_tol:
            stop += 1
        block = k_rot[start:stop, start:stop]
        block = (block + adjoint(block)) / 2
        try:
            k_vals, r = np.linalg.eigh(block)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"Hermitian eigensolver failed: {exc}") from exc
        # pair each cluster eigenvector with its own Rayleigh quotient in H
        weights = np.abs(r) ** 2
        h_local = weights.T @ h_vals[start:stop]
        eigenvalues[start:stop] = h_local + 1j * k_vals
        start = stop
    order = np.lexsort((np.abs(eigenvalues), np.angle(eigenvalues)))
    return eigenvalues[order]


def principal_angle(x: float) -> float:
    """Reduce an angle to the principal range (-pi, pi]."""
    y = math.remainder(x, 2 * math.pi)
    if y <= -math.pi:
        y = math.pi
    return y


def arg_det(m) -> tuple[float, float]:
    """``(arg, log_magnitude)`` of ``det(m)``.

    Accumulates pivot arguments and log-magnitudes from an LU factorization
    with partial pivoting, including the permutation sign, so it never
    forms the determinant itself.  The returned argument lies in
    (-pi, pi].  Raises :class:`SingularMatrixError` when a pivot magnitude
    falls below the floor ``1e-300``.
    """
    a = as_matrix(m)
    with warnings.catch_warnings():
        # exactly-zero pivots are reported through the floor check below
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    pivots = np.diagonal(lu)
    mags = np.abs(pivots)
    if np.min(mags) < PIVOT_FLOOR:
        raise SingularMatrixError("pivot below singularity floor; matrix is singular to tolerance")
    log_mag = float(np.sum(np.log(mags)))
    arg = float(np.sum(np.angle(pivots)))
    swaps = int(np.sum(piv != np.arange(len(piv))))
    if swaps % 2:
        arg += math.pi
    return principal_angle(arg), log_mag


def tensor_identity(t: UnitaryTuple, k: int) -> UnitaryTuple:
    """Replace each matrix M of the tuple by the Kronecker product with the
    k-dimensional identity (dimension n*k); singular values, hence the
    unitarity defect, are unchanged."""
    if k < 1:
        raise MatrixError(f"tensor factor k must be >= 1, got {k}")
    if k == 1:
        return t
    eye_k = np.eye(k)
    mats = tuple(np.kron(m, eye_k) for m in t.matrices)
    return UnitaryTuple(mats, t.labels, t.unitarity_tol)


def dump_matrix(m) -> str:
    """Debug dump: header ``cmatrix <n>`` then n rows of ``re+imj``
    entries, round-trippable at 17 significant digits."""
    a = as_matrix(m)
    n = a.shape[0]
    lines = [f"cmatrix {n}"]
    for row in a:
        lines.append(" ".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in row))
    return "\n".join(lines) + "\n"


def load_matrix(text: str) -> np.ndarray:
    """Parse the :func:`dump_matrix` format."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("cmatrix "):
        raise MatrixError("missing 'cmatrix <n>' header")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise MatrixError("malformed 'cmatrix' header") from None
    if len(lines) != n + 1:
        raise MatrixError(f"expected {n} rows, got {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        entries = ln.split()
        if len(entries) != n:
            raise MatrixError(f"expected {n} entries per row, got {len(entries)}")
        try:
            rows.append([complex(s) for s in entries])
        except ValueError as exc:
            raise MatrixError(f"bad matrix entry: {exc}") from None
    return as_matrix(np.array(rows, dtype=np.complex128))


def load_matrix_file(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return load_matrix(fh.read())
