"""Covariance-matrix and symplectic-group algebra for two-mode Gaussian states.

Conventions used throughout the package:

* quadrature ordering is (x1, p1, x2, p2, ...); mode 1 is the signal /
  return mode, mode 2 the idler;
* the vacuum covariance matrix is the identity (variance 1 per
  quadrature), so a thermal state with mean photon number N has
  covariance (2N + 1) * I.

All values are immutable after construction and every operation is a
pure function.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import schur, sqrtm

__all__ = [
    "UnphysicalStateError",
    "NumericalError",
    "CovarianceMatrix",
    "SymplecticMatrix",
    "GaussianState",
    "WilliamsonDecomposition",
    "symplectic_form",
    "tmsv_covariance",
    "single_mode_squeeze_symplectic",
    "two_mode_squeeze_symplectic",
    "apply_symplectic",
    "symplectic_eigenvalues",
    "williamson",
    "partial_transpose",
    "log_negativity",
]

SYMMETRY_TOL = 1e-12
OMEGA_TOL = 1e-10
DET_TOL = 1e-9
# Admits pure states under roundoff while rejecting genuinely
# unphysical covariance matrices.
PHYSICALITY_TOL = 1e-6


class UnphysicalStateError(ValueError):
    """A covariance matrix violates V + i*Omega >= 0."""


class NumericalError(RuntimeError):
    """A numerical routine failed to produce a trustworthy result."""


def symplectic_form(n_modes: int) -> np.ndarray:
    """Return the 2n x 2n symplectic form Omega.

    Block-diagonal direct sum of n copies of [[0, 1], [-1, 0]] in the
    (x1, p1, x2, p2, ...) ordering.
    """
    if n_modes < 1:
        raise ValueError(f"n_modes must be >= 1, got {n_modes}")
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _as_matrix(obj) -> np.ndarray:
    return obj.entries if hasattr(obj, "entries") else np.asarray(obj, dtype=float)


def _symplectic_spectrum(matrix: np.ndarray) -> np.ndarray:
    """Moduli of the eigenvalues of i*Omega*V, one per mode, descending.

    Does not check physicality; usable on partial transposes.
    """
    n = matrix.shape[0] // 2
    eigs = np.linalg.eigvals(1j * symplectic_form(n) @ matrix)
    return np.sort(np.abs(eigs))[::-1][::2]


def _frozen_array(value) -> np.ndarray:
    arr = np.array(value, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class CovarianceMatrix:
    """Real symmetric 2n x 2n matrix of quadrature second moments.

    Validated on construction: symmetric, positive definite, and all
    symplectic eigenvalues >= 1 within ``PHYSICALITY_TOL``.
    """

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] % 2:
            raise ValueError(f"covariance matrix must be 2n x 2n, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("covariance matrix has non-finite entries")
        if np.max(np.abs(arr - arr.T)) > SYMMETRY_TOL:
            raise ValueError("covariance matrix is not symmetric")
        object.__setattr__(self, "entries", _frozen_array(arr))
        nu_min = _symplectic_spectrum(arr)[-1]
        if nu_min < 1.0 - PHYSICALITY_TOL:
            raise UnphysicalStateError(
                f"smallest symplectic eigenvalue {nu_min} < 1"
            )
        if np.linalg.eigvalsh(arr)[0] <= 0.0:
            raise UnphysicalStateError("covariance matrix is not positive definite")

    @property
    def n_modes(self) -> int:
        return self.entries.shape[0] // 2


@dataclass(frozen=True)
class SymplecticMatrix:
    """Real 2n x 2n matrix S with S Omega S^T = Omega and det S = 1."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] % 2:
            raise ValueError(f"symplectic matrix must be 2n x 2n, got {arr.shape}")
        omega = symplectic_form(arr.shape[0] // 2)
        if np.max(np.abs(arr @ omega @ arr.T - omega)) > OMEGA_TOL:
            raise ValueError("matrix does not preserve the symplectic form")
        if abs(np.linalg.det(arr) - 1.0) > DET_TOL:
            raise ValueError("symplectic matrix must have determinant 1")
        object.__setattr__(self, "entries", _frozen_array(arr))

    @property
    def n_modes(self) -> int:
        return self.entries.shape[0] // 2


@dataclass(frozen=True)
class GaussianState:
    """Zero- or nonzero-mean Gaussian state: quadrature means plus covariance."""

    mean: np.ndarray
    cov: CovarianceMatrix

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        if mean.shape != (2 * self.cov.n_modes,):
            raise ValueError(
                f"mean must have length {2 * self.cov.n_modes}, got {mean.shape}"
            )
        object.__setattr__(self, "mean", _frozen_array(mean))

    @property
    def n_modes(self) -> int:
        return self.cov.n_modes


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """V = S diag(nu_1, nu_1, ..., nu_n, nu_n) S^T with S symplectic.

    ``sympl_eigenvalues`` are stored descending; only the reassembly
    identity is contractual, not a unique choice of S.
    """

    transform: SymplecticMatrix
    sympl_eigenvalues: tuple[float, ...]
    reduced_accuracy: bool = field(default=False)

    def diagonal(self) -> np.ndarray:
        return np.repeat(np.asarray(self.sympl_eigenvalues, dtype=float), 2)

    def reassemble(self) -> np.ndarray:
        s = self.transform.entries
        return s @ np.diag(self.diagonal()) @ s.T


def tmsv_covariance(n_s: float) -> CovarianceMatrix:
    """Covariance of a two-mode squeezed vacuum with mean signal photon number n_s.

    Diagonal A = 2 n_s + 1 and off-diagonal +/- C with
    C = 2 sqrt(n_s (1 + n_s)).
    """
    if not np.isfinite(n_s) or n_s < 0:
        raise ValueError(f"n_s must be finite and >= 0, got {n_s}")
    a = 2.0 * n_s + 1.0
    c = 2.0 * np.sqrt(n_s * (1.0 + n_s))
    v = np.diag([a, a, a, a])
    v[0, 2] = v[2, 0] = c
    v[1, 3] = v[3, 1] = -c
    return CovarianceMatrix(v)


def single_mode_squeeze_symplectic(r1: float, r2: float) -> SymplecticMatrix:
    """Symplectic matrix of two single-mode squeezers (phases fixed to zero).

    diag(e^r1, e^-r1, e^r2, e^-r2); the diagonal entries are
    sqrt(n_j + 1) +/- sqrt(n_j) with n_j = sinh^2 r_j.
    """
    if not (np.isfinite(r1) and np.isfinite(r2)):
        raise ValueError("squeeze parameters must be finite")
    return SymplecticMatrix(
        np.diag([np.exp(r1), np.exp(-r1), np.exp(r2), np.exp(-r2)])
    )


def two_mode_squeeze_symplectic(r: float) -> SymplecticMatrix:
    """Symplectic matrix of a two-mode squeezer (phase fixed to zero).

    [[I cosh r, sigma_z sinh r], [sigma_z sinh r, I cosh r]].
    """
    if not np.isfinite(r):
        raise ValueError("squeeze parameter must be finite")
    ch, sh = np.cosh(r), np.sinh(r)
    sz = np.diag([1.0, -1.0])
    s = np.block([[ch * np.eye(2), sh * sz], [sh * sz, ch * np.eye(2)]])
    return SymplecticMatrix(s)


def apply_symplectic(s: SymplecticMatrix, v: CovarianceMatrix) -> CovarianceMatrix:
    """Return S V S^T; preserves the symplectic spectrum of V."""
    if s.n_modes != v.n_modes:
        raise ValueError(
            f"mode mismatch: symplectic has {s.n_modes}, covariance has {v.n_modes}"
        )
    out = s.entries @ v.entries @ s.entries.T
    return CovarianceMatrix((out + out.T) / 2.0)


def symplectic_eigenvalues(v: CovarianceMatrix | np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues of a physical covariance matrix, descending."""
    spectrum = _symplectic_spectrum(_as_matrix(v))
    if spectrum[-1] < 1.0 - PHYSICALITY_TOL:
        raise UnphysicalStateError(
            f"smallest symplectic eigenvalue {spectrum[-1]} < 1"
        )
    return spectrum


def williamson(v: CovarianceMatrix | np.ndarray) -> WilliamsonDecomposition:
    """Numerically decompose V = S diag(nu) S^T with S symplectic.

    Forms the symmetric square root V^(1/2), brings the antisymmetric
    matrix V^(1/2) Omega V^(1/2) to its canonical 2x2-block form with a
    real Schur decomposition, and assembles S from the orthogonal
    factor.  Sign freedom in the columns is fixed so that the
    largest-magnitude entry of each column pair is positive.
    """
    arr = _as_matrix(v)
    n = arr.shape[0] // 2
    omega = symplectic_form(n)
    v_half = sqrtm(arr)
    if np.iscomplexobj(v_half):
        if np.max(np.abs(v_half.imag)) > 1e-10:
            raise NumericalError("matrix square root is not real")
        v_half = v_half.real
    m = v_half @ omega @ v_half
    m = (m - m.T) / 2.0
    t, o = schur(m, output="real")
    # Normalize each diagonal block to [[0, nu], [-nu, 0]] with nu > 0.
    nus = np.empty(n)
    for j in range(n):
        nu = t[2 * j, 2 * j + 1]
        if nu < 0:
            o[:, [2 * j, 2 * j + 1]] = o[:, [2 * j + 1, 2 * j]]
            nu = -nu
        nus[j] = nu
    # Sort modes by descending symplectic eigenvalue.
    order = np.argsort(nus)[::-1]
    nus = nus[order]
    col_order = np.ravel(np.column_stack((2 * order, 2 * order + 1)))
    o = o[:, col_order]
    if nus[-1] <= 0:
        raise NumericalError("failed to extract a positive symplectic spectrum")
    d_inv_half = np.repeat(1.0 / np.sqrt(nus), 2)
    s = v_half @ o @ np.diag(d_inv_half)
    for j in range(n):
        block = s[:, 2 * j : 2 * j + 2]
        flat = np.abs(block).argmax()
        if block.flat[flat] < 0:
            s[:, 2 * j : 2 * j + 2] = -block
    reduced = bool(n > 1 and np.min(np.abs(np.diff(nus))) < 1e-8 * max(1.0, nus[0]))
    try:
        transform = SymplecticMatrix(s)
    except ValueError as exc:
        raise NumericalError(f"Williamson transform is not symplectic: {exc}") from exc
    decomp = WilliamsonDecomposition(transform, tuple(nus), reduced_accuracy=reduced)
    rel = np.max(np.abs(decomp.reassemble() - arr)) / np.max(np.abs(arr))
    if rel > 1e-8:
        raise NumericalError(f"Williamson reassembly error {rel} exceeds 1e-8")
    return decomp


def partial_transpose(v: CovarianceMatrix | np.ndarray, mode: int = 1) -> np.ndarray:
    """Flip the sign of one mode's p quadrature (two-mode matrices only).

    The result may be unphysical and is therefore returned as a plain
    array, without the covariance-matrix invariants.
    """
    arr = _as_matrix(v)
    if arr.shape != (4, 4):
        raise ValueError("partial transpose is implemented for two-mode matrices")
    if mode not in (0, 1):
        raise ValueError(f"mode index must be 0 or 1, got {mode}")
    p = np.ones(4)
    p[2 * mode + 1] = -1.0
    return (arr * p).T * p


def log_negativity(v: CovarianceMatrix) -> float:
    """Logarithmic negativity max(0, -log2 nu_min~) of a two-mode state.

    nu_min~ is the smallest symplectic eigenvalue of the partial
    transpose.
    """
    nu_min = _symplectic_spectrum(partial_transpose(v))[-1]
    if nu_min <= 0:
        raise NumericalError("partial transpose has a vanishing symplectic eigenvalue")
    return max(0.0, -float(np.log2(nu_min)))
