"""Brute-force validator on a truncated Fock space.

Builds the illumination states as dense density operators by simulating
the probe preparation and the beamsplitter-plus-thermal-environment
dilation of the lossy channel, then evaluates overlaps and the
single-copy Helstrom error spectrally.  Everything here is independent
of the Gaussian closed forms, which is the point: agreement between the
two routes validates both.

Only the low-occupancy regime (N_B of order 1 or below) is reachable at
reasonable truncation dimensions; the strong-background regime is
covered by exact-vs-asymptotic convergence on the Gaussian side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .scenarios import ScenarioParams
from .symplectic import CovarianceMatrix

__all__ = [
    "TAIL_TOLERANCE",
    "TruncationError",
    "FockOperator",
    "TruncationReport",
    "destroy",
    "tensor",
    "tmsv_ket",
    "density",
    "squeeze_unitary_single",
    "squeeze_unitary_two",
    "thermal_state",
    "apply_unitary",
    "partial_trace",
    "lossy_thermal_channel",
    "truncation_report",
    "covariance_of",
    "probe_ket",
    "q_s_numeric",
    "helstrom_error_single_copy",
    "oracle_hypotheses",
]

TAIL_TOLERANCE = 1e-8
HERMITICITY_TOL = 1e-10
NEGATIVITY_FLOOR = -1e-9
DEFAULT_DIMS = (14, 14, 24)


class TruncationError(RuntimeError):
    """Truncated representation carries too much weight at the edge."""


@dataclass(frozen=True)
class FockOperator:
    """Dense operator (or ket) on a truncated multi-mode Fock space."""

    mode_dims: tuple[int, ...]
    entries: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.mode_dims)
        if any(d < 1 for d in dims):
            raise ValueError(f"mode dimensions must be >= 1, got {dims}")
        total = int(np.prod(dims))
        arr = np.asarray(self.entries, dtype=complex)
        if arr.shape not in ((total,), (total, total)):
            raise ValueError(
                f"entries shape {arr.shape} does not match mode dims {dims}"
            )
        object.__setattr__(self, "mode_dims", dims)
        object.__setattr__(self, "entries", arr)

    @property
    def is_ket(self) -> bool:
        return self.entries.ndim == 1

    @property
    def dim(self) -> int:
        return int(np.prod(self.mode_dims))


@dataclass(frozen=True)
class TruncationReport:
    """Weight in the top two Fock levels of the worst mode."""

    tail_mass: float
    converged: bool
    tail_tolerance: float = TAIL_TOLERANCE


def destroy(dim: int) -> np.ndarray:
    """Annihilation operator on a dim-level truncation."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    return np.diag(np.sqrt(np.arange(1.0, dim)), 1).astype(complex)


def tensor(*ops: np.ndarray) -> np.ndarray:
    out = ops[0]
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def _embedded_destroy(dims: tuple[int, ...], mode: int) -> np.ndarray:
    parts = [np.eye(d, dtype=complex) for d in dims]
    parts[mode] = destroy(dims[mode])
    return tensor(*parts)


def tmsv_ket(n_s: float, dim: int) -> FockOperator:
    """Two-mode squeezed vacuum ket, truncated and NOT renormalized.

    Amplitude sqrt(N_S^n / (1+N_S)^(n+1)) on |n, n>; the missing tail
    mass is the truncation diagnostic.
    """
    if n_s < 0 or not np.isfinite(n_s):
        raise ValueError(f"n_s must be finite and >= 0, got {n_s}")
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    n = np.arange(dim)
    amps = np.sqrt(n_s**n / (1.0 + n_s) ** (n + 1))
    ket = np.zeros(dim * dim, dtype=complex)
    ket[n * dim + n] = amps
    return FockOperator((dim, dim), ket)


def density(state: FockOperator) -> FockOperator:
    if not state.is_ket:
        return state
    return FockOperator(state.mode_dims, np.outer(state.entries, state.entries.conj()))


def squeeze_unitary_single(r: float, dim: int) -> FockOperator:
    """Single-mode squeezer, exp[(r/2)(a^dag^2 - a^2)], truncated.

    Sign convention: conjugating a state with this unitary scales the
    x quadrature by e^r and p by e^-r, matching the symplectic matrix
    diag(e^r, e^-r) on the Gaussian side.
    """
    a = destroy(dim)
    gen = 0.5 * r * (a.conj().T @ a.conj().T - a @ a)
    return FockOperator((dim,), expm(gen))


def squeeze_unitary_two(r: float, dims: tuple[int, int]) -> FockOperator:
    """Two-mode squeezer, exp[r (a1^dag a2^dag - a1 a2)], truncated.

    Sign convention chosen so that acting on the two-mode vacuum gives
    the positive-amplitude pair state sech(r) sum_n tanh(r)^n |n, n>,
    i.e. the same phase as ``tmsv_ket`` with N_S = sinh^2 r.
    """
    a1 = _embedded_destroy(tuple(dims), 0)
    a2 = _embedded_destroy(tuple(dims), 1)
    gen = r * (a1.conj().T @ a2.conj().T - a1 @ a2)
    return FockOperator(tuple(dims), expm(gen))


def thermal_state(n: float, dim: int) -> FockOperator:
    """Thermal density operator with mean photon number n, truncated."""
    if n < 0 or not np.isfinite(n):
        raise ValueError(f"n must be finite and >= 0, got {n}")
    levels = np.arange(dim)
    probs = n**levels / (1.0 + n) ** (levels + 1)
    return FockOperator((dim,), np.diag(probs).astype(complex))


def apply_unitary(u: FockOperator, state: FockOperator) -> FockOperator:
    if u.dim != state.dim:
        raise ValueError(f"dimension mismatch: {u.dim} vs {state.dim}")
    if state.is_ket:
        return FockOperator(state.mode_dims, u.entries @ state.entries)
    return FockOperator(state.mode_dims, u.entries @ state.entries @ u.entries.conj().T)


def partial_trace(op: FockOperator, keep: tuple[int, ...]) -> FockOperator:
    """Trace out all modes not listed in ``keep`` (order preserved)."""
    rho = density(op)
    dims = rho.mode_dims
    n = len(dims)
    keep = tuple(keep)
    arr = rho.entries.reshape(dims + dims)
    traced = sorted(set(range(n)) - set(keep), reverse=True)
    for mode in traced:
        arr = np.trace(arr, axis1=mode, axis2=mode + arr.ndim // 2)
    kept_dims = tuple(dims[k] for k in keep)
    total = int(np.prod(kept_dims))
    return FockOperator(kept_dims, arr.reshape(total, total))


def _mode_populations(op: FockOperator) -> list[np.ndarray]:
    dims = op.mode_dims
    if op.is_ket:
        probs = np.abs(op.entries.reshape(dims)) ** 2
        return [
            probs.sum(axis=tuple(j for j in range(len(dims)) if j != k))
            for k in range(len(dims))
        ]
    diag = np.real(np.diagonal(op.entries)).reshape(dims)
    return [
        diag.sum(axis=tuple(j for j in range(len(dims)) if j != k))
        for k in range(len(dims))
    ]


def truncation_report(op: FockOperator, tol: float = TAIL_TOLERANCE) -> TruncationReport:
    """Population in the top two levels of the most occupied mode."""
    tail = max(float(pop[-2:].sum()) for pop in _mode_populations(op))
    return TruncationReport(tail_mass=tail, converged=tail < tol, tail_tolerance=tol)


def lossy_thermal_channel(
    rho: FockOperator,
    kappa: float,
    n_b: float,
    env_dim: int,
    tol: float = TAIL_TOLERANCE,
) -> FockOperator:
    """Mix the signal mode with a thermal environment and discard it.

    The retained output mode is sqrt(kappa) a_S + sqrt(1-kappa) a_E
    where the environment is thermal with mean N_B / (1 - kappa), so
    the background shows mean photon number N_B whether or not the
    signal returns.  The idler (second) mode is untouched.  Implemented
    by contracting the Kraus operators of the beamsplitter dilation on
    the signal factor.
    """
    if not 0.0 <= kappa < 1.0:
        raise ValueError(f"kappa must lie in [0, 1), got {kappa}")
    if len(rho.mode_dims) != 2:
        raise ValueError("input must be a two-mode (signal, idler) operator")
    rho = density(rho)
    d_s, d_i = rho.mode_dims
    env_mean = n_b / (1.0 - kappa)
    env = thermal_state(env_mean, env_dim)
    env_report = truncation_report(env, tol)
    if not env_report.converged:
        raise TruncationError(
            f"environment tail mass {env_report.tail_mass:.3e} exceeds {tol:.1e}; "
            f"raise env_dim above {env_dim}"
        )
    probs = np.real(np.diagonal(env.entries))

    theta = np.arccos(np.sqrt(kappa))
    a_s = _embedded_destroy((d_s, env_dim), 0)
    a_e = _embedded_destroy((d_s, env_dim), 1)
    gen = theta * (a_s.conj().T @ a_e - a_s @ a_e.conj().T)
    u = expm(gen).reshape(d_s, env_dim, d_s, env_dim)

    rho4 = rho.entries.reshape(d_s, d_i, d_s, d_i)
    out = np.zeros_like(rho4)
    weight_floor = 1e-20
    for e_in in range(env_dim):
        p = probs[e_in]
        if p < weight_floor:
            continue
        for e_out in range(env_dim):
            k = u[:, e_out, :, e_in]
            left = np.tensordot(k, rho4, axes=([1], [0]))  # (a, i, b, j)
            both = np.tensordot(left, k.conj(), axes=([2], [1]))  # (a, i, j, c)
            out += p * both.transpose(0, 1, 3, 2)
    result = out.reshape(d_s * d_i, d_s * d_i)
    result = (result + result.conj().T) / 2.0
    return FockOperator((d_s, d_i), result)


def covariance_of(rho: FockOperator) -> CovarianceMatrix:
    """Quadrature covariance (vacuum variance 1) of a Fock-space state."""
    rho = density(rho)
    dims = rho.mode_dims
    quads = []
    for mode in range(len(dims)):
        a = _embedded_destroy(dims, mode)
        quads.append(a + a.conj().T)  # x
        quads.append(-1j * (a - a.conj().T))  # p
    means = np.array([np.real(np.trace(rho.entries @ q)) for q in quads])
    n_q = len(quads)
    cov = np.empty((n_q, n_q))
    for j in range(n_q):
        rq = rho.entries @ quads[j]
        qr = quads[j] @ rho.entries
        for k in range(j, n_q):
            moment = 0.5 * np.trace((rq + qr) @ quads[k])
            cov[j, k] = cov[k, j] = np.real(moment) - means[j] * means[k]
    return CovarianceMatrix((cov + cov.T) / 2.0)


def _checked_spectral(rho: FockOperator):
    arr = rho.entries
    if np.max(np.abs(arr - arr.conj().T)) > HERMITICITY_TOL:
        raise ValueError("density operator is not Hermitian")
    vals, vecs = np.linalg.eigh(arr)
    if vals[0] < NEGATIVITY_FLOOR:
        raise ValueError(f"density operator has negative eigenvalue {vals[0]}")
    return np.clip(vals, 0.0, None), vecs


def q_s_numeric(rho0: FockOperator, rho1: FockOperator, s: float) -> float:
    """Tr[rho0^s rho1^(1-s)] via Hermitian eigendecompositions."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"s must lie in [0, 1], got {s}")
    if rho0.mode_dims != rho1.mode_dims:
        raise ValueError("operators live on different truncations")
    v0, u0 = _checked_spectral(rho0)
    v1, u1 = _checked_spectral(rho1)
    pow0 = (u0 * v0**s) @ u0.conj().T
    pow1 = (u1 * v1 ** (1.0 - s)) @ u1.conj().T
    value = np.trace(pow0 @ pow1)
    if abs(value.imag) > 1e-9:
        raise ValueError(f"overlap has imaginary part {value.imag}")
    return float(value.real)


def helstrom_error_single_copy(rho0: FockOperator, rho1: FockOperator) -> float:
    """Minimum single-copy discrimination error 0.5 (1 - 0.5 ||rho0 - rho1||_1)."""
    if rho0.mode_dims != rho1.mode_dims:
        raise ValueError("operators live on different truncations")
    _checked_spectral(rho0)
    _checked_spectral(rho1)
    diff = rho0.entries - rho1.entries
    trace_norm = float(np.sum(np.abs(np.linalg.eigvalsh(diff))))
    return 0.5 * (1.0 - 0.5 * trace_norm)


def probe_ket(params: ScenarioParams, dim: int) -> FockOperator:
    """Probe preparation on a (dim, dim) signal-idler truncation."""
    ket = tmsv_ket(params.n_s, dim)
    if params.kind == "tss":
        u1 = squeeze_unitary_single(params.r1, dim).entries
        u2 = squeeze_unitary_single(params.r2, dim).entries
        ket = FockOperator((dim, dim), tensor(u1, u2) @ ket.entries)
    elif params.kind == "tms":
        u = squeeze_unitary_two(params.r, (dim, dim))
        ket = apply_unitary(u, ket)
    return ket


@dataclass(frozen=True)
class OracleStates:
    rho0: FockOperator
    rho1: FockOperator
    probe_report: TruncationReport
    output_report: TruncationReport


def oracle_hypotheses(
    params: ScenarioParams,
    dims: tuple[int, int, int] = DEFAULT_DIMS,
    tol: float = TAIL_TOLERANCE,
) -> OracleStates:
    """Simulate both hypotheses for a scenario on a truncated Fock space.

    ``dims`` is (signal, idler, environment); signal and idler must
    match because the probe ket is diagonal in the pair basis.
    """
    d_s, d_i, d_e = dims
    if d_s != d_i:
        raise ValueError("signal and idler truncations must match")
    ket = probe_ket(params, d_s)
    probe_report = truncation_report(ket, tol)
    rho = density(ket)
    rho1 = lossy_thermal_channel(rho, params.kappa, params.n_b, d_e, tol)
    rho0 = lossy_thermal_channel(rho, 0.0, params.n_b, d_e, tol)
    output_report = truncation_report(rho1, tol)
    return OracleStates(
        rho0=rho0, rho1=rho1,
        probe_report=probe_report, output_report=output_report,
    )
