"""Hypothesis-pair builders for the three illumination probes.

Each scenario prepares an entangled two-mode probe, sends the signal
mode to a weakly reflecting target embedded in thermal background, and
keeps the idler.  The target-absent state rho_0 and target-present
state rho_1 are zero-mean Gaussian, so a scenario is fully described by
the covariance pair (V0, V1) together with Williamson decompositions of
both.

Probes:

* ``tmsv`` -- two-mode squeezed vacuum;
* ``tss``  -- TMSV followed by two local single-mode squeezers (same
  entanglement as the TMSV);
* ``tms``  -- TMSV followed by a global two-mode squeezer (strictly
  larger entanglement).

The closed-form Williamson data below is scalar arithmetic only (no
linear algebra), so the same functions run unchanged on floats,
numpy long doubles, or mpmath numbers; builders evaluate them at
50 decimal digits and round the results to long double, which absorbs
the heavy internal cancellations of the transform coefficients.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .symplectic import (
    CovarianceMatrix,
    SymplecticMatrix,
    WilliamsonDecomposition,
    williamson,
)

__all__ = [
    "KINDS",
    "ScenarioParams",
    "ModePhotonNumbers",
    "HypothesisPair",
    "TssClosedForm",
    "TmsClosedForm",
    "tss_closed_form",
    "tms_closed_form",
    "tmsv_hypotheses",
    "tss_probe",
    "tss_hypotheses",
    "tms_probe",
    "tms_hypotheses",
    "build_hypotheses",
    "pair_from_covariances",
]

KINDS = ("tmsv", "tss", "tms")

# Closed-form transform coefficients degenerate when these intermediates
# vanish; the generic numeric decomposition takes over below this.
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class ScenarioParams:
    """Parameters of one illumination scenario.

    n_s is the mean signal photon number of the underlying TMSV, n_b
    the background mean photon number, kappa the target reflectivity,
    and m_copies the number of identical probe uses.  r1/r2 apply to
    the tss probe only, r to the tms probe only.
    """

    kind: str
    n_s: float
    n_b: float
    kappa: float
    r1: float = 0.0
    r2: float = 0.0
    r: float = 0.0
    m_copies: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        for name in ("n_s", "n_b", "kappa", "r1", "r2", "r"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
        if self.n_s < 0 or self.n_b < 0:
            raise ValueError("n_s and n_b must be >= 0")
        if not 0.0 <= self.kappa < 1.0:
            raise ValueError(f"kappa must lie in [0, 1), got {self.kappa}")
        if self.m_copies < 1:
            raise ValueError(f"m_copies must be >= 1, got {self.m_copies}")
        if self.kind != "tss" and (self.r1 != 0.0 or self.r2 != 0.0):
            raise ValueError("r1/r2 are only meaningful for kind='tss'")
        if self.kind != "tms" and self.r != 0.0:
            raise ValueError("r is only meaningful for kind='tms'")


@dataclass(frozen=True)
class ModePhotonNumbers:
    """Mean photon numbers of the signal and idler modes of a probe."""

    signal: float
    idler: float


@dataclass(frozen=True)
class TssClosedForm:
    """Scalar Williamson data of the tss (and tmsv) hypothesis pair.

    Fields mirror the analytic solution: symplectic eigenvalues
    (alpha1, alpha2) of V0 and (beta1, beta2) of V1, the V0 transform
    parameter zeta, and the V1 transform entries y1..y4 (diagonal),
    y5/y6/y5p/y6p (off-diagonal), plus the intermediates they are built
    from.  Values keep whatever scalar type they were computed with.
    """

    a: object
    b: object
    c: object
    kappa: object
    g1_plus: object
    g1_minus: object
    g2_plus: object
    g2_minus: object
    alpha1: object
    alpha2: object
    zeta: object
    beta1: object
    beta2: object
    xi: object
    g: object
    h: object
    g_plus: object
    g_minus: object
    h_plus: object
    h_minus: object
    delta1: object
    delta2: object
    y1: object
    y2: object
    y3: object
    y4: object
    y5: object
    y6: object
    y5p: object
    y6p: object

    def v0_transform(self) -> np.ndarray:
        z = float(self.zeta)
        return np.diag([1.0, 1.0, 1.0 / z, z])

    def v1_transform(self) -> np.ndarray:
        y = [float(v) for v in (self.y1, self.y2, self.y3, self.y4,
                                self.y5, self.y6, self.y5p, self.y6p)]
        y1, y2, y3, y4, y5, y6, y5p, y6p = y
        return np.array(
            [
                [y1, 0.0, y5, 0.0],
                [0.0, y2, 0.0, y6],
                [y5p, 0.0, y3, 0.0],
                [0.0, y6p, 0.0, y4],
            ]
        )


@dataclass(frozen=True)
class TmsClosedForm:
    """Scalar Williamson data of the tms hypothesis pair."""

    a_tilde: object
    c_tilde: object
    b: object
    f_tilde: object
    kappa: object
    alpha1: object
    alpha2: object
    beta1: object
    beta2: object
    x_plus: object
    x_minus: object

    def v0_transform(self) -> np.ndarray:
        return np.eye(4)

    def v1_transform(self) -> np.ndarray:
        xp, xm = float(self.x_plus), float(self.x_minus)
        return np.array(
            [
                [xp, 0.0, xm, 0.0],
                [0.0, xp, 0.0, -xm],
                [xm, 0.0, xp, 0.0],
                [0.0, -xm, 0.0, xp],
            ]
        )


@dataclass(frozen=True)
class HypothesisPair:
    """(V0, V1) plus Williamson data for one scenario and channel.

    ``closed_form`` carries the scalar analytic decomposition when it is
    available (it is the primary route for the overlap computation);
    ``w0``/``w1`` always hold assembled matrix decompositions.  Both
    hypothesis states have zero mean.
    """

    v0: CovarianceMatrix
    v1: CovarianceMatrix
    w0: WilliamsonDecomposition
    w1: WilliamsonDecomposition
    params: ScenarioParams | None = None
    closed_form: TssClosedForm | TmsClosedForm | None = None

    @property
    def means(self) -> tuple[np.ndarray, np.ndarray]:
        dim = 2 * self.v0.n_modes
        return np.zeros(dim), np.zeros(dim)


def tss_closed_form(a, b, c, kappa, g1_plus, g1_minus, g2_plus, g2_minus):
    """Analytic Williamson data for the tss hypothesis pair.

    Pure scalar arithmetic; pass floats, long doubles, or mpmath values.
    The tmsv pair is the special case with all gammas equal to 1.
    Raises ZeroDivisionError-like failures outside its domain; callers
    guard on the ``delta1``/``delta2`` magnitudes first via
    ``_tss_degenerate``.
    """
    f_plus = b + kappa * (a * g1_plus**2 - 1)
    f_minus = b + kappa * (a * g1_minus**2 - 1)
    g = f_plus * f_minus - a * a
    h = a * a - kappa * c * c
    g_p = f_plus * g1_minus - a * g1_plus
    g_m = f_minus * g1_plus - a * g1_minus
    h_p = a * f_plus - kappa * c * c * g1_plus**2
    h_m = a * f_minus - kappa * c * c * g1_minus**2
    xi = (g * g - 4 * kappa * c * c * g_p * g_m) ** 0.5
    beta1 = ((g + 2 * h + xi) / 2) ** 0.5
    beta2 = ((g + 2 * h - xi) / 2) ** 0.5
    delta1 = f_plus * beta1**2 - a * h_p
    delta2 = a * h_p - f_plus * beta2**2
    kcc = kappa * c * c
    sk_c = kappa**0.5 * c
    y1 = kcc * g_p**2 * h_p / ((beta1 * xi * delta1) ** 0.5 * delta2)
    y2 = ((beta1 / (xi * delta1)) ** 0.5 * kcc * g_p
          * (2 * a * g_p - g1_plus * (g - xi)) / (2 * delta2))
    y3 = (sk_c * g_p * h_p * (g + xi) * g2_plus
          / (2 * (beta2 * xi * delta2) ** 0.5 * delta1))
    y4 = ((beta2 / (xi * delta2)) ** 0.5 * sk_c * g_p * g2_minus
          * (f_plus * (g + xi) - 2 * kcc * g_p * g1_plus) / (2 * delta1))
    y5 = kcc * g_p**2 * h_p / ((beta2 * xi * delta2) ** 0.5 * delta1)
    y6 = -((beta2 / (xi * delta2)) ** 0.5 * kcc * g_p
           * (g1_plus * (g + xi) - 2 * a * g_p) / (2 * delta1))
    y5p = (sk_c * g_p * h_p * (g - xi) * g2_plus
           / (2 * (beta1 * xi * delta1) ** 0.5 * delta2))
    y6p = -((beta1 / (xi * delta1)) ** 0.5 * sk_c * g_p * g2_minus
            * (2 * kcc * g_p * g1_plus - f_plus * (g - xi)) / (2 * delta2))
    return TssClosedForm(
        a=a, b=b, c=c, kappa=kappa,
        g1_plus=g1_plus, g1_minus=g1_minus,
        g2_plus=g2_plus, g2_minus=g2_minus,
        alpha1=b, alpha2=a, zeta=(g2_minus / g2_plus) ** 0.5,
        beta1=beta1, beta2=beta2, xi=xi,
        g=g, h=h, g_plus=g_p, g_minus=g_m, h_plus=h_p, h_minus=h_m,
        delta1=delta1, delta2=delta2,
        y1=y1, y2=y2, y3=y3, y4=y4, y5=y5, y6=y6, y5p=y5p, y6p=y6p,
    )


def _tss_degenerate(a, b, c, kappa, g1_plus, g1_minus) -> bool:
    """True when the tss transform coefficients are numerically unsafe."""
    f_plus = b + kappa * (a * g1_plus**2 - 1)
    f_minus = b + kappa * (a * g1_minus**2 - 1)
    g = f_plus * f_minus - a * a
    h = a * a - kappa * c * c
    g_p = f_plus * g1_minus - a * g1_plus
    g_m = f_minus * g1_plus - a * g1_minus
    xi_sq = g * g - 4 * kappa * c * c * g_p * g_m
    if xi_sq <= 0:
        return True
    xi = xi_sq**0.5
    beta1_sq = (g + 2 * h + xi) / 2
    beta2_sq = (g + 2 * h - xi) / 2
    if beta1_sq <= 0 or beta2_sq <= 0:
        return True
    h_p = a * f_plus - kappa * c * c * g1_plus**2
    delta1 = f_plus * beta1_sq - a * h_p
    delta2 = a * h_p - f_plus * beta2_sq
    return min(abs(delta1), abs(delta2), xi) < DEGENERACY_TOL


def tms_closed_form(a_tilde, b, c_tilde, kappa):
    """Analytic Williamson data for the tms hypothesis pair (scalar)."""
    f_tilde = kappa * a_tilde + b - kappa
    disc = ((f_tilde + a_tilde) ** 2 - 4 * kappa * c_tilde**2) ** 0.5
    beta1 = (-(a_tilde - f_tilde) + disc) / 2
    beta2 = ((a_tilde - f_tilde) + disc) / 2
    beta_sum = beta1 + beta2
    x_plus = ((f_tilde + a_tilde + beta_sum) / (2 * beta_sum)) ** 0.5
    x_minus = ((f_tilde + a_tilde - beta_sum) / (2 * beta_sum)) ** 0.5
    return TmsClosedForm(
        a_tilde=a_tilde, c_tilde=c_tilde, b=b, f_tilde=f_tilde, kappa=kappa,
        alpha1=b, alpha2=a_tilde, beta1=beta1, beta2=beta2,
        x_plus=x_plus, x_minus=x_minus,
    )


def _ld(x) -> np.longdouble:
    return np.longdouble(x)


# Digits for evaluating the closed-form coefficient chains.  Several of
# them (beta2 and the transform denominators) suffer ~1e9 cancellation
# amplification in the weak-reflectivity regime, so native floats would
# leave only ~6-9 accurate digits; evaluating at 50 digits and rounding
# to longdouble keeps every stored coefficient accurate to its type.
MP_DPS = 50


def _to_longdouble(cf):
    """Round every field of a closed-form record to longdouble."""
    converted = {
        f.name: np.longdouble(mp.nstr(getattr(cf, f.name), 25))
        for f in dataclasses.fields(cf)
    }
    return type(cf)(**converted)


def _mp_probe_scalars(params: ScenarioParams):
    n_s = mp.mpf(params.n_s)
    a = 2 * n_s + 1
    c = 2 * mp.sqrt(n_s * (1 + n_s))
    b = 1 + 2 * mp.mpf(params.n_b)
    return a, b, c, mp.mpf(params.kappa)


def _base_scalars(params: ScenarioParams):
    n_s = _ld(params.n_s)
    a = 2 * n_s + 1
    c = 2 * (n_s * (1 + n_s)) ** 0.5
    b = 1 + 2 * _ld(params.n_b)
    return a, b, c, _ld(params.kappa)


def _closed_decomposition(cf) -> tuple[WilliamsonDecomposition, WilliamsonDecomposition]:
    w0 = WilliamsonDecomposition(
        SymplecticMatrix(cf.v0_transform()),
        (float(cf.alpha1), float(cf.alpha2)),
    )
    w1 = WilliamsonDecomposition(
        SymplecticMatrix(cf.v1_transform()),
        (float(cf.beta1), float(cf.beta2)),
    )
    return w0, w1


def _tss_matrices(a, b, c, kappa, g1p, g1m, g2p, g2m):
    f_plus = b + kappa * (a * g1p**2 - 1)
    f_minus = b + kappa * (a * g1m**2 - 1)
    sk = kappa**0.5
    v0 = np.diag(np.array([b, b, a * g2p**2, a * g2m**2], dtype=float))
    v1 = np.diag(np.array([f_plus, f_minus, a * g2p**2, a * g2m**2], dtype=float))
    v1[0, 2] = v1[2, 0] = float(sk * c * g1p * g2p)
    v1[1, 3] = v1[3, 1] = float(-sk * c * g1m * g2m)
    return v0, v1


def _tss_like_pair(params: ScenarioParams, r1: float, r2: float) -> HypothesisPair:
    a, b, c, kappa = _base_scalars(params)
    g1p, g1m = np.exp(_ld(r1)), np.exp(-_ld(r1))
    g2p, g2m = np.exp(_ld(r2)), np.exp(-_ld(r2))
    v0_arr, v1_arr = _tss_matrices(a, b, c, kappa, g1p, g1m, g2p, g2m)
    v0 = CovarianceMatrix(v0_arr)
    v1 = CovarianceMatrix(v1_arr)
    if params.kappa == 0.0 or _tss_degenerate(a, b, c, kappa, g1p, g1m):
        w0 = williamson(v0)
        w1 = williamson(v1)
        return HypothesisPair(v0, v1, w0, w1, params=params)
    with mp.workdps(MP_DPS):
        ma, mb, mc, mk = _mp_probe_scalars(params)
        cf = _to_longdouble(tss_closed_form(
            ma, mb, mc, mk,
            mp.exp(mp.mpf(r1)), mp.exp(-mp.mpf(r1)),
            mp.exp(mp.mpf(r2)), mp.exp(-mp.mpf(r2)),
        ))
    w0, w1 = _closed_decomposition(cf)
    return HypothesisPair(v0, v1, w0, w1, params=params, closed_form=cf)


def tmsv_hypotheses(params: ScenarioParams) -> HypothesisPair:
    """Hypothesis pair for the plain TMSV probe.

    V0 = diag(B, B, A, A) with B = 1 + 2 N_B; V1 has diagonal
    F = 2 kappa N_S + B on the return mode and +/- sqrt(kappa) C
    signal-idler correlations.
    """
    if params.kind != "tmsv":
        raise ValueError(f"expected kind='tmsv', got {params.kind!r}")
    return _tss_like_pair(params, 0.0, 0.0)


def tss_probe(n_s: float, r1: float, r2: float) -> tuple[CovarianceMatrix, ModePhotonNumbers]:
    """Probe covariance and photon numbers after two local squeezers.

    The signal (idler) photon number is N_S + 2 n_j N_S + n_j with
    n_j = sinh^2 r_j for j = 1 (2).
    """
    for name, value in (("n_s", n_s), ("r1", r1), ("r2", r2)):
        if not np.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value}")
    a = 2.0 * n_s + 1.0
    c = 2.0 * np.sqrt(n_s * (1.0 + n_s))
    g1p, g1m = np.exp(r1), np.exp(-r1)
    g2p, g2m = np.exp(r2), np.exp(-r2)
    v = np.diag([a * g1p**2, a * g1m**2, a * g2p**2, a * g2m**2])
    v[0, 2] = v[2, 0] = c * g1p * g2p
    v[1, 3] = v[3, 1] = -c * g1m * g2m
    n1, n2 = np.sinh(r1) ** 2, np.sinh(r2) ** 2
    photons = ModePhotonNumbers(
        signal=n_s + 2.0 * n1 * n_s + n1,
        idler=n_s + 2.0 * n2 * n_s + n2,
    )
    return CovarianceMatrix(v), photons


def tss_hypotheses(params: ScenarioParams) -> HypothesisPair:
    """Hypothesis pair for the locally squeezed probe.

    Uses the analytic Williamson data (eigenvalues beta1/beta2 and the
    y-coefficient transform); falls back to the generic numeric
    decomposition when the transform denominators degenerate.
    """
    if params.kind != "tss":
        raise ValueError(f"expected kind='tss', got {params.kind!r}")
    return _tss_like_pair(params, params.r1, params.r2)


def tms_probe(n_s: float, r: float) -> tuple[CovarianceMatrix, ModePhotonNumbers]:
    """Probe covariance and photon numbers after a global two-mode squeezer."""
    for name, value in (("n_s", n_s), ("r", r)):
        if not np.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value}")
    a = 2.0 * n_s + 1.0
    c = 2.0 * np.sqrt(n_s * (1.0 + n_s))
    a_t = a * np.cosh(2 * r) + c * np.sinh(2 * r)
    c_t = a * np.sinh(2 * r) + c * np.cosh(2 * r)
    v = np.diag([a_t, a_t, a_t, a_t])
    v[0, 2] = v[2, 0] = c_t
    v[1, 3] = v[3, 1] = -c_t
    n_bar = (a_t - 1.0) / 2.0
    return CovarianceMatrix(v), ModePhotonNumbers(signal=n_bar, idler=n_bar)


def tms_hypotheses(params: ScenarioParams) -> HypothesisPair:
    """Hypothesis pair for the globally squeezed probe."""
    if params.kind != "tms":
        raise ValueError(f"expected kind='tms', got {params.kind!r}")
    a, b, c, kappa = _base_scalars(params)
    r = _ld(params.r)
    e2r = np.exp(2 * r)
    ch, sh = (e2r + 1 / e2r) / 2, (e2r - 1 / e2r) / 2
    a_t = a * ch + c * sh
    c_t = a * sh + c * ch
    f_t = kappa * a_t + b - kappa
    v0 = CovarianceMatrix(np.diag(np.array([b, b, a_t, a_t], dtype=float)))
    v1_arr = np.diag(np.array([f_t, f_t, a_t, a_t], dtype=float))
    v1_arr[0, 2] = v1_arr[2, 0] = float(kappa**0.5 * c_t)
    v1_arr[1, 3] = v1_arr[3, 1] = float(-(kappa**0.5) * c_t)
    v1 = CovarianceMatrix(v1_arr)
    cf = tms_closed_form(a_t, b, c_t, kappa)
    if params.kappa == 0.0 or min(abs(cf.beta1 - cf.beta2), cf.beta1 + cf.beta2) < DEGENERACY_TOL:
        return HypothesisPair(v0, v1, williamson(v0), williamson(v1), params=params)
    with mp.workdps(MP_DPS):
        ma, mb, mc, mk = _mp_probe_scalars(params)
        mr = mp.mpf(params.r)
        ma_t = ma * mp.cosh(2 * mr) + mc * mp.sinh(2 * mr)
        mc_t = ma * mp.sinh(2 * mr) + mc * mp.cosh(2 * mr)
        cf = _to_longdouble(tms_closed_form(ma_t, mb, mc_t, mk))
    w0, w1 = _closed_decomposition(cf)
    return HypothesisPair(v0, v1, w0, w1, params=params, closed_form=cf)


_BUILDERS = {
    "tmsv": tmsv_hypotheses,
    "tss": tss_hypotheses,
    "tms": tms_hypotheses,
}


def build_hypotheses(params: ScenarioParams) -> HypothesisPair:
    """Dispatch to the builder matching ``params.kind``."""
    return _BUILDERS[params.kind](params)


def pair_from_covariances(
    v0: CovarianceMatrix,
    v1: CovarianceMatrix,
    params: ScenarioParams | None = None,
) -> HypothesisPair:
    """Build a pair from raw covariances via the generic decomposition."""
    return HypothesisPair(v0, v1, williamson(v0), williamson(v1), params=params)
