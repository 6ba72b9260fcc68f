"""Closed forms of the diffusive-relaxation space-time covariance family.

The model describes a Gaussian random field that relaxes diffusively
toward a spatial equilibrium.  In one spatial dimension the space-time
covariance is, in normalized lags h = |r|/xi and u = |tau|/tau_c,

    C1(h, u) = (eta0*lam/4) * [ exp(-lam*h) * erfc(sqrt(u) - lam*h/(2*sqrt(u)))
                              + exp(+lam*h) * erfc(sqrt(u) + lam*h/(2*sqrt(u))) ]

and averaging C1 over a line through the origin (the turning-bands
projection (1/h) * int_0^h C1(y, u) dy) yields the three-dimensional,
isotropic, non-separable model

    C3(h, u) = (eta0/(4h)) * [ 2*exp(-u)*erf(lam*h/(2*sqrt(u)))
                             + exp(+lam*h)*erfc(sqrt(u) + lam*h/(2*sqrt(u)))
                             - exp(-lam*h)*erfc(sqrt(u) - lam*h/(2*sqrt(u))) ].

Marginals:  C_T(u) = (eta0*lam/2)*erfc(sqrt(u)) at h -> 0, and
C_S(h) = (eta0/(2h))*(1 - exp(-lam*h)) at u -> 0.  The field variance is
sigma^2 = eta0*lam/2 and the variogram is gamma(h,u) = sigma^2 - C3(h,u).

Numerical strategy
------------------
* exp(+lam*h)*erfc(...) products are routed through the scaled
  complement erfcx so they stay bounded for large lam*h; both erfc
  arguments share the identity exp(+-lam*h)*erfc(sqrt(u) -+ a)
  = erfcx(|sqrt(u) -+ a|)*exp(-u - a^2) (+ a reflection term when the
  argument is negative), with a = lam*h/(2*sqrt(u)).
* Near h = 0 the three-term combination in C3 cancels at first order in
  h, so for lam*h < 1e-4 (and a <= 0.1, inside the expansion's region of
  validity) C3 switches to its even Taylor expansion around h = 0,
  C_T(u) + f1(u)*h^2 + f2(u)*h^4, with

      f1(u) = (eta0*lam^3/12)  * [erfc(sqrt(u)) - exp(-u)/sqrt(pi*u)]
      f2(u) = (eta0*lam^5/480) * [2*erfc(sqrt(u)) + (1-2u)*exp(-u)/(sqrt(pi)*u^{3/2})]

  (obtained by integrating the even Taylor series of C1 term by term).
* h = 0 and u = 0 are evaluated by their analytic limits; never by
  substitution into the generic expression.

Everything here is pure and vectorized: lag arguments may be scalars or
numpy arrays (broadcast together), parameters are validated once at
construction and assumed valid per call.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .specfun import erf, erfc, erfcx

__all__ = [
    "StslrParams",
    "SpectralParams",
    "NormalizedLag",
    "c1_cov",
    "c3_cov",
    "cov_temporal_marginal",
    "cov_spatial_marginal",
    "cov_spacetime",
    "variogram_st",
    "variogram_spacetime",
    "variogram_temporal",
    "variogram_spatial",
    "variance",
    "spectral_density_equilibrium",
    "spectral_density_time",
]

# Switch to the series/Taylor branch below this value of lam*h.
SMALL_LAG_SWITCH = 1e-4
# The Taylor branch also requires a = lam*h/(2*sqrt(u)) at most this large.
_TAYLOR_A_MAX = 0.1


def _require(cond, message):
    if not cond:
        raise InvalidParameterError(message)


@dataclass(frozen=True)
class StslrParams:
    """Parameter vector of the space-time covariance model.

    Attributes
    ----------
    eta0 : float
        Amplitude coefficient; the product ``eta0*lam/2`` is the field
        variance in (data units)^2.
    lam : float
        Dimensionless flexibility (inverse square root of the rigidity).
    xi : float
        Characteristic length, in the spatial units of the data.
    tau_c : float
        Characteristic time, in the temporal units of the data.
    nugget : float
        Non-negative nugget variance added at strictly positive lag.

    Notes
    -----
    The dimensional model depends on (eta0, lam, xi) only through the
    combinations eta0*lam and lam/xi: rescaling
    (eta0, lam, xi) -> (c*eta0, lam/c, xi/c) leaves every dimensional
    covariance value unchanged.  ``lam`` therefore acts as a scale gauge
    for the parametrization; see ``estimate.fit_spatial``.
    """

    eta0: float
    lam: float
    xi: float
    tau_c: float
    nugget: float = 0.0

    def __post_init__(self):
        for name in ("eta0", "lam", "xi", "tau_c", "nugget"):
            v = getattr(self, name)
            _require(math.isfinite(v), f"{name} must be finite, got {v!r}")
        _require(self.eta0 > 0, f"eta0 must be > 0, got {self.eta0}")
        _require(self.lam > 0, f"lam must be > 0, got {self.lam}")
        _require(self.xi > 0, f"xi must be > 0, got {self.xi}")
        _require(self.tau_c > 0, f"tau_c must be > 0, got {self.tau_c}")
        _require(self.nugget >= 0, f"nugget must be >= 0, got {self.nugget}")

    @property
    def sigma2(self):
        """Field variance eta0*lam/2 (the common sill of both marginals)."""
        return 0.5 * self.eta0 * self.lam

    def to_dict(self):
        return {
            "eta0": self.eta0,
            "lambda": self.lam,
            "xi": self.xi,
            "tau_c": self.tau_c,
            "nugget": self.nugget,
        }

    @classmethod
    def from_dict(cls, d):
        try:
            return cls(
                eta0=float(d["eta0"]),
                lam=float(d["lambda"]),
                xi=float(d["xi"]),
                tau_c=float(d["tau_c"]),
                nugget=float(d.get("nugget", 0.0)),
            )
        except KeyError as exc:
            raise InvalidParameterError(f"missing parameter key {exc}") from exc

    def to_json(self, path=None):
        """Serialize to a JSON document (string, or file when path given)."""
        text = json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text

    @classmethod
    def from_json(cls, source):
        """Load from a JSON string or a file path."""
        s = str(source)
        if s.lstrip().startswith("{"):
            return cls.from_dict(json.loads(s))
        with open(source, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class SpectralParams:
    """Parameters of the equilibrium / time-dependent spectral densities.

    ``eta1`` is the rigidity (for the covariance family above,
    eta1 = 1/lam**2), ``mu`` the curvature coefficient and ``d`` the
    spatial dimension.  Permissibility requires a strictly positive
    denominator 1 + eta1*(k*xi)**2 + mu*(k*xi)**4 for all wavenumbers:
    eta1 > 0 when mu = 0 and eta1 > -2*sqrt(mu) otherwise (in particular
    eta1 > -2 when mu = 1).
    """

    eta0: float
    eta1: float
    xi: float
    mu: float
    tau_c: float
    d: int = 3

    def __post_init__(self):
        _require(self.eta0 > 0, f"eta0 must be > 0, got {self.eta0}")
        _require(self.xi > 0, f"xi must be > 0, got {self.xi}")
        _require(self.tau_c > 0, f"tau_c must be > 0, got {self.tau_c}")
        _require(self.mu >= 0, f"mu must be >= 0, got {self.mu}")
        _require(int(self.d) == self.d and self.d >= 1,
                 f"d must be a positive integer, got {self.d}")
        if self.mu == 0:
            _require(self.eta1 > 0,
                     f"eta1 must be > 0 when mu = 0, got {self.eta1}")
        else:
            _require(self.eta1 > -2.0 * math.sqrt(self.mu),
                     f"eta1 must exceed -2*sqrt(mu), got {self.eta1}")

    @classmethod
    def from_stslr(cls, p, d=1, mu=0.0):
        """Spectral parameters matching a covariance parameter vector."""
        return cls(eta0=p.eta0, eta1=1.0 / p.lam**2, xi=p.xi, mu=mu,
                   tau_c=p.tau_c, d=d)


@dataclass(frozen=True)
class NormalizedLag:
    """Dimensionless lag pair h = ||r||/xi, u = |tau|/tau_c."""

    h: float
    u: float

    def __post_init__(self):
        _require(self.h >= 0 and self.u >= 0,
                 f"normalized lags must be >= 0, got h={self.h}, u={self.u}")

    @classmethod
    def from_dimensional(cls, r, tau, p):
        """Normalize a dimensional spatial lag r and time lag tau."""
        return cls(h=abs(r) / p.xi, u=abs(tau) / p.tau_c)


def _prepare(h, u):
    """Broadcast lag arrays, take magnitudes, report scalar-ness."""
    h = np.abs(np.asarray(h, dtype=float))
    u = np.abs(np.asarray(u, dtype=float))
    scalar = h.ndim == 0 and u.ndim == 0
    h, u = np.broadcast_arrays(h, u)
    return np.ascontiguousarray(h), np.ascontiguousarray(u), scalar


def _finish(out, scalar):
    return float(out[()]) if scalar else out


def c1_cov(h, u, p):
    """One-dimensional space-time covariance C1(h, u).

    Parameters
    ----------
    h, u : float or array_like
        Normalized lags (signed values are accepted and folded by
        magnitude).  Broadcast together.
    p : StslrParams

    Returns
    -------
    float or ndarray
        C1 values; ``sigma^2 * exp(-lam*h)`` at u = 0 and
        ``sigma^2 * erfc(sqrt(u))`` at h = 0 (analytic limits).
    """
    h, u, scalar = _prepare(h, u)
    lam, q = p.lam, 0.25 * p.eta0 * p.lam
    out = np.empty(h.shape)

    m0 = u == 0.0
    if m0.any():
        out[m0] = 2.0 * q * np.exp(-lam * h[m0])
    m = ~m0
    if m.any():
        hh, uu = h[m], u[m]
        s = np.sqrt(uu)
        a = lam * hh / (2.0 * s)
        # shared exponent: exp(+-lam*h - (s +- a)^2) = exp(-u - a^2)
        t = np.exp(-uu - a * a)
        e_far = erfcx(s + a)
        e_near = erfcx(np.abs(s - a))
        v = np.where(
            s >= a,
            q * t * (e_near + e_far),
            q * (2.0 * np.exp(-lam * hh) + t * (e_far - e_near)),
        )
        out[m] = v
    return _finish(out, scalar)


def _c3_taylor(h, u, eta0, lam):
    # even expansion around h = 0; valid for small a = lam*h/(2*sqrt(u))
    ec = erfc(np.sqrt(u))
    ex = np.exp(-u)
    f1 = eta0 * lam**3 / 12.0 * (ec - ex / np.sqrt(np.pi * u))
    f2 = eta0 * lam**5 / 480.0 * (2.0 * ec + (1.0 - 2.0 * u) * ex
                                  / (np.sqrt(np.pi) * u**1.5))
    h2 = h * h
    return 0.5 * eta0 * lam * ec + (f1 + f2 * h2) * h2


def _cs_values(h, eta0, lam):
    # spatial marginal with its small-lag series branch
    lh = lam * h
    out = np.empty(h.shape)
    small = lh < SMALL_LAG_SWITCH
    if small.any():
        x = lh[small]
        out[small] = 0.5 * eta0 * lam * (1.0 - x / 2.0 + x * x / 6.0
                                         - x**3 / 24.0)
    big = ~small
    if big.any():
        out[big] = 0.5 * eta0 * (-np.expm1(-lh[big])) / h[big]
    return out


def c3_cov(h, u, p):
    """Three-dimensional, isotropic, non-separable covariance C3(h, u).

    Evaluates the closed form obtained by line-averaging ``c1_cov``
    (see the module docstring); nugget excluded.  Limits: C_T(u) at
    h = 0, C_S(h) at u = 0 and sigma^2 at the origin.

    Parameters
    ----------
    h, u : float or array_like
        Normalized lags, broadcast together; magnitudes are used.
    p : StslrParams
    """
    h, u, scalar = _prepare(h, u)
    eta0, lam = p.eta0, p.lam
    out = np.empty(h.shape)

    m_h0 = h == 0.0
    if m_h0.any():
        out[m_h0] = 0.5 * eta0 * lam * erfc(np.sqrt(u[m_h0]))
    m_u0 = (u == 0.0) & ~m_h0
    if m_u0.any():
        out[m_u0] = _cs_values(h[m_u0], eta0, lam)
    m = ~m_h0 & ~m_u0
    if m.any():
        hh, uu = h[m], u[m]
        s = np.sqrt(uu)
        a = lam * hh / (2.0 * s)
        v = np.empty(hh.shape)
        tay = (lam * hh < SMALL_LAG_SWITCH) & (a <= _TAYLOR_A_MAX)
        if tay.any():
            v[tay] = _c3_taylor(hh[tay], uu[tay], eta0, lam)
        gen = ~tay
        if gen.any():
            hg, ug, sg, ag = hh[gen], uu[gen], s[gen], a[gen]
            t = np.exp(-ug - ag * ag)
            e_far = erfcx(sg + ag)
            e_near = erfcx(np.abs(sg - ag))
            core = 2.0 * np.exp(-ug) * erf(ag)
            w = np.where(
                sg >= ag,
                core + t * (e_far - e_near),
                core - 2.0 * np.exp(-lam * hg) + t * (e_far + e_near),
            )
            v[gen] = 0.25 * eta0 / hg * w
        out[m] = v
    return _finish(out, scalar)


def cov_temporal_marginal(u, p):
    """Temporal marginal C_T(u) = (eta0*lam/2) * erfc(sqrt(u))."""
    u = np.abs(np.asarray(u, dtype=float))
    out = 0.5 * p.eta0 * p.lam * erfc(np.sqrt(u))
    return float(out) if u.ndim == 0 else out


def cov_spatial_marginal(h, p):
    """Spatial marginal C_S(h) = (eta0/(2h)) * (1 - exp(-lam*h)).

    Uses the series (eta0*lam/2)*(1 - lam*h/2 + (lam*h)^2/6 - ...) below
    the small-lag switch; returns the sill eta0*lam/2 at h = 0.
    """
    h = np.abs(np.asarray(h, dtype=float))
    scalar = h.ndim == 0
    h1 = np.atleast_1d(h)
    out = _cs_values(h1, p.eta0, p.lam)
    return float(out[0]) if scalar else out.reshape(h.shape)


def variance(p):
    """Variance of the space-time field, sigma^2 = eta0*lam/2."""
    return p.sigma2


def variogram_st(h, u, p, include_nugget=False):
    """Space-time variogram gamma(h, u) = sigma^2 - C3(h, u).

    With ``include_nugget`` the nugget variance is added at every lag
    except the origin; gamma(0, 0) = 0 always.
    """
    h, u, scalar = _prepare(h, u)
    g = p.sigma2 - np.atleast_1d(c3_cov(h, u, p))
    origin = np.atleast_1d((h == 0.0) & (u == 0.0))
    g[origin] = 0.0
    if include_nugget:
        g[~origin] += p.nugget
    return _finish(g, scalar)


def variogram_temporal(u, p):
    """Temporal marginal variogram (eta0*lam/2) * [1 - erfc(sqrt(u))].

    Evaluated as sigma^2 * erf(sqrt(u)) for accuracy at small u; the
    temporal marginal carries no nugget.
    """
    u = np.abs(np.asarray(u, dtype=float))
    out = p.sigma2 * erf(np.sqrt(u))
    return float(out) if u.ndim == 0 else out


def variogram_spatial(h, p, include_nugget=False):
    """Spatial marginal variogram (eta0/2) * [lam - (1 - exp(-lam*h))/h].

    Computed as sigma^2 - C_S(h) so complementarity with the marginal
    covariance is exact; optional nugget added for h > 0.
    """
    h = np.abs(np.asarray(h, dtype=float))
    scalar = h.ndim == 0
    g = p.sigma2 - np.atleast_1d(cov_spatial_marginal(h, p))
    g[np.atleast_1d(h) == 0.0] = 0.0
    if include_nugget:
        g[np.atleast_1d(h) > 0.0] += p.nugget
    return float(g[0]) if scalar else g.reshape(h.shape)


def cov_spacetime(r, tau, p):
    """C3 on dimensional lags: r in spatial units, tau in time units."""
    r = np.asarray(r, dtype=float)
    tau = np.asarray(tau, dtype=float)
    return c3_cov(np.abs(r) / p.xi, np.abs(tau) / p.tau_c, p)


def variogram_spacetime(r, tau, p, include_nugget=False):
    """Space-time variogram on dimensional lags."""
    r = np.asarray(r, dtype=float)
    tau = np.asarray(tau, dtype=float)
    return variogram_st(np.abs(r) / p.xi, np.abs(tau) / p.tau_c, p,
                        include_nugget=include_nugget)


def spectral_density_equilibrium(k, sp):
    """Equilibrium spectral density eta0*xi^d / (1 + eta1*(k*xi)^2 + mu*(k*xi)^4).

    Strictly positive for every wavenumber under the permissibility
    constraints enforced by ``SpectralParams``.
    """
    k = np.asarray(k, dtype=float)
    kx2 = (k * sp.xi) ** 2
    out = sp.eta0 * sp.xi**sp.d / (1.0 + sp.eta1 * kx2 + sp.mu * kx2 * kx2)
    return float(out) if out.ndim == 0 else out


def spectral_density_time(k, tau_abs, sp):
    """Time-dependent spectral density.

    Equals the equilibrium density times
    exp(-(1 + eta1*(k*xi)^2 + mu*(k*xi)^4) * |tau|/tau_c); at tau = 0 it
    reduces to ``spectral_density_equilibrium``.
    """
    k = np.asarray(k, dtype=float)
    u = np.abs(np.asarray(tau_abs, dtype=float)) / sp.tau_c
    kx2 = (k * sp.xi) ** 2
    q = 1.0 + sp.eta1 * kx2 + sp.mu * kx2 * kx2
    out = sp.eta0 * sp.xi**sp.d / q * np.exp(-q * u)
    return float(out) if out.ndim == 0 else out
