"""Exact crossing-time results for exponential gaps and exponential jumps.

With T ~ Exponential(lam) and Y ~ Exponential(mu) the conditional
probability P{v < tau <= t | first renewal at v} has an exact
representation as a single integral of a Bessel I_1 kernel:

    sqrt(lam mu c) (v + u/c) e^{-mu(u + cv)}
        * int_0^{t-v} I_1(2 sqrt(lam mu c (y+B) y)) / sqrt((y+B) y)
          * e^{-(mu c + lam) y} dy,        B = v + u/c.

The integrand is formed entirely in log space: at t = 1000 the Bessel
argument exceeds 2000 and I_1 alone overflows, while log I_1 minus the
exponential decay stays bounded.

``series_oracle`` evaluates the same probability from the renewal-theoretic
series (Erlang convolution densities against a Poisson-type count law) and
serves as an independent cross-check.
"""

import math
from dataclasses import dataclass

from .approx import CrossingQuery
from .errors import SeriesTruncationError
from .quadrature import adaptive_simpson, integrate_log_scaled
from .specfun import log_bessel_i1

__all__ = [
    "ExpExpModel",
    "exact_conditional",
    "series_oracle",
    "unconditional_exp_first_renewal",
    "infinite_horizon_cap",
]


@dataclass(frozen=True)
class ExpExpModel:
    """Rates of the exponential gap law (lam) and jump law (mu)."""

    lam: float
    mu: float

    def __post_init__(self):
        if not (self.lam > 0.0 and self.mu > 0.0):
            raise ValueError("both rates must be > 0")


def infinite_horizon_cap(q: CrossingQuery) -> float:
    """Horizon substituted for t = inf.

    Off the critical rate the integrand decays like
    exp(-(sqrt(mu c) - sqrt(lam))^2 y) and the cap is generous; at the
    critical rate the tail only decays like y^(-3/2), so treat capped
    unbounded-horizon values there as plot-quality, not reference-quality.
    """
    return q.v + max(1.0e4, 200.0 * q.w)


def exact_conditional(m: ExpExpModel, q: CrossingQuery, rel_tol: float = 1e-10) -> float:
    """Exact P{v < tau <= t | first renewal at v} for the exponential pair."""
    t = infinite_horizon_cap(q) if q.t == math.inf else q.t
    span = t - q.v
    if span <= 0.0:
        return 0.0
    b = q.v + q.u / q.c
    rate_sum = m.mu * q.c + m.lam
    prod = m.lam * m.mu * q.c
    half_log_prod = 0.5 * math.log(prod)

    def log_integrand(y: float) -> float:
        if y <= 0.0:
            # I_1(z) ~ z/2 as z -> 0 makes the integrand -> sqrt(lam mu c)
            return half_log_prod
        z = 2.0 * math.sqrt(prod * (y + b) * y)
        return log_bessel_i1(z) - rate_sum * y - 0.5 * (math.log(y + b) + math.log(y))

    log_scale, mass = integrate_log_scaled(log_integrand, 0.0, span, rel_tol=rel_tol)
    if mass <= 0.0:
        return 0.0
    log_pref = half_log_prod + math.log(b) - m.mu * (q.u + q.c * q.v)
    log_value = log_pref + log_scale + math.log(mass)
    return math.exp(log_value) if log_value > -745.0 else 0.0


def _log_sum_exp(values: list[float]) -> float:
    top = max(values)
    if top == -math.inf:
        return top
    return top + math.log(sum(math.exp(v - top) for v in values))


def series_oracle(
    m: ExpExpModel,
    q: CrossingQuery,
    nmax: int = 500,
    tail_tol: float | None = 1e-12,
    quad_tol: float = 1e-10,
) -> float:
    """Crossing probability from the truncated renewal series.

    Integrates over the crossing epoch z the sum over n of
    (count law at n) * (n-fold gap convolution density), weighted by
    (u+cv)/(u+cz).  With ``tail_tol`` set, raises SeriesTruncationError
    whenever the neglected tail of the n-sum cannot be bounded below it;
    pass ``tail_tol=None`` to accept a plain truncation at ``nmax``.
    """
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    t = infinite_horizon_cap(q) if q.t == math.inf else q.t
    if t - q.v <= 0.0:
        return 0.0
    lgam = [math.lgamma(n + 1) for n in range(nmax + 1)]
    log_lam = math.log(m.lam)

    def integrand(z: float) -> float:
        jump_mean = m.mu * (q.u + q.c * z)  # count-law intensity at epoch z
        gap_mean = m.lam * (z - q.v)
        weight = q.w / (q.u + q.c * z)
        base = -jump_mean - gap_mean + log_lam
        if gap_mean == 0.0:
            # only the single-renewal term survives at z = v
            return weight * jump_mean * math.exp(base)
        la, lg = math.log(jump_mean), math.log(gap_mean)
        logs = []
        top = -math.inf
        converged = False
        for n in range(1, nmax + 1):
            lt = base + n * la - lgam[n] + (n - 1) * lg - lgam[n - 1]
            logs.append(lt)
            top = max(top, lt)
            # terms fall super-geometrically once n(n+1) > jump*gap
            if n * (n + 1) > 4.0 * jump_mean * gap_mean and lt < top - 45.0:
                converged = True
                break
        if tail_tol is not None and not converged:
            raise SeriesTruncationError(
                f"series tail not bounded below {tail_tol:g} at nmax={nmax} "
                f"(z={z:g}); increase nmax"
            )
        return weight * math.exp(_log_sum_exp(logs))

    # scale the absolute tolerance by a crude bound on the integrand mass
    probe = max(integrand(q.v + k * (t - q.v) / 16.0) for k in range(17))
    tol = quad_tol * max(probe * (t - q.v), 1e-300)
    return adaptive_simpson(integrand, q.v, t, tol, initial_panels=64)


def unconditional_exp_first_renewal(
    m: ExpExpModel, u: float, c: float, t: float, rel_tol: float = 1e-8
) -> float:
    """P{tau <= t} when the first renewal interval is Exponential(lam) too.

    Splits into the immediate-crossing term (jump at the first renewal
    already exceeds the level) plus the integral over the first-renewal
    time v of the conditional probability.
    """
    if not (u > 0.0 and c > 0.0):
        raise ValueError("need u > 0 and c > 0")
    if t <= 0.0:
        return 0.0
    rate = m.lam + c * m.mu
    first = m.lam * math.exp(-m.mu * u) / rate * -math.expm1(-rate * t)

    def integrand(v: float) -> float:
        if v >= t:
            return 0.0
        q = CrossingQuery(u=u, c=c, v=v, t=t)
        return exact_conditional(m, q, rel_tol=1e-9) * math.exp(-m.lam * v)

    second = m.lam * adaptive_simpson(integrand, 0.0, t, rel_tol, initial_panels=32)
    return first + second
