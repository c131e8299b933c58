"""Closed-form approximations for the conditional crossing probability.

The target quantity is P{v < tau <= t | first renewal at v}, where tau is
the first time the compound renewal process minus c*s exceeds the level u.
The main term is an inverse-Gaussian-type integral; the corrected
expansion adds two skewness corrections weighted by K_F and K_S:

    corrected(t) = main(t) + K_F * first(t) + K_S * second(t)

All three integrals have closed forms built from the standard normal cdf;
``integral_oracle`` integrates the defining integrands directly and exists
to cross-check the closed forms in tests and diagnostics.

Every product of the shape exp(huge) * Phi(-huge) is evaluated as
exp(A + log Phi(-B)); the plain product overflows long before the result
leaves [0, 1].
"""

import math
from dataclasses import dataclass

from .errors import QuadratureError
from .moments import ModelConstants
from .quadrature import adaptive_simpson
from .specfun import log_std_normal_cdf, std_normal_cdf

__all__ = [
    "CrossingQuery",
    "ApproxResult",
    "main_term",
    "first_correction",
    "second_correction",
    "corrected_expansion",
    "integral_oracle",
]


@dataclass(frozen=True)
class CrossingQuery:
    """Evaluation point: level u > 0, drift rate c > 0, first-renewal time
    v >= 0 and horizon t > v (``math.inf`` for the unbounded horizon)."""

    u: float
    c: float
    v: float = 0.0
    t: float = math.inf

    def __post_init__(self):
        if not self.u > 0.0:
            raise ValueError("level u must be > 0")
        if not self.c > 0.0:
            raise ValueError("drift rate c must be > 0")
        if not 0.0 <= self.v < self.t:
            raise ValueError("need 0 <= v < t")

    @property
    def w(self) -> float:
        """Effective level u + c*v seen after the first renewal."""
        return self.u + self.c * self.v


@dataclass(frozen=True)
class ApproxResult:
    main: float
    correction_f: float
    correction_s: float
    corrected: float


class _Bracket:
    """Shared endpoint machinery for the three closed forms.

    Endpoints are evaluated at x in [1, x1] with x1 = c(t-v)/(u+cv) + 1;
    the closed forms are differences F(x1) - F(1) of endpoint functions
    built from phi_plus, phi_prod and the Gaussian kernel below.
    """

    def __init__(self, q: CrossingQuery, k: ModelConstants):
        self.w = q.w
        self.c = q.c
        self.cd = q.c * math.sqrt(k.D2)
        self.c2d2 = q.c * q.c * k.D2
        self.drift = 1.0 - q.c * k.M  # positive below the critical rate
        self.expo = 2.0 * self.w * self.drift / self.c2d2
        self.x1 = math.inf if q.t == math.inf else q.c * (q.t - q.v) / self.w + 1.0

    def scale(self, x: float) -> float:
        return math.sqrt(self.w) / (self.cd * math.sqrt(x))

    def phi_plus(self, x: float) -> float:
        """Phi(sqrt(w)/(cD sqrt(x)) * (x*drift - 1)), and its x -> inf limit."""
        if x == math.inf:
            if self.drift > 0.0:
                return 1.0
            if self.drift < 0.0:
                return 0.0
            return 0.5
        return std_normal_cdf(self.scale(x) * (x * self.drift - 1.0))

    def phi_prod(self, x: float) -> float:
        """exp(expo) * Phi(-sqrt(w)/(cD sqrt(x)) * (x*drift + 1)), log-space."""
        if x == math.inf:
            if self.drift > 0.0:
                return 0.0  # Gaussian tail beats the constant exponential
            if self.drift < 0.0:
                return math.exp(self.expo)
            return 0.5  # expo == 0 and the Phi argument tends to 0 from below
        return math.exp(self.expo + log_std_normal_cdf(-self.scale(x) * (x * self.drift + 1.0)))

    def base(self, x: float) -> float:
        """Endpoint of the main-term bracket."""
        return self.phi_plus(x) + self.phi_prod(x)

    def gauss(self, x: float) -> float:
        """exp(-w (x*drift - 1)^2 / (2 x c^2 D^2)), zero in the x -> inf limit."""
        if x == math.inf:
            return 0.0
        # grouped as (t/x)*t so the square never overflows for huge x
        t = x * self.drift - 1.0
        expo = -self.w / (2.0 * self.c2d2) * (t / x) * t
        return math.exp(expo) if expo > -745.0 else 0.0

    def diff(self, endpoint) -> float:
        return endpoint(self.x1) - endpoint(1.0)


def main_term(q: CrossingQuery, k: ModelConstants) -> float:
    """Inverse-Gaussian-type main approximation of the crossing probability."""
    br = _Bracket(q, k)
    return br.diff(br.base)


def first_correction(q: CrossingQuery, k: ModelConstants) -> float:
    """First correction integral; O(1/(u+cv)) and usually negative."""
    br = _Bracket(q, k)

    def endpoint(x: float) -> float:
        val = -(br.c2d2 / br.w) * br.base(x)
        val += 2.0 * br.drift * br.phi_prod(x)
        if x != math.inf:
            val -= 2.0 * br.cd / math.sqrt(2.0 * math.pi * x * br.w) * br.gauss(x)
        return val

    return br.diff(endpoint)


def second_correction(q: CrossingQuery, k: ModelConstants) -> float:
    """Second correction integral; O(1/(u+cv)) like the first."""
    br = _Bracket(q, k)
    ratio = br.w * br.drift / br.c2d2

    def endpoint(x: float) -> float:
        val = -(3.0 * br.c2d2 / br.w) * br.base(x)
        val += 2.0 * br.drift * (3.0 - 4.0 * ratio) * br.phi_prod(x)
        if x != math.inf:
            poly_over_x = 3.0 * (1.0 - ratio) + br.w / (br.c2d2 * x)
            val -= (
                math.sqrt(2.0)
                * br.cd
                / (math.sqrt(math.pi) * math.sqrt(br.w) * math.sqrt(x))
                * poly_over_x
                * br.gauss(x)
            )
        return val

    return br.diff(endpoint)


def corrected_expansion(q: CrossingQuery, k: ModelConstants) -> ApproxResult:
    """Main term plus both corrections weighted by K_F and K_S at the
    query's drift rate.  The corrected value may legitimately be negative
    and is not clamped here."""
    m = main_term(q, k)
    cf = first_correction(q, k)
    cs = second_correction(q, k)
    return ApproxResult(
        main=m,
        correction_f=cf,
        correction_s=cs,
        corrected=m + k.kf(q.c) * cf + k.ks(q.c) * cs,
    )


def _normal_pdf(x: float, mean: float, var: float) -> float:
    return math.exp(-((x - mean) ** 2) / (2.0 * var)) / math.sqrt(2.0 * math.pi * var)


def integral_oracle(
    kind: str, q: CrossingQuery, k: ModelConstants, tol: float = 1e-8
) -> float:
    """Direct quadrature of the defining integral for kind 'main', 'first'
    or 'second'.  Requires a finite horizon.  Raises QuadratureError if the
    refinement limit is reached before ``tol``."""
    if q.t == math.inf:
        raise QuadratureError("integral_oracle requires a finite horizon")
    w = q.w
    cm = q.c * k.M
    var_scale = q.c * q.c * k.D2 / w
    upper = q.c * (q.t - q.v) / w

    if kind == "main":

        def f(x: float) -> float:
            return _normal_pdf(x, cm * (1.0 + x), var_scale * (1.0 + x)) / (1.0 + x)

        prefactor = 1.0
    elif kind == "first":

        def f(x: float) -> float:
            return (
                (x - cm * (1.0 + x))
                / (1.0 + x) ** 2
                * _normal_pdf(x, cm * (1.0 + x), var_scale * (1.0 + x))
            )

        prefactor = 1.0
    elif kind == "second":

        def f(x: float) -> float:
            return (
                (x - cm * (1.0 + x)) ** 3
                / (1.0 + x) ** 3
                * _normal_pdf(x, cm * (1.0 + x), var_scale * (1.0 + x))
            )

        prefactor = w / (q.c * q.c * k.D2)
    else:
        raise ValueError(f"unknown integral kind {kind!r}")

    if upper <= 0.0:
        return 0.0
    # 64 seed panels so the Gaussian ridge near x = cM/(1-cM) is never
    # missed by the first Simpson estimate
    return prefactor * adaptive_simpson(f, 0.0, upper, tol, initial_panels=64)
