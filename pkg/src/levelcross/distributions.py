"""Parametric families for inter-renewal times and jump sizes.

Four families are supported: Exponential, mixture of two Exponentials,
Erlang, and Pareto (in the shifted form with density a*b/(x*b+1)^(a+1),
which has support on all of x > 0).  Each provides the density, the
distribution function, the quantile, closed-form central moments, and
inverse-transform sampling from a caller-supplied uniform stream.

A stream is any object with a ``next_uniform() -> float in (0, 1)``
method; :class:`levelcross.sim.LcgStream` is the deterministic one used
throughout.
"""

import math
from dataclasses import dataclass

from .errors import MomentUndefinedError, SpecParseError

__all__ = [
    "MomentSet",
    "Distribution",
    "Exponential",
    "Mix2Exp",
    "Erlang",
    "Pareto",
    "parse_spec",
]

# fixed iteration counts keep the numeric quantiles bit-exactly reproducible
_BISECT_STEPS = 90


@dataclass(frozen=True)
class MomentSet:
    """Mean, variance and third central moment, with tail-finiteness flags.

    ``third_raw_finite``/``fourth_raw_finite`` record whether E X^3 and
    E X^4 exist; only the Pareto family can lose them.
    """

    mean: float
    variance: float
    central3: float
    third_raw_finite: bool = True
    fourth_raw_finite: bool = True


class Distribution:
    """Common interface of the four families."""

    def pdf(self, x: float) -> float:
        raise NotImplementedError

    def cdf(self, x: float) -> float:
        raise NotImplementedError

    def quantile(self, u: float) -> float:
        raise NotImplementedError

    def moments(self) -> MomentSet:
        raise NotImplementedError

    def spec_string(self) -> str:
        raise NotImplementedError

    def sample(self, stream) -> float:
        """Inverse-transform draw consuming exactly one uniform."""
        return self.quantile(stream.next_uniform())

    def _check_quantile_arg(self, u: float) -> None:
        if not 0.0 < u < 1.0:
            raise ValueError(f"quantile requires u in (0, 1), got {u!r}")


@dataclass(frozen=True)
class Exponential(Distribution):
    rate: float

    def __post_init__(self):
        if not self.rate > 0.0:
            raise ValueError("Exponential rate must be > 0")

    def pdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return self.rate * math.exp(-self.rate * x)

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return -math.expm1(-self.rate * x)

    def quantile(self, u: float) -> float:
        self._check_quantile_arg(u)
        return -math.log1p(-u) / self.rate

    def moments(self) -> MomentSet:
        r = self.rate
        return MomentSet(1.0 / r, 1.0 / r**2, 2.0 / r**3)

    def spec_string(self) -> str:
        return f"exp:{self.rate:g}"


@dataclass(frozen=True)
class Mix2Exp(Distribution):
    """Mixture p*Exponential(rate1) + (1-p)*Exponential(rate2), rate1 < rate2."""

    rate1: float
    rate2: float
    p: float

    def __post_init__(self):
        if not (0.0 < self.rate1 < self.rate2):
            raise ValueError("Mix2Exp requires 0 < rate1 < rate2")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("Mix2Exp weight p must lie in [0, 1]")

    @property
    def q(self) -> float:
        return 1.0 - self.p

    def pdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return self.rate1 * self.p * math.exp(-self.rate1 * x) + self.rate2 * self.q * math.exp(
            -self.rate2 * x
        )

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return 1.0 - (self.p * math.exp(-self.rate1 * x) + self.q * math.exp(-self.rate2 * x))

    def quantile(self, u: float) -> float:
        self._check_quantile_arg(u)
        p, q = self.p, self.q
        if q == 0.0:
            return -math.log1p(-u) / self.rate1
        if self.rate2 == 2.0 * self.rate1:
            # p*w + q*w^2 = 1 - u with w = exp(-rate1 * x); conjugate root
            # form stays stable as q -> 0
            w = 2.0 * (1.0 - u) / (p + math.sqrt(p * p + 4.0 * q * (1.0 - u)))
            return -math.log(w) / self.rate1
        # general rates: bisection on the cdf; the rate1 exponential
        # stochastically dominates the mixture, so its quantile brackets ours
        lo = 0.0
        hi = -math.log1p(-u) / self.rate1
        for _ in range(_BISECT_STEPS):
            mid = 0.5 * (lo + hi)
            if self.cdf(mid) < u:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def moments(self) -> MomentSet:
        p, q = self.p, self.q
        l1, l2 = self.rate1, self.rate2
        mean = p / l1 + q / l2
        var = (q * l1**2 + p * l2**2 + p * q * (l1 - l2) ** 2) / (l1**2 * l2**2)
        c3 = (
            -6.0 * p * q**2 / (l1**2 * l2)
            - 6.0 * p**2 * q / (l1 * l2**2)
            + 2.0 * p * (3.0 * q + p**2) / l1**3
            + 2.0 * q * (3.0 * p + q**2) / l2**3
        )
        return MomentSet(mean, var, c3)

    def spec_string(self) -> str:
        return f"mix2exp:{self.rate1:g},{self.rate2:g},{self.p:g}"


@dataclass(frozen=True)
class Erlang(Distribution):
    rate: float
    shape: int

    def __post_init__(self):
        if not self.rate > 0.0:
            raise ValueError("Erlang rate must be > 0")
        if not (isinstance(self.shape, int) and self.shape >= 1):
            raise ValueError("Erlang shape must be a positive integer")

    def pdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        k, r = self.shape, self.rate
        return math.exp(
            k * math.log(r) + (k - 1) * math.log(x) - math.lgamma(k) - r * x
        )

    def cdf(self, x: float) -> float:
        # 1 - exp(-rx) * sum_{j<k} (rx)^j / j!  -- exact for integer shape
        if x <= 0.0:
            return 0.0
        rx = self.rate * x
        log_rx = math.log(rx)
        tail = 0.0
        for j in range(self.shape):
            tail += math.exp(j * log_rx - math.lgamma(j + 1) - rx)
        return 1.0 - tail

    def quantile(self, u: float) -> float:
        self._check_quantile_arg(u)
        if self.shape == 1:
            return -math.log1p(-u) / self.rate
        lo, hi = 0.0, self.shape / self.rate
        while self.cdf(hi) < u:
            hi *= 2.0
        for _ in range(_BISECT_STEPS):
            mid = 0.5 * (lo + hi)
            if self.cdf(mid) < u:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def moments(self) -> MomentSet:
        k, r = self.shape, self.rate
        return MomentSet(k / r, k / r**2, 2.0 * k / r**3)

    def sample(self, stream) -> float:
        # sum of `shape` exponential draws, consuming exactly `shape`
        # uniforms; summed draw-by-draw so the result is bit-identical to
        # adding `shape` Exponential samples from the same stream
        total = 0.0
        for _ in range(self.shape):
            total += -math.log1p(-stream.next_uniform()) / self.rate
        return total

    def spec_string(self) -> str:
        return f"erlang:{self.rate:g},{self.shape}"


@dataclass(frozen=True)
class Pareto(Distribution):
    """Density a*b/(x*b + 1)^(a+1) on x > 0; heavy-tailed with index a."""

    shape: float
    scale: float

    def __post_init__(self):
        if not self.shape > 0.0:
            raise ValueError("Pareto shape must be > 0")
        if not self.scale > 0.0:
            raise ValueError("Pareto scale must be > 0")

    def pdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        a, b = self.shape, self.scale
        return a * b / (x * b + 1.0) ** (a + 1.0)

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return -math.expm1(-self.shape * math.log1p(x * self.scale))

    def quantile(self, u: float) -> float:
        # ((1-u)^(-1/a) - 1)/b, written to survive u -> 1 without cancellation
        self._check_quantile_arg(u)
        return math.expm1(-math.log1p(-u) / self.shape) / self.scale

    def moments(self) -> MomentSet:
        a, b = self.shape, self.scale
        if a <= 1.0:
            raise MomentUndefinedError(f"Pareto mean requires shape > 1 (got {a:g})")
        if a <= 2.0:
            raise MomentUndefinedError(f"Pareto variance requires shape > 2 (got {a:g})")
        if a <= 3.0:
            raise MomentUndefinedError(
                f"Pareto third central moment requires shape > 3 (got {a:g})"
            )
        mean = 1.0 / ((a - 1.0) * b)
        var = a / ((a - 1.0) ** 2 * (a - 2.0) * b**2)
        c3 = 2.0 * a * (a + 1.0) / ((a - 1.0) ** 3 * (a - 2.0) * (a - 3.0) * b**3)
        return MomentSet(mean, var, c3, third_raw_finite=a > 3.0, fourth_raw_finite=a > 4.0)

    def spec_string(self) -> str:
        return f"pareto:{self.shape:g},{self.scale:g}"


def _parse_floats(body: str, n: int, spec: str) -> list[float]:
    parts = body.split(",")
    if len(parts) != n:
        raise SpecParseError(
            f"{spec!r}: expected {n} comma-separated parameters, got {len(parts)}"
        )
    out = []
    for token in parts:
        try:
            out.append(float(token))
        except ValueError:
            raise SpecParseError(f"{spec!r}: not a number: {token!r}") from None
    return out


def parse_spec(spec: str) -> Distribution:
    """Parse ``exp:<rate>``, ``erlang:<rate>,<k>``, ``pareto:<a>,<b>`` or
    ``mix2exp:<rate1>,<rate2>,<p>`` into a distribution object."""
    head, sep, body = spec.strip().partition(":")
    if not sep:
        raise SpecParseError(f"{spec!r}: expected '<family>:<params>'")
    family = head.strip().lower()
    try:
        if family == "exp":
            (rate,) = _parse_floats(body, 1, spec)
            return Exponential(rate)
        if family == "erlang":
            rate, k = _parse_floats(body, 2, spec)
            if k != int(k):
                raise SpecParseError(f"{spec!r}: Erlang shape must be an integer, got {k!r}")
            return Erlang(rate, int(k))
        if family == "pareto":
            a, b = _parse_floats(body, 2, spec)
            return Pareto(a, b)
        if family == "mix2exp":
            l1, l2, p = _parse_floats(body, 3, spec)
            return Mix2Exp(l1, l2, p)
    except ValueError as exc:
        if isinstance(exc, SpecParseError):
            raise
        raise SpecParseError(f"{spec!r}: {exc}") from None
    raise SpecParseError(
        f"{spec!r}: unknown family {family!r} (expected exp, erlang, pareto or mix2exp)"
    )
