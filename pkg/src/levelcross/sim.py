"""Deterministic Monte Carlo estimation of the crossing probability.

The uniform source is the 32-bit linear congruential generator

    x_{n+1} = (23456789 * x_n + 22185) mod 2^32,

mapped to (0, 1) by division by 2^32, with any zero state skipped so the
inverse transforms never see u = 0 exactly.  Streams are values: the pure
``lcg_next``/``next_uniform`` functions advance an integer state, and
:class:`LcgStream` wraps one for sampling loops.

Parallel-safe sweeps derive one independent substream per grid node with
``substream_seed`` (a splitmix64 avalanche of master seed and node index,
truncated to 32 bits), so results do not depend on evaluation order.
"""

import math
import warnings
from dataclasses import dataclass, field

from .distributions import Distribution
from .moments import constants_for

__all__ = [
    "LCG_MULTIPLIER",
    "LCG_INCREMENT",
    "LCG_MODULUS",
    "lcg_next",
    "next_uniform",
    "LcgStream",
    "substream_seed",
    "SweepGrid",
    "SimEstimate",
    "wilson_interval",
    "first_crossing_time",
    "simulate_conditional",
    "sweep_c",
    "DEFAULT_SEED",
]

LCG_MULTIPLIER = 23456789
LCG_INCREMENT = 22185
LCG_MODULUS = 2**32

DEFAULT_SEED = 20170101

_MASK32 = LCG_MODULUS - 1
_MASK64 = 2**64 - 1
_INV_MODULUS = 2.0**-32

# 97.5% standard normal quantile, for the two-sided 95% Wilson interval
_Z975 = 1.959963984540054


def lcg_next(state: int) -> int:
    """One generator step; exact integer arithmetic, masked to 32 bits."""
    return (LCG_MULTIPLIER * state + LCG_INCREMENT) & _MASK32


def next_uniform(state: int) -> tuple[float, int]:
    """Advance the state and map it into (0, 1), skipping a zero state."""
    state = lcg_next(state)
    if state == 0:
        state = lcg_next(state)
    return state * _INV_MODULUS, state


class LcgStream:
    """Mutable wrapper around the pure LCG transition.

    Tracks ``draws`` (uniforms handed out) so tests can audit exactly how
    many variates a sampler consumes.
    """

    __slots__ = ("state", "draws")

    def __init__(self, seed: int):
        self.state = seed & _MASK32
        self.draws = 0

    def next_uniform(self) -> float:
        u, self.state = next_uniform(self.state)
        self.draws += 1
        return u


def substream_seed(master_seed: int, index: int) -> int:
    """Independent 32-bit seed for grid node ``index``.

    splitmix64 finalizer over (master_seed, index); documented bit-exactly
    in the README so sweeps are reproducible across platforms and
    evaluation orders.
    """
    z = (master_seed * 0x9E3779B97F4A7C15 + (index + 1) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return z & _MASK32


@dataclass(frozen=True)
class SweepGrid:
    """Drift-rate lattice c_i = c_min + i * delta_c up to c_max, with
    optional locally refined intervals (lo, hi, factor) that subdivide the
    base span by ``factor`` inside [lo, hi]."""

    c_min: float
    c_max: float
    delta_c: float
    refinements: tuple[tuple[float, float, int], ...] = ()

    def __post_init__(self):
        if not self.delta_c > 0.0:
            raise ValueError("delta_c must be > 0")
        if not self.c_max >= self.c_min > 0.0:
            raise ValueError("need 0 < c_min <= c_max")

    def nodes(self) -> list[float]:
        count = int(math.floor((self.c_max - self.c_min) / self.delta_c + 1e-9)) + 1
        pts = {round(self.c_min + i * self.delta_c, 12) for i in range(count)}
        for lo, hi, factor in self.refinements:
            step = self.delta_c / factor
            n = int(math.floor((hi - lo) / step + 1e-9)) + 1
            pts.update(
                round(lo + i * step, 12)
                for i in range(n)
                if self.c_min <= lo + i * step <= self.c_max
            )
        return sorted(pts)


@dataclass(frozen=True)
class SimEstimate:
    estimate: float
    trials: int
    ci_low: float
    ci_high: float
    seed: int
    successes: int = field(default=0)


def wilson_interval(successes: int, trials: int) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("trials must be >= 1")
    z2 = _Z975 * _Z975
    phat = successes / trials
    denom = 1.0 + z2 / trials
    centre = (phat + z2 / (2.0 * trials)) / denom
    half = (
        _Z975
        * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials))
        / denom
    )
    # the boundary cases are exactly 0 and 1; rounding must not move them
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == trials else min(1.0, centre + half)
    return lo, hi


def first_crossing_time(
    t_dist: Distribution,
    y_dist: Distribution,
    u: float,
    c: float,
    v: float,
    horizon: float,
    stream: LcgStream,
) -> float | None:
    """Crossing epoch of one trajectory started with a renewal at time v.

    Returns the first renewal epoch s with total jumps minus c*s above u
    (which may be v itself if the first jump already crosses), or None if
    no crossing occurs by the horizon.  Between renewals the path only
    drifts down, so crossings happen at renewal epochs only.
    """
    s = v
    total = y_dist.sample(stream)
    if total - c * s > u:
        return s
    while True:
        s += t_dist.sample(stream)
        if s > horizon:
            return None
        total += y_dist.sample(stream)
        if total - c * s > u:
            return s


def simulate_conditional(
    t_dist: Distribution,
    y_dist: Distribution,
    u: float,
    c: float,
    v: float,
    t: float,
    n_trials: int,
    seed: int,
) -> SimEstimate:
    """Estimate P{v < tau <= t | first renewal at v} from n_trials paths.

    A trajectory counts as a success only for a crossing strictly after v:
    a first jump above u + c*v crosses AT v and is excluded from the
    conditional event.  The horizon must be finite (trajectories above the
    critical rate drift away and would never terminate).
    """
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    if not math.isfinite(t) or not t > v:
        raise ValueError("simulation requires a finite horizon t > v")
    stream = LcgStream(seed)
    successes = 0
    for _ in range(n_trials):
        tau = first_crossing_time(t_dist, y_dist, u, c, v, t, stream)
        if tau is not None and tau > v:
            successes += 1
    lo, hi = wilson_interval(successes, n_trials)
    return SimEstimate(
        estimate=successes / n_trials,
        trials=n_trials,
        ci_low=lo,
        ci_high=hi,
        seed=seed,
        successes=successes,
    )


def sweep_c(
    t_dist: Distribution,
    y_dist: Distribution,
    u: float,
    v: float,
    t: float,
    grid: SweepGrid,
    n_trials: int,
    master_seed: int = DEFAULT_SEED,
) -> list[tuple[float, SimEstimate]]:
    """Simulate every node of the grid with its own substream.

    Node results depend only on (master_seed, node index), never on
    processing order, so serial and concurrent execution agree bit for
    bit.  Warns when the critical rate lies outside the grid, since that
    is where the estimates are most informative.
    """
    try:
        c_star = constants_for(t_dist, y_dist).c_star
        if not grid.c_min <= c_star <= grid.c_max:
            warnings.warn(
                f"critical rate c* = {c_star:g} lies outside the sweep grid "
                f"[{grid.c_min:g}, {grid.c_max:g}]",
                RuntimeWarning,
                stacklevel=2,
            )
    except Exception:
        pass  # moment-poor laws can still be simulated
    out = []
    for i, c in enumerate(grid.nodes()):
        node_seed = substream_seed(master_seed, i)
        out.append((c, simulate_conditional(t_dist, y_dist, u, c, v, t, n_trials, node_seed)))
    return out
