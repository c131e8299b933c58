"""Adaptive Simpson quadrature used by the oracles and the exact formula."""

import math
from typing import Callable

from .errors import QuadratureError

__all__ = ["adaptive_simpson", "integrate_log_scaled"]


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h / 6.0 * (fa + 4.0 * fm + fb)


def _adapt(f, a, b, fa, fm, fb, whole, tol, depth, max_depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(fa, flm, fm, m - a)
    right = _simpson(fm, frm, fb, b - m)
    err = left + right - whole
    if abs(err) <= 15.0 * tol:
        return left + right + err / 15.0
    if depth >= max_depth:
        raise QuadratureError(
            f"adaptive quadrature hit depth {max_depth} on "
            f"[{a:g}, {b:g}] with residual {abs(err):.3g} > {15 * tol:.3g}"
        )
    half = 0.5 * tol
    return _adapt(f, a, m, fa, flm, fm, left, half, depth + 1, max_depth) + _adapt(
        f, m, b, fm, frm, fb, right, half, depth + 1, max_depth
    )


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float,
    max_depth: int = 60,
    initial_panels: int = 16,
) -> float:
    """Integrate f over [a, b] to absolute tolerance tol.

    The interval is first cut into ``initial_panels`` equal panels so that a
    narrow interior peak cannot hide from the 5-point starting estimate;
    each panel is then refined by interval bisection with the usual
    Richardson acceptance test.
    """
    if not (b > a):
        return 0.0
    n = max(1, initial_panels)
    panel_tol = tol / n
    h = (b - a) / n
    total = 0.0
    x0 = a
    f0 = f(x0)
    for i in range(n):
        x1 = a + (i + 1) * h
        xm = 0.5 * (x0 + x1)
        f1 = f(x1)
        fm = f(xm)
        whole = _simpson(f0, fm, f1, x1 - x0)
        total += _adapt(f, x0, x1, f0, fm, f1, whole, panel_tol, 0, max_depth)
        x0, f0 = x1, f1
    return total


def integrate_log_scaled(
    log_f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = 1e-10,
    scan_points: int = 256,
    max_depth: int = 60,
) -> tuple[float, float]:
    """Integrate exp(log_f) over [a, b] when exp(log_f) would over/underflow.

    Returns ``(log_scale, value)`` with the integral equal to
    ``exp(log_scale) * value``.  A coarse scan locates the maximum of the
    log-integrand, the integrand is rescaled by it, and the scaled profile
    (bounded by ~1) is integrated adaptively to ``rel_tol`` relative to a
    scan-based estimate of its mass.
    """
    if not (b > a):
        return 0.0, 0.0
    n = scan_points
    h = (b - a) / n
    xs = [a + i * h for i in range(n + 1)]
    logs = [log_f(x) for x in xs]
    peak = max(logs)
    if peak == -math.inf:
        return 0.0, 0.0

    def scaled(x: float) -> float:
        lv = log_f(x) - peak
        return math.exp(lv) if lv > -745.0 else 0.0

    # trapezoid mass of the scaled profile, as the tolerance scale
    vals = [math.exp(lv - peak) if lv - peak > -745.0 else 0.0 for lv in logs]
    coarse = h * (0.5 * (vals[0] + vals[-1]) + sum(vals[1:-1]))
    tol = rel_tol * max(coarse, h)
    value = adaptive_simpson(scaled, a, b, tol, max_depth=max_depth, initial_panels=n)
    return peak, value
