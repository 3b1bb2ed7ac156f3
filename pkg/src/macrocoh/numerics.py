"""Checked adaptive quadrature and monotone bisection.

Thin wrappers around scipy's QUADPACK routines that turn silent convergence
warnings into exceptions carrying the achieved error estimate, plus the
bracketing/bisection helper used by the coherence-time solver.  Bisection is
preferred over faster root finders because every residual function here is
strictly increasing, which makes bisection unconditionally safe.
"""

import math

from scipy import integrate


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not converge to the requested tolerance."""

    def __init__(self, message, value=None, error_estimate=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


def quad_checked(fn, a, b, *, epsrel=1e-9, epsabs=0.0, points=None,
                 weight=None, wvar=None, limit=200):
    """Integrate fn over [a, b]; return (value, abs_error_estimate).

    `points` marks known interior kinks (ignored when a weight is used, as
    QUADPACK forbids the combination).  Raises QuadratureError instead of
    emitting the scipy IntegrationWarning.
    """
    kwargs = {"epsabs": epsabs, "epsrel": epsrel, "limit": limit, "full_output": 1}
    if weight is not None:
        kwargs["weight"] = weight
        kwargs["wvar"] = wvar
    elif points:
        interior = [p for p in points if a < p < b]
        if interior:
            kwargs["points"] = sorted(interior)
    out = integrate.quad(fn, a, b, **kwargs)
    value, abserr = out[0], out[1]
    if len(out) > 3:  # quad appends a diagnostic message on failure
        raise QuadratureError(
            f"quadrature over [{a:g}, {b:g}] did not converge: "
            f"value {value:.6e}, achieved error estimate {abserr:.3e} ({out[3]})",
            value=value,
            error_estimate=abserr,
        )
    return value, abserr


def cbrt(x):
    """Real cube root with sign (math.cbrt only exists from Python 3.11)."""
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def bisect_increasing(fn, lo, hi, *, rel_tol=1e-12, max_iter=300):
    """Root of an increasing function with fn(lo) <= 0 <= fn(hi)."""
    if lo > hi:
        raise ValueError("need lo <= hi")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rel_tol * max(abs(mid), 1e-300):
            return mid
        if fn(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
