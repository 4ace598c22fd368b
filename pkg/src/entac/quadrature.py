"""Adaptive Simpson quadrature."""

from __future__ import annotations

import math
from collections.abc import Callable

from .errors import NumericError

DEFAULT_TOL = 1e-10
DEFAULT_MAX_DEPTH = 50


def _checked(f: Callable[[float], float]) -> Callable[[float], float]:
    def g(x: float) -> float:
        y = float(f(x))
        if not math.isfinite(y):
            raise NumericError(f"integrand is not finite at x={x!r}")
        return y

    return g


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = DEFAULT_TOL,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> float:
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    Interval halving with the usual ``|S2 - S1| <= 15 * tol`` acceptance test
    and a Richardson correction on accepted panels. Reaching ``max_depth``
    without meeting the tolerance raises :class:`NumericError` rather than
    returning a silently inaccurate value.
    """
    if a == b:
        return 0.0
    if a > b:
        return -adaptive_simpson(f, b, a, tol, max_depth)
    f = _checked(f)

    def simpson(fa: float, fm: float, fb: float, h: float) -> float:
        return h / 6.0 * (fa + 4.0 * fm + fb)

    # explicit stack instead of recursion; depth 50 would be fine either way,
    # but this keeps the summation order fixed and easy to follow
    fa, fm, fb = f(a), f((a + b) / 2.0), f(b)
    total = 0.0
    stack = [(a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 0)]
    while stack:
        lo, hi, flo, fmid, fhi, whole, eps, depth = stack.pop()
        mid = (lo + hi) / 2.0
        fl = f((lo + mid) / 2.0)
        fr = f((mid + hi) / 2.0)
        left = simpson(flo, fl, fmid, mid - lo)
        right = simpson(fmid, fr, fhi, hi - mid)
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps:
            total += left + right + delta / 15.0
            continue
        if depth >= max_depth:
            raise NumericError(
                f"adaptive Simpson did not converge on [{lo!r}, {hi!r}] "
                f"within depth {max_depth}"
            )
        # right pushed first so the left half is summed first
        stack.append((mid, hi, fmid, fr, fhi, right, eps / 2.0, depth + 1))
        stack.append((lo, mid, flo, fl, fmid, left, eps / 2.0, depth + 1))
    return total

