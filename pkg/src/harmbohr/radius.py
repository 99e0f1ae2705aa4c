"""Bracketed root finding on (0, 1) with certified sign changes."""

import math
import sys
from dataclasses import dataclass

import numpy as np

from . import series as S
from .functionals import FunctionalId, make_functional
from .specfun import DomainError

EPS = sys.float_info.epsilon

LO_SEED = 1e-9
HI_SEED = 1.0 - 1e-9
MAXITER = 200


class RootFindingError(RuntimeError):
    pass


class NoSignChangeError(RootFindingError):
    """The functional does not change sign on the admissible interval."""


class IterationLimitError(RootFindingError):
    pass


@dataclass(frozen=True)
class RootResult:
    value: float
    residual: float
    bracket: tuple
    iterations: int
    unique: bool
    certificate: object = None


def bracket(f, lo_hint=LO_SEED, hi_hint=HI_SEED):
    """Return (lo, hi) with f(lo) < 0 < f(hi).

    If f is undefined at ``hi_hint`` (a DomainError, e.g. beyond the F_M = 1
    wall) the upper end backs away from it by geometrically growing steps.
    """
    lo, hi = float(lo_hint), float(hi_hint)
    if not lo < hi:
        raise DomainError(f"empty interval [{lo}, {hi}]")
    flo = f(lo)
    if not flo < 0.0:
        raise NoSignChangeError(f"f({lo:.3g}) = {flo!r} is not negative")
    gap = max(4 * EPS * hi, 1e-12 * (hi - lo))
    top = hi
    while True:
        try:
            fhi = f(hi)
            break
        except DomainError:
            hi = top - gap
            gap *= 2.0
            if hi <= lo:
                raise NoSignChangeError("functional undefined on the whole interval") from None
    if not fhi > 0.0:
        raise NoSignChangeError(
            f"f < 0 on [{lo:.3g}, {hi:.12g}] (f(hi) = {fhi!r}); parameters inadmissible")
    return lo, hi


def _isolate_exact_zero(f, x):
    # f(x) == 0 exactly: widen by ulps until the signs are strict again
    lo = hi = x
    step = max(abs(x) * EPS, 1e-300)
    while f(lo) >= 0.0:
        lo = x - step
        step *= 2.0
    step = max(abs(x) * EPS, 1e-300)
    while f(hi) <= 0.0:
        hi = x + step
        step *= 2.0
    return lo, hi


def solve(f, brk=None, tol=1e-12, xtol=1e-12, maxiter=MAXITER):
    """Brent's method on a sign-change bracket.

    Inverse quadratic / secant steps with bisection fallback.  Stops once
    the bracket is narrower than ``xtol``; the returned residual is checked
    against ``tol`` scaled by max(1, local slope).
    """
    if tol < 1e-14 or xtol < 1e-14:
        raise DomainError("tolerances below 1e-14 are not supported")
    if brk is None:
        brk = bracket(f)
    a, b = map(float, brk)
    fa, fb = f(a), f(b)
    if not (fa < 0.0 < fb):
        raise NoSignChangeError(f"no sign change on [{a}, {b}]: f = ({fa}, {fb})")
    c, fc = a, fa
    d = e = b - a
    for it in range(1, maxiter + 1):
        if (fb > 0.0) == (fc > 0.0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * EPS * abs(b) + 0.25 * xtol
        xm = 0.5 * (c - b)
        if fb == 0.0:
            lo, hi = _isolate_exact_zero(f, b)
            return _finish(b, 0.0, lo, hi, it, tol, 1.0)
        if abs(xm) <= tol1:
            lo, hi = (b, c) if b < c else (c, b)
            flo, fhi = (fb, fc) if b < c else (fc, fb)
            slope = abs(fhi - flo) / (hi - lo) if hi > lo else 1.0
            return _finish(b, abs(fb), lo, hi, it, tol, slope)
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                q = fa / fc
                rr = fb / fc
                p = s * (2.0 * xm * q * (q - rr) - (b - a) * (rr - 1.0))
                q = (q - 1.0) * (rr - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = xm
        else:
            d = e = xm
        a, fa = b, fb
        b += d if abs(d) > tol1 else math.copysign(tol1, xm)
        fb = f(b)
    raise IterationLimitError(f"no convergence within {maxiter} iterations")


def _finish(x, resid, lo, hi, it, tol, slope):
    if resid > tol * max(1.0, slope):
        raise RootFindingError(f"residual {resid!r} exceeds tolerance at x={x!r}")
    return RootResult(value=x, residual=resid, bracket=(lo, hi), iterations=it, unique=True)


def bisect_oracle(f, lo, hi, xtol=1e-12, maxiter=MAXITER):
    """Plain bisection; independent check on :func:`solve`."""
    flo = f(lo)
    if not (flo < 0.0 < f(hi)):
        raise NoSignChangeError("bisection needs f(lo) < 0 < f(hi)")
    for _ in range(maxiter):
        if hi - lo <= xtol:
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    raise IterationLimitError("bisection did not reach the requested width")


def verify_unique(f, domain=(LO_SEED, HI_SEED), grid=200):
    """True iff f strictly increases over a uniform grid and changes sign exactly once."""
    grid = int(grid)
    if grid < 100:
        raise DomainError("uniqueness scan needs at least 100 grid points")
    xs = np.linspace(domain[0], domain[1], grid)
    try:
        vals = np.array([f(x) for x in xs])
    except DomainError:
        return False
    if not np.all(np.diff(vals) > 0.0):
        return False
    signs = np.sign(vals)
    signs = signs[signs != 0]
    return int(np.count_nonzero(np.diff(signs))) == 1


def wall_location(M, variant="squared", eps=1e-9):
    """Radius where F_M reaches 1 - eps, or None when F_M stays below it on (0, 1)."""
    target = 1.0 - eps
    g = lambda r: S.area_majorant(r, M, variant) - target
    if g(HI_SEED) <= 0.0:
        return None
    return solve(g, (LO_SEED, HI_SEED)).value


def radius_for(fid, p=None, extras=(), tol=1e-12, certify=False, delta=1e-4, grid=200):
    """Sharp radius of a tagged functional: bracket, solve, scan for uniqueness.

    With ``certify=True`` a sharpness certificate from the extremal function
    is attached (harmonic tags only).
    """
    func = make_functional(fid, p, extras)
    fid = func.fid
    if fid is FunctionalId.ANA_r_a0:
        v = func(0.0)
        return RootResult(v, 0.0, (v, v), 0, True)
    hi = HI_SEED
    params = func.params
    if func.starred and params.has_poly:
        wall = wall_location(params.M, params.variant)
        if wall is not None:
            hi = wall
    brk = bracket(func, LO_SEED, hi)
    res = solve(func, brk, tol=tol)
    unique = verify_unique(func, (LO_SEED, brk[1]), grid)
    cert = None
    if certify:
        if params is None:
            raise DomainError("sharpness certificates exist only for harmonic functionals")
        from .extremal import sharpness_certificate
        cert = sharpness_certificate(fid, params, res, delta)
    return RootResult(res.value, res.residual, res.bracket, res.iterations, unique, cert)
