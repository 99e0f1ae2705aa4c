"""The extremal function f_M and brute-force evaluation from coefficients.

f_M(z) = z + sum_{n>=2} 2M z**n / (n(n-1)),  f_M'(z) = 1 - 2M log(1 - z).

Class members are represented by coefficient moduli only: every quantity
the Bohr functionals compare depends on |a_n| and |b_n| alone.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import series as S
from .functionals import FunctionalId, STARRED, corollary_params
from .specfun import DomainError


class TruncationError(RuntimeError):
    """Coefficient sequence too short to certify the requested accuracy."""


class QuadratureError(RuntimeError):
    def __init__(self, message, estimate):
        super().__init__(f"{message} (achieved error estimate {estimate:.3g})")
        self.estimate = estimate


@dataclass(frozen=True)
class CoefficientSeq:
    """Moduli |a_n|, |b_n| for n = 1..n_max (index 0 holds n = 1)."""

    a: np.ndarray
    b: np.ndarray
    M: float

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        S.check_M(self.M)
        if a.shape != b.shape or a.ndim != 1 or a.size < 2:
            raise DomainError("a and b must be 1-d arrays of equal length >= 2")
        if a[0] != 1.0 or b[0] != 0.0:
            raise DomainError("normalization requires a_1 = 1 and b_1 = 0")
        if np.any(a < 0) or np.any(b < 0):
            raise DomainError("coefficient moduli must be nonnegative")
        n = np.arange(2, a.size + 1, dtype=float)
        bound = 2.0 * self.M / (n * (n - 1))
        if np.any(a[1:] + b[1:] > bound * (1.0 + 1e-12)):
            raise DomainError("coefficients exceed |a_n| + |b_n| <= 2M/(n(n-1))")

    @property
    def n_max(self):
        return self.a.size

    @property
    def c(self):
        return self.a + self.b


def extremal_coefficients(M, n_max):
    """Coefficients of f_M: a_n = 2M/(n(n-1)) for n >= 2, b_n = 0."""
    M = S.check_M(M)
    n_max = int(n_max)
    if n_max < 2:
        raise DomainError("n_max must be at least 2")
    n = np.arange(2, n_max + 1, dtype=float)
    a = np.concatenate(([1.0], 2.0 * M / (n * (n - 1))))
    return CoefficientSeq(a, np.zeros(n_max), M)


def eval_extremal(r, M):
    """f_M(r) at a real radius; all coefficients are positive so this is G_M(r)."""
    return S.growth_majorant(r, M)


def eval_coefficients(c, r):
    """f(r) = sum (a_n + b_n) r**n for real phase-aligned coefficients, plus a remainder bound."""
    r = S.check_radius(r)
    n = np.arange(1, c.n_max + 1, dtype=float)
    val = float(np.sum(c.c * r ** n))
    K = c.n_max
    rem = 2.0 * c.M * r ** (K + 1) / (K * (K + 1) * (1.0 - r))
    return val, rem


def required_order(r, M, tol=1e-10, cap=100_000):
    """Smallest n_max whose certified remainder in :func:`lhs_bruteforce` stays below tol/100."""
    r = S.check_radius(r)
    K = 8
    while K <= cap:
        if 2.0 * max(M, 1e-300) * r ** (K + 1) / (K * (K + 1) * (1.0 - r) ** 3) < tol * 1e-2:
            return K
        K *= 2
    raise TruncationError(f"no n_max <= {cap} certifies tolerance {tol} at r={r}")


def _resolve(fid, p):
    fid = FunctionalId.parse(fid)
    if fid.is_corollary:
        return corollary_params(fid, p.M, p.variant), fid in STARRED
    if fid in (FunctionalId.MAIN_PHI, FunctionalId.MAIN_PHI_STAR):
        return p, fid in STARRED
    raise DomainError(f"{fid.value} has no harmonic brute-force form")


def _assemble(r, p, starred, lin, head_sq, quad, area):
    f_abs = lin[0]
    tail = lin[1]
    t = p.t
    val = p.beta * f_abs ** p.m + tail
    if t > 0:
        val += p.mu * head_sq * r ** p.N / (1.0 - r)
    val += p.lam * (1.0 + r / (1.0 - r)) * quad
    if p.has_poly:
        # S_r >= 0 for sense-preserving maps; coefficient samples need not be
        area = max(area, 0.0)
        if starred:
            if area >= 1.0:
                raise DomainError("S_r/pi >= 1; ratio undefined")
            area = area / (1.0 - area)
        val += S.poly_eval(area, p.poly)
    return val


def lhs_bruteforce(fid, p, r, c, tol=1e-10):
    """Evaluate the Bohr-Rogosinski left-hand side directly from coefficients.

    Sums |f(r)|, the tail from N, the Rogosinski head, the weighted quadratic
    tail and S_r/pi = r**2 + sum n(a_n**2 - b_n**2) r**(2n).  Returns
    ``(value, remainder)``; the remainder bounds the effect of every dropped
    coefficient and must not exceed ``tol``.
    """
    r = S.check_radius(r)
    p, starred = _resolve(fid, p)
    if c.M != p.M:
        raise DomainError("coefficient sequence and parameters disagree on M")
    K = c.n_max
    n = np.arange(1, K + 1, dtype=float)
    cn = c.c
    rn = r ** n
    t = p.t
    f_abs = float(np.sum(cn * rn))
    tail = float(np.sum(cn[p.N - 1:] * rn[p.N - 1:]))
    head_sq = float(np.sum(cn[:t] ** 2)) if t > 0 else 0.0
    quad = float(np.sum(cn[t:] ** 2 * rn[t:] ** 2))
    area = r * r + float(np.sum(n[1:] * (c.a[1:] ** 2 - c.b[1:] ** 2) * rn[1:] ** 2))
    val = _assemble(r, p, starred, (f_abs, tail), head_sq, quad, area)

    # dropped coefficients n > K obey c_n <= 2M/(n(n-1)); every piece is
    # monotone in its sum, so bumping each sum by its tail bound brackets
    # the true value
    M = p.M
    x = r * r
    rem_lin = 2.0 * M * r ** (K + 1) / (K * (K + 1) * (1.0 - r))
    rem_quad = 4.0 * M * M * x ** (K + 1) / (K * K * (K + 1) ** 2 * (1.0 - x))
    rem_area = 4.0 * M * M * x ** (K + 1) / (K * K * (K + 1) * (1.0 - x))
    if K < p.N - 1 or K < t:
        raise TruncationError("n_max shorter than the head of the functional")
    try:
        upper = _assemble(r, p, starred, (f_abs + rem_lin, tail + rem_lin), head_sq,
                          quad + rem_quad, area + rem_area)
        lower = _assemble(r, p, starred, (f_abs, tail), head_sq, quad, area - rem_area)
    except DomainError as exc:
        raise TruncationError(str(exc)) from None
    rem = upper - lower
    if rem > tol:
        raise TruncationError(f"remainder bound {rem:.3g} exceeds {tol:.3g}; raise n_max")
    return val, rem


@dataclass(frozen=True)
class Certificate:
    holds: bool
    below: float
    above: float
    distance: float
    delta: float


def sharpness_certificate(fid, p, R, delta=1e-4):
    """Check that f_M satisfies the inequality just below R and violates it just above.

    ``R`` is a RootResult (or a bare radius).
    """
    delta = float(delta)
    if not 0.0 < delta <= 1e-3:
        raise DomainError("delta must lie in (0, 1e-3]")
    rv = getattr(R, "value", R)
    p, starred = _resolve(fid, p)
    lo, hi = rv - delta, rv + delta
    if lo <= 0.0 or hi >= 1.0:
        raise DomainError("R +- delta leaves (0, 1)")
    if starred and p.has_poly and S.area_majorant(hi, p.M, p.variant) >= 1.0:
        raise DomainError("R + delta lies beyond the F_M = 1 wall")
    d = S.boundary_distance(p.M)
    K = required_order(hi, p.M)
    c = extremal_coefficients(p.M, K)
    below, _ = lhs_bruteforce(fid, p, lo, c)
    above, _ = lhs_bruteforce(fid, p, hi, c)
    return Certificate(below < d < above, below, above, d, delta)


def sample_class_coefficients(M, seed, n_max, u=None, split=None):
    """Random coefficient moduli obeying the class bound.

    a_n + b_n = u_n 2M/(n(n-1)) with u_n ~ U[0,1], divided between a_n and b_n
    by a second uniform draw.  ``u`` and ``split`` override the draws
    (length n_max - 1 each, indexed from n = 2).
    """
    M = S.check_M(M)
    n_max = int(n_max)
    if n_max < 2:
        raise DomainError("n_max must be at least 2")
    rng = np.random.default_rng(seed)
    k = n_max - 1
    u = rng.uniform(0.0, 1.0, k) if u is None else np.broadcast_to(np.asarray(u, float), (k,))
    split = rng.uniform(0.0, 1.0, k) if split is None else np.broadcast_to(np.asarray(split, float), (k,))
    n = np.arange(2, n_max + 1, dtype=float)
    total = u * 2.0 * M / (n * (n - 1))
    a = np.concatenate(([1.0], split * total))
    b = np.concatenate(([0.0], total - split * total))
    return CoefficientSeq(a, np.maximum(b, 0.0), M)


def growth_bounds(r, M):
    """Lower and upper growth bounds for |f(r)| over the class."""
    r = S.check_radius(r)
    M = S.check_M(M)
    lower = r + 2.0 * M * (r - (1.0 + r) * math.log1p(r))
    return lower, S.growth_majorant(r, M)


def _area_at(M, r, n_rad, n_ang):
    x, w = np.polynomial.legendre.leggauss(n_rad)
    rho = 0.5 * r * (x + 1.0)
    wr = 0.5 * r * w * rho
    theta = 2.0 * np.pi * np.arange(n_ang) / n_ang
    z = rho[:, None] * np.exp(1j * theta[None, :])
    dh = 1.0 - 2.0 * M * np.log(1.0 - z)
    ang = np.abs(dh) ** 2
    # trapezoid on the periodic angle, Gauss-Legendre (with Jacobian rho) in radius
    return float(np.sum(wr * ang.mean(axis=1)) * 2.0 * np.pi)


def area_quadrature(M, r, tol=1e-8, max_level=8):
    """S_r/pi for f_M from the Jacobian integral over the disk of radius r.

    Refines both rules until two successive levels differ by less than tol.
    """
    M = S.check_M(M)
    r = S.check_radius(r)
    if r > 0.95:
        raise DomainError("quadrature budget covers r <= 0.95 only")
    n_rad, n_ang = 16, 64
    prev = _area_at(M, r, n_rad, n_ang)
    err = math.inf
    for _ in range(max_level):
        n_rad *= 2
        n_ang *= 2
        cur = _area_at(M, r, n_rad, n_ang)
        err = abs(cur - prev)
        if err < tol:
            return cur / math.pi
        prev = cur
    raise QuadratureError("area quadrature did not converge", err / math.pi)
