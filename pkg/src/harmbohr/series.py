"""Closed-form majorant series for the class P0_H(M) and their brute-force oracles.

All majorants are built from the extremal coefficient bound
|a_n| + |b_n| <= 2M / (n (n - 1)), n >= 2, with a_1 = 1, b_1 = 0.

Where a closed form subtracts a finite head from a convergent sum, small
arguments lose every significant digit to cancellation.  The ``method``
keyword chooses between the closed form (``"closed"``), a direct sum of
the tail (``"series"``), or ``"auto"``, which sums directly when the
argument is at most 1/2 and a head is being subtracted.
"""

import math

import numpy as np

from .specfun import DomainError, li2

LN2 = math.log(2.0)
LN4 = math.log(4.0)

#: open upper end of the admissible class constant, 1/(2(ln 4 - 1))
M_SUP = 1.0 / (2.0 * (LN4 - 1.0))

VARIANTS = ("squared", "linear")

_EPS = 2.0 ** -53
_ORACLE_TERMS = 100_000


def check_M(M, allow_sup=False):
    M = float(M)
    if math.isnan(M) or M < 0.0 or M > M_SUP or (M == M_SUP and not allow_sup):
        raise DomainError(f"class constant M={M!r} outside [0, {M_SUP:.7f})")
    return M


def check_radius(r):
    r = float(r)
    if not 0.0 < r < 1.0:
        raise DomainError(f"radius r={r!r} must lie strictly inside (0, 1)")
    return r


def check_variant(variant):
    if variant not in VARIANTS:
        raise DomainError(f"unknown area variant {variant!r}; expected one of {VARIANTS}")
    return variant


def _check_method(method):
    if method not in ("auto", "closed", "series"):
        raise DomainError(f"unknown method {method!r}")


def _sum_from(x, start, coeff):
    """sum_{n>=start} coeff(n) x**n, summed until terms drop below eps."""
    total = 0.0
    n = start
    p = x ** n
    while True:
        term = coeff(n) * p
        total += term
        if term <= _EPS * total * 0.25 or p == 0.0:
            return total
        n += 1
        p *= x


def _inv_nn1(n):
    return 1.0 / (n * (n - 1))


def _inv_nn1_sq(n):
    return 1.0 / (n * n * (n - 1) * (n - 1))


def linear_sum(r):
    """sum_{n>=2} r**n/(n(n-1)) = r + (1-r) log(1-r)."""
    return r + (1.0 - r) * math.log1p(-r)


def growth_majorant(r, M):
    """Upper growth bound G_M(r) = r + 2M(r + (1-r) log(1-r)).

    This is also the value of the extremal function f_M at the real point r.
    """
    r = check_radius(r)
    M = check_M(M)
    return r + 2.0 * M * linear_sum(r)


def tail_majorant(r, M, N, method="auto"):
    """Majorant of sum_{n>=max(N,2)} (|a_n|+|b_n|) r**n; includes the a_1 = 1 term r when N = 1."""
    r = check_radius(r)
    M = check_M(M)
    N = int(N)
    if N < 1:
        raise DomainError("N must be a positive integer")
    _check_method(method)
    lead = r if N == 1 else 0.0
    start = max(N, 2)
    if start == 2:
        return lead + 2.0 * M * linear_sum(r)
    if method == "series" or (method == "auto" and r <= 0.5):
        tail = _sum_from(r, start, _inv_nn1)
    else:
        head = math.fsum(r ** n / (n * (n - 1)) for n in range(2, start))
        tail = linear_sum(r) - head
    return lead + 2.0 * M * tail


def quadratic_sum(x):
    """sum_{n>=2} x**n/(n**2 (n-1)**2) for x = r**2, in closed form."""
    if x == 0.0:
        return 0.0
    return (x + 1.0) * li2(x) + 2.0 * (x - 1.0) * math.log1p(-x) - 3.0 * x


def quadratic_tail(r, t, method="auto"):
    """G_t(r) = sum_{n>=max(t+1,2)} r**(2n) / (n**2 (n-1)**2)."""
    r = check_radius(r)
    t = int(t)
    if t < 0:
        raise DomainError("t must be a nonnegative integer")
    _check_method(method)
    x = r * r
    start = max(t + 1, 2)
    if start == 2:
        return quadratic_sum(x)
    if method == "series" or (method == "auto" and x <= 0.5):
        return _sum_from(x, start, _inv_nn1_sq)
    head = math.fsum(x ** n / (n * n * (n - 1) ** 2) for n in range(2, start))
    return quadratic_sum(x) - head


def head_constant(N, M):
    """Coefficient of r**N/(1-r) in the Rogosinski head, before sgn(t)."""
    t = (int(N) - 1) // 2
    if t == 0:
        return 0.0
    s = math.fsum(_inv_nn1_sq(n) for n in range(2, t + 1))
    return 1.0 + 4.0 * M * M * s


def rogosinski_head(r, M, N):
    """sgn(t) r**N/(1-r) (1 + 4M**2 sum_{n=2}^{t} 1/(n**2 (n-1)**2)), t = floor((N-1)/2).

    The n = 1 summand is (|a_1| + |b_1|)**2 = 1.
    """
    r = check_radius(r)
    M = check_M(M)
    N = int(N)
    if N < 1:
        raise DomainError("N must be a positive integer")
    c = head_constant(N, M)
    if c == 0.0:
        return 0.0
    return c * r ** N / (1.0 - r)


def area_sum(x):
    """sum_{n>=2} x**n/(n (n-1)**2) = x Li2(x) - (x + (1-x) log(1-x))."""
    if x == 0.0:
        return 0.0
    return x * li2(x) - (x + (1.0 - x) * math.log1p(-x))


def area_majorant(r, M, variant="squared"):
    """F_M(r), the bound on S_r/pi.

    ``variant="squared"`` weights the bracket by 4M**2, which is what the
    coefficient bound actually yields; ``"linear"`` uses 4M.
    """
    r = check_radius(r)
    M = check_M(M)
    check_variant(variant)
    x = r * r
    k = 4.0 * M * M if variant == "squared" else 4.0 * M
    return x + k * area_sum(x)


def corollary_helpers(r, M, m):
    """The shorthand triple (J1, J2, J3) used by the N = 1..4 equations.

    J1 = r**2 + 4M**2 [(1+r**2) Li2(r**2) - 2(1-r**2) log(1-r**2) - 3r**2]
    J2 = G_M(r)**m - 1 - 2M(1 - 2 log 2)
    J3 = r + (1-r) log(1-r)
    """
    r = check_radius(r)
    M = check_M(M)
    m = int(m)
    if m < 1:
        raise DomainError("m must be a positive integer")
    x = r * r
    j1 = x + 4.0 * M * M * quadratic_sum(x)
    j2 = growth_majorant(r, M) ** m - boundary_distance(M)
    j3 = linear_sum(r)
    return j1, j2, j3


def poly_eval(w, coeffs):
    """P_q(w) = sum_j lambda_j w**j with nonnegative weights; P_0 = 0."""
    w = float(w)
    if math.isnan(w) or w < 0.0:
        raise DomainError(f"polynomial argument {w!r} must be nonnegative")
    total = 0.0
    for lam in reversed(tuple(coeffs)):
        if lam < 0.0:
            raise DomainError(f"negative polynomial weight {lam!r}")
        total = (total + lam) * w
    return total


def poly_derivative(w, coeffs):
    return sum(j * lam * w ** (j - 1) for j, lam in enumerate(coeffs, start=1))


def boundary_distance(M):
    """d(f_M(0), boundary of f_M(D)) = 1 + 2M(1 - 2 log 2)."""
    M = check_M(M, allow_sup=True)
    return 1.0 + 2.0 * M * (1.0 - 2.0 * LN2)


# --- brute-force oracles -------------------------------------------------
#
# Straight truncated sums over n = 2..n_max, evaluated with numpy.  They
# share no code with the closed forms above.  Each returns the pair
# (partial_sum, remainder_bound); the bound dominates the dropped tail by
# comparison with a geometric series.

def _powers(x, lo, hi):
    n = np.arange(lo, hi + 1, dtype=float)
    return n, np.exp(n * math.log(x))


def oracle_linear(r, n_max=_ORACLE_TERMS):
    n, p = _powers(r, 2, n_max)
    s = float(np.sum(p / (n * (n - 1))))
    rem = r ** (n_max + 1) / ((n_max + 1) * n_max * (1.0 - r))
    return s, rem


def oracle_growth(r, M, n_max=_ORACLE_TERMS):
    s, rem = oracle_linear(r, n_max)
    return r + 2.0 * M * s, 2.0 * M * rem


def oracle_tail(r, M, N, n_max=_ORACLE_TERMS):
    start = max(N, 2)
    n, p = _powers(r, start, n_max)
    s = 2.0 * M * float(np.sum(p / (n * (n - 1))))
    if N == 1:
        s += r
    rem = 2.0 * M * r ** (n_max + 1) / ((n_max + 1) * n_max * (1.0 - r))
    return s, rem


def oracle_quadratic(r, t, n_max=_ORACLE_TERMS):
    x = r * r
    n, p = _powers(x, max(t + 1, 2), n_max)
    s = float(np.sum(p / (n * n * (n - 1) ** 2)))
    rem = x ** (n_max + 1) / ((n_max + 1) ** 2 * n_max ** 2 * (1.0 - x))
    return s, rem


def oracle_area(r, M, variant="squared", n_max=_ORACLE_TERMS):
    x = r * r
    n, p = _powers(x, 2, n_max)
    k = 4.0 * M * M if variant == "squared" else 4.0 * M
    s = x + k * float(np.sum(p / (n * (n - 1) ** 2)))
    rem = k * x ** (n_max + 1) / ((n_max + 1) * n_max ** 2 * (1.0 - x))
    return s, rem


def oracle_boundary_distance(M, n_max=1_000_000):
    """1 + 2M sum_{n=2}^{n_max} (-1)**(n-1)/(n(n-1)); alternating, so the bound is the next term."""
    n = np.arange(2, n_max + 1, dtype=float)
    sign = np.where(n % 2 == 0, -1.0, 1.0)
    s = 1.0 + 2.0 * M * float(np.sum(sign / (n * (n - 1))))
    return s, 2.0 * M / ((n_max + 1) * n_max)
