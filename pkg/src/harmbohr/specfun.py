"""Real dilogarithm on the closed unit interval.

Li2(x) = sum_{k>=1} x**k / k**2.  The series is summed directly for
x <= 1/2; above that the reflection

    Li2(x) + Li2(1 - x) = pi**2/6 - log(x) log(1 - x)

maps the argument back below 1/2, so at most ~50 terms are ever summed.
"""

import math

PI2_6 = math.pi ** 2 / 6.0

_EPS = 2.0 ** -53


class DomainError(ValueError):
    """Argument outside the domain a routine is defined on."""


def check_dilog_arg(x):
    x = float(x)
    if math.isnan(x):
        raise DomainError("dilogarithm argument is NaN")
    if x < 0.0 or x > 1.0:
        raise DomainError(f"dilogarithm argument {x!r} outside [0, 1]")
    return x


def _li2_series(x):
    # 0 <= x <= 1/2: terms shrink at least geometrically by 1/2
    total = 0.0
    term_pow = x
    k = 1
    while True:
        term = term_pow / (k * k)
        total += term
        if term <= _EPS * total * 0.25:
            break
        k += 1
        term_pow *= x
    return total


def li2(x):
    """Dilogarithm Li2(x) for 0 <= x <= 1, relative error below 1e-14."""
    x = check_dilog_arg(x)
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return PI2_6
    if x <= 0.5:
        return _li2_series(x)
    y = 1.0 - x  # exact for x > 1/2
    return PI2_6 - math.log(x) * math.log(y) - _li2_series(y)


def li2_series_oracle(x, n_max, certify=False):
    """Plain partial sum sum_{k=1}^{n_max} x**k/k**2.

    Only meant as a test oracle for :func:`li2`.  With ``certify=True`` the
    pair ``(partial_sum, remainder_bound)`` is returned, where the bound is
    x**(n+1) / ((1 - x) (n + 1)**2); that bound does not exist at x = 1.
    """
    x = check_dilog_arg(x)
    n_max = int(n_max)
    if n_max < 1:
        raise DomainError("n_max must be a positive integer")
    if certify and x == 1.0:
        raise DomainError("no geometric remainder bound at x = 1")
    total = 0.0
    comp = 0.0
    p = 1.0
    for k in range(1, n_max + 1):
        p *= x
        if p == 0.0:
            break
        # Kahan summation; the oracle must not be the weak link at 1e6 terms
        y = p / (k * k) - comp
        t = total + y
        comp = (t - total) - y
        total = t
    if not certify:
        return total
    bound = x ** (n_max + 1) / ((1.0 - x) * (n_max + 1) ** 2)
    return total, bound
