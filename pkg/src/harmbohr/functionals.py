"""Root-defining functionals.

Every functional here is written as ``LHS(r) - d`` where ``d`` is the
boundary distance 1 + 2M(1 - 2 log 2), so the sharp radius is its unique
zero in (0, 1).
"""

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import series as S
from .specfun import DomainError

SQRT5 = math.sqrt(5.0)


class FunctionalId(enum.Enum):
    MAIN_PHI = "main"
    MAIN_PHI_STAR = "main-star"
    COR_3_8 = "cor3.8"
    COR_3_9 = "cor3.9"
    COR_3_5 = "cor3.5"
    COR_3_6 = "cor3.6"
    COR_3_11 = "cor3.11"
    COR_3_12 = "cor3.12"
    COR_3_25 = "cor3.25"
    COR_3_26 = "cor3.26"
    COR_3_13 = "cor3.13"
    ANA_R_mN = "ana-rmn"
    ANA_Rp_mN = "ana-rpmn"
    ANA_R_N = "ana-rn"
    ANA_Rp_N = "ana-rpn"
    ANA_r_a0 = "ana-ra0"
    ANA_rp_a0 = "ana-rpa0"
    ANA_LAMBDA_QUINTIC = "ana-quintic"
    ANA_LAMBDA_QUARTIC = "ana-quartic"

    @classmethod
    def parse(cls, tag):
        if isinstance(tag, cls):
            return tag
        for member in cls:
            if tag in (member.value, member.name):
                return member
        raise DomainError(f"unknown functional tag {tag!r}")

    @property
    def is_corollary(self):
        return self.name.startswith("COR_")

    @property
    def is_analytic(self):
        return self.name.startswith("ANA_")


COROLLARIES = tuple(f for f in FunctionalId if f.is_corollary)
STARRED = frozenset({FunctionalId.MAIN_PHI_STAR, FunctionalId.COR_3_25,
                     FunctionalId.COR_3_26, FunctionalId.COR_3_13})

# names of the extras each analytic tag takes, in order
EXTRAS = {
    FunctionalId.ANA_R_mN: ("m", "N"),
    FunctionalId.ANA_Rp_mN: ("m", "N"),
    FunctionalId.ANA_R_N: ("N",),
    FunctionalId.ANA_Rp_N: ("N",),
    FunctionalId.ANA_r_a0: ("a0",),
    FunctionalId.ANA_rp_a0: ("a0",),
    FunctionalId.ANA_LAMBDA_QUINTIC: (),
    FunctionalId.ANA_LAMBDA_QUARTIC: (),
}


def check_extras(fid, extras):
    extras = tuple(extras or ())
    if fid in EXTRAS:
        want = EXTRAS[fid]
        if len(extras) != len(want):
            raise DomainError(f"{fid.value} takes extras {want}, got {extras!r}")
    elif fid is FunctionalId.COR_3_12:
        if len(extras) > 1:
            raise DomainError("cor3.12 takes at most one extra (lambda_2)")
    elif extras:
        raise DomainError(f"{fid.value} takes no extras, got {extras!r}")
    return extras


@dataclass(frozen=True)
class ParamSet:
    """Weights of a combined Bohr-Rogosinski functional.

    ``lam`` is the weight of the quadratic coefficient tail and ``poly`` the
    weights lambda_1..lambda_q of the area polynomial.  ``variant`` picks the
    area bound, see :func:`harmbohr.series.area_majorant`.
    """

    beta: float = 0.0
    mu: float = 0.0
    lam: float = 0.0
    m: int = 1
    N: int = 1
    poly: tuple = ()
    M: float = 0.0
    variant: str = "squared"

    def __post_init__(self):
        object.__setattr__(self, "poly", tuple(float(c) for c in self.poly))
        for name in ("beta", "mu", "lam"):
            v = float(getattr(self, name))
            if math.isnan(v) or v < 0.0:
                raise DomainError(f"{name}={v!r} must be nonnegative")
        if any(math.isnan(c) or c < 0.0 for c in self.poly):
            raise DomainError(f"polynomial weights {self.poly!r} must be nonnegative")
        if int(self.m) != self.m or self.m < 1:
            raise DomainError(f"m={self.m!r} must be a positive integer")
        if int(self.N) != self.N or self.N < 1:
            raise DomainError(f"N={self.N!r} must be a positive integer")
        S.check_M(self.M)
        S.check_variant(self.variant)

    @property
    def t(self):
        return (self.N - 1) // 2

    @property
    def has_poly(self):
        return any(c > 0.0 for c in self.poly)


def _core(r, p):
    """Everything except the area polynomial, minus the boundary distance."""
    M, beta, mu, lam, N = p.M, p.beta, p.mu, p.lam, p.N
    j1, _, j3 = S.corollary_helpers(r, M, 1)
    growth = beta * S.growth_majorant(r, M) ** p.m - S.boundary_distance(M)
    weight = lam * (1.0 + r / (1.0 - r))
    if N == 1:
        return r + 2.0 * M * j3 + growth + weight * j1
    if N == 2:
        return 2.0 * M * j3 + growth + weight * j1
    if N == 3:
        return (2.0 * M * (j3 - r * r / 2.0) + growth + mu * r ** 3 / (1.0 - r)
                + weight * (j1 - r * r))
    if N == 4:
        return (2.0 * M * (j3 - r * r / 2.0 - r ** 3 / 6.0) + growth
                + mu * r ** 4 / (1.0 - r) + weight * (j1 - r * r))
    return (growth + S.tail_majorant(r, M, N) + mu * S.rogosinski_head(r, M, N)
            + 4.0 * M * M * weight * S.quadratic_tail(r, p.t))


def phi_main(r, p):
    """Bohr-Rogosinski functional with the area polynomial P_q(F_M(r))."""
    r = S.check_radius(r)
    return _core(r, p) + S.poly_eval(S.area_majorant(r, p.M, p.variant), p.poly)


def star_ratio(r, M, variant="squared"):
    F = S.area_majorant(r, M, variant)
    if F >= 1.0:
        raise DomainError(f"F_M({r!r}) = {F!r} >= 1; ratio F/(1-F) undefined")
    return F / (1.0 - F)


def phi_star(r, p):
    """As :func:`phi_main` with the polynomial evaluated at F/(1-F).

    Raises DomainError once F_M(r) >= 1 (only when some weight is nonzero).
    """
    r = S.check_radius(r)
    core = _core(r, p)
    if not p.has_poly:
        return core
    return core + S.poly_eval(star_ratio(r, p.M, p.variant), p.poly)


@lru_cache(maxsize=None)
def _real_root_01(coeffs_high_first):
    roots = np.roots(coeffs_high_first)
    real = [z.real for z in roots if abs(z.imag) < 1e-12 and 0.0 < z.real < 1.0]
    if len(real) != 1:
        raise DomainError(f"expected one root in (0,1), found {real}")
    return float(real[0])


QUINTIC = (1.0, 3.0, 38.0, 402.0, 473.0, -405.0)
QUARTIC = (1.0, 2.0, 80.0, 910.0, -513.0)


def quintic_lambda(a):
    return (4.0 * (486 - 261 * a - 324 * a ** 2 + 2 * a ** 3 + 30 * a ** 4 + 3 * a ** 5)
            / (81.0 * (1 + a) ** 3 * (3 - 5 * a)))


def quartic_lambda(a):
    return ((-81 + 1044 * a + 54 * a ** 2 - 116 * a ** 3 - 5 * a ** 4)
            / (162.0 * (a + 1) ** 2 * (2 * a - 1)))


def reference_constants():
    """Sharp constants of the analytic-class inequalities the harmonic results extend."""
    a5 = _real_root_01(QUINTIC)
    a4 = _real_root_01(QUARTIC)
    return {
        "bohr_radius": 1.0 / 3.0,
        "rogosinski_radius": 0.5,
        "area_weight": 16.0 / 9.0,
        "area_weight_sq": 9.0 / 8.0,
        "R1": SQRT5 - 2.0,
        "Rp1": 1.0 / 3.0,
        "p": 2.0 * (SQRT5 - 1.0),
        "quintic_root": a5,
        "quintic_lambda": quintic_lambda(a5),
        "quartic_root": a4,
        "quartic_lambda": quartic_lambda(a4),
    }


def lambda2():
    """Weight of (S_r/pi)**2 in the squared-modulus improved inequality (about 16.4618)."""
    return reference_constants()["quartic_lambda"]


def corollary_params(fid, M, variant="squared", extras=()):
    """ParamSet at which the general functional reduces to a corollary equation."""
    fid = FunctionalId.parse(fid)
    extras = check_extras(fid, extras)
    p = 2.0 * (SQRT5 - 1.0)
    table = {
        FunctionalId.COR_3_8: dict(beta=1, lam=1, m=1),
        FunctionalId.COR_3_9: dict(beta=1, lam=1, m=2),
        FunctionalId.COR_3_5: dict(poly=(16 / 9,)),
        FunctionalId.COR_3_6: dict(poly=(9 / 8,)),
        FunctionalId.COR_3_11: dict(beta=1, m=1, poly=(p,)),
        FunctionalId.COR_3_12: dict(beta=1, m=2, poly=(16 / 9, extras[0] if extras else lambda2())),
        FunctionalId.COR_3_25: dict(poly=(16 / 9,)),
        FunctionalId.COR_3_26: dict(poly=(9 / 8,)),
        FunctionalId.COR_3_13: dict(beta=1, m=1, poly=(p,)),
    }
    if fid not in table:
        raise DomainError(f"{fid.value} is not a corollary tag")
    return ParamSet(N=1, M=M, variant=variant, **table[fid])


def corollary_lhs(fid, r, M, extras=(), variant="squared", literal=False):
    """Left-hand side of a named corollary equation, written out term by term.

    The equations for ``cor3.11`` and ``cor3.13`` as typeset drop the |f(z)|
    term that their inequalities carry; it is restored unless ``literal``
    is true.  In ``cor3.8``, log(1-r)**2 means log((1-r)**2).
    """
    fid = FunctionalId.parse(fid)
    extras = check_extras(fid, extras)
    r = S.check_radius(r)
    M = S.check_M(M)
    log1 = math.log1p(-r)
    weight = 1.0 + r / (1.0 - r)
    ln4 = S.LN4
    if fid in (FunctionalId.COR_3_8, FunctionalId.COR_3_9):
        j1, _, _ = S.corollary_helpers(r, M, 1)
        if fid is FunctionalId.COR_3_8:
            return (2 * r - 1 + 2 * M * (2 * r - 1 + ln4 + (1 - r) * 2.0 * log1)
                    + weight * j1)
        G = S.growth_majorant(r, M)
        return G ** 2 + r - 1 + 2 * M * ((1 - r) * (log1 - 1) + ln4) + weight * j1

    F = S.area_majorant(r, M, variant)
    base_a = r - 1 + 2 * M * ((1 - r) * (log1 - 1) + ln4)
    base_b = r - 1 + 2 * M * (r - 1 + ln4 + (1 - r) * log1)
    p = 2.0 * (SQRT5 - 1.0)
    if fid is FunctionalId.COR_3_5:
        return base_a + 16 / 9 * F
    if fid is FunctionalId.COR_3_6:
        return base_a + 9 / 8 * F
    if fid is FunctionalId.COR_3_11:
        head = 0.0 if literal else S.growth_majorant(r, M)
        return head + base_b + p * F
    if fid is FunctionalId.COR_3_12:
        lam2 = extras[0] if extras else lambda2()
        G = S.growth_majorant(r, M)
        return G ** 2 + base_b + 16 / 9 * F + lam2 * F ** 2
    ratio = star_ratio(r, M, variant)
    if fid is FunctionalId.COR_3_25:
        return base_a + 16 / 9 * ratio
    if fid is FunctionalId.COR_3_26:
        return base_a + 9 / 8 * ratio
    if fid is FunctionalId.COR_3_13:
        head = 0.0 if literal else S.growth_majorant(r, M)
        return head + base_b + p * ratio
    raise DomainError(f"{fid.value} is not a corollary tag")


def analytic_reference(fid, r, extras=()):
    """Radius equations of the analytic-class (bounded self-map) results.

    For ``ana-ra0`` the closed-form radius itself is returned and ``r`` is
    ignored; every other tag returns the residual of its equation at r.
    """
    fid = FunctionalId.parse(fid)
    if not fid.is_analytic:
        raise DomainError(f"{fid.value} is not an analytic-class tag")
    extras = check_extras(fid, extras)
    if fid is FunctionalId.ANA_r_a0:
        a0 = _check_a0(extras[0])
        return 2.0 / (3.0 + a0 + SQRT5 * (1.0 + a0))
    r = float(r)
    if fid in (FunctionalId.ANA_R_mN, FunctionalId.ANA_Rp_mN):
        m, N = int(extras[0]), int(extras[1])
        k = 2.0 if fid is FunctionalId.ANA_R_mN else 1.0
        return k * (1 + r ** m) * r ** N - (1 - r) * (1 - r ** m)
    if fid in (FunctionalId.ANA_R_N, FunctionalId.ANA_Rp_N):
        N = int(extras[0])
        k = 2.0 if fid is FunctionalId.ANA_R_N else 1.0
        return k * (1 + r) * r ** N - (1 - r) ** 2
    if fid is FunctionalId.ANA_rp_a0:
        a0 = _check_a0(extras[0])
        return (1 - a0 ** 3) * r ** 3 - (1 + 2 * a0) * r ** 2 - 2 * r + 1
    coeffs = QUINTIC if fid is FunctionalId.ANA_LAMBDA_QUINTIC else QUARTIC
    return float(np.polyval(coeffs, r))


def _check_a0(a0):
    a0 = abs(float(a0))
    if not a0 < 1.0:
        raise DomainError(f"|a0|={a0!r} must be below 1")
    return a0


@dataclass(frozen=True)
class Functional:
    """A functional ready for root finding: increasing on its domain, negative near 0."""

    fid: FunctionalId
    func: object = field(repr=False)
    params: ParamSet = None
    extras: tuple = ()
    starred: bool = False

    def __call__(self, r):
        return self.func(r)


def make_functional(fid, p=None, extras=(), variant=None):
    """Bind a tag and its parameters to a one-argument callable.

    ``p`` is needed for the master tags and supplies M for corollaries.
    ``ana-rpa0`` is returned with its sign flipped so that every functional
    increases through its root.
    """
    fid = FunctionalId.parse(fid)
    extras = check_extras(fid, extras)
    if fid in (FunctionalId.MAIN_PHI, FunctionalId.MAIN_PHI_STAR):
        if p is None:
            raise DomainError(f"{fid.value} needs a ParamSet")
        fn = phi_main if fid is FunctionalId.MAIN_PHI else phi_star
        return Functional(fid, lambda r: fn(r, p), p, extras, fid in STARRED)
    if fid.is_corollary:
        if p is None:
            raise DomainError(f"{fid.value} needs M (pass a ParamSet)")
        var = variant or p.variant
        cp = corollary_params(fid, p.M, var, extras)
        return Functional(fid, lambda r: corollary_lhs(fid, r, p.M, extras, var),
                          cp, extras, fid in STARRED)
    if fid is FunctionalId.ANA_rp_a0:
        return Functional(fid, lambda r: -analytic_reference(fid, r, extras), None, extras)
    return Functional(fid, lambda r: analytic_reference(fid, r, extras), None, extras)
