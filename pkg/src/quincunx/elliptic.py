"""Jacobi elliptic functions and the complete elliptic integral via AGM.

Everything the square rectification needs: the real quarter period K(m),
real-argument sn/cn/dn by the descending Landen (Gauss) transformation, and
cn of a complex argument u + iv assembled from the real functions at
parameters m and 1 - m.

All evaluators accept scalars or numpy arrays for the argument; the
parameter m is always a scalar.
"""

import math
from typing import NamedTuple

import numpy as np

EPS = float(np.finfo(float).eps)

# Denominator values below this are treated as a pole of complex cn.
POLE_THRESHOLD = 1e-14

_MAX_AGM_ITER = 40


class EllipticDomainError(ValueError):
    """Parameter outside the supported range."""


class EllipticPoleError(ArithmeticError):
    """cn(u + iv) evaluated at (or numerically indistinguishable from) a pole.

    Carries the offending argument so callers can decide how to map the
    point at infinity.
    """

    def __init__(self, u, v, m):
        super().__init__(f"cn pole at u={u!r}, v={v!r}, m={m!r}")
        self.u = u
        self.v = v
        self.m = m


class EllipticTriple(NamedTuple):
    sn: float
    cn: float
    dn: float


def quarter_period(m: float) -> float:
    """Complete elliptic integral of the first kind K(m), m in [0, 1).

    Computed as pi / (2 * agm(1, sqrt(1 - m))).
    """
    if not 0.0 <= m < 1.0:
        raise EllipticDomainError(f"quarter_period requires 0 <= m < 1, got {m!r}")
    a = 1.0
    b = math.sqrt(1.0 - m)
    for _ in range(_MAX_AGM_ITER):
        if abs(a - b) <= EPS * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def _agm_ladder(m, tol):
    """Coefficients a_i, c_i of the descending Landen recursion for m."""
    a = [1.0]
    c = [math.sqrt(m)]
    b = math.sqrt(1.0 - m)
    while abs(c[-1]) > tol * abs(a[-1]):
        if len(a) > _MAX_AGM_ITER:
            raise EllipticDomainError(f"AGM recursion did not converge for m={m!r}")
        an = a[-1]
        c.append(0.5 * (an - b))
        a.append(0.5 * (an + b))
        b = math.sqrt(an * b)
    return a, c


def _validate_m_tol(m, tol):
    if not 0.0 <= m < 1.0:
        raise EllipticDomainError(f"parameter m must satisfy 0 <= m < 1, got {m!r}")
    if not tol > 0.0:
        raise EllipticDomainError(f"tolerance must be positive, got {tol!r}")


def _ellipj_arrays(u, m, tol):
    """sn, cn, dn of array u for scalar m in [0, 1)."""
    u = np.asarray(u, dtype=float)
    if m == 0.0:
        return np.sin(u), np.cos(u), np.ones_like(u)
    k = quarter_period(m)
    # sn and cn have real period 4K; reduce before the phase recursion so
    # large arguments do not inflate the backward-recurrence phases.
    u = u - (4.0 * k) * np.round(u / (4.0 * k))
    a, c = _agm_ladder(m, tol)
    n = len(a) - 1
    phi = math.ldexp(a[n], n) * u
    for i in range(n, 0, -1):
        ratio = c[i] / a[i]
        phi = 0.5 * (phi + np.arcsin(np.clip(ratio * np.sin(phi), -1.0, 1.0)))
    sn = np.sin(phi)
    cn = np.cos(phi)
    # dn > sqrt(1 - m) > 0 for real u, so the positive root is always right
    # and the dn identity holds to machine precision by construction.
    dn = np.sqrt(1.0 - m * sn * sn)
    return sn, cn, dn


def ellipj_real(u, m: float, tol: float = EPS) -> EllipticTriple:
    """Jacobi sn, cn, dn of real u at parameter m in [0, 1).

    The recursion stops once the Landen ladder ratio falls below tol.
    Scalars in, floats out; arrays in, arrays out.
    """
    _validate_m_tol(m, tol)
    sn, cn, dn = _ellipj_arrays(u, m, tol)
    if np.isscalar(u) or np.ndim(u) == 0:
        return EllipticTriple(float(sn), float(cn), float(dn))
    return EllipticTriple(sn, cn, dn)


def cn_complex_parts(u, v, m, tol=EPS):
    """Vectorized cn(u + iv, m): returns (re, im, pole_mask).

    Uses the addition identity
        cn(u + iv) = (c*c1 - i*s*d*s1*d1) / (c1^2 + m*s^2*s1^2)
    with (s, c, d) = ellipj(u, m) and (s1, c1, d1) = ellipj(v, 1 - m).
    Points where the denominator falls below POLE_THRESHOLD are flagged in
    pole_mask and carry unusable values.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    s, c, d = _ellipj_arrays(u, m, tol)
    s1, c1, d1 = _ellipj_arrays(v, 1.0 - m, tol)
    delta = c1 * c1 + m * (s * s) * (s1 * s1)
    pole = delta < POLE_THRESHOLD
    safe = np.where(pole, 1.0, delta)
    re = (c * c1) / safe
    im = -(s * d * s1 * d1) / safe
    # On the real axis the reduction is exact: fall back to the real cn.
    real_axis = np.abs(v) < tol
    re = np.where(real_axis, c, re)
    im = np.where(real_axis, 0.0, im)
    pole = pole & ~real_axis
    return re, im, pole


def cn_complex(u: float, v: float, m: float, tol: float = EPS) -> complex:
    """cn(u + iv) at parameter m in (0, 1).

    Raises EllipticPoleError when the evaluation lands on a pole of cn;
    callers decide how the point at infinity should be represented.
    """
    if not 0.0 < m < 1.0:
        raise EllipticDomainError(f"cn_complex requires 0 < m < 1, got {m!r}")
    if not tol > 0.0:
        raise EllipticDomainError(f"tolerance must be positive, got {tol!r}")
    re, im, pole = cn_complex_parts(u, v, m, tol)
    if bool(pole):
        raise EllipticPoleError(u, v, m)
    return complex(re, im)
