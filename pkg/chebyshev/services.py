"""
Chebyshev polynomials T_ν and U_ν at real arguments x ≥ 1 and real order.

With x = cosh θ (r = e^θ ≥ 1):

    T_ν(x) = cosh(νθ)           U_ν(x) = sinh((ν+1)θ) / sinh θ

Integer orders go through square-and-multiply powers of r; other orders
through exp(νθ). Quotients that appear in the cycle formulas are taken in
ratio form so they stay finite long after r^ν itself overflows.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from django.conf import settings

from core.exceptions import BranchError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectralParameter:
    alpha: float
    r: float
    theta: float


def theta_from_alpha(alpha):
    """θ = arccosh(1 + α), taken from α directly so small shifts keep their digits."""
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha < 0):
        raise BranchError(f"Shift α must be non-negative, got {alpha.min()}.")
    return np.log1p(alpha + np.sqrt(alpha * (2.0 + alpha)))


def param_from_alpha(alpha):
    alpha = float(alpha)
    theta = float(theta_from_alpha(alpha))
    return SpectralParameter(alpha=alpha, r=math.exp(theta), theta=theta)


def _theta_from_x(x):
    x = float(x)
    if not x >= 1.0:
        raise DomainError(f"Chebyshev argument must be at least 1, got {x}.")
    return float(theta_from_alpha(x - 1.0))


def _power(base, exponent):
    """base**exponent for a non-negative integer exponent by repeated squaring."""
    result = 1.0
    while exponent:
        if exponent & 1:
            result *= base
        exponent >>= 1
        if exponent:
            base *= base
    return result


def _is_integer(order):
    return float(order).is_integer()


def _cosh_power(k, theta):
    r_k = _power(math.exp(theta), abs(int(k)))
    return 0.5 * (r_k + 1.0 / r_k)


def _sinh_power(k, theta):
    k = int(k)
    if abs(k) * theta < 0.5:
        return math.sinh(k * theta)
    r_k = _power(math.exp(theta), abs(k))
    return math.copysign(0.5 * (r_k - 1.0 / r_k), k)


def _sinh_exp(k, theta):
    try:
        return math.sinh(k * theta)
    except OverflowError:
        return math.copysign(math.inf, k)


def _cosh_exp(k, theta):
    try:
        return math.cosh(k * theta)
    except OverflowError:
        return math.inf


def _use_power(order, method):
    if method == "power" and not _is_integer(order):
        raise DomainError(f"Square-and-multiply needs an integer order, got {order}.")
    return method == "power" or (method == "auto" and _is_integer(order))


def cheb_T(order, x, method="auto"):
    theta = _theta_from_x(x)
    if theta < settings.GREENS_CHEB_THETA_EPS:
        return 1.0
    if _use_power(order, method):
        return _cosh_power(order, theta)
    return _cosh_exp(order, theta)


def cheb_U(order, x, method="auto"):
    theta = _theta_from_x(x)
    if theta < settings.GREENS_CHEB_THETA_EPS:
        return float(order) + 1.0
    k = float(order) + 1.0
    if _use_power(order, method):
        return _sinh_power(k, theta) / math.sinh(theta)
    return _sinh_exp(k, theta) / math.sinh(theta)


def ratio_at_theta(nu, mu, theta):
    """
    T_ν / U_μ at x = cosh θ, vectorized. Uses
        cosh(Aθ)·sinh θ / sinh(Bθ)
            = e^{(A+1−B)θ} (1 + e^{−2Aθ})(1 − e^{−2θ}) / (2 (1 − e^{−2Bθ}))
    with A = |ν| and B = μ + 1 > 0, so nothing is exponentiated before the
    exponents are combined. Falls back to the θ → 0 limit 1/B.
    """
    nu, mu, theta = np.broadcast_arrays(
        np.asarray(nu, dtype=float), np.asarray(mu, dtype=float), np.asarray(theta, dtype=float)
    )
    a = np.abs(nu)
    b = mu + 1.0
    if np.any(b <= 0):
        raise DomainError("Ratio form needs U order above -1.")

    small = theta < settings.GREENS_CHEB_THETA_EPS
    safe = np.where(small, 1.0, theta)
    with np.errstate(over="ignore"):
        ratio = (
            np.exp((a + 1.0 - b) * safe)
            * (1.0 + np.exp(-2.0 * a * safe))
            * -np.expm1(-2.0 * safe)
            / (2.0 * -np.expm1(-2.0 * b * safe))
        )
    ratio = np.where(small, 1.0 / b, ratio)
    return ratio if ratio.ndim else float(ratio)


def cheb_ratio(nu, mu, x):
    """T_ν(x) / U_μ(x) in overflow-safe form."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 1.0):
        raise DomainError(f"Chebyshev argument must be at least 1, got {x.min()}.")
    return ratio_at_theta(nu, mu, theta_from_alpha(x - 1.0))
