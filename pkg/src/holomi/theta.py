"""
Jacobi theta functions on the imaginary axis, and the free-fermion torus
correlator built from them.

Convention: nome ``q = exp(i pi tau) = exp(-pi * tau_im)`` for ``tau = i tau_im``,
and the argument has period pi::

    theta1(w) = 2 sum (-1)^n q^((n+1/2)^2) sin((2n+1) w)
    theta2(w) = 2 sum        q^((n+1/2)^2) cos((2n+1) w)
    theta3(w) = 1 + 2 sum    q^(n^2)       cos(2n w)
    theta4(w) = 1 + 2 sum (-1)^n q^(n^2)   cos(2n w)

Only imaginary arguments ``w = i y`` are supported.  There cos becomes cosh and
sin becomes ``i sinh``; theta1 is returned with that factor of ``i`` removed, so
every value handed back is real.

The physical helpers (:func:`fermion_correlator_torus`, :func:`upsilon`,
:func:`log_theta_ratio`) take boundary separations.  A separation ``s`` on a torus
with ``tau = i L T`` maps to ``w = i pi T s``, which makes ``s -> s + L`` the
quasi-period of the theta functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CoincidentPoints, DomainError, NonConvergent, SectorUnsupported

DEFAULT_TOL = 1e-12
MAX_TERMS = 1_000_000

_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class ThetaContext:
    sector: int
    tau_im: float
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.sector not in (1, 2, 3, 4):
            raise SectorUnsupported(f"theta sector must be 1..4, got {self.sector!r}")
        if not (self.tau_im > 0 and math.isfinite(self.tau_im)):
            raise DomainError(f"tau_im must be positive and finite, got {self.tau_im!r}")
        if not self.tol > 0:
            raise DomainError("tol must be positive")

    @property
    def nome(self) -> float:
        return math.exp(-math.pi * self.tau_im)


@dataclass(frozen=True)
class SeriesValue:
    """A summed theta series.

    ``value = head + tail`` where ``head`` is the constant 1 of theta3/theta4
    (0 otherwise); keeping the tail separate lets callers take ``log1p(tail)``
    when q is tiny.
    """

    head: float
    tail: float
    terms: int

    @property
    def value(self) -> float:
        return self.head + self.tail


def _log_cosh(z):
    z = abs(z)
    return z + math.log1p(math.exp(-2.0 * z)) - _LOG2


def _log_sinh(z):
    # z > 0
    return z + math.log(-math.expm1(-2.0 * z)) - _LOG2


def _term(sector, n, pit, y, derivative):
    """Signed n-th term of the series and its log-magnitude."""
    if sector in (1, 2):
        k, m = n + 0.5, 2 * n + 1
    else:
        k, m = n, 2 * n
    sign = -1.0 if (sector in (1, 4) and n % 2) else 1.0
    log_mag = _LOG2 - pit * k * k
    if derivative:
        log_mag += math.log(m)
    elif sector == 1:
        if y == 0:
            return 0.0, -math.inf
        log_mag += _log_sinh(m * abs(y))
        if y < 0:
            sign = -sign
    else:
        log_mag += _log_cosh(m * y)
    return sign * math.exp(log_mag), log_mag


def theta_series(ctx: ThetaContext, y: float, *, n_terms: int | None = None,
                 derivative: bool = False) -> SeriesValue:
    """Sum the theta series of ``ctx.sector`` at ``w = i y``.

    With ``n_terms`` the series is cut after exactly that many terms; otherwise
    summation stops once the remaining geometric tail is below
    ``tol * (1 + |partial sum|)``, and only after the terms have started to
    decrease (for large ``|y|`` they first grow).  ``derivative=True`` (sector 1
    only) gives the w-derivative at ``w = 0``.
    """
    sector = ctx.sector
    if derivative and sector != 1:
        raise SectorUnsupported("only the theta1 derivative at zero is implemented")
    pit = math.pi * ctx.tau_im
    head = 1.0 if sector in (3, 4) and not derivative else 0.0
    start = 1 if head else 0
    # log-magnitude peaks near k = |y| / (pi tau_im)
    k_peak = abs(y) / pit
    tail = 0.0
    prev_log = None
    n = start
    count = 0
    while True:
        if n_terms is not None and count >= n_terms:
            break
        if count >= MAX_TERMS:
            raise NonConvergent(
                f"theta_{sector} at tau_im={ctx.tau_im}, y={y} needs more than {MAX_TERMS} terms")
        term, log_mag = _term(sector, n, pit, y, derivative)
        tail += term
        count += 1
        if n_terms is None:
            k = n + 0.5 if sector in (1, 2) else n
            if log_mag == -math.inf:
                break
            if k > k_peak + 1 and prev_log is not None and log_mag < prev_log:
                ratio = math.exp(log_mag - prev_log)
                bound = abs(term) * ratio / (1.0 - ratio)
                if bound < ctx.tol * (1.0 + abs(head + tail)):
                    break
            prev_log = log_mag
        n += 1
    return SeriesValue(head, tail, count)


def _imag_part(omega) -> float:
    omega = complex(omega)
    if omega.real != 0:
        raise DomainError("theta is only evaluated on the imaginary axis (omega = i*y)")
    return omega.imag


def theta(ctx: ThetaContext, omega) -> float:
    """theta_nu(omega | tau) for ``omega = i*y``; theta1 comes back divided by i."""
    return theta_series(ctx, _imag_part(omega)).value


def theta1_prime_at_zero(ctx: ThetaContext) -> float:
    """w-derivative of theta1 at w = 0: ``2 sum (-1)^n (2n+1) q^((n+1/2)^2)``."""
    return theta_series(ThetaContext(1, ctx.tau_im, ctx.tol), 0.0, derivative=True).value


def log_theta(ctx: ThetaContext, y: float) -> float:
    """``log theta_nu(i y | tau)`` for sectors 3 and 4, accurate when q is tiny."""
    if ctx.sector not in (3, 4):
        raise SectorUnsupported("log_theta supports sectors 3 and 4")
    s = theta_series(ctx, y)
    if s.tail <= -1.0:
        raise DomainError(
            f"theta_{ctx.sector}(i*{y}) is not positive at tau_im={ctx.tau_im}; "
            "the separation is past the zero of theta_4")
    return math.log1p(s.tail)


def _check_pair(u, v, T, L):
    if not (T > 0 and L > 0):
        raise DomainError("temperature and system size must be positive")
    s = abs(u - v)
    if s == 0:
        raise CoincidentPoints("correlator endpoints coincide")
    if s >= L:
        raise DomainError(f"separation {s} must be smaller than the system size {L}")
    return s


def upsilon(u: float, v: float, T: float, L: float, tol: float = DEFAULT_TOL) -> float:
    """``log[d_z theta1(0) / |theta1(z)|]`` with ``z = i |u - v| T`` (period-1 argument).

    Behaves as ``log(1 / (|u - v| T))`` when ``L >> |u - v|``.
    """
    s = _check_pair(u, v, T, L)
    ctx = ThetaContext(1, L * T, tol)
    y = math.pi * T * s
    denom = theta_series(ctx, y).value
    return math.log(math.pi * theta1_prime_at_zero(ctx)) - math.log(abs(denom))


def fermion_correlator_torus(u: float, v: float, T: float, L: float, sector: int,
                             tol: float = DEFAULT_TOL) -> float:
    """Free-fermion two-point function on the torus ``tau = i L T``.

    ``(T/4) * [theta_nu(z)/theta_nu(0)] * [d_z theta1(0)/theta1(z)]`` with
    ``z = i |u - v| T``; the phase of theta1 at imaginary argument is dropped.
    The ``T/4`` prefactor normalizes the result to ``pi T / (4 sinh(pi T |u-v|))``
    at large ``L T``, i.e. ``1 / (4 |u - v|)`` at short distance.
    """
    if sector not in (3, 4):
        raise SectorUnsupported("the torus correlator is defined for sectors 3 and 4")
    s = _check_pair(u, v, T, L)
    ctx = ThetaContext(sector, L * T, tol)
    y = math.pi * T * s
    ratio = theta_series(ctx, y).value / theta_series(ctx, 0.0).value
    return 0.25 * T * ratio * math.exp(upsilon(u, v, T, L, tol))


def log_theta_ratio(separations_num, separations_den, T: float, L: float, sector: int,
                    tol: float = DEFAULT_TOL) -> float:
    """``log[prod theta_nu(i pi T s_num) / prod theta_nu(i pi T s_den)]``."""
    if sector not in (3, 4):
        raise SectorUnsupported("finite-size corrections are defined for sectors 3 and 4")
    if not (T > 0 and L > 0):
        raise DomainError("temperature and system size must be positive")
    ctx = ThetaContext(sector, L * T, tol)
    num = sum(log_theta(ctx, math.pi * T * s) for s in separations_num)
    den = sum(log_theta(ctx, math.pi * T * s) for s in separations_den)
    return num - den
