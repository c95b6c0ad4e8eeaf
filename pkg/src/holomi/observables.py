"""
Holographic observables: entanglement entropy, mutual information between two
equal intervals, finite-size (torus) mutual information, transition points and
two-point correlators.

All functions are pure.  Lengths and entropies carry the UV cutoff of the
geometry they were computed in; mutual information and normalized correlators
do not depend on it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import DomainError, NoBracket, NoHorizon
from .geometry import (
    BulkGeometry,
    GeometryKind,
    central_charge,
    geodesic_length,
    sector_betas,
    thermal_scales,
)
from .phase import Phase
from .theta import DEFAULT_TOL, log_theta_ratio

_SIZE_RTOL = 1e-12


@dataclass(frozen=True)
class IntervalPair:
    """Two disjoint boundary intervals ``A = [u1, v1]`` and ``B = [u2, v2]`` of equal size."""

    u1: float
    v1: float
    u2: float
    v2: float

    def __post_init__(self):
        if not (self.u1 < self.v1 < self.u2 < self.v2):
            raise DomainError("intervals must satisfy u1 < v1 < u2 < v2")
        la, lb = self.v1 - self.u1, self.v2 - self.u2
        if abs(la - lb) > _SIZE_RTOL * max(la, lb):
            raise DomainError(f"intervals must have equal size, got {la} and {lb}")

    @classmethod
    def from_size(cls, l: float, d: float, start: float = 0.0) -> "IntervalPair":
        return cls(start, start + l, start + l + d, start + 2 * l + d)

    @classmethod
    def from_cross_ratio(cls, x: float, l: float = 1.0, start: float = 0.0) -> "IntervalPair":
        if not 0 < x < 1:
            raise DomainError("cross ratio must lie in (0, 1)")
        return cls.from_size(l, l * (1.0 / math.sqrt(x) - 1.0), start)

    @property
    def size_l(self) -> float:
        return self.v1 - self.u1

    @property
    def separation_d(self) -> float:
        return self.u2 - self.v1

    @property
    def outer(self) -> float:
        """``|u1 - v2|``, equal to ``2 l + d``."""
        return self.v2 - self.u1

    @property
    def cross_ratio_x(self) -> float:
        return cross_ratio(self)

    def shifted(self, offset: float) -> "IntervalPair":
        return IntervalPair(self.u1 + offset, self.v1 + offset, self.u2 + offset, self.v2 + offset)

    def swapped(self) -> "IntervalPair":
        """The same pair with A and B exchanged, by reflecting the boundary."""
        return IntervalPair(-self.v2, -self.u2, -self.v1, -self.u1)


def cross_ratio(pair: IntervalPair) -> float:
    """Conformal four-point ratio ``l^2 / (l + d)^2``."""
    l, d = pair.size_l, pair.separation_d
    x = l * l / ((l + d) ** 2)
    four_point = ((pair.v1 - pair.u1) * (pair.v2 - pair.u2)
                  / ((pair.u2 - pair.u1) * (pair.v2 - pair.v1)))
    assert math.isclose(x, four_point, rel_tol=1e-9), (x, four_point)
    return x


@dataclass(frozen=True)
class MiResult:
    value: float
    phase: Phase
    length_connected: float
    length_disconnected: float
    unclamped: float


def interval_entropy(geometry: BulkGeometry, a: float, b: float) -> float:
    """Entanglement entropy of ``[a, b]``: geodesic length over ``4 G``."""
    if not a < b:
        raise DomainError("interval needs a < b")
    return geodesic_length(geometry, a, b) / (4.0 * geometry.newton_constant)


def mutual_information(geometry: BulkGeometry, pair: IntervalPair) -> MiResult:
    """Mutual information from the competition of the two minimal-curve saddles.

    The disconnected saddle pairs each interval with itself, the connected one
    pairs the outer and the inner endpoints.  The mutual information is
    ``(L_dis - min(L_con, L_dis)) / 4G``.
    """
    L = lambda a, b: geodesic_length(geometry, a, b)
    l_con = L(pair.u1, pair.v2) + L(pair.v1, pair.u2)
    l_dis = L(pair.u1, pair.v1) + L(pair.u2, pair.v2)
    unclamped = (l_dis - l_con) / (4.0 * geometry.newton_constant)
    if l_con < l_dis:
        return MiResult(unclamped, Phase.CONNECTED, l_con, l_dis, unclamped)
    return MiResult(0.0, Phase.DISCONNECTED, l_con, l_dis, unclamped)


def mi_pure_ads(x: float, c: float) -> float:
    """Piecewise vacuum result: 0 below ``x = 1/2``, ``(c/3) log(x/(1-x))`` above."""
    if not 0 < x < 1:
        raise DomainError(f"cross ratio must lie in (0, 1), got {x!r}")
    if x < 0.5:
        return 0.0
    return (c / 3.0) * math.log(x / (1.0 - x))


def _vacuum_term(pair: IntervalPair) -> float:
    # log(x/(1-x)) = log(l^2 / (d (2l + d))), without forming 1 - x
    l = pair.size_l
    return 2.0 * math.log(l) - math.log(pair.separation_d) - math.log(pair.outer)


def _check_torus(pair, L):
    if not L > 0:
        raise DomainError("system size must be positive")
    if pair.outer >= L:
        raise DomainError(
            f"the four endpoints span {pair.outer}, which does not fit in a system of size {L}")


def finite_size_correction(pair: IntervalPair, T: float, L: float, sector: int,
                           tol: float = DEFAULT_TOL) -> float:
    """``f_nu``: log of the theta_nu ratio (outer * inner) / (A * B)."""
    _check_torus(pair, L)
    return log_theta_ratio((pair.outer, pair.separation_d), (pair.size_l, pair.size_l),
                           T, L, sector, tol)


def mi_torus(pair: IntervalPair, T: float, L: float, sector: int, c: float,
             tol: float = DEFAULT_TOL) -> float:
    """Finite-size mutual information on a torus ``tau = i L T``; not clamped at 0."""
    return (c / 3.0) * (_vacuum_term(pair) + finite_size_correction(pair, T, L, sector, tol))


def mi_torus_rotating(pair: IntervalPair, T_L: float, L: float, sector: int, c: float,
                      tol: float = DEFAULT_TOL) -> float:
    """Near-extremal rotating version: the right movers add a second vacuum term."""
    return (c / 3.0) * (2.0 * _vacuum_term(pair)
                        + finite_size_correction(pair, T_L, L, sector, tol))


class TorusModel(enum.Enum):
    NON_ROTATING = "non-rotating"
    ROTATING = "rotating"


def _bisect(f: Callable[[float], float], lo: float, hi: float, f_lo: float | None = None,
            rtol: float = 4e-16) -> float:
    """Root of a function with ``f(lo) > 0 >= f(hi)``, bisected until the bracket is ~1 ulp."""
    if f_lo is None:
        f_lo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rtol * abs(mid) or mid in (lo, hi):
            break
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _first_sign_change(f, grid):
    """First adjacent grid pair with ``f > 0`` then ``f <= 0``; stops at the domain edge."""
    prev_d, prev_v = None, None
    for d in grid:
        try:
            v = f(d)
        except DomainError:
            break
        if prev_v is not None and prev_v > 0 >= v:
            return prev_d, d, prev_v
        prev_d, prev_v = d, v
    return None


def _log_grid(lo, hi, n):
    return [lo * (hi / lo) ** (i / (n - 1)) for i in range(n)]


def mi_zero_separation(geometry: BulkGeometry, l: float) -> float:
    """Separation ``d`` at which the connected-saddle mutual information of two
    intervals of size ``l`` crosses zero."""
    f = lambda d: mutual_information(geometry, IntervalPair.from_size(l, d)).unclamped
    found = _first_sign_change(f, _log_grid(1e-4 * l, 1e2 * l, 121))
    if found is None:
        raise NoBracket(f"mutual information does not change sign for d in [1e-4 l, 1e2 l]")
    lo, hi, f_lo = found
    return _bisect(f, lo, hi, f_lo)


def transition_point(model: TorusModel, tau_abs: float, sector: int, c: float = 1.0,
                     l_over_L: float | None = None, tol: float = DEFAULT_TOL) -> float:
    """Cross ratio x0 at which the finite-size mutual information changes sign.

    The block size is fixed and the separation ``d`` is varied at fixed ``L``
    and ``T`` with ``L T = tau_abs``.  With ``l_over_L=None`` the horizon is tied
    to the block size, ``T l = 1/(2 pi)``, which makes ``l/L = 1/(2 pi tau_abs)``.
    For the rotating model ``T`` is the left-moving temperature.

    Raises :class:`NoBracket` when the mutual information keeps one sign for
    every admissible ``d`` in ``(1e-4 l, 1e2 l)``; admissible also means the
    four endpoints fit inside the system.
    """
    if not tau_abs > 0:
        raise DomainError("tau_abs must be positive")
    l = 1.0
    if l_over_L is None:
        T = 1.0 / (2.0 * math.pi * l)
        L = tau_abs / T
    else:
        if not 0 < l_over_L < 0.5:
            raise DomainError("l_over_L must lie in (0, 1/2) for two intervals to fit")
        L = l / l_over_L
        T = tau_abs / L
    mi = mi_torus if model is TorusModel.NON_ROTATING else mi_torus_rotating
    f = lambda d: mi(IntervalPair.from_size(l, d), T, L, sector, c, tol)
    d_max = min(1e2 * l, (L - 2 * l) * (1 - 1e-9))
    if d_max <= 1e-4 * l:
        raise NoBracket(f"two intervals of size l = {l_over_L or l / L:g} L barely fit")
    found = _first_sign_change(f, _log_grid(1e-4 * l, d_max, 161))
    if found is None:
        raise NoBracket(
            f"{model.value} mutual information keeps its sign at tau_abs={tau_abs}, "
            f"sector {sector}")
    lo, hi, f_lo = found
    d0 = _bisect(f, lo, hi, f_lo)
    return l * l / (l + d0) ** 2


def log_two_point_correlator(geometry: BulkGeometry, delta: float, xA: float,
                             xB: float) -> float:
    """Log of the normalized holographic two-point function.

    ``exp(-(delta/l) * L(xA, xB))`` with the cutoff prefactor ``eps**(2 delta)`` of
    every chiral sector removed, so that the non-rotating result is
    ``[pi T / sinh(pi T |dx|)]**(2 delta)``, with short-distance limit ``|dx|**(-2 delta)``.
    """
    if not delta > 0:
        raise DomainError("scaling dimension must be positive")
    length = geodesic_length(geometry, xA, xB)
    n_sectors = len(sector_betas(geometry))
    return (-(delta / geometry.ads_radius) * length
            - 2.0 * delta * n_sectors * math.log(geometry.uv_cutoff))


def two_point_correlator(geometry: BulkGeometry, delta: float, xA: float, xB: float) -> float:
    return math.exp(log_two_point_correlator(geometry, delta, xA, xB))


def crossover_separation(geometry: BulkGeometry) -> float:
    """Separation ``z_plus`` where ``2 pi T |xA - xB| = 1``."""
    if geometry.kind is GeometryKind.PURE_ADS:
        raise NoHorizon("pure AdS has no thermal scale")
    return thermal_scales(geometry).z_plus


def crossover_mu(geometry: BulkGeometry, l: float) -> float:
    """``mu = z_plus / l``; equal to 1 when the horizon is tied to the block size."""
    return crossover_separation(geometry) / l


def locate_crossover(separations: Sequence[float], log_corr: Sequence[float]) -> float:
    """Crossover separation read off a correlator scan.

    The local decay rate ``-d log C / d dx`` is compared to its value at the
    largest separation (the asymptotic exponential rate ``kappa``); the crossover
    is where the rate first drops to ``2 kappa``, i.e. where the algebraic part
    of the decay equals the exponential part.  The scan must reach deep into
    the exponential regime.  Interpolation is linear in ``log dx``.
    """
    dx = np.asarray(separations, dtype=float)
    rate = -np.gradient(np.asarray(log_corr, dtype=float), dx)
    kappa = rate[-1]
    if not kappa > 0:
        raise DomainError("no exponential decay at the end of the scan")
    excess = rate - 2.0 * kappa
    idx = np.nonzero(excess <= 0)[0]
    if idx.size == 0 or idx[0] == 0:
        raise DomainError("the scan does not bracket the crossover")
    i = int(idx[0])
    t = excess[i - 1] / (excess[i - 1] - excess[i])
    log_dx = math.log(dx[i - 1]) + t * (math.log(dx[i]) - math.log(dx[i - 1]))
    return math.exp(log_dx)


class DecayFit(NamedTuple):
    power: float
    rate: float
    residual: float


def fit_decay(separations: Sequence[float], log_corr: Sequence[float]) -> DecayFit:
    """Least-squares fit ``log C = a + power * log(dx) - rate * dx``.

    Fitting the algebraic and exponential parts together keeps the rate
    unbiased when an algebraic prefactor survives at large separation, as it
    does near extremality.
    """
    dx = np.asarray(separations, dtype=float)
    y = np.asarray(log_corr, dtype=float)
    if dx.size < 3:
        raise DomainError("need at least three points")
    design = np.column_stack([np.ones_like(dx), np.log(dx), -dx])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = float(np.max(np.abs(design @ coef - y)))
    return DecayFit(float(coef[1]), float(coef[2]), resid)


def fit_local_power(separations: Sequence[float], log_corr: Sequence[float]) -> float:
    """Slope of ``log C`` against ``log dx``."""
    slope, _ = np.polyfit(np.log(np.asarray(separations, dtype=float)),
                          np.asarray(log_corr, dtype=float), 1)
    return float(slope)


class WolfReport(NamedTuple):
    lhs: float
    rhs: float
    satisfied: bool


def wolf_bound_report(mi_value: float, connected_correlator: float, opA_norm: float,
                      opB_norm: float) -> WolfReport:
    """Compare mutual information with ``C^2 / (2 |O_A|^2 |O_B|^2)``.

    Diagnostic only: the holographic correlator normalization is a convention,
    so a violation says more about the chosen operator norms than about the
    state.  One-point functions are taken to vanish.
    """
    if not (opA_norm > 0 and opB_norm > 0):
        raise DomainError("operator norms must be positive")
    if mi_value < 0:
        raise DomainError("mutual information must be non-negative")
    rhs = connected_correlator**2 / (2.0 * opA_norm**2 * opB_norm**2)
    return WolfReport(mi_value, rhs, mi_value >= rhs)


__all__ = [
    "DecayFit", "IntervalPair", "MiResult", "Phase", "TorusModel", "WolfReport",
    "central_charge", "cross_ratio", "crossover_mu", "crossover_separation",
    "finite_size_correction", "fit_decay", "fit_local_power", "interval_entropy", "locate_crossover",
    "log_two_point_correlator", "mi_pure_ads", "mi_torus", "mi_torus_rotating",
    "mi_zero_separation", "mutual_information", "transition_point",
    "two_point_correlator", "wolf_bound_report",
]
