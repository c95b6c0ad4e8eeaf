"""
Bulk backgrounds for AdS3/CFT2 entanglement computations.

Three backgrounds are supported: pure AdS3, the non-rotating BTZ black hole and
the rotating BTZ black hole.  Geodesic lengths are evaluated in closed form from
boundary separations; there is no metric integration anywhere in the package.

Conventions
-----------
- Boundary positions, the UV cutoff and horizon depths are measured in the same
  length units as the AdS radius (default ``ads_radius = 1``).
- Horizon depths use the Poincare-like coordinate ``z = ads_radius**2 / r``, so
  that ``beta = 2*pi*z_plus`` for every ``ads_radius``.
- An infinite inverse temperature is represented by ``math.inf``.  All
  formulas take the analytic ``beta -> inf`` limit instead of evaluating it.
- The rotating length is the sum of two non-rotating lengths, one per chiral
  sector, each with its own inverse temperature.  With ``r_minus = 0`` it is
  therefore twice the non-rotating length, and the entropy splits as
  ``S = S_L + S_R`` with each sector weighted by ``c/3``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import CoincidentPoints, DomainError, NonPositiveMass, OverExtremal

DEFAULT_UV_CUTOFF = 1e-3
DEFAULT_NEWTON_CONSTANT = 0.5  # c = 3 at unit AdS radius


class GeometryKind(enum.Enum):
    PURE_ADS = "ads"
    NON_ROTATING_BTZ = "btz"
    ROTATING_BTZ = "btz-rot"


@dataclass(frozen=True)
class BulkGeometry:
    """An AdS3 background together with its boundary regulator.

    Use the :meth:`pure_ads`, :meth:`btz` and :meth:`rotating_btz`
    constructors rather than filling in ``kind`` by hand; they also accept a
    ``central_charge`` that fixes the Newton constant via Brown-Henneaux.
    """

    kind: GeometryKind
    ads_radius: float = 1.0
    r_plus: float = 0.0
    r_minus: float = 0.0
    uv_cutoff: float = DEFAULT_UV_CUTOFF
    newton_constant: float = DEFAULT_NEWTON_CONSTANT

    def __post_init__(self):
        for name in ("ads_radius", "uv_cutoff", "newton_constant"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")
        if not (self.r_plus >= 0 and self.r_minus >= 0):
            raise DomainError("horizon radii must be non-negative")
        if self.r_minus > self.r_plus:
            raise OverExtremal(f"r_minus={self.r_minus} exceeds r_plus={self.r_plus}")
        if self.kind is GeometryKind.PURE_ADS:
            if self.r_plus != 0 or self.r_minus != 0:
                raise DomainError("pure AdS has no horizon: r_plus = r_minus = 0")
        elif self.r_plus == 0:
            raise DomainError(f"{self.kind.value} needs r_plus > 0")
        if self.kind is GeometryKind.NON_ROTATING_BTZ and self.r_minus != 0:
            raise DomainError("non-rotating BTZ needs r_minus = 0")

    @classmethod
    def pure_ads(cls, *, ads_radius=1.0, uv_cutoff=DEFAULT_UV_CUTOFF,
                 newton_constant=None, central_charge=None) -> "BulkGeometry":
        G = _resolve_newton(ads_radius, newton_constant, central_charge)
        return cls(GeometryKind.PURE_ADS, ads_radius, 0.0, 0.0, uv_cutoff, G)

    @classmethod
    def btz(cls, r_plus, *, ads_radius=1.0, uv_cutoff=DEFAULT_UV_CUTOFF,
            newton_constant=None, central_charge=None) -> "BulkGeometry":
        G = _resolve_newton(ads_radius, newton_constant, central_charge)
        return cls(GeometryKind.NON_ROTATING_BTZ, ads_radius, float(r_plus), 0.0, uv_cutoff, G)

    @classmethod
    def btz_from_beta(cls, beta, **kwargs) -> "BulkGeometry":
        """Non-rotating BTZ with inverse temperature ``beta``."""
        ads_radius = kwargs.get("ads_radius", 1.0)
        return cls.btz(2 * math.pi * ads_radius**2 / beta, **kwargs)

    @classmethod
    def rotating_btz(cls, r_plus, r_minus, *, ads_radius=1.0, uv_cutoff=DEFAULT_UV_CUTOFF,
                     newton_constant=None, central_charge=None) -> "BulkGeometry":
        G = _resolve_newton(ads_radius, newton_constant, central_charge)
        return cls(GeometryKind.ROTATING_BTZ, ads_radius, float(r_plus), float(r_minus),
                   uv_cutoff, G)

    def with_cutoff(self, uv_cutoff: float) -> "BulkGeometry":
        return BulkGeometry(self.kind, self.ads_radius, self.r_plus, self.r_minus,
                            uv_cutoff, self.newton_constant)


def _resolve_newton(ads_radius, newton_constant, central_charge):
    if central_charge is not None:
        if newton_constant is not None:
            raise DomainError("give either newton_constant or central_charge, not both")
        if not central_charge > 0:
            raise DomainError("central_charge must be positive")
        return 3.0 * ads_radius / (2.0 * central_charge)
    return DEFAULT_NEWTON_CONSTANT if newton_constant is None else float(newton_constant)


@dataclass(frozen=True)
class ThermalScales:
    beta: float
    beta_left: float
    beta_right: float
    z_plus: float
    z_left: float
    z_right: float


def btz_from_mass_spin(M: float, J: float, ads_radius: float = 1.0) -> tuple[float, float]:
    """Horizon radii ``(r_plus, r_minus)`` of a BTZ black hole of mass M and spin J.

    The sign of J only fixes the rotation sense and is dropped.  ``r_minus`` is
    obtained from ``r_plus * r_minus = |J| * ads_radius / 2`` to avoid the
    cancellation in ``1 - sqrt(1 - (J/M l)**2)`` close to extremality.
    """
    if not M > 0:
        raise NonPositiveMass(f"mass must be positive, got {M!r}")
    ratio = abs(J) / (M * ads_radius)
    if ratio > 1:
        raise OverExtremal(f"|J| = {abs(J)} exceeds M*l = {M * ads_radius}")
    r_plus = ads_radius * math.sqrt(0.5 * M * (1 + math.sqrt(1 - ratio * ratio)))
    r_minus = abs(J) * ads_radius / (2 * r_plus)
    return r_plus, min(r_minus, r_plus)


def mass_spin(geometry: BulkGeometry) -> tuple[float, float]:
    """``(M, J)`` reconstructed from the horizon radii."""
    l = geometry.ads_radius
    rp, rm = geometry.r_plus, geometry.r_minus
    return (rp * rp + rm * rm) / (l * l), 2 * rp * rm / l


def _inverse_temperature(ads_radius, r):
    return math.inf if r == 0 else 2 * math.pi * ads_radius**2 / r


def _depth(ads_radius, r):
    return math.inf if r == 0 else ads_radius**2 / r


def thermal_scales(geometry: BulkGeometry) -> ThermalScales:
    l, rp, rm = geometry.ads_radius, geometry.r_plus, geometry.r_minus
    return ThermalScales(
        beta=_inverse_temperature(l, rp),
        beta_left=_inverse_temperature(l, rp + rm),
        beta_right=_inverse_temperature(l, rp - rm),
        z_plus=_depth(l, rp),
        z_left=_depth(l, rp + rm),
        z_right=_depth(l, rp - rm),
    )


def central_charge(geometry: BulkGeometry) -> float:
    """Brown-Henneaux central charge ``3 l / (2 G)``."""
    return 3.0 * geometry.ads_radius / (2.0 * geometry.newton_constant)


def virasoro_charges(geometry: BulkGeometry) -> tuple[float, float]:
    """``(L0 - c/24, L0bar - c/24)`` of the dual CFT; zero for pure AdS."""
    if geometry.kind is GeometryKind.PURE_ADS:
        return 0.0, 0.0
    M, J = mass_spin(geometry)
    Ml = M * geometry.ads_radius
    G16 = 16.0 * geometry.newton_constant
    return (Ml + J) / G16, (Ml - J) / G16


def sector_betas(geometry: BulkGeometry) -> tuple[float, ...]:
    """Inverse temperatures of the chiral sectors that enter a geodesic length.

    Pure AdS and non-rotating BTZ contribute a single sector; rotating BTZ
    contributes ``(beta_left, beta_right)``.
    """
    scales = thermal_scales(geometry)
    if geometry.kind is GeometryKind.ROTATING_BTZ:
        return scales.beta_left, scales.beta_right
    return (scales.beta,)


def log_sinhc(y: float) -> float:
    """``log(sinh(y)/y)`` for ``y >= 0`` without overflow."""
    if y < 1.0:
        # sinh(y)/y is in [1, 1.18) here, so the log is well conditioned
        return math.log(math.sinh(y) / y) if y > 0 else 0.0
    return y - math.log(2.0) + math.log(-math.expm1(-2.0 * y)) - math.log(y)


def sector_log(beta: float, dx: float) -> float:
    """``log((beta/pi) * sinh(pi*dx/beta))``, with the ``beta -> inf`` limit ``log(dx)``."""
    if math.isinf(beta):
        return math.log(dx)
    return math.log(dx) + log_sinhc(math.pi * dx / beta)


def geodesic_length(geometry: BulkGeometry, x_i: float, x_j: float) -> float:
    """Regularized length of the boundary-anchored geodesic between x_i and x_j.

    Non-rotating: ``2 l log[(beta/(pi eps)) sinh(pi |dx| / beta)]``.  Rotating:
    the same expression summed over ``beta_left`` and ``beta_right``.
    Pure AdS: ``2 l log(|dx| / eps)``.
    """
    dx = abs(x_i - x_j)
    if dx == 0:
        raise CoincidentPoints("geodesic endpoints coincide")
    log_eps = math.log(geometry.uv_cutoff)
    total = sum(sector_log(beta, dx) - log_eps for beta in sector_betas(geometry))
    return 2.0 * geometry.ads_radius * total
