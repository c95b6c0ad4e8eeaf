"""Holographic entanglement observables in AdS3 and BTZ, theta-function
finite-size corrections, and a MERA causal-cone simulator."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BadBranch, BlockOutOfRange, CoincidentPoints, DomainError, HolomiError, NoBracket,
    NoHorizon, NonConvergent, NonPositiveMass, NotPowerOfBranch, OverExtremal,
    SectorUnsupported,
)
from .geometry import (  # noqa: E402
    BulkGeometry, GeometryKind, ThermalScales, btz_from_mass_spin, central_charge,
    geodesic_length, mass_spin, thermal_scales, virasoro_charges,
)
from .phase import Phase  # noqa: E402
from .theta import (  # noqa: E402
    ThetaContext, fermion_correlator_torus, theta1_prime_at_zero, theta_series, upsilon,
)
from .observables import (  # noqa: E402
    IntervalPair, MiResult, TorusModel, cross_ratio, crossover_mu, crossover_separation,
    finite_size_correction, interval_entropy, log_two_point_correlator, mi_pure_ads,
    mi_torus, mi_torus_rotating, mi_zero_separation, mutual_information, transition_point,
    two_point_correlator, wolf_bound_report,
)
from .mera import (  # noqa: E402
    CausalCone, CutResult, MeraNetwork, build_network, causal_cone, cone_overlap_level,
    minimal_cut, regime_classify,
)
