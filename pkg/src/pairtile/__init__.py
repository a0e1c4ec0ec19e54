"""Exact analysis of multiple lattice tilings by polygons whose edges come in parallel pairs."""

from .criterion import PairJustification, Rule, TilingVerdict, center, check_bolle, check_lattice_tiling
from .errors import (
    DegenerateInput,
    InvariantViolation,
    MultiComponent,
    NonIntegerWeight,
    NotConvex,
    NotDiscrete,
    NotPairing,
    NotSymmetric,
    OracleDisagreement,
    PairtileError,
    ParseError,
    UnequalLengths,
    ZeroVector,
)
from .geometry import (
    EdgePair,
    Location,
    PolygonalRegion,
    Rational2,
    SimplePolygon,
    area,
    extract_pairing,
    is_centrally_symmetric,
    is_convex,
    is_parallelogram,
    point_location,
    vec,
)
from .lattice import Lattice, QuasiPeriodicSet, TranslatedLattice, segment_interior_point
from .oracle import CoverageReport, coverage_at, verify_tiling_exact, verify_tiling_sampled
from .spectral import (
    LineFamily,
    Orientation,
    ZeroSet,
    convex_classifier,
    density_at_zero,
    ft_eval,
    geometric_inverse,
    quasi_periodicity_certificate,
    vanishes_at,
    zero_set,
    zero_set_intersection_in_disc,
)

__version__ = "0.1.0"
