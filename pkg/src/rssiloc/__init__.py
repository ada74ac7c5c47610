"""RSSI-based wireless node localization.

Path-loss ranging, trilateration/multilateration position solving, error
metrics, and a seeded Monte-Carlo simulator of an outdoor field experiment.
"""

from .errors import (
    DegenerateInputError,
    InsufficientAnchorsError,
    LocalizationError,
    RowParseError,
    SchemaError,
    SingularGeometryError,
)
from .lateration import (
    MULTILATERATION,
    NEAR_SINGULAR,
    TRILATERATION,
    WELL_CONDITIONED,
    AnchorNode,
    LinearSystem,
    PositionEstimate,
    build_system,
    locate,
    locate_from_rssi,
    solve,
)
from .metrics import (
    LocalizationReport,
    PlacementError,
    distance_error,
    general_error,
    position_error,
    summarize,
)
from .pathloss import (
    PathLossModel,
    RangingSample,
    calibrate,
    estimate_distance,
    predict_rssi,
)
from .simulator import (
    DEFAULT_SEED,
    ComparisonReport,
    FieldSize,
    RssiSample,
    Scenario,
    compare_methods,
    default_paper_scenario,
    run_trial,
    synthesize_observations,
)

__version__ = "0.1.0"

__all__ = [
    "AnchorNode",
    "ComparisonReport",
    "DEFAULT_SEED",
    "DegenerateInputError",
    "FieldSize",
    "InsufficientAnchorsError",
    "LinearSystem",
    "LocalizationError",
    "LocalizationReport",
    "MULTILATERATION",
    "NEAR_SINGULAR",
    "PathLossModel",
    "PlacementError",
    "PositionEstimate",
    "RangingSample",
    "RowParseError",
    "RssiSample",
    "Scenario",
    "SchemaError",
    "SingularGeometryError",
    "TRILATERATION",
    "WELL_CONDITIONED",
    "build_system",
    "calibrate",
    "compare_methods",
    "default_paper_scenario",
    "distance_error",
    "estimate_distance",
    "general_error",
    "locate",
    "locate_from_rssi",
    "position_error",
    "predict_rssi",
    "run_trial",
    "solve",
    "summarize",
    "synthesize_observations",
]
