"""Privacy-preserving distinct counting with probabilistic counting registers.

Only an ``L``-bit register is kept.  Two estimators read it: the classic
Flajolet-Martin ``2**k / phi`` and a collision-included estimate that
accounts for hash collisions in an ``L``-bit hash space.
"""

from .errors import (
    BadMagic,
    CIPCError,
    ConfigMismatch,
    EmptySamples,
    InsufficientSamples,
    InvalidL,
    NonPositiveTruth,
    Saturated,
    StateFormatError,
    TruncatedPayload,
    UniverseTooSmall,
    UnsupportedVersion,
)
from .estimators import (
    PHI,
    EstimateReport,
    cipc_unfloored,
    estimate,
    estimate_cipc,
    estimate_pc,
    expected_collisions,
    recommend_register_size,
)
from .hashing import HashConfig, fold_bytes, hash_to_domain, lssb
from .oracle import ExactCounter, empirical_collisions, exact_distinct
from .sketch import Sketch, deserialize, merge, rightmost_zero, serialize
from .stats import TrialAggregate, confidence_interval_95, mean, percent_error

__version__ = "0.1.0"
