"""Quantumness of mutual information for two-qubit states."""

from .measures import (
    NON_UNIQUE,
    BlochCase,
    MeasureReport,
    classical_mutual_information,
    full_report,
    q_lhv,
    q_mid,
    quantum_discord_A,
    quantum_mutual_information,
    symmetric_discord,
)
from .optimizer import SearchConfig
from .states import DensityMatrix2Q, Direction, from_family, validate

__version__ = "0.1.0"
