"""Peak state transfer in continuous-time quantum walks on graphs."""

from .dynamics import (
    TimeSeries,
    amplitude_series,
    empirical_peak,
    probability_series,
    sensitivity_bound,
    transition_amplitude,
    transition_matrix,
)
from .errors import (
    AmbiguousFit,
    BadParam,
    Disconnected,
    EigensolverFailure,
    MalformedGraph6,
    NotSymmetric,
    OutOfRange,
    PeakwalkError,
    RecognitionFailure,
    UnknownName,
    UnsupportedOrder,
)
from .graph6 import encode_graph6, parse_graph6, read_graph6
from .graphs import MatrixKind, WeightedGraph, adjacency_matrix, laplacian_matrix, matrix, named_graph
from .peak import (
    PeakOptions,
    PeakResult,
    QuadraticForm,
    TransferClass,
    Verdict,
    check_peak,
    check_peak_graph,
    check_peak_laplacian,
    classify_pst,
    fidelity_bound,
    recognize_quadratic,
    verify_at_time,
)
from .spectral import SpectralDecomposition, bounding_matrix, classify_support, decompose
from .survey import CensusRow, list_witnesses, scan

__version__ = "0.1.0"
