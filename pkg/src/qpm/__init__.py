"""Projective measurements over density operators, and the CHSH inequality."""

from .chsh import (
    ChshObservables,
    CorrelationReport,
    LhvModel,
    WitnessReport,
    canonical_observables,
    chsh_classical,
    chsh_quantum,
    lhv_expectation,
    lhv_validate,
    max_deterministic_chsh,
    monte_carlo_lhv,
    no_lhv_witness,
    qt_expect_rv,
    quantum_correlation,
    singlet,
    sum_qt_expect_identity,
)
from .cxmat import adjoint, classify, cmatrix, cvector, identity, matmul, tensor, trace
from .errors import DimensionError, NumericalIntegrityError, QpmError, SchemaError, ValidationError
from .pmeas import (
    MeasureOutcome,
    ProjectiveMeasurement,
    collapse,
    expectation_value,
    make_pm,
    outcome_prob,
    reconstruct,
    validate_pm,
)
from .qstate import (
    BellKind,
    DensityOperator,
    bell_state,
    compose,
    ensemble_density,
    evolve,
    inner,
    max_mixed,
    pure_state,
    rank1proj,
)
from .spectral import EigenDecomposition, SpectrumPartition, eig_hermitian, group_spectrum, spectrum

__version__ = "0.1.0"
