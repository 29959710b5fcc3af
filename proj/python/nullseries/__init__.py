from ._core import (
    NullSeriesError,
    __version__,
    analyze,
    audit_synthetic,
    cantor_endpoints,
    conjugate,
    eval_weight,
    harmonic_measure,
    poisson,
    schedule,
    synthesize,
    truncation,
)
