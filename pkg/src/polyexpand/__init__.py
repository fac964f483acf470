"""polyexpand: exact experiments on image growth of bivariate polynomials.

Given a finite set A of rationals with a small product set AA, the image
f(A, A) of a bivariate polynomial grows quadratically in |A| unless f is a
univariate polynomial of a single monomial, f = g(x^a y^b). This package
classifies that shape exactly, computes image sets, multiplicity histograms
and energies in exact arithmetic, detects multiplicative structure through
prime-exponent lattices, and audits the counting bounds behind the
phenomenon by brute force.
"""

from .lab import (
    AuditReport,
    DistinctnessError,
    EnergyCheck,
    ExceptionalPolynomialError,
    ExpansionReport,
    FileFamily,
    GeometricFamily,
    GGPFamily,
    SolutionSplit,
    SweepRow,
    audit_injectivity,
    audit_vanishing_subsums,
    cauchy_schwarz_check,
    expansion_sweep,
    high_multiplicity_values,
    parse_family,
    split_solutions,
)
from .polynomials import (
    BivariatePoly,
    MonomialDecomposition,
    PolyParseError,
    UnivariatePoly,
    classify_monomial_composition,
    compose,
    format_monomial,
    has_vanishing_subsum,
    non_parallel_witnesses,
    parse_poly,
    proper_support_subsets,
    vanishing_subsets,
)
from .rational import RationalParseError, format_rational, parse_rational
from .sets import (
    DEFAULT_MAX_PAIRS,
    CapExceeded,
    MultiplicityHistogram,
    RationalSet,
    doubling_ratio,
    energy,
    image_set,
    make_set,
    multiplicity_histogram,
    productset,
    read_set_file,
    sumset,
)
from .structure import (
    GGP,
    BoundValue,
    FactoredElement,
    ParallelVectorsError,
    amoroso_viada_bound,
    distinctness_check,
    factorize,
    ggp_enumerate,
    ggp_power,
    multiplicative_rank,
    parse_ggp_spec,
    reconstruct,
    solve_exponent_system,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "BivariatePoly",
    "BoundValue",
    "CapExceeded",
    "DEFAULT_MAX_PAIRS",
    "DistinctnessError",
    "EnergyCheck",
    "ExceptionalPolynomialError",
    "ExpansionReport",
    "FactoredElement",
    "FileFamily",
    "GGP",
    "GGPFamily",
    "GeometricFamily",
    "MonomialDecomposition",
    "MultiplicityHistogram",
    "ParallelVectorsError",
    "PolyParseError",
    "RationalParseError",
    "RationalSet",
    "SolutionSplit",
    "SweepRow",
    "UnivariatePoly",
    "amoroso_viada_bound",
    "audit_injectivity",
    "audit_vanishing_subsums",
    "cauchy_schwarz_check",
    "classify_monomial_composition",
    "compose",
    "distinctness_check",
    "doubling_ratio",
    "energy",
    "expansion_sweep",
    "factorize",
    "format_monomial",
    "format_rational",
    "ggp_enumerate",
    "ggp_power",
    "has_vanishing_subsum",
    "high_multiplicity_values",
    "image_set",
    "make_set",
    "multiplicative_rank",
    "multiplicity_histogram",
    "non_parallel_witnesses",
    "parse_family",
    "parse_ggp_spec",
    "parse_poly",
    "parse_rational",
    "productset",
    "proper_support_subsets",
    "read_set_file",
    "reconstruct",
    "solve_exponent_system",
    "split_solutions",
    "sumset",
    "vanishing_subsets",
]
