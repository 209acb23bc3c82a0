"""Distance bounds and key-equation decoding for q-ary cyclic codes."""

from .bounds import (
    BoundCertificate,
    all_bounds,
    bch_bound,
    boston_bounds,
    boston_question_bound,
    ht_bound,
    optimal_rational_witnesses,
    rational_bound,
    replay,
)
from .code import (
    CyclicCode,
    CyclotomicCoset,
    build_code,
    classify_reversible,
    cyclotomic_coset,
    enumerate_codes,
    minimal_polynomial,
    parse_code_spec,
)
from .decoder import DecoderContext, DecodingResult, decode, make_context
from .field import FiniteField, FieldElement, Poly, gf, minimal_splitting_degree, nth_root_of_unity, poly_eea, poly_roots
from .harness import OVER_BUDGET, TableRow, exhaustive_decode_test, tabulate, true_distance
from .series import RationalCandidate, default_registry, expand_series, load_registry, series_period, shift_numerator, validate_candidate

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
