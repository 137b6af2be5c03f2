"""bfree: computational lab for sets of multiples and B-free integers.

Exact rational densities, segmented sieves, finite-quotient window
measures, block statistics of the B-free indicator word, and executable
Behrend/tautness diagnostics.
"""

from .blocks import (
    Block,
    BlockStats,
    HeredityViolation,
    SupportReport,
    XPhiReport,
    block_frequencies,
    heredity_check,
    max_zero_run,
    observed_blocks,
    support_stability,
    xeta_vs_xphi,
)
from .density import (
    DensityBounds,
    DensityEstimate,
    ExactDensity,
    coprime_product_check,
    davenport_erdos_sequence,
    exact_density,
    exact_density_or_bounds,
    exact_progression_free_density,
    light_tails_profile,
    log_density_estimate,
    natural_density_bounds,
    recent_window_estimate,
)
from .errors import (
    BFreeError,
    FamilyParseError,
    NotCoprimeError,
    PeriodOverflowError,
    PreconditionError,
    SearchExhaustedError,
)
from .families import (
    BSet,
    FamilySpec,
    Modulus,
    bset,
    find_coprime_subset,
    parse_family,
    primes_upto,
    primitivize,
    quotient,
    register_family_predicate,
    remove_multiples,
    restrict_spectrum,
    spec_outside,
    spec_within,
)
from .sieve import EtaSegment, count_multiples, dump_segment, load_segment, sieve_interval
from .tautlab import (
    BlockRecurrenceReport,
    DichotomyProfile,
    PrimeExhaustResult,
    ShiftInequalityReport,
    TautnessReport,
    as511_check,
    behrend_profile,
    lemma520_check,
    prime_exhaust,
    tautness_diagnostic,
)
from .window import (
    FiniteQuotient,
    PhiBlocks,
    WindowSet,
    coding_word,
    cylinder_measure,
    phi_blocks,
    window_measure,
    window_report,
    window_set,
)

__version__ = "0.1.0"
