"""repgap: exact and high-precision checks on the distance between
factorials and repunits.

The library cross-verifies every desk-scale computation behind that
question: the survivor scan over locally obstructed pairs, discriminants
and factorization shapes of the shifted repunit polynomials, exhaustive
small searches of n! = (b^m - 1)/(b - 1) + a, and the prime-progression
sums the asymptotic arguments lean on.
"""

__version__ = "0.1.0"

from .arith import (
    PrimeSieve,
    classify_phi_divisors,
    cyclotomic_value,
    int_valuation,
    legendre_valuation,
    multiplicative_order,
    nu2_repunit,
    primes_up_to,
    repunit,
    repunit_mod,
)
from .polynomials import (
    FactorizationShape,
    NewtonPolygon,
    PolyZ,
    ShapeTag,
    build_P,
    classify_shape,
    discriminant_closed,
    discriminant_resultant,
    factor_degrees_mod_q,
    integer_roots,
    is_eisenstein,
    newton_polygon,
    shift_plus_one,
)
from .obstruction import (
    ObstructionCertificate,
    SurvivorSet,
    candidate_primes,
    find_obstruction,
    least_rootless_prime,
    reproduce_S0,
    rootless_density,
)
from .eqsearch import (
    EquationInstance,
    SearchBox,
    check_m3_divisibility,
    search_a_range,
    search_box,
    search_fixed_a,
    search_order_caps,
    solve_repunit_eq,
)
from .analytic import (
    ClassSetReport,
    ProgressionSumRecord,
    bt_check,
    check_prop_pom,
    class_set_C,
    excluded_residue,
    first_proof_threshold,
    phi_lower_bound_check,
    progression_sums,
    rough_prime_count,
)
from .baseline import PaperBaseline, load_baseline
