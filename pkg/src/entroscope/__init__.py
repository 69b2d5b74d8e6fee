"""entroscope: exact laboratory for linear and conditional information inequalities.

Layers, bottom up:

* :mod:`entroscope.distributions` - exact rational joint distributions,
  entropy, independence and quasi-uniformity tests, JSON wire format;
* :mod:`entroscope.profile` - entropy profiles, information expressions,
  elemental inequalities, polymatroid and Ingleton checks;
* :mod:`entroscope.exprlang` - the expression mini-language;
* :mod:`entroscope.catalog` - the built-in inequality catalog and
  conditional checking;
* :mod:`entroscope.shannon` - Shannon-typeness by exact rational LP with
  Farkas certificates;
* :mod:`entroscope.quadruple` - the line/point/parabola construction over
  prime fields, closed forms, extension gaps;
* :mod:`entroscope.limits` - interval boxes for profile limits and
  certified violations of conditional inequalities;
* :mod:`entroscope.binning` - exact finite-N random-binning reports;
* :mod:`entroscope.cli` - the ``entroscope`` command.
"""

from .binning import BinningCode, build_code, mean_residual_by_n, sw_report
from .catalog import (
    CANONICAL_ORDER,
    ConditionalInequality,
    catalog,
    check_conditional,
    matus_star_expression,
    zy98_expression,
)
from .distributions import (
    JointDistribution,
    apply_function,
    distribution_from_json,
    distribution_to_json,
    entropy,
    iid_power,
    is_conditionally_independent,
    is_functionally_determined,
    is_quasi_uniform,
    load_distribution,
    make_distribution,
    marginalize,
    quasi_uniformity_report,
    support_budget,
)
from .errors import EntroscopeError
from .exprlang import parse, print_canonical
from .limits import (
    AEPointBox,
    CombinedCertificate,
    ViolationCertificate,
    certificate_at,
    certify_violation,
    combined_limit,
    cond4_robustness_bound,
    matus_star_value,
    minimal_certifying_prime,
    relativize_limit,
    sw_hash_limit,
    verify_certificate,
)
from .profile import (
    EntropyProfile,
    InfoExpression,
    elemental_expressions,
    expand_entropy,
    expand_mutual_info,
    ingleton,
    is_polymatroid,
    polymatroid_check,
    profile_from_json,
    profile_of,
    profile_to_json,
)
from .quadruple import (
    PrimeField,
    closed_form_profile,
    closed_form_quantities,
    extension_gap,
    minimal_refuting_prime,
    quadruple_distribution,
    verify_quadruple,
)
from .shannon import (
    ShannonTypeVerdict,
    elemental_inequalities,
    is_shannon_type,
    lp_min,
    verify_verdict,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
