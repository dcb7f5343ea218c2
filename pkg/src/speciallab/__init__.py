"""Special monoids given by parameterised rewriting schemas."""

from .language import (
    Grammar,
    SliceReport,
    WpQuery,
    cf_verdict,
    enumerate_wp_slice,
    export_lhs_grammar,
    format_grammar,
    grammar_member,
    parse_grammar,
    wp_member,
)
from .presentations import (
    GroupTable,
    PresentationSchema,
    make_mn,
    make_pi,
    parse_presentation,
    serialize_presentation,
)
from .rewriting import (
    RewriteSystem,
    Rule,
    check_local_confluence,
    critical_pairs,
    equal_in_monoid,
    incremental_normal_form,
    normal_form,
    reduce_once,
)
from .special import (
    MinimalWordSet,
    UnitsPresentation,
    check_biprefix,
    classify_units,
    compute_lambda,
    decode_over_lambda,
    is_invertible,
    is_left_invertible,
    is_right_invertible,
    minimal_factorization,
    units_presentation,
)
from .words import (
    Alphabet,
    Const,
    Param,
    ParamPattern,
    find_matches,
    instantiate,
    overlaps,
    prefixes,
    self_overlap_free,
    suffixes,
)

__version__ = "0.1.0"
