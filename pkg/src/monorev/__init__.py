"""Word reversing and bounded cancellativity certificates for positive
monoid presentations, including families indexed over the integers."""

from .words import (
    EPSILON,
    Alphabet,
    Generator,
    Letter,
    UnknownGeneratorError,
    Word,
    WordSyntaxError,
    format_word,
    free_reduce,
    invert_word,
    parse_word,
    shift_word,
    word_of,
)
from .presentation import (
    EQUAL,
    AmbiguousComplementError,
    ComplementPair,
    Param,
    PatternLetter,
    Presentation,
    RelationInstance,
    Schema,
    SchemaError,
    check_complemented,
    check_homogeneous,
    fixed_schema,
    instances_for_pair,
    instantiate_window,
    left_complement,
    load_presentation,
    materialize_relations,
    right_complement,
    save_presentation,
)
from .reversing import (
    DEFAULT_FUEL,
    Diverged,
    Empty,
    NoRedex,
    ReversalStep,
    ReversalTrace,
    ReversingGrid,
    Stuck,
    Terminal,
    build_grid,
    grid_to_dot,
    left_reverse,
    left_reverse_step,
    reverse_quotient,
    right_reverse,
    right_reverse_step,
)
from .completeness import (
    Certificate,
    CubeResult,
    certify,
    certify_cancellative,
    certify_complete,
    cube_condition,
    enumerate_generator_triples,
    enumerate_word_triples,
)
from .derivation import (
    CancelStep,
    DerivationError,
    DerivationScript,
    InsertStep,
    RelationStep,
    ScriptResult,
    apply_step,
    format_script,
    parse_script,
    shift_script,
    substitute_t,
    t_expression,
    verify_positive_equality,
    verify_script,
    verify_translation_product,
)
from .oracle import (
    OracleCapError,
    ScanReport,
    ScanWitness,
    cancellation_scan,
    equivalence_class,
    monoid_equal,
)
from . import catalog

__version__ = "0.1.0"
