"""Optimal q-ary constant-weight codes of weight three and distance four."""

from .bounds import BoundReport, bound_report, main_theorem_value, u_q, upper_bound
from .core import (
    Codeword,
    ConstantWeightCode,
    VerificationReport,
    hamming_distance,
    minimum_distance,
    read_code,
    support_intersection_size,
    verify_code,
    write_code,
)
from .errors import InvalidInputError
from .largeset import (
    Design,
    LargeSet,
    bundled_large_set,
    construct_from_ls,
    ls_search,
    partition_by_five_blocks,
    read_large_set,
    trivial_large_set,
    verify_large_set,
    write_large_set,
)
from .lex import KSubset, delete_common, enumerate_subsets, lex_less, rank, unrank
from .oracle import certify_optimal, exact_a
from .seqconstruct import (
    FillMatrix,
    FillSequence,
    build_m,
    check_lemma1,
    code_of,
    fill,
    gen_x,
    gen_y,
    is_special,
    move_column_front,
    reorder,
)
from .shorten import coordinate_usage, shorten_at, shorten_optimal

__version__ = "0.1.0"
