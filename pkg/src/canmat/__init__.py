"""Canonical n x n binary matrices with k ones per row and column."""
from .bitcore import (
    N_MAX,
    BitMatrix,
    CapacityError,
    Dims,
    DomainError,
    apply_perms,
    complement,
    decode,
    encode,
    is_member,
    transpose_tuple,
)
from .canonical import ORACLE_N_MAX, check_lemma1, doubly_sort, is_canonical, min_orbit_rep
from .enumeration import count_canonical, count_lambda, list_canonical, sequence

__version__ = "0.1.0"
