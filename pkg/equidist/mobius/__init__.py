"""Mobius function sieve and the Mobius comparison sequence."""

from .sieve import (
    TABLE_MAGIC,
    TABLE_VERSION,
    MobiusTable,
    divisor_sum_identity_holds,
    mobius_by_factorization,
    mobius_sequence,
    mobius_sieve,
    squarefree_density,
)

__all__ = [
    "MobiusTable",
    "TABLE_MAGIC",
    "TABLE_VERSION",
    "divisor_sum_identity_holds",
    "mobius_by_factorization",
    "mobius_sequence",
    "mobius_sieve",
    "squarefree_density",
]
