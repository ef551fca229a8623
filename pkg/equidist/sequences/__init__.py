"""The power-sequence family, polynomial phases and difference operators."""

from .base import ComplexSequence, ModOneSample, SampleMeta, to_exponential, unit_phases
from .generator import (
    choose_path,
    exact_residue,
    generate_power_sequence,
    initial_precision,
    poly_mod_one,
    reduce_mod_one,
    vdc_difference,
)
from .polynomial import Polynomial, shift_difference_poly, split_top_level
from .spec import SequenceSpec, parse_exponents, parse_key_values

__all__ = [
    "ComplexSequence",
    "ModOneSample",
    "Polynomial",
    "SampleMeta",
    "SequenceSpec",
    "choose_path",
    "exact_residue",
    "generate_power_sequence",
    "initial_precision",
    "parse_exponents",
    "parse_key_values",
    "poly_mod_one",
    "reduce_mod_one",
    "shift_difference_poly",
    "split_top_level",
    "to_exponential",
    "unit_phases",
    "vdc_difference",
]
