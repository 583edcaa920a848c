"""Toeplitz sequences over odometers: construction, fibers, and exact checks."""

from .odometer import (
    DEFAULT_STRUCTURE,
    ArithmeticRule,
    ConstantDigits,
    DepthExhausted,
    GeometricRule,
    IntegerEmbed,
    OdometerElement,
    PeriodStructure,
    PeriodStructureError,
    Unknown,
    add,
    embed,
    from_digits,
    negate,
    parse_element,
    parse_rule,
    scalar_multiple,
)
from .toeplitz import density, eta, min_defined_level, skeleton, window

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_STRUCTURE",
    "ArithmeticRule",
    "ConstantDigits",
    "DepthExhausted",
    "GeometricRule",
    "IntegerEmbed",
    "OdometerElement",
    "PeriodStructure",
    "PeriodStructureError",
    "Unknown",
    "add",
    "density",
    "embed",
    "eta",
    "from_digits",
    "min_defined_level",
    "negate",
    "parse_element",
    "parse_rule",
    "scalar_multiple",
    "skeleton",
    "window",
]
