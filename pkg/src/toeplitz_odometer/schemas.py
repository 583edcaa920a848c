"""JSON Schemas (draft 2020-12) for the reports printed by ``--format json``.

Plain data only; validating them needs a schema library such as
``jsonschema``, which the package itself does not import.
"""

from __future__ import annotations

_int = {"type": "integer"}
_bool = {"type": "boolean"}
_str = {"type": "string"}
_ints = {"type": "array", "items": _int}


def _obj(props: dict, required: list | None = None) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": list(props) if required is None else required,
        "additionalProperties": False,
    }


WINDOW = _obj({"from": _int, "to": _int, "symbols": {"type": "array", "items": {"type": "integer", "minimum": 0, "maximum": 4}}})

SKELETON = _obj(
    {
        "level": _int,
        "p_i": _int,
        "defined_count": _int,
        "cells": {"type": "array", "items": {"type": ["integer", "null"]}},
        "essential": _bool,
    }
)

DENSITY_ROW = _obj(
    {
        "level": _int,
        "defined_count": _int,
        "p_i": _int,
        "d_i_num": _int,
        "d_i_den": _int,
        "classification": {"enum": ["regular", "irregular", "undecidable-from-prefix"]},
        "recursion_constant": _int,
        "recursion_num": _int,
        "recursion_den": _int,
        "alt_constant": _int,
        "alt_recursion_num": _int,
        "alt_recursion_den": _int,
        "constant_discrepancy": _bool,
    }
)

DENSITY = {"oneOf": [DENSITY_ROW, _obj({"rows": {"type": "array", "items": DENSITY_ROW}})]}

_eval_position = {
    "oneOf": [
        _obj({"n": _int, "kind": {"const": "forced"}, "symbol": _int, "level": _int}),
        _obj({"n": _int, "kind": {"const": "aperiodic"}, "symbol": _int}),
        _obj({"n": _int, "kind": {"const": "undetermined"}, "horizon": _int}),
    ]
}

ORBIT_EVAL = _obj({"g": _str, "fill": _int, "positions": {"type": "array", "items": _eval_position}})

ORBIT_FIBER = {
    "oneOf": [
        _obj({"g": _str, "certificate": {"const": "singleton"}, "defined_levels": _ints}),
        _obj({"g": _str, "certificate": {"const": "five"}, "defined_levels": _ints}),
        _obj({"g": _str, "certificate": {"const": "unknown"}, "level": _int, "defined_seen": _int}),
    ]
}

ORBIT_PROXIMAL = _obj(
    {"g": _str, "fills": _ints, "radius": _int, "bound": _int, "found": _bool, "k": {"type": ["integer", "null"]}}
)

_violation = {"type": "object"}

SATURATION_CLAIM = _obj(
    {
        "depth": _int,
        "start_level": _int,
        "cases": {"type": "array", "items": {"enum": ["plain", "shifted"]}},
        "carry_ins": _ints,
        "scanned": _int,
        "eligible": _int,
        "checked": _int,
        "no_defined_digit": _int,
        "plain_t_prime_exceeds_t": _int,
        "violations": {"type": "array", "items": _violation},
        "elapsed": {"type": "number"},
    },
    required=[
        "depth", "start_level", "cases", "carry_ins", "scanned", "eligible", "checked",
        "no_defined_digit", "plain_t_prime_exceeds_t", "violations",
    ],
)

_pairs = {"type": "array", "items": {"type": "array", "items": _int, "minItems": 2, "maxItems": 2}}

_demo_row = _obj(
    {
        "m": _int,
        "k": _int,
        "a_forced_checked": _int,
        "a_side_mismatches": _ints,
        "a_fill_symbols": _ints,
        "b_symbols": _ints,
        "b_symbol_2_positions": _ints,
        "realized_fill_pairs": _pairs,
        "fill_control": {"type": "object", "additionalProperties": _ints},
    }
)

SATURATION_DEMO = _obj(
    {
        "a": _str,
        "b": _str,
        "window": _int,
        "a_aperiodic": _ints,
        "b_aperiodic": _ints,
        "rows": {"type": "array", "items": _demo_row},
        "realized_fill_pairs": _pairs,
        "control_ok": _bool,
        "violations": {"type": "array", "items": _violation},
        "elapsed": {"type": "number"},
    },
    required=["a", "b", "window", "a_aperiodic", "b_aperiodic", "rows", "realized_fill_pairs", "control_ok", "violations"],
)

_scan_row = _obj(
    {"N": _int, "r": _int, "n": _int, "d": _int, "size_T": _int, "size_Tn": _int, "equal": _bool, "gcd": _int}
)

NDFINITE_SCAN = _obj(
    {
        "nmax": _int,
        "dmax": _int,
        "rows": {"type": "array", "items": _scan_row},
        "counterexamples": {"type": "array", "items": _scan_row},
        "decomposition_failures": {"type": "array", "items": _scan_row},
        "condition_three_mismatches": {"type": "array", "items": _scan_row},
    }
)

_tuples = {"type": "array", "items": _ints}

NDFINITE_SHOW = _obj(
    {
        "N": _int,
        "r": _int,
        "d": _int,
        "size_T": _int,
        "tuples_T": _tuples,
        "n": _int,
        "size_Tn": _int,
        "tuples_Tn": _tuples,
        "equal": _bool,
        "gcd": _int,
        "distinct_cells": _int,
        "cells_cover": _bool,
        "cells_identical_or_disjoint": _bool,
    },
    required=["N", "r", "d", "size_T", "tuples_T"],
)

SCHEMAS = {
    ("toeplitz", "window"): WINDOW,
    ("toeplitz", "skeleton"): SKELETON,
    ("toeplitz", "density"): DENSITY,
    ("orbit", "eval"): ORBIT_EVAL,
    ("orbit", "fiber"): ORBIT_FIBER,
    ("orbit", "proximal"): ORBIT_PROXIMAL,
    ("saturation", "claim"): SATURATION_CLAIM,
    ("saturation", "demo"): SATURATION_DEMO,
    ("ndfinite", "scan"): NDFINITE_SCAN,
    ("ndfinite", "show"): NDFINITE_SHOW,
}
