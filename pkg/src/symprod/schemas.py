"""JSON Schema (draft 2020-12) documents for every file format the package reads or writes.

Plain dicts, so validation needs ``jsonschema`` only in the tests.
"""
from __future__ import annotations

_INT = {"type": "integer"}
_INT_LIST = {"type": "array", "items": _INT}

HE_CURVE = {
    "type": "object",
    "required": ["p", "f"],
    "properties": {"p": _INT, "f": {"type": "array", "items": _INT, "minItems": 2}},
}

DIVISOR = {
    "type": "object",
    "required": ["points", "inf"],
    "properties": {
        "points": {"type": "array", "items": {
            "type": "object", "required": ["x", "y", "m"],
            "properties": {"x": _INT, "y": _INT, "m": _INT}}},
        "inf": _INT,
    },
}

QUADRIC_CURVE = {
    "type": "object",
    "required": ["p", "F"],
    "properties": {"p": _INT, "F": {"type": "array", "minItems": 4, "maxItems": 4,
                                    "items": {"type": "array", "items": _INT, "minItems": 4, "maxItems": 4}}},
}

SYM_TENSOR = {"type": "array", "items": {
    "type": "object", "required": ["n", "m", "c"],
    "properties": {"n": {"type": "integer", "minimum": 1}, "m": {"type": "integer", "minimum": 1}, "c": _INT}}}

MUL_MAP_REPORT = {
    "type": "object",
    "required": ["k", "dim_sym2", "rank", "kernel_dim", "injective", "kernel_basis"],
    "properties": {
        "k": {"type": "integer", "minimum": 1},
        "dim_sym2": _INT,
        "rank": _INT,
        "kernel_dim": {"type": "integer", "minimum": 0},
        "injective": {"type": "boolean"},
        "kernel_basis": {"type": "array", "items": SYM_TENSOR},
        "h0_L2": _INT,
    },
}

PIC_CLASS = {
    "type": "object",
    "required": ["d", "e", "generic", "torsion"],
    "properties": {
        "d": {"type": "integer", "minimum": 0},
        "e": _INT,
        "generic": {"type": "boolean"},
        "torsion": {"oneOf": [{"type": "integer", "minimum": 1}, {"const": "inf"}]},
    },
}

CHAIN = {
    "type": "object",
    "required": ["components", "d", "k"],
    "properties": {
        "components": {"type": "array", "items": {"oneOf": [
            {"type": "object", "required": ["kind"], "properties": {"kind": {"const": "rational"}},
             "additionalProperties": False},
            {"type": "object", "required": ["kind"],
             "properties": {"kind": {"const": "elliptic"}, "pic": PIC_CLASS}, "additionalProperties": False},
        ]}},
        "d": _INT,
        "k": _INT,
        "aspects": {"type": "array", "items": {
            "type": "object", "required": ["orders_P", "orders_Q"],
            "properties": {"orders_P": _INT_LIST, "orders_Q": _INT_LIST}}},
        "alpha": {"type": "array", "items": _INT_LIST},
    },
}

TRACE = {
    "type": "object",
    "required": ["outcome", "evasions", "steps"],
    "properties": {
        "outcome": {"enum": ["rank_one", "contradiction", "survived"]},
        "evasions": _INT_LIST,
        "steps": {"type": "array", "items": {
            "type": "object", "required": ["component", "kind", "ord", "beta", "obstruction"],
            "properties": {
                "component": _INT, "kind": {"enum": ["rational", "elliptic"]}, "ord": _INT, "beta": _INT,
                "check": {"type": ["string", "null"]},
                "obstruction": {"oneOf": [{"type": "null"}, {"type": "object", "required": ["rank_one"]}]},
            }}},
    },
}

VERIFY_REPORT = {
    "type": "object",
    "required": ["command", "p", "genus", "degree", "seed", "trials", "kernel_dim_histogram",
                 "examples_of_nonzero_kernels", "per_trial"],
    "properties": {
        "command": {"const": "verify"},
        "trials": {"type": "integer", "minimum": 1},
        "kernel_dim_histogram": {"type": "object", "additionalProperties": _INT},
        "examples_of_nonzero_kernels": {"type": "array", "items": {
            "type": "object", "required": ["trial", "curve", "divisor", "report"],
            "properties": {"curve": HE_CURVE, "divisor": DIVISOR, "report": MUL_MAP_REPORT}}},
        "per_trial": {"type": "array", "items": {"type": "object", "required": ["trial", "kernel_dim", "rank"]}},
        "caveat": {"type": "string"},
    },
}

GENUS4_REPORT = {
    "type": "object",
    "required": ["command", "p", "seed", "curve", "report"],
    "properties": {"command": {"const": "genus4-example"}, "curve": QUADRIC_CURVE,
                   "report": {"allOf": [MUL_MAP_REPORT, {"required": ["genus", "degree_L", "sections",
                                                                     "section_rank", "evaluation_rank"]}]}},
}

HE_KERNEL_REPORT = {
    "type": "object",
    "required": ["command", "curve", "divisor", "genus", "degree", "report", "wedge_relation"],
    "properties": {"command": {"const": "hyperelliptic-kernel"}, "curve": HE_CURVE, "divisor": DIVISOR,
                   "report": MUL_MAP_REPORT, "wedge_relation": {"type": "boolean"}},
}

RR_REPORT = {
    "type": "object",
    "required": ["command", "curve", "divisor", "genus", "degree", "h0_D", "h0_K_minus_D",
                 "riemann_roch", "basis"],
    "properties": {
        "command": {"const": "rr"}, "curve": HE_CURVE, "divisor": DIVISOR,
        "riemann_roch": {"type": "boolean"},
        "basis": {"type": "array", "items": {"type": "object", "required": ["a", "b", "h"],
                                             "properties": {"a": _INT_LIST, "b": _INT_LIST, "h": _INT_LIST}}},
    },
}

CHAIN_REPORT = {
    "type": "object",
    "required": ["command", "g", "d", "k", "trials", "brill_noether", "counts", "surviving_kernel_candidates"],
    "properties": {
        "command": {"const": "chain"},
        "counts": {"type": "object", "additionalProperties": _INT},
        "endgames": {"type": "object", "additionalProperties": _INT},
        "traces": {"type": "array", "items": {
            "type": "object", "required": ["trial", "config", "rho", "trace"],
            "properties": {"config": CHAIN, "trace": TRACE,
                           "rho": {"type": "array", "items": {"type": "object", "required": ["n", "m", "nu"]}}}}},
    },
}

BY_COMMAND = {
    "verify": VERIFY_REPORT,
    "genus4-example": GENUS4_REPORT,
    "hyperelliptic-kernel": HE_KERNEL_REPORT,
    "rr": RR_REPORT,
    "chain": CHAIN_REPORT,
}
