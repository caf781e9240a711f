"""JSON Schemas (draft 2020-12) of the file and report formats.

``python -m qframes.schemas`` prints all of them.
"""

import json

_QUATERNION = {"type": "array", "items": {"type": "number"}, "minItems": 4, "maxItems": 4}
_REALS = {"type": "array", "items": {"type": "number"}}
_POSITIVE = {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}, "minItems": 1}

MATRIX = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "QMatrix",
    "description": "Quaternionic matrix; entries row-major, each [a, b, c, d] = a + bi + cj + dk.",
    "type": "object",
    "required": ["rows", "cols", "entries"],
    "properties": {
        "rows": {"type": "integer", "minimum": 1},
        "cols": {"type": "integer", "minimum": 1},
        "entries": {"type": "array", "items": _QUATERNION},
    },
}

FRAME = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Frame",
    "description": "N vectors in H^d; columns[i][p] is coordinate p of vector i.",
    "type": "object",
    "required": ["d", "N", "columns"],
    "properties": {
        "d": {"type": "integer", "minimum": 1},
        "N": {"type": "integer", "minimum": 1},
        "columns": {"type": "array", "items": {"type": "array", "items": _QUATERNION}},
    },
}

CERTIFICATE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "AdmissibilityCertificate",
    "type": "object",
    "required": ["admissible", "trace_gap", "first_violated_k", "partial_sums", "tol"],
    "properties": {
        "admissible": {"type": "boolean"},
        "trace_gap": {"type": "number"},
        "first_violated_k": {"type": ["integer", "null"], "minimum": 1},
        "partial_sums": {
            "type": "object",
            "required": ["r", "lambda"],
            "properties": {"r": _REALS, "lambda": _REALS},
        },
        "tol": {"type": "number"},
    },
}

PATH_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "PathReport",
    "type": "object",
    "required": [
        "passed",
        "tol",
        "step_bound",
        "max_spectrum_dev",
        "max_norm_dev",
        "max_step",
        "n_samples",
        "spectrum_dev",
        "norm_dev",
        "step_sizes",
    ],
    "properties": {
        "passed": {"type": "boolean"},
        "tol": {"type": "number"},
        "step_bound": {"type": "number"},
        "max_spectrum_dev": {"type": "number"},
        "max_norm_dev": {"type": "number"},
        "max_step": {"type": "number"},
        "n_samples": {"type": "integer", "minimum": 0},
        "spectrum_dev": _REALS,
        "norm_dev": _REALS,
        "step_sizes": _REALS,
    },
}

FRAME_PATH = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "FramePath",
    "type": "object",
    "required": ["lambda", "r", "samples"],
    "properties": {
        "lambda": _POSITIVE,
        "r": _POSITIVE,
        "samples": {"type": "array", "items": FRAME, "minItems": 2},
        "report": PATH_REPORT,
    },
}

ALL = {
    "QMatrix": MATRIX,
    "Frame": FRAME,
    "AdmissibilityCertificate": CERTIFICATE,
    "PathReport": PATH_REPORT,
    "FramePath": FRAME_PATH,
}


if __name__ == "__main__":
    print(json.dumps(ALL, indent=2, sort_keys=True))
