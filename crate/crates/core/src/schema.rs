//! JSON schemas for the file formats read and written by the command line.
//! Object keys are sorted, so the output is byte-stable.

use serde_json::{json, Value};

fn rational() -> Value {
    json!({
        "description": "exact rational as \"p/q\" or \"p\"; bare integers are accepted on input",
        "oneOf": [
            {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"},
            {"type": "integer"}
        ]
    })
}

fn poly() -> Value {
    json!({
        "type": "object",
        "required": ["nvars", "terms"],
        "properties": {
            "nvars": {"type": "integer", "minimum": 0},
            "laurent": {"type": "boolean", "default": false},
            "terms": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["coef", "exps"],
                    "properties": {
                        "coef": {"$ref": "#/definitions/rational"},
                        "exps": {"type": "array", "items": {"type": "integer"}}
                    }
                }
            }
        }
    })
}

fn poly_or_text() -> Value {
    json!({
        "description": "polynomial object, or text such as \"1/2*x1^2 - x2\" (u1, u2, ... for generator-space polynomials)",
        "oneOf": [{"$ref": "#/definitions/poly"}, {"type": "string"}]
    })
}

fn group() -> Value {
    json!({
        "type": "object",
        "required": ["nvars", "generators"],
        "properties": {
            "nvars": {"type": "integer", "minimum": 0},
            "generators": {
                "description": "invertible nvars x nvars matrices, row-major",
                "type": "array",
                "items": {"type": "array", "items": {"type": "array", "items": {"$ref": "#/definitions/rational"}}}
            }
        }
    })
}

fn measure() -> Value {
    json!({
        "type": "object",
        "required": ["atoms"],
        "properties": {
            "atoms": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["point", "weight"],
                    "properties": {
                        "point": {"type": "array", "items": {"type": "string"}},
                        "weight": {"type": "string", "description": "positive rational"}
                    }
                }
            }
        }
    })
}

fn module() -> Value {
    json!({
        "type": "object",
        "required": ["generators"],
        "properties": {
            "generators": {"type": "array", "items": {"$ref": "#/definitions/poly_or_text"}},
            "flavor": {"enum": ["quadratic-module", "preordering", "s0-module"], "default": "quadratic-module"},
            "ambient": {"enum": ["V-ring", "W-ring"], "default": "W-ring"}
        }
    })
}

fn poly_list() -> Value {
    json!({"type": "array", "items": {"$ref": "#/definitions/poly_or_text"}})
}

fn certificate() -> Value {
    json!({
        "type": "object",
        "required": ["squares", "residual_zero"],
        "properties": {
            "squares": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["coef", "poly"],
                    "properties": {
                        "coef": {"$ref": "#/definitions/rational"},
                        "poly": {"$ref": "#/definitions/poly"},
                        "semi_invariant_type": {"type": "string", "description": "trivial, sign or component-k"}
                    }
                }
            },
            "residual_zero": {"type": "boolean"}
        }
    })
}

fn run_report() -> Value {
    json!({
        "type": "object",
        "required": ["scenario", "seed", "pass", "checks"],
        "properties": {
            "scenario": {"type": "string"},
            "seed": {"type": "integer", "minimum": 0},
            "pass": {"type": "boolean"},
            "checks": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["name", "pass", "detail"],
                    "properties": {"name": {"type": "string"}, "pass": {"type": "boolean"}, "detail": {"type": "string"}}
                }
            },
            "timing_ms": {"type": "integer", "description": "wall time, only with --timing"},
            "artifacts": {"type": "array", "items": {"type": "string"}}
        }
    })
}

fn moment_report() -> Value {
    json!({
        "type": "object",
        "required": ["checks", "pass", "skipped"],
        "properties": {
            "checks": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["label", "generator", "size", "mode", "min_eigenvalue", "pass"],
                    "properties": {
                        "label": {"type": "string"},
                        "generator": {"type": "string"},
                        "size": {"type": "integer"},
                        "mode": {"enum": ["exact", "float"]},
                        "min_pivot": {"type": "string"},
                        "min_eigenvalue": {"type": "number"},
                        "pass": {"type": "boolean"}
                    }
                }
            },
            "pass": {"type": "boolean"},
            "skipped": {"type": "array", "items": {"type": "string"}}
        }
    })
}

/// Names of the individual schemas, in output order.
pub const SCHEMA_NAMES: [&str; 8] = ["certificate", "group", "measure", "module", "moment_report", "poly", "poly_list", "run_report"];

/// One schema by name, self-contained with its definitions.
pub fn schema(name: &str) -> Option<Value> {
    let body = match name {
        "certificate" => certificate(),
        "group" => group(),
        "measure" => measure(),
        "module" => module(),
        "moment_report" => moment_report(),
        "poly" => poly(),
        "poly_list" => poly_list(),
        "run_report" => run_report(),
        _ => return None,
    };
    let mut v = json!({"$schema": "http://json-schema.org/draft-07/schema#", "title": name, "definitions": definitions()});
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    Some(v)
}

fn definitions() -> Value {
    json!({"rational": rational(), "poly": poly(), "poly_or_text": poly_or_text()})
}

/// All schemas keyed by name.
pub fn emit_schema() -> Value {
    Value::Object(SCHEMA_NAMES.iter().map(|n| (n.to_string(), schema(n).expect("listed schema"))).collect())
}
