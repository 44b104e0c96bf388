use crate::SCHEMA;
use serde_json::{json, Value};

fn ladder() -> Value {
    json!({"type": "object", "properties": {"top": {"type": "array", "items": "integer"}, "bottom": {"type": "array", "items": "integer"}}})
}

fn distance() -> Value {
    json!({
        "type": "object",
        "properties": {
            "kind": {"enum": ["EXACT", "AT_LEAST", "UNSUPPORTED"]},
            "d": {"type": "integer"},
            "reason": {"type": "string"},
        }
    })
}

fn step() -> Value {
    json!({
        "step": "integer", "band": "integer", "w_arc": "integer or null", "width": "integer", "kind": "string or null",
        "i_before": "integer", "i_after": "integer or null", "i_min": {"kind": ["exact", "lower_bound", "unknown"], "value": "integer"},
        "decomposition_before": "array", "decomposition_after": "array or null",
        "distance_before": distance(), "distance_after": "distance or null",
        "gate": {"status": ["not_reached", "passed", "failed", "skipped"]},
        "accepted": "boolean", "reason": ["ACCEPTED", "WIDTH_BOUND", "NO_STACKED_REGION", "SURGERY_FAILED", "DISTANCE_VETO"], "detail": "string"
    })
}

/// Field listing for every report the tool writes to stdout. Every report
/// carries `schema` and `command`; failures carry `schema` and `error`.
pub fn schema() -> Value {
    json!({
        "schema": SCHEMA,
        "common": {"schema": {"const": SCHEMA}, "command": {"type": "string"}},
        "error": {"schema": {"const": SCHEMA}, "error": {"code": "string", "message": "string"}},
        "exit_codes": {"0": "success or UNSUPPORTED", "1": "invalid ladder or unreadable input", "2": "distance cap reached, AT_LEAST emitted", "3": "surgery precondition failed"},
        "commands": {
            "analyze": {
                "ladder": ladder(),
                "genus": "integer",
                "i": "integer",
                "decomposition": {"type": "array", "description": "[F4, F6, ...] without trailing zeros after F6"},
                "large_vector": {"type": "array", "description": "[F6, F8, ..., F(8g-4)]"},
                "distance_bound": "number",
                "distance_bound_ok": "boolean or null",
                "distance": distance(),
                "canonical": ladder(),
                "complex": {"n": "integer", "genus": "integer", "decomposition": "array", "nonseparating": {"v": "boolean", "w": "boolean"}, "bicorns": "array of [v_arc, w_arc]"},
                "bands": "integer",
                "spirals": {"type": "array", "items": {"band": "integer", "width": "integer", "length": "integer", "w_arcs": "array", "interior_w_arcs": "array", "multiplicity": "integer", "winding": "string or null"}},
            },
            "distance": {"i": "integer", "max_d": "integer", "distance": distance(), "witness": {"length": "integer", "first_counts": "array"}},
            "spirals": {"i": "integer", "spirals": "array, as in analyze"},
            "surgery": {"trace": {"op": "string", "site": "object", "kind": "string", "width": "integer", "i_before": "integer", "i_after": "integer", "decomposition_before": "array", "decomposition_after": "array"}, "result": ladder()},
            "add": {"site": "object", "m": "integer", "i_before": "integer", "i_after": "integer", "decomposition": "array", "result": ladder()},
            "reduce": {
                "imin_table": "string or null",
                "i_before": "integer",
                "i_after": "integer",
                "accepted": "integer",
                "explained": "boolean",
                "trace": {"start": ladder(), "result": ladder(), "distance": distance(), "steps": {"type": "array", "items": step()}},
            },
            "canonical": {"ladder": ladder(), "canonical": ladder(), "applied_rotation_v": "integer", "applied_rotation_w": "integer", "text": "string"},
            "batch": "one analyze report per *.ladder file, in file name order",
        }
    })
}
