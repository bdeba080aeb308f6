//! Fan file format: a JSON object with integer fields only.
//!
//! ```json
//! {"dim": 2, "rays": [[1,0],[0,1],[-1,0],[0,-1]],
//!  "max_cones": [[0,1],[1,2],[2,3],[3,0]], "name": "p1xp1"}
//! ```
//!
//! Integers are read bit-exactly at arbitrary precision; floats are rejected.

use std::path::Path;
use std::str::FromStr;

use serde_json::Value;

use immaculatum::fan::StackyFan;
use immaculatum::Int;

pub fn read_fan_file(path: &Path) -> Result<StackyFan, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_fan_json(&text)
}

pub fn parse_fan_json(text: &str) -> Result<StackyFan, String> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let obj = value.as_object().ok_or("fan file must be a JSON object")?;

    let dim = integer_field(obj.get("dim").ok_or("missing field \"dim\"")?)?;
    let dim = usize::try_from(&dim).map_err(|_| "\"dim\" must be a small nonnegative integer")?;

    let rays_value = obj.get("rays").ok_or("missing field \"rays\"")?;
    let rays = rays_value
        .as_array()
        .ok_or("\"rays\" must be an array of integer arrays")?
        .iter()
        .map(|ray| {
            ray.as_array()
                .ok_or_else(|| "each ray must be an integer array".to_string())?
                .iter()
                .map(integer_field)
                .collect::<Result<Vec<Int>, String>>()
        })
        .collect::<Result<Vec<Vec<Int>>, String>>()?;

    let cones_value = obj.get("max_cones").ok_or("missing field \"max_cones\"")?;
    let max_cones = cones_value
        .as_array()
        .ok_or("\"max_cones\" must be an array of index arrays")?
        .iter()
        .map(|cone| {
            cone.as_array()
                .ok_or_else(|| "each maximal cone must be an index array".to_string())?
                .iter()
                .map(|v| {
                    let i = integer_field(v)?;
                    usize::try_from(&i).map_err(|_| "cone indices must be nonnegative".to_string())
                })
                .collect::<Result<Vec<usize>, String>>()
        })
        .collect::<Result<Vec<Vec<usize>>, String>>()?;

    let name = match obj.get("name") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err("\"name\" must be a string".into()),
    };

    for key in obj.keys() {
        if !matches!(key.as_str(), "dim" | "rays" | "max_cones" | "name") {
            return Err(format!("unknown field {key:?} in fan file"));
        }
    }

    StackyFan::new(dim, rays, max_cones, name).map_err(|e| e.to_string())
}

fn integer_field(v: &Value) -> Result<Int, String> {
    let Value::Number(n) = v else {
        return Err(format!("expected an integer, found {v}"));
    };
    let token = n.to_string();
    if token.contains(['.', 'e', 'E']) {
        return Err(format!("floats are not accepted: {token}"));
    }
    Int::from_str(&token).map_err(|e| format!("invalid integer {token}: {e}"))
}
