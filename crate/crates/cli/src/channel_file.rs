//! Fixed-channel JSON files. Complex numbers are `[re, im]` pairs, vectors
//! are arrays of pairs and matrices are arrays of rows.
//!
//! ```json
//! {"scenario": "siso_siso", "h12": [3.0, 0.0], "h13": [0.5, -0.1], ...}
//! ```
//!
//! The scenario key is optional; the shapes of `h12` and `h24` determine
//! it. An `eval` output document is accepted too, through its `channel` key.

use std::path::Path;

use cogradio_core::channel::{ChannelRealization, MimoChannel, MisoChannel, Scenario, SisoChannel};
use cogradio_core::cxla::{CxMatrix, CxVector};
use cogradio_core::Complex64;
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("channel {field}: {message}")]
pub struct ChannelFileError {
    pub field: String,
    pub message: String,
}

fn error(field: &str, message: impl Into<String>) -> ChannelFileError {
    ChannelFileError {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Scalar,
    Vector,
    Matrix,
}

fn shape(v: &Value) -> Option<Shape> {
    let arr = v.as_array()?;
    match arr.first() {
        Some(Value::Number(_)) => Some(Shape::Scalar),
        Some(Value::Array(inner)) => match inner.first() {
            Some(Value::Number(_)) => Some(Shape::Vector),
            Some(Value::Array(_)) => Some(Shape::Matrix),
            _ => None,
        },
        _ => None,
    }
}

fn scalar(v: &Value, field: &str) -> Result<Complex64, ChannelFileError> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| error(field, "expected [re, im]"))?;
    let part = |x: &Value| {
        x.as_f64()
            .filter(|f| f.is_finite())
            .ok_or_else(|| error(field, "entries must be finite numbers"))
    };
    Ok(Complex64::new(part(&pair[0])?, part(&pair[1])?))
}

fn vector(v: &Value, field: &str) -> Result<CxVector, ChannelFileError> {
    let arr = v
        .as_array()
        .filter(|a| !a.is_empty())
        .ok_or_else(|| error(field, "expected a non-empty array of [re, im] pairs"))?;
    let entries = arr
        .iter()
        .map(|x| scalar(x, field))
        .collect::<Result<Vec<_>, _>>()?;
    CxVector::new(entries).map_err(|e| error(field, e.to_string()))
}

fn matrix(v: &Value, field: &str) -> Result<CxMatrix, ChannelFileError> {
    let rows = v
        .as_array()
        .filter(|a| !a.is_empty())
        .ok_or_else(|| error(field, "expected a non-empty array of rows"))?;
    let rows = rows
        .iter()
        .map(|r| vector(r, field))
        .collect::<Result<Vec<_>, _>>()?;
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(error(field, "rows differ in length"));
    }
    let n = rows.len();
    let data = rows.into_iter().flat_map(CxVector::into_entries).collect();
    CxMatrix::new(n, cols, data).map_err(|e| error(field, e.to_string()))
}

pub fn parse_channel(doc: &Value) -> Result<ChannelRealization, ChannelFileError> {
    let obj = doc
        .as_object()
        .ok_or_else(|| error("document", "expected a JSON object"))?;
    let obj = match obj.get("channel") {
        Some(Value::Object(inner)) => inner,
        Some(_) => return Err(error("channel", "expected an object")),
        None => obj,
    };
    const KEYS: [&str; 6] = ["scenario", "h12", "h13", "h14", "h23", "h24"];
    if let Some(extra) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(error(extra, "unknown key"));
    }
    let get = |k: &str| obj.get(k).ok_or_else(|| error(k, "missing"));

    let inferred = match (shape(get("h12")?), shape(get("h24")?)) {
        (Some(Shape::Scalar), Some(Shape::Scalar)) => Scenario::SisoSiso,
        (Some(Shape::Matrix), Some(Shape::Vector)) => Scenario::MisoMiso,
        (Some(Shape::Vector), Some(Shape::Matrix)) => Scenario::SisoMimo,
        _ => {
            return Err(error(
                "h12/h24",
                "shapes match no scenario (scalar/scalar, matrix/vector or vector/matrix)",
            ))
        }
    };
    if let Some(declared) = obj.get("scenario") {
        let name = declared
            .as_str()
            .ok_or_else(|| error("scenario", "expected a string"))?;
        let declared = Scenario::parse(name)
            .ok_or_else(|| error("scenario", format!("unknown scenario {name:?}")))?;
        if declared != inferred {
            return Err(error(
                "scenario",
                format!("declared {declared} but the shapes describe {inferred}"),
            ));
        }
    }

    let ch = match inferred {
        Scenario::SisoSiso => ChannelRealization::SisoSiso(SisoChannel {
            h12: scalar(get("h12")?, "h12")?,
            h13: scalar(get("h13")?, "h13")?,
            h14: scalar(get("h14")?, "h14")?,
            h23: scalar(get("h23")?, "h23")?,
            h24: scalar(get("h24")?, "h24")?,
        }),
        Scenario::MisoMiso => ChannelRealization::MisoMiso(MisoChannel {
            h12: matrix(get("h12")?, "h12")?,
            h13: vector(get("h13")?, "h13")?,
            h14: vector(get("h14")?, "h14")?,
            h23: vector(get("h23")?, "h23")?,
            h24: vector(get("h24")?, "h24")?,
        }),
        Scenario::SisoMimo => ChannelRealization::SisoMimo(MimoChannel {
            h12: vector(get("h12")?, "h12")?,
            h13: scalar(get("h13")?, "h13")?,
            h14: vector(get("h14")?, "h14")?,
            h23: vector(get("h23")?, "h23")?,
            h24: matrix(get("h24")?, "h24")?,
        }),
    };
    ch.validate()
        .map_err(|e| error("dimensions", e.to_string()))?;
    Ok(ch)
}

pub fn load_channel(path: &Path) -> Result<ChannelRealization, ChannelFileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| error("file", format!("{}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| error("file", e.to_string()))?;
    parse_channel(&doc)
}

fn scalar_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn vector_json(v: &CxVector) -> Value {
    Value::Array(v.entries().iter().map(|&z| scalar_json(z)).collect())
}

fn matrix_json(m: &CxMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_json(&m.row(r))).collect())
}

/// Full-precision JSON form of a realization; [`parse_channel`] reads it
/// back bit for bit.
pub fn channel_to_json(ch: &ChannelRealization) -> Value {
    let mut obj = Map::new();
    obj.insert("scenario".into(), ch.scenario().name().into());
    let links: [(&str, Value); 5] = match ch {
        ChannelRealization::SisoSiso(c) => [
            ("h12", scalar_json(c.h12)),
            ("h13", scalar_json(c.h13)),
            ("h14", scalar_json(c.h14)),
            ("h23", scalar_json(c.h23)),
            ("h24", scalar_json(c.h24)),
        ],
        ChannelRealization::MisoMiso(c) => [
            ("h12", matrix_json(&c.h12)),
            ("h13", vector_json(&c.h13)),
            ("h14", vector_json(&c.h14)),
            ("h23", vector_json(&c.h23)),
            ("h24", vector_json(&c.h24)),
        ],
        ChannelRealization::SisoMimo(c) => [
            ("h12", vector_json(&c.h12)),
            ("h13", scalar_json(c.h13)),
            ("h14", vector_json(&c.h14)),
            ("h23", vector_json(&c.h23)),
            ("h24", matrix_json(&c.h24)),
        ],
    };
    for (k, v) in links {
        obj.insert(k.into(), v);
    }
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cogradio_core::channel::{sample_rayleigh, LinearTopology, Seed, SystemParams};

    #[test]
    fn round_trip_is_exact() {
        let topo = LinearTopology::from_spacing(0.1, 0.6, 1.0);
        for scenario in [Scenario::SisoSiso, Scenario::MisoMiso, Scenario::SisoMimo] {
            let params = SystemParams::new(0.1, 1.0, 1.0, 3).unwrap();
            let ch = sample_rayleigh(&topo, &params, scenario, Seed::new(2, 7)).unwrap();
            let text = serde_json::to_string(&channel_to_json(&ch)).unwrap();
            let back = parse_channel(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, ch);
        }
    }

    #[test]
    fn shape_errors_are_named() {
        let bad = json!({"h12": [1.0, 0.0], "h13": [1.0], "h14": [1.0, 0.0], "h23": [1.0, 0.0], "h24": [1.0, 0.0]});
        assert_eq!(parse_channel(&bad).unwrap_err().field, "h13");
        let mixed = json!({"h12": [[1.0, 0.0]], "h13": [1.0, 0.0], "h14": [1.0, 0.0], "h23": [1.0, 0.0], "h24": [1.0, 0.0]});
        assert_eq!(parse_channel(&mixed).unwrap_err().field, "h12/h24");
        let declared = json!({"scenario": "miso_miso", "h12": [1.0, 0.0], "h13": [1.0, 0.0], "h14": [1.0, 0.0], "h23": [1.0, 0.0], "h24": [1.0, 0.0]});
        assert_eq!(parse_channel(&declared).unwrap_err().field, "scenario");
        let missing = json!({"h12": [1.0, 0.0], "h24": [1.0, 0.0]});
        assert_eq!(parse_channel(&missing).unwrap_err().field, "h13");
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let doc = json!({
            "h12": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
            "h13": [[1.0, 0.0], [0.0, 0.0]],
            "h14": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
            "h23": [[1.0, 0.0], [0.0, 0.0]],
            "h24": [[1.0, 0.0], [0.0, 0.0]],
        });
        assert_eq!(parse_channel(&doc).unwrap_err().field, "dimensions");
    }
}
