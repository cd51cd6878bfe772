//! JSON formats. Rationals are strings `"p/q"` (or `"p"`); facets are never read
//! from files, only recomputed.

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::classifier::{Detail, StepKind, Structure, XcResult, XcValue};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, Rational};
use crate::oracle::{ExtensionCertificate, SlackMatrix, Target};
use crate::polytope::{hull, PointConfig, Polytope};

#[derive(Deserialize)]
struct PolytopeFile {
    dim: usize,
    vertices: Vec<Vec<Value>>,
    labels: Option<Vec<String>>,
}

fn malformed_json(e: serde_json::Error) -> Error {
    Error::Invalid(format!("malformed JSON: {e}"))
}

fn rational_of(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => parse_rational(&n.to_string()),
        other => Err(Error::MalformedRational(other.to_string())),
    }
}

fn rationals(v: &[Value]) -> Result<Vec<Rational>> {
    v.iter().map(rational_of).collect()
}

fn strings(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_rational(x))).collect())
}

fn points_from(rows: &[Vec<Value>], labels: Option<Vec<String>>) -> Result<PointConfig> {
    let pts = rows.iter().map(|r| rationals(r)).collect::<Result<Vec<_>>>()?;
    match labels {
        Some(l) => PointConfig::with_labels(pts, l),
        None => PointConfig::new(pts),
    }
}

pub fn polytope_from_value(v: Value) -> Result<Polytope> {
    let file: PolytopeFile = serde_json::from_value(v).map_err(malformed_json)?;
    let p = hull(&points_from(&file.vertices, file.labels)?)?;
    if p.dim() != file.dim {
        return Err(Error::DimensionMismatch(format!(
            "declared dimension {} but the vertices span dimension {}",
            file.dim,
            p.dim()
        )));
    }
    Ok(p)
}

pub fn polytope_from_json(text: &str) -> Result<Polytope> {
    polytope_from_value(serde_json::from_str(text).map_err(malformed_json)?)
}

pub fn polytope_to_json(p: &Polytope) -> Value {
    json!({
        "dim": p.dim(),
        "vertices": p.vertices().iter().map(|v| strings(v)).collect::<Vec<_>>(),
        "labels": p.labels(),
    })
}

fn target_str(t: Target) -> &'static str {
    match t {
        Target::Primal => "primal",
        Target::Polar => "polar",
    }
}

pub fn extension_to_json(e: &ExtensionCertificate) -> Value {
    json!({
        "target": target_str(e.target),
        "keep": e.keep,
        "facet_count": e.q.n_facets(),
        "vertices": e.q.vertices().iter().map(|v| strings(v)).collect::<Vec<_>>(),
    })
}

#[derive(Deserialize)]
struct ExtensionFile {
    target: Target,
    keep: usize,
    vertices: Vec<Vec<Value>>,
}

/// Accepts a bare extension object or a whole classification result.
pub fn extension_from_json(text: &str) -> Result<ExtensionCertificate> {
    let mut v: Value = serde_json::from_str(text).map_err(malformed_json)?;
    if let Some(ext) = v.pointer("/certificate/extension") {
        v = ext.clone();
    }
    let file: ExtensionFile = serde_json::from_value(v).map_err(malformed_json)?;
    let q = hull(&points_from(&file.vertices, None)?)?;
    Ok(ExtensionCertificate { target: file.target, keep: file.keep, q })
}

fn value_json(v: &XcValue) -> Value {
    match v {
        XcValue::Exact(x) => json!(x),
        XcValue::Interval { lo, hi } => json!({ "lo": lo, "hi": hi }),
    }
}

fn detail_json(d: &Detail, out: &mut Map<String, Value>) {
    match d {
        Detail::Counts => {}
        Detail::Desarguian { k, hexagon, witness, heights } => {
            out.insert("k".into(), json!(k));
            out.insert("hexagon".into(), json!(hexagon));
            out.insert(
                "witness".into(),
                json!({
                    "rotation": witness.rotation,
                    "reflected": witness.reflected,
                    "point": strings(witness.point.coords()),
                }),
            );
            out.insert("heights".into(), strings(heights));
        }
        Detail::Prism { labels } => {
            out.insert("prism".into(), json!(labels));
        }
        Detail::Exhaustion { hexagon_base, labelings_tried, search } => {
            out.insert(
                "exhaustion".into(),
                json!({
                    "hexagon_base": hexagon_base,
                    "labelings_tried": labelings_tried,
                    "subsets_examined": search.subsets,
                    "rank_three_subsets": search.rank_three,
                }),
            );
        }
        Detail::Interval { cover_bound } => {
            out.insert("cover_bound".into(), json!(cover_bound));
        }
    }
}

pub fn xc_result_to_json(r: &XcResult) -> Value {
    let mut cert = Map::new();
    cert.insert("n".into(), json!(r.certificate.n));
    cert.insert("m".into(), json!(r.certificate.m));
    cert.insert("via_polar".into(), json!(r.certificate.analysed == Target::Polar));
    detail_json(&r.certificate.detail, &mut cert);
    cert.insert("extension".into(), extension_to_json(&r.certificate.extension));
    json!({
        "xc": value_json(&r.value),
        "case": r.case.as_str(),
        "certificate": Value::Object(cert),
    })
}

pub fn structure_to_json(s: &Structure) -> Value {
    match s {
        Structure::Join { prism, k, n, m } => json!({ "form": "join", "prism": prism, "k": k, "n": n, "m": m }),
        Structure::Chain { prism, apexes, steps, extra_point } => json!({
            "form": "chain",
            "prism": prism,
            "apexes": apexes,
            "steps": steps.iter().map(|st| json!({
                "kind": match st.kind { StepKind::Lawrence => "lawrence", StepKind::OnePointSuspension => "one_point_suspension" },
                "pair": st.pair,
                "point": strings(&st.point),
            })).collect::<Vec<_>>(),
            "extra_point": strings(extra_point),
        }),
    }
}

pub fn slack_to_json(s: &SlackMatrix) -> Value {
    Value::Array(s.entries().iter().map(|r| strings(r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::classify_xc;
    use crate::constructors::{prism, regular_hexagon};

    #[test]
    fn polytope_round_trip() {
        let p = prism();
        let text = polytope_to_json(&p).to_string();
        let q = polytope_from_json(&text).unwrap();
        assert_eq!(q.vertices(), p.vertices());
        assert_eq!(q.labels(), p.labels());
    }

    #[test]
    fn malformed_inputs_name_the_token() {
        let e = polytope_from_json(r#"{"dim":2,"vertices":[["0","0"],["1","x/2"],["0","1"]]}"#).unwrap_err();
        assert_eq!(e, Error::MalformedRational("x/2".into()));
        assert!(e.to_string().contains("x/2"));
        let e = polytope_from_json(r#"{"dim":2,"vertices":[["0","0"],["1",0.5],["0","1"]]}"#).unwrap_err();
        assert_eq!(e, Error::MalformedRational("0.5".into()));
        assert!(matches!(polytope_from_json("{"), Err(Error::Invalid(_))));
        assert!(matches!(
            polytope_from_json(r#"{"dim":3,"vertices":[["0","0"],["1","0"],["0","1"]]}"#),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn result_json_shape() {
        let r = classify_xc(&regular_hexagon()).unwrap();
        let v = xc_result_to_json(&r);
        assert_eq!(v["xc"], json!(5));
        assert_eq!(v["case"], json!("desarguian_pyramid"));
        assert_eq!(v["certificate"]["extension"]["facet_count"], json!(5));
        let ext = extension_from_json(&v.to_string()).unwrap();
        assert_eq!(ext.q.n_facets(), 5);
    }
}
