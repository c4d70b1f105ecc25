//! JSON and CSV encodings. Every JSON document carries `"schema": "angulon/1"`.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::diffmat::{DiagonalSimilarity, OperatorMatrix};
use crate::error::{Error, Result};
use crate::lsquared::{LSquaredOperator, LabeledSpectrum};
use crate::matrix::Matrix;
use crate::nodes::{NodeKind, NodeSet};
use crate::rotations::{LzEigensystem, RotationGenerator};
use crate::scalar::{Real, Scalar};
use crate::tensor::KronOperator;

pub const SCHEMA: &str = "angulon/1";

fn num<T: Real>(x: T) -> Value {
    json!(x.as_f64())
}

fn reals<T: Real>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

/// Wraps `body` (an object) with the schema tag and a document kind.
pub fn document(kind: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(SCHEMA));
    map.insert("kind".into(), json!(kind));
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    Value::Object(map)
}

pub fn node_set_to_json<T: Real>(nodes: &NodeSet<T>) -> Value {
    json!({ "kind": nodes.kind().as_str(), "points": reals(nodes.points()) })
}

pub fn node_set_from_json(value: &Value) -> Result<NodeSet<f64>> {
    let bad = |what: &str| Error::InvalidArgument(format!("node set JSON: {what}"));
    let kind = value
        .get("kind")
        .and_then(Value::as_str)
        .and_then(NodeKind::parse)
        .ok_or_else(|| bad("missing or unknown \"kind\""))?;
    let points = value
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"points\""))?
        .iter()
        .map(|p| p.as_f64().ok_or_else(|| bad("non-numeric point")))
        .collect::<Result<Vec<f64>>>()?;
    NodeSet::new(points, kind)
}

/// Entries as `[[[re, im], …], …]`; real matrices store `im = 0`.
pub fn matrix_to_json<S: Scalar>(m: &Matrix<S>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|&x| json!([x.re().as_f64(), x.im().as_f64()]))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn similarity_to_json<T: Real>(sim: &DiagonalSimilarity<T>) -> Value {
    json!({ "log_magnitude": reals(sim.log_magnitude()), "sign": reals(sim.signs()) })
}

pub fn operator_to_json<S: Scalar>(op: &OperatorMatrix<S>) -> Value {
    let e = op.exactness();
    let mut v = json!({
        "nodes": node_set_to_json(op.nodes()),
        "exactness": { "class": e.class_name(), "degree": e.degree() },
        "entries": matrix_to_json(op.entries()),
    });
    if let Some(sim) = op.similarity() {
        v["similarity"] = similarity_to_json(sim);
    }
    v
}

pub fn kron_to_json<S: Scalar>(op: &KronOperator<S>) -> Value {
    json!({
        "nodes": op.grid().axes().iter().map(node_set_to_json).collect::<Vec<_>>(),
        "entries": matrix_to_json(op.entries()),
        "factors": op.factors().iter().map(|f| json!({ "axis": f.axis, "label": f.label })).collect::<Vec<_>>(),
    })
}

pub fn rotation_to_json<T: Real>(gen: &RotationGenerator<T>, eig: &LzEigensystem<T>) -> Value {
    json!({
        "n": gen.n,
        "parity": gen.parity.as_str(),
        "epsilon": num(gen.epsilon),
        "delta": operator_to_json(&gen.delta),
        "a": operator_to_json(&gen.a_matrix),
        "lz": operator_to_json(&gen.lz),
        "eigenvalues": reals(&eig.eigenvalues),
        "eigenvectors": matrix_to_json(&eig.eigenvectors),
        "phi_nodes": node_set_to_json(&eig.phi_nodes),
        "residuals": reals(&eig.residuals(gen.lz.entries())),
    })
}

pub fn spectrum_to_json<T: Real>(op: &LSquaredOperator<T>, spec: &LabeledSpectrum<T>) -> Value {
    let clusters: Vec<Value> = spec
        .clusters
        .iter()
        .zip(&spec.match_report)
        .zip(&spec.eigenvectors)
        .map(|((c, r), vecs)| {
            json!({
                "value": num(c.value),
                "multiplicity": c.multiplicity,
                "n_label": c.n_label,
                "start": c.start,
                "max_subspace_residual": r.map(|r| r.as_f64()),
                "eigenvectors": matrix_to_json(vecs),
            })
        })
        .collect();
    json!({
        "variant": op.variant.as_str(),
        "n_theta": op.theta_nodes.count(),
        "m_phi": op.m_phi,
        "exact_count": spec.exact_count,
        "symmetrized": op.symmetrizable(),
        "theta_nodes": node_set_to_json(&op.theta_nodes),
        "phi_nodes": node_set_to_json(&op.phi_nodes),
        "eigenvalues": reals(&spec.eigenvalues),
        "azimuthal": spec.azimuthal,
        "max_imag": num(spec.max_imag),
        "clusters": clusters,
        "warnings": op.warnings,
    })
}

pub const CSV_HEADER: &str = "index,value,multiplicity,n_label,max_subspace_residual";

fn sci<T: Real>(x: T) -> String {
    format!("{:.16e}", x.as_f64())
}

/// One row per eigenvalue, ascending; the cluster fields repeat across a cluster.
pub fn spectrum_to_csv<T: Real>(spec: &LabeledSpectrum<T>) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    let owner = spec.cluster_of();
    for (i, &v) in spec.eigenvalues.iter().enumerate() {
        let c = &spec.clusters[owner[i]];
        let label = c.n_label.map(|n| n.to_string()).unwrap_or_default();
        let residual = spec.match_report[owner[i]].map(sci).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{},{}", i + 1, sci(v), c.multiplicity, label, residual);
    }
    out
}

/// Pretty-printed text with a trailing newline.
pub fn to_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffmat::trig_diff_matrix;
    use crate::lsquared::{assemble_l2, labeled_spectrum};
    use crate::nodes::{equidistant_nodes, solve_theta_nodes};
    use crate::rotations::{build_rotation_generator, lz_eigensystem};
    use crate::tensor::{lift, TensorGrid};
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn node_sets_round_trip(mut xs in proptest::collection::vec(-1e3f64..1e3, 1..12)) {
            xs.sort_by(f64::total_cmp);
            xs.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
            let nodes = NodeSet::general(xs).unwrap();
            let text = serde_json::to_string(&node_set_to_json(&nodes)).unwrap();
            let back = node_set_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            prop_assert_eq!(back, nodes);
        }
    }

    #[test]
    fn node_set_shape() {
        let v = node_set_to_json(&equidistant_nodes::<f64>(3).unwrap());
        assert_eq!(v["kind"], "periodic");
        assert_eq!(v["points"].as_array().unwrap().len(), 3);
        assert!(node_set_from_json(&json!({"kind": "weird", "points": [1.0]})).is_err());
        assert!(node_set_from_json(&json!({"kind": "general", "points": [2.0, 1.0]})).is_err());
    }

    #[test]
    fn operator_shape() {
        let op = trig_diff_matrix(&equidistant_nodes::<f64>(3).unwrap()).unwrap();
        let v = document("diffmat", operator_to_json(&op));
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["exactness"]["class"], "trigonometric");
        assert_eq!(v["exactness"]["degree"], 1);
        assert_eq!(v["entries"][0][1][1], 0.0);
        assert_eq!(v["entries"][0][1][0], op.entries()[(0, 1)]);
        assert_eq!(v["similarity"]["sign"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn kron_has_factors() {
        let nodes = equidistant_nodes::<f64>(3).unwrap();
        let g = TensorGrid::new(vec![nodes.clone(), nodes.clone()]).unwrap();
        let op = lift(&trig_diff_matrix(&nodes).unwrap(), 1, &g).unwrap();
        let v = kron_to_json(&op);
        assert_eq!(v["factors"][0]["axis"], 1);
        assert_eq!(v["factors"][0]["label"], "trigonometric(1)");
        assert_eq!(v["entries"].as_array().unwrap().len(), 9);
    }

    #[test]
    fn lz_eigenvalues() {
        let v = rotation_to_json(&build_rotation_generator::<f64>(5).unwrap(), &lz_eigensystem(5).unwrap());
        assert_eq!(v["eigenvalues"], json!([-2.0, -1.0, 0.0, 1.0, 2.0]));
        assert_eq!(v["parity"], "odd");
    }

    #[test]
    fn csv_rows() {
        let op = assemble_l2(&solve_theta_nodes::<f64>(5, 1e-12).unwrap(), 5).unwrap();
        let spec = labeled_spectrum(&op, 1e-8).unwrap();
        let csv = spectrum_to_csv(&spec);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 26);
        let want = [0.0, 2.0, 2.0, 2.0, 6.0, 6.0, 6.0, 6.0, 6.0];
        for (line, w) in lines[1..10].iter().zip(want) {
            let cols: Vec<&str> = line.split(',').collect();
            assert_eq!(cols.len(), 5);
            let v: f64 = cols[1].parse().unwrap();
            assert!((v - w).abs() < 1e-8 * w.max(1.0));
            assert!(!cols[3].is_empty());
        }
        let json = spectrum_to_json(&op, &spec);
        assert_eq!(json["exact_count"], 9);
        assert_eq!(json["variant"], "eq30");
    }
}
