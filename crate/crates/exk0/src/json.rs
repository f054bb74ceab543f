//! Canonical JSON views of results. Maps are emitted with sorted keys and
//! every array is built in a deterministic order, so identical inputs
//! produce byte-identical output across runs.
//!
//! Schema summary:
//! - integers: JSON numbers while they fit in 64 bits, decimal strings
//!   beyond that;
//! - objects: sorted `[label, multiplicity]` pairs;
//! - groups: `{"free_rank": r, "torsion": [d1, ...]}`;
//! - subgroups: `{"basis": [[column], ...], "index": k | null}` with the
//!   basis in column Hermite normal form.

use exk0_core::abgroup::{FinGenAbGroup, IntMatrix, Subgroup};
use exk0_core::catmodel::ObjectExpr;
use exk0_core::classify::{CompletenessReport, DensityReport, FgReport, GsWitness};
use exk0_core::grothendieck::GrothendieckGroup;
use num_bigint::BigInt;
use serde_json::{json, Value};

pub fn bigint(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn vector(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(bigint).collect())
}

/// Matrix as a list of columns.
pub fn matrix_columns(m: &IntMatrix) -> Value {
    Value::Array((0..m.cols()).map(|j| vector(&m.column(j))).collect())
}

pub fn object(obj: &ObjectExpr) -> Value {
    Value::Array(
        obj.iter()
            .map(|(id, mult)| json!([id.as_str(), mult]))
            .collect(),
    )
}

pub fn group(g: &FinGenAbGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "torsion": Value::Array(g.torsion().iter().map(bigint).collect()),
    })
}

pub fn subgroup(s: &Subgroup) -> Value {
    json!({
        "basis": matrix_columns(s.lattice_basis()),
        "index": s.quotient_order().as_ref().map(bigint).unwrap_or(Value::Null),
    })
}

pub fn k0(k: &GrothendieckGroup) -> Value {
    let pres = k.presentation();
    let mut classes = serde_json::Map::new();
    for id in &pres.indecs {
        let cls = k
            .class_of(&ObjectExpr::indec(id.clone()))
            .expect("declared indecomposable");
        let coords = k.group().project(&cls.0).expect("ambient class");
        classes.insert(id.as_str().to_string(), vector(&coords));
    }
    json!({
        "category": pres.name,
        "n": pres.n,
        "group": group(k.group()),
        "classes": Value::Object(classes),
    })
}

pub fn gs_witness(w: &GsWitness) -> Value {
    match w {
        GsWitness::Witness { s_a, s_b } => json!({
            "kind": "witness",
            "pad_a": object(s_a),
            "pad_b": object(s_b),
        }),
        GsWitness::DefiniteNegative => json!({"kind": "negative"}),
        GsWitness::BoundExhausted { bound } => json!({
            "kind": "exhausted",
            "bound": bound,
        }),
    }
}

pub fn density(report: &DensityReport) -> Value {
    json!({
        "passed": report.passed(),
        "entries": Value::Array(
            report
                .entries
                .iter()
                .map(|(id, complement, ok)| json!({
                    "indecomposable": id.as_str(),
                    "complement": object(complement),
                    "member": ok,
                }))
                .collect()
        ),
    })
}

pub fn completeness(report: &CompletenessReport) -> Value {
    json!({
        "passed": report.passed(),
        "checked": report.checked.len(),
        "violations": report.violations(),
    })
}

pub fn fg(report: &FgReport) -> Value {
    json!({
        "confirmed": report.confirmed.len(),
        "exhausted": report.exhausted.len(),
        "nonmembers": report.nonmembers.len(),
        "conclusive": report.conclusive(),
    })
}

/// Serializes with a trailing newline; sorted keys come from the
/// underlying map representation.
pub fn to_stdout_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}
