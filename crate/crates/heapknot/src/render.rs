//! JSON and text rendering of results. Object keys are sorted, so output is
//! byte-stable.

use heapknot_core::algebra::FiniteGroup;
use heapknot_core::coloring::{classify, Coloring, ComponentColor};
use heapknot_core::fundamental_heap::{FreeWord, Presentation};
use heapknot_core::link_model::FramedLink;
use heapknot_core::linalg::AbelianGroup;
use heapknot_core::state_sum::InvariantValue;
use heapknot_core::tsd_complex::Cochain2;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

/// An exact integer: a JSON number when it fits in 64 bits, else a string.
pub fn int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

/// `{rank, torsion}` of a finitely generated abelian group.
pub fn abelian(g: &AbelianGroup) -> Value {
    json!({
        "rank": g.free_rank,
        "torsion": g.torsion.iter().map(int).collect::<Vec<_>>(),
        "text": g.to_string(),
    })
}

/// Nonzero values of a cochain as `[x, y, z, value]` rows with element names.
pub fn cochain(g: &FiniteGroup, c: &Cochain2) -> Value {
    let rows: Vec<Value> = c
        .support()
        .into_iter()
        .map(|[x, y, z]| json!([g.name(x), g.name(y), g.name(z), int(c.get(x, y, z))]))
        .collect();
    Value::Array(rows)
}

/// Invariant value as a multiset of per-component weight pairs.
pub fn invariant(v: &InvariantValue) -> Value {
    let terms: Vec<Value> = v
        .terms()
        .iter()
        .map(|(key, mult)| {
            let key: Vec<Value> = key.iter().map(|(a, b)| json!([int(a), int(b)])).collect();
            json!({ "key": key, "mult": mult })
        })
        .collect();
    json!({
        "coefficients": v.coefficients().to_string(),
        "components": v.components(),
        "total": v.total(),
        "terms": terms,
        "text": v.to_string(),
    })
}

/// A word as `[symbol, exponent]` runs.
pub fn word(w: &FreeWord) -> Value {
    Value::Array(w.runs().iter().map(|&(s, e)| json!([s, e])).collect())
}

/// `{generators, relators, relator_text}`.
pub fn presentation(p: &Presentation) -> Value {
    json!({
        "generators": p.generators,
        "relators": p.relators.iter().map(word).collect::<Vec<_>>(),
        "relator_text": p.relator_strings(),
    })
}

/// One coloring: top labels per strand and the mono/bicolor flags.
pub fn coloring(g: &FiniteGroup, link: &FramedLink, c: &Coloring) -> Value {
    let top: Vec<Value> = c.initial.iter().map(|&(p, q)| json!([g.name(p), g.name(q)])).collect();
    let flags: Vec<&str> = classify(link, c)
        .into_iter()
        .map(|f| match f {
            ComponentColor::Monochromatic => "mono",
            ComponentColor::Bicolored => "bi",
        })
        .collect();
    json!({ "top": top, "components": flags })
}

/// Human-readable rendering of a JSON value: one `key: value` line per
/// top-level field, nested values compact.
pub fn text(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let mut out = String::new();
            for (k, val) in map {
                let shown = match val {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!("{k}: {shown}\n"));
            }
            out
        }
        Value::String(s) => format!("{s}\n"),
        other => format!("{other}\n"),
    }
}
