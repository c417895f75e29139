//! CSV and JSON renderings of spectra and table entries.
//!
//! Formats are described in `docs/formats.md`.

use serde_json::{json, Value};

use super::{Spectrum, SweptDomain, TableKind};
use crate::field::Elem;

fn hex(v: u64) -> String {
    format!("{v:#x}")
}

fn domain_json(d: &SweptDomain) -> Value {
    serde_json::to_value(d).expect("plain data")
}

/// `value,count` rows in increasing value order.
pub fn spectrum_csv(s: &Spectrum) -> String {
    let mut out = String::from("value,count\n");
    for (v, c) in &s.histogram {
        out.push_str(&format!("{v},{c}\n"));
    }
    out
}

pub fn spectrum_json(s: &Spectrum, modulus: u64) -> Value {
    json!({
        "kind": s.kind.name(),
        "n": s.n,
        "modulus": hex(modulus),
        "indices-order": s.kind.index_names(),
        "domain": domain_json(&s.domain),
        "max_nontrivial": s.max_nontrivial,
        "histogram": s.histogram.iter().map(|(v, c)| json!([v, c])).collect::<Vec<_>>(),
    })
}

/// Header naming the index coordinates, then one row per entry; indices in `0x` hex.
pub fn entries_csv<'a>(kind: TableKind, rows: impl IntoIterator<Item = (&'a [Elem], u64)>) -> String {
    let mut out = kind.index_names().join(",");
    out.push_str(",value\n");
    for (idx, v) in rows {
        for i in idx {
            out.push_str(&hex(u64::from(*i)));
            out.push(',');
        }
        out.push_str(&format!("{v}\n"));
    }
    out
}

pub fn entries_json<'a>(
    kind: TableKind,
    n: u32,
    modulus: u64,
    rows: impl IntoIterator<Item = (&'a [Elem], u64)>,
) -> Value {
    let entries: Vec<Value> = rows
        .into_iter()
        .map(|(idx, v)| {
            let mut row: Vec<Value> = idx.iter().map(|&i| json!(i)).collect();
            row.push(json!(v));
            Value::Array(row)
        })
        .collect();
    json!({
        "kind": kind.name(),
        "n": n,
        "modulus": hex(modulus),
        "indices-order": kind.index_names(),
        "entries": entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::tables::{spectrum, DomainFilter, Sweep};
    use crate::vecfun::VecFun;
    use std::sync::Arc;

    #[test]
    fn formats() {
        let f = VecFun::gold(Arc::new(FieldCtx::new(3, None).unwrap()), 1);
        let s = spectrum(&f, TableKind::Ddt, DomainFilter::All, Sweep::Full).unwrap();
        assert_eq!(spectrum_csv(&s), "value,count\n0,35\n2,28\n8,1\n");
        let j = spectrum_json(&s, f.field().modulus());
        assert_eq!(j["modulus"], "0xb");
        assert_eq!(j["indices-order"], json!(["a", "b"]));
        assert_eq!(j["histogram"][2], json!([8, 1]));
        assert_eq!(j["domain"], json!({"mode": "full", "filter": "all"}));

        let rows: Vec<(Vec<Elem>, u64)> = vec![(vec![1, 2, 3], 4)];
        let csv = entries_csv(TableKind::Ubct, rows.iter().map(|(i, v)| (i.as_slice(), *v)));
        assert_eq!(csv, "a,b,c,value\n0x1,0x2,0x3,4\n");
        let j = entries_json(TableKind::Ubct, 3, 0xb, rows.iter().map(|(i, v)| (i.as_slice(), *v)));
        assert_eq!(j["entries"], json!([[1, 2, 3, 4]]));
    }
}
