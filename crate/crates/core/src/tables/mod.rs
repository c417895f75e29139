//! Brute-force table engines.
//!
//! All engines use the inverse-free systems, so they accept non-permutations.
//! Entry functions count solutions straight from the defining equations in
//! O(2^n) (O(2^2n) for DBCT); the full-table engines in [`full`] group inputs
//! by derivative value and are cross-checked against the entry functions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::vecfun::VecFun;

pub mod entry;
pub mod export;
pub mod full;
pub mod inverse_based;
pub mod spectrum;

pub use entry::*;
pub use spectrum::{spectrum, DomainFilter, Spectrum, Sweep, SweptDomain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Ddt,
    Bct,
    Fbct,
    Dd,
    Ubct,
    Lbct,
    Ebct,
    Dbct,
}

impl TableKind {
    pub const ALL: [TableKind; 8] = [
        TableKind::Ddt,
        TableKind::Bct,
        TableKind::Fbct,
        TableKind::Dd,
        TableKind::Ubct,
        TableKind::Lbct,
        TableKind::Ebct,
        TableKind::Dbct,
    ];

    pub fn arity(self) -> usize {
        match self {
            TableKind::Ddt | TableKind::Bct | TableKind::Fbct | TableKind::Dbct => 2,
            TableKind::Dd | TableKind::Ubct | TableKind::Lbct => 3,
            TableKind::Ebct => 4,
        }
    }

    /// Names of the index coordinates, in order.
    pub fn index_names(self) -> &'static [&'static str] {
        match self {
            TableKind::Dbct => &["a", "d"],
            k => &["a", "b", "c", "d"][..k.arity()],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TableKind::Ddt => "ddt",
            TableKind::Bct => "bct",
            TableKind::Fbct => "fbct",
            TableKind::Dd => "dd",
            TableKind::Ubct => "ubct",
            TableKind::Lbct => "lbct",
            TableKind::Ebct => "ebct",
            TableKind::Dbct => "dbct",
        }
    }

    /// Largest n for which a full sweep is within the exhaustive budget.
    pub fn full_sweep_max_n(self) -> u32 {
        match self {
            TableKind::Ddt | TableKind::Bct | TableKind::Fbct => 12,
            TableKind::Dd | TableKind::Ubct | TableKind::Lbct | TableKind::Dbct => 8,
            TableKind::Ebct => 6,
        }
    }

    /// Rough cost of evaluating every entry one at a time.
    pub fn full_sweep_cost(self, n: u32) -> f64 {
        let per_entry = match self {
            TableKind::Dbct => 2f64.powi(2 * n as i32),
            _ => 2f64.powi(n as i32),
        };
        2f64.powi((self.arity() as u32 * n) as i32) * per_entry
    }

    /// Tuples that are excluded when the kind's uniformity is taken.
    pub fn is_nontrivial(self, idx: &[Elem]) -> bool {
        match self {
            TableKind::Ddt => idx[0] != 0,
            TableKind::Fbct | TableKind::Dd => idx[0] != 0 && idx[1] != 0 && idx[0] != idx[1],
            _ => idx.iter().all(|&v| v != 0),
        }
    }

    pub fn check_arity(self, idx: &[Elem]) -> Result<()> {
        if idx.len() != self.arity() {
            Err(Error::Arity {
                kind: self,
                expected: self.arity(),
                got: idx.len(),
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name().to_uppercase())
    }
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown table kind {s:?}")))
    }
}

/// How UBCT solutions are counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Counting {
    /// Each X counted once when some Y completes the system.
    #[default]
    Distinct,
    /// Every (X, Y) pair counted. Experimental; no invariant relies on it.
    Pairs,
}

/// Entry of any table under the default counting convention.
pub fn entry(f: &VecFun, kind: TableKind, idx: &[Elem]) -> Result<u64> {
    entry_with(f, kind, idx, Counting::Distinct)
}

pub fn entry_with(f: &VecFun, kind: TableKind, idx: &[Elem], counting: Counting) -> Result<u64> {
    kind.check_arity(idx)?;
    for &v in idx {
        f.field().check(u64::from(v))?;
    }
    Ok(entry_unchecked(f, kind, idx, counting))
}

pub(crate) fn entry_unchecked(f: &VecFun, kind: TableKind, idx: &[Elem], counting: Counting) -> u64 {
    match kind {
        TableKind::Ddt => ddt_entry(f, idx[0], idx[1]),
        TableKind::Bct => bct_entry(f, idx[0], idx[1]),
        TableKind::Fbct => fbct_entry(f, idx[0], idx[1]),
        TableKind::Dd => dd_entry(f, idx[0], idx[1], idx[2]),
        TableKind::Ubct => match counting {
            Counting::Distinct => ubct_entry(f, idx[0], idx[1], idx[2]),
            Counting::Pairs => ubct_pairs_entry(f, idx[0], idx[1], idx[2]),
        },
        TableKind::Lbct => lbct_entry(f, idx[0], idx[1], idx[2]),
        TableKind::Ebct => ebct_entry(f, idx[0], idx[1], idx[2], idx[3]),
        TableKind::Dbct => dbct_entry(f, idx[0], idx[1]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_parsing_and_arity() {
        for k in TableKind::ALL {
            assert_eq!(k.name().parse::<TableKind>().unwrap(), k);
            assert_eq!(k.index_names().len(), k.arity());
        }
        assert!("xyz".parse::<TableKind>().is_err());
        assert_eq!("EBCT".parse::<TableKind>().unwrap().arity(), 4);
        assert!(TableKind::Dbct.check_arity(&[1, 2, 3]).is_err());
    }
}
