//! Value histograms over full or sampled index spaces.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{full, TableKind};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::sampling;
use crate::vecfun::VecFun;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainFilter {
    /// Every index tuple.
    All,
    /// Tuples whose coordinates are all nonzero.
    NonZero,
}

impl DomainFilter {
    fn admits(self, idx: &[Elem]) -> bool {
        match self {
            DomainFilter::All => true,
            DomainFilter::NonZero => idx.iter().all(|&v| v != 0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sweep {
    Full,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum SweptDomain {
    Full {
        filter: DomainFilter,
    },
    Sampled {
        filter: DomainFilter,
        samples: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub kind: TableKind,
    pub n: u32,
    pub domain: SweptDomain,
    /// value -> number of swept tuples with that value
    pub histogram: BTreeMap<u64, u64>,
    /// Largest value over swept tuples that pass [`TableKind::is_nontrivial`].
    pub max_nontrivial: Option<u64>,
}

impl Spectrum {
    pub fn total(&self) -> u64 {
        self.histogram.values().sum()
    }

    pub fn count(&self, value: u64) -> u64 {
        self.histogram.get(&value).copied().unwrap_or(0)
    }
}

struct Acc {
    kind: TableKind,
    filter: DomainFilter,
    histogram: BTreeMap<u64, u64>,
    max_nontrivial: Option<u64>,
}

impl Acc {
    fn new(kind: TableKind, filter: DomainFilter) -> Self {
        Acc {
            kind,
            filter,
            histogram: BTreeMap::new(),
            max_nontrivial: None,
        }
    }

    fn add(&mut self, idx: &[Elem], value: u64) {
        self.add_many(idx, value, 1);
    }

    fn add_many(&mut self, idx: &[Elem], value: u64, times: u64) {
        if !self.filter.admits(idx) {
            return;
        }
        *self.histogram.entry(value).or_insert(0) += times;
        if self.kind.is_nontrivial(idx) {
            self.max_nontrivial = Some(self.max_nontrivial.map_or(value, |m| m.max(value)));
        }
    }
}

/// Histogram of `kind` over the filtered index space.
///
/// Full sweeps are refused past [`TableKind::full_sweep_max_n`]; sampled sweeps
/// draw `samples` tuples from the filtered space (see [`crate::sampling`]).
pub fn spectrum(f: &VecFun, kind: TableKind, filter: DomainFilter, sweep: Sweep) -> Result<Spectrum> {
    let n = f.n();
    let (acc, domain) = match sweep {
        Sweep::Full => {
            if n > kind.full_sweep_max_n() {
                return Err(Error::BudgetExceeded {
                    kind,
                    n,
                    max_n: kind.full_sweep_max_n(),
                    estimated_ops: kind.full_sweep_cost(n),
                });
            }
            (full_sweep(f, kind, filter), SweptDomain::Full { filter })
        }
        Sweep::Sampled { samples, seed } => {
            let tuples = sampling::sample_tuples(n, kind.arity(), filter == DomainFilter::NonZero, samples, seed);
            let values: Vec<u64> = tuples
                .par_iter()
                .map(|t| super::entry_unchecked(f, kind, t, super::Counting::Distinct))
                .collect();
            let mut acc = Acc::new(kind, filter);
            for (t, v) in tuples.iter().zip(values) {
                acc.add(t, v);
            }
            (acc, SweptDomain::Sampled { filter, samples, seed })
        }
    };
    Ok(Spectrum {
        kind,
        n,
        domain,
        histogram: acc.histogram,
        max_nontrivial: acc.max_nontrivial,
    })
}

fn full_sweep(f: &VecFun, kind: TableKind, filter: DomainFilter) -> Acc {
    let n = f.n();
    let size = f.size() as Elem;
    let mask = size - 1;
    let mut acc = Acc::new(kind, filter);
    match kind {
        TableKind::Ddt | TableKind::Bct | TableKind::Fbct | TableKind::Dbct => {
            let t = match kind {
                TableKind::Ddt => full::ddt_table(f),
                TableKind::Bct => full::bct_table(f),
                TableKind::Fbct => full::fbct_table(f),
                _ => full::dbct_table(f),
            };
            for (i, &v) in t.data.iter().enumerate() {
                let i = i as Elem;
                acc.add(&[i >> n, i & mask], v);
            }
        }
        TableKind::Dd | TableKind::Ubct | TableKind::Lbct => {
            let t = match kind {
                TableKind::Dd => full::dd_table(f),
                TableKind::Ubct => full::ubct_table(f, super::Counting::Distinct),
                _ => full::lbct_table(f),
            };
            for (i, &v) in t.data.iter().enumerate() {
                let i = i as Elem;
                acc.add(&[i >> (2 * n), (i >> n) & mask, i & mask], u64::from(v));
            }
        }
        TableKind::Ebct => {
            let mut nonzero_in_domain = 0u64;
            let mut nontrivial_nonzero = 0u64;
            for (c, slice) in full::ebct_sparse(f).iter().enumerate() {
                for &(key, cnt) in slice {
                    let a = (key >> (2 * n)) as Elem;
                    let b = ((key >> n) as Elem) & mask;
                    let d = (key as Elem) & mask;
                    let idx = [a, b, c as Elem, d];
                    if filter.admits(&idx) {
                        nonzero_in_domain += 1;
                        if kind.is_nontrivial(&idx) {
                            nontrivial_nonzero += 1;
                        }
                    }
                    acc.add(&idx, u64::from(cnt));
                }
            }
            let side = match filter {
                DomainFilter::All => u64::from(size),
                DomainFilter::NonZero => u64::from(size) - 1,
            };
            let zeros = side.pow(4) - nonzero_in_domain;
            if zeros > 0 {
                *acc.histogram.entry(0).or_insert(0) += zeros;
            }
            if nontrivial_nonzero < (u64::from(size) - 1).pow(4) {
                acc.max_nontrivial = Some(acc.max_nontrivial.unwrap_or(0));
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use std::sync::Arc;

    fn ctx(n: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(n, None).unwrap())
    }

    #[test]
    fn totals_match_domain_size() {
        let f = VecFun::power(ctx(4), 7);
        for kind in TableKind::ALL {
            for filter in [DomainFilter::All, DomainFilter::NonZero] {
                let s = spectrum(&f, kind, filter, Sweep::Full).unwrap();
                let side: u64 = if filter == DomainFilter::All { 16 } else { 15 };
                assert_eq!(s.total(), side.pow(kind.arity() as u32), "{kind} {filter:?}");
            }
        }
    }

    #[test]
    fn ebct_sparse_spectrum_matches_entrywise_sweep() {
        let f = VecFun::polynomial(ctx(3), vec![0, 1, 0, 0, 0, 1]).unwrap();
        for filter in [DomainFilter::All, DomainFilter::NonZero] {
            let s = spectrum(&f, TableKind::Ebct, filter, Sweep::Full).unwrap();
            let mut acc = Acc::new(TableKind::Ebct, filter);
            for a in 0..8 {
                for b in 0..8 {
                    for c in 0..8 {
                        for d in 0..8 {
                            acc.add(&[a, b, c, d], super::super::entry::ebct_entry(&f, a, b, c, d));
                        }
                    }
                }
            }
            assert_eq!(s.histogram, acc.histogram);
            assert_eq!(s.max_nontrivial, acc.max_nontrivial);
        }
    }

    #[test]
    fn uniformities() {
        let f = VecFun::gold(ctx(5), 1);
        let ddt = spectrum(&f, TableKind::Ddt, DomainFilter::All, Sweep::Full).unwrap();
        assert_eq!(ddt.max_nontrivial, Some(2));
        let bct = spectrum(&f, TableKind::Bct, DomainFilter::All, Sweep::Full).unwrap();
        assert_eq!(bct.max_nontrivial, Some(2));
        // inverse: boomerang uniformity 4 for n = 2 mod 4 and 6 for n = 0 mod 4
        for (n, beta) in [(4, 6), (6, 4)] {
            let inv = VecFun::inverse_map(ctx(n));
            let ddt = spectrum(&inv, TableKind::Ddt, DomainFilter::All, Sweep::Full).unwrap();
            assert_eq!(ddt.max_nontrivial, Some(4));
            let bct = spectrum(&inv, TableKind::Bct, DomainFilter::All, Sweep::Full).unwrap();
            assert_eq!(bct.max_nontrivial, Some(beta));
        }
    }

    #[test]
    fn budget_refusal_and_sampling() {
        let f = VecFun::gold(ctx(7), 1);
        match spectrum(&f, TableKind::Ebct, DomainFilter::All, Sweep::Full) {
            Err(Error::BudgetExceeded { estimated_ops, .. }) => assert!(estimated_ops > 1e10),
            other => panic!("unexpected {other:?}"),
        }
        let sweep = Sweep::Sampled { samples: 500, seed: 9 };
        let s1 = spectrum(&f, TableKind::Ebct, DomainFilter::NonZero, sweep).unwrap();
        let s2 = spectrum(&f, TableKind::Ebct, DomainFilter::NonZero, sweep).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.total(), 500);
    }
}
