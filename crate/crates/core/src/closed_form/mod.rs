//! Closed-form predictions for boomerang table entries.
//!
//! Every path here works from derivative solution sets or family algebra and
//! never solves a three-equation system, so it can be checked against
//! [`crate::tables`] entry by entry.
//!
//! * [`delta`]: any function, from the pair structure of S(·,·).
//! * [`corollaries`]: APN and differentially 4-uniform case tables.
//! * [`gold`], [`kasami`], [`bracken`], [`inverse`]: power-map families.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::tables::TableKind;
use crate::vecfun::{Family, VecFun};

pub mod bracken;
pub mod corollaries;
pub mod delta;
pub mod gold;
pub mod inverse;
pub mod kasami;
pub mod solutions;

pub use bracken::{Bracken, BrackenParams};
pub use corollaries::{apn_tables, fourdiff_tables, Apn, FourDiff};
pub use delta::{delta_uniform_ebct, delta_uniform_lbct, delta_uniform_ubct, ge2lu_check, DeltaUniform, Ge2luReport};
pub use gold::{Gold, GoldParams};
pub use inverse::{inverse_fbct, inverse_tables, Inverse};
pub use kasami::Kasami;
pub use solutions::{DerivativeIndex, PairGraph, SolutionSet};

/// The three tables covered by every closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoomerangKind {
    Ebct,
    Lbct,
    Ubct,
}

impl BoomerangKind {
    pub const ALL: [BoomerangKind; 3] = [BoomerangKind::Ebct, BoomerangKind::Lbct, BoomerangKind::Ubct];

    pub fn table_kind(self) -> TableKind {
        match self {
            BoomerangKind::Ebct => TableKind::Ebct,
            BoomerangKind::Lbct => TableKind::Lbct,
            BoomerangKind::Ubct => TableKind::Ubct,
        }
    }
}

impl TryFrom<TableKind> for BoomerangKind {
    type Error = Error;

    fn try_from(k: TableKind) -> Result<Self> {
        match k {
            TableKind::Ebct => Ok(BoomerangKind::Ebct),
            TableKind::Lbct => Ok(BoomerangKind::Lbct),
            TableKind::Ubct => Ok(BoomerangKind::Ubct),
            other => Err(Error::Hypothesis(format!("{other} is not one of EBCT, LBCT, UBCT"))),
        }
    }
}

impl fmt::Display for BoomerangKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.table_kind().fmt(f)
    }
}

// Zero-index values for permutations, given the DDT.

pub(crate) fn lemma_ebct(size: u64, ddt: impl Fn(Elem, Elem) -> u64, a: Elem, b: Elem, c: Elem, d: Elem) -> u64 {
    match (a, b, c, d) {
        (0, 0, 0, 0) => size,
        (0, 0, _, _) if c != 0 && d != 0 => ddt(c, d),
        (_, _, 0, 0) if a != 0 && b != 0 => ddt(a, b),
        _ => 0,
    }
}

pub(crate) fn lemma_lbct(size: u64, ddt: impl Fn(Elem, Elem) -> u64, a: Elem, b: Elem, c: Elem) -> u64 {
    if b == 0 {
        if c == 0 {
            size
        } else {
            0
        }
    } else if c == 0 {
        0
    } else if a == 0 {
        ddt(b, c)
    } else {
        unreachable!("lemma_lbct called with abc != 0")
    }
}

pub(crate) fn lemma_ubct(size: u64, ddt: impl Fn(Elem, Elem) -> u64, a: Elem, b: Elem, c: Elem) -> u64 {
    if a == 0 {
        if b == 0 {
            size
        } else {
            0
        }
    } else if c == 0 {
        ddt(a, b)
    } else if b == 0 {
        0
    } else {
        unreachable!("lemma_ubct called with abc != 0")
    }
}

/// Value of an entry with a zero coordinate, or `None` when every coordinate
/// is nonzero or `kind` is not EBCT, LBCT or UBCT.
///
/// Permutations use the zero-index lemma; other functions use the zero-index
/// cases of the general δ-uniform characterization (for instance
/// UBCT(0, 0, c) = |F^{-1}(c + Im F)|).
pub fn trivial_entry(f: &VecFun, kind: TableKind, idx: &[Elem]) -> Option<u64> {
    let kind = BoomerangKind::try_from(kind).ok()?;
    if idx.len() != kind.table_kind().arity() || idx.iter().all(|&v| v != 0) {
        return None;
    }
    let e = DeltaUniform::new(f);
    if f.is_permutation() {
        let size = f.size() as u64;
        let ddt = |x, y| e.ddt(x, y);
        return Some(match kind {
            BoomerangKind::Ebct => lemma_ebct(size, ddt, idx[0], idx[1], idx[2], idx[3]),
            BoomerangKind::Lbct => lemma_lbct(size, ddt, idx[0], idx[1], idx[2]),
            BoomerangKind::Ubct => lemma_ubct(size, ddt, idx[0], idx[1], idx[2]),
        });
    }
    Some(match kind {
        BoomerangKind::Ebct => e.ebct(idx[0], idx[1], idx[2], idx[3]),
        BoomerangKind::Lbct => e.lbct(idx[0], idx[1], idx[2]),
        BoomerangKind::Ubct => e.ubct(idx[0], idx[1], idx[2]),
    })
}

enum Engine<'a> {
    Gold(Gold),
    Kasami(Kasami),
    Bracken(Bracken),
    Inverse(Inverse),
    Apn(Apn<'a>),
    General(DeltaUniform<'a>),
}

/// Closed-form evaluator chosen from a function's family tag.
///
/// Gold, Kasami, Bracken-Leander and inverse functions use their family
/// corollaries (with the stated hypotheses enforced); every other function
/// uses the δ-uniform engine.
pub struct Predictor<'a> {
    engine: Engine<'a>,
}

impl<'a> Predictor<'a> {
    pub fn new(f: &'a VecFun) -> Result<Self> {
        let field = f.field().clone();
        let engine = match *f.family() {
            Family::Gold { s } => Engine::Gold(Gold::new(field, s)?),
            Family::Kasami { s } => Engine::Kasami(Kasami::new(field, s)?),
            Family::Bracken { s } => Engine::Bracken(Bracken::new(field, s)?),
            Family::Inverse if f.n().is_multiple_of(2) => Engine::Inverse(Inverse::new(field)?),
            Family::Inverse => Engine::Apn(Apn::new(f)?),
            _ => Engine::General(DeltaUniform::new(f)),
        };
        Ok(Predictor { engine })
    }

    /// Always the δ-uniform engine, regardless of family.
    pub fn general(f: &'a VecFun) -> Self {
        Predictor {
            engine: Engine::General(DeltaUniform::new(f)),
        }
    }

    pub fn method(&self) -> &'static str {
        match self.engine {
            Engine::Gold(_) => "gold",
            Engine::Kasami(_) => "kasami",
            Engine::Bracken(_) => "bracken-leander",
            Engine::Inverse(_) => "inverse",
            Engine::Apn(_) => "apn",
            Engine::General(_) => "delta-uniform",
        }
    }

    pub fn boomerang(&self, kind: BoomerangKind, idx: &[Elem]) -> u64 {
        match &self.engine {
            Engine::Gold(g) => g.entry(kind, idx),
            Engine::Kasami(k) => k.entry(kind, idx),
            Engine::Bracken(b) => b.entry(kind, idx),
            Engine::Inverse(i) => i.entry(kind, idx),
            Engine::Apn(a) => a.entry(kind, idx),
            Engine::General(e) => match kind {
                BoomerangKind::Ebct => e.ebct(idx[0], idx[1], idx[2], idx[3]),
                BoomerangKind::Lbct => e.lbct(idx[0], idx[1], idx[2]),
                BoomerangKind::Ubct => e.ubct(idx[0], idx[1], idx[2]),
            },
        }
    }

    /// Prediction for any table kind that has a closed form here: EBCT, LBCT
    /// and UBCT always; DDT for the named families; FBCT for Gold and even-n
    /// inverse; DBCT for Gold with m odd.
    pub fn entry(&self, kind: TableKind, idx: &[Elem]) -> Result<u64> {
        kind.check_arity(idx)?;
        if let Ok(b) = BoomerangKind::try_from(kind) {
            return Ok(self.boomerang(b, idx));
        }
        let none = || Error::Hypothesis(format!("no closed form for {kind} with the {} method", self.method()));
        match (kind, &self.engine) {
            (TableKind::Ddt, Engine::Gold(g)) => Ok(g.ddt(idx[0], idx[1])),
            (TableKind::Ddt, Engine::Kasami(k)) => Ok(k.ddt(idx[0], idx[1])),
            (TableKind::Ddt, Engine::Bracken(b)) => Ok(b.ddt(idx[0], idx[1])),
            (TableKind::Ddt, Engine::Inverse(i)) => Ok(i.ddt(idx[0], idx[1])),
            (TableKind::Fbct, Engine::Gold(g)) => Ok(g.fbct(idx[0], idx[1])),
            (TableKind::Fbct, Engine::Inverse(i)) => Ok(i.fbct(idx[0], idx[1])),
            (TableKind::Dbct, Engine::Gold(g)) => g.dbct(idx[0], idx[1]),
            _ => Err(none()),
        }
    }
}

/// One-shot closed-form entry; see [`Predictor::entry`].
pub fn closed_entry(f: &VecFun, kind: TableKind, idx: &[Elem]) -> Result<u64> {
    for &v in idx {
        f.field().check(u64::from(v))?;
    }
    Predictor::new(f)?.entry(kind, idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::sampling;
    use crate::tables;
    use std::sync::Arc;

    #[test]
    fn trivial_entries() {
        let k = Arc::new(FieldCtx::new(4, None).unwrap());
        for f in [
            VecFun::power(k.clone(), 7),
            VecFun::from_lut(k.clone(), sampling::random_lut(4, 5), Family::LutFile { source: None }).unwrap(),
        ] {
            for t in sampling::sample_tuples(4, 4, false, 4000, 1) {
                if t.iter().all(|&v| v != 0) {
                    assert_eq!(trivial_entry(&f, TableKind::Ebct, &t), None);
                    continue;
                }
                assert_eq!(
                    trivial_entry(&f, TableKind::Ebct, &t),
                    Some(tables::ebct_entry(&f, t[0], t[1], t[2], t[3]))
                );
                if t[..3].contains(&0) {
                    assert_eq!(
                        trivial_entry(&f, TableKind::Lbct, &t[..3]),
                        Some(tables::lbct_entry(&f, t[0], t[1], t[2]))
                    );
                    assert_eq!(
                        trivial_entry(&f, TableKind::Ubct, &t[..3]),
                        Some(tables::ubct_entry(&f, t[0], t[1], t[2]))
                    );
                }
            }
        }
        let f = VecFun::power(k, 7);
        assert_eq!(trivial_entry(&f, TableKind::Ddt, &[0, 1]), None);
    }

    #[test]
    fn predictor_dispatch() {
        let k = Arc::new(FieldCtx::new(6, None).unwrap());
        let f = VecFun::gold(k.clone(), 2);
        let p = Predictor::new(&f).unwrap();
        assert_eq!(p.method(), "gold");
        assert_eq!(p.entry(TableKind::Dbct, &[0, 5]).unwrap(), 4096);
        assert_eq!(p.entry(TableKind::Ebct, &[0, 0, 0, 0]).unwrap(), 64);
        assert!(p.entry(TableKind::Bct, &[1, 1]).unwrap_err().is_hypothesis());
        let kas = VecFun::kasami(k.clone(), 2);
        assert!(Predictor::new(&kas).err().is_some_and(|e| e.is_hypothesis()));
        let inv = VecFun::inverse_map(Arc::new(FieldCtx::new(5, None).unwrap()));
        assert_eq!(Predictor::new(&inv).unwrap().method(), "apn");
        let p11 = VecFun::power(k, 11);
        assert_eq!(Predictor::new(&p11).unwrap().method(), "delta-uniform");
    }
}
