//! Inverse function X^(2^n - 2).
//!
//! For n even the DDT is explicit: for A, B ≠ 0, DDT(A, B) = 4 when B = 1/A
//! and otherwise 2 or 0 by Tr(1/(AB)). For n odd the function is APN and the
//! APN case tables apply.

use std::sync::Arc;

use super::corollaries::Apn;
use super::BoomerangKind;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::vecfun::VecFun;

pub struct Inverse {
    field: Arc<FieldCtx>,
}

fn is_cube_root_of_unity(k: &FieldCtx, x: Elem) -> bool {
    k.square(x) ^ x ^ 1 == 0
}

impl Inverse {
    /// n must be even; see [`inverse_tables`] for the odd case.
    pub fn new(field: Arc<FieldCtx>) -> Result<Self> {
        if !field.n().is_multiple_of(2) {
            return Err(Error::Hypothesis(format!(
                "inverse closed form needs n even (n = {} is APN)",
                field.n()
            )));
        }
        Ok(Inverse { field })
    }

    fn inv(&self, x: Elem) -> Elem {
        if x == 0 {
            0
        } else {
            self.field.recip(x)
        }
    }

    pub fn ddt(&self, a: Elem, b: Elem) -> u64 {
        let k = &self.field;
        match (a, b) {
            (0, 0) => k.size() as u64,
            (0, _) | (_, 0) => 0,
            _ if b == self.inv(a) => 4,
            _ if k.abs_trace(self.inv(k.mul(a, b))) == 0 => 2,
            _ => 0,
        }
    }

    pub fn ebct(&self, a: Elem, b: Elem, c: Elem, d: Elem) -> u64 {
        if a == 0 || b == 0 || c == 0 || d == 0 {
            return super::lemma_ebct(self.field.size() as u64, |x, y| self.ddt(x, y), a, b, c, d);
        }
        let k = &self.field;
        if (a == c && b == self.inv(a) && d == self.inv(c))
            || (b == self.inv(a) && d == self.inv(c) && is_cube_root_of_unity(k, k.mul(a, d)))
        {
            return 4;
        }
        if a == c && b == d && d != self.inv(c) && k.abs_trace(self.inv(k.mul(c, d))) == 0 {
            return 2;
        }
        0
    }

    pub fn lbct(&self, a: Elem, b: Elem, c: Elem) -> u64 {
        if a == 0 || b == 0 || c == 0 {
            return super::lemma_lbct(self.field.size() as u64, |x, y| self.ddt(x, y), a, b, c);
        }
        let k = &self.field;
        let ic = self.inv(c);
        if (a == b && b == ic) || (b == ic && is_cube_root_of_unity(k, k.mul(a, c))) {
            return 4;
        }
        if a == b && b != ic && k.abs_trace(self.inv(k.mul(b, c))) == 0 {
            return 2;
        }
        0
    }

    pub fn ubct(&self, a: Elem, b: Elem, c: Elem) -> u64 {
        if a == 0 || b == 0 || c == 0 {
            return super::lemma_ubct(self.field.size() as u64, |x, y| self.ddt(x, y), a, b, c);
        }
        let k = &self.field;
        let ia = self.inv(a);
        if (b == c && c == ia) || (b == ia && is_cube_root_of_unity(k, k.mul(a, c))) {
            return 4;
        }
        if c == b && b != ia && k.abs_trace(self.inv(k.mul(a, b))) == 0 {
            return 2;
        }
        0
    }

    pub fn entry(&self, kind: BoomerangKind, idx: &[Elem]) -> u64 {
        match kind {
            BoomerangKind::Ebct => self.ebct(idx[0], idx[1], idx[2], idx[3]),
            BoomerangKind::Lbct => self.lbct(idx[0], idx[1], idx[2]),
            BoomerangKind::Ubct => self.ubct(idx[0], idx[1], idx[2]),
        }
    }

    /// FBCT(a, b): 2^n if ab = 0 or a = b, 4 if (a/b)^2 + a/b + 1 = 0, else 0.
    pub fn fbct(&self, a: Elem, b: Elem) -> u64 {
        let k = &self.field;
        if a == 0 || b == 0 || a == b {
            k.size() as u64
        } else if is_cube_root_of_unity(k, k.div(a, b)) {
            4
        } else {
            0
        }
    }
}

/// EBCT / LBCT / UBCT of the inverse function; odd n goes through the APN tables.
pub fn inverse_tables(field: &Arc<FieldCtx>, kind: BoomerangKind, idx: &[Elem]) -> Result<u64> {
    if field.n().is_multiple_of(2) {
        Ok(Inverse::new(field.clone())?.entry(kind, idx))
    } else {
        let f = VecFun::inverse_map(field.clone());
        Ok(Apn::new(&f)?.entry(kind, idx))
    }
}

pub fn inverse_fbct(field: &Arc<FieldCtx>, a: Elem, b: Elem) -> Result<u64> {
    Ok(Inverse::new(field.clone())?.fbct(a, b))
}
