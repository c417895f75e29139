//! Kasami function X^(2^(2s) - 2^s + 1) with gcd(s, n) = 2, n = 2t', t' odd
//! and 3 not dividing t'.
//!
//! DDT(c, d) for c ≠ 0 is 4 exactly when some α ≠ 0 satisfies
//! c^(2^2s) + c^(2^s) α^(2^3s - 2^s) + c α^(2^3s + 2^2s - 2^s - 1) + d α^(2^2s - 1) = 0
//! together with Tr_s^{st'}(1 + c / α^(2^s + 1)) = 0, and 0 otherwise.
//! The first α in increasing integer order is used.

use std::sync::Arc;

use super::BoomerangKind;
use crate::error::{Error, Result};
use crate::field::{gcd, Elem, FieldCtx};

pub struct Kasami {
    field: Arc<FieldCtx>,
    s: u32,
    /// primitive cube root of unity
    omega: Elem,
    /// per α: (α^E1, α^E2, α^E3, α^(2^s+1), α^(2^3s+1))
    alpha_pows: Vec<[Elem; 5]>,
}

/// Checks gcd(s, n) = 2, n = 2t', t' odd, 3 ∤ t'.
pub fn check_hypothesis(n: u32, s: u32) -> Result<()> {
    let tp = n / 2;
    if s == 0 || gcd(s, n) != 2 || !n.is_multiple_of(2) || tp.is_multiple_of(2) || tp.is_multiple_of(3) {
        return Err(Error::Hypothesis(format!(
            "Kasami closed form needs gcd(s, n) = 2, n = 2t' with t' odd and not divisible by 3; got n = {n}, s = {s}"
        )));
    }
    Ok(())
}

impl Kasami {
    pub fn new(field: Arc<FieldCtx>, s: u32) -> Result<Self> {
        check_hypothesis(field.n(), s)?;
        let q = 1u64 << s;
        let e1 = (1u64 << (3 * s)) - q;
        let e2 = (1u64 << (3 * s)) + (1u64 << (2 * s)) - q - 1;
        let e3 = (1u64 << (2 * s)) - 1;
        let e4 = q + 1;
        let e5 = (1u64 << (3 * s)) + 1;
        let alpha_pows = (0..field.size() as Elem)
            .map(|x| [e1, e2, e3, e4, e5].map(|e| field.pow(x, e)))
            .collect();
        let omega = field.gpow(field.order() / 3);
        Ok(Kasami {
            field,
            s,
            omega,
            alpha_pows,
        })
    }

    pub fn omega(&self) -> Elem {
        self.omega
    }

    pub fn exponent(&self) -> u64 {
        (1u64 << (2 * self.s)) - (1u64 << self.s) + 1
    }

    /// First admissible α for the derivative equation in direction c with target d.
    pub fn alpha(&self, c: Elem, d: Elem) -> Option<Elem> {
        if c == 0 {
            return None;
        }
        let k = &self.field;
        let c2 = k.frob(c, 2 * self.s);
        let c1 = k.frob(c, self.s);
        (1..k.size() as Elem).find(|&al| {
            let p = &self.alpha_pows[al as usize];
            let v = c2 ^ k.mul(c1, p[0]) ^ k.mul(c, p[1]) ^ k.mul(d, p[2]);
            v == 0 && k.embedded_trace(self.s, 1 ^ k.div(c, p[3])) == 0
        })
    }

    pub fn ddt(&self, a: Elem, b: Elem) -> u64 {
        if a == 0 {
            return if b == 0 { self.field.size() as u64 } else { 0 };
        }
        if self.alpha(a, b).is_some() {
            4
        } else {
            0
        }
    }

    fn pow_q1(&self, al: Elem) -> Elem {
        self.alpha_pows[al as usize][3]
    }

    fn pow_q3(&self, al: Elem) -> Elem {
        self.alpha_pows[al as usize][4]
    }

    pub fn ebct(&self, a: Elem, b: Elem, c: Elem, d: Elem) -> u64 {
        if a == 0 || b == 0 || c == 0 || d == 0 {
            return super::lemma_ebct(self.field.size() as u64, |x, y| self.ddt(x, y), a, b, c, d);
        }
        let Some(al) = self.alpha(c, d) else { return 0 };
        let k = &self.field;
        let w2 = k.square(self.omega);
        let (p1, p3) = (self.pow_q1(al), self.pow_q3(al));
        let hit = (a, b) == (c, d)
            || (a, b) == (k.mul(self.omega, c) ^ p1, k.mul(self.omega, d) ^ p3)
            || (a, b) == (k.mul(w2, c) ^ p1, k.mul(w2, d) ^ p3);
        if hit {
            4
        } else {
            0
        }
    }

    pub fn lbct(&self, a: Elem, b: Elem, c: Elem) -> u64 {
        if a == 0 || b == 0 || c == 0 {
            return super::lemma_lbct(self.field.size() as u64, |x, y| self.ddt(x, y), a, b, c);
        }
        let Some(al) = self.alpha(b, c) else { return 0 };
        let k = &self.field;
        let p1 = self.pow_q1(al);
        if a == b || a == k.mul(b, self.omega) ^ p1 || a == k.mul(b, k.square(self.omega)) ^ p1 {
            4
        } else {
            0
        }
    }

    pub fn ubct(&self, a: Elem, b: Elem, c: Elem) -> u64 {
        if a == 0 || b == 0 || c == 0 {
            return super::lemma_ubct(self.field.size() as u64, |x, y| self.ddt(x, y), a, b, c);
        }
        let Some(al) = self.alpha(a, b) else { return 0 };
        let k = &self.field;
        let p3 = self.pow_q3(al);
        if c == b || c == k.mul(b, self.omega) ^ p3 || c == k.mul(b, k.square(self.omega)) ^ p3 {
            4
        } else {
            0
        }
    }

    pub fn entry(&self, kind: BoomerangKind, idx: &[Elem]) -> u64 {
        match kind {
            BoomerangKind::Ebct => self.ebct(idx[0], idx[1], idx[2], idx[3]),
            BoomerangKind::Lbct => self.lbct(idx[0], idx[1], idx[2]),
            BoomerangKind::Ubct => self.ubct(idx[0], idx[1], idx[2]),
        }
    }
}
