//! Case tables for APN and differentially 4-uniform functions.
//!
//! Both read DDT values and at most two solution pairs. The UBCT tables
//! include UBCT(a, b, 0) = DDT(a, b) for a ≠ 0.

use super::delta::DeltaUniform;
use super::BoomerangKind;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::vecfun::VecFun;

/// Closed forms for an APN function.
pub struct Apn<'a> {
    engine: DeltaUniform<'a>,
}

impl<'a> Apn<'a> {
    pub fn new(f: &'a VecFun) -> Result<Self> {
        let delta = f.differential_uniformity();
        if delta != 2 {
            return Err(Error::NotApn(delta));
        }
        Ok(Apn {
            engine: DeltaUniform::new(f),
        })
    }

    pub fn ebct(&self, a: Elem, b: Elem, c: Elem, d: Elem) -> u64 {
        let e = &self.engine;
        if c == 0 && d == 0 {
            e.ddt(a, b)
        } else if (a != 0 && c != 0 && a == c && b == d) || (a == 0 && b == 0 && c != 0) {
            e.ddt(c, d)
        } else {
            0
        }
    }

    pub fn lbct(&self, a: Elem, b: Elem, c: Elem) -> u64 {
        let e = &self.engine;
        if (b == 0 && c == 0) || (a == b && a != 0) || (a == 0 && b != 0) {
            e.ddt(b, c)
        } else {
            0
        }
    }

    pub fn ubct(&self, a: Elem, b: Elem, c: Elem) -> u64 {
        let e = &self.engine;
        if a == 0 && b == 0 {
            u64::from(e.function().shifted_image_preimage_count(c))
        } else if a != 0 && (c == b || c == 0) {
            e.ddt(a, b)
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

pub fn apn_tables(f: &VecFun, kind: BoomerangKind, idx: &[Elem]) -> Result<u64> {
    Ok(Apn::new(f)?.entry(kind, idx))
}

/// Closed forms for a differentially 4-uniform function.
pub struct FourDiff<'a> {
    engine: DeltaUniform<'a>,
}

impl<'a> FourDiff<'a> {
    pub fn new(f: &'a VecFun) -> Result<Self> {
        let delta = f.differential_uniformity();
        if delta > 4 {
            return Err(Error::UniformityTooLarge {
                uniformity: delta,
                bound: 4,
            });
        }
        Ok(FourDiff {
            engine: DeltaUniform::new(f),
        })
    }

    /// The two EBCT keys (a, b) built from S(c, d) = {z1, z1+c, z2, z2+c}:
    /// (z1+z2, F(z1)+F(z2)) and (z1+z2+c, F(z1)+F(z2)+d).
    pub fn ebct(&self, a: Elem, b: Elem, c: Elem, d: Elem) -> u64 {
        let e = &self.engine;
        let f = e.function();
        if c == 0 {
            return if d == 0 { e.ddt(a, b) } else { 0 };
        }
        if a == 0 {
            return if b == 0 { e.ddt(c, d) } else { 0 };
        }
        if a == c && b == d {
            return e.ddt(c, d);
        }
        let z = e.solutions(c, d);
        if z.k() == 2 {
            let (z1, z2) = (z.reps[0], z.reps[1]);
            let fz = f.eval(z1) ^ f.eval(z2);
            if (a, b) == (z1 ^ z2, fz) || (a, b) == (z1 ^ z2 ^ c, fz ^ d) {
                return 4;
            }
        }
        0
    }

    pub fn lbct(&self, a: Elem, b: Elem, c: Elem) -> u64 {
        let e = &self.engine;
        if b == 0 {
            return if c == 0 { e.ddt(0, 0) } else { 0 };
        }
        if a == 0 {
            return e.ddt(b, c);
        }
        let y = e.solutions(b, c);
        match y.k() {
            1 if a == b => 2,
            2 => {
                let v = y.reps[0] ^ y.reps[1];
                if a == b || a == v || a == v ^ b {
                    4
                } else {
                    0
                }
            }
            _ => 0,
        }
    }

    pub fn ubct(&self, a: Elem, b: Elem, c: Elem) -> u64 {
        let e = &self.engine;
        let f = e.function();
        if a == 0 {
            return if b == 0 {
                u64::from(f.shifted_image_preimage_count(c))
            } else {
                0
            };
        }
        if c == 0 {
            return e.ddt(a, b);
        }
        let x = e.solutions(a, b);
        match x.k() {
            1 if c == b => 2,
            2 => {
                let w = f.eval(x.reps[0]) ^ f.eval(x.reps[1]);
                if c == b || c == w || c == w ^ b {
                    4
                } else {
                    0
                }
            }
            _ => 0,
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

pub fn fourdiff_tables(f: &VecFun, kind: BoomerangKind, idx: &[Elem]) -> Result<u64> {
    Ok(FourDiff::new(f)?.entry(kind, idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::tables;
    use std::sync::Arc;

    fn ctx(n: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(n, None).unwrap())
    }

    fn sweep(
        f: &VecFun,
        ebct: impl Fn(Elem, Elem, Elem, Elem) -> u64,
        lbct: impl Fn(Elem, Elem, Elem) -> u64,
        ubct: impl Fn(Elem, Elem, Elem) -> u64,
    ) {
        let size = f.size() as Elem;
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    assert_eq!(lbct(a, b, c), tables::lbct_entry(f, a, b, c), "lbct {a} {b} {c}");
                    assert_eq!(ubct(a, b, c), tables::ubct_entry(f, a, b, c), "ubct {a} {b} {c}");
                    for d in 0..size {
                        assert_eq!(ebct(a, b, c, d), tables::ebct_entry(f, a, b, c, d));
                    }
                }
            }
        }
    }

    #[test]
    fn apn_cases() {
        for f in [
            VecFun::gold(ctx(3), 1),
            VecFun::inverse_map(ctx(3)),
            VecFun::power(ctx(4), 3),
        ] {
            let apn = Apn::new(&f).unwrap();
            sweep(
                &f,
                |a, b, c, d| apn.ebct(a, b, c, d),
                |a, b, c| apn.lbct(a, b, c),
                |a, b, c| apn.ubct(a, b, c),
            );
        }
        assert!(matches!(Apn::new(&VecFun::gold(ctx(4), 2)), Err(Error::NotApn(4))));
    }

    #[test]
    fn fourdiff_cases() {
        // inverse (a permutation) and X^5 over GF(2^4) (4-uniform, not a permutation)
        for f in [VecFun::inverse_map(ctx(4)), VecFun::gold(ctx(4), 2)] {
            let fd = FourDiff::new(&f).unwrap();
            sweep(
                &f,
                |a, b, c, d| fd.ebct(a, b, c, d),
                |a, b, c| fd.lbct(a, b, c),
                |a, b, c| fd.ubct(a, b, c),
            );
        }
        let flat = VecFun::gold(ctx(4), 2).modified("zero", |_, _| 0);
        assert!(matches!(
            FourDiff::new(&flat),
            Err(Error::UniformityTooLarge { uniformity: 16, .. })
        ));
    }
}
