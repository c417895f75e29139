//! EBCT, LBCT and UBCT of an arbitrary function from its derivative solution
//! sets alone.
//!
//! The three-equation systems are never solved. Every value comes from the
//! pair structure of one set S(·,·): EBCT and LBCT entries are 4ℓ for the
//! largest ℓ of index-disjoint pairs whose U (resp. V) set holds the key.
//! Those pair graphs have degree at most one, so ℓ is the number of edges.
//!
//! UBCT differs. A pair i may share W-membership with several j, and the
//! system counts X once when some Y exists, so the value is twice the number
//! of pairs i with at least one partner. This coincides with 4ℓ whenever the
//! graph is a matching, which includes every permutation and every
//! 4-uniform function. [`DeltaUniform::ubct_matching`] keeps the literal 4ℓ.
//! UBCT(a, b, 0) = DDT(a, b) for a ≠ 0 is handled explicitly.

use std::borrow::Cow;

use super::solutions::{DerivativeIndex, SolutionSet};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::vecfun::VecFun;

/// Largest DDT entry for which the literal matching search is run.
pub const MATCHING_DELTA_BOUND: u32 = 16;

pub struct DeltaUniform<'a> {
    f: &'a VecFun,
    index: Option<DerivativeIndex>,
}

impl<'a> DeltaUniform<'a> {
    /// Solves derivative equations on demand.
    pub fn new(f: &'a VecFun) -> Self {
        DeltaUniform { f, index: None }
    }

    /// Precomputes every solution set; meant for sweeps.
    pub fn indexed(f: &'a VecFun) -> Self {
        DeltaUniform {
            f,
            index: Some(DerivativeIndex::new(f)),
        }
    }

    pub fn function(&self) -> &VecFun {
        self.f
    }

    fn roots(&self, a: Elem, b: Elem) -> Cow<'_, [Elem]> {
        match &self.index {
            Some(ix) => Cow::Borrowed(ix.roots(a, b)),
            None => Cow::Owned(self.f.derivative_solutions(a, b)),
        }
    }

    /// S(a, b) for nonzero `a`.
    pub fn solutions(&self, a: Elem, b: Elem) -> SolutionSet {
        SolutionSet::from_roots(a, b, &self.roots(a, b))
    }

    pub fn ddt(&self, a: Elem, b: Elem) -> u64 {
        if a == 0 {
            return if b == 0 { self.f.size() as u64 } else { 0 };
        }
        self.roots(a, b).len() as u64
    }

    pub fn ebct(&self, a: Elem, b: Elem, c: Elem, d: Elem) -> u64 {
        if c == 0 {
            return if d == 0 { self.ddt(a, b) } else { 0 };
        }
        if a == 0 {
            return if b == 0 { self.ddt(c, d) } else { 0 };
        }
        if a == c {
            return if b == d { self.ddt(c, d) } else { 0 };
        }
        let z = self.solutions(c, d);
        let f = self.f;
        let partnered = (0..z.k())
            .filter(|&i| (0..z.k()).any(|j| j != i && z.u_set(f, i, j).contains(&(a, b))))
            .count();
        2 * partnered as u64
    }

    pub fn lbct(&self, a: Elem, b: Elem, c: Elem) -> u64 {
        if b == 0 {
            return if c == 0 { self.f.size() as u64 } else { 0 };
        }
        if a == 0 || a == b {
            return self.ddt(b, c);
        }
        let y = self.solutions(b, c);
        let partnered = (0..y.k())
            .filter(|&i| (0..y.k()).any(|j| j != i && y.v_set(i, j).contains(&a)))
            .count();
        2 * partnered as u64
    }

    pub fn ubct(&self, a: Elem, b: Elem, c: Elem) -> u64 {
        if let Some(v) = self.ubct_direct(a, b, c) {
            return v;
        }
        let x = self.solutions(a, b);
        let f = self.f;
        let covered = (0..x.k())
            .filter(|&i| (0..x.k()).any(|j| j != i && x.w_set(f, i, j).contains(&c)))
            .count();
        2 * covered as u64
    }

    /// UBCT as 4ℓ with ℓ an exact maximum matching of the W-pair graph.
    ///
    /// Differs from [`Self::ubct`] only for non-permutations whose W graph
    /// has a vertex of degree two or more.
    pub fn ubct_matching(&self, a: Elem, b: Elem, c: Elem) -> Result<u64> {
        if let Some(v) = self.ubct_direct(a, b, c) {
            return Ok(v);
        }
        let x = self.solutions(a, b);
        if x.count() > u64::from(MATCHING_DELTA_BOUND) {
            return Err(Error::UniformityTooLarge {
                uniformity: x.count() as u32,
                bound: MATCHING_DELTA_BOUND,
            });
        }
        let g = x.graph(|i, j| x.w_set(self.f, i, j).contains(&c));
        Ok(4 * g.max_matching() as u64)
    }

    fn ubct_direct(&self, a: Elem, b: Elem, c: Elem) -> Option<u64> {
        if a == 0 {
            return Some(if b == 0 {
                u64::from(self.f.shifted_image_preimage_count(c))
            } else {
                0
            });
        }
        if c == b || c == 0 {
            return Some(self.ddt(a, b));
        }
        None
    }

    /// Nonzero EBCT entries with third index `c`, packed as
    /// `(a << 2n | b << n | d, value)` and sorted, in the layout of
    /// [`crate::tables::full::ebct_slice`].
    pub fn ebct_slice(&self, c: Elem) -> Vec<(u64, u32)> {
        let n = self.f.n();
        let size = self.f.size() as Elem;
        let pack = |a: Elem, b: Elem, d: Elem| (u64::from(a) << (2 * n)) | (u64::from(b) << n) | u64::from(d);
        let mut out = Vec::new();
        if c == 0 {
            for a in 0..size {
                for b in 0..size {
                    let v = self.ddt(a, b);
                    if v > 0 {
                        out.push((pack(a, b, 0), v as u32));
                    }
                }
            }
            out.sort_unstable();
            return out;
        }
        let f = self.f;
        for d in 0..size {
            let z = self.solutions(c, d);
            if z.k() == 0 {
                continue;
            }
            let v = z.count() as u32;
            out.push((pack(0, 0, d), v));
            out.push((pack(c, d, d), v));
            // every U-set key, with the number of pairs it partners
            let mut keys: Vec<((Elem, Elem), usize)> = Vec::new();
            for i in 0..z.k() {
                for j in 0..z.k() {
                    if i != j {
                        for key in z.u_set(f, i, j) {
                            keys.push((key, i));
                        }
                    }
                }
            }
            keys.sort_unstable();
            keys.dedup();
            let mut s = 0;
            while s < keys.len() {
                let mut e = s;
                while e < keys.len() && keys[e].0 == keys[s].0 {
                    e += 1;
                }
                let (a, b) = keys[s].0;
                out.push((pack(a, b, d), 2 * (e - s) as u32));
                s = e;
            }
        }
        out.sort_unstable();
        out
    }
}

pub fn delta_uniform_ebct(f: &VecFun, a: Elem, b: Elem, c: Elem, d: Elem) -> u64 {
    DeltaUniform::new(f).ebct(a, b, c, d)
}

pub fn delta_uniform_lbct(f: &VecFun, a: Elem, b: Elem, c: Elem) -> u64 {
    DeltaUniform::new(f).lbct(a, b, c)
}

pub fn delta_uniform_ubct(f: &VecFun, a: Elem, b: Elem, c: Elem) -> u64 {
    DeltaUniform::new(f).ubct(a, b, c)
}

/// Outcome of checking the EBCT / LBCT / UBCT solution correspondence at one tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ge2luReport {
    pub indices: [Elem; 4],
    /// X solving the EBCT(a, b, c, d) system.
    pub ebct_solutions: Vec<Elem>,
    /// X for which (X, X + c) solves the LBCT(a, c, d) system and F(X) + F(X + a) = b.
    pub lbct_solutions: Vec<Elem>,
    /// X for which (X, X + a) solves the UBCT(c, d, b) system.
    pub ubct_solutions: Vec<Elem>,
    pub ebct: u64,
    pub lbct: u64,
    pub ubct: u64,
}

impl Ge2luReport {
    /// The three solution sets coincide.
    pub fn correspondence_holds(&self) -> bool {
        self.ebct_solutions == self.lbct_solutions && self.ebct_solutions == self.ubct_solutions
    }

    /// EBCT(a,b,c,d)^2 <= LBCT(a,c,d) * UBCT(c,d,b).
    pub fn inequality_holds(&self) -> bool {
        self.ebct * self.ebct <= self.lbct * self.ubct
    }

    pub fn equality_holds(&self) -> bool {
        self.ebct * self.ebct == self.lbct * self.ubct
    }
}

/// Solves the three systems directly and records which X satisfy each.
pub fn ge2lu_check(f: &VecFun, a: Elem, b: Elem, c: Elem, d: Elem) -> Ge2luReport {
    let size = f.size() as Elem;
    let fx = |x: Elem| f.eval(x);
    let ebct_solutions: Vec<Elem> = (0..size)
        .filter(|&x| fx(x) ^ fx(x ^ a) == b && fx(x) ^ fx(x ^ c) == d && fx(x ^ a ^ c) ^ fx(x ^ a) == d)
        .collect();
    let lbct_solutions: Vec<Elem> = (0..size)
        .filter(|&x| {
            let y = x ^ c;
            fx(x ^ a) ^ fx(y ^ a) == d && fx(x) ^ fx(y) == d && fx(x) ^ fx(x ^ a) == b
        })
        .collect();
    let ubct_solutions: Vec<Elem> = (0..size)
        .filter(|&x| {
            let y = x ^ a;
            fx(x ^ c) ^ fx(y ^ c) == b && fx(x) ^ fx(y) == b && fx(x) ^ fx(x ^ c) == d
        })
        .collect();
    Ge2luReport {
        indices: [a, b, c, d],
        ebct: ebct_solutions.len() as u64,
        lbct: crate::tables::lbct_entry(f, a, c, d),
        ubct: crate::tables::ubct_entry(f, c, d, b),
        ebct_solutions,
        lbct_solutions,
        ubct_solutions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::sampling;
    use crate::tables::{self, full};
    use std::sync::Arc;

    fn ctx(n: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(n, None).unwrap())
    }

    fn check_all(f: &VecFun) {
        let e = DeltaUniform::indexed(f);
        let size = f.size() as Elem;
        let ub = full::ubct_table(f, tables::Counting::Distinct);
        let lb = full::lbct_table(f);
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    assert_eq!(e.ubct(a, b, c), u64::from(ub.get(a, b, c)), "ubct {a} {b} {c}");
                    assert_eq!(e.lbct(a, b, c), u64::from(lb.get(a, b, c)), "lbct {a} {b} {c}");
                }
            }
        }
        for c in 0..size {
            assert_eq!(e.ebct_slice(c), full::ebct_slice(f, c), "ebct slice {c}");
        }
    }

    #[test]
    fn random_functions_and_permutations() {
        for seed in 0..6 {
            let n = 3 + (seed % 2) as u32;
            let lut = if seed % 3 == 0 {
                sampling::random_permutation(n, seed)
            } else {
                sampling::random_lut(n, seed)
            };
            let f = VecFun::from_lut(ctx(n), lut, crate::Family::LutFile { source: None }).unwrap();
            check_all(&f);
        }
    }

    #[test]
    fn entrywise_ebct_matches_slice() {
        let f = VecFun::from_lut(
            ctx(3),
            sampling::random_lut(3, 11),
            crate::Family::LutFile { source: None },
        )
        .unwrap();
        let e = DeltaUniform::new(&f);
        for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    for d in 0..8 {
                        assert_eq!(e.ebct(a, b, c, d), tables::ebct_entry(&f, a, b, c, d));
                    }
                }
            }
        }
    }

    #[test]
    fn x11_example() {
        // X^11 over GF(2^6): DDT(g, g^11) = 10 and EBCT(g^55, g^38, g, g^11) = 8
        let k = ctx(6);
        let f = VecFun::power(k.clone(), 11);
        let g = |e| k.gpow(e);
        let e = DeltaUniform::new(&f);
        assert_eq!(e.ddt(g(1), g(11)), 10);
        assert_eq!(e.ebct(g(55), g(38), g(1), g(11)), 8);
        assert_eq!(tables::ebct_entry(&f, g(55), g(38), g(1), g(11)), 8);
    }

    #[test]
    fn matching_variant_differs_only_off_permutations() {
        let f = VecFun::gold(ctx(4), 1);
        let e = DeltaUniform::new(&f);
        for a in 0..16 {
            for b in 0..16 {
                for c in 0..16 {
                    assert_eq!(e.ubct_matching(a, b, c).unwrap(), e.ubct(a, b, c));
                }
            }
        }
        // a non-permutation where some pair has two W partners
        let mut found = false;
        for seed in 0..40 {
            let f = VecFun::from_lut(
                ctx(4),
                sampling::random_lut(4, seed),
                crate::Family::LutFile { source: None },
            )
            .unwrap();
            let e = DeltaUniform::new(&f);
            'scan: for a in 1..16 {
                for b in 0..16 {
                    for c in 1..16 {
                        if let Ok(m) = e.ubct_matching(a, b, c) {
                            if m != e.ubct(a, b, c) {
                                assert_eq!(e.ubct(a, b, c), tables::ubct_entry(&f, a, b, c));
                                found = true;
                                break 'scan;
                            }
                        }
                    }
                }
            }
            if found {
                break;
            }
        }
        assert!(found);
    }

    #[test]
    fn ge2lu_correspondence() {
        let f = VecFun::power(ctx(5), 7);
        for t in sampling::sample_tuples(5, 4, false, 300, 4) {
            let r = ge2lu_check(&f, t[0], t[1], t[2], t[3]);
            assert!(r.correspondence_holds());
            assert!(r.inequality_holds());
        }
    }
}
