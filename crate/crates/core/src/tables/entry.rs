//! Single entries straight from the defining systems.

use crate::field::Elem;
use crate::vecfun::VecFun;

fn domain(f: &VecFun) -> std::ops::Range<Elem> {
    0..f.size() as Elem
}

/// `#{X : F(X + a) + F(X) = b}`.
pub fn ddt_entry(f: &VecFun, a: Elem, b: Elem) -> u64 {
    domain(f).filter(|&x| f.derivative_at(a, x) == b).count() as u64
}

pub fn ddt_row(f: &VecFun, a: Elem) -> Vec<u64> {
    let mut row = vec![0u64; f.size()];
    for x in domain(f) {
        row[f.derivative_at(a, x) as usize] += 1;
    }
    row
}

/// Pairs (X, Y) with F(X) + F(Y) = b and F(X + a) + F(Y + a) = b.
pub fn bct_entry(f: &VecFun, a: Elem, b: Elem) -> u64 {
    let mut count = 0;
    for x in domain(f) {
        let fxa = f.eval(x ^ a);
        for &y in f.preimages(f.eval(x) ^ b) {
            if fxa ^ f.eval(y ^ a) == b {
                count += 1;
            }
        }
    }
    count
}

/// `#{X : F(X + a + b) + F(X + b) + F(X + a) + F(X) = 0}`.
pub fn fbct_entry(f: &VecFun, a: Elem, b: Elem) -> u64 {
    dd_entry(f, a, b, 0)
}

/// `#{X : F(X + a + b) + F(X + b) + F(X + a) + F(X) = c}`.
pub fn dd_entry(f: &VecFun, a: Elem, b: Elem, c: Elem) -> u64 {
    domain(f).filter(|&x| f.second_derivative_at(a, b, x) == c).count() as u64
}

/// X with F(X) + F(X + a) = b for which some Y gives
/// F(X) + F(Y) = c and F(X + a) + F(Y + a) = c.
pub fn ubct_entry(f: &VecFun, a: Elem, b: Elem, c: Elem) -> u64 {
    domain(f)
        .filter(|&x| {
            if f.derivative_at(a, x) != b {
                return false;
            }
            let target = f.eval(x ^ a) ^ c;
            match f.inverse_lut() {
                Some(inv) => f.eval(inv[(f.eval(x) ^ c) as usize] ^ a) == target,
                None => f.preimages(f.eval(x) ^ c).iter().any(|&y| f.eval(y ^ a) == target),
            }
        })
        .count() as u64
}

/// Pair-counting UBCT variant: every solution (X, Y) counts.
pub fn ubct_pairs_entry(f: &VecFun, a: Elem, b: Elem, c: Elem) -> u64 {
    let mut count = 0;
    for x in domain(f) {
        if f.derivative_at(a, x) != b {
            continue;
        }
        let target = f.eval(x ^ a) ^ c;
        count += f
            .preimages(f.eval(x) ^ c)
            .iter()
            .filter(|&&y| f.eval(y ^ a) == target)
            .count() as u64;
    }
    count
}

/// `#{X : F(X) + F(X + b) = c, F(X + a) + F(X + a + b) = c}`.
pub fn lbct_entry(f: &VecFun, a: Elem, b: Elem, c: Elem) -> u64 {
    domain(f)
        .filter(|&x| f.derivative_at(b, x) == c && f.derivative_at(b, x ^ a) == c)
        .count() as u64
}

/// `#{X : F(X) + F(X + a) = b, F(X) + F(X + c) = d, F(X + a) + F(X + a + c) = d}`.
pub fn ebct_entry(f: &VecFun, a: Elem, b: Elem, c: Elem, d: Elem) -> u64 {
    domain(f)
        .filter(|&x| f.derivative_at(a, x) == b && f.derivative_at(c, x) == d && f.derivative_at(c, x ^ a) == d)
        .count() as u64
}

/// `sum_{b, c} UBCT(a, b, c) LBCT(b, c, d)`, computed from one UBCT slice and
/// the solution sets S(c, d) without materializing either table.
pub fn dbct_entry(f: &VecFun, a: Elem, d: Elem) -> u64 {
    let n = f.n();
    let size = f.size();
    let ub = super::full::ubct_slice(f, a);
    let mut total = 0u64;
    let mut sol = Vec::new();
    for c in 0..size as Elem {
        sol.clear();
        sol.extend(domain(f).filter(|&x| f.derivative_at(c, x) == d));
        // LBCT(b, c, d) = #{X in S(c, d) : X + b in S(c, d)}
        for &x in &sol {
            for &y in &sol {
                let b = x ^ y;
                total += u64::from(ub[((b as usize) << n) | c as usize]);
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use std::sync::Arc;

    fn gold(n: u32, s: u32) -> VecFun {
        VecFun::gold(Arc::new(FieldCtx::new(n, None).unwrap()), s)
    }

    #[test]
    fn trivial_rows() {
        let f = gold(5, 1);
        assert_eq!(ddt_entry(&f, 0, 0), 32);
        assert_eq!(ddt_entry(&f, 0, 3), 0);
        assert_eq!(ddt_row(&f, 7).iter().sum::<u64>(), 32);
        assert_eq!(bct_entry(&f, 9, 0), 32);
        assert_eq!(fbct_entry(&f, 5, 5), 32);
        assert_eq!(fbct_entry(&f, 0, 5), 32);
        assert_eq!(ebct_entry(&f, 0, 0, 0, 0), 32);
        assert_eq!(lbct_entry(&f, 13, 0, 0), 32);
        assert_eq!(ubct_entry(&f, 0, 0, 17), 32);
        assert_eq!(dbct_entry(&f, 0, 3), 1024);
        assert_eq!(dbct_entry(&f, 3, 0), 1024);
    }

    #[test]
    fn x11_example_counts() {
        let ctx = Arc::new(FieldCtx::new(6, None).unwrap());
        let f = VecFun::power(ctx.clone(), 11);
        let g = |k| ctx.gpow(k);
        assert_eq!(ddt_entry(&f, g(1), g(11)), 10);
        assert_eq!(ebct_entry(&f, g(55), g(38), g(1), g(11)), 8);
        assert_eq!(ebct_entry(&f, g(19), g(20), g(1), g(11)), 8);
    }

    #[test]
    fn pair_counting_differs_for_non_permutations() {
        let ctx = Arc::new(FieldCtx::new(3, None).unwrap());
        let f = VecFun::polynomial(ctx, vec![0, 1, 0, 0, 0, 1]).unwrap();
        let mut differ = false;
        for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    let d = ubct_entry(&f, a, b, c);
                    let p = ubct_pairs_entry(&f, a, b, c);
                    assert!(p >= d);
                    differ |= p != d;
                }
            }
        }
        assert!(differ);
    }
}
