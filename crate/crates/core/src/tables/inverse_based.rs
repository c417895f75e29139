//! UBCT, LBCT and EBCT written with the compositional inverse.
//!
//! Only defined for permutations; kept as a differential-testing path for the
//! inverse-free engines.

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::vecfun::VecFun;

fn inverse(f: &VecFun) -> Result<&[Elem]> {
    f.inverse_lut().ok_or(Error::NotPermutation)
}

/// `#{X : F(X) + F(X + a) = b, F^-1(F(X) + c) + F^-1(F(X + a) + c) = a}`.
pub fn ubct(f: &VecFun, a: Elem, b: Elem, c: Elem) -> Result<u64> {
    let inv = inverse(f)?;
    Ok((0..f.size() as Elem)
        .filter(|&x| {
            f.derivative_at(a, x) == b && inv[(f.eval(x) ^ c) as usize] ^ inv[(f.eval(x ^ a) ^ c) as usize] == a
        })
        .count() as u64)
}

/// `#{X : F(X) + F(X + b) = c, F^-1(F(X) + c) + F^-1(F(X + a) + c) = a}`.
pub fn lbct(f: &VecFun, a: Elem, b: Elem, c: Elem) -> Result<u64> {
    let inv = inverse(f)?;
    Ok((0..f.size() as Elem)
        .filter(|&x| {
            f.derivative_at(b, x) == c && inv[(f.eval(x) ^ c) as usize] ^ inv[(f.eval(x ^ a) ^ c) as usize] == a
        })
        .count() as u64)
}

/// `#{X : F(X) + F(X + a) = b, F(X) + F(X + c) = d, F^-1(F(X) + d) + F^-1(F(X + a) + d) = a}`.
pub fn ebct(f: &VecFun, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<u64> {
    let inv = inverse(f)?;
    Ok((0..f.size() as Elem)
        .filter(|&x| {
            f.derivative_at(a, x) == b
                && f.derivative_at(c, x) == d
                && inv[(f.eval(x) ^ d) as usize] ^ inv[(f.eval(x ^ a) ^ d) as usize] == a
        })
        .count() as u64)
}
