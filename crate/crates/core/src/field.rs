//! GF(2^n) arithmetic through log/antilog tables.
//!
//! An element is a `u32` whose bit i is the coefficient of x^i in the
//! polynomial basis defined by the modulus.

use crate::error::{Error, Result};
use crate::poly;

pub type Elem = u32;

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 20;

/// Default moduli: the Conway polynomials over GF(2), all primitive.
///
/// Index i holds the modulus for n = i + 2, written with the x^n bit set.
pub const DEFAULT_MODULI: [u64; 19] = [
    0x7,      // n=2  x^2+x+1
    0xb,      // n=3  x^3+x+1
    0x13,     // n=4  x^4+x+1
    0x25,     // n=5  x^5+x^2+1
    0x5b,     // n=6  x^6+x^4+x^3+x+1
    0x83,     // n=7  x^7+x+1
    0x11d,    // n=8  x^8+x^4+x^3+x^2+1
    0x211,    // n=9  x^9+x^4+1
    0x46f,    // n=10 x^10+x^6+x^5+x^3+x^2+x+1
    0x805,    // n=11 x^11+x^2+1
    0x10eb,   // n=12 x^12+x^7+x^6+x^5+x^3+x+1
    0x201b,   // n=13 x^13+x^4+x^3+x+1
    0x40a9,   // n=14 x^14+x^7+x^5+x^3+1
    0x8035,   // n=15 x^15+x^5+x^4+x^2+1
    0x1002d,  // n=16 x^16+x^5+x^3+x^2+1
    0x20009,  // n=17 x^17+x^3+1
    0x41403,  // n=18 x^18+x^12+x^10+x+1
    0x80027,  // n=19 x^19+x^5+x^2+x+1
    0x1006f3, // n=20 x^20+x^10+x^9+x^7+x^6+x^5+x^4+x+1
];

pub fn default_modulus(n: u32) -> Option<u64> {
    if (MIN_DEGREE..=MAX_DEGREE).contains(&n) {
        Some(DEFAULT_MODULI[(n - MIN_DEGREE) as usize])
    } else {
        None
    }
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A fixed representation of GF(2^n): modulus plus primitive element `g`.
#[derive(Clone)]
pub struct FieldCtx {
    n: u32,
    modulus: u64,
    generator: Elem,
    // exp[k] = g^k for 0 <= k < 2 * order, so products never need a reduction.
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("n", &self.n)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .field("generator", &format_args!("{:#x}", self.generator))
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.modulus == other.modulus && self.generator == other.generator
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Field with the given (or default) modulus. The generator is `x` when
    /// `x` is primitive, otherwise the smallest primitive element.
    pub fn new(n: u32, modulus: Option<u64>) -> Result<Self> {
        Self::with_generator(n, modulus, None)
    }

    pub fn with_generator(n: u32, modulus: Option<u64>, generator: Option<Elem>) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        let modulus = match modulus {
            Some(m) => m,
            None => default_modulus(n).expect("range checked"),
        };
        if poly::degree(modulus) != Some(n) {
            return Err(Error::ModulusDegree { n, modulus });
        }
        if let Some(factor) = poly::smallest_factor(modulus) {
            return Err(Error::ReducibleModulus { modulus, factor });
        }
        let size = 1u64 << n;
        let generator = match generator {
            Some(g) => {
                if u64::from(g) >= size || !poly::is_generator(u64::from(g), modulus) {
                    return Err(Error::NotPrimitive {
                        modulus,
                        generator: u64::from(g),
                    });
                }
                g
            }
            None => (2..size)
                .find(|&g| poly::is_generator(g, modulus))
                .expect("every finite field has a primitive element") as Elem,
        };

        let order = (size - 1) as usize;
        let mut exp = vec![0 as Elem; 2 * order];
        let mut log = vec![0u32; size as usize];
        let mut cur: u64 = 1;
        for (k, slot) in exp.iter_mut().take(order).enumerate() {
            *slot = cur as Elem;
            log[cur as usize] = k as u32;
            cur = poly::rem(poly::clmul(cur, u64::from(generator)), modulus);
        }
        debug_assert_eq!(cur, 1);
        for k in order..2 * order {
            exp[k] = exp[k - order];
        }
        Ok(FieldCtx {
            n,
            modulus,
            generator,
            exp,
            log,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of field elements, 2^n.
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    /// Order of the multiplicative group, 2^n - 1.
    pub fn order(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn contains(&self, x: u64) -> bool {
        x < (1u64 << self.n)
    }

    pub fn check(&self, x: u64) -> Result<Elem> {
        if self.contains(x) {
            Ok(x as Elem)
        } else {
            Err(Error::ElementOutOfRange(x))
        }
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        x ^ y
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x == 0 || y == 0 {
            0
        } else {
            self.exp[(self.log[x as usize] + self.log[y as usize]) as usize]
        }
    }

    #[inline]
    pub fn square(&self, x: Elem) -> Elem {
        self.mul(x, x)
    }

    /// `x^e`, with `0^0 = 1`.
    #[inline]
    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if x == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let k = (u64::from(self.log[x as usize]) * (e % self.order())) % self.order();
        self.exp[k as usize]
    }

    /// `g^k` for the fixed primitive element `g`.
    #[inline]
    pub fn gpow(&self, k: u64) -> Elem {
        self.exp[(k % self.order()) as usize]
    }

    /// Discrete logarithm to base `g`; `None` for zero.
    #[inline]
    pub fn log(&self, x: Elem) -> Option<u32> {
        if x == 0 {
            None
        } else {
            Some(self.log[x as usize])
        }
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x == 0 {
            Err(Error::ZeroInverse)
        } else {
            Ok(self.recip(x))
        }
    }

    /// Inverse of a nonzero element. Panics on zero.
    #[inline]
    pub fn recip(&self, x: Elem) -> Elem {
        assert!(x != 0, "zero has no multiplicative inverse");
        let l = self.log[x as usize] as u64;
        self.exp[((self.order() - l) % self.order()) as usize]
    }

    /// `x / y` for nonzero `y`. Panics on zero.
    #[inline]
    pub fn div(&self, x: Elem, y: Elem) -> Elem {
        self.mul(x, self.recip(y))
    }

    /// Frobenius power `x^(2^k)`.
    #[inline]
    pub fn frob(&self, x: Elem, k: u32) -> Elem {
        if x == 0 {
            return 0;
        }
        let k = k % self.n;
        let l = (u64::from(self.log[x as usize]) << k) % self.order();
        self.exp[l as usize]
    }

    /// Absolute trace to GF(2), returned as 0 or 1.
    pub fn abs_trace(&self, x: Elem) -> Elem {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.n {
            acc ^= y;
            y = self.square(y);
        }
        debug_assert!(acc <= 1);
        acc
    }

    /// Relative trace from GF(2^n) onto GF(2^m), m | n.
    pub fn rel_trace(&self, m: u32, x: Elem) -> Result<Elem> {
        if m == 0 || !self.n.is_multiple_of(m) {
            return Err(Error::NotDivisor { m, n: self.n });
        }
        Ok(self.frob_sum(x, m, self.n / m))
    }

    /// `sum_{i < m} x^(2^(s i))` with m = n / gcd(s, n).
    ///
    /// The result equals the relative trace onto GF(2^gcd(s, n)).
    pub fn embedded_trace(&self, s: u32, x: Elem) -> Elem {
        let t = gcd(s, self.n);
        let m = self.n / t;
        let out = self.frob_sum(x, s, m);
        debug_assert!(self.in_subfield(out, t));
        out
    }

    fn frob_sum(&self, x: Elem, step: u32, terms: u32) -> Elem {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..terms {
            acc ^= y;
            y = self.frob(y, step);
        }
        acc
    }

    /// Membership in the subfield GF(2^t); `t` must divide n.
    #[inline]
    pub fn in_subfield(&self, x: Elem, t: u32) -> bool {
        self.frob(x, t) == x
    }

    /// Elements of GF(2^t) in increasing integer order, zero included.
    pub fn subfield_elements(&self, t: u32) -> Result<Vec<Elem>> {
        if t == 0 || !self.n.is_multiple_of(t) {
            return Err(Error::NotDivisor { m: t, n: self.n });
        }
        let mut out = vec![0];
        let step = self.order() / ((1u64 << t) - 1);
        let mut v: Vec<Elem> = (0..(1u64 << t) - 1).map(|k| self.gpow(k * step)).collect();
        v.sort_unstable();
        out.extend(v);
        Ok(out)
    }

    /// Minimal polynomial over GF(2) of `x`, packed as bits.
    pub fn min_poly(&self, x: Elem) -> u64 {
        let mut conj = vec![x];
        let mut y = self.square(x);
        while y != x {
            conj.push(y);
            y = self.square(y);
        }
        // coefficients low to high, over GF(2^n)
        let mut coeffs: Vec<Elem> = vec![1];
        for &r in &conj {
            let mut next = vec![0 as Elem; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] ^= c;
                next[i] ^= self.mul(c, r);
            }
            coeffs = next;
        }
        coeffs.iter().enumerate().fold(0u64, |acc, (i, &c)| {
            debug_assert!(c <= 1);
            acc | (u64::from(c) << i)
        })
    }

    /// Parses a field literal: hex (`0x1f` or `1f`) or a power of the primitive element (`g^k`, `g`).
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let t = text.trim();
        if t == "g" {
            return Ok(self.generator);
        }
        if let Some(k) = t.strip_prefix("g^") {
            let k: u64 = k.parse().map_err(|_| Error::Parse(format!("bad exponent in {t:?}")))?;
            return Ok(self.gpow(k));
        }
        let hex = t.strip_prefix("0x").unwrap_or(t);
        let v = u64::from_str_radix(hex, 16).map_err(|_| Error::Parse(format!("bad field literal {t:?}")))?;
        self.check(v)
    }
}

/// Every (primitive modulus, primitive element) pair for degree n <= 12, moduli
/// in increasing integer order and elements in increasing integer order.
pub fn enumerate_primitive_representations(n: u32) -> Result<Vec<(u64, Elem)>> {
    if !(MIN_DEGREE..=12).contains(&n) {
        return Err(Error::DegreeOutOfRange(n));
    }
    let mut out = Vec::new();
    for low in 0..(1u64 << n) {
        let m = (1u64 << n) | low;
        if low & 1 == 0 || !poly::is_primitive(m) {
            continue;
        }
        let ctx = FieldCtx::with_generator(n, Some(m), Some(2))?;
        for x in 2..ctx.size() as Elem {
            if ctx.is_primitive_elem(x) {
                out.push((m, x));
            }
        }
    }
    Ok(out)
}

impl FieldCtx {
    /// True when `x` has multiplicative order 2^n - 1.
    pub fn is_primitive_elem(&self, x: Elem) -> bool {
        match self.log(x) {
            None => false,
            Some(l) => gcd(l, self.order() as u32) == 1,
        }
    }
}
