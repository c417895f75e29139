//! Arithmetic on binary polynomials packed into integers (bit i = coefficient of x^i).

/// Degree of a nonzero polynomial; `None` for the zero polynomial.
pub fn degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

/// Carry-less product.
pub fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

/// Remainder of `a` modulo `m` (`m` nonzero).
pub fn rem(a: u64, m: u64) -> u64 {
    let dm = degree(m).expect("division by the zero polynomial");
    let mut a = a;
    while let Some(da) = degree(a) {
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

/// `a * b mod m`.
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    rem(clmul(rem(a, m), rem(b, m)), m)
}

/// `a^e mod m` by square-and-multiply.
pub fn powmod(a: u64, mut e: u64, m: u64) -> u64 {
    let mut base = rem(a, m);
    let mut acc = rem(1, m);
    while e != 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Smallest nontrivial factor of `p` (degree at most deg(p)/2), or `None` when `p` is irreducible.
pub fn smallest_factor(p: u64) -> Option<u64> {
    let d = degree(p)?;
    if d == 0 {
        return None;
    }
    for fd in 1..=d / 2 {
        for low in 0..(1u64 << fd) {
            let cand = (1u64 << fd) | low;
            if rem(p, cand) == 0 {
                return Some(cand);
            }
        }
    }
    None
}

pub fn is_irreducible(p: u64) -> bool {
    matches!(degree(p), Some(d) if d >= 1) && smallest_factor(p).is_none()
}

/// Distinct prime divisors of `v`.
pub fn prime_divisors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= v {
        if v.is_multiple_of(p) {
            out.push(p);
            while v.is_multiple_of(p) {
                v /= p;
            }
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// Multiplicative order test: `g` generates the full group of GF(2)[x]/(m), m irreducible of degree n.
pub fn is_generator(g: u64, m: u64) -> bool {
    let n = match degree(m) {
        Some(n) => n,
        None => return false,
    };
    let g = rem(g, m);
    if g == 0 {
        return false;
    }
    let order = (1u64 << n) - 1;
    if powmod(g, order, m) != 1 {
        return false;
    }
    prime_divisors(order).into_iter().all(|p| powmod(g, order / p, m) != 1)
}

pub fn is_primitive(p: u64) -> bool {
    is_irreducible(p) && is_generator(0b10, p)
}

/// Human-readable form, e.g. `x^6 + x^4 + x^3 + x + 1`.
pub fn to_string(p: u64) -> String {
    if p == 0 {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for i in (0..64).rev() {
        if (p >> i) & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            });
        }
    }
    terms.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_of_reducible_polynomials() {
        // x^4 + 1 = (x + 1)^4
        assert_eq!(smallest_factor(0b10001), Some(0b11));
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert_eq!(smallest_factor(0b10101), Some(0b111));
        assert_eq!(smallest_factor(0b10011), None);
    }

    #[test]
    fn primitive_versus_irreducible() {
        // x^4 + x^3 + x^2 + x + 1 is irreducible but x has order 5.
        assert!(is_irreducible(0b11111));
        assert!(!is_primitive(0b11111));
        assert!(is_primitive(0b10011));
    }

    #[test]
    fn counts_of_primitive_polynomials() {
        // phi(2^n - 1) / n
        let expected = [(2, 1), (3, 2), (4, 2), (5, 6), (6, 6), (7, 18), (8, 16)];
        for (n, count) in expected {
            let found = (0..(1u64 << n))
                .map(|low| (1u64 << n) | low)
                .filter(|&p| is_primitive(p))
                .count();
            assert_eq!(found, count, "n = {n}");
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(to_string(0b1011011), "x^6 + x^4 + x^3 + x + 1");
    }
}
