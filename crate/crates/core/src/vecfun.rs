//! Vectorial Boolean functions GF(2^n) -> GF(2^n) held as full lookup tables.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};

/// Where a lookup table came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "kebab-case")]
pub enum Family {
    Power { d: u64 },
    Gold { s: u32 },
    Kasami { s: u32 },
    Bracken { s: u32 },
    Inverse,
    LutFile { source: Option<String> },
    Polynomial { coeffs: Vec<Elem> },
    Modified { base: Box<Family>, description: String },
}

impl Family {
    /// Exponent of a monomial family.
    pub fn exponent(&self, n: u32) -> Option<u64> {
        match *self {
            Family::Power { d } => Some(d),
            Family::Gold { s } => Some((1u64 << s) + 1),
            Family::Kasami { s } => Some((1u64 << (2 * s)) - (1u64 << s) + 1),
            Family::Bracken { s } => Some((1u64 << (2 * s)) + (1u64 << s) + 1),
            Family::Inverse => Some((1u64 << n) - 2),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Power { d } => write!(f, "power:{d}"),
            Family::Gold { s } => write!(f, "gold:{s}"),
            Family::Kasami { s } => write!(f, "kasami:{s}"),
            Family::Bracken { s } => write!(f, "bracken:{s}"),
            Family::Inverse => write!(f, "inverse"),
            Family::LutFile { source: Some(p) } => write!(f, "lut:@{p}"),
            Family::LutFile { source: None } => write!(f, "lut"),
            Family::Polynomial { coeffs } => {
                let c: Vec<String> = coeffs.iter().map(|c| format!("{c:x}")).collect();
                write!(f, "poly:{}", c.join(","))
            }
            Family::Modified { base, description } => write!(f, "{base} ({description})"),
        }
    }
}

#[derive(Clone)]
pub struct VecFun {
    field: Arc<FieldCtx>,
    lut: Vec<Elem>,
    family: Family,
    inverse: Option<Vec<Elem>>,
    // preimages of y are fiber_points[fiber_start[y]..fiber_start[y + 1]], ascending
    fiber_start: Vec<u32>,
    fiber_points: Vec<Elem>,
}

impl fmt::Debug for VecFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VecFun")
            .field("field", &self.field)
            .field("family", &self.family)
            .field("permutation", &self.is_permutation())
            .finish()
    }
}

impl VecFun {
    pub fn from_lut(field: Arc<FieldCtx>, lut: Vec<Elem>, family: Family) -> Result<Self> {
        let size = field.size();
        if lut.len() != size {
            return Err(Error::LutLength {
                expected: size,
                got: lut.len(),
            });
        }
        if let Some((index, &v)) = lut.iter().enumerate().find(|(_, &v)| v as usize >= size) {
            return Err(Error::LutValue {
                index,
                value: u64::from(v),
            });
        }
        let mut fiber_start = vec![0u32; size + 1];
        for &y in &lut {
            fiber_start[y as usize + 1] += 1;
        }
        for y in 0..size {
            fiber_start[y + 1] += fiber_start[y];
        }
        let mut fill = fiber_start.clone();
        let mut fiber_points = vec![0 as Elem; size];
        for (x, &y) in lut.iter().enumerate() {
            fiber_points[fill[y as usize] as usize] = x as Elem;
            fill[y as usize] += 1;
        }
        let inverse = if (0..size).all(|y| fiber_start[y + 1] - fiber_start[y] == 1) {
            let mut inv = vec![0 as Elem; size];
            for (x, &y) in lut.iter().enumerate() {
                inv[y as usize] = x as Elem;
            }
            Some(inv)
        } else {
            None
        };
        Ok(VecFun {
            field,
            lut,
            family,
            inverse,
            fiber_start,
            fiber_points,
        })
    }

    pub fn from_fn(field: Arc<FieldCtx>, family: Family, f: impl Fn(Elem) -> Elem) -> Self {
        let lut = (0..field.size() as Elem).map(f).collect();
        Self::from_lut(field, lut, family).expect("closure stays inside the field")
    }

    pub fn power(field: Arc<FieldCtx>, d: u64) -> Self {
        Self::monomial(field, Family::Power { d })
    }

    pub fn gold(field: Arc<FieldCtx>, s: u32) -> Self {
        Self::monomial(field, Family::Gold { s })
    }

    pub fn kasami(field: Arc<FieldCtx>, s: u32) -> Self {
        Self::monomial(field, Family::Kasami { s })
    }

    pub fn bracken(field: Arc<FieldCtx>, s: u32) -> Self {
        Self::monomial(field, Family::Bracken { s })
    }

    pub fn inverse_map(field: Arc<FieldCtx>) -> Self {
        Self::monomial(field, Family::Inverse)
    }

    fn monomial(field: Arc<FieldCtx>, family: Family) -> Self {
        let d = family.exponent(field.n()).expect("monomial family");
        let ctx = field.clone();
        Self::from_fn(field, family, move |x| ctx.pow(x, d))
    }

    /// `sum_i coeffs[i] x^i`.
    pub fn polynomial(field: Arc<FieldCtx>, coeffs: Vec<Elem>) -> Result<Self> {
        for &c in &coeffs {
            field.check(u64::from(c))?;
        }
        let ctx = field.clone();
        let cs = coeffs.clone();
        Ok(Self::from_fn(field, Family::Polynomial { coeffs }, move |x| {
            cs.iter()
                .enumerate()
                .fold(0, |acc, (i, &c)| acc ^ ctx.mul(c, ctx.pow(x, i as u64)))
        }))
    }

    /// Rebuilds the table from a named family; `None` for tables without a generator.
    pub fn regenerate(field: Arc<FieldCtx>, family: &Family) -> Option<Result<Self>> {
        match family {
            Family::Polynomial { coeffs } => Some(Self::polynomial(field, coeffs.clone())),
            f if f.exponent(field.n()).is_some() => Some(Ok(Self::monomial(field, f.clone()))),
            _ => None,
        }
    }

    /// Applies `g` to every output value and tags the result as a modification of `self`.
    pub fn modified(&self, description: &str, g: impl Fn(Elem, Elem) -> Elem) -> Self {
        let lut = self.lut.iter().enumerate().map(|(x, &y)| g(x as Elem, y)).collect();
        let family = Family::Modified {
            base: Box::new(self.family.clone()),
            description: description.to_string(),
        };
        Self::from_lut(self.field.clone(), lut, family).expect("modification stays in the field")
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn n(&self) -> u32 {
        self.field.n()
    }

    pub fn size(&self) -> usize {
        self.lut.len()
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn lut(&self) -> &[Elem] {
        &self.lut
    }

    #[inline]
    pub fn eval(&self, x: Elem) -> Elem {
        self.lut[x as usize]
    }

    pub fn is_permutation(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn inverse_lut(&self) -> Option<&[Elem]> {
        self.inverse.as_deref()
    }

    /// The compositional inverse as a new function.
    pub fn inverse(&self) -> Result<VecFun> {
        let inv = self.inverse.clone().ok_or(Error::NotPermutation)?;
        let family = Family::Modified {
            base: Box::new(self.family.clone()),
            description: "inverse".into(),
        };
        VecFun::from_lut(self.field.clone(), inv, family)
    }

    /// Preimages of `y`, ascending.
    #[inline]
    pub fn preimages(&self, y: Elem) -> &[Elem] {
        let lo = self.fiber_start[y as usize] as usize;
        let hi = self.fiber_start[y as usize + 1] as usize;
        &self.fiber_points[lo..hi]
    }

    /// Image of the function, ascending.
    pub fn image(&self) -> Vec<Elem> {
        (0..self.size() as Elem)
            .filter(|&y| !self.preimages(y).is_empty())
            .collect()
    }

    /// `|F^{-1}(c + Im F)|`: the number of X with F(X) + c in the image.
    pub fn shifted_image_preimage_count(&self, c: Elem) -> u32 {
        self.lut.iter().filter(|&&y| !self.preimages(y ^ c).is_empty()).count() as u32
    }

    #[inline]
    pub fn derivative_at(&self, a: Elem, x: Elem) -> Elem {
        self.eval(x) ^ self.eval(x ^ a)
    }

    pub fn derivative(&self, a: Elem) -> Vec<Elem> {
        (0..self.size() as Elem).map(|x| self.derivative_at(a, x)).collect()
    }

    #[inline]
    pub fn second_derivative_at(&self, a: Elem, b: Elem, x: Elem) -> Elem {
        self.eval(x) ^ self.eval(x ^ a) ^ self.eval(x ^ b) ^ self.eval(x ^ a ^ b)
    }

    /// Solutions of `F(X) + F(X + a) = b`, ascending.
    pub fn derivative_solutions(&self, a: Elem, b: Elem) -> Vec<Elem> {
        (0..self.size() as Elem)
            .filter(|&x| self.derivative_at(a, x) == b)
            .collect()
    }

    /// Maximum DDT entry over nonzero input differences.
    pub fn differential_uniformity(&self) -> u32 {
        let mut row = vec![0u32; self.size()];
        let mut best = 0;
        for a in 1..self.size() as Elem {
            row.iter_mut().for_each(|v| *v = 0);
            for x in 0..self.size() as Elem {
                row[self.derivative_at(a, x) as usize] += 1;
            }
            best = best.max(*row.iter().max().unwrap());
        }
        best
    }
}
