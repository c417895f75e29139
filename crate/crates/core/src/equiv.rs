//! CCZ, EA and affine transforms of function graphs.
//!
//! An [`AffineMap2n`] acts on pairs (x, y) by
//! (x, y) ↦ (A11 x + A12 y + C, A21 x + A22 y + D). Applied to the graph of F it
//! gives the graph of G when the first coordinate stays a bijection. For maps of
//! the matching form, table_F(t) = table_G(predicted_indices(t)) entrywise:
//! EBCT under any admissible map, LBCT under EA maps (A12 = 0), UBCT under
//! affine maps (A12 = A21 = 0).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_form::BoomerangKind;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::sampling;
use crate::tables::{self, DomainFilter, Spectrum, Sweep, TableKind};
use crate::vecfun::{Family, VecFun};

/// Attempts before [`random_affine`] gives up.
pub const MAX_ATTEMPTS: usize = 10_000;

/// Rank of a set of GF(2) row vectors.
fn rank_u64(rows: &[u64]) -> usize {
    let mut rows = rows.to_vec();
    let mut rank = 0;
    for bit in 0..64 {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && *r >> bit & 1 == 1 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// n×n matrix over GF(2). Row i holds the coefficients of output bit i, in the
/// same bit order as field elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: u32,
    rows: Vec<u32>,
}

impl BitMatrix {
    pub fn from_rows(n: u32, rows: Vec<u32>) -> Result<Self> {
        if rows.len() != n as usize {
            return Err(Error::Parse(format!("matrix needs {n} rows, got {}", rows.len())));
        }
        if let Some(&r) = rows.iter().find(|&&r| u64::from(r) >> n != 0) {
            return Err(Error::Parse(format!("row {r:#x} is wider than {n} bits")));
        }
        Ok(BitMatrix { n, rows })
    }

    pub fn zero(n: u32) -> Self {
        BitMatrix {
            n,
            rows: vec![0; n as usize],
        }
    }

    pub fn identity(n: u32) -> Self {
        BitMatrix {
            n,
            rows: (0..n).map(|i| 1 << i).collect(),
        }
    }

    pub fn random(n: u32, rng: &mut impl Rng) -> Self {
        BitMatrix {
            n,
            rows: (0..n).map(|_| rng.gen_range(0..1u32 << n)).collect(),
        }
    }

    /// Matrix of a GF(2)-linear map given as a function.
    pub fn from_linear_fn(n: u32, f: impl Fn(Elem) -> Elem) -> Self {
        let mut rows = vec![0u32; n as usize];
        for j in 0..n {
            let col = f(1 << j);
            for (i, r) in rows.iter_mut().enumerate() {
                *r |= (col >> i & 1) << j;
            }
        }
        BitMatrix { n, rows }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | ((r & x).count_ones() & 1) << i)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &BitMatrix) -> BitMatrix {
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                (0..self.n as usize)
                    .filter(|&j| r >> j & 1 == 1)
                    .fold(0, |acc, j| acc ^ other.rows[j])
            })
            .collect();
        BitMatrix { n: self.n, rows }
    }

    pub fn rank(&self) -> usize {
        rank_u64(&self.rows.iter().map(|&r| u64::from(r)).collect::<Vec<_>>())
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n as usize
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.n as usize;
        let mut aug: Vec<u64> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, &r)| u64::from(r) | 1u64 << (n + i))
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&i| aug[i] >> col & 1 == 1)?;
            aug.swap(col, p);
            let pivot = aug[col];
            for (i, r) in aug.iter_mut().enumerate() {
                if i != col && *r >> col & 1 == 1 {
                    *r ^= pivot;
                }
            }
        }
        Some(BitMatrix {
            n: self.n,
            rows: aug.iter().map(|&r| (r >> n) as u32).collect(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapForm {
    /// Any invertible block matrix (CCZ).
    General,
    /// A12 = 0.
    Ea,
    /// A12 = A21 = 0.
    Affine,
}

impl MapForm {
    /// Whether a map of this form carries `kind` entrywise.
    pub fn covers(self, kind: BoomerangKind) -> bool {
        match kind {
            BoomerangKind::Ebct => true,
            BoomerangKind::Lbct => self != MapForm::General,
            BoomerangKind::Ubct => self == MapForm::Affine,
        }
    }
}

impl fmt::Display for MapForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapForm::General => "general",
            MapForm::Ea => "ea",
            MapForm::Affine => "affine",
        })
    }
}

impl FromStr for MapForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "general" | "ccz" => Ok(MapForm::General),
            "ea" => Ok(MapForm::Ea),
            "affine" => Ok(MapForm::Affine),
            _ => Err(Error::Parse(format!("unknown map form {s:?}"))),
        }
    }
}

/// Affine permutation of GF(2^n) × GF(2^n).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MapJson", into = "MapJson")]
pub struct AffineMap2n {
    pub a11: BitMatrix,
    pub a12: BitMatrix,
    pub a21: BitMatrix,
    pub a22: BitMatrix,
    pub c: Elem,
    pub d: Elem,
}

impl AffineMap2n {
    /// Validates shapes, constants and invertibility of the block matrix.
    pub fn new(a11: BitMatrix, a12: BitMatrix, a21: BitMatrix, a22: BitMatrix, c: Elem, d: Elem) -> Result<Self> {
        let n = a11.n();
        if [&a12, &a21, &a22].iter().any(|m| m.n() != n) {
            return Err(Error::Parse("blocks have different sizes".into()));
        }
        for v in [c, d] {
            if u64::from(v) >> n != 0 {
                return Err(Error::ElementOutOfRange(v.into()));
            }
        }
        let m = AffineMap2n {
            a11,
            a12,
            a21,
            a22,
            c,
            d,
        };
        if !m.is_invertible() {
            return Err(Error::Parse("block matrix is singular over GF(2)".into()));
        }
        Ok(m)
    }

    pub fn identity(n: u32) -> Self {
        AffineMap2n {
            a11: BitMatrix::identity(n),
            a12: BitMatrix::zero(n),
            a21: BitMatrix::zero(n),
            a22: BitMatrix::identity(n),
            c: 0,
            d: 0,
        }
    }

    pub fn n(&self) -> u32 {
        self.a11.n()
    }

    /// Most specific form the blocks satisfy.
    pub fn form(&self) -> MapForm {
        match (self.a12.is_zero(), self.a21.is_zero()) {
            (true, true) => MapForm::Affine,
            (true, false) => MapForm::Ea,
            _ => MapForm::General,
        }
    }

    /// Rows of the 2n×2n block matrix, x in the low n bits, y in the high n.
    fn block_rows(&self) -> Vec<u64> {
        let n = self.n();
        let top = self.a11.rows.iter().zip(&self.a12.rows);
        let bottom = self.a21.rows.iter().zip(&self.a22.rows);
        top.chain(bottom)
            .map(|(&l, &r)| u64::from(l) | u64::from(r) << n)
            .collect()
    }

    pub fn is_invertible(&self) -> bool {
        rank_u64(&self.block_rows()) == 2 * self.n() as usize
    }

    #[inline]
    pub fn apply(&self, x: Elem, y: Elem) -> (Elem, Elem) {
        (
            self.a11.apply(x) ^ self.a12.apply(y) ^ self.c,
            self.a21.apply(x) ^ self.a22.apply(y) ^ self.d,
        )
    }
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    n: u32,
    a11: Vec<String>,
    a12: Vec<String>,
    a21: Vec<String>,
    a22: Vec<String>,
    c: String,
    d: String,
}

fn hex(v: u32) -> String {
    format!("{v:#x}")
}

fn unhex(s: &str) -> Result<u32> {
    let t = s.trim();
    let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u32::from_str_radix(t, 16).map_err(|e| Error::Parse(format!("bad hex value {s:?}: {e}")))
}

impl From<AffineMap2n> for MapJson {
    fn from(m: AffineMap2n) -> Self {
        let rows = |b: &BitMatrix| b.rows.iter().copied().map(hex).collect();
        MapJson {
            n: m.n(),
            a11: rows(&m.a11),
            a12: rows(&m.a12),
            a21: rows(&m.a21),
            a22: rows(&m.a22),
            c: hex(m.c),
            d: hex(m.d),
        }
    }
}

impl TryFrom<MapJson> for AffineMap2n {
    type Error = Error;

    fn try_from(j: MapJson) -> Result<Self> {
        let block = |rows: &[String]| -> Result<BitMatrix> {
            BitMatrix::from_rows(j.n, rows.iter().map(|r| unhex(r)).collect::<Result<_>>()?)
        };
        AffineMap2n::new(
            block(&j.a11)?,
            block(&j.a12)?,
            block(&j.a21)?,
            block(&j.a22)?,
            unhex(&j.c)?,
            unhex(&j.d)?,
        )
    }
}

/// Seeded random invertible map of the given form, by rejection sampling.
pub fn random_affine(n: u32, form: MapForm, seed: u64) -> Result<AffineMap2n> {
    let mut rng = sampling::rng(seed);
    for _ in 0..MAX_ATTEMPTS {
        let a11 = BitMatrix::random(n, &mut rng);
        let a12 = match form {
            MapForm::General => BitMatrix::random(n, &mut rng),
            _ => BitMatrix::zero(n),
        };
        let a21 = match form {
            MapForm::Affine => BitMatrix::zero(n),
            _ => BitMatrix::random(n, &mut rng),
        };
        let a22 = BitMatrix::random(n, &mut rng);
        let c = rng.gen_range(0..1u32 << n);
        let d = rng.gen_range(0..1u32 << n);
        let m = AffineMap2n {
            a11,
            a12,
            a21,
            a22,
            c,
            d,
        };
        if m.is_invertible() {
            return Ok(m);
        }
    }
    Err(Error::AffineSampling(MAX_ATTEMPTS))
}

/// The function whose graph is the image of F's graph, or `None` when the
/// first coordinate x ↦ A11 x + A12 F(x) + C is not a bijection.
pub fn apply_graph_transform(f: &VecFun, map: &AffineMap2n) -> Option<VecFun> {
    assert_eq!(f.n(), map.n(), "map and function sizes differ");
    let size = f.size();
    let mut lut = vec![0 as Elem; size];
    let mut seen = vec![false; size];
    for x in 0..size as Elem {
        let (p, q) = map.apply(x, f.eval(x));
        if std::mem::replace(&mut seen[p as usize], true) {
            return None;
        }
        lut[p as usize] = q;
    }
    let family = Family::Modified {
        base: Box::new(f.family().clone()),
        description: format!("{} transform", map.form()),
    };
    Some(VecFun::from_lut(f.field().clone(), lut, family).expect("image stays in the field"))
}

/// First map of the given form (seeds `seed`, `seed + 1`, ...) that is
/// admissible for `f`, with the transformed function.
pub fn random_admissible(f: &VecFun, form: MapForm, seed: u64) -> Result<(AffineMap2n, VecFun)> {
    for i in 0..MAX_ATTEMPTS as u64 {
        let m = random_affine(f.n(), form, seed.wrapping_add(i))?;
        if let Some(g) = apply_graph_transform(f, &m) {
            return Ok((m, g));
        }
    }
    Err(Error::AffineSampling(MAX_ATTEMPTS))
}

/// Index tuple of G's table that carries table_F(idx).
pub fn predicted_indices(map: &AffineMap2n, kind: TableKind, idx: &[Elem]) -> Result<Vec<Elem>> {
    kind.check_arity(idx)?;
    let bk = BoomerangKind::try_from(kind)?;
    let form = map.form();
    if !form.covers(bk) {
        return Err(Error::FormMismatch {
            kind,
            form: form.to_string(),
        });
    }
    let (a11, a12, a21, a22) = (&map.a11, &map.a12, &map.a21, &map.a22);
    Ok(match bk {
        BoomerangKind::Ebct => {
            let (a, b, c, d) = (idx[0], idx[1], idx[2], idx[3]);
            vec![
                a12.apply(b) ^ a11.apply(a),
                a22.apply(b) ^ a21.apply(a),
                a12.apply(d) ^ a11.apply(c),
                a22.apply(d) ^ a21.apply(c),
            ]
        }
        BoomerangKind::Lbct => vec![
            a11.apply(idx[0]),
            a11.apply(idx[1]),
            a22.apply(idx[2]) ^ a21.apply(idx[1]),
        ],
        BoomerangKind::Ubct => vec![a11.apply(idx[0]), a22.apply(idx[1]), a22.apply(idx[2])],
    })
}

/// Whether the index map of `kind` is a bijection of the index space, from
/// the rank of its GF(2) matrix.
pub fn index_map_is_bijective(map: &AffineMap2n, kind: TableKind) -> Result<bool> {
    let n = map.n() as usize;
    let k = kind.arity();
    if k * n > 64 {
        return Err(Error::Hypothesis(format!(
            "index space of {kind} is wider than 64 bits"
        )));
    }
    let mut cols = Vec::with_capacity(k * n);
    for pos in 0..k {
        for bit in 0..n {
            let mut idx = vec![0; k];
            idx[pos] = 1 << bit;
            let img = predicted_indices(map, kind, &idx)?;
            cols.push(
                img.iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, &v)| acc | u64::from(v) << (i * n)),
            );
        }
    }
    Ok(rank_u64(&cols) == k * n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub indices: Vec<Elem>,
    pub value_f: u64,
    pub mapped: Vec<Elem>,
    pub value_g: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub kind: TableKind,
    pub form: MapForm,
    pub checked: u64,
    pub mismatches: u64,
    pub first_counterexample: Option<Counterexample>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

fn decode(i: u64, n: u32, arity: usize) -> Vec<Elem> {
    let mask = (1u64 << n) - 1;
    (0..arity)
        .rev()
        .map(|p| ((i >> (p as u32 * n)) & mask) as Elem)
        .collect()
}

/// Entrywise check of table_F(t) = table_G(predicted_indices(t)) over the
/// full index space or a seeded sample (zero coordinates included).
pub fn invariance_check_with(
    f: &VecFun,
    g: &VecFun,
    map: &AffineMap2n,
    kind: TableKind,
    sweep: Sweep,
) -> Result<InvarianceReport> {
    let n = f.n();
    let arity = kind.arity();
    let tuples: Vec<Vec<Elem>> = match sweep {
        Sweep::Full => {
            if n > kind.full_sweep_max_n() {
                return Err(Error::BudgetExceeded {
                    kind,
                    n,
                    max_n: kind.full_sweep_max_n(),
                    estimated_ops: kind.full_sweep_cost(n),
                });
            }
            (0..1u64 << (arity as u32 * n)).map(|i| decode(i, n, arity)).collect()
        }
        Sweep::Sampled { samples, seed } => sampling::sample_tuples(n, arity, false, samples, seed),
    };
    // validates the form once
    predicted_indices(map, kind, &tuples.first().cloned().unwrap_or_else(|| vec![0; arity]))?;
    let bad: Vec<Counterexample> = tuples
        .par_iter()
        .filter_map(|t| {
            let mapped = predicted_indices(map, kind, t).expect("form checked");
            let value_f = tables::entry(f, kind, t).expect("valid tuple");
            let value_g = tables::entry(g, kind, &mapped).expect("valid tuple");
            (value_f != value_g).then(|| Counterexample {
                indices: t.clone(),
                value_f,
                mapped,
                value_g,
            })
        })
        .collect();
    Ok(InvarianceReport {
        kind,
        form: map.form(),
        checked: tuples.len() as u64,
        mismatches: bad.len() as u64,
        first_counterexample: bad.into_iter().next(),
    })
}

/// [`invariance_check_with`] after transforming `f`; errors if the map is not
/// admissible for `f`.
pub fn invariance_check(f: &VecFun, map: &AffineMap2n, kind: TableKind, sweep: Sweep) -> Result<InvarianceReport> {
    let g = apply_graph_transform(f, map)
        .ok_or_else(|| Error::Hypothesis("the map does not send the graph of F to a graph".into()))?;
    invariance_check_with(f, &g, map, kind, sweep)
}

/// Full spectra of two functions side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumComparison {
    pub kind: TableKind,
    pub f: Spectrum,
    pub g: Spectrum,
}

impl SpectrumComparison {
    pub fn equal(&self) -> bool {
        self.f.histogram == self.g.histogram
    }

    /// (value, count for F, count for G) wherever the counts differ.
    pub fn differences(&self) -> Vec<(u64, u64, u64)> {
        let mut values: Vec<u64> = self
            .f
            .histogram
            .keys()
            .chain(self.g.histogram.keys())
            .copied()
            .collect();
        values.sort_unstable();
        values.dedup();
        values
            .into_iter()
            .map(|v| (v, self.f.count(v), self.g.count(v)))
            .filter(|&(_, x, y)| x != y)
            .collect()
    }
}

pub fn compare_spectra(f: &VecFun, g: &VecFun, kind: TableKind, filter: DomainFilter) -> Result<SpectrumComparison> {
    Ok(SpectrumComparison {
        kind,
        f: tables::spectrum(f, kind, filter, Sweep::Full)?,
        g: tables::spectrum(g, kind, filter, Sweep::Full)?,
    })
}

/// X^9 over GF(2^5) and its CCZ-equivalent, non-EA-equivalent partner
/// X^9 + (X^8 + X) Tr(X^9 + X).
pub fn gold_ccz5_pair(field: Arc<FieldCtx>) -> Result<(VecFun, VecFun)> {
    if field.n() != 5 {
        return Err(Error::Hypothesis(format!(
            "the X^9 pair lives over GF(2^5), not GF(2^{})",
            field.n()
        )));
    }
    let f = VecFun::power(field.clone(), 9);
    let k = field.clone();
    let g = f.modified("+ (X^8 + X) Tr(X^9 + X)", move |x, y| {
        if k.abs_trace(y ^ x) == 1 {
            y ^ k.pow(x, 8) ^ x
        } else {
            y
        }
    });
    Ok((f, g))
}

/// X^5 over GF(2^3) and the EA-equivalent X^5 + X, with the EA map between them.
pub fn x5_ea_pair(field: Arc<FieldCtx>) -> Result<(VecFun, VecFun, AffineMap2n)> {
    if field.n() != 3 {
        return Err(Error::Hypothesis(format!(
            "the X^5 pair lives over GF(2^3), not GF(2^{})",
            field.n()
        )));
    }
    let f = VecFun::power(field, 5);
    let g = f.modified("+ X", |x, y| x ^ y);
    let mut m = AffineMap2n::identity(3);
    m.a21 = BitMatrix::identity(3);
    Ok((f, g, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(n, None).unwrap())
    }

    /// Invertibility by enumerating the 2^2n images.
    fn bijective_by_enumeration(m: &AffineMap2n) -> bool {
        let n = m.n();
        let mut seen = vec![false; 1 << (2 * n)];
        for x in 0..1u32 << n {
            for y in 0..1u32 << n {
                let (p, q) = m.apply(x, y);
                let k = (p | q << n) as usize;
                if seen[k] {
                    return false;
                }
                seen[k] = true;
            }
        }
        true
    }

    #[test]
    fn bit_matrix_basics() {
        let k = ctx(5);
        let sq = BitMatrix::from_linear_fn(5, |x| k.square(x));
        for x in 0..32 {
            assert_eq!(sq.apply(x), k.square(x));
        }
        let inv = sq.inverse().unwrap();
        assert_eq!(inv.compose(&sq), BitMatrix::identity(5));
        assert_eq!(sq.compose(&inv), BitMatrix::identity(5));
        let tr = BitMatrix::from_linear_fn(5, |x| k.abs_trace(x));
        assert_eq!(tr.rank(), 1);
        assert!(tr.inverse().is_none());
        let mut r = sampling::rng(1);
        for _ in 0..50 {
            let a = BitMatrix::random(4, &mut r);
            let b = BitMatrix::random(4, &mut r);
            for x in 0..16 {
                assert_eq!(a.compose(&b).apply(x), a.apply(b.apply(x)));
            }
            let bij = (0..16)
                .map(|x| a.apply(x))
                .collect::<std::collections::HashSet<_>>()
                .len()
                == 16;
            assert_eq!(a.is_invertible(), bij);
        }
    }

    #[test]
    fn random_maps_have_requested_form() {
        for seed in 0..40 {
            for form in [MapForm::General, MapForm::Ea, MapForm::Affine] {
                let m = random_affine(4, form, seed).unwrap();
                assert!(bijective_by_enumeration(&m));
                assert_eq!(m, random_affine(4, form, seed).unwrap());
                match form {
                    MapForm::Affine => {
                        assert_eq!(m.form(), MapForm::Affine);
                        assert!(m.a11.is_invertible() && m.a22.is_invertible());
                    }
                    MapForm::Ea => assert!(m.a12.is_zero()),
                    MapForm::General => {}
                }
            }
        }
        let mut singular = AffineMap2n::identity(3);
        singular.a22 = BitMatrix::zero(3);
        assert!(!singular.is_invertible());
        assert!(!bijective_by_enumeration(&singular));
    }

    #[test]
    fn graph_transform() {
        let k = ctx(5);
        let f = VecFun::power(k.clone(), 3);
        let g = apply_graph_transform(&f, &AffineMap2n::identity(5)).unwrap();
        assert_eq!(g.lut(), f.lut());

        // EA maps give A22 F(A11^-1 (y + C)) + A21 A11^-1 (y + C) + D
        for seed in 0..10 {
            let m = random_affine(5, MapForm::Ea, seed).unwrap();
            let g = apply_graph_transform(&f, &m).unwrap();
            let inv = m.a11.inverse().unwrap();
            for y in 0..32 {
                let x = inv.apply(y ^ m.c);
                assert_eq!(g.eval(y), m.a22.apply(f.eval(x)) ^ m.a21.apply(x) ^ m.d);
            }
        }

        let admissible = (0..200)
            .filter(|&s| apply_graph_transform(&f, &random_affine(5, MapForm::General, s).unwrap()).is_some())
            .count();
        assert!(admissible < 200, "general maps are not always admissible");
    }

    #[test]
    fn index_maps() {
        let id = AffineMap2n::identity(4);
        assert_eq!(
            predicted_indices(&id, TableKind::Ebct, &[1, 2, 3, 4]).unwrap(),
            vec![1, 2, 3, 4]
        );
        let m = random_affine(4, MapForm::Ea, 3).unwrap();
        let p = predicted_indices(&m, TableKind::Ebct, &[5, 6, 7, 8]).unwrap();
        assert_eq!(p[0], m.a11.apply(5));
        assert_eq!(p[1], m.a22.apply(6) ^ m.a21.apply(5));
        let err = predicted_indices(&m, TableKind::Ubct, &[1, 2, 3]).unwrap_err();
        assert!(matches!(err, Error::FormMismatch { .. }));
        let g = random_affine(4, MapForm::General, 3).unwrap();
        assert!(predicted_indices(&g, TableKind::Lbct, &[1, 2, 3]).is_err());
        assert!(predicted_indices(&g, TableKind::Ddt, &[1, 2]).is_err());
        let a = random_affine(4, MapForm::Affine, 3).unwrap();
        assert_eq!(
            predicted_indices(&a, TableKind::Ubct, &[1, 2, 3]).unwrap()[2],
            a.a22.apply(3)
        );
        for seed in 0..10 {
            for (form, kinds) in [
                (MapForm::General, &[TableKind::Ebct][..]),
                (MapForm::Ea, &[TableKind::Ebct, TableKind::Lbct][..]),
                (
                    MapForm::Affine,
                    &[TableKind::Ebct, TableKind::Lbct, TableKind::Ubct][..],
                ),
            ] {
                let m = random_affine(4, form, seed).unwrap();
                for &kind in kinds {
                    assert!(index_map_is_bijective(&m, kind).unwrap());
                }
            }
        }
    }

    #[test]
    fn entrywise_invariance_n4() {
        let f = VecFun::from_lut(ctx(4), sampling::random_lut(4, 9), Family::LutFile { source: None }).unwrap();
        for seed in 0..3 {
            let m = random_affine(4, MapForm::Affine, seed).unwrap();
            for kind in [TableKind::Ubct, TableKind::Lbct] {
                assert!(invariance_check(&f, &m, kind, Sweep::Full).unwrap().passed());
            }
            let m = random_affine(4, MapForm::Ea, seed).unwrap();
            assert!(invariance_check(&f, &m, TableKind::Lbct, Sweep::Full).unwrap().passed());
            let r = invariance_check(&f, &m, TableKind::Ebct, Sweep::Sampled { samples: 20_000, seed }).unwrap();
            assert!(r.passed() && r.checked == 20_000);
        }
        let p = VecFun::power(ctx(4), 7);
        let (m, g) = random_admissible(&p, MapForm::General, 11).unwrap();
        let r = invariance_check_with(
            &p,
            &g,
            &m,
            TableKind::Ebct,
            Sweep::Sampled {
                samples: 20_000,
                seed: 2,
            },
        )
        .unwrap();
        assert!(r.passed());
    }

    #[test]
    fn x5_pair_counts() {
        let (f, g, m) = x5_ea_pair(ctx(3)).unwrap();
        assert_eq!(apply_graph_transform(&f, &m).unwrap().lut(), g.lut());
        let cmp = compare_spectra(&f, &g, TableKind::Ubct, DomainFilter::All).unwrap();
        assert_eq!((cmp.f.count(0), cmp.g.count(0)), (448, 452));
        assert!(!cmp.equal());
        assert!(invariance_check_with(&f, &g, &m, TableKind::Lbct, Sweep::Full)
            .unwrap()
            .passed());
        assert!(invariance_check_with(&f, &g, &m, TableKind::Ebct, Sweep::Full)
            .unwrap()
            .passed());
    }

    #[test]
    fn x9_pair_counts() {
        let (f, g) = gold_ccz5_pair(ctx(5)).unwrap();
        let ub = compare_spectra(&f, &g, TableKind::Ubct, DomainFilter::All).unwrap();
        assert_eq!((ub.f.count(2), ub.g.count(2)), (992, 982));
        assert!(compare_spectra(&f, &g, TableKind::Ebct, DomainFilter::All)
            .unwrap()
            .equal());
        // zero coordinates mix with nonzero ones under a non-EA map
        assert!(!compare_spectra(&f, &g, TableKind::Ebct, DomainFilter::NonZero)
            .unwrap()
            .equal());
    }

    #[test]
    fn json_round_trip() {
        let m = random_affine(5, MapForm::General, 4).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"a11\":[\"0x"));
        let back: AffineMap2n = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let bad = s.replace(&format!("\"{}\"", hex(m.a22.rows[0])), "\"0x100\"");
        assert!(serde_json::from_str::<AffineMap2n>(&bad).is_err());
    }
}
