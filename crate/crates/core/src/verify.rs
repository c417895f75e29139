//! Verification suites behind `boomtab verify`.
//!
//! Each suite compares a prediction against the brute-force engines in
//! [`crate::tables`] and returns one [`CheckReport`] per invariant. A full
//! budget sweeps the whole index space through the dense table engines;
//! a sampled budget draws half of its tuples uniformly (zero coordinates
//! allowed) and half from derivative solutions, so that nonzero entries are
//! actually exercised at larger n.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_form::{Apn, BoomerangKind, Bracken, DeltaUniform, Gold, Inverse, Kasami};
use crate::equiv::{self, MapForm};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::sampling;
use crate::tables::{self, full, DomainFilter, Sweep, TableKind};
use crate::vecfun::{Family, VecFun};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Gold,
    Kasami,
    Bracken,
    Inverse,
    Delta,
    Apn,
    Equiv,
    Relations,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Gold,
        Suite::Kasami,
        Suite::Bracken,
        Suite::Inverse,
        Suite::Delta,
        Suite::Apn,
        Suite::Equiv,
        Suite::Relations,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gold => "gold",
            Suite::Kasami => "kasami",
            Suite::Bracken => "bracken",
            Suite::Inverse => "inverse",
            Suite::Delta => "delta",
            Suite::Apn => "apn",
            Suite::Equiv => "equiv",
            Suite::Relations => "relations",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    Full,
    Sampled { samples: usize, seed: u64 },
}

impl Budget {
    fn sweep(self) -> Sweep {
        match self {
            Budget::Full => Sweep::Full,
            Budget::Sampled { samples, seed } => Sweep::Sampled { samples, seed },
        }
    }
}

/// Inputs shared by every suite.
#[derive(Clone)]
pub struct VerifyConfig {
    pub field: Arc<FieldCtx>,
    /// Family parameter s, where the suite takes one.
    pub s: Option<u32>,
    /// Function under test for the delta, apn, equiv and relations suites.
    pub function: Option<VecFun>,
    pub budget: Budget,
}

impl VerifyConfig {
    pub fn new(field: Arc<FieldCtx>, budget: Budget) -> Self {
        VerifyConfig {
            field,
            s: None,
            function: None,
            budget,
        }
    }

    fn n(&self) -> u32 {
        self.field.n()
    }

    fn seed(&self) -> u64 {
        match self.budget {
            Budget::Full => 0,
            Budget::Sampled { seed, .. } => seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: u64,
    pub mismatches: u64,
    pub first_counterexample: Option<String>,
    /// Reported for context only; never fails the suite.
    pub informational: bool,
    pub note: Option<String>,
}

impl CheckReport {
    fn new(name: impl Into<String>, checked: u64, bad: Vec<String>) -> Self {
        CheckReport {
            name: name.into(),
            checked,
            mismatches: bad.len() as u64,
            first_counterexample: bad.into_iter().next(),
            informational: false,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn info(name: impl Into<String>, note: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            checked: 0,
            mismatches: 0,
            first_counterexample: None,
            informational: true,
            note: Some(note.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.informational || self.mismatches == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: u32,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match (c.informational, c.passed()) {
                (true, _) => "INFO",
                (false, true) => "PASS",
                (false, false) => "FAIL",
            };
            write!(
                f,
                "{status} [{}] {}: {} checked, {} mismatches",
                self.suite, c.name, c.checked, c.mismatches
            )?;
            if let Some(x) = &c.first_counterexample {
                write!(f, "; first: {x}")?;
            }
            if let Some(note) = &c.note {
                write!(f, " ({note})")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "{} n={}: {}",
            self.suite,
            self.n,
            if self.passed() { "pass" } else { "fail" }
        )
    }
}

fn fmt_idx(kind: TableKind, idx: &[Elem]) -> String {
    let v: Vec<String> = idx.iter().map(|x| format!("{x:#x}")).collect();
    format!("{kind}({})", v.join(", "))
}

fn mismatch(kind: TableKind, idx: &[Elem], predicted: u64, brute: u64) -> String {
    format!("{} predicted {predicted}, brute force {brute}", fmt_idx(kind, idx))
}

/// Compares `predict` with the brute-force entry on a list of tuples.
fn compare_tuples(
    name: String,
    f: &VecFun,
    kind: TableKind,
    tuples: &[Vec<Elem>],
    predict: &(dyn Fn(&[Elem]) -> u64 + Sync),
) -> CheckReport {
    let bad: Vec<String> = tuples
        .par_iter()
        .filter_map(|t| {
            let p = predict(t);
            let b = tables::entry(f, kind, t).expect("tuple arity matches");
            (p != b).then(|| mismatch(kind, t, p, b))
        })
        .collect();
    CheckReport::new(name, tuples.len() as u64, bad)
}

/// Compares `predict` with the dense brute-force table over the whole index space.
fn compare_full(
    name: String,
    f: &VecFun,
    kind: TableKind,
    predict: &(dyn Fn(&[Elem]) -> u64 + Sync),
) -> Result<CheckReport> {
    let n = f.n();
    if n > kind.full_sweep_max_n() {
        return Err(Error::BudgetExceeded {
            kind,
            n,
            max_n: kind.full_sweep_max_n(),
            estimated_ops: kind.full_sweep_cost(n),
        });
    }
    let size = f.size() as Elem;
    let bad: Vec<String> = match kind {
        TableKind::Ddt | TableKind::Bct | TableKind::Fbct | TableKind::Dbct => {
            let t = match kind {
                TableKind::Ddt => full::ddt_table(f),
                TableKind::Bct => full::bct_table(f),
                TableKind::Fbct => full::fbct_table(f),
                _ => full::dbct_table(f),
            };
            (0..size)
                .into_par_iter()
                .flat_map_iter(|a| {
                    let t = &t;
                    (0..size).filter_map(move |b| {
                        let (p, v) = (predict(&[a, b]), t.get(a, b));
                        (p != v).then(|| mismatch(kind, &[a, b], p, v))
                    })
                })
                .collect()
        }
        TableKind::Dd | TableKind::Ubct | TableKind::Lbct => {
            let t = match kind {
                TableKind::Dd => full::dd_table(f),
                TableKind::Ubct => full::ubct_table(f, tables::Counting::Distinct),
                _ => full::lbct_table(f),
            };
            (0..size)
                .into_par_iter()
                .flat_map_iter(|a| {
                    let t = &t;
                    (0..size).flat_map(move |b| {
                        (0..size).filter_map(move |c| {
                            let (p, v) = (predict(&[a, b, c]), u64::from(t.get(a, b, c)));
                            (p != v).then(|| mismatch(kind, &[a, b, c], p, v))
                        })
                    })
                })
                .collect()
        }
        TableKind::Ebct => {
            let mask = size - 1;
            let per_c: Vec<Vec<String>> = (0..size)
                .into_par_iter()
                .map(|c| {
                    let mut dense = vec![0u32; 1 << (3 * n)];
                    for (key, v) in full::ebct_slice(f, c) {
                        dense[key as usize] = v;
                    }
                    let mut bad = Vec::new();
                    for (key, &v) in dense.iter().enumerate() {
                        let key = key as Elem;
                        let idx = [key >> (2 * n), (key >> n) & mask, c, key & mask];
                        let p = predict(&idx);
                        if p != u64::from(v) {
                            bad.push(mismatch(kind, &idx, p, v.into()));
                        }
                    }
                    bad
                })
                .collect();
            per_c.into_iter().flatten().collect()
        }
    };
    Ok(CheckReport::new(name, 1u64 << (kind.arity() as u32 * n), bad))
}

/// Tuples built from derivative solutions, so boomerang entries are mostly nonzero.
pub fn structured_tuples(f: &VecFun, kind: BoomerangKind, count: usize, seed: u64) -> Vec<Vec<Elem>> {
    let mut r = sampling::rng(seed);
    let size = f.size() as Elem;
    (0..count)
        .map(|i| {
            let dir: Elem = r.gen_range(1..size);
            let x: Elem = r.gen_range(0..size);
            let target = f.derivative_at(dir, x);
            let sols = f.derivative_solutions(dir, target);
            let y = sols[r.gen_range(0..sols.len())];
            let shift = i % 2 == 1;
            match kind {
                BoomerangKind::Ubct => {
                    let c = f.eval(x) ^ if shift { f.eval(y ^ dir) } else { f.eval(y) };
                    vec![dir, target, c]
                }
                BoomerangKind::Lbct => vec![x ^ y, dir, target],
                BoomerangKind::Ebct => {
                    let (a, b) = (x ^ y, f.eval(x) ^ f.eval(y));
                    if shift {
                        vec![a ^ dir, b ^ target, dir, target]
                    } else {
                        vec![a, b, dir, target]
                    }
                }
            }
        })
        .collect()
}

fn budget_tuples(f: &VecFun, kind: TableKind, samples: usize, seed: u64) -> Vec<Vec<Elem>> {
    let half = samples / 2;
    let mut t = sampling::sample_tuples(f.n(), kind.arity(), false, samples - half, seed);
    if let Ok(bk) = BoomerangKind::try_from(kind) {
        t.extend(structured_tuples(f, bk, half, seed ^ 0x5eed));
    } else {
        t.extend(sampling::sample_tuples(f.n(), kind.arity(), true, half, seed ^ 0x5eed));
    }
    t
}

/// One check of `predict` against brute force under the configured budget.
fn check_kind(
    label: &str,
    f: &VecFun,
    kind: TableKind,
    budget: Budget,
    predict: &(dyn Fn(&[Elem]) -> u64 + Sync),
) -> Result<CheckReport> {
    let name = format!("{label} {kind} = brute force");
    match budget {
        Budget::Full => compare_full(name, f, kind, predict),
        Budget::Sampled { samples, seed } => {
            let tuples = budget_tuples(f, kind, samples, seed.wrapping_add(kind as u64));
            Ok(compare_tuples(name, f, kind, &tuples, predict))
        }
    }
}

fn boomerang_checks(
    label: &str,
    f: &VecFun,
    budget: Budget,
    predict: &(dyn Fn(BoomerangKind, &[Elem]) -> u64 + Sync),
) -> Result<Vec<CheckReport>> {
    BoomerangKind::ALL
        .iter()
        .map(|&bk| check_kind(label, f, bk.table_kind(), budget, &|idx| predict(bk, idx)))
        .collect()
}

fn require_s(cfg: &VerifyConfig, suite: Suite) -> Result<u32> {
    cfg.s.ok_or_else(|| {
        Error::Hypothesis(format!(
            "the {suite} suite needs a parameter s (for example --params s=2)"
        ))
    })
}

fn gold_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let s = require_s(cfg, Suite::Gold)?;
    let g = Gold::new(cfg.field.clone(), s)?;
    let f = VecFun::gold(cfg.field.clone(), s);
    let label = format!("gold s={s}");
    let mut out = boomerang_checks(&label, &f, cfg.budget, &|k, idx| g.entry(k, idx))?;
    out.push(check_kind(&label, &f, TableKind::Ddt, cfg.budget, &|i| {
        g.ddt(i[0], i[1])
    })?);
    out.push(check_kind(&label, &f, TableKind::Fbct, cfg.budget, &|i| {
        g.fbct(i[0], i[1])
    })?);
    if g.params().m % 2 == 1 {
        let dbct_budget = match cfg.budget {
            Budget::Full if cfg.n() <= 6 => Budget::Full,
            Budget::Full => Budget::Sampled { samples: 64, seed: 0 },
            Budget::Sampled { samples, seed } => Budget::Sampled {
                samples: samples.min(if cfg.n() <= 8 { 1024 } else { 64 }),
                seed,
            },
        };
        out.push(check_kind(&label, &f, TableKind::Dbct, dbct_budget, &|i| {
            g.dbct(i[0], i[1]).expect("m is odd")
        })?);
    } else {
        out.push(CheckReport::info(
            format!("{label} DBCT"),
            format!("no closed form: n/gcd(s,n) = {} is even", g.params().m),
        ));
    }
    Ok(out)
}

fn kasami_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let s = require_s(cfg, Suite::Kasami)?;
    let kas = Kasami::new(cfg.field.clone(), s)?;
    let f = VecFun::kasami(cfg.field.clone(), s);
    let label = format!("kasami s={s}");
    let mut out = boomerang_checks(&label, &f, cfg.budget, &|k, idx| kas.entry(k, idx))?;
    out.push(check_kind(&label, &f, TableKind::Ddt, cfg.budget, &|i| {
        kas.ddt(i[0], i[1])
    })?);
    Ok(out)
}

fn bracken_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let n = cfg.n();
    if !n.is_multiple_of(4) {
        return Err(Error::Hypothesis(format!(
            "the bracken suite needs n divisible by 4, got {n}"
        )));
    }
    let s = cfg.s.unwrap_or(n / 4);
    let br = Bracken::new(cfg.field.clone(), s)?;
    let f = VecFun::bracken(cfg.field.clone(), s);
    let label = format!("bracken s={s}");
    let mut out = boomerang_checks(&label, &f, cfg.budget, &|k, idx| br.entry(k, idx))?;
    out.push(check_kind(&label, &f, TableKind::Ddt, cfg.budget, &|i| {
        br.ddt(i[0], i[1])
    })?);
    Ok(out)
}

fn inverse_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let f = VecFun::inverse_map(cfg.field.clone());
    if cfg.n() % 2 == 1 {
        let apn = Apn::new(&f)?;
        return boomerang_checks("inverse (APN tables)", &f, cfg.budget, &|k, idx| apn.entry(k, idx));
    }
    let inv = Inverse::new(cfg.field.clone())?;
    let mut out = boomerang_checks("inverse", &f, cfg.budget, &|k, idx| inv.entry(k, idx))?;
    out.push(check_kind("inverse", &f, TableKind::Ddt, cfg.budget, &|i| {
        inv.ddt(i[0], i[1])
    })?);
    out.push(check_kind("inverse", &f, TableKind::Fbct, cfg.budget, &|i| {
        inv.fbct(i[0], i[1])
    })?);
    Ok(out)
}

/// The configured function, or a seeded random function and permutation.
fn functions_under_test(cfg: &VerifyConfig) -> Vec<VecFun> {
    match &cfg.function {
        Some(f) => vec![f.clone()],
        None => {
            let n = cfg.n();
            let seed = cfg.seed();
            let lut = |v| VecFun::from_lut(cfg.field.clone(), v, Family::LutFile { source: None }).expect("valid LUT");
            vec![
                lut(sampling::random_lut(n, seed)),
                lut(sampling::random_permutation(n, seed)),
            ]
        }
    }
}

fn describe(f: &VecFun) -> String {
    match f.family() {
        Family::LutFile { source: None } if f.is_permutation() => "random permutation".into(),
        Family::LutFile { source: None } => "random function".into(),
        fam => fam.to_string(),
    }
}

fn delta_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for f in functions_under_test(cfg) {
        let e = DeltaUniform::indexed(&f);
        let label = format!("delta-uniform {}", describe(&f));
        out.extend(boomerang_checks(&label, &f, cfg.budget, &|k, idx| match k {
            BoomerangKind::Ebct => e.ebct(idx[0], idx[1], idx[2], idx[3]),
            BoomerangKind::Lbct => e.lbct(idx[0], idx[1], idx[2]),
            BoomerangKind::Ubct => e.ubct(idx[0], idx[1], idx[2]),
        })?);
        let tuples = match cfg.budget {
            Budget::Full if f.n() <= 4 => (0..1u64 << (4 * f.n()))
                .map(|i| {
                    (0..4)
                        .rev()
                        .map(|p| ((i >> (p * f.n())) & (f.size() as u64 - 1)) as Elem)
                        .collect()
                })
                .collect(),
            Budget::Full => budget_tuples(&f, TableKind::Ebct, 20_000, 1),
            Budget::Sampled { samples, seed } => budget_tuples(&f, TableKind::Ebct, samples.min(20_000), seed),
        };
        let bad: Vec<String> = tuples
            .par_iter()
            .filter_map(|t| {
                let r = crate::closed_form::ge2lu_check(&f, t[0], t[1], t[2], t[3]);
                (!r.correspondence_holds()).then(|| format!("solution sets differ at {}", fmt_idx(TableKind::Ebct, t)))
            })
            .collect();
        out.push(CheckReport::new(
            format!("{label} EBCT/LBCT/UBCT solution correspondence"),
            tuples.len() as u64,
            bad,
        ));
    }
    Ok(out)
}

/// Dense EBCT slice at c, indexed by a << 2n | b << n | d.
fn dense_ebct(f: &VecFun, c: Elem) -> Vec<u32> {
    let mut dense = vec![0u32; 1 << (3 * f.n())];
    for (key, v) in full::ebct_slice(f, c) {
        dense[key as usize] = v;
    }
    dense
}

/// EBCT(a,b,c,d)^2 against LBCT(a,c,d) * UBCT(c,d,b) on every nonzero tuple:
/// (tuples checked, tuples with strict inequality, violations of <=).
fn square_relation(f: &VecFun) -> (u64, u64, Vec<String>) {
    let n = f.n();
    let size = f.size() as Elem;
    let ub = full::ubct_table(f, tables::Counting::Distinct);
    let lb = full::lbct_table(f);
    let parts: Vec<(u64, u64, Vec<String>)> = (1..size)
        .into_par_iter()
        .map(|c| {
            let dense = dense_ebct(f, c);
            let (mut checked, mut strict, mut bad) = (0, 0, Vec::new());
            for a in 1..size {
                for b in 1..size {
                    for d in 1..size {
                        let e = u64::from(dense[((a as usize) << (2 * n)) | ((b as usize) << n) | d as usize]);
                        let rhs = u64::from(lb.get(a, c, d)) * u64::from(ub.get(c, d, b));
                        checked += 1;
                        if e * e < rhs {
                            strict += 1;
                        } else if e * e > rhs {
                            bad.push(format!(
                                "EBCT^2 = {} > LBCT*UBCT = {rhs} at {}",
                                e * e,
                                fmt_idx(TableKind::Ebct, &[a, b, c, d])
                            ));
                        }
                    }
                }
            }
            (checked, strict, bad)
        })
        .collect();
    parts.into_iter().fold((0, 0, Vec::new()), |mut acc, p| {
        acc.0 += p.0;
        acc.1 += p.1;
        acc.2.extend(p.2);
        acc
    })
}

fn apn_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let f = match &cfg.function {
        Some(f) => f.clone(),
        None => VecFun::gold(cfg.field.clone(), 1),
    };
    let label = describe(&f);
    let delta = f.differential_uniformity();
    let mut out = Vec::new();
    if delta == 2 {
        let apn = Apn::new(&f)?;
        out.extend(boomerang_checks(
            &format!("APN tables {label}"),
            &f,
            cfg.budget,
            &|k, idx| apn.entry(k, idx),
        )?);
    }
    if cfg.n() > 6 {
        out.push(CheckReport::info(
            format!("{label} EBCT^2 vs LBCT*UBCT"),
            format!("needs full tables; skipped at n = {}", cfg.n()),
        ));
        return Ok(out);
    }
    let (checked, strict, bad) = square_relation(&f);
    out.push(CheckReport::new(
        format!("{label} EBCT^2 <= LBCT*UBCT on nonzero tuples"),
        checked,
        bad,
    ));
    if delta == 2 {
        let r = CheckReport {
            mismatches: strict,
            first_counterexample: (strict > 0).then(|| "strict inequality for an APN function".into()),
            ..CheckReport::new(
                format!("{label} APN: EBCT^2 = LBCT*UBCT on nonzero tuples"),
                checked,
                vec![],
            )
        };
        out.push(r);
    } else {
        out.push(
            CheckReport::new(
                format!("{label} non-APN: strict-inequality witness exists"),
                checked,
                if strict > 0 {
                    vec![]
                } else {
                    vec!["no strict inequality found".into()]
                },
            )
            .with_note(format!("differential uniformity {delta}, {strict} strict tuples")),
        );
    }
    Ok(out)
}

fn equiv_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let n = cfg.n();
    let f = match &cfg.function {
        Some(f) => f.clone(),
        None => VecFun::power(cfg.field.clone(), 3),
    };
    let label = describe(&f);
    let sweep = match cfg.budget {
        Budget::Full => Sweep::Full,
        b => b.sweep(),
    };
    let maps = 20u64;
    let mut out = Vec::new();
    let mut push_invariance = |form: MapForm, kinds: &[TableKind]| -> Result<()> {
        for &kind in kinds {
            let sweep = match (sweep, kind) {
                (Sweep::Full, TableKind::Ebct) if n > 5 => Sweep::Sampled {
                    samples: 100_000,
                    seed: 0,
                },
                (s, _) => s,
            };
            let (mut checked, mut bad, mut first) = (0, 0, None);
            for i in 0..maps {
                let m = equiv::random_affine(n, form, cfg.seed().wrapping_add(i))?;
                let g = equiv::apply_graph_transform(&f, &m).expect("EA and affine maps are always admissible");
                let s = match sweep {
                    Sweep::Sampled { samples, seed } => Sweep::Sampled {
                        samples,
                        seed: seed.wrapping_add(i),
                    },
                    s => s,
                };
                let r = equiv::invariance_check_with(&f, &g, &m, kind, s)?;
                checked += r.checked;
                bad += r.mismatches;
                first = first.or(r.first_counterexample.map(|c| format!("{c:?}")));
            }
            out.push(CheckReport {
                mismatches: bad,
                first_counterexample: first,
                ..CheckReport::new(
                    format!("{label} {kind} entrywise under {maps} {form} maps"),
                    checked,
                    vec![],
                )
            });
        }
        Ok(())
    };
    push_invariance(MapForm::Affine, &[TableKind::Ubct, TableKind::Lbct, TableKind::Ebct])?;
    push_invariance(MapForm::Ea, &[TableKind::Lbct, TableKind::Ebct])?;

    match equiv::random_admissible(&f, MapForm::General, cfg.seed()) {
        Ok((m, g)) => {
            let s = match sweep {
                Sweep::Full if n <= 5 => Sweep::Full,
                Sweep::Full => Sweep::Sampled {
                    samples: 100_000,
                    seed: 0,
                },
                s => s,
            };
            let r = equiv::invariance_check_with(&f, &g, &m, TableKind::Ebct, s)?;
            out.push(CheckReport {
                mismatches: r.mismatches,
                first_counterexample: r.first_counterexample.map(|c| format!("{c:?}")),
                ..CheckReport::new(
                    format!("{label} EBCT entrywise under an admissible {} map", m.form()),
                    r.checked,
                    vec![],
                )
            });
        }
        Err(e) => out.push(CheckReport::info(
            format!("{label} general CCZ map"),
            format!("none admissible: {e}"),
        )),
    }

    if n <= 8 {
        let g = f.modified("+ X", |x, y| x ^ y);
        let cmp = equiv::compare_spectra(&f, &g, TableKind::Ubct, DomainFilter::All)?;
        let note = match cmp.differences().first() {
            Some(&(v, a, b)) => format!("UBCT spectrum not preserved by F -> F + X: value {v} occurs {a} vs {b} times"),
            None => "UBCT spectrum preserved by F -> F + X".into(),
        };
        out.push(CheckReport::info(
            format!("{label} UBCT spectrum under an EA map"),
            note,
        ));
    }

    if n == 5 {
        let (x9, partner) = equiv::gold_ccz5_pair(cfg.field.clone())?;
        let ub = equiv::compare_spectra(&x9, &partner, TableKind::Ubct, DomainFilter::All)?;
        let eb = equiv::compare_spectra(&x9, &partner, TableKind::Ebct, DomainFilter::All)?;
        let counts = (ub.f.count(2), ub.g.count(2));
        let mut bad = Vec::new();
        if counts != (992, 982) {
            bad.push(format!("UBCT value-2 counts {counts:?}, expected (992, 982)"));
        }
        if !eb.equal() {
            bad.push(format!("EBCT spectra differ: {:?}", eb.differences()));
        }
        out.push(
            CheckReport::new("X^9 and its CCZ partner: UBCT 992 vs 982, EBCT spectra equal", 2, bad)
                .with_note(format!("UBCT value 2 occurs {} vs {} times", counts.0, counts.1)),
        );
    }
    if n == 3 {
        let (x5, plus_x, m) = equiv::x5_ea_pair(cfg.field.clone())?;
        let cmp = equiv::compare_spectra(&x5, &plus_x, TableKind::Ubct, DomainFilter::All)?;
        let counts = (cmp.f.count(0), cmp.g.count(0));
        let lb = equiv::invariance_check_with(&x5, &plus_x, &m, TableKind::Lbct, Sweep::Full)?;
        let mut bad = Vec::new();
        if counts != (448, 452) {
            bad.push(format!("UBCT value-0 counts {counts:?}, expected (448, 452)"));
        }
        if !lb.passed() {
            bad.push("LBCT not carried by the EA map".into());
        }
        out.push(
            CheckReport::new("X^5 vs X^5 + X: EA map breaks the UBCT spectrum (448 vs 452)", 2, bad).with_note(
                format!(
                    "UBCT value 0 occurs {} vs {} times; value 2 occurs {} vs {} times",
                    counts.0,
                    counts.1,
                    cmp.f.count(2),
                    cmp.g.count(2)
                ),
            ),
        );
    }
    Ok(out)
}

fn relations_for(f: &VecFun, budget: Budget) -> Result<Vec<CheckReport>> {
    let n = f.n();
    let size = f.size() as Elem;
    let label = describe(f);
    let mut out = Vec::new();
    let full = budget == Budget::Full;
    if full && n > 8 {
        return Err(Error::BudgetExceeded {
            kind: TableKind::Dd,
            n,
            max_n: 8,
            estimated_ops: TableKind::Dd.full_sweep_cost(n),
        });
    }
    let pairs: Vec<(Elem, Elem)> = match budget {
        Budget::Full => (0..size).flat_map(|a| (0..size).map(move |b| (a, b))).collect(),
        Budget::Sampled { samples, seed } => sampling::sample_tuples(n, 2, false, samples.min(4096), seed)
            .into_iter()
            .map(|t| (t[0], t[1]))
            .collect(),
    };
    let check2 = |name: &str, rel: &(dyn Fn(Elem, Elem) -> Option<String> + Sync)| {
        let bad: Vec<String> = pairs.par_iter().filter_map(|&(a, b)| rel(a, b)).collect();
        CheckReport::new(format!("{label} {name}"), pairs.len() as u64, bad)
    };

    let (fb, ddt) = (full::fbct_table(f), full::ddt_table(f));
    let lb = full.then(|| full::lbct_table(f));
    let ub = (full && f.is_permutation()).then(|| full::ubct_table(f, tables::Counting::Distinct));
    out.push(check2("sum_c LBCT(a,b,c) = FBCT(a,b)", &|a, b| {
        let s: u64 = match &lb {
            Some(t) => (0..size).map(|c| u64::from(t.get(a, b, c))).sum(),
            None => (0..size).map(|c| tables::lbct_entry(f, a, b, c)).sum(),
        };
        (s != fb.get(a, b)).then(|| format!("a={a:#x} b={b:#x}: sum {s}, FBCT {}", fb.get(a, b)))
    }));
    out.push(check2("UBCT(a,b,b) = DDT(a,b)", &|a, b| {
        let u = tables::ubct_entry(f, a, b, b);
        (u != ddt.get(a, b)).then(|| format!("a={a:#x} b={b:#x}: UBCT {u}, DDT {}", ddt.get(a, b)))
    }));
    out.push(check2("LBCT(a,a,c) = DDT(a,c)", &|a, c| {
        let l = tables::lbct_entry(f, a, a, c);
        (l != ddt.get(a, c)).then(|| format!("a={a:#x} c={c:#x}: LBCT {l}, DDT {}", ddt.get(a, c)))
    }));
    out.push(check2("DD(a,b,0) = FBCT(a,b)", &|a, b| {
        let d = tables::dd_entry(f, a, b, 0);
        (d != fb.get(a, b)).then(|| format!("a={a:#x} b={b:#x}: DD {d}, FBCT {}", fb.get(a, b)))
    }));

    if f.is_permutation() {
        let bct = full::bct_table(f);
        out.push(check2("sum_b UBCT(a,b,c) = BCT(a,c)", &|a, c| {
            let s: u64 = match &ub {
                Some(t) => (0..size).map(|b| u64::from(t.get(a, b, c))).sum(),
                None => (0..size).map(|b| tables::ubct_entry(f, a, b, c)).sum(),
            };
            (s != bct.get(a, c)).then(|| format!("a={a:#x} c={c:#x}: sum {s}, BCT {}", bct.get(a, c)))
        }));
        let finv = f.inverse()?;
        if n <= 6 {
            // nonzero EBCT entries of F and F^-1 under (a,b,c,d) -> (b,a,d,c)
            let mask = u64::from(size - 1);
            let collect = |g: &VecFun, swap: bool| -> HashMap<[Elem; 4], u32> {
                full::ebct_sparse(g)
                    .into_iter()
                    .enumerate()
                    .flat_map(|(c, slice)| {
                        slice.into_iter().map(move |(key, v)| {
                            let (a, b, d) = (
                                (key >> (2 * n)) as Elem,
                                ((key >> n) & mask) as Elem,
                                (key & mask) as Elem,
                            );
                            let c = c as Elem;
                            (if swap { [b, a, d, c] } else { [a, b, c, d] }, v)
                        })
                    })
                    .collect()
            };
            let lhs = collect(f, false);
            let rhs = collect(&finv, true);
            let mut bad: Vec<String> = lhs
                .iter()
                .filter(|(k, v)| rhs.get(*k) != Some(v))
                .map(|(k, v)| {
                    format!(
                        "{} = {v} for F, {:?} for the inverse",
                        fmt_idx(TableKind::Ebct, k),
                        rhs.get(k)
                    )
                })
                .collect();
            bad.extend(
                rhs.keys()
                    .filter(|k| !lhs.contains_key(*k))
                    .map(|k| format!("{} only nonzero for the inverse", fmt_idx(TableKind::Ebct, k))),
            );
            bad.sort();
            out.push(CheckReport::new(
                format!("{label} EBCT_F(a,b,c,d) = EBCT_F^-1(b,a,d,c)"),
                1u64 << (4 * n),
                bad,
            ));
        } else {
            let tuples = sampling::sample_tuples(n, 4, false, 20_000, 7);
            let bad: Vec<String> = tuples
                .par_iter()
                .filter_map(|t| {
                    let (x, y) = (
                        tables::ebct_entry(f, t[0], t[1], t[2], t[3]),
                        tables::ebct_entry(&finv, t[1], t[0], t[3], t[2]),
                    );
                    (x != y).then(|| mismatch(TableKind::Ebct, t, x, y))
                })
                .collect();
            out.push(CheckReport::new(
                format!("{label} EBCT_F(a,b,c,d) = EBCT_F^-1(b,a,d,c)"),
                tuples.len() as u64,
                bad,
            ));
        }
    }
    Ok(out)
}

fn relations_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for f in functions_under_test(cfg) {
        out.extend(relations_for(&f, cfg.budget)?);
    }
    Ok(out)
}

/// Runs one suite. `Suite::All` runs every suite whose hypotheses hold at
/// this n and reports the others as skipped.
pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Gold => gold_suite(cfg)?,
        Suite::Kasami => kasami_suite(cfg)?,
        Suite::Bracken => bracken_suite(cfg)?,
        Suite::Inverse => inverse_suite(cfg)?,
        Suite::Delta => delta_suite(cfg)?,
        Suite::Apn => apn_suite(cfg)?,
        Suite::Equiv => equiv_suite(cfg)?,
        Suite::Relations => relations_suite(cfg)?,
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                let mut c = cfg.clone();
                if c.s.is_none() {
                    c.s = match s {
                        Suite::Gold => Some(1),
                        Suite::Kasami => Some(2),
                        _ => None,
                    };
                }
                match run(s, &c) {
                    Ok(r) => out.extend(r.checks.into_iter().map(|mut x| {
                        x.name = format!("{s}: {}", x.name);
                        x
                    })),
                    Err(e) if e.is_hypothesis() => out.push(CheckReport::info(format!("{s}"), format!("skipped: {e}"))),
                    Err(e) => return Err(e),
                }
            }
            out
        }
    };
    Ok(SuiteReport {
        suite,
        n: cfg.n(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: u32, s: Option<u32>, budget: Budget) -> VerifyConfig {
        VerifyConfig {
            s,
            ..VerifyConfig::new(Arc::new(FieldCtx::new(n, None).unwrap()), budget)
        }
    }

    #[test]
    fn gold_full_n4() {
        let r = run(Suite::Gold, &cfg(4, Some(1), Budget::Full)).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 6);
        assert!(r.checks.iter().any(|c| c.name.contains("DBCT") && c.informational));
    }

    #[test]
    fn sampled_suites_pass() {
        let b = Budget::Sampled { samples: 2000, seed: 3 };
        for (suite, n, s) in [
            (Suite::Gold, 6, Some(2)),
            (Suite::Kasami, 10, Some(2)),
            (Suite::Bracken, 8, None),
            (Suite::Inverse, 6, None),
            (Suite::Inverse, 5, None),
            (Suite::Delta, 5, None),
        ] {
            let r = run(suite, &cfg(n, s, b)).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn hypothesis_errors() {
        assert!(run(Suite::Bracken, &cfg(6, None, Budget::Full))
            .unwrap_err()
            .is_hypothesis());
        assert!(run(Suite::Gold, &cfg(6, None, Budget::Full))
            .unwrap_err()
            .is_hypothesis());
        assert!(run(Suite::Kasami, &cfg(6, Some(2), Budget::Full))
            .unwrap_err()
            .is_hypothesis());
    }

    #[test]
    fn apn_and_relations() {
        let r = run(Suite::Apn, &cfg(5, None, Budget::Full)).unwrap();
        assert!(r.passed(), "{r}");
        let mut c = cfg(6, None, Budget::Full);
        c.function = Some(VecFun::gold(c.field.clone(), 2));
        let r = run(Suite::Apn, &c).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks.iter().any(|x| x.name.contains("witness")));
        let r = run(Suite::Relations, &cfg(4, None, Budget::Full)).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks.iter().any(|x| x.name.contains("F^-1")));
    }

    #[test]
    fn equiv_x5_regression() {
        let mut c = cfg(3, None, Budget::Full);
        c.function = Some(VecFun::power(c.field.clone(), 5));
        let r = run(Suite::Equiv, &c).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.to_string().contains("448 vs 452"));
    }
}
