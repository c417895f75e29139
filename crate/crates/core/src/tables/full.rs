//! Whole-table engines.
//!
//! Every table here is a count over inputs that share a derivative value in
//! some direction, so inputs are bucketed by D_aF once per direction and
//! pairs inside a bucket are enumerated. Work is split over the outermost
//! index with rayon and the per-index results are concatenated in order, so
//! the output never depends on the worker count.

use rayon::prelude::*;

use super::Counting;
use crate::field::Elem;
use crate::vecfun::VecFun;

/// Inputs bucketed by derivative value: bucket `v` holds every X with
/// F(X) + F(X + a) = v, ascending.
pub struct DerivativeBuckets {
    start: Vec<u32>,
    points: Vec<Elem>,
}

impl DerivativeBuckets {
    pub fn new(f: &VecFun, a: Elem) -> Self {
        let size = f.size();
        let mut start = vec![0u32; size + 1];
        for x in 0..size as Elem {
            start[f.derivative_at(a, x) as usize + 1] += 1;
        }
        for v in 0..size {
            start[v + 1] += start[v];
        }
        let mut fill = start.clone();
        let mut points = vec![0; size];
        for x in 0..size as Elem {
            let v = f.derivative_at(a, x) as usize;
            points[fill[v] as usize] = x;
            fill[v] += 1;
        }
        DerivativeBuckets { start, points }
    }

    #[inline]
    pub fn bucket(&self, v: Elem) -> &[Elem] {
        &self.points[self.start[v as usize] as usize..self.start[v as usize + 1] as usize]
    }

    pub fn len(&self) -> usize {
        self.start.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Dense table with two index coordinates, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table2 {
    pub n: u32,
    pub data: Vec<u64>,
}

impl Table2 {
    #[inline]
    pub fn get(&self, i: Elem, j: Elem) -> u64 {
        self.data[((i as usize) << self.n) | j as usize]
    }
}

/// Dense table with three index coordinates, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table3 {
    pub n: u32,
    pub data: Vec<u32>,
}

impl Table3 {
    #[inline]
    pub fn get(&self, i: Elem, j: Elem, k: Elem) -> u32 {
        self.data[(((i as usize) << self.n | j as usize) << self.n) | k as usize]
    }

    pub fn slice(&self, i: Elem) -> &[u32] {
        let len = 1usize << (2 * self.n);
        &self.data[i as usize * len..(i as usize + 1) * len]
    }
}

fn per_direction<T: Send>(f: &VecFun, body: impl Fn(Elem) -> Vec<T> + Sync + Send) -> Vec<T> {
    let chunks: Vec<Vec<T>> = (0..f.size() as Elem).into_par_iter().map(body).collect();
    chunks.into_iter().flatten().collect()
}

pub fn ddt_table(f: &VecFun) -> Table2 {
    let data = per_direction(f, |a| {
        let mut row = vec![0u64; f.size()];
        for x in 0..f.size() as Elem {
            row[f.derivative_at(a, x) as usize] += 1;
        }
        row
    });
    Table2 { n: f.n(), data }
}

pub fn bct_table(f: &VecFun) -> Table2 {
    let data = per_direction(f, |a| {
        let buckets = DerivativeBuckets::new(f, a);
        let mut row = vec![0u64; f.size()];
        for v in 0..f.size() as Elem {
            let g = buckets.bucket(v);
            for &x in g {
                for &y in g {
                    row[(f.eval(x) ^ f.eval(y)) as usize] += 1;
                }
            }
        }
        row
    });
    Table2 { n: f.n(), data }
}

pub fn fbct_table(f: &VecFun) -> Table2 {
    let data = per_direction(f, |a| {
        let buckets = DerivativeBuckets::new(f, a);
        let mut row = vec![0u64; f.size()];
        for v in 0..f.size() as Elem {
            let g = buckets.bucket(v);
            for &x in g {
                for &y in g {
                    row[(x ^ y) as usize] += 1;
                }
            }
        }
        row
    });
    Table2 { n: f.n(), data }
}

/// DD(a, b, c), layout [a][b][c].
pub fn dd_table(f: &VecFun) -> Table3 {
    let n = f.n();
    let data = per_direction(f, |a| {
        let size = f.size();
        let der = f.derivative(a);
        let mut slice = vec![0u32; size * size];
        for b in 0..size {
            let row = &mut slice[b << n..(b + 1) << n];
            for x in 0..size {
                row[(der[x] ^ der[x ^ b]) as usize] += 1;
            }
        }
        slice
    });
    Table3 { n, data }
}

/// UBCT(a, ., .) as a dense [b][c] slice.
pub fn ubct_slice(f: &VecFun, a: Elem) -> Vec<u32> {
    ubct_slice_with(f, a, Counting::Distinct, &mut vec![0; f.size()])
}

// `stamp` is scratch space of length 2^n used to deduplicate c per X.
fn ubct_slice_with(f: &VecFun, a: Elem, counting: Counting, stamp: &mut [u32]) -> Vec<u32> {
    let n = f.n();
    let size = f.size();
    let mut slice = vec![0u32; size * size];
    let buckets = DerivativeBuckets::new(f, a);
    stamp.iter_mut().for_each(|s| *s = 0);
    let mut tick = 0u32;
    for b in 0..size as Elem {
        let g = buckets.bucket(b);
        let row = &mut slice[(b as usize) << n..(b as usize + 1) << n];
        for &x in g {
            tick += 1;
            let fx = f.eval(x);
            for &y in g {
                let c = (fx ^ f.eval(y)) as usize;
                match counting {
                    Counting::Pairs => row[c] += 1,
                    Counting::Distinct => {
                        if stamp[c] != tick {
                            stamp[c] = tick;
                            row[c] += 1;
                        }
                    }
                }
            }
        }
    }
    slice
}

/// UBCT(a, b, c), layout [a][b][c].
pub fn ubct_table(f: &VecFun, counting: Counting) -> Table3 {
    let size = f.size();
    let chunks: Vec<Vec<u32>> = (0..size as Elem)
        .into_par_iter()
        .map_init(|| vec![0u32; size], |stamp, a| ubct_slice_with(f, a, counting, stamp))
        .collect();
    Table3 {
        n: f.n(),
        data: chunks.concat(),
    }
}

/// LBCT(a, b, c), layout [a][b][c].
pub fn lbct_table(f: &VecFun) -> Table3 {
    let n = f.n();
    let size = f.size();
    // LBCT(a, b, c) = #{X in S(b, c) : X + a in S(b, c)}; collected per b as [a][c].
    let per_b: Vec<Vec<u32>> = (0..size as Elem)
        .into_par_iter()
        .map(|b| {
            let buckets = DerivativeBuckets::new(f, b);
            let mut slice = vec![0u32; size * size];
            for c in 0..size as Elem {
                let g = buckets.bucket(c);
                for &x in g {
                    for &y in g {
                        slice[((x ^ y) as usize) << n | c as usize] += 1;
                    }
                }
            }
            slice
        })
        .collect();
    let mut data = vec![0u32; size * size * size];
    for (b, slice) in per_b.iter().enumerate() {
        for a in 0..size {
            let dst = ((a << n) | b) << n;
            data[dst..dst + size].copy_from_slice(&slice[a << n..(a + 1) << n]);
        }
    }
    Table3 { n, data }
}

/// Nonzero EBCT(a, b, c, d) entries for one fixed c, sorted by (a, b, d).
///
/// Keys pack (a, b, d) as `a << 2n | b << n | d`.
pub fn ebct_slice(f: &VecFun, c: Elem) -> Vec<(u64, u32)> {
    let n = f.n();
    let buckets = DerivativeBuckets::new(f, c);
    let mut keys = Vec::new();
    for d in 0..f.size() as Elem {
        let g = buckets.bucket(d);
        for &x in g {
            let fx = f.eval(x);
            for &y in g {
                let a = u64::from(x ^ y);
                let b = u64::from(fx ^ f.eval(y));
                keys.push((a << (2 * n)) | (b << n) | u64::from(d));
            }
        }
    }
    keys.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for k in keys {
        match out.last_mut() {
            Some((last, cnt)) if *last == k => *cnt += 1,
            _ => out.push((k, 1)),
        }
    }
    out
}

/// Nonzero EBCT entries for every c, indexed by c.
pub fn ebct_sparse(f: &VecFun) -> Vec<Vec<(u64, u32)>> {
    (0..f.size() as Elem)
        .into_par_iter()
        .map(|c| ebct_slice(f, c))
        .collect()
}

/// DBCT(a, d) from materialized UBCT and LBCT tables.
pub fn dbct_from_tables(ub: &Table3, lb: &Table3) -> Table2 {
    let n = ub.n;
    let size = 1usize << n;
    let rows: Vec<Vec<u64>> = (0..size as Elem)
        .into_par_iter()
        .map(|a| {
            let mut row = vec![0u64; size];
            let slice = ub.slice(a);
            for (bc, &u) in slice.iter().enumerate() {
                if u == 0 {
                    continue;
                }
                // LBCT(b, c, .) is contiguous at offset (b, c)
                let l = &lb.data[bc << n..(bc + 1) << n];
                for (acc, &v) in row.iter_mut().zip(l) {
                    *acc += u64::from(u) * u64::from(v);
                }
            }
            row
        })
        .collect();
    Table2 { n, data: rows.concat() }
}

/// Full DBCT: materialized tables up to n = 8, per-entry recomputation above.
pub fn dbct_table(f: &VecFun) -> Table2 {
    if f.n() <= 8 {
        let ub = ubct_table(f, Counting::Distinct);
        let lb = lbct_table(f);
        dbct_from_tables(&ub, &lb)
    } else {
        let size = f.size() as Elem;
        let data = per_direction(f, |a| (0..size).map(|d| super::entry::dbct_entry(f, a, d)).collect());
        Table2 { n: f.n(), data }
    }
}
