//! Derivative solution sets and the pair structures built on them.

use std::collections::HashMap;

use crate::field::Elem;
use crate::vecfun::VecFun;

/// Roots of `F(X + direction) + F(X) = target`, stored as one representative
/// per pair `{x, x + direction}` (the smaller of the two).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub direction: Elem,
    pub target: Elem,
    pub reps: Vec<Elem>,
}

impl SolutionSet {
    /// `direction` must be nonzero.
    pub fn new(f: &VecFun, direction: Elem, target: Elem) -> Self {
        let roots = f.derivative_solutions(direction, target);
        Self::from_roots(direction, target, &roots)
    }

    /// Builds the set from the full (ascending) root list.
    pub fn from_roots(direction: Elem, target: Elem, roots: &[Elem]) -> Self {
        debug_assert!(direction != 0);
        let reps = roots.iter().copied().filter(|&x| x < x ^ direction).collect();
        SolutionSet {
            direction,
            target,
            reps,
        }
    }

    /// Half the number of roots.
    pub fn k(&self) -> usize {
        self.reps.len()
    }

    /// Number of roots, i.e. the DDT entry.
    pub fn count(&self) -> u64 {
        2 * self.reps.len() as u64
    }

    pub fn roots(&self) -> impl Iterator<Item = Elem> + '_ {
        self.reps.iter().flat_map(move |&x| [x, x ^ self.direction])
    }

    /// `U(i, j)` for solutions of `F(X + c) + F(X) = d`.
    pub fn u_set(&self, f: &VecFun, i: usize, j: usize) -> [(Elem, Elem); 2] {
        let (zi, zj) = (self.reps[i], self.reps[j]);
        let a = zi ^ zj;
        let b = f.eval(zi) ^ f.eval(zj);
        [(a, b), (a ^ self.direction, b ^ self.target)]
    }

    /// `V(i, j)` for solutions of `F(X + b) + F(X) = c`.
    pub fn v_set(&self, i: usize, j: usize) -> [Elem; 2] {
        let a = self.reps[i] ^ self.reps[j];
        [a, a ^ self.direction]
    }

    /// `W(i, j)` for solutions of `F(X + a) + F(X) = b`.
    pub fn w_set(&self, f: &VecFun, i: usize, j: usize) -> [Elem; 2] {
        let c = f.eval(self.reps[i]) ^ f.eval(self.reps[j]);
        [c, c ^ self.target]
    }

    /// Graph on pair indices with an edge wherever `member(i, j)` holds.
    /// Panics if there are more than 64 pairs.
    pub fn graph(&self, member: impl Fn(usize, usize) -> bool) -> PairGraph {
        let k = self.k();
        assert!(k <= 64, "pair graph limited to 64 vertices");
        let mut adj = vec![0u64; k];
        for i in 0..k {
            for j in i + 1..k {
                if member(i, j) {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        PairGraph { adj }
    }
}

/// Undirected graph on at most 64 pair indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairGraph {
    adj: Vec<u64>,
}

impl PairGraph {
    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    pub fn max_degree(&self) -> u32 {
        self.adj.iter().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    /// Number of vertices with at least one neighbour.
    pub fn covered(&self) -> usize {
        self.adj.iter().filter(|&&m| m != 0).count()
    }

    /// Size of a maximum matching: the largest ℓ with ℓ index-disjoint edges.
    pub fn max_matching(&self) -> usize {
        if self.max_degree() <= 1 {
            return self.covered() / 2;
        }
        let all = if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        };
        let live = self
            .adj
            .iter()
            .enumerate()
            .fold(0u64, |m, (i, &a)| if a != 0 { m | 1 << i } else { m });
        let mut memo = HashMap::new();
        self.matching_rec(all & live, &mut memo)
    }

    fn matching_rec(&self, avail: u64, memo: &mut HashMap<u64, usize>) -> usize {
        if avail == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&avail) {
            return v;
        }
        let i = avail.trailing_zeros() as usize;
        let rest = avail & !(1 << i);
        let mut best = self.matching_rec(rest, memo);
        let mut nb = self.adj[i] & rest;
        while nb != 0 {
            let j = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            best = best.max(1 + self.matching_rec(rest & !(1 << j), memo));
        }
        memo.insert(avail, best);
        best
    }
}

/// Every derivative solution set of a function, stored CSR by `(a, b)`.
pub struct DerivativeIndex {
    n: u32,
    start: Vec<u32>,
    roots: Vec<Elem>,
}

impl DerivativeIndex {
    pub fn new(f: &VecFun) -> Self {
        let n = f.n();
        let size = f.size();
        let mut counts = vec![0u32; size * size + 1];
        for a in 0..size {
            for x in 0..size as Elem {
                counts[(a << n) | f.derivative_at(a as Elem, x) as usize] += 1;
            }
        }
        let mut start = Vec::with_capacity(counts.len());
        let mut acc = 0u32;
        for c in &counts {
            start.push(acc);
            acc += c;
        }
        let mut fill = start.clone();
        let mut roots = vec![0; size * size];
        for a in 0..size {
            for x in 0..size as Elem {
                let key = (a << n) | f.derivative_at(a as Elem, x) as usize;
                roots[fill[key] as usize] = x;
                fill[key] += 1;
            }
        }
        DerivativeIndex { n, start, roots }
    }

    /// Ascending roots of `F(X + a) + F(X) = b`.
    #[inline]
    pub fn roots(&self, a: Elem, b: Elem) -> &[Elem] {
        let key = ((a as usize) << self.n) | b as usize;
        &self.roots[self.start[key] as usize..self.start[key + 1] as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use std::sync::Arc;

    #[test]
    fn sets_and_index_agree() {
        let f = VecFun::gold(Arc::new(FieldCtx::new(6, None).unwrap()), 2);
        let idx = DerivativeIndex::new(&f);
        for (a, b) in [(1, 0), (5, 9), (17, 40), (63, 1)] {
            let roots = f.derivative_solutions(a, b);
            assert_eq!(idx.roots(a, b), roots.as_slice());
            let s = SolutionSet::new(&f, a, b);
            let mut all: Vec<Elem> = s.roots().collect();
            all.sort_unstable();
            assert_eq!(all, roots);
            assert!(s.count() <= 4);
        }
    }

    #[test]
    fn matching_on_small_graphs() {
        // path 0-1-2-3: matching 2, star centred at 0: matching 1
        let mut path = PairGraph { adj: vec![0; 4] };
        for (i, j) in [(0, 1), (1, 2), (2, 3)] {
            path.adj[i] |= 1 << j;
            path.adj[j] |= 1 << i;
        }
        assert_eq!(path.max_matching(), 2);
        let mut star = PairGraph { adj: vec![0; 4] };
        for j in 1..4 {
            star.adj[0] |= 1 << j;
            star.adj[j] |= 1;
        }
        assert_eq!(star.max_matching(), 1);
        assert_eq!(star.covered(), 4);
        // triangle
        let tri = PairGraph {
            adj: vec![0b110, 0b101, 0b011],
        };
        assert_eq!(tri.max_matching(), 1);
    }
}
