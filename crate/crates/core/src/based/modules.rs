//! Transitive based modules: nonnegative integer matrices `A_i` with
//! `A_0 = I`, `A_i A_j = sum_k N[i][j][k] A_k` and `sum_i A_i` entrywise
//! positive, up to simultaneous permutation of the module basis.
//!
//! The search assigns the matrices of a generating subset of the basis; the
//! other matrices are then forced by the structure constants. Entries are
//! filled in principal-submatrix order, relations among generators are
//! pruned with nonnegative partial sums, and modules are kept with their
//! diagonal tuples sorted so that each permutation class is met only a few
//! times before canonical deduplication.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::linalg::spectral_radius_int;
use super::ring::BasedRing;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<u64>>;

/// Search nodes counted locally before updating the shared counter.
const NODE_BATCH: u64 = 1024;

/// A based module: `matrices[i][p][q]` is the multiplicity of `v_p` in
/// `b_i v_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasedModule {
    pub rank: usize,
    pub matrices: Vec<Matrix>,
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let k = a.len();
    let mut c = vec![vec![0u64; k]; k];
    for p in 0..k {
        for t in 0..k {
            if a[p][t] == 0 {
                continue;
            }
            for q in 0..k {
                c[p][q] += a[p][t] * b[t][q];
            }
        }
    }
    c
}

impl BasedModule {
    /// Validates the action against `ring`.
    pub fn new(ring: &BasedRing, matrices: Vec<Matrix>) -> Result<Self> {
        let rank = matrices.first().map_or(0, |m| m.len());
        if rank == 0 || matrices.len() != ring.rank() {
            return Err(Error::InvalidRing("one square matrix per basis element is required".into()));
        }
        if matrices.iter().any(|m| m.len() != rank || m.iter().any(|r| r.len() != rank)) {
            return Err(Error::InvalidRing("matrices must share one square size".into()));
        }
        let module = BasedModule { rank, matrices };
        if let Some(msg) = module.violation(ring) {
            return Err(Error::InvalidRing(msg));
        }
        Ok(module)
    }

    fn violation(&self, ring: &BasedRing) -> Option<String> {
        let k = self.rank;
        let id: Matrix = (0..k).map(|p| (0..k).map(|q| u64::from(p == q)).collect()).collect();
        if self.matrices[0] != id {
            return Some("the unit does not act as the identity".into());
        }
        let n = ring.rank();
        for i in 1..n {
            for j in 1..n {
                let lhs = mat_mul(&self.matrices[i], &self.matrices[j]);
                for p in 0..k {
                    for q in 0..k {
                        let rhs: u64 = (0..n).map(|m| ring.n(i, j, m) * self.matrices[m][p][q]).sum();
                        if lhs[p][q] != rhs {
                            return Some(format!(
                                "relation for {} * {} fails at ({p}, {q})",
                                ring.labels()[i],
                                ring.labels()[j]
                            ));
                        }
                    }
                }
            }
        }
        None
    }

    /// `sum_i A_i`.
    pub fn total(&self) -> Matrix {
        let k = self.rank;
        let mut s = vec![vec![0u64; k]; k];
        for m in &self.matrices {
            for p in 0..k {
                for q in 0..k {
                    s[p][q] += m[p][q];
                }
            }
        }
        s
    }

    /// `sum_i A_i` has only positive entries.
    pub fn is_transitive(&self) -> bool {
        self.total().iter().all(|r| r.iter().all(|&c| c > 0))
    }

    /// Spectral radius of `sum_i A_i`.
    pub fn total_spectral_radius(&self) -> f64 {
        spectral_radius_int(&self.total())
    }

    /// Whether `sum_i A_i` has the special value of the ring (relative
    /// tolerance `1e-9`).
    pub fn is_special(&self, ring: &BasedRing) -> bool {
        let s = ring.special_value();
        (self.total_spectral_radius() - s).abs() <= 1e-9 * s.max(1.0)
    }

    /// The module `b_i -> A_{i*}^T`.
    pub fn dual(&self, ring: &BasedRing) -> BasedModule {
        let k = self.rank;
        let matrices = ring
            .star()
            .iter()
            .map(|&s| {
                let m = &self.matrices[s];
                (0..k).map(|p| (0..k).map(|q| m[q][p]).collect()).collect()
            })
            .collect();
        BasedModule { rank: k, matrices }
    }

    /// The same module with basis vector `perm[p]` moved to position `p`.
    pub fn permuted(&self, perm: &[usize]) -> BasedModule {
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                perm.iter()
                    .map(|&p| perm.iter().map(|&q| m[p][q]).collect())
                    .collect()
            })
            .collect();
        BasedModule {
            rank: self.rank,
            matrices,
        }
    }

    /// Canonical representative under simultaneous permutation.
    pub fn canonical(&self) -> BasedModule {
        let refs: Vec<&Matrix> = self.matrices.iter().collect();
        let (_, perm) = canonical_form(&refs);
        self.permuted(&perm)
    }

    pub fn equivalent(&self, other: &BasedModule) -> bool {
        self.rank == other.rank
            && self.matrices.len() == other.matrices.len()
            && self.canonical() == other.canonical()
    }
}

/// Lexicographically least key over permutations that sort the diagonal
/// tuples in decreasing order. The key lists, for positions `s = 0, 1, ...`,
/// every matrix's row `s` up to column `s` and column `s` above row `s`, so
/// prefixes depend only on the vertices placed so far.
fn canonical_form(mats: &[&Matrix]) -> (Vec<u64>, Vec<usize>) {
    let k = mats[0].len();
    let diag = |p: usize| -> Vec<u64> { mats.iter().map(|m| m[p][p]).collect() };
    let mut sorted: Vec<Vec<u64>> = (0..k).map(diag).collect();
    sorted.sort_by(|a, b| b.cmp(a));

    struct Search<'a> {
        mats: &'a [&'a Matrix],
        sorted: Vec<Vec<u64>>,
        best: Option<(Vec<u64>, Vec<usize>)>,
    }
    impl Search<'_> {
        fn chunk(&self, perm: &[usize]) -> Vec<u64> {
            let s = perm.len() - 1;
            let v = perm[s];
            let mut out = Vec::new();
            for m in self.mats {
                out.extend(perm.iter().map(|&q| m[v][q]));
                out.extend(perm[..s].iter().map(|&p| m[p][v]));
            }
            out
        }
        fn go(&mut self, perm: &mut Vec<usize>, used: &mut Vec<bool>, key: &mut Vec<u64>) {
            let k = used.len();
            if perm.len() == k {
                if self.best.as_ref().is_none_or(|(b, _)| *key < *b) {
                    self.best = Some((key.clone(), perm.clone()));
                }
                return;
            }
            let s = perm.len();
            for v in 0..k {
                if used[v] {
                    continue;
                }
                let d: Vec<u64> = self.mats.iter().map(|m| m[v][v]).collect();
                if d != self.sorted[s] {
                    continue;
                }
                perm.push(v);
                let c = self.chunk(perm);
                let len = key.len();
                key.extend_from_slice(&c);
                let keep = match &self.best {
                    Some((b, _)) => key[..] <= b[..key.len()],
                    None => true,
                };
                if keep {
                    used[v] = true;
                    self.go(perm, used, key);
                    used[v] = false;
                }
                key.truncate(len);
                perm.pop();
            }
        }
    }
    let mut search = Search {
        mats,
        sorted,
        best: None,
    };
    search.go(&mut Vec::new(), &mut vec![false; k], &mut Vec::new());
    search.best.expect("some permutation sorts the diagonal")
}

/// Search limits for [`enumerate_with`].
#[derive(Debug, Clone)]
pub struct EnumerationOptions {
    pub max_rank: usize,
    /// Largest entry tried in a generator matrix; defaults to
    /// `ceil(special_value) + 1`.
    pub entry_bound: Option<u64>,
    /// Search nodes before giving up with a partial result.
    pub node_budget: u64,
}

impl EnumerationOptions {
    pub fn new(max_rank: usize) -> Self {
        EnumerationOptions {
            max_rank,
            entry_bound: None,
            node_budget: 200_000_000,
        }
    }
}

/// Outcome of a module enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct Enumeration {
    pub modules: Vec<BasedModule>,
    /// Basis indices whose matrices were searched; the rest are derived.
    pub generators: Vec<usize>,
    pub entry_bound: u64,
    /// Some accepted module has an entry equal to or above the bound, so
    /// larger bounds might find more.
    pub at_bound: bool,
    /// The node budget ran out; the list may be incomplete.
    pub partial: bool,
    pub nodes: u64,
}

/// Transitive based modules of rank at most `max_rank` in which every basis
/// element of a top two-sided cell acts by a nonzero matrix.
pub fn enumerate_transitive_modules(ring: &BasedRing, max_rank: usize, entry_bound: Option<u64>) -> Enumeration {
    let mut opts = EnumerationOptions::new(max_rank);
    opts.entry_bound = entry_bound;
    enumerate_with(ring, &opts)
}

/// `b_k = (b_i b_j - sum_{m != k} N[i][j][m] b_m) / N[i][j][k]`.
#[derive(Debug, Clone)]
struct Derivation {
    k: usize,
    i: usize,
    j: usize,
    div: u64,
    minus: Vec<(usize, u64)>,
}

fn derivation_plan(ring: &BasedRing) -> (Vec<usize>, Vec<Derivation>) {
    let n = ring.rank();
    let mut known = vec![false; n];
    known[0] = true;
    let mut gens = Vec::new();
    let mut plan = Vec::new();
    loop {
        let mut progress = true;
        while progress {
            progress = false;
            'search: for i in 1..n {
                for j in 1..n {
                    if !known[i] || !known[j] {
                        continue;
                    }
                    let terms = ring.product(i, j);
                    let unknown: Vec<usize> = terms.iter().map(|&(m, _)| m).filter(|&m| !known[m]).collect();
                    if let [k] = unknown[..] {
                        let div = ring.n(i, j, k);
                        let minus = terms.iter().copied().filter(|&(m, _)| m != k).collect();
                        plan.push(Derivation { k, i, j, div, minus });
                        known[k] = true;
                        progress = true;
                        break 'search;
                    }
                }
            }
        }
        match (1..n).find(|&k| !known[k]) {
            Some(k) => {
                gens.push(k);
                known[k] = true;
            }
            None => break,
        }
    }
    (gens, plan)
}

/// Relations `b_i b_j = sum N b_m` with every factor and term a generator
/// or the unit, in generator positions.
#[derive(Clone)]
struct Relation {
    i: usize,
    j: usize,
    rhs: Vec<(Option<usize>, u64)>,
}

#[derive(Clone)]
struct Search<'a> {
    ring: &'a BasedRing,
    // nodes flushed by all branches
    shared: &'a AtomicU64,
    k: usize,
    bound: u64,
    gens: Vec<usize>,
    plan: Vec<Derivation>,
    relations: Vec<Relation>,
    top: Vec<usize>,
    order: Vec<(usize, usize, usize)>,
    // generator matrices; None = unassigned
    vals: Vec<Vec<Vec<Option<u64>>>>,
    nodes: u64,
    budget: u64,
    out_of_budget: bool,
    found: Vec<BasedModule>,
}

impl Search<'_> {
    fn get(&self, g: Option<usize>, p: usize, q: usize) -> Option<u64> {
        match g {
            None => Some(u64::from(p == q)),
            Some(g) => self.vals[g][p][q],
        }
    }

    /// Checks the relation entries touched by position `(g, p, q)`.
    fn consistent(&self, g: usize, p: usize, q: usize) -> bool {
        let k = self.k;
        for rel in &self.relations {
            let mut entries: Vec<(usize, usize)> = Vec::new();
            if rel.i == g {
                entries.extend((0..k).map(|q2| (p, q2)));
            }
            if rel.j == g {
                entries.extend((0..k).map(|p2| (p2, q)));
            }
            for r in rel.rhs.iter().filter_map(|&(m, _)| m) {
                if r == g {
                    entries.push((p, q));
                }
            }
            for (p1, q1) in entries {
                let mut lb = 0u64;
                let mut complete = true;
                for t in 0..k {
                    match (self.vals[rel.i][p1][t], self.vals[rel.j][t][q1]) {
                        (Some(a), Some(b)) => lb += a * b,
                        (Some(0), None) | (None, Some(0)) => {}
                        _ => complete = false,
                    }
                }
                let mut ub = 0u64;
                let mut rhs_known = true;
                for &(m, c) in &rel.rhs {
                    match self.get(m, p1, q1) {
                        Some(v) => ub += c * v,
                        None => {
                            ub += c * self.bound;
                            rhs_known = false;
                        }
                    }
                }
                if lb > ub || (complete && rhs_known && lb != ub) {
                    return false;
                }
            }
        }
        true
    }

    fn diagonal_ok(&self, p: usize) -> bool {
        // the tuple at p must not exceed the tuple at p - 1
        if p == 0 {
            return true;
        }
        for g in 0..self.gens.len() {
            match (self.vals[g][p][p], self.vals[g][p - 1][p - 1]) {
                (Some(a), Some(b)) if a < b => return true,
                (Some(a), Some(b)) if a > b => return false,
                (Some(_), Some(_)) => continue,
                _ => return true,
            }
        }
        true
    }

    fn run(&mut self, idx: usize) {
        if self.out_of_budget {
            return;
        }
        if idx == self.order.len() {
            self.leaf();
            return;
        }
        let (g, p, q) = self.order[idx];
        for v in 0..=self.bound {
            self.nodes += 1;
            if self.nodes % NODE_BATCH == 0 && self.shared.fetch_add(NODE_BATCH, Ordering::Relaxed) + NODE_BATCH > self.budget {
                self.out_of_budget = true;
                return;
            }
            self.vals[g][p][q] = Some(v);
            if (p != q || self.diagonal_ok(p)) && self.consistent(g, p, q) {
                self.run(idx + 1);
            }
        }
        self.vals[g][p][q] = None;
    }

    fn leaf(&mut self) {
        let k = self.k;
        let n = self.ring.rank();
        let mut mats: Vec<Option<Matrix>> = vec![None; n];
        mats[0] = Some((0..k).map(|p| (0..k).map(|q| u64::from(p == q)).collect()).collect());
        for (g, &b) in self.gens.iter().enumerate() {
            mats[b] = Some(
                self.vals[g]
                    .iter()
                    .map(|r| r.iter().map(|v| v.expect("assigned")).collect())
                    .collect(),
            );
        }
        for d in &self.plan {
            let prod = mat_mul(mats[d.i].as_ref().expect("known"), mats[d.j].as_ref().expect("known"));
            let mut m = vec![vec![0u64; k]; k];
            for p in 0..k {
                for q in 0..k {
                    let mut v = prod[p][q] as i128;
                    for &(t, c) in &d.minus {
                        v -= c as i128 * mats[t].as_ref().expect("known")[p][q] as i128;
                    }
                    if v < 0 || v % d.div as i128 != 0 {
                        return;
                    }
                    m[p][q] = (v / d.div as i128) as u64;
                }
            }
            mats[d.k] = Some(m);
        }
        let module = BasedModule {
            rank: k,
            matrices: mats.into_iter().map(|m| m.expect("derived")).collect(),
        };
        if !module.is_transitive() || module.violation(self.ring).is_some() {
            return;
        }
        if self
            .top
            .iter()
            .any(|&b| module.matrices[b].iter().all(|r| r.iter().all(|&c| c == 0)))
        {
            return;
        }
        self.found.push(module);
    }
}

/// Enumeration with explicit limits.
pub fn enumerate_with(ring: &BasedRing, opts: &EnumerationOptions) -> Enumeration {
    let bound = opts
        .entry_bound
        .unwrap_or_else(|| (ring.special_value() - 1e-9).ceil().max(0.0) as u64 + 1);
    let (gens, plan) = derivation_plan(ring);
    let gpos = |b: usize| gens.iter().position(|&g| g == b);
    let mut relations = Vec::new();
    for (gi, &i) in gens.iter().enumerate() {
        for (gj, &j) in gens.iter().enumerate() {
            let terms = ring.product(i, j);
            if terms.iter().all(|&(m, _)| m == 0 || gpos(m).is_some()) {
                relations.push(Relation {
                    i: gi,
                    j: gj,
                    rhs: terms
                        .iter()
                        .map(|&(m, c)| (if m == 0 { None } else { gpos(m) }, c))
                        .collect(),
                });
            }
        }
    }
    let cells = ring.basis_cells();
    let top: Vec<usize> = cells
        .top_cells()
        .into_iter()
        .flat_map(|c| cells.two_sided_block(c))
        .filter(|&b| b != 0)
        .collect();

    let mut seen = BTreeSet::new();
    let mut modules = Vec::new();
    let mut nodes = 0;
    let mut partial = false;
    for k in 1..=opts.max_rank {
        let mut order = Vec::new();
        for s in 0..k {
            for g in 0..gens.len() {
                order.push((g, s, s));
            }
            for g in 0..gens.len() {
                for t in 0..s {
                    order.push((g, s, t));
                    order.push((g, t, s));
                }
            }
        }
        let shared = AtomicU64::new(0);
        let mut root = Search {
            ring,
            shared: &shared,
            k,
            bound,
            gens: gens.clone(),
            plan: plan.clone(),
            relations: relations.clone(),
            top: top.clone(),
            order,
            vals: vec![vec![vec![None; k]; k]; gens.len()],
            nodes: 0,
            budget: opts.node_budget.saturating_sub(nodes),
            out_of_budget: false,
            found: Vec::new(),
        };
        // branch in parallel on the first entry, a diagonal entry of the
        // first generator
        let branches: Vec<Search<'_>> = match root.order.first() {
            None => {
                let mut s = root.clone();
                s.leaf();
                vec![s]
            }
            Some(&(g0, p0, q0)) => (0..=bound)
                .into_par_iter()
                .map(|v| {
                    let mut s = root.clone();
                    s.vals[g0][p0][q0] = Some(v);
                    if s.consistent(g0, p0, q0) {
                        s.run(1);
                    }
                    s
                })
                .collect(),
        };
        let mut found = Vec::new();
        for b in branches {
            root.nodes += 1 + b.nodes % NODE_BATCH;
            root.out_of_budget |= b.out_of_budget;
            found.extend(b.found);
        }
        nodes += root.nodes + shared.load(Ordering::Relaxed);
        partial |= root.out_of_budget;
        for m in found {
            let c = m.canonical();
            if seen.insert(c.matrices.clone()) {
                modules.push(c);
            }
        }
        if partial {
            break;
        }
    }
    modules.sort_by(|a, b| (a.rank, &a.matrices).cmp(&(b.rank, &b.matrices)));
    let at_bound = modules.iter().any(|m| {
        m.matrices
            .iter()
            .any(|a| a.iter().any(|r| r.iter().any(|&c| c >= bound)))
    });
    Enumeration {
        modules,
        generators: gens,
        entry_bound: bound,
        at_bound,
        partial,
        nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::based::ring::{cyclic_group_ring, quadratic_ring, trivial_ring};

    #[test]
    fn rank_two_quadratic_ring() {
        let e = enumerate_transitive_modules(&quadratic_ring(0), 2, None);
        assert!(!e.partial);
        let xs: Vec<&Matrix> = e.modules.iter().map(|m| &m.matrices[1]).collect();
        assert_eq!(xs, [&vec![vec![1]], &vec![vec![0, 1], vec![1, 0]]]);
    }

    #[test]
    fn trivial_ring_has_one_module() {
        let e = enumerate_transitive_modules(&trivial_ring(), 4, None);
        assert_eq!(e.modules.len(), 1);
        assert_eq!(e.modules[0].rank, 1);
    }

    #[test]
    fn golden_ratio_ring() {
        let ring = quadratic_ring(1);
        let e = enumerate_transitive_modules(&ring, 3, None);
        // only the regular module: x = [[0,1],[1,1]]
        assert_eq!(e.modules.len(), 1);
        let m = &e.modules[0];
        assert_eq!(m.rank, 2);
        assert!((spectral_radius_int(&m.matrices[1]) - 1.618033988749895).abs() < 1e-9);
    }

    #[test]
    fn group_ring_modules_are_quotients() {
        // Z/4: transitive permutation modules of ranks 1, 2, 4
        let ring = cyclic_group_ring(4);
        let e = enumerate_transitive_modules(&ring, 4, Some(1));
        let ranks: Vec<usize> = e.modules.iter().map(|m| m.rank).collect();
        assert_eq!(ranks, [1, 2, 4]);
        for m in &e.modules {
            assert!(e.modules.iter().any(|o| o.equivalent(&m.dual(&ring))));
        }
    }

    #[test]
    fn canonical_is_class_invariant() {
        let ring = cyclic_group_ring(3);
        let e = enumerate_transitive_modules(&ring, 3, Some(1));
        let m = e.modules.last().unwrap();
        for perm in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1]] {
            assert_eq!(m.permuted(&perm).canonical(), m.canonical());
        }
    }
}
