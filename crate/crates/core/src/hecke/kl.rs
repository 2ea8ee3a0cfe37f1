//! Kazhdan–Lusztig polynomials and mu-coefficients.

use std::collections::HashMap;

use rayon::prelude::*;

use super::poly::Poly;
use crate::coxeter::{CoxeterSpec, CoxeterSystem, Element};
use crate::error::{Error, Result};

/// Version tag of the normalization used throughout: `P_{x,y}` in `q` with
/// `P_{y,y} = 1`, structure constants in `v` with `C_s C_s = (v + v^-1) C_s`.
pub const CONVENTION_VERSION: &str = "kl-q1-cs-v+v^-1/1";

/// Default size limit for full KL tables.
pub const KL_ORDER_LIMIT: usize = 4000;

const ABSENT: u32 = u32::MAX;

/// All KL polynomials and mu-coefficients of a Coxeter system.
#[derive(Debug, Clone)]
pub struct KLTable {
    spec: CoxeterSpec,
    rank: usize,
    order: usize,
    checksum: String,
    // distinct polynomials; entries index into it
    pool: Vec<Poly>,
    // entries[y * order + x] = pool id of P_{x,y}, or ABSENT when x is not <= y
    entries: Vec<u32>,
    // (z, mu(z, y)) for z < y with mu nonzero, sorted by z
    mu_below: Vec<Vec<(u32, i64)>>,
    // mu_below[y] restricted to s z < z, indexed y * rank + s
    mu_left: Vec<Vec<(u32, i64)>>,
    // mu_below[y] restricted to z s < z
    mu_right: Vec<Vec<(u32, i64)>>,
}

struct Interner {
    pool: Vec<Poly>,
    ids: HashMap<Poly, u32>,
}

impl Interner {
    fn new() -> Self {
        Interner {
            pool: Vec::new(),
            ids: HashMap::new(),
        }
    }

    fn intern(&mut self, p: Poly) -> u32 {
        if let Some(&id) = self.ids.get(&p) {
            return id;
        }
        let id = self.pool.len() as u32;
        self.pool.push(p.clone());
        self.ids.insert(p, id);
        id
    }
}

impl KLTable {
    /// Builds the table for `sys` under the default size limit.
    pub fn build(sys: &CoxeterSystem) -> Result<Self> {
        Self::build_with_limit(sys, KL_ORDER_LIMIT)
    }

    /// Builds the table, refusing groups with more than `limit` elements.
    ///
    /// Rows `P_{., y}` of equal length `l(y)` are independent and are
    /// computed in parallel.
    pub fn build_with_limit(sys: &CoxeterSystem, limit: usize) -> Result<Self> {
        let n = sys.order();
        if n > limit {
            return Err(Error::SizePolicy {
                order: n,
                limit,
                required_mb: n * n * 4 / (1 << 20),
            });
        }
        let rank = sys.rank();
        let mut interner = Interner::new();
        let one = interner.intern(Poly::one());
        let mut entries = vec![ABSENT; n * n];
        entries[0] = one;
        let mut mu_below: Vec<Vec<(u32, i64)>> = vec![Vec::new(); n];

        let mut start = 1;
        while start < n {
            let len = sys.length(Element(start as u32));
            let end = (start..n)
                .find(|&y| sys.length(Element(y as u32)) != len)
                .unwrap_or(n);
            let rows: Vec<Vec<Option<Poly>>> = {
                let pool = &interner.pool;
                let entries = &entries;
                let mu_below = &mu_below;
                (start..end)
                    .into_par_iter()
                    .map(|y| compute_row(sys, pool, entries, mu_below, y))
                    .collect()
            };
            for (offset, row) in rows.into_iter().enumerate() {
                let y = start + offset;
                let ly = sys.length(Element(y as u32));
                let mut mus = Vec::new();
                for (x, p) in row.into_iter().enumerate() {
                    let Some(p) = p else { continue };
                    let lx = sys.length(Element(x as u32));
                    if x != y && (ly - lx) % 2 == 1 {
                        let mu = p.coeff(((ly - lx - 1) / 2) as usize);
                        if mu != 0 {
                            mus.push((x as u32, mu));
                        }
                    }
                    entries[y * n + x] = interner.intern(p);
                }
                mu_below[y] = mus;
            }
            start = end;
        }

        let mut mu_left = vec![Vec::new(); n * rank];
        let mut mu_right = vec![Vec::new(); n * rank];
        for y in 0..n {
            for s in 0..rank {
                mu_left[y * rank + s] = mu_below[y]
                    .iter()
                    .copied()
                    .filter(|&(z, _)| sys.is_left_descent(s, Element(z)))
                    .collect();
                mu_right[y * rank + s] = mu_below[y]
                    .iter()
                    .copied()
                    .filter(|&(z, _)| sys.is_right_descent(Element(z), s))
                    .collect();
            }
        }

        Ok(KLTable {
            spec: sys.spec(),
            rank,
            order: n,
            checksum: sys.indexing_checksum(),
            pool: interner.pool,
            entries,
            mu_below,
            mu_left,
            mu_right,
        })
    }

    /// Reassembles a table from stored polynomials (see the cache module).
    pub(crate) fn from_parts(
        sys: &CoxeterSystem,
        polys: impl IntoIterator<Item = (u32, u32, Poly)>,
    ) -> Result<Self> {
        let n = sys.order();
        let rank = sys.rank();
        let mut interner = Interner::new();
        let mut entries = vec![ABSENT; n * n];
        for (x, y, p) in polys {
            if x as usize >= n || y as usize >= n || p.is_zero() {
                return Err(Error::Cache(format!("bad record ({x}, {y})")));
            }
            entries[y as usize * n + x as usize] = interner.intern(p);
        }
        let mut mu_below = vec![Vec::new(); n];
        for (y, mus) in mu_below.iter_mut().enumerate() {
            let ly = sys.length(Element(y as u32));
            for x in 0..y {
                let id = entries[y * n + x];
                if id == ABSENT {
                    continue;
                }
                let lx = sys.length(Element(x as u32));
                if (ly - lx) % 2 == 1 {
                    let mu = interner.pool[id as usize].coeff(((ly - lx - 1) / 2) as usize);
                    if mu != 0 {
                        mus.push((x as u32, mu));
                    }
                }
            }
        }
        let mut mu_left = vec![Vec::new(); n * rank];
        let mut mu_right = vec![Vec::new(); n * rank];
        for y in 0..n {
            for s in 0..rank {
                mu_left[y * rank + s] = mu_below[y]
                    .iter()
                    .copied()
                    .filter(|&(z, _)| sys.is_left_descent(s, Element(z)))
                    .collect();
                mu_right[y * rank + s] = mu_below[y]
                    .iter()
                    .copied()
                    .filter(|&(z, _)| sys.is_right_descent(Element(z), s))
                    .collect();
            }
        }
        Ok(KLTable {
            spec: sys.spec(),
            rank,
            order: n,
            checksum: sys.indexing_checksum(),
            pool: interner.pool,
            entries,
            mu_below,
            mu_left,
            mu_right,
        })
    }

    pub fn spec(&self) -> CoxeterSpec {
        self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn convention_version(&self) -> &'static str {
        CONVENTION_VERSION
    }

    /// Checksum of the element indexing this table was built against.
    pub fn indexing_checksum(&self) -> &str {
        &self.checksum
    }

    /// `P_{x,y}`, or `None` when `x` is not below `y` (the polynomial is zero).
    pub fn kl_poly(&self, x: Element, y: Element) -> Option<&Poly> {
        let id = self.entries[y.index() * self.order + x.index()];
        (id != ABSENT).then(|| &self.pool[id as usize])
    }

    /// `P_{x,y}` with zero for incomparable pairs.
    pub fn kl(&self, x: Element, y: Element) -> Poly {
        self.kl_poly(x, y).cloned().unwrap_or_default()
    }

    pub fn mu(&self, x: Element, y: Element) -> i64 {
        let row = &self.mu_below[y.index()];
        match row.binary_search_by_key(&x.0, |&(z, _)| z) {
            Ok(i) => row[i].1,
            Err(_) => 0,
        }
    }

    /// `(z, mu(z, y))` for all `z < y` with nonzero mu.
    pub fn mu_below(&self, y: Element) -> &[(u32, i64)] {
        &self.mu_below[y.index()]
    }

    /// `(z, mu(z, y))` for `z < y`, `s z < z`, mu nonzero.
    pub fn mu_left(&self, y: Element, s: usize) -> &[(u32, i64)] {
        &self.mu_left[y.index() * self.rank + s]
    }

    /// `(z, mu(z, y))` for `z < y`, `z s < z`, mu nonzero.
    pub fn mu_right(&self, y: Element, s: usize) -> &[(u32, i64)] {
        &self.mu_right[y.index() * self.rank + s]
    }

    /// All stored `(x, y, P_{x,y})` in row-major order.
    pub fn iter_polys(&self) -> impl Iterator<Item = (Element, Element, &Poly)> + '_ {
        let n = self.order;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &id)| id != ABSENT)
            .map(move |(k, &id)| {
                (
                    Element((k % n) as u32),
                    Element((k / n) as u32),
                    &self.pool[id as usize],
                )
            })
    }

    pub fn distinct_polys(&self) -> usize {
        self.pool.len()
    }
}

fn compute_row(
    sys: &CoxeterSystem,
    pool: &[Poly],
    entries: &[u32],
    mu_below: &[Vec<(u32, i64)>],
    y: usize,
) -> Vec<Option<Poly>> {
    let n = sys.order();
    let ye = Element(y as u32);
    let ly = sys.length(ye);
    let s = sys.reduced_word(ye)[0] as usize;
    let v = sys.left_mul(s, ye);
    let get = |x: Element, w: Element| -> Option<&Poly> {
        let id = entries[w.index() * n + x.index()];
        (id != ABSENT).then(|| &pool[id as usize])
    };
    // terms of the correction sum that can be nonzero
    let corrections: Vec<(Element, i64, usize)> = mu_below[v.index()]
        .iter()
        .filter(|&&(z, _)| sys.is_left_descent(s, Element(z)))
        .map(|&(z, mu)| {
            let lz = sys.length(Element(z));
            (Element(z), mu, ((ly - lz) / 2) as usize)
        })
        .collect();

    let mut row: Vec<Option<Poly>> = vec![None; n];
    row[y] = Some(Poly::one());
    for x in (0..y).rev() {
        let xe = Element(x as u32);
        if !sys.bruhat_leq(xe, ye) {
            continue;
        }
        let sx = sys.left_mul(s, xe);
        if sys.length(sx) > sys.length(xe) {
            // P_{x,y} = P_{sx,y} when s is a left descent of y
            row[x] = row[sx.index()].clone();
            continue;
        }
        let mut p = Poly::zero();
        if let Some(a) = get(sx, v) {
            p.add_scaled_shifted(a, 1, 0);
        }
        if let Some(b) = get(xe, v) {
            p.add_scaled_shifted(b, 1, 1);
        }
        for &(z, mu, shift) in &corrections {
            if let Some(c) = get(xe, z) {
                p.add_scaled_shifted(c, -mu, shift);
            }
        }
        debug_assert!(!p.is_zero(), "P_{{x,y}} vanished for x <= y");
        row[x] = Some(p);
    }
    row
}

/// Computes single KL polynomials by direct recursion with a private memo.
///
/// Independent of [`KLTable`]; used to spot-check cached tables.
pub struct KlRecursion<'a> {
    sys: &'a CoxeterSystem,
    memo: HashMap<(u32, u32), Poly>,
}

impl<'a> KlRecursion<'a> {
    pub fn new(sys: &'a CoxeterSystem) -> Self {
        KlRecursion {
            sys,
            memo: HashMap::new(),
        }
    }

    pub fn mu(&mut self, x: Element, y: Element) -> i64 {
        let (lx, ly) = (self.sys.length(x), self.sys.length(y));
        if lx >= ly || (ly - lx) % 2 == 0 {
            return 0;
        }
        self.poly(x, y).coeff(((ly - lx - 1) / 2) as usize)
    }

    pub fn poly(&mut self, x: Element, y: Element) -> Poly {
        let sys = self.sys;
        if !sys.bruhat_leq(x, y) {
            return Poly::zero();
        }
        if x == y {
            return Poly::one();
        }
        if let Some(p) = self.memo.get(&(x.0, y.0)) {
            return p.clone();
        }
        let s = sys.reduced_word(y)[0] as usize;
        let v = sys.left_mul(s, y);
        let sx = sys.left_mul(s, x);
        let p = if sys.length(sx) > sys.length(x) {
            self.poly(sx, y)
        } else {
            let ly = sys.length(y);
            let mut p = self.poly(sx, v);
            p.add_scaled_shifted(&self.poly(x, v), 1, 1);
            let lv = sys.length(v);
            for z in sys.elements() {
                let lz = sys.length(z);
                if lz >= lv || (lv - lz) % 2 == 0 || !sys.is_left_descent(s, z) {
                    continue;
                }
                if !sys.bruhat_leq(x, z) || !sys.bruhat_leq(z, v) {
                    continue;
                }
                let mu = self.mu(z, v);
                if mu != 0 {
                    let pxz = self.poly(x, z);
                    p.add_scaled_shifted(&pxz, -mu, ((ly - lz) / 2) as usize);
                }
            }
            p
        };
        self.memo.insert((x.0, y.0), p.clone());
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(s: &str) -> (CoxeterSystem, KLTable) {
        let sys = CoxeterSystem::build(s.parse().unwrap()).unwrap();
        let t = KLTable::build(&sys).unwrap();
        (sys, t)
    }

    #[test]
    fn diagonal_is_one() {
        let (sys, t) = table("B3");
        for y in sys.elements() {
            assert_eq!(t.kl(y, y), Poly::one());
        }
    }

    #[test]
    fn dihedral_polys_are_trivial() {
        for n in 3..=12 {
            let (sys, t) = table(&format!("I2({n})"));
            for x in sys.elements() {
                for y in sys.elements() {
                    let expect = if sys.bruhat_leq(x, y) { Poly::one() } else { Poly::zero() };
                    assert_eq!(t.kl(x, y), expect, "I2({n})");
                }
            }
        }
    }

    #[test]
    fn a3_singular_pair() {
        let (sys, t) = table("A3");
        let x = sys.parse_label("2").unwrap();
        let y = sys.parse_label("2132").unwrap();
        assert_eq!(t.kl(x, y), Poly::from_coeffs(vec![1, 1]));
        assert_eq!(t.kl(Element::IDENTITY, y), Poly::from_coeffs(vec![1, 1]));
    }

    #[test]
    fn recursion_agrees_with_table_on_b3() {
        let (sys, t) = table("B3");
        let mut rec = KlRecursion::new(&sys);
        for x in sys.elements() {
            for y in sys.elements() {
                assert_eq!(rec.poly(x, y), t.kl(x, y));
            }
        }
    }

    #[test]
    fn mu_of_covering_pairs_is_one() {
        let (sys, t) = table("B3");
        for y in sys.elements() {
            for x in sys.elements() {
                if sys.bruhat_leq(x, y) && sys.length(x) + 1 == sys.length(y) {
                    assert_eq!(t.mu(x, y), 1);
                }
            }
        }
    }

    #[test]
    fn size_policy_rejects_large_groups() {
        let sys = CoxeterSystem::build("B3".parse().unwrap()).unwrap();
        match KLTable::build_with_limit(&sys, 10) {
            Err(Error::SizePolicy { order, limit, .. }) => {
                assert_eq!(order, 48);
                assert_eq!(limit, 10);
            }
            other => panic!("expected size policy error, got {other:?}"),
        }
    }
}
