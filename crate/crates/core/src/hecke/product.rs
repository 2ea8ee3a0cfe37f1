//! Multiplication in the Kazhdan–Lusztig basis.

use std::collections::{BTreeMap, HashMap};

use super::kl::KLTable;
use super::poly::LaurentPoly;
use crate::coxeter::{CoxeterSystem, Element};

/// A finitely supported combination `sum_z h_z C_z`; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CExpansion(BTreeMap<Element, LaurentPoly>);

impl CExpansion {
    pub fn zero() -> Self {
        CExpansion::default()
    }

    pub fn basis(w: Element) -> Self {
        let mut m = BTreeMap::new();
        m.insert(w, LaurentPoly::one());
        CExpansion(m)
    }

    pub fn coeff(&self, z: Element) -> LaurentPoly {
        self.0.get(&z).cloned().unwrap_or_default()
    }

    pub fn get(&self, z: Element) -> Option<&LaurentPoly> {
        self.0.get(&z)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Element, &LaurentPoly)> {
        self.0.iter().map(|(&z, p)| (z, p))
    }

    pub fn support(&self) -> impl Iterator<Item = Element> + '_ {
        self.0.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self += k * v^shift * p * C_z`.
    pub fn add_term(&mut self, z: Element, p: &LaurentPoly, k: i64) {
        if p.is_zero() || k == 0 {
            return;
        }
        let entry = self.0.entry(z).or_default();
        entry.add_scaled(p, k, 0);
        if entry.is_zero() {
            self.0.remove(&z);
        }
    }

    pub fn add_scaled(&mut self, other: &CExpansion, k: i64) {
        for (z, p) in other.iter() {
            self.add_term(z, p, k);
        }
    }

    /// Specialization at `v = 1`, dropping terms that vanish there.
    pub fn at_one(&self) -> BTreeMap<Element, i64> {
        self.0
            .iter()
            .map(|(&z, p)| (z, p.eval_one()))
            .filter(|&(_, c)| c != 0)
            .collect()
    }
}

/// Left and right multiplication by `C_s`, and general products `C_x C_y`.
#[derive(Clone, Copy)]
pub struct HeckeProducts<'a> {
    sys: &'a CoxeterSystem,
    table: &'a KLTable,
}

impl<'a> HeckeProducts<'a> {
    pub fn new(sys: &'a CoxeterSystem, table: &'a KLTable) -> Self {
        assert_eq!(
            sys.indexing_checksum(),
            table.indexing_checksum(),
            "KL table belongs to a different system"
        );
        HeckeProducts { sys, table }
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.sys
    }

    pub fn table(&self) -> &'a KLTable {
        self.table
    }

    /// `C_s C_w`: `(v + v^-1) C_w` if `sw < w`, otherwise
    /// `C_{sw} + sum_{z < w, sz < z} mu(z, w) C_z`.
    pub fn generator_product(&self, s: usize, w: Element) -> CExpansion {
        self.left_generator(s, &CExpansion::basis(w))
    }

    /// `C_s * h`.
    pub fn left_generator(&self, s: usize, h: &CExpansion) -> CExpansion {
        let mut out = CExpansion::zero();
        for (w, c) in h.iter() {
            let sw = self.sys.left_mul(s, w);
            if self.sys.length(sw) < self.sys.length(w) {
                out.add_term(w, &c.times_quantum_two(), 1);
            } else {
                out.add_term(sw, c, 1);
                for &(z, mu) in self.table.mu_left(w, s) {
                    out.add_term(Element(z), c, mu);
                }
            }
        }
        out
    }

    /// `h * C_s`.
    pub fn right_generator(&self, h: &CExpansion, s: usize) -> CExpansion {
        let mut out = CExpansion::zero();
        for (w, c) in h.iter() {
            let ws = self.sys.right_mul(w, s);
            if self.sys.length(ws) < self.sys.length(w) {
                out.add_term(w, &c.times_quantum_two(), 1);
            } else {
                out.add_term(ws, c, 1);
                for &(z, mu) in self.table.mu_right(w, s) {
                    out.add_term(Element(z), c, mu);
                }
            }
        }
        out
    }

    /// `C_x C_y`.
    pub fn product(&self, x: Element, y: Element) -> CExpansion {
        LeftProducts::new(*self, y).product(x).clone()
    }

    /// `C_x C_y`, peeling `x` along the given reduced word at the top level
    /// (`C_x = C_s C_{sx} - sum mu(z, sx) C_z` with `s` the first letter).
    pub fn product_along_word(&self, x: Element, word: &[u8], y: Element) -> CExpansion {
        assert_eq!(word.len() as u32, self.sys.length(x), "word is not reduced");
        let mut cache = LeftProducts::new(*self, y);
        if word.is_empty() {
            return CExpansion::basis(y);
        }
        let s = word[0] as usize;
        let rest = self.sys.left_mul(s, x);
        debug_assert!(self.sys.length(rest) < self.sys.length(x));
        let mut out = self.left_generator(s, &self.product_along_word(rest, &word[1..], y));
        for &(z, mu) in self.table.mu_left(rest, s) {
            out.add_scaled(cache.product(Element(z)), -mu);
        }
        out
    }

    /// `C_x C_y` computed through the anti-involution `C_w -> C_{w^-1}`:
    /// the product is the image of `C_{y^-1} C_{x^-1}`.
    pub fn product_via_inverse(&self, x: Element, y: Element) -> CExpansion {
        let swapped = self.product(self.sys.inverse(y), self.sys.inverse(x));
        let mut out = CExpansion::zero();
        for (z, c) in swapped.iter() {
            out.add_term(self.sys.inverse(z), c, 1);
        }
        out
    }
}

/// Memoized products `C_w C_y` for a fixed right factor `y`.
///
/// `C_w C_y` is built from `C_{sw} C_y` and the `C_z C_y` with
/// `mu(z, sw) != 0`, `sz < z`, where `s` is the first letter of `w`.
pub struct LeftProducts<'a> {
    hecke: HeckeProducts<'a>,
    memo: HashMap<Element, CExpansion>,
}

impl<'a> LeftProducts<'a> {
    pub fn new(hecke: HeckeProducts<'a>, y: Element) -> Self {
        let mut memo = HashMap::new();
        memo.insert(Element::IDENTITY, CExpansion::basis(y));
        LeftProducts { hecke, memo }
    }

    pub fn product(&mut self, x: Element) -> &CExpansion {
        if !self.memo.contains_key(&x) {
            self.fill(x);
        }
        &self.memo[&x]
    }

    fn fill(&mut self, x: Element) {
        let sys = self.hecke.sys;
        let table = self.hecke.table;
        // collect the missing dependencies, then evaluate by increasing length
        let mut todo = vec![x];
        let mut needed = vec![];
        let mut seen = std::collections::HashSet::new();
        while let Some(w) = todo.pop() {
            if self.memo.contains_key(&w) || !seen.insert(w) {
                continue;
            }
            needed.push(w);
            let s = sys.reduced_word(w)[0] as usize;
            let rest = sys.left_mul(s, w);
            todo.push(rest);
            todo.extend(table.mu_left(rest, s).iter().map(|&(z, _)| Element(z)));
        }
        needed.sort_by_key(|&w| (sys.length(w), w));
        for w in needed {
            let s = sys.reduced_word(w)[0] as usize;
            let rest = sys.left_mul(s, w);
            let mut out = self.hecke.left_generator(s, &self.memo[&rest]);
            for &(z, mu) in table.mu_left(rest, s) {
                out.add_scaled(&self.memo[&Element(z)], -mu);
            }
            self.memo.insert(w, out);
        }
    }
}
