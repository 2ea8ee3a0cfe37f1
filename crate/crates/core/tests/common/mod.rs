//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use cellkit::coxeter::{CoxeterSystem, Element};

/// Laurent polynomial in `v`: exponent -> coefficient, no zero entries.
pub type Laurent = BTreeMap<i32, i64>;

fn add_into(acc: &mut Laurent, p: &Laurent, k: i64, shift: i32) {
    for (&e, &c) in p {
        let slot = acc.entry(e + shift).or_insert(0);
        *slot += k * c;
        if *slot == 0 {
            acc.remove(&(e + shift));
        }
    }
}

fn mul(p: &Laurent, q: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (&e, &c) in q {
        add_into(&mut out, p, c, e);
    }
    out
}

/// Element of the Hecke algebra in the standard basis `H_w`, where
/// `H_s^2 = 1 + (v^-1 - v) H_s`.
pub type HElem = BTreeMap<Element, Laurent>;

fn h_add(acc: &mut HElem, w: Element, p: &Laurent, k: i64, shift: i32) {
    let slot = acc.entry(w).or_default();
    add_into(slot, p, k, shift);
    if slot.is_empty() {
        acc.remove(&w);
    }
}

/// KL basis computed from scratch in the standard basis:
/// `C_s = H_s + v`, `C_w = C_s C_{sw} - sum mu(z, sw) C_z` over `z < sw`
/// with `sz < z`, `mu` read off the `v^1` coefficient.
pub struct HBasisOracle<'a> {
    pub sys: &'a CoxeterSystem,
    c: Vec<HElem>,
}

impl<'a> HBasisOracle<'a> {
    pub fn new(sys: &'a CoxeterSystem) -> Self {
        let mut c: Vec<HElem> = vec![HElem::new(); sys.order()];
        c[0].insert(Element::IDENTITY, Laurent::from([(0, 1)]));
        let mut elems: Vec<Element> = sys.elements().collect();
        elems.sort_by_key(|&w| sys.length(w));
        for &w in elems.iter().skip(1) {
            let s = sys.reduced_word(w)[0] as usize;
            let sw = sys.left_mul(s, w);
            let mut cw = Self::left_cs(sys, s, &c[sw.index()]);
            for &z in &elems {
                if sys.length(z) >= sys.length(sw) {
                    break;
                }
                if !sys.is_left_descent(s, z) {
                    continue;
                }
                let mu = c[sw.index()].get(&z).and_then(|p| p.get(&1)).copied().unwrap_or(0);
                if mu != 0 {
                    for (&u, p) in &c[z.index()] {
                        h_add(&mut cw, u, p, -mu, 0);
                    }
                }
            }
            c[w.index()] = cw;
        }
        HBasisOracle { sys, c }
    }

    /// `H_s * h`.
    fn left_hs(sys: &CoxeterSystem, s: usize, h: &HElem) -> HElem {
        let mut out = HElem::new();
        for (&w, p) in h {
            let sw = sys.left_mul(s, w);
            h_add(&mut out, sw, p, 1, 0);
            if sys.length(sw) < sys.length(w) {
                h_add(&mut out, w, p, 1, -1);
                h_add(&mut out, w, p, -1, 1);
            }
        }
        out
    }

    /// `C_s * h = H_s h + v h`.
    fn left_cs(sys: &CoxeterSystem, s: usize, h: &HElem) -> HElem {
        let mut out = Self::left_hs(sys, s, h);
        for (&w, p) in h {
            h_add(&mut out, w, p, 1, 1);
        }
        out
    }

    /// `P_{x,y}` as coefficients of `q^0, q^1, ...`.
    pub fn kl(&self, x: Element, y: Element) -> Vec<i64> {
        let Some(h) = self.c[y.index()].get(&x) else {
            return Vec::new();
        };
        // h_{x,y} = v^{l(y)-l(x)} P(v^-2)
        let d = self.sys.length(y) as i32 - self.sys.length(x) as i32;
        let mut out = Vec::new();
        for (&e, &c) in h {
            let k = ((d - e) / 2) as usize;
            assert_eq!((d - e) % 2, 0);
            if out.len() <= k {
                out.resize(k + 1, 0);
            }
            out[k] = c;
        }
        out
    }

    /// `C_x C_y` in the KL basis.
    pub fn product(&self, x: Element, y: Element) -> BTreeMap<Element, Laurent> {
        let sys = self.sys;
        // H_z C_y for each z in the support of C_x
        let mut h = HElem::new();
        for (&z, p) in &self.c[x.index()] {
            let mut t = self.c[y.index()].clone();
            for &s in sys.reduced_word(z).iter().rev() {
                t = Self::left_hs(sys, s as usize, &t);
            }
            for (&u, q) in &t {
                h_add(&mut h, u, &mul(p, q), 1, 0);
            }
        }
        // back to the KL basis, peeling off the longest term each time
        let mut out = BTreeMap::new();
        while let Some((&w, _)) = h.iter().max_by_key(|(&w, _)| (sys.length(w), w)) {
            let coeff = h[&w].clone();
            for (&u, p) in &self.c[w.index()] {
                let prod = mul(&coeff, p);
                h_add(&mut h, u, &prod, -1, 0);
            }
            out.insert(w, coeff);
        }
        out
    }
}

/// Permutation (one-line, 0-based) of a type A element: the product of
/// the transpositions `(i, i+1)` along its reduced word.
pub fn permutation(sys: &CoxeterSystem, w: Element) -> Vec<usize> {
    let n = sys.rank() + 1;
    let mut p: Vec<usize> = (0..n).collect();
    for &s in sys.reduced_word(w) {
        p.swap(s as usize, s as usize + 1);
    }
    p
}

/// Robinson–Schensted row insertion: (P, Q) tableaux.
pub fn rs_tableaux(perm: &[usize]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (step, &v) in perm.iter().enumerate() {
        let mut x = v;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![x]);
                q.push(vec![step]);
                break;
            }
            match p[row].iter().position(|&y| y > x) {
                Some(i) => {
                    std::mem::swap(&mut p[row][i], &mut x);
                    row += 1;
                }
                None => {
                    p[row].push(x);
                    q[row].push(step);
                    break;
                }
            }
        }
    }
    (p, q)
}

/// Blocks of a partition of the group as sets of elements.
pub fn blocks_by<K: Ord>(sys: &CoxeterSystem, key: impl Fn(Element) -> K) -> BTreeSet<BTreeSet<Element>> {
    let mut m: BTreeMap<K, BTreeSet<Element>> = BTreeMap::new();
    for w in sys.elements() {
        m.entry(key(w)).or_default().insert(w);
    }
    m.into_values().collect()
}

/// One two-sided cell from a fixture: its a-value and its grid (rows are
/// right cells, columns left cells, entries reduced words).
#[derive(Debug, Clone)]
pub struct GridCell {
    pub a: u32,
    pub rows: Vec<Vec<Vec<String>>>,
    /// Entries marked as longest elements of standard parabolic subgroups.
    pub marked: Vec<String>,
}

/// Parses `tests/data/<name>`.
pub fn load_grid(name: &str) -> Vec<GridCell> {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    let mut cells: Vec<GridCell> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(a) = line.strip_prefix("a = ") {
            cells.push(GridCell {
                a: a.parse().expect("a-value"),
                rows: Vec::new(),
                marked: Vec::new(),
            });
            continue;
        }
        let cell = cells.last_mut().expect("a-value line first");
        let row = line
            .split('|')
            .map(|b| {
                let b = b.trim();
                if b == "-" {
                    return Vec::new();
                }
                b.split_whitespace()
                    .map(|w| match w.strip_prefix('*') {
                        Some(w) => {
                            cell.marked.push(w.to_owned());
                            w.to_owned()
                        }
                        None => w.to_owned(),
                    })
                    .collect()
            })
            .collect();
        cell.rows.push(row);
    }
    cells
}

/// A random reduced word for `w`: peel random left descents.
pub fn random_reduced_word(sys: &CoxeterSystem, w: Element, mut pick: impl FnMut(usize) -> usize) -> Vec<u8> {
    let mut word = Vec::new();
    let mut x = w;
    while x != Element::IDENTITY {
        let desc: Vec<usize> = (0..sys.rank()).filter(|&s| sys.is_left_descent(s, x)).collect();
        let s = desc[pick(desc.len())];
        word.push(s as u8);
        x = sys.left_mul(s, x);
    }
    word
}
