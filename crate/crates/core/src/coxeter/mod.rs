//! Finite Coxeter systems with exact element enumeration.
//!
//! Elements are produced by a breadth-first closure over the generators in an
//! exact realization: the geometric representation over `Z[2cos(pi/m)]` for
//! the crystallographic and `H` types and for `I2(n)` with `n <= 6`, and the
//! explicit rotation/reflection model for other dihedral groups. Indices are
//! assigned in ShortLex order of the least reduced word, so index 0 is the
//! identity and the last index is the longest element.

mod exact;
mod spec;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use exact::{QuadInt, QuadMatrix, QuadRing};
pub use spec::{CoxeterSpec, Family, MAX_RANK};

/// Hard cap on group construction.
pub const MAX_GROUP_ORDER: usize = 100_000;

/// Largest group for which the Bruhat order is kept as a bit matrix.
pub const BRUHAT_MEMO_LIMIT: usize = 4000;

/// An element of a [`CoxeterSystem`], identified by its ShortLex index.
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Element(pub u32);

impl Element {
    pub const IDENTITY: Element = Element(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Which side a generator acts on.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A set of generators as a bit mask (bit `i` is generator `i + 1`).
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct GeneratorSet(pub u32);

impl GeneratorSet {
    pub fn empty() -> Self {
        GeneratorSet(0)
    }

    pub fn full(rank: usize) -> Self {
        GeneratorSet((1u32 << rank) - 1)
    }

    pub fn from_slice(gens: &[usize]) -> Self {
        GeneratorSet(gens.iter().fold(0, |m, &s| m | (1 << s)))
    }

    pub fn contains(self, s: usize) -> bool {
        self.0 & (1 << s) != 0
    }

    pub fn insert(&mut self, s: usize) {
        self.0 |= 1 << s;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&s| self.0 & (1 << s) != 0)
    }
}

/// Bruhat order stored row-wise: bit `x` of row `y` is set iff `x <= y`.
#[derive(Debug, Clone)]
struct BitMatrix {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        BitMatrix {
            words_per_row,
            bits: vec![0; words_per_row * n],
        }
    }

    #[inline]
    fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.words_per_row + col / 64] >> (col % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.words_per_row + col / 64] |= 1 << (col % 64);
    }
}

/// A finite Coxeter system with every element enumerated.
///
/// Immutable once built.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    spec: CoxeterSpec,
    rank: usize,
    words: Vec<Vec<u8>>,
    lengths: Vec<u32>,
    // |W| x rank, element indices
    left_cayley: Vec<u32>,
    right_cayley: Vec<u32>,
    inverses: Vec<u32>,
    bruhat: Option<BitMatrix>,
}

enum Realization {
    Geometric {
        ring: QuadRing,
        gens: Vec<QuadMatrix>,
    },
    Dihedral {
        n: i64,
    },
}

/// Group elements as hashable keys: flattened matrices, or `(rotation, flip)`
/// for the dihedral model.
type Key = Vec<i64>;

impl Realization {
    fn new(spec: &CoxeterSpec) -> Result<Self> {
        let rank = spec.rank();
        let bonds = (0..rank).flat_map(|i| (0..rank).map(move |j| (i, j)));
        let ring = QuadRing::for_bonds(bonds.clone().map(|(i, j)| spec.bond(i, j)));
        match ring {
            Some(ring) => {
                // s_i(a_j) = a_j + 2cos(pi/m_ij) a_i, s_i(a_i) = -a_i
                let gens = (0..rank)
                    .map(|i| {
                        let mut m = QuadMatrix::identity(rank);
                        for j in 0..rank {
                            let c = if i == j {
                                QuadInt::new(-2, 0)
                            } else {
                                ring.two_cos(spec.bond(i, j))
                            };
                            m.set(i, j, m.get(i, j) + c);
                        }
                        m
                    })
                    .collect();
                Ok(Realization::Geometric { ring, gens })
            }
            None => match spec.dihedral_order() {
                Some(n) => Ok(Realization::Dihedral { n: n as i64 }),
                None => Err(Error::InvalidSpec(
                    spec.to_string(),
                    "no exact realization".into(),
                )),
            },
        }
    }

    fn identity(&self, rank: usize) -> Key {
        match self {
            Realization::Geometric { .. } => flatten(&QuadMatrix::identity(rank), rank),
            Realization::Dihedral { .. } => vec![0, 0],
        }
    }

    fn mul(&self, rank: usize, key: &Key, s: usize, side: Side) -> Key {
        match self {
            Realization::Geometric { ring, gens } => {
                let m = unflatten(key, rank);
                let out = match side {
                    Side::Left => gens[s].mul(&m, ring),
                    Side::Right => m.mul(&gens[s], ring),
                };
                flatten(&out, rank)
            }
            Realization::Dihedral { n } => {
                // element (k, f) is rho^k sigma^f; s_1 = sigma, s_2 = rho sigma
                let g = if s == 0 { (0, 1) } else { (1, 1) };
                let (a, b) = match side {
                    Side::Left => (g, (key[0], key[1])),
                    Side::Right => ((key[0], key[1]), g),
                };
                let sign = if a.1 == 1 { -1 } else { 1 };
                vec![(a.0 + sign * b.0).rem_euclid(*n), a.1 ^ b.1]
            }
        }
    }
}

fn flatten(m: &QuadMatrix, rank: usize) -> Key {
    let mut key = Vec::with_capacity(2 * rank * rank);
    for i in 0..rank {
        for j in 0..rank {
            let x = m.get(i, j);
            key.push(x.a);
            key.push(x.b);
        }
    }
    key
}

fn unflatten(key: &Key, rank: usize) -> QuadMatrix {
    let mut m = QuadMatrix::identity(rank);
    for i in 0..rank {
        for j in 0..rank {
            let k = 2 * (i * rank + j);
            m.set(i, j, QuadInt::new(key[k], key[k + 1]));
        }
    }
    m
}

impl CoxeterSystem {
    /// Enumerates the group of `spec`.
    pub fn build(spec: CoxeterSpec) -> Result<Self> {
        let order = spec.order() as usize;
        if order > MAX_GROUP_ORDER {
            return Err(Error::GroupTooLarge {
                order,
                limit: MAX_GROUP_ORDER,
            });
        }
        let rank = spec.rank();
        let real = Realization::new(&spec)?;

        let mut index: HashMap<Key, u32> = HashMap::with_capacity(order);
        let mut keys: Vec<Key> = Vec::with_capacity(order);
        let mut words: Vec<Vec<u8>> = Vec::with_capacity(order);
        let mut lengths: Vec<u32> = Vec::with_capacity(order);
        let mut right = vec![u32::MAX; order * rank];

        let id = real.identity(rank);
        index.insert(id.clone(), 0);
        keys.push(id);
        words.push(Vec::new());
        lengths.push(0);

        // Elements of one length are contiguous and already in ShortLex order,
        // so scanning them in order and appending new products keeps that order.
        let mut level_start = 0;
        while level_start < keys.len() {
            let level_end = keys.len();
            for x in level_start..level_end {
                for s in 0..rank {
                    let y = real.mul(rank, &keys[x], s, Side::Right);
                    let yi = match index.get(&y) {
                        Some(&i) => i,
                        None => {
                            let i = keys.len() as u32;
                            if keys.len() >= order {
                                return Err(Error::InvalidSpec(
                                    spec.to_string(),
                                    "closure exceeded the classical order".into(),
                                ));
                            }
                            let mut w = words[x].clone();
                            w.push(s as u8);
                            index.insert(y.clone(), i);
                            keys.push(y);
                            words.push(w);
                            lengths.push(lengths[x] + 1);
                            i
                        }
                    };
                    right[x * rank + s] = yi;
                }
            }
            level_start = level_end;
        }
        if keys.len() != order {
            return Err(Error::InvalidSpec(
                spec.to_string(),
                format!("closure found {} elements, expected {order}", keys.len()),
            ));
        }

        let mut left = vec![0u32; order * rank];
        for (x, key) in keys.iter().enumerate() {
            for s in 0..rank {
                left[x * rank + s] = index[&real.mul(rank, key, s, Side::Left)];
            }
        }

        let mut inverses = vec![0u32; order];
        for (x, w) in words.iter().enumerate() {
            let mut y = 0u32;
            for &s in w.iter().rev() {
                y = right[y as usize * rank + s as usize];
            }
            inverses[x] = y;
        }

        let mut sys = CoxeterSystem {
            spec,
            rank,
            words,
            lengths,
            left_cayley: left,
            right_cayley: right,
            inverses,
            bruhat: None,
        };
        if order <= BRUHAT_MEMO_LIMIT {
            sys.bruhat = Some(sys.bruhat_matrix());
        }
        Ok(sys)
    }

    fn bruhat_matrix(&self) -> BitMatrix {
        let n = self.order();
        let mut m = BitMatrix::new(n);
        m.set(0, 0);
        for y in 1..n {
            let s = self.words[y][0] as usize;
            let sy = self.left_cayley[y * self.rank + s] as usize;
            for x in 0..n {
                if self.lengths[x] > self.lengths[y] {
                    break;
                }
                let sx = self.left_cayley[x * self.rank + s] as usize;
                let leq = if self.lengths[sx] < self.lengths[x] {
                    m.get(sy, sx)
                } else {
                    m.get(sy, x)
                };
                if leq {
                    m.set(y, x);
                }
            }
        }
        m
    }

    pub fn spec(&self) -> CoxeterSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        self.spec.coxeter_matrix()
    }

    pub fn identity(&self) -> Element {
        Element::IDENTITY
    }

    pub fn longest(&self) -> Element {
        Element(self.order() as u32 - 1)
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = Element> + '_ {
        (0..self.order() as u32).map(Element)
    }

    /// The simple reflection `s` (0-based).
    pub fn generator(&self, s: usize) -> Element {
        Element(self.right_cayley[s])
    }

    #[inline]
    pub fn length(&self, x: Element) -> u32 {
        self.lengths[x.index()]
    }

    /// `s * x`.
    #[inline]
    pub fn left_mul(&self, s: usize, x: Element) -> Element {
        Element(self.left_cayley[x.index() * self.rank + s])
    }

    /// `x * s`.
    #[inline]
    pub fn right_mul(&self, x: Element, s: usize) -> Element {
        Element(self.right_cayley[x.index() * self.rank + s])
    }

    #[inline]
    pub fn is_left_descent(&self, s: usize, x: Element) -> bool {
        self.length(self.left_mul(s, x)) < self.length(x)
    }

    #[inline]
    pub fn is_right_descent(&self, x: Element, s: usize) -> bool {
        self.length(self.right_mul(x, s)) < self.length(x)
    }

    pub fn descents(&self, x: Element, side: Side) -> GeneratorSet {
        let mut set = GeneratorSet::empty();
        for s in 0..self.rank {
            let d = match side {
                Side::Left => self.is_left_descent(s, x),
                Side::Right => self.is_right_descent(x, s),
            };
            if d {
                set.insert(s);
            }
        }
        set
    }

    pub fn multiply(&self, x: Element, y: Element) -> Element {
        self.reduced_word(y)
            .iter()
            .fold(x, |acc, &s| self.right_mul(acc, s as usize))
    }

    #[inline]
    pub fn inverse(&self, x: Element) -> Element {
        Element(self.inverses[x.index()])
    }

    /// ShortLex-least reduced word, 0-based generators.
    pub fn reduced_word(&self, x: Element) -> &[u8] {
        &self.words[x.index()]
    }

    /// Element represented by a word; `None` if a letter is out of range.
    pub fn word_to_element(&self, word: &[usize]) -> Option<Element> {
        let mut x = Element::IDENTITY;
        for &s in word {
            if s >= self.rank {
                return None;
            }
            x = self.right_mul(x, s);
        }
        Some(x)
    }

    /// Bruhat order `x <= y`.
    pub fn bruhat_leq(&self, x: Element, y: Element) -> bool {
        if let Some(m) = &self.bruhat {
            return m.get(y.index(), x.index());
        }
        self.bruhat_leq_recursive(x, y)
    }

    fn bruhat_leq_recursive(&self, x: Element, y: Element) -> bool {
        if self.length(x) > self.length(y) {
            return false;
        }
        if x == y {
            return true;
        }
        let s = self.words[y.index()][0] as usize;
        let sy = self.left_mul(s, y);
        let sx = self.left_mul(s, x);
        if self.length(sx) < self.length(x) {
            self.bruhat_leq_recursive(sx, sy)
        } else {
            self.bruhat_leq_recursive(x, sy)
        }
    }

    /// Longest element of the standard parabolic subgroup on `subset`.
    pub fn longest_element(&self, subset: GeneratorSet) -> Element {
        let mut w = Element::IDENTITY;
        'grow: loop {
            for s in subset.iter().filter(|&s| s < self.rank) {
                if !self.is_right_descent(w, s) {
                    w = self.right_mul(w, s);
                    continue 'grow;
                }
            }
            return w;
        }
    }

    /// Canonical label: the digits of the ShortLex word, or `e`.
    pub fn label(&self, x: Element) -> String {
        let w = self.reduced_word(x);
        if w.is_empty() {
            return "e".to_string();
        }
        w.iter().map(|&s| char::from(b'1' + s)).collect()
    }

    /// Parses a label made of generator digits. Any reduced word is accepted,
    /// not only the ShortLex one.
    pub fn parse_label(&self, label: &str) -> Result<Element> {
        let label = label.trim();
        if label == "e" {
            return Ok(Element::IDENTITY);
        }
        let unknown = || Error::UnknownElement(label.to_string());
        if label.is_empty() {
            return Err(unknown());
        }
        let word = label
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d >= 1 && (d as usize) <= self.rank)
                    .map(|d| d as usize - 1)
                    .ok_or_else(unknown)
            })
            .collect::<Result<Vec<_>>>()?;
        let x = self.word_to_element(&word).ok_or_else(unknown)?;
        if self.length(x) as usize != word.len() {
            return Err(unknown());
        }
        Ok(x)
    }

    /// Hex SHA-256 of the element labels in index order.
    pub fn indexing_checksum(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.spec.to_string().as_bytes());
        for x in self.elements() {
            hasher.update(b",");
            hasher.update(self.label(x).as_bytes());
        }
        hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

impl fmt::Display for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (|W| = {})", self.spec, self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> CoxeterSystem {
        CoxeterSystem::build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn orders_match_classical_values() {
        for (s, n) in [
            ("A1", 2),
            ("A3", 24),
            ("B2", 8),
            ("B3", 48),
            ("B4", 384),
            ("D4", 192),
            ("F4", 1152),
            ("H3", 120),
            ("I2(3)", 6),
            ("I2(5)", 10),
            ("I2(6)", 12),
            ("I2(7)", 14),
            ("I2(12)", 24),
        ] {
            assert_eq!(sys(s).order(), n, "{s}");
        }
    }

    #[test]
    fn identity_and_longest() {
        let b3 = sys("B3");
        assert_eq!(b3.label(b3.identity()), "e");
        assert_eq!(b3.length(b3.longest()), 9);
        assert_eq!(b3.label(b3.longest()), "121232123");
        let maxlen = b3.elements().filter(|&x| b3.length(x) == 9).count();
        assert_eq!(maxlen, 1);
    }

    #[test]
    fn products_in_b3() {
        let b3 = sys("B3");
        let x = b3.parse_label("12").unwrap();
        let s3 = b3.parse_label("3").unwrap();
        let y = b3.multiply(x, s3);
        assert_eq!(b3.label(y), "123");
        assert_eq!(b3.length(y), 3);
        let s = b3.generator(0);
        assert_eq!(b3.multiply(s, s), Element::IDENTITY);
        assert_eq!(b3.multiply(Element::IDENTITY, y), y);
    }

    #[test]
    fn appendix_labels_parse() {
        let b3 = sys("B3");
        let x = b3.parse_label("1213").unwrap();
        assert_eq!(b3.reduced_word(x), &[0, 1, 0, 2]);
        // 1231 is another reduced word of the same element
        assert_eq!(b3.parse_label("1231").unwrap(), x);
        assert!(b3.parse_label("11").is_err());
        assert!(b3.parse_label("14").is_err());
        assert_eq!(b3.length(b3.parse_label("121232123").unwrap()), 9);
    }

    #[test]
    fn dihedral_longest_word() {
        let i5 = sys("I2(5)");
        assert_eq!(i5.label(i5.longest()), "12121");
        let i7 = sys("I2(7)");
        assert_eq!(i7.label(i7.longest()), "1212121");
    }

    #[test]
    fn inverse_of_palindrome() {
        let b3 = sys("B3");
        let x = b3.parse_label("121").unwrap();
        assert_eq!(b3.inverse(x), x);
        let y = b3.parse_label("123").unwrap();
        assert_eq!(b3.label(b3.inverse(y)), "321");
    }

    #[test]
    fn parabolic_longest() {
        let b3 = sys("B3");
        assert_eq!(b3.longest_element(GeneratorSet::empty()), Element::IDENTITY);
        let w = b3.longest_element(GeneratorSet::from_slice(&[0, 1]));
        assert_eq!(b3.label(w), "1212");
        let w = b3.longest_element(GeneratorSet::full(3));
        assert_eq!(b3.label(w), "121232123");
        let w = b3.longest_element(GeneratorSet::from_slice(&[0, 2]));
        assert_eq!(b3.label(w), "13");
    }

    #[test]
    fn bruhat_small_cases() {
        let b2 = sys("B2");
        let x = b2.parse_label("12").unwrap();
        let y = b2.parse_label("21").unwrap();
        assert!(!b2.bruhat_leq(x, y));
        assert!(!b2.bruhat_leq(y, x));
        for z in b2.elements() {
            assert!(b2.bruhat_leq(Element::IDENTITY, z));
            assert!(b2.bruhat_leq(z, z));
            assert!(b2.bruhat_leq(z, b2.longest()));
        }
    }

    #[test]
    fn bruhat_memo_agrees_with_recursion() {
        let b3 = sys("B3");
        for x in b3.elements() {
            for y in b3.elements() {
                assert_eq!(b3.bruhat_leq(x, y), b3.bruhat_leq_recursive(x, y));
            }
        }
    }

    #[test]
    fn checksum_is_stable() {
        assert_eq!(sys("B3").indexing_checksum(), sys("B3").indexing_checksum());
        assert_ne!(sys("B3").indexing_checksum(), sys("A3").indexing_checksum());
    }
}
