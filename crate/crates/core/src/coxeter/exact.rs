//! Exact arithmetic in the rings `Z[2cos(pi/m)]` needed for the
//! geometric representation of the supported types.
//!
//! For `m` in {2, 3} the ring is `Z`. For `m = 4, 5, 6` it is `Z[w]` with
//! `w = sqrt(2)`, the golden ratio or `sqrt(3)`; in every case `w^2 = p*w + q`
//! for small integers `p`, `q`.

use std::ops::{Add, Mul, Neg};

/// Quadratic integer ring `Z[w]` with `w^2 = p*w + q`.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash)]
pub struct QuadRing {
    p: i64,
    q: i64,
}

impl QuadRing {
    /// Ring containing `2cos(pi/m)` for every bond `m` in `bonds`, when one exists
    /// among the supported quadratic rings.
    pub fn for_bonds(bonds: impl IntoIterator<Item = u32>) -> Option<QuadRing> {
        let mut ring = QuadRing { p: 0, q: 0 };
        let mut seen = None;
        for m in bonds {
            let wanted = match m {
                1..=3 => continue,
                4 => (0, 2),
                5 => (1, 1),
                6 => (0, 3),
                _ => return None,
            };
            match seen {
                None => seen = Some(wanted),
                Some(w) if w == wanted => {}
                Some(_) => return None,
            }
        }
        if let Some((p, q)) = seen {
            ring = QuadRing { p, q };
        }
        Some(ring)
    }

    /// `2cos(pi/m)` as an element of this ring.
    pub fn two_cos(&self, m: u32) -> QuadInt {
        match m {
            2 => QuadInt::new(0, 0),
            3 => QuadInt::new(1, 0),
            4 | 5 | 6 => QuadInt::new(0, 1),
            _ => panic!("2cos(pi/{m}) is not in a supported ring"),
        }
    }

    pub fn mul(&self, a: QuadInt, b: QuadInt) -> QuadInt {
        let bd = a.b * b.b;
        QuadInt {
            a: a.a * b.a + bd * self.q,
            b: a.a * b.b + a.b * b.a + bd * self.p,
        }
    }
}

/// Element `a + b*w` of a [`QuadRing`].
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
}

impl QuadInt {
    pub const ZERO: QuadInt = QuadInt { a: 0, b: 0 };
    pub const ONE: QuadInt = QuadInt { a: 1, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        QuadInt { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, o: QuadInt) -> QuadInt {
        QuadInt::new(self.a + o.a, self.b + o.b)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(-self.a, -self.b)
    }
}

impl Mul<i64> for QuadInt {
    type Output = QuadInt;
    fn mul(self, k: i64) -> QuadInt {
        QuadInt::new(self.a * k, self.b * k)
    }
}

/// Square matrix over a [`QuadRing`], stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadMatrix {
    dim: usize,
    entries: Vec<QuadInt>,
}

impl QuadMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![QuadInt::ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = QuadInt::ONE;
        }
        QuadMatrix { dim, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> QuadInt {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: QuadInt) {
        self.entries[i * self.dim + j] = x;
    }

    pub fn mul(&self, other: &QuadMatrix, ring: &QuadRing) -> QuadMatrix {
        let n = self.dim;
        let mut out = vec![QuadInt::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.entries[k * n + j];
                    if !b.is_zero() {
                        out[i * n + j] = out[i * n + j] + ring.mul(a, b);
                    }
                }
            }
        }
        QuadMatrix { dim: n, entries: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_squares() {
        let ring = QuadRing::for_bonds([5]).unwrap();
        let phi = ring.two_cos(5);
        // phi^2 = phi + 1
        assert_eq!(ring.mul(phi, phi), QuadInt::new(1, 1));
    }

    #[test]
    fn sqrt_two_squares() {
        let ring = QuadRing::for_bonds([3, 4, 2]).unwrap();
        let r = ring.two_cos(4);
        assert_eq!(ring.mul(r, r), QuadInt::new(2, 0));
    }

    #[test]
    fn mixed_rings_rejected() {
        assert!(QuadRing::for_bonds([4, 5]).is_none());
        assert!(QuadRing::for_bonds([7]).is_none());
        assert!(QuadRing::for_bonds([3, 2]).is_some());
    }
}
