use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::linalg::spectral_radius;
use crate::cells::Partition;
use crate::error::{Error, Result};

/// A ring with a fixed basis `b_0 = 1, b_1, ..., b_{n-1}` and nonnegative
/// integer structure constants `b_i b_j = sum_k N[i][j][k] b_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedRing {
    labels: Vec<String>,
    // N[i][j][k] at (i * n + j) * n + k
    structure: Vec<u64>,
    // anti-involution on the basis, identity when none is known
    star: Vec<usize>,
}

impl Serialize for BasedRing {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BasedRing", 3)?;
        st.serialize_field("labels", &self.labels)?;
        st.serialize_field("tensor", &self.tensor())?;
        st.serialize_field("star", &self.star)?;
        st.end()
    }
}

impl BasedRing {
    /// Builds and validates a ring from its structure tensor.
    pub fn new(labels: Vec<String>, tensor: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        let n = labels.len();
        if tensor.len() != n || tensor.iter().any(|t| t.len() != n || t.iter().any(|u| u.len() != n)) {
            return Err(Error::InvalidRing("tensor shape does not match the basis".into()));
        }
        Self::from_fn(labels, |i, j, k| tensor[i][j][k], None)
    }

    /// Builds and validates a ring; `star` is an optional anti-involution
    /// of the basis (`N[i][j][k] = N[j*][i*][k*]`).
    pub fn from_fn(
        labels: Vec<String>,
        mut f: impl FnMut(usize, usize, usize) -> i64,
        star: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidRing("empty basis".into()));
        }
        let mut structure = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = f(i, j, k);
                    if c < 0 {
                        return Err(Error::InvalidRing(format!(
                            "negative structure constant N[{i}][{j}][{k}] = {c}"
                        )));
                    }
                    structure.push(c as u64);
                }
            }
        }
        let ring = BasedRing {
            labels,
            structure,
            star: star.unwrap_or_else(|| (0..n).collect()),
        };
        ring.validate()?;
        Ok(ring)
    }

    fn validate(&self) -> Result<()> {
        let n = self.rank();
        for j in 0..n {
            for k in 0..n {
                let d = u64::from(j == k);
                if self.n(0, j, k) != d || self.n(j, 0, k) != d {
                    return Err(Error::InvalidRing(format!("b_0 is not a unit (at {j}, {k})")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let lhs: u64 = (0..n).map(|m| self.n(i, j, m) * self.n(m, k, l)).sum();
                        let rhs: u64 = (0..n).map(|m| self.n(j, k, m) * self.n(i, m, l)).sum();
                        if lhs != rhs {
                            return Err(Error::InvalidRing(format!(
                                "not associative at ({i}, {j}, {k}; {l})"
                            )));
                        }
                    }
                }
            }
        }
        let s = &self.star;
        if s.len() != n || (0..n).any(|i| s[i] >= n || s[s[i]] != i) || s[0] != 0 {
            return Err(Error::InvalidRing("star is not an involution fixing 1".into()));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.n(i, j, k) != self.n(s[j], s[i], s[k]) {
                        return Err(Error::InvalidRing(format!(
                            "star is not an anti-automorphism at ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of basis elements.
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `N[i][j][k]`.
    #[inline]
    pub fn n(&self, i: usize, j: usize, k: usize) -> u64 {
        let r = self.rank();
        self.structure[(i * r + j) * r + k]
    }

    /// The structure tensor as nested vectors.
    pub fn tensor(&self) -> Vec<Vec<Vec<u64>>> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| (0..r).map(|k| self.n(i, j, k)).collect()).collect())
            .collect()
    }

    pub fn star(&self) -> &[usize] {
        &self.star
    }

    /// Nonzero terms of `b_i b_j`.
    pub fn product(&self, i: usize, j: usize) -> Vec<(usize, u64)> {
        (0..self.rank())
            .map(|k| (k, self.n(i, j, k)))
            .filter(|&(_, c)| c != 0)
            .collect()
    }

    /// Matrix of left multiplication by `b_i`: entry `[k][j] = N[i][j][k]`.
    pub fn left_matrix(&self, i: usize) -> Vec<Vec<u64>> {
        let r = self.rank();
        (0..r).map(|k| (0..r).map(|j| self.n(i, j, k)).collect()).collect()
    }

    /// Spectral radius of the left regular action of `sum_i b_i`.
    pub fn special_value(&self) -> f64 {
        let r = self.rank();
        let mut m = vec![vec![0.0; r]; r];
        for i in 0..r {
            for (k, row) in m.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    *e += self.n(i, j, k) as f64;
                }
            }
        }
        spectral_radius(&m)
    }

    /// Spectral radius of left multiplication by `b_i`.
    pub fn element_special_value(&self, i: usize) -> f64 {
        let m: Vec<Vec<f64>> = self
            .left_matrix(i)
            .into_iter()
            .map(|row| row.into_iter().map(|c| c as f64).collect())
            .collect();
        spectral_radius(&m)
    }

    /// Left, right and two-sided cells of the basis. `b_i <= b_j` when `b_j`
    /// occurs in `b_s b_i` (left), `b_i b_s` (right), or either (two-sided).
    pub fn basis_cells(&self) -> BasisCells {
        let r = self.rank();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for s in 0..r {
            for i in 0..r {
                for k in 0..r {
                    if self.n(s, i, k) != 0 {
                        left.push((i as u32, k as u32));
                    }
                    if self.n(i, s, k) != 0 {
                        right.push((i as u32, k as u32));
                    }
                }
            }
        }
        let mut both = left.clone();
        both.extend_from_slice(&right);
        BasisCells {
            left: Partition::from_edges(r, &left),
            right: Partition::from_edges(r, &right),
            two_sided: Partition::from_edges(r, &both),
        }
    }
}

/// Cells of a based ring; partitions list basis indices as
/// [`Element`](crate::coxeter::Element)s.
#[derive(Debug, Clone)]
pub struct BasisCells {
    pub left: Partition,
    pub right: Partition,
    pub two_sided: Partition,
}

impl BasisCells {
    /// Basis indices of the two-sided cell `c`.
    pub fn two_sided_block(&self, c: usize) -> Vec<usize> {
        self.two_sided.block(c).iter().map(|x| x.index()).collect()
    }

    /// Two-sided cells with nothing strictly above them.
    pub fn top_cells(&self) -> Vec<usize> {
        (0..self.two_sided.len())
            .filter(|&c| self.two_sided.successors(c).is_empty())
            .collect()
    }
}

/// `{1, x}` with `x^2 = 1 + a x`.
pub fn quadratic_ring(a: u64) -> BasedRing {
    let a = a as i64;
    BasedRing::from_fn(
        vec!["1".into(), "x".into()],
        |i, j, k| match (i, j, k) {
            (0, j, k) => i64::from(j == k),
            (i, 0, k) => i64::from(i == k),
            (_, _, 0) => 1,
            _ => a,
        },
        None,
    )
    .expect("quadratic ring is valid")
}

/// The ring `Z` with basis `{1}`.
pub fn trivial_ring() -> BasedRing {
    trivial_ring_labelled("1")
}

pub(crate) fn trivial_ring_labelled(unit: &str) -> BasedRing {
    BasedRing::from_fn(vec![unit.into()], |_, _, _| 1, None).expect("Z is a based ring")
}

/// Group ring of `Z/m` with basis the group elements.
pub fn cyclic_group_ring(m: usize) -> BasedRing {
    BasedRing::from_fn(
        (0..m).map(|i| if i == 0 { "1".into() } else { format!("g{i}") }).collect(),
        |i, j, k| i64::from((i + j) % m == k),
        Some((0..m).map(|i| (m - i) % m).collect()),
    )
    .expect("group rings are based")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_rings_have_one_cell() {
        for a in 0..4 {
            let r = quadratic_ring(a);
            let c = r.basis_cells();
            assert_eq!(c.two_sided.len(), 1);
            assert_eq!(c.left.len(), 1);
            let expect = (a as f64 + ((a * a + 4) as f64).sqrt()) / 2.0;
            assert!((r.element_special_value(1) - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn group_ring_single_cell() {
        let r = cyclic_group_ring(2);
        assert_eq!(r.basis_cells().two_sided.len(), 1);
        assert!((r.special_value() - 2.0).abs() < 1e-9);
        assert!((trivial_ring().special_value() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_associative() {
        // x^2 = 1 + x, but with x * 1 = 0
        let bad = BasedRing::from_fn(
            vec!["1".into(), "x".into()],
            |i, j, k| i64::from(i == 0 && j == k || (i, j) == (1, 1)),
            None,
        );
        assert!(bad.is_err());
        let neg = BasedRing::new(
            vec!["1".into()],
            vec![vec![vec![-1]]],
        );
        assert!(neg.is_err());
    }
}
