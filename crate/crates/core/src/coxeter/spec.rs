use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Family of a finite irreducible Coxeter system.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    F4,
    H3,
    H4,
    I2,
}

/// A finite Coxeter type such as `B3` or `I2(7)`.
///
/// Generators are numbered `1..=rank`. Diagrams follow the usual
/// linear numbering: `B_n` is `1 =4= 2 - 3 - ... - n`, `H_n` puts the
/// 5-bond between 1 and 2, `F4` is `1 - 2 =4= 3 - 4` and `D_n` branches
/// at `n-2` into `n-1` and `n`.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterSpec {
    family: Family,
    rank: usize,
    dihedral_order: Option<u32>,
}

/// Generator labels are single digits.
pub const MAX_RANK: usize = 9;

impl CoxeterSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let spec = CoxeterSpec {
            family,
            rank,
            dihedral_order: None,
        };
        let bad = |why: &str| Err(Error::InvalidSpec(spec.to_string(), why.to_string()));
        match family {
            Family::A if rank >= 1 && rank <= MAX_RANK => Ok(spec),
            Family::B if rank >= 2 && rank <= MAX_RANK => Ok(spec),
            Family::D if rank >= 4 && rank <= MAX_RANK => Ok(spec),
            Family::F4 if rank == 4 => Ok(spec),
            Family::H3 if rank == 3 => Ok(spec),
            Family::H4 if rank == 4 => Ok(spec),
            Family::I2 => bad("use CoxeterSpec::dihedral"),
            _ => bad("rank not supported for this family"),
        }
    }

    pub fn dihedral(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSpec(
                format!("I2({n})"),
                "dihedral order must be at least 3".into(),
            ));
        }
        Ok(CoxeterSpec {
            family: Family::I2,
            rank: 2,
            dihedral_order: Some(n),
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dihedral_order(&self) -> Option<u32> {
        self.dihedral_order
    }

    /// Entry `m(s, t)` of the Coxeter matrix, generators 0-based.
    pub fn bond(&self, i: usize, j: usize) -> u32 {
        assert!(i < self.rank && j < self.rank, "generator out of range");
        if i == j {
            return 1;
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let n = self.rank;
        match self.family {
            Family::I2 => self.dihedral_order.unwrap_or(2),
            Family::A => linear(i, j, 3),
            Family::B => {
                if i == 0 && j == 1 {
                    4
                } else {
                    linear(i, j, 3)
                }
            }
            Family::D => {
                if j == n - 1 {
                    if i == n - 3 {
                        3
                    } else {
                        2
                    }
                } else {
                    linear(i, j, 3)
                }
            }
            Family::F4 => {
                if i == 1 && j == 2 {
                    4
                } else {
                    linear(i, j, 3)
                }
            }
            Family::H3 | Family::H4 => {
                if i == 0 && j == 1 {
                    5
                } else {
                    linear(i, j, 3)
                }
            }
        }
    }

    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.bond(i, j)).collect())
            .collect()
    }

    /// Degrees of the basic invariants.
    pub fn degrees(&self) -> Vec<u64> {
        let n = self.rank as u64;
        match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B => (1..=n).map(|i| 2 * i).collect(),
            Family::D => {
                let mut d: Vec<u64> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            Family::F4 => vec![2, 6, 8, 12],
            Family::H3 => vec![2, 6, 10],
            Family::H4 => vec![2, 12, 20, 30],
            Family::I2 => vec![2, self.dihedral_order.unwrap_or(2) as u64],
        }
    }

    /// Classical group order, the product of the degrees.
    pub fn order(&self) -> u64 {
        self.degrees().iter().product()
    }

    /// Number of reflections, which is also the length of the longest element.
    pub fn num_reflections(&self) -> u64 {
        self.degrees().iter().map(|d| d - 1).sum()
    }

    /// Coefficients of the Poincaré polynomial `prod (1 + q + ... + q^(d-1))`.
    pub fn poincare_polynomial(&self) -> Vec<u64> {
        let mut poly = vec![1u64];
        for d in self.degrees() {
            let mut next = vec![0u64; poly.len() + d as usize - 1];
            for (i, c) in poly.iter().enumerate() {
                for k in 0..d as usize {
                    next[i + k] += c;
                }
            }
            poly = next;
        }
        poly
    }
}

fn linear(i: usize, j: usize, m: u32) -> u32 {
    if i + 1 == j {
        m
    } else {
        2
    }
}

impl fmt::Display for CoxeterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "A{}", self.rank),
            Family::B => write!(f, "B{}", self.rank),
            Family::D => write!(f, "D{}", self.rank),
            Family::F4 => write!(f, "F4"),
            Family::H3 => write!(f, "H3"),
            Family::H4 => write!(f, "H4"),
            Family::I2 => write!(f, "I2({})", self.dihedral_order.unwrap_or(0)),
        }
    }
}

impl FromStr for CoxeterSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let invalid = |why: &str| Error::InvalidSpec(s.to_string(), why.to_string());
        let s = s.trim();
        match s {
            "F4" => return CoxeterSpec::new(Family::F4, 4),
            "H3" => return CoxeterSpec::new(Family::H3, 3),
            "H4" => return CoxeterSpec::new(Family::H4, 4),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("I2(") {
            let n = rest
                .strip_suffix(')')
                .ok_or_else(|| invalid("expected `I2(<n>)`"))?;
            let n: u32 = n.parse().map_err(|_| invalid("bad dihedral order"))?;
            return CoxeterSpec::dihedral(n);
        }
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('D') => Family::D,
            _ => return Err(invalid("unknown family")),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| invalid("bad rank"))?;
        CoxeterSpec::new(family, rank)
    }
}
