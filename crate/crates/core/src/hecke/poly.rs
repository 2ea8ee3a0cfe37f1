//! Integer polynomials in `q` and Laurent polynomials in `v`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Polynomial in `q` with integer coefficients, lowest degree first.
///
/// Trailing zeros are never stored, so the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly(Vec<i64>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![1])
    }

    pub fn from_coeffs(mut c: Vec<i64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.0.get(d).copied().unwrap_or(0)
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    /// `self += k * q^shift * other`.
    pub fn add_scaled_shifted(&mut self, other: &Poly, k: i64, shift: usize) {
        if other.is_zero() || k == 0 {
            return;
        }
        let need = other.0.len() + shift;
        if self.0.len() < need {
            self.0.resize(need, 0);
        }
        for (i, &c) in other.0.iter().enumerate() {
            self.0[i + shift] += k * c;
        }
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.0.iter().enumerate().map(|(d, &c)| (d as i64, c)), "q")
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, i64)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if c == 0 {
            continue;
        }
        let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
        if first {
            if c < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        match (e, abs) {
            (0, a) => write!(f, "{a}")?,
            (1, 1) => write!(f, "{var}")?,
            (1, a) => write!(f, "{a}{var}")?,
            (e, 1) => write!(f, "{var}^{e}")?,
            (e, a) => write!(f, "{a}{var}^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Laurent polynomial in `v` with integer coefficients.
///
/// Stored as the lowest exponent plus a dense coefficient run with no zero at
/// either end; the zero polynomial has an empty run.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: i32) -> Self {
        if c == 0 {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            low: e,
            coeffs: vec![c],
        }
    }

    /// `v + v^-1`.
    pub fn quantum_two() -> Self {
        LaurentPoly {
            low: -1,
            coeffs: vec![1, 0, 1],
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p += &LaurentPoly::monomial(c, e);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exponent(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> i64 {
        let i = e - self.low;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.low + i as i32, c))
    }

    /// Value at `v = 1`.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Bar involution `v -> v^-1`.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (-e, c)))
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
    }

    /// `self += k * v^shift * other`.
    pub fn add_scaled(&mut self, other: &LaurentPoly, k: i64, shift: i32) {
        if other.is_zero() || k == 0 {
            return;
        }
        let olow = other.low + shift;
        if self.is_zero() {
            self.low = olow;
            self.coeffs = other.coeffs.iter().map(|&c| c * k).collect();
            return;
        }
        if olow < self.low {
            let pad = (self.low - olow) as usize;
            self.coeffs.splice(0..0, std::iter::repeat_n(0, pad));
            self.low = olow;
        }
        let start = (olow - self.low) as usize;
        let need = start + other.coeffs.len();
        if self.coeffs.len() < need {
            self.coeffs.resize(need, 0);
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            self.coeffs[start + i] += k * c;
        }
        self.normalize();
    }

    /// `(v + v^-1) * self`.
    pub fn times_quantum_two(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = self.clone();
        out.low += 1;
        out.add_scaled(self, 1, -1);
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, o: &LaurentPoly) {
        self.add_scaled(o, 1, 0);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, o: &LaurentPoly) {
        self.add_scaled(o, -1, 0);
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        r.add_scaled(self, -1, 0);
        r
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut r = LaurentPoly {
            low: self.low + o.low,
            coeffs,
        };
        r.normalize();
        r
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(e, c)| (e as i64, c)), "v")
    }
}
