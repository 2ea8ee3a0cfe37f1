//! The small quotient ring of a dihedral group: `θ_e` plus `θ_w` for
//! `w ∉ {e, w0}`, with `θ_{w0}` set to zero.

use super::ring::BasedRing;
use crate::coxeter::{CoxeterSpec, CoxeterSystem, Element};
use crate::error::Result;
use crate::hecke::{HeckeProducts, KLTable};

fn basis(sys: &CoxeterSystem) -> Vec<Element> {
    let w0 = sys.longest();
    sys.elements().filter(|&w| w != w0).collect()
}

fn ring_from_tensor(sys: &CoxeterSystem, basis: &[Element], tensor: &[Vec<Vec<i64>>]) -> Result<BasedRing> {
    let pos = |x: Element| basis.iter().position(|&y| y == x).expect("basis element");
    let labels = basis.iter().map(|&x| sys.label(x)).collect();
    let star = basis.iter().map(|&x| pos(sys.inverse(x))).collect();
    BasedRing::from_fn(labels, |i, j, k| tensor[i][j][k], Some(star))
}

/// Structure constants from the left action of the two generators:
///
/// `θ_s θ_w` is `θ_s` for `w = e`, `θ_{st}` for `w = t`, `θ_{t s w0}` for
/// `w = s w0`, `2 θ_w` when `sw < w`, and `θ_{sw} + θ_{tw}` otherwise;
/// symmetrically for `t`. Products `θ_x θ_y` follow by induction on the
/// length of `x`: for `x = a x'` with `x'` starting with `b != a`,
/// `θ_x = θ_a θ_{x'} - θ_{b x'}` (the last term only when `l(x') >= 2`).
pub fn dihedral_ring_from_formulas(n: u32) -> Result<BasedRing> {
    let sys = CoxeterSystem::build(CoxeterSpec::dihedral(n)?)?;
    let basis = basis(&sys);
    let w0 = sys.longest();
    let size = basis.len();
    let pos = |x: Element| basis.iter().position(|&y| y == x);
    // left[x][z][y]: coefficient of θ_z in θ_x θ_y
    let mut left: Vec<Vec<Vec<i64>>> = vec![vec![vec![0; size]; size]; size];
    left[0] = (0..size).map(|z| (0..size).map(|y| i64::from(y == z)).collect()).collect();
    for a in 0..2 {
        let b = 1 - a;
        let xa = pos(sys.generator(a)).expect("generator");
        for (yi, &w) in basis.iter().enumerate() {
            let mut add = |z: Element, c: i64| {
                if let Some(zi) = pos(z) {
                    left[xa][zi][yi] += c;
                }
            };
            let aw = sys.left_mul(a, w);
            if w == Element::IDENTITY {
                add(sys.generator(a), 1);
            } else if w == sys.generator(b) {
                add(aw, 1);
            } else if w == sys.left_mul(a, w0) {
                add(sys.left_mul(b, sys.left_mul(a, w0)), 1);
            } else if sys.length(aw) < sys.length(w) {
                add(w, 2);
            } else {
                add(aw, 1);
                add(sys.left_mul(b, w), 1);
            }
        }
    }
    // remaining basis elements by increasing length (basis is in ShortLex order)
    for xi in 1..size {
        let x = basis[xi];
        if sys.length(x) < 2 {
            continue;
        }
        let a = sys.reduced_word(x)[0] as usize;
        let b = 1 - a;
        let rest = sys.left_mul(a, x);
        let ai = pos(sys.generator(a)).expect("generator");
        let ri = pos(rest).expect("shorter element");
        let mut m = vec![vec![0i64; size]; size];
        for z in 0..size {
            for y in 0..size {
                m[z][y] = (0..size).map(|t| left[ai][z][t] * left[ri][t][y]).sum();
            }
        }
        if sys.length(rest) >= 2 {
            let ci = pos(sys.left_mul(b, rest)).expect("shorter element");
            for z in 0..size {
                for y in 0..size {
                    m[z][y] -= left[ci][z][y];
                }
            }
        }
        left[xi] = m;
    }
    let tensor: Vec<Vec<Vec<i64>>> = (0..size)
        .map(|i| (0..size).map(|j| (0..size).map(|k| left[i][k][j]).collect()).collect())
        .collect();
    ring_from_tensor(&sys, &basis, &tensor)
}

/// Structure constants `h_{x,y,z}(1)` from the Kazhdan–Lusztig basis, with
/// the `C_{w0}` terms dropped.
pub fn dihedral_ring_from_hecke(n: u32) -> Result<BasedRing> {
    let sys = CoxeterSystem::build(CoxeterSpec::dihedral(n)?)?;
    let table = KLTable::build(&sys)?;
    let hecke = HeckeProducts::new(&sys, &table);
    let basis = basis(&sys);
    let size = basis.len();
    let mut tensor = vec![vec![vec![0i64; size]; size]; size];
    for (i, &x) in basis.iter().enumerate() {
        for (j, &y) in basis.iter().enumerate() {
            for (z, c) in hecke.product(x, y).at_one() {
                if let Some(k) = basis.iter().position(|&w| w == z) {
                    tensor[i][j][k] = c;
                }
            }
        }
    }
    ring_from_tensor(&sys, &basis, &tensor)
}

/// The small quotient ring of `I2(n)`: from the generator formulas for odd
/// `n`, from the Hecke algebra for even `n`.
pub fn dihedral_small_quotient_ring(n: u32) -> Result<BasedRing> {
    if n % 2 == 1 {
        dihedral_ring_from_formulas(n)
    } else {
        dihedral_ring_from_hecke(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn routes_agree() {
        for n in 3..=12 {
            assert_eq!(
                dihedral_ring_from_formulas(n).unwrap(),
                dihedral_ring_from_hecke(n).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn five_examples() {
        let r = dihedral_small_quotient_ring(5).unwrap();
        let idx = |l: &str| r.labels().iter().position(|x| x == l).unwrap();
        // b_1 b_2 = b_12
        assert_eq!(r.product(idx("1"), idx("2")), [(idx("12"), 1)]);
        // s w0 = 2121 for s = 1; t s w0 = 121
        assert_eq!(r.product(idx("1"), idx("2121")), [(idx("121"), 1)]);
        assert_eq!(r.product(idx("1"), idx("1")), [(idx("1"), 2)]);
        assert_eq!(r.rank(), 9);
    }
}
