//! Based rings cut out of the Hecke algebra at `v = 1`.
//!
//! For a two-sided cell `J`, the span of `C_e` and `{C_w : w in J}` with
//! products truncated to `J` is a ring: it is the quotient of `Z C_e + I_J`
//! by the ideal of cells strictly above `J`. Subsets of `J` closed under the
//! truncated product (H-cells) give subrings.

use serde::Serialize;

use super::ring::BasedRing;
use crate::cells::CellDecomposition;
use crate::coxeter::{Element, GeneratorSet};
use crate::error::{Error, Result};
use crate::hecke::HeckeProducts;

/// The ring on `{e} ∪ basis` with products truncated to the two-sided cell
/// of `basis`. Every element of `basis` must lie in one two-sided cell.
pub fn truncated_ring(hecke: HeckeProducts<'_>, dec: &CellDecomposition, basis: &[Element]) -> Result<BasedRing> {
    let sys = hecke.system();
    let j_part = dec.two_sided_cells();
    let mut elems: Vec<Element> = basis.to_vec();
    elems.sort_unstable();
    elems.dedup();
    if elems.first() == Some(&Element::IDENTITY) {
        elems.remove(0);
    }
    let j = match elems.first() {
        Some(&x) => j_part.cell_of(x),
        None => return Ok(super::ring::trivial_ring_labelled("e")),
    };
    if elems.iter().any(|&x| j_part.cell_of(x) != j) {
        return Err(Error::NotClosed("basis spans several two-sided cells".into()));
    }
    let mut all = vec![Element::IDENTITY];
    all.extend_from_slice(&elems);
    let pos = |z: Element| all.iter().position(|&w| w == z);
    let n = all.len();
    let mut tensor = vec![vec![vec![0i64; n]; n]; n];
    for (i, &x) in all.iter().enumerate() {
        for (k, &y) in all.iter().enumerate() {
            if i == 0 || k == 0 {
                let other = if i == 0 { k } else { i };
                tensor[i][k][other] = 1;
                continue;
            }
            for (z, c) in hecke.product(x, y).at_one() {
                let jz = j_part.cell_of(z);
                if jz == j {
                    match pos(z) {
                        Some(m) => tensor[i][k][m] = c,
                        None => {
                            return Err(Error::NotClosed(format!(
                                "C_{} C_{} has {} in the cell but outside the basis",
                                sys.label(x),
                                sys.label(y),
                                sys.label(z)
                            )))
                        }
                    }
                } else if !j_part.leq(j, jz) {
                    return Err(Error::NotClosed(format!(
                        "C_{} C_{} reaches a cell below the basis",
                        sys.label(x),
                        sys.label(y)
                    )));
                }
            }
        }
    }
    let labels = all.iter().map(|&x| sys.label(x)).collect();
    let star = all
        .iter()
        .map(|&x| pos(sys.inverse(x)))
        .collect::<Option<Vec<usize>>>();
    BasedRing::from_fn(labels, |i, k, m| tensor[i][k][m], star)
}

/// The ring on `{e} ∪ J` for the two-sided cell `j`.
pub fn two_sided_quotient_ring(hecke: HeckeProducts<'_>, dec: &CellDecomposition, j: usize) -> Result<BasedRing> {
    truncated_ring(hecke, dec, dec.two_sided_cells().block(j))
}

/// The small quotient: `{e}` together with the two-sided cell of the simple
/// reflections.
pub fn small_quotient_ring(hecke: HeckeProducts<'_>, dec: &CellDecomposition) -> Result<BasedRing> {
    let sys = hecke.system();
    let j = dec.two_sided_cells().cell_of(sys.generator(0));
    two_sided_quotient_ring(hecke, dec, j)
}

/// The ring on `{e} ∪ H` for the H-cell `H = L ∩ L^{-1}` of the left cell
/// `l`. Fails with [`Error::NotClosed`] if a product of elements of `H` has
/// support in `J \ H`.
pub fn cell_quotient_ring(hecke: HeckeProducts<'_>, dec: &CellDecomposition, l: usize) -> Result<BasedRing> {
    truncated_ring(hecke, dec, &dec.h_cell(l))
}

/// An H-cell ring rescaled at a parabolic longest element.
///
/// If `H` contains `w'_0`, the longest element of the parabolic subgroup
/// `W'`, then `b_{w'_0}^2 = c b_{w'_0}` with `c = |W'|` and `b_{w'_0}`
/// acts as `c` on both sides of every `b_w`, `w in H`. Setting
/// `x_w = b_w / c` gives a based ring on `H` with unit `x_{w'_0}`; this is
/// the decategorified endomorphism ring of the object attached to `W'`.
#[derive(Debug, Clone, Serialize)]
pub struct ParabolicReduction {
    pub ring: BasedRing,
    /// Elements of `H` in ring basis order (the first is `w'_0`).
    pub elements: Vec<Element>,
    pub parabolic: GeneratorSet,
    pub scale: u64,
}

pub fn parabolic_reduction(hecke: HeckeProducts<'_>, dec: &CellDecomposition, l: usize) -> Result<ParabolicReduction> {
    let sys = hecke.system();
    let h = dec.h_cell(l);
    let (mask, w0p) = dec
        .parabolic_longest()
        .iter()
        .enumerate()
        .find(|(_, w)| h.contains(w))
        .map(|(m, &w)| (GeneratorSet(m as u32), w))
        .ok_or_else(|| Error::NotClosed("the H-cell contains no parabolic longest element".into()))?;
    let raw = truncated_ring(hecke, dec, &h)?;
    // raw basis: e, then h in index order
    let mut elements = vec![w0p];
    elements.extend(h.iter().copied().filter(|&x| x != w0p));
    let raw_pos = |x: Element| 1 + h.iter().position(|&y| y == x).expect("member of H");
    let c = raw.n(raw_pos(w0p), raw_pos(w0p), raw_pos(w0p));
    if c == 0 {
        return Err(Error::InvalidRing("parabolic element squares to zero".into()));
    }
    let n = elements.len();
    let mut tensor = vec![vec![vec![0i64; n]; n]; n];
    for (i, &u) in elements.iter().enumerate() {
        for (k, &w) in elements.iter().enumerate() {
            for (m, &z) in elements.iter().enumerate() {
                let v = raw.n(raw_pos(u), raw_pos(w), raw_pos(z));
                if v % c != 0 {
                    return Err(Error::InvalidRing(format!(
                        "structure constant {v} of {} {} -> {} not divisible by {c}",
                        sys.label(u),
                        sys.label(w),
                        sys.label(z)
                    )));
                }
                tensor[i][k][m] = (v / c) as i64;
            }
        }
    }
    let labels = elements.iter().map(|&x| format!("x{}", sys.label(x))).collect();
    let star = elements
        .iter()
        .map(|&x| elements.iter().position(|&y| y == sys.inverse(x)))
        .collect::<Option<Vec<usize>>>();
    let ring = BasedRing::from_fn(labels, |i, k, m| tensor[i][k][m], star)?;
    Ok(ParabolicReduction {
        ring,
        elements,
        parabolic: mask,
        scale: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::compute_cells;
    use crate::coxeter::CoxeterSystem;
    use crate::hecke::KLTable;

    #[test]
    fn b3_simple_reflection_ring() {
        let sys = CoxeterSystem::build("B3".parse().unwrap()).unwrap();
        let t = KLTable::build(&sys).unwrap();
        let h = HeckeProducts::new(&sys, &t);
        let dec = compute_cells(h);
        let one = sys.parse_label("1").unwrap();
        let l = dec.cell_of(one).0;
        let ring = cell_quotient_ring(h, &dec, l).unwrap();
        assert_eq!(ring.labels(), ["e", "1", "121"]);
        // b1^2 = 2 b1, b1 b2 = b2 b1 = 2 b2, b2^2 = 2 b1
        assert_eq!(ring.product(1, 1), [(1, 2)]);
        assert_eq!(ring.product(1, 2), [(2, 2)]);
        assert_eq!(ring.product(2, 1), [(2, 2)]);
        assert_eq!(ring.product(2, 2), [(1, 2)]);

        let red = parabolic_reduction(h, &dec, l).unwrap();
        assert_eq!(red.scale, 2);
        assert_eq!(red.ring.labels(), ["x1", "x121"]);
        assert_eq!(red.ring.product(1, 1), [(0, 1)]);
    }

    #[test]
    fn singleton_h_cell() {
        let sys = CoxeterSystem::build("B3".parse().unwrap()).unwrap();
        let t = KLTable::build(&sys).unwrap();
        let h = HeckeProducts::new(&sys, &t);
        let dec = compute_cells(h);
        let w0 = sys.longest();
        let ring = cell_quotient_ring(h, &dec, dec.cell_of(w0).0).unwrap();
        assert_eq!(ring.rank(), 2);
        assert_eq!(ring.product(1, 1), [(1, 48)]);
        let unit = cell_quotient_ring(h, &dec, dec.cell_of(Element::IDENTITY).0).unwrap();
        assert_eq!(unit.rank(), 1);
    }
}
