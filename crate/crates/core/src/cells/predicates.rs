//! Regular, strongly regular and nice two-sided cells.

use serde::Serialize;

use super::CellDecomposition;
use crate::coxeter::{Element, GeneratorSet};

/// Evidence for each clause of the nice condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NiceWitnesses {
    /// A box `(L, R, |L ∩ R|)` of maximal size.
    pub largest_box: (usize, usize, usize),
    /// For every left cell `L`: a right cell meeting it in one element and a
    /// right cell meeting it in two, when they exist.
    pub left_cell_boxes: Vec<(usize, Option<usize>, Option<usize>)>,
    /// A parabolic subset and its longest element lying in the cell.
    pub parabolic: Option<(GeneratorSet, Element)>,
}

impl NiceWitnesses {
    pub fn boxes_at_most_two(&self) -> bool {
        self.largest_box.2 <= 2
    }

    pub fn every_left_cell_has_both_sizes(&self) -> bool {
        self.left_cell_boxes
            .iter()
            .all(|(_, one, two)| one.is_some() && two.is_some())
    }

    pub fn contains_parabolic_longest(&self) -> bool {
        self.parabolic.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellPredicateReport {
    pub cell: usize,
    pub a: u32,
    pub is_regular: bool,
    pub is_strongly_regular: bool,
    pub is_nice: bool,
    /// Two distinct comparable left (or right) cells, when not regular.
    pub comparable_pair: Option<(usize, usize)>,
    pub nice: NiceWitnesses,
}

impl CellDecomposition {
    fn comparable_pair(&self, j: usize) -> Option<(usize, usize)> {
        for (part, ids) in [
            (&self.left, self.left_cells_in(j)),
            (&self.right, self.right_cells_in(j)),
        ] {
            for (i, &c) in ids.iter().enumerate() {
                for &d in &ids[i + 1..] {
                    if part.comparable(c, d) {
                        return Some((c, d));
                    }
                }
            }
        }
        None
    }

    /// No two distinct left cells, and no two distinct right cells, of `j`
    /// are comparable.
    pub fn is_regular(&self, j: usize) -> bool {
        self.comparable_pair(j).is_none()
    }

    /// Regular, and every `L ∩ R` in `j` is a single element.
    pub fn is_strongly_regular(&self, j: usize) -> bool {
        self.is_regular(j) && self.box_sizes(j).iter().all(|&(_, _, k)| k == 1)
    }

    /// `(L, R, |L ∩ R|)` for every left and right cell of `j`.
    pub fn box_sizes(&self, j: usize) -> Vec<(usize, usize, usize)> {
        let lefts = self.left_cells_in(j);
        let rights = self.right_cells_in(j);
        let mut out = Vec::with_capacity(lefts.len() * rights.len());
        for &l in &lefts {
            for &r in &rights {
                let k = self
                    .left
                    .block(l)
                    .iter()
                    .filter(|&&x| self.right.cell_of(x) == r)
                    .count();
                out.push((l, r, k));
            }
        }
        out
    }

    pub fn nice_witnesses(&self, j: usize) -> NiceWitnesses {
        let boxes = self.box_sizes(j);
        let largest_box = *boxes
            .iter()
            .max_by_key(|&&(l, r, k)| (k, std::cmp::Reverse((l, r))))
            .expect("a cell has at least one box");
        let left_cell_boxes = self
            .left_cells_in(j)
            .into_iter()
            .map(|l| {
                let find = |size| {
                    boxes
                        .iter()
                        .find(|&&(l2, _, k)| l2 == l && k == size)
                        .map(|&(_, r, _)| r)
                };
                (l, find(1), find(2))
            })
            .collect();
        let parabolic = self
            .parabolic_longest
            .iter()
            .enumerate()
            .find(|&(_, &w)| self.two_sided.cell_of(w) == j)
            .map(|(m, &w)| (GeneratorSet(m as u32), w));
        NiceWitnesses {
            largest_box,
            left_cell_boxes,
            parabolic,
        }
    }

    pub fn is_nice(&self, j: usize) -> bool {
        let w = self.nice_witnesses(j);
        w.boxes_at_most_two() && w.every_left_cell_has_both_sizes() && w.contains_parabolic_longest()
    }

    pub fn predicate_report(&self, j: usize) -> CellPredicateReport {
        let comparable_pair = self.comparable_pair(j);
        let nice = self.nice_witnesses(j);
        let is_regular = comparable_pair.is_none();
        CellPredicateReport {
            cell: j,
            a: self.a_value(j),
            is_regular,
            is_strongly_regular: is_regular && nice.largest_box.2 == 1,
            is_nice: nice.boxes_at_most_two()
                && nice.every_left_cell_has_both_sizes()
                && nice.contains_parabolic_longest(),
            comparable_pair,
            nice,
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::cells::compute_cells;
    use crate::coxeter::CoxeterSystem;
    use crate::hecke::{HeckeProducts, KLTable};

    #[test]
    fn b3_predicates() {
        let sys = CoxeterSystem::build("B3".parse().unwrap()).unwrap();
        let t = KLTable::build(&sys).unwrap();
        let dec = compute_cells(HeckeProducts::new(&sys, &t));
        let sr: Vec<bool> = (0..6).map(|j| dec.is_strongly_regular(j)).collect();
        assert_eq!(sr, [true, false, true, true, false, true]);
        assert!((0..6).all(|j| dec.is_regular(j)));
        assert!(dec.is_nice(1));
        assert!(dec.is_nice(4));
        let w = dec.nice_witnesses(4);
        let (_, w12) = w.parabolic.unwrap();
        assert_eq!(sys.label(w12), "1212");
    }
}
