//! Lusztig's a-function: the largest power of `v` in `h_{x,y,z}`.

use rayon::prelude::*;

use super::product::{HeckeProducts, LeftProducts};
use crate::coxeter::Element;

/// How the maximum over `x, y` is searched.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Default)]
pub enum AFunctionMode {
    /// One product `C_{x^-1} C_x` for the least `x` of the cell. Every left
    /// cell has a distinguished involution `d` with `deg h_{x^-1,x,d} = a`
    /// for all `x` in that left cell, and no `z` in the cell exceeds `a`.
    #[default]
    Probe,
    /// All `x, y` in the two-sided cell of `z`.
    CellScan,
    /// All `x, y` in the group; only for small groups.
    FullScan,
}

/// Largest group accepted by [`AFunctionMode::FullScan`].
pub const FULL_SCAN_LIMIT: usize = 400;

/// The a-value of a two-sided cell given by its members.
///
/// Returns `None` when no product reaches the cell (never the case for a
/// genuine two-sided cell) or when a full scan is requested on a group that
/// is too large.
pub fn cell_a_value(hecke: HeckeProducts<'_>, cell: &[Element], mode: AFunctionMode) -> Option<u32> {
    let sys = hecke.system();
    let mut member = vec![false; sys.order()];
    for &z in cell {
        member[z.index()] = true;
    }
    let max_in_cell = |h: &super::product::CExpansion| -> Option<i32> {
        h.iter()
            .filter(|(z, _)| member[z.index()])
            .filter_map(|(_, c)| c.max_exponent())
            .max()
    };
    let best = match mode {
        AFunctionMode::Probe => {
            let x = *cell.iter().min()?;
            max_in_cell(&hecke.product(sys.inverse(x), x))
        }
        AFunctionMode::CellScan => scan(hecke, cell, cell, &max_in_cell),
        AFunctionMode::FullScan => {
            if sys.order() > FULL_SCAN_LIMIT {
                return None;
            }
            let all: Vec<Element> = sys.elements().collect();
            scan(hecke, &all, &all, &max_in_cell)
        }
    }?;
    u32::try_from(best).ok()
}

fn scan(
    hecke: HeckeProducts<'_>,
    lefts: &[Element],
    rights: &[Element],
    max_in_cell: &(dyn Fn(&super::product::CExpansion) -> Option<i32> + Sync),
) -> Option<i32> {
    rights
        .par_iter()
        .filter_map(|&y| {
            let mut cache = LeftProducts::new(hecke, y);
            lefts
                .iter()
                .filter_map(|&x| max_in_cell(cache.product(x)))
                .max()
        })
        .max()
}
