//! Kazhdan–Lusztig cells, the two-sided order, cell predicates and reports.
//!
//! Orientation: `x <=_L y` when `C_y` occurs in `h C_x` for some `h`. The
//! identity is the least element and `w0` the greatest; a-values increase
//! along the order.

mod predicates;
mod report;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rayon::prelude::*;

use crate::bits::BitSet;
use crate::coxeter::{CoxeterSystem, Element, Side};
use crate::hecke::{cell_a_value, AFunctionMode, HeckeProducts};

pub use predicates::{CellPredicateReport, NiceWitnesses};
pub use report::{cell_report, CellJson, ReportFormat, ReportJson};

/// Which preorder a partition belongs to.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum CellKind {
    Left,
    Right,
    TwoSided,
}

/// Cells of one preorder: blocks of elements and the induced partial order.
#[derive(Debug, Clone)]
pub struct Partition {
    blocks: Vec<Vec<Element>>,
    cell_of: Vec<u32>,
    // above[c] holds every cell d with c <= d, including c
    above: Vec<BitSet>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<Element>] {
        &self.blocks
    }

    /// Members of cell `c` in index order.
    pub fn block(&self, c: usize) -> &[Element] {
        &self.blocks[c]
    }

    pub fn cell_of(&self, x: Element) -> usize {
        self.cell_of[x.index()] as usize
    }

    /// `c <= d` in the cell order.
    pub fn leq(&self, c: usize, d: usize) -> bool {
        self.above[c].contains(d)
    }

    pub fn comparable(&self, c: usize, d: usize) -> bool {
        self.leq(c, d) || self.leq(d, c)
    }

    /// Cells strictly above `c` with nothing in between.
    pub fn successors(&self, c: usize) -> Vec<usize> {
        let strictly: Vec<usize> = self.above[c].iter().filter(|&d| d != c).collect();
        strictly
            .iter()
            .copied()
            .filter(|&d| !strictly.iter().any(|&e| e != d && self.leq(e, d)))
            .collect()
    }

    pub(crate) fn from_edges(n: usize, edges: &[(u32, u32)]) -> Partition {
        let mut g = DiGraph::<(), ()>::with_capacity(n, edges.len());
        for _ in 0..n {
            g.add_node(());
        }
        g.extend_with_edges(edges.iter().copied());
        // tarjan_scc yields components sinks first
        let sccs = tarjan_scc(&g);
        let mut comp = vec![0u32; n];
        for (c, scc) in sccs.iter().enumerate() {
            for v in scc {
                comp[v.index()] = c as u32;
            }
        }
        let k = sccs.len();
        let mut out_edges: Vec<Vec<u32>> = vec![Vec::new(); k];
        for &(a, b) in edges {
            let (ca, cb) = (comp[a as usize], comp[b as usize]);
            if ca != cb {
                out_edges[ca as usize].push(cb);
            }
        }
        let mut above: Vec<BitSet> = Vec::with_capacity(k);
        for c in 0..k {
            let mut set = BitSet::new(k);
            set.insert(c);
            out_edges[c].sort_unstable();
            out_edges[c].dedup();
            for &d in &out_edges[c] {
                debug_assert!((d as usize) < c);
                set.union_with(&above[d as usize]);
            }
            above.push(set);
        }
        let blocks: Vec<Vec<Element>> = sccs
            .iter()
            .map(|scc| {
                let mut b: Vec<Element> = scc.iter().map(|v| Element(v.index() as u32)).collect();
                b.sort_unstable();
                b
            })
            .collect();
        let part = Partition {
            blocks,
            cell_of: comp,
            above,
        };
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&c| part.blocks[c][0]);
        part.reorder(&order)
    }

    /// Renumbers cells so that new cell `i` is old cell `order[i]`.
    fn reorder(self, order: &[usize]) -> Partition {
        let k = order.len();
        let mut new_id = vec![0usize; k];
        for (i, &c) in order.iter().enumerate() {
            new_id[c] = i;
        }
        let blocks = order.iter().map(|&c| self.blocks[c].clone()).collect();
        let cell_of = self.cell_of.iter().map(|&c| new_id[c as usize] as u32).collect();
        let above = order
            .iter()
            .map(|&c| {
                let mut set = BitSet::new(k);
                for d in self.above[c].iter() {
                    set.insert(new_id[d]);
                }
                set
            })
            .collect();
        Partition {
            blocks,
            cell_of,
            above,
        }
    }
}

/// Options for [`compute_cells_with`].
#[derive(Debug, Clone, Default)]
pub struct CellOptions {
    pub a_mode: AFunctionMode,
    /// Order in which generators are tried when emitting preorder edges;
    /// defaults to `0..rank`. The result does not depend on it.
    pub generator_order: Option<Vec<usize>>,
}

/// Left, right and two-sided cells of a finite Coxeter group.
#[derive(Debug, Clone)]
pub struct CellDecomposition {
    left: Partition,
    right: Partition,
    two_sided: Partition,
    a_values: Vec<u32>,
    inverses: Vec<Element>,
    parabolic_longest: Vec<Element>,
}

/// Cells with the default options.
pub fn compute_cells(hecke: HeckeProducts<'_>) -> CellDecomposition {
    compute_cells_with(hecke, &CellOptions::default())
}

/// Cells from the generator-product preorder edges, with a-values.
pub fn compute_cells_with(hecke: HeckeProducts<'_>, opts: &CellOptions) -> CellDecomposition {
    let sys = hecke.system();
    let table = hecke.table();
    let gens: Vec<usize> = opts
        .generator_order
        .clone()
        .unwrap_or_else(|| (0..sys.rank()).collect());
    let n = sys.order();

    let edges_for = |side: Side| -> Vec<(u32, u32)> {
        let elems: Vec<Element> = sys.elements().collect();
        elems
            .par_iter()
            .flat_map_iter(|&y| {
                let mut out = Vec::new();
                for &s in &gens {
                    // support of C_s C_y (left) or C_y C_s (right)
                    let (sy, up, mus) = match side {
                        Side::Left => {
                            let sy = sys.left_mul(s, y);
                            (sy, sys.length(sy) > sys.length(y), table.mu_left(y, s))
                        }
                        Side::Right => {
                            let ys = sys.right_mul(y, s);
                            (ys, sys.length(ys) > sys.length(y), table.mu_right(y, s))
                        }
                    };
                    if up {
                        out.push((y.0, sy.0));
                        out.extend(mus.iter().map(|&(z, _)| (y.0, z)));
                    }
                }
                out
            })
            .collect()
    };
    let left_edges = edges_for(Side::Left);
    let right_edges = edges_for(Side::Right);
    let left = Partition::from_edges(n, &left_edges);
    let right = Partition::from_edges(n, &right_edges);
    let mut both = left_edges;
    both.extend(right_edges);
    let two_sided = Partition::from_edges(n, &both);

    let a: Vec<u32> = two_sided
        .blocks()
        .par_iter()
        .map(|cell| cell_a_value(hecke, cell, opts.a_mode).expect("a-value of a cell"))
        .collect();
    let mut order: Vec<usize> = (0..two_sided.len()).collect();
    order.sort_by_key(|&c| (a[c], two_sided.block(c)[0]));
    let a_values = order.iter().map(|&c| a[c]).collect();
    let two_sided = two_sided.reorder(&order);

    let parabolic_longest = (0u32..1 << sys.rank())
        .map(|m| sys.longest_element(crate::coxeter::GeneratorSet(m)))
        .collect();
    CellDecomposition {
        left,
        right,
        two_sided,
        a_values,
        inverses: sys.elements().map(|x| sys.inverse(x)).collect(),
        parabolic_longest,
    }
}

impl CellDecomposition {
    pub fn partition(&self, kind: CellKind) -> &Partition {
        match kind {
            CellKind::Left => &self.left,
            CellKind::Right => &self.right,
            CellKind::TwoSided => &self.two_sided,
        }
    }

    pub fn left_cells(&self) -> &Partition {
        &self.left
    }

    pub fn right_cells(&self) -> &Partition {
        &self.right
    }

    pub fn two_sided_cells(&self) -> &Partition {
        &self.two_sided
    }

    /// `(L-id, R-id, J-id)` of `x`.
    pub fn cell_of(&self, x: Element) -> (usize, usize, usize) {
        (
            self.left.cell_of(x),
            self.right.cell_of(x),
            self.two_sided.cell_of(x),
        )
    }

    /// a-value of the two-sided cell `j`.
    pub fn a_value(&self, j: usize) -> u32 {
        self.a_values[j]
    }

    pub fn a_values(&self) -> &[u32] {
        &self.a_values
    }

    /// Lusztig's a-function at `z`.
    pub fn a_function(&self, z: Element) -> u32 {
        self.a_values[self.two_sided.cell_of(z)]
    }

    /// Left cells contained in the two-sided cell `j`, in id order.
    pub fn left_cells_in(&self, j: usize) -> Vec<usize> {
        self.cells_in(&self.left, j)
    }

    /// Right cells contained in the two-sided cell `j`, in id order.
    pub fn right_cells_in(&self, j: usize) -> Vec<usize> {
        self.cells_in(&self.right, j)
    }

    fn cells_in(&self, part: &Partition, j: usize) -> Vec<usize> {
        let mut ids: Vec<usize> = self.two_sided.block(j).iter().map(|&x| part.cell_of(x)).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// `L ∩ R` in index order.
    pub fn intersection(&self, l: usize, r: usize) -> Vec<Element> {
        self.left
            .block(l)
            .iter()
            .copied()
            .filter(|&x| self.right.cell_of(x) == r)
            .collect()
    }

    /// The H-cell `L ∩ L^{-1}` of the left cell `l`.
    pub fn h_cell(&self, l: usize) -> Vec<Element> {
        self.left
            .block(l)
            .iter()
            .copied()
            .filter(|&x| self.left.cell_of(self.inverses[x.index()]) == l)
            .collect()
    }

    /// Involutions of the H-cell of `l`. One of them is the Duflo involution;
    /// which one is not decided here.
    pub fn h_cell_involutions(&self, l: usize) -> Vec<Element> {
        self.h_cell(l)
            .into_iter()
            .filter(|&x| self.inverses[x.index()] == x)
            .collect()
    }

    /// Whether `x` is the longest element of some standard parabolic subgroup.
    pub fn is_parabolic_longest(&self, x: Element) -> bool {
        self.parabolic_longest.contains(&x)
    }

    /// Longest elements `w'_0` of standard parabolics, indexed by generator
    /// bitmask.
    pub fn parabolic_longest(&self) -> &[Element] {
        &self.parabolic_longest
    }

    /// Maps each two-sided cell through `w -> w w0`.
    pub fn w0_twist(&self, sys: &CoxeterSystem) -> Vec<usize> {
        let w0 = sys.longest();
        (0..self.two_sided.len())
            .map(|j| {
                let x = self.two_sided.block(j)[0];
                self.two_sided.cell_of(sys.multiply(x, w0))
            })
            .collect()
    }
}
