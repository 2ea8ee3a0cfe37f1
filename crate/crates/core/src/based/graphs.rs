//! Connected simple graphs with adjacency spectral radius `2cos(pi/n)`.
//!
//! A connected graph containing a cycle has spectral radius at least 2, and
//! the spectral radius strictly grows when a connected graph is extended, so
//! every graph with radius below 2 is a tree all of whose connected subtrees
//! also have radius below the target. The search grows trees one leaf at a
//! time, discards those above the target and deduplicates by a canonical
//! form for unrooted trees.

use std::collections::BTreeMap;

use serde::Serialize;

use super::linalg::{char_poly, min_poly_two_cos, poly_rem, symmetric_eigenvalues};

/// Numeric margin for spectral comparisons.
const MARGIN: f64 = 1e-9;

/// A simple graph as an adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn single_vertex() -> Self {
        Graph {
            adj: vec![vec![false]],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in edges {
            assert_ne!(a, b, "loops are not allowed");
            adj[a][b] = true;
            adj[b][a] = true;
        }
        Graph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        self.adj
            .iter()
            .map(|r| r.iter().map(|&b| u8::from(b)).collect())
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().flatten().filter(|&&b| b).count() / 2
    }

    fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().enumerate().filter(|(_, &b)| b).map(|(u, _)| u)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbours(v).count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbours(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.vertex_count()
    }

    fn with_leaf(&self, at: usize) -> Graph {
        let n = self.vertex_count();
        let mut adj: Vec<Vec<bool>> = self
            .adj
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.push(false);
                r
            })
            .collect();
        adj.push(vec![false; n + 1]);
        adj[at][n] = true;
        adj[n][at] = true;
        Graph { adj }
    }

    pub fn spectral_radius(&self) -> f64 {
        let m: Vec<Vec<f64>> = self
            .adj
            .iter()
            .map(|r| r.iter().map(|&b| f64::from(u8::from(b))).collect())
            .collect();
        symmetric_eigenvalues(&m)
            .into_iter()
            .map(f64::abs)
            .fold(0.0, f64::max)
    }

    /// Characteristic polynomial of the adjacency matrix, degree 0 first.
    pub fn char_poly(&self) -> Vec<i128> {
        let m: Vec<Vec<i64>> = self
            .adj
            .iter()
            .map(|r| r.iter().map(|&b| i64::from(b)).collect())
            .collect();
        char_poly(&m)
    }

    /// graph6 encoding (at most 62 vertices).
    pub fn graph6(&self) -> String {
        let n = self.vertex_count();
        assert!(n <= 62, "graph6 short form only");
        let mut out = String::new();
        out.push((n as u8 + 63) as char);
        let mut bits = Vec::new();
        for j in 1..n {
            for i in 0..j {
                bits.push(self.adj[i][j]);
            }
        }
        for chunk in bits.chunks(6) {
            let mut v = 0u8;
            for k in 0..6 {
                v = (v << 1) | u8::from(chunk.get(k).copied().unwrap_or(false));
            }
            out.push((v + 63) as char);
        }
        out
    }

    /// Canonical string of a tree, optionally with vertex colours.
    fn tree_canonical(&self, colours: Option<&[u8]>) -> String {
        let n = self.vertex_count();
        // centres by repeated leaf removal
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                for u in self.neighbours(v) {
                    if deg[u] > 1 {
                        deg[u] -= 1;
                        if deg[u] == 1 {
                            next.push(u);
                        }
                    }
                }
                deg[v] = 0;
            }
            layer = next;
        }
        layer
            .iter()
            .map(|&c| self.rooted(c, usize::MAX, colours))
            .min()
            .expect("a tree has a centre")
    }

    fn rooted(&self, v: usize, parent: usize, colours: Option<&[u8]>) -> String {
        let mut kids: Vec<String> = self
            .neighbours(v)
            .filter(|&u| u != parent)
            .map(|u| self.rooted(u, v, colours))
            .collect();
        kids.sort();
        let tag = colours.map_or(String::new(), |c| c[v].to_string());
        format!("({tag}{})", kids.concat())
    }

    /// The two proper 2-colourings of a connected bipartite graph (the one
    /// with vertex 0 coloured 0 first), or none.
    pub fn bicolorings(&self) -> Vec<Vec<u8>> {
        let n = self.vertex_count();
        let mut col = vec![u8::MAX; n];
        col[0] = 0;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for u in self.neighbours(v) {
                if col[u] == u8::MAX {
                    col[u] = 1 - col[v];
                    stack.push(u);
                } else if col[u] == col[v] {
                    return Vec::new();
                }
            }
        }
        let flipped = col.iter().map(|c| 1 - c).collect();
        vec![col, flipped]
    }

    /// Dynkin name of a tree (`A_n`, `D_n`, `E_6..8`), or `None`.
    pub fn dynkin_name(&self) -> Option<String> {
        if !self.is_tree() {
            return None;
        }
        let n = self.vertex_count();
        let branch: Vec<usize> = (0..n).filter(|&v| self.degree(v) >= 3).collect();
        match branch[..] {
            [] => Some(format!("A{n}")),
            [c] if self.degree(c) == 3 => {
                let mut arms: Vec<usize> = self
                    .neighbours(c)
                    .map(|mut u| {
                        let mut prev = c;
                        let mut len = 1;
                        loop {
                            let next: Vec<usize> = self.neighbours(u).filter(|&w| w != prev).collect();
                            match next[..] {
                                [w] => {
                                    prev = u;
                                    u = w;
                                    len += 1;
                                }
                                _ => break len,
                            }
                        }
                    })
                    .collect();
                arms.sort_unstable();
                match arms[..] {
                    [1, 1, r] => Some(format!("D{}", r + 3)),
                    [1, 2, 2] => Some("E6".into()),
                    [1, 2, 3] => Some("E7".into()),
                    [1, 2, 4] => Some("E8".into()),
                    _ => None,
                }
            }
            _ => None,
        }
    }
}

/// Trees on at most `max_vertices` vertices with spectral radius at most
/// `limit + MARGIN` (`limit < 2`), one per isomorphism class, keyed by
/// canonical form.
fn trees_below(limit: f64, max_vertices: usize) -> Vec<Graph> {
    assert!(limit < 2.0, "only radii below 2 force trees");
    let mut out = Vec::new();
    let mut level: BTreeMap<String, Graph> = BTreeMap::new();
    let g = Graph::single_vertex();
    if g.spectral_radius() <= limit + MARGIN {
        level.insert(g.tree_canonical(None), g);
    }
    for _ in 1..max_vertices {
        let mut next = BTreeMap::new();
        for g in level.values() {
            for v in 0..g.vertex_count() {
                let h = g.with_leaf(v);
                let key = h.tree_canonical(None);
                if next.contains_key(&key) || h.spectral_radius() > limit + MARGIN {
                    continue;
                }
                next.insert(key, h);
            }
        }
        out.extend(std::mem::replace(&mut level, next).into_values());
    }
    out.extend(level.into_values());
    out
}

/// Exact evidence that a graph has spectral radius `2cos(pi/n)`.
#[derive(Debug, Clone, Serialize)]
pub struct EigenCertificate {
    pub target: String,
    pub target_value: f64,
    /// Minimal polynomial of the target, degree 0 first.
    pub min_poly: Vec<i64>,
    /// Adjacency characteristic polynomial, degree 0 first.
    pub char_poly: Vec<i64>,
    /// `min_poly` divides `char_poly` over the integers.
    pub divides: bool,
    pub spectral_radius: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralGraph {
    pub name: String,
    pub vertices: usize,
    pub graph6: String,
    pub adjacency: Vec<Vec<u8>>,
    pub bicolorings: Vec<Vec<u8>>,
    /// Whether an automorphism swaps the two colour classes.
    pub bicolorings_equivalent: bool,
    pub certificate: EigenCertificate,
}

/// All connected graphs on at most `max_vertices` vertices whose spectral
/// radius is exactly `2cos(pi/n)`, sorted by vertex count and name.
pub fn classify_spectral_graphs(n: u32, max_vertices: usize) -> Vec<SpectralGraph> {
    assert!(n >= 2, "n must be at least 2");
    let target = 2.0 * (std::f64::consts::PI / f64::from(n)).cos();
    let min_poly = min_poly_two_cos(n as usize);
    let mut out: Vec<SpectralGraph> = trees_below(target, max_vertices)
        .into_iter()
        .filter_map(|g| {
            let rho = g.spectral_radius();
            let cp = g.char_poly();
            let divides = poly_rem(&cp, &min_poly).is_empty();
            if !divides || (rho - target).abs() > MARGIN {
                return None;
            }
            let bicolorings = g.bicolorings();
            let bicolorings_equivalent = bicolorings.len() == 2
                && g.tree_canonical(Some(&bicolorings[0])) == g.tree_canonical(Some(&bicolorings[1]));
            Some(SpectralGraph {
                name: g.dynkin_name().unwrap_or_else(|| g.graph6()),
                vertices: g.vertex_count(),
                graph6: g.graph6(),
                adjacency: g.adjacency(),
                bicolorings,
                bicolorings_equivalent,
                certificate: EigenCertificate {
                    target: format!("2cos(pi/{n})"),
                    target_value: target,
                    min_poly: min_poly.iter().map(|&c| c as i64).collect(),
                    char_poly: cp.iter().map(|&c| c as i64).collect(),
                    divides,
                    spectral_radius: rho,
                    margin: MARGIN,
                },
            })
        })
        .collect();
    out.sort_by(|a, b| (a.vertices, &a.name).cmp(&(b.vertices, &b.name)));
    out
}

/// Names of all connected graphs on at most `max_vertices` vertices with
/// spectral radius below 2.
pub fn subtwo_census(max_vertices: usize) -> Vec<String> {
    let mut names: Vec<String> = trees_below(2.0 - 1e-6, max_vertices)
        .into_iter()
        .map(|g| g.dynkin_name().unwrap_or_else(|| g.graph6()))
        .collect();
    names.sort();
    names
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: u32) -> Vec<String> {
        classify_spectral_graphs(n, n as usize + 1)
            .into_iter()
            .map(|g| g.name)
            .collect()
    }

    #[test]
    fn small_classifications() {
        assert_eq!(names(3), ["A2"]);
        assert_eq!(names(4), ["A3"]);
        assert_eq!(names(5), ["A4"]);
        assert_eq!(names(6), ["D4", "A5"]);
    }

    #[test]
    fn graph6_examples() {
        // path on 3 vertices: 0-1-2
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(g.graph6(), "Bg");
        assert_eq!(Graph::single_vertex().graph6(), "@");
    }

    #[test]
    fn bicoloring_swaps() {
        let path4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let c = path4.bicolorings();
        assert_eq!(path4.tree_canonical(Some(&c[0])), path4.tree_canonical(Some(&c[1])));
        let path3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let c = path3.bicolorings();
        assert_ne!(path3.tree_canonical(Some(&c[0])), path3.tree_canonical(Some(&c[1])));
    }
}
