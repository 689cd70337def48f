//! Graphs, two-colorings and stabilizer generators.
//!
//! Vertices are 0-indexed everywhere. A graph state on `n` qubits is stabilized
//! by `K_i = X_i prod_{j in Ngb(i)} Z_j`; for two-colorable graphs the vertices
//! split into an Amber set `A` and a Blue set `B` with `|A| >= |B|`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Simple undirected graph. Edges are stored with `u < v`, sorted, and unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range
    /// endpoints. `n` must be positive.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("vertex count must be positive".into()));
        }
        let mut seen = BTreeSet::new();
        for (idx, (u, v)) in edges.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edges[{idx}] = [{u}, {v}] has an endpoint >= n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edges[{idx}] is a self-loop on {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!(
                    "edges[{idx}] duplicates edge [{}, {}]",
                    e.0, e.1
                )));
            }
        }
        let edges: Vec<_> = seen.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self { n, edges, adjacency })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Linear chain `0 - 1 - ... - (n-1)`.
    pub fn chain(n: usize) -> Result<Self> {
        Family::Chain(n).build()
    }

    pub fn ring(n: usize) -> Result<Self> {
        Family::Ring(n).build()
    }

    /// Star with center 0 and leaves `1..n`; the graph of a GHZ state.
    pub fn star(n: usize) -> Result<Self> {
        Family::Star(n).build()
    }

    /// Square lattice, vertex `(r, c)` at index `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Result<Self> {
        Family::Grid { rows, cols }.build()
    }

    /// The stabilizer generators `K_0, ..., K_{n-1}`.
    pub fn generators(&self) -> Vec<StabilizerGenerator> {
        (0..self.n)
            .map(|i| StabilizerGenerator {
                x_support: vec![i],
                z_support: self.adjacency[i].clone(),
            })
            .collect()
    }

    /// Bipartition into Amber and Blue vertices.
    ///
    /// Each component is explored breadth-first from its lowest-index vertex.
    /// The larger side of every component becomes Amber (the root's side on a
    /// tie), so `|B|` is the sum of the per-component minority sides and
    /// `|A| >= |B|` holds globally.
    pub fn two_color(&self) -> Result<TwoColoring> {
        const UNSEEN: u8 = 2;
        let n = self.n;
        let mut side = vec![UNSEEN; n];
        let mut parent = vec![usize::MAX; n];
        let mut is_blue = vec![false; n];
        let mut queue = VecDeque::new();

        for root in 0..n {
            if side[root] != UNSEEN {
                continue;
            }
            side[root] = 0;
            queue.push_back(root);
            let mut members = Vec::new();
            while let Some(u) = queue.pop_front() {
                members.push(u);
                for &w in &self.adjacency[u] {
                    if side[w] == UNSEEN {
                        side[w] = 1 - side[u];
                        parent[w] = u;
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return Err(Error::NotTwoColorable {
                            cycle: odd_cycle(&parent, u, w),
                        });
                    }
                }
            }
            let ones = members.iter().filter(|&&v| side[v] == 1).count();
            let blue_side = if ones > members.len() - ones { 0 } else { 1 };
            for v in members {
                is_blue[v] = side[v] == blue_side;
            }
        }
        Ok(TwoColoring::from_mask(is_blue))
    }
}

/// Closes the odd cycle formed by the BFS tree paths to `u` and `w` and the
/// non-tree edge `u - w`. Both endpoints sit at the same BFS depth.
fn odd_cycle(parent: &[usize], u: usize, w: usize) -> Vec<usize> {
    let mut left = vec![u];
    let mut right = vec![w];
    let (mut a, mut b) = (u, w);
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    let mut cycle: Vec<usize> = left.into_iter().rev().collect();
    cycle.extend(right);
    cycle
}

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Chain(usize),
    Ring(usize),
    Star(usize),
    Grid { rows: usize, cols: usize },
}

impl Family {
    /// Parses a family name plus its size descriptor: one size for
    /// `chain`/`ring`/`star`, `(rows, cols)` for `grid`.
    pub fn parse(name: &str, dims: &[usize]) -> Result<Self> {
        let single = || match dims {
            [n] => Ok(*n),
            _ => Err(Error::InvalidParams(format!(
                "{name} takes one size, got {}",
                dims.len()
            ))),
        };
        match name {
            "chain" => Ok(Family::Chain(single()?)),
            "ring" => Ok(Family::Ring(single()?)),
            "star" => Ok(Family::Star(single()?)),
            "grid" => match dims {
                [rows, cols] => Ok(Family::Grid {
                    rows: *rows,
                    cols: *cols,
                }),
                _ => Err(Error::InvalidParams("grid takes (rows, cols)".into())),
            },
            other => Err(Error::InvalidParams(format!("unknown graph family '{other}'"))),
        }
    }

    pub fn build(self) -> Result<Graph> {
        match self {
            Family::Chain(n) => {
                nonzero("chain", n)?;
                Graph::new(n, (1..n).map(|i| (i - 1, i)))
            }
            Family::Ring(n) => {
                if n < 3 {
                    return Err(Error::InvalidParams(format!("ring needs at least 3 vertices, got {n}")));
                }
                Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Family::Star(n) => {
                nonzero("star", n)?;
                Graph::new(n, (1..n).map(|i| (0, i)))
            }
            Family::Grid { rows, cols } => {
                nonzero("grid rows", rows)?;
                nonzero("grid cols", cols)?;
                let at = |r: usize, c: usize| r * cols + c;
                let mut edges = Vec::new();
                for r in 0..rows {
                    for c in 0..cols {
                        if c + 1 < cols {
                            edges.push((at(r, c), at(r, c + 1)));
                        }
                        if r + 1 < rows {
                            edges.push((at(r, c), at(r + 1, c)));
                        }
                    }
                }
                Graph::new(rows * cols, edges)
            }
        }
    }
}

fn nonzero(what: &str, n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParams(format!("{what} size must be at least 1")))
    } else {
        Ok(())
    }
}

/// Amber/Blue bipartition of a graph's vertices with `|A| >= |B|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoColoring {
    amber: Vec<usize>,
    blue: Vec<usize>,
    is_blue: Vec<bool>,
}

impl TwoColoring {
    fn from_mask(is_blue: Vec<bool>) -> Self {
        let (mut amber, mut blue) = (Vec::new(), Vec::new());
        for (v, &b) in is_blue.iter().enumerate() {
            if b {
                blue.push(v);
            } else {
                amber.push(v);
            }
        }
        Self { amber, blue, is_blue }
    }

    /// Builds a coloring from an explicit Blue set and checks it against `g`.
    pub fn from_blue(g: &Graph, blue: &[usize]) -> Result<Self> {
        let mut mask = vec![false; g.n()];
        for &v in blue {
            if v >= g.n() {
                return Err(Error::InvalidParams(format!("blue vertex {v} out of range")));
            }
            mask[v] = true;
        }
        let col = Self::from_mask(mask);
        col.check(g)?;
        Ok(col)
    }

    /// Verifies partition, bichromatic edges and `|A| >= |B|` for `g`.
    pub fn check(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                actual: self.n(),
            });
        }
        if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| self.is_blue[u] == self.is_blue[v]) {
            return Err(Error::InvalidParams(format!("edge [{u}, {v}] is monochromatic")));
        }
        if self.amber.len() < self.blue.len() {
            return Err(Error::InvalidParams("Amber set smaller than Blue set".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.is_blue.len()
    }

    pub fn amber(&self) -> &[usize] {
        &self.amber
    }

    pub fn blue(&self) -> &[usize] {
        &self.blue
    }

    pub fn blue_count(&self) -> usize {
        self.blue.len()
    }

    pub fn is_blue(&self, v: usize) -> bool {
        self.is_blue[v]
    }

    /// Bit mask of the Amber vertices (vertex `v` at bit `v`), for `n <= 64`.
    pub fn amber_mask(&self) -> u64 {
        self.amber.iter().fold(0, |m, &v| m | 1u64 << v)
    }
}

/// One stabilizer generator `K_i = X_i prod_{j in Ngb(i)} Z_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerGenerator {
    pub x_support: Vec<usize>,
    pub z_support: Vec<usize>,
}

impl StabilizerGenerator {
    /// Symplectic inner product mod 2; zero iff the two Pauli operators commute.
    pub fn symplectic_product(&self, other: &Self) -> usize {
        let overlap = |xs: &[usize], zs: &[usize]| xs.iter().filter(|x| zs.contains(x)).count();
        (overlap(&self.x_support, &other.z_support) + overlap(&other.x_support, &self.z_support)) % 2
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.symplectic_product(other) == 0
    }
}

impl fmt::Display for StabilizerGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors: Vec<(usize, char)> = self
            .x_support
            .iter()
            .map(|&v| (v, 'X'))
            .chain(self.z_support.iter().map(|&v| (v, 'Z')))
            .collect();
        factors.sort_unstable();
        for (k, (v, p)) in factors.into_iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_of_five_alternates() {
        let col = Graph::chain(5).unwrap().two_color().unwrap();
        assert_eq!(col.amber(), &[0, 2, 4]);
        assert_eq!(col.blue(), &[1, 3]);
    }

    #[test]
    fn star_leaves_are_amber() {
        let col = Graph::star(4).unwrap().two_color().unwrap();
        assert_eq!(col.amber(), &[1, 2, 3]);
        assert_eq!(col.blue(), &[0]);
    }

    #[test]
    fn triangle_reports_odd_cycle() {
        let g = Graph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        match g.two_color() {
            Err(Error::NotTwoColorable { cycle }) => {
                assert_eq!(cycle.len(), 3);
                let set: BTreeSet<_> = cycle.into_iter().collect();
                assert_eq!(set, BTreeSet::from([0, 1, 2]));
            }
            other => panic!("expected NotTwoColorable, got {other:?}"),
        }
    }

    #[test]
    fn odd_cycle_is_a_real_cycle() {
        // 5-ring with a pendant path hanging off vertex 0
        let g = Graph::new(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6)]).unwrap();
        let Err(Error::NotTwoColorable { cycle }) = g.two_color() else {
            panic!("5-ring must fail");
        };
        assert_eq!(cycle.len() % 2, 1);
        for k in 0..cycle.len() {
            let (u, v) = (cycle[k], cycle[(k + 1) % cycle.len()]);
            assert!(g.neighbors(u).contains(&v), "{u}-{v} is not an edge");
        }
    }

    #[test]
    fn disconnected_components_each_keep_their_majority_amber() {
        // star centered at 1 plus star centered at 4
        let g = Graph::new(8, [(1, 0), (1, 2), (1, 3), (4, 5), (4, 6), (4, 7)]).unwrap();
        let col = g.two_color().unwrap();
        assert_eq!(col.blue(), &[1, 4]);
        col.check(&g).unwrap();
    }

    #[test]
    fn isolated_vertex_is_amber() {
        let col = Graph::new(1, []).unwrap().two_color().unwrap();
        assert_eq!(col.amber(), &[0]);
        assert_eq!(col.blue_count(), 0);
    }

    #[test]
    fn generators_unrolled() {
        let gens = Graph::chain(3).unwrap().generators();
        let shown: Vec<_> = gens.iter().map(|k| k.to_string()).collect();
        assert_eq!(shown, ["X0 Z1", "Z0 X1 Z2", "Z1 X2"]);

        let single = Graph::new(1, []).unwrap().generators();
        assert_eq!(single[0].to_string(), "X0");

        let star = Graph::star(3).unwrap().generators();
        assert_eq!(star[0].to_string(), "X0 Z1 Z2");
        assert_eq!(star[0].z_support, vec![1, 2]);
    }

    #[test]
    fn families() {
        assert_eq!(Graph::chain(4).unwrap().edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(Graph::ring(4).unwrap().edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        let grid = Graph::grid(2, 2).unwrap();
        assert_eq!((grid.n(), grid.edges().len()), (4, 4));
        assert!(matches!(Graph::chain(0), Err(Error::InvalidParams(_))));
        assert!(matches!(Graph::grid(0, 3), Err(Error::InvalidParams(_))));
        assert!(matches!(Graph::ring(2), Err(Error::InvalidParams(_))));
        assert_eq!(
            Family::parse("grid", &[2, 3]).unwrap(),
            Family::Grid { rows: 2, cols: 3 }
        );
        assert!(Family::parse("torus", &[3]).is_err());
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(Graph::new(2, [(0, 0)]).is_err());
        assert!(Graph::new(2, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(2, [(0, 2)]).is_err());
        assert!(Graph::new(0, []).is_err());
    }

    #[test]
    fn explicit_coloring_is_checked() {
        let g = Graph::chain(4).unwrap();
        assert!(TwoColoring::from_blue(&g, &[1, 3]).is_ok());
        assert!(TwoColoring::from_blue(&g, &[0, 1]).is_err());
    }
}
