use crate::designs::BlockDesign;
use crate::{Error, Result};

/// A bipartite (multi)graph between left vertices and right vertices.
///
/// When built from a design, left vertex `x * copies + c` is copy `c` of
/// point `x` and right vertex `j` is block `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitGraph {
    left_count: usize,
    right_count: usize,
    copies: usize,
    edges: Vec<(usize, usize)>,
}

impl SplitGraph {
    /// A plain bipartite graph: each left vertex is its own point.
    pub fn from_edges(
        left_count: usize,
        right_count: usize,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        if let Some((i, &(l, r))) = edges
            .iter()
            .enumerate()
            .find(|(_, &(l, r))| l >= left_count || r >= right_count)
        {
            return Err(Error::structural(
                "edge endpoint out of range",
                vec![format!("edge {i} = ({l}, {r})")],
            ));
        }
        Ok(SplitGraph {
            left_count,
            right_count,
            copies: 1,
            edges,
        })
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Copies per point (b/v for a split design).
    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn point_of(&self, left: usize) -> usize {
        left / self.copies
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.left_count];
        for &(l, _) in &self.edges {
            deg[l] += 1;
        }
        deg
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.right_count];
        for &(_, r) in &self.edges {
            deg[r] += 1;
        }
        deg
    }

    /// The common degree if every vertex on both sides has it.
    pub fn regular_degree(&self) -> Option<usize> {
        let left = self.left_degrees();
        let right = self.right_degrees();
        let d = left.first().or(right.first()).copied().unwrap_or(0);
        (left.iter().chain(&right).all(|&x| x == d)).then_some(d)
    }
}

/// Point-block incidence graph with every point split into b/v copies of
/// degree k. Copy `c` of `x` takes the `c`-th run of k blocks through `x`,
/// in ascending block order.
pub fn split_points(design: &BlockDesign) -> Result<SplitGraph> {
    let (v, k, b) = (design.v(), design.k(), design.b());
    if b % v != 0 {
        return Err(Error::Precondition(format!(
            "v = {v} does not divide the number of blocks b = {b} (b mod v = {}); \
             a balanced ordering needs v | b",
            b % v
        )));
    }
    let copies = b / v;
    let degrees = design.point_degrees();
    let wrong: Vec<String> = degrees
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d != k * copies)
        .map(|(x, d)| format!("point {x} lies in {d} blocks"))
        .collect();
    if !wrong.is_empty() {
        return Err(Error::Precondition(format!(
            "every point must lie in k*b/v = {} blocks: {}",
            k * copies,
            wrong.join("; ")
        )));
    }

    let mut seen = vec![0usize; v];
    let mut edges = Vec::with_capacity(b * k);
    for (j, block) in design.blocks().iter().enumerate() {
        for &x in block {
            let copy = seen[x] / k;
            seen[x] += 1;
            edges.push((x * copies + copy, j));
        }
    }
    Ok(SplitGraph {
        left_count: v * copies,
        right_count: b,
        copies,
        edges,
    })
}
